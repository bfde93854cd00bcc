use std::fmt;

use crate::matrix::{kron, pauli_exp, CMatrix, Pauli};
use crate::scalar::{lit, Real};

use super::CorrelationTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

/// Local unitaries that map Bell-diagonal states onto Bell-diagonal states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalRotation {
    /// π rotation of one qubit: flips the two coefficients orthogonal to `axis`.
    Unilateral { party: Party, axis: Axis },
    /// `exp(iπ(σx - τx)/4)`: exchanges the y and z fidelity-form coefficients.
    CounterX,
    /// `exp(iπ(σk + τk)/4)`: swaps the two internal coefficients orthogonal to `k`.
    Bilateral(Axis),
}

impl LocalRotation {
    pub const fn u1(axis: Axis) -> Self {
        LocalRotation::Unilateral {
            party: Party::Alice,
            axis,
        }
    }

    pub const fn u2(axis: Axis) -> Self {
        LocalRotation::Unilateral {
            party: Party::Bob,
            axis,
        }
    }

    /// Every rotation in the set.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(10);
        for party in [Party::Alice, Party::Bob] {
            for axis in Axis::ALL {
                out.push(LocalRotation::Unilateral { party, axis });
            }
        }
        out.push(LocalRotation::CounterX);
        out.extend(Axis::ALL.map(LocalRotation::Bilateral));
        out
    }

    /// Action on the coefficient triple. Every element acts as an involution.
    pub fn apply<T: Real>(self, s: &CorrelationTriple<T>) -> CorrelationTriple<T> {
        let mut a = s.internal();
        match self {
            LocalRotation::Unilateral { axis, .. } => {
                for (k, v) in a.iter_mut().enumerate() {
                    if k != axis.index() {
                        *v = -*v;
                    }
                }
            }
            LocalRotation::CounterX => {
                let (y, z) = (a[1], a[2]);
                a[1] = -z;
                a[2] = -y;
            }
            LocalRotation::Bilateral(axis) => {
                let (i, j) = match axis {
                    Axis::X => (1, 2),
                    Axis::Y => (0, 2),
                    Axis::Z => (0, 1),
                };
                a.swap(i, j);
            }
        }
        CorrelationTriple::new_unchecked(a[0], a[1], a[2])
    }

    /// Inverse with respect to the action on triples.
    pub fn inverse(self) -> Self {
        self
    }

    /// The 4x4 unitary on Alice ⊗ Bob.
    pub fn unitary<T: Real>(self) -> CMatrix<T, 4> {
        let quarter: T = lit(std::f64::consts::FRAC_PI_4);
        let id = Pauli::I.matrix::<T>();
        match self {
            LocalRotation::Unilateral { party, axis } => {
                let p = axis.pauli().matrix::<T>();
                match party {
                    Party::Alice => kron(&p, &id),
                    Party::Bob => kron(&id, &p),
                }
            }
            LocalRotation::CounterX => kron(
                &pauli_exp(Pauli::X, quarter),
                &pauli_exp(Pauli::X, -quarter),
            ),
            LocalRotation::Bilateral(axis) => {
                let r = pauli_exp(axis.pauli(), quarter);
                kron(&r, &r)
            }
        }
    }

    pub fn label(self) -> String {
        let axis = |a: Axis| match a {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        };
        match self {
            LocalRotation::Unilateral {
                party: Party::Alice,
                axis: a,
            } => format!("U1{}", axis(a)),
            LocalRotation::Unilateral {
                party: Party::Bob,
                axis: a,
            } => format!("U2{}", axis(a)),
            LocalRotation::CounterX => "U12x".to_string(),
            LocalRotation::Bilateral(a) => format!("B{}", axis(a)),
        }
    }
}

impl fmt::Display for LocalRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
