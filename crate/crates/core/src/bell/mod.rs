//! Bell-diagonal two-qubit states.
//!
//! A state is stored as the signed triple `(ax, ay, az)` of
//! `rho = 1/4 (1 + ax XX + ay YY + az ZZ)`, where the first tensor factor is
//! Alice's qubit and the second Bob's. Two other conventions show up at the
//! API boundary:
//!
//! * the *fidelity form* `(cx, cy, cz) = (ax, -ay, az)`, in which the target
//!   state `Φ+` is `(1, 1, 1)` and the fidelity is `(1 + cx + cy + cz) / 4`;
//! * the *singlet form* `(cx, cy, cz) = (-ax, -ay, -az)`, in which the singlet
//!   `Ψ-` is `(1, 1, 1)`.
//!
//! Every constructor names the form it accepts.

mod canonical;
mod rotation;

pub use canonical::canonicalize;
pub use rotation::{Axis, LocalRotation, Party};

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{pauli2, CMatrix, Pauli};
use crate::scalar::{invariant_tol, lit, round_trip_tol, Real};

/// Signed Pauli correlation coefficients of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple<T: Real> {
    ax: T,
    ay: T,
    az: T,
}

/// Diagonal of a Bell-diagonal state in the Bell basis.
///
/// Labels: `a` = Φ+ (the target), `b` = Ψ-, `c` = Ψ+, `d` = Φ-.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellPopulations<T: Real> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> BellPopulations<T> {
    pub fn to_array(self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn sum(self) -> T {
        self.a + self.b + self.c + self.d
    }

    /// Populations sorted ascending, for multiset comparisons.
    pub fn sorted(self) -> [T; 4] {
        let mut v = self.to_array();
        v.sort_by(|x, y| x.partial_cmp(y).expect("finite populations"));
        v
    }
}

impl<T: Real> CorrelationTriple<T> {
    /// Builds a state from internal-convention coefficients.
    pub fn new(ax: T, ay: T, az: T) -> Result<Self> {
        let s = Self { ax, ay, az };
        let tol = invariant_tol::<T>();
        let finite = ax.is_finite() && ay.is_finite() && az.is_finite();
        let pops = s.bell_populations();
        if !finite || pops.to_array().iter().any(|&p| p < -tol) {
            return Err(Error::NotPositive(
                ax.to_f64().unwrap_or(f64::NAN),
                ay.to_f64().unwrap_or(f64::NAN),
                az.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(ax: T, ay: T, az: T) -> Self {
        Self { ax, ay, az }
    }

    /// Builds a state from fidelity-form coefficients `(cx, cy, cz)`.
    pub fn from_coefficients(cx: T, cy: T, cz: T) -> Result<Self> {
        Self::new(cx, -cy, cz)
    }

    /// Builds a state from singlet-form coefficients
    /// `rho = 1/4 (1 - cx XX - cy YY - cz ZZ)`.
    pub fn from_singlet_coefficients(cx: T, cy: T, cz: T) -> Result<Self> {
        Self::new(-cx, -cy, -cz)
    }

    /// State with the given Bell populations.
    pub fn from_populations(p: BellPopulations<T>) -> Self {
        Self::new_unchecked(
            p.a - p.b + p.c - p.d,
            -p.a - p.b + p.c + p.d,
            p.a - p.b - p.c + p.d,
        )
    }

    /// Maximally mixed state.
    pub fn maximally_mixed() -> Self {
        Self::new_unchecked(T::zero(), T::zero(), T::zero())
    }

    /// The target state Φ+.
    pub fn ideal() -> Self {
        Self::new_unchecked(T::one(), -T::one(), T::one())
    }

    /// Werner state `1/4 [1 - t (XX + YY + ZZ)]`, valid for `-1/3 <= t <= 1`.
    pub fn werner(t: T) -> Result<Self> {
        let lo = -T::one() / lit(3.0);
        if !(t >= lo && t <= T::one()) {
            return Err(Error::Domain {
                what: "Werner parameter t",
                value: t.to_f64().unwrap_or(f64::NAN),
                range: "[-1/3, 1]",
            });
        }
        Ok(Self::new_unchecked(-t, -t, -t))
    }

    /// Isotropic state around Φ+ with the given fidelity.
    ///
    /// Locally equivalent to [`CorrelationTriple::werner`] with
    /// `t = (4F - 1) / 3`.
    pub fn werner_with_fidelity(fidelity: T) -> Result<Self> {
        if !(fidelity >= T::zero() && fidelity <= T::one()) {
            return Err(Error::Domain {
                what: "fidelity",
                value: fidelity.to_f64().unwrap_or(f64::NAN),
                range: "[0, 1]",
            });
        }
        let c = (lit::<T>(4.0) * fidelity - T::one()) / lit(3.0);
        Ok(Self::new_unchecked(c, -c, c))
    }

    /// Binary state with Bell populations `f` (Φ+) and `1 - f` (Ψ+).
    pub fn binary(f: T) -> Result<Self> {
        if !(f > T::zero() && f <= T::one()) {
            return Err(Error::Domain {
                what: "binary weight f",
                value: f.to_f64().unwrap_or(f64::NAN),
                range: "(0, 1]",
            });
        }
        let g = lit::<T>(2.0) * f - T::one();
        Ok(Self::new_unchecked(T::one(), -g, g))
    }

    pub fn ax(&self) -> T {
        self.ax
    }

    pub fn ay(&self) -> T {
        self.ay
    }

    pub fn az(&self) -> T {
        self.az
    }

    pub fn internal(&self) -> [T; 3] {
        [self.ax, self.ay, self.az]
    }

    /// Fidelity-form coefficients `(cx, cy, cz)`.
    pub fn coefficients(&self) -> [T; 3] {
        [self.ax, -self.ay, self.az]
    }

    /// Sum of coefficient magnitudes, identical in every convention.
    pub fn abs_sum(&self) -> T {
        self.ax.abs() + self.ay.abs() + self.az.abs()
    }

    pub fn bell_populations(&self) -> BellPopulations<T> {
        let q = lit::<T>(0.25);
        let (x, y, z) = (self.ax, self.ay, self.az);
        BellPopulations {
            a: q * (T::one() + x - y + z),
            b: q * (T::one() - x - y - z),
            c: q * (T::one() + x + y - z),
            d: q * (T::one() - x + y + z),
        }
    }

    /// Overlap with Φ+.
    pub fn fidelity(&self) -> T {
        self.bell_populations().a
    }

    /// Separability from the coefficient conditions: the state is separable
    /// when the magnitudes sum to at most one or the signed product of the
    /// fidelity-form coefficients is non-positive.
    pub fn is_separable(&self) -> bool {
        let [cx, cy, cz] = self.coefficients();
        self.abs_sum() <= T::one() + round_trip_tol::<T>() || cx * cy * cz <= T::zero()
    }

    /// Separability from the spectrum of the partial transpose.
    pub fn is_separable_ppt(&self) -> bool {
        self.to_density_matrix().is_ppt()
    }

    /// `3/2 - (|cx| + |cy| + |cz|) / 2`, without clamping.
    pub fn raw_separability(&self) -> T {
        lit::<T>(1.5) - lit::<T>(0.5) * self.abs_sum()
    }

    /// Degree of separability: the raw score for entangled states, 1 for
    /// separable ones.
    pub fn degree_of_separability(&self) -> T {
        if self.is_separable() {
            T::one()
        } else {
            self.raw_separability()
        }
    }

    /// True when every fidelity-form coefficient is non-negative.
    pub fn is_positive_form(&self) -> bool {
        self.coefficients().iter().all(|&c| c >= T::zero())
    }

    pub fn to_density_matrix(&self) -> DensityMatrix<T> {
        let q = lit::<T>(0.25);
        let id = CMatrix::<T, 4>::identity();
        let m = id
            + pauli2::<T>(Pauli::X, Pauli::X).scale(self.ax)
            + pauli2::<T>(Pauli::Y, Pauli::Y).scale(self.ay)
            + pauli2::<T>(Pauli::Z, Pauli::Z).scale(self.az);
        DensityMatrix(m.scale(q))
    }

    /// Largest componentwise difference between two triples.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.ax - other.ax)
            .abs()
            .max((self.ay - other.ay).abs())
            .max((self.az - other.az).abs())
    }

    pub fn apply(&self, r: LocalRotation) -> Self {
        r.apply(self)
    }

    pub fn cast<U: Real>(&self) -> CorrelationTriple<U> {
        let c = |x: T| U::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap_or(U::nan());
        CorrelationTriple::new_unchecked(c(self.ax), c(self.ay), c(self.az))
    }
}

impl<T: Real> fmt::Display for CorrelationTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [cx, cy, cz] = self.coefficients();
        write!(f, "({cx}, {cy}, {cz})")
    }
}

/// A validated 4x4 two-qubit density matrix (Alice ⊗ Bob).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T: Real>(CMatrix<T, 4>);

impl<T: Real> DensityMatrix<T> {
    /// Validates hermiticity, unit trace and positivity at the invariant tolerance.
    pub fn new(m: CMatrix<T, 4>) -> Result<Self> {
        let tol = invariant_tol::<T>();
        let herm = m.hermiticity_error();
        if herm > tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "hermiticity error {herm:e}"
            )));
        }
        let tr = m.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = m.hermitian_eigenvalues()[0];
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: CMatrix<T, 4>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &CMatrix<T, 4> {
        &self.0
    }

    /// `tr(rho (p ⊗ q))`, real part.
    pub fn expectation(&self, p: Pauli, q: Pauli) -> T {
        self.0.trace_product(&pauli2(p, q)).re
    }

    /// Partial transpose on Bob's qubit.
    pub fn partial_transpose(&self) -> CMatrix<T, 4> {
        CMatrix::from_fn(|r, c| {
            let (i, j) = (r / 2, r % 2);
            let (k, l) = (c / 2, c % 2);
            self.0[(i * 2 + l, k * 2 + j)]
        })
    }

    pub fn is_ppt(&self) -> bool {
        self.partial_transpose().hermitian_eigenvalues()[0] >= -invariant_tol::<T>()
    }

    /// Extracts the diagonal correlation triple, rejecting states with any
    /// other Pauli component above the invariant tolerance.
    pub fn to_triple(&self) -> Result<CorrelationTriple<T>> {
        let tol = invariant_tol::<T>();
        let mut worst: Option<(Pauli, Pauli, T)> = None;
        for p in Pauli::ALL {
            for q in Pauli::ALL {
                let diagonal = p == q;
                if diagonal {
                    continue;
                }
                let v = self.expectation(p, q);
                if worst.is_none_or(|(_, _, w)| v.abs() > w.abs()) {
                    worst = Some((p, q, v));
                }
            }
        }
        if let Some((p, q, v)) = worst {
            if v.abs() > tol {
                return Err(Error::NotBellDiagonal {
                    pauli: format!("{p}{q}"),
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        CorrelationTriple::new(
            self.expectation(Pauli::X, Pauli::X),
            self.expectation(Pauli::Y, Pauli::Y),
            self.expectation(Pauli::Z, Pauli::Z),
        )
    }

    pub fn conjugate_by(&self, u: &CMatrix<T, 4>) -> Self {
        Self(self.0.conjugate_by(u))
    }

    /// Diagonal in the Bell basis, labelled as [`BellPopulations`].
    pub fn bell_basis_diagonal(&self) -> BellPopulations<T> {
        let h = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
        let o = T::zero();
        // Amplitudes over |00>, |01>, |10>, |11>.
        let phi_p = [h, o, o, h];
        let psi_m = [o, h, -h, o];
        let psi_p = [o, h, h, o];
        let phi_m = [h, o, o, -h];
        let overlap = |v: [T; 4]| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for i in 0..4 {
                for j in 0..4 {
                    acc = acc + self.0[(i, j)] * v[i] * v[j];
                }
            }
            acc.re
        };
        BellPopulations {
            a: overlap(phi_p),
            b: overlap(psi_m),
            c: overlap(psi_p),
            d: overlap(phi_m),
        }
    }
}

impl<T: Real> From<CorrelationTriple<T>> for DensityMatrix<T> {
    fn from(s: CorrelationTriple<T>) -> Self {
        s.to_density_matrix()
    }
}
