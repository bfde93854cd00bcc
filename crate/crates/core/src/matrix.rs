//! Small fixed-size dense complex matrices.
//!
//! Dimensions never exceed 16 here, so everything lives on the stack and the
//! algorithms are the textbook ones.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{lit, Real};

/// Square `N x N` complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix<T: Real, const N: usize> {
    data: [[Complex<T>; N]; N],
}

impl<T: Real, const N: usize> CMatrix<T, N> {
    pub fn zeros() -> Self {
        Self {
            data: [[Complex::zero(); N]; N],
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = f(i, j);
            }
        }
        m
    }

    /// Builds a real diagonal matrix.
    pub fn diagonal(diag: [T; N]) -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::new(diag[i], T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.data[j][i].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::zero(), |acc, i| acc + self.data[i][i])
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_fn(|i, j| self.data[i][j] * k)
    }

    /// `U * self * U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.data[i][j] - other.data[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise deviation from hermiticity.
    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of the hermitian part, ascending.
    ///
    /// Computed in double precision through nalgebra regardless of `T`.
    pub fn hermitian_eigenvalues(&self) -> Vec<T> {
        let m = nalgebra::DMatrix::from_fn(N, N, |i, j| {
            let h = (self.data[i][j] + self.data[j][i].conj()) * lit::<T>(0.5);
            nalgebra::Complex::new(
                h.re.to_f64().unwrap_or(f64::NAN),
                h.im.to_f64().unwrap_or(f64::NAN),
            )
        });
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|a, b| a.total_cmp(b));
        eig.into_iter().map(lit).collect()
    }

    /// `tr(self * other)`, without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::zero();
        for i in 0..N {
            for k in 0..N {
                acc = acc + self.data[i][k] * other.data[k][i];
            }
        }
        acc
    }

    pub fn purity(&self) -> T {
        self.trace_product(self).re
    }
}

/// Kronecker product `a ⊗ b`; `C` must equal `A * B`.
pub fn kron<T: Real, const A: usize, const B: usize, const C: usize>(
    a: &CMatrix<T, A>,
    b: &CMatrix<T, B>,
) -> CMatrix<T, C> {
    assert_eq!(A * B, C, "kron output dimension mismatch");
    CMatrix::from_fn(|i, j| a[(i / B, j / B)] * b[(i % B, j % B)])
}

/// Traces out the second factor of a `C = A * B` dimensional operator.
pub fn trace_second<T: Real, const A: usize, const B: usize, const C: usize>(
    m: &CMatrix<T, C>,
) -> CMatrix<T, A> {
    assert_eq!(A * B, C, "partial trace dimension mismatch");
    CMatrix::from_fn(|i, j| {
        (0..B).fold(Complex::zero(), |acc, k| acc + m[(i * B + k, j * B + k)])
    })
}

/// Traces out the first factor of a `C = A * B` dimensional operator.
pub fn trace_first<T: Real, const A: usize, const B: usize, const C: usize>(
    m: &CMatrix<T, C>,
) -> CMatrix<T, B> {
    assert_eq!(A * B, C, "partial trace dimension mismatch");
    CMatrix::from_fn(|i, j| {
        (0..A).fold(Complex::zero(), |acc, k| acc + m[(k * B + i, k * B + j)])
    })
}

impl<T: Real, const N: usize> Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i][j]
    }
}

impl<T: Real, const N: usize> Mul for CMatrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out.data[i][j] = out.data[i][j] + a * rhs.data[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real, const N: usize> Add for CMatrix<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] + rhs.data[i][j])
    }
}

impl<T: Real, const N: usize> Sub for CMatrix<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.data[i][j] - rhs.data[i][j])
    }
}

impl<T: Real, const N: usize> fmt::Debug for CMatrix<T, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix<{N}>[")?;
        for row in &self.data {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> CMatrix<T, 2> {
        let o = Complex::zero();
        let l = Complex::one();
        let i = Complex::i();
        let data = match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        };
        CMatrix { data }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Two-qubit Pauli product `p ⊗ q`.
pub fn pauli2<T: Real>(p: Pauli, q: Pauli) -> CMatrix<T, 4> {
    kron(&p.matrix::<T>(), &q.matrix::<T>())
}

/// Four-qubit Pauli product, first element acting on the most significant qubit.
pub fn pauli4<T: Real>(ops: [Pauli; 4]) -> CMatrix<T, 16> {
    let left: CMatrix<T, 4> = pauli2(ops[0], ops[1]);
    let right: CMatrix<T, 4> = pauli2(ops[2], ops[3]);
    kron(&left, &right)
}

/// `exp(i θ P)` for a single-qubit Pauli `P`.
pub fn pauli_exp<T: Real>(p: Pauli, theta: T) -> CMatrix<T, 2> {
    let c = Complex::new(theta.cos(), T::zero());
    let s = Complex::new(T::zero(), theta.sin());
    let id = Pauli::I.matrix::<T>();
    let pm = p.matrix::<T>();
    CMatrix::from_fn(|i, j| id[(i, j)] * c + pm[(i, j)] * s)
}
