//! Exact density-matrix simulation of one purification round.
//!
//! Two pairs live in a 16-dimensional space with qubit order
//! (Alice₁, Bob₁, Alice₂, Bob₂), most significant first. Pair 1 supplies the
//! CNOT controls, pair 2 the targets. Nothing here uses the closed-form
//! recurrences; this module is the reference the analytic layer is checked
//! against.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::bell::{CorrelationTriple, DensityMatrix, LocalRotation};
use crate::error::{Error, Result};
use crate::matrix::{kron, pauli4, trace_first, trace_second, CMatrix, Pauli};
use crate::noise::NoiseModel;
use crate::protocol::{StepResult, Variant};
use crate::scalar::{invariant_tol, lit, Real};

/// Joint state of two pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPairState<T: Real>(CMatrix<T, 16>);

impl<T: Real> TwoPairState<T> {
    pub fn matrix(&self) -> &CMatrix<T, 16> {
        &self.0
    }

    pub fn trace(&self) -> T {
        self.0.trace().re
    }

    /// Reduced state of pair 1.
    pub fn first_pair(&self) -> CMatrix<T, 4> {
        trace_second::<T, 4, 4, 16>(&self.0)
    }

    /// Reduced state of pair 2.
    pub fn second_pair(&self) -> CMatrix<T, 4> {
        trace_first::<T, 4, 4, 16>(&self.0)
    }

    /// Checks hermiticity, unit trace and positivity.
    pub fn validate(&self) -> Result<()> {
        let tol = invariant_tol::<T>();
        let herm = self.0.hermiticity_error();
        let tr = self.0.trace();
        let min = self.0.hermitian_eigenvalues()[0];
        if herm > tol || (tr.re - T::one()).abs() > tol || tr.im.abs() > tol || min < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "two-pair state: hermiticity {herm:e}, trace {tr}, min eigenvalue {min:e}"
            )));
        }
        Ok(())
    }
}

/// The bilateral CNOT on the two-pair space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcnotUnitary<T: Real>(CMatrix<T, 16>);

impl<T: Real> BcnotUnitary<T> {
    pub fn matrix(&self) -> &CMatrix<T, 16> {
        &self.0
    }

    pub fn conjugate(&self, m: &CMatrix<T, 16>) -> CMatrix<T, 16> {
        m.conjugate_by(&self.0)
    }
}

/// `s1 ⊗ s2` in the two-pair qubit order.
pub fn tensor_pairs<T: Real>(s1: &DensityMatrix<T>, s2: &DensityMatrix<T>) -> TwoPairState<T> {
    TwoPairState(kron(s1.matrix(), s2.matrix()))
}

/// CNOT(Alice₁ → Alice₂) ⊗ CNOT(Bob₁ → Bob₂) as a permutation matrix.
pub fn build_bcnot<T: Real>() -> BcnotUnitary<T> {
    let image = |idx: usize| {
        let a1 = (idx >> 3) & 1;
        let b1 = (idx >> 2) & 1;
        let a2 = ((idx >> 1) & 1) ^ a1;
        let b2 = (idx & 1) ^ b1;
        (a1 << 3) | (b1 << 2) | (a2 << 1) | b2
    };
    BcnotUnitary(CMatrix::from_fn(|i, j| {
        if image(j) == i {
            Complex::one()
        } else {
            Complex::zero()
        }
    }))
}

/// A signed two-qubit Pauli product `sign · (control ⊗ target)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPauli {
    pub sign: i8,
    pub control: Pauli,
    pub target: Pauli,
}

impl SignedPauli {
    pub const fn new(sign: i8, control: Pauli, target: Pauli) -> Self {
        Self {
            sign,
            control,
            target,
        }
    }
}

impl std::fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.sign < 0 { '-' } else { '+' };
        write!(f, "{s}{}{}", self.control, self.target)
    }
}

/// Reference table of CNOT conjugations `(control op, target op) -> image`,
/// as commonly printed for the bilateral CNOT. Audited, not trusted.
pub const REFERENCE_TABLE: [[SignedPauli; 4]; 4] = {
    use Pauli::{I, X, Y, Z};
    const fn sp(sign: i8, c: Pauli, t: Pauli) -> SignedPauli {
        SignedPauli::new(sign, c, t)
    }
    [
        [sp(1, I, I), sp(1, X, X), sp(1, Y, X), sp(1, Z, I)],
        [sp(1, I, X), sp(1, X, I), sp(1, I, Y), sp(1, Z, X)],
        [sp(1, Z, Y), sp(1, Y, Y), sp(-1, X, Z), sp(1, I, Y)],
        [sp(1, Z, Z), sp(-1, Y, Y), sp(1, X, Y), sp(1, I, Z)],
    ]
};

/// One row of the conjugation audit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationEntry {
    pub control: Pauli,
    pub target: Pauli,
    /// Exact image, `None` if it is not a single signed Pauli product.
    pub computed: Option<SignedPauli>,
    pub reference: SignedPauli,
}

impl ConjugationEntry {
    pub fn agrees(&self) -> bool {
        self.computed == Some(self.reference)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationAudit {
    pub entries: Vec<ConjugationEntry>,
}

impl ConjugationAudit {
    pub fn agreements(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees()).count()
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &ConjugationEntry> {
        self.entries.iter().filter(|e| !e.agrees())
    }

    /// Every image is a single signed product (Clifford closure).
    pub fn is_clifford(&self) -> bool {
        self.entries.iter().all(|e| e.computed.is_some())
    }
}

/// Conjugates `σμ` on Alice₁ and `σν` on Alice₂ by the bilateral CNOT,
/// decomposes the image over all 256 four-qubit Pauli products and diffs it
/// against [`REFERENCE_TABLE`].
pub fn pauli_conjugation_table<T: Real>() -> ConjugationAudit {
    let u = build_bcnot::<T>();
    let tol = invariant_tol::<T>();
    let mut entries = Vec::with_capacity(16);
    for (row, &mu) in Pauli::ALL.iter().enumerate() {
        for (col, &nu) in Pauli::ALL.iter().enumerate() {
            let op = pauli4::<T>([mu, Pauli::I, nu, Pauli::I]);
            let image = u.conjugate(&op);
            let mut terms = Vec::new();
            for a1 in Pauli::ALL {
                for b1 in Pauli::ALL {
                    for a2 in Pauli::ALL {
                        for b2 in Pauli::ALL {
                            let basis = pauli4::<T>([a1, b1, a2, b2]);
                            let coeff = basis.trace_product(&image) / lit::<T>(16.0);
                            if coeff.norm() > tol {
                                terms.push(([a1, b1, a2, b2], coeff));
                            }
                        }
                    }
                }
            }
            let computed = match terms.as_slice() {
                [([a1, Pauli::I, a2, Pauli::I], c)]
                    if c.im.abs() <= tol && (c.re.abs() - T::one()).abs() <= tol =>
                {
                    let sign = if c.re > T::zero() { 1 } else { -1 };
                    Some(SignedPauli::new(sign, *a1, *a2))
                }
                _ => None,
            };
            entries.push(ConjugationEntry {
                control: mu,
                target: nu,
                computed,
                reference: REFERENCE_TABLE[row][col],
            });
        }
    }
    ConjugationAudit { entries }
}

/// Which qubit of a pair a one-sided channel acts on.
pub use crate::bell::Party;

/// `ρ → p ρ + (1 - p) (I/2 ⊗ tr_q ρ)` on the chosen qubit `q` of one pair.
pub fn depolarize_pair<T: Real>(
    rho: &DensityMatrix<T>,
    qubit: Party,
    noise: &NoiseModel<T>,
) -> DensityMatrix<T> {
    let p = noise.reliability();
    let half_id = CMatrix::<T, 2>::identity().scale(lit(0.5));
    let replaced: CMatrix<T, 4> = match qubit {
        Party::Alice => {
            let bob = trace_first::<T, 2, 2, 4>(rho.matrix());
            kron(&half_id, &bob)
        }
        Party::Bob => {
            let alice = trace_second::<T, 2, 2, 4>(rho.matrix());
            kron(&alice, &half_id)
        }
    };
    DensityMatrix::new_unchecked(rho.matrix().scale(p) + replaced.scale(T::one() - p))
}

/// `p² U ρ U† + (1 - p²) I/16`.
pub fn noisy_bcnot<T: Real>(rho: &TwoPairState<T>, noise: &NoiseModel<T>) -> TwoPairState<T> {
    let p = noise.reliability();
    let q = p * p;
    let u = build_bcnot::<T>();
    let ideal = u.conjugate(&rho.0);
    let mixed = CMatrix::<T, 16>::identity().scale((T::one() - q) / lit(16.0));
    TwoPairState(ideal.scale(q) + mixed)
}

/// Projector onto coinciding z outcomes of Alice₂ and Bob₂.
fn coincidence_projector<T: Real>() -> CMatrix<T, 16> {
    CMatrix::from_fn(|i, j| {
        let a2 = (i >> 1) & 1;
        let b2 = i & 1;
        if i == j && a2 == b2 {
            Complex::one()
        } else {
            Complex::zero()
        }
    })
}

/// Unnormalized post-measurement state of pair 1 after keeping coinciding
/// target outcomes. Its trace is the success probability.
pub fn coincidence_unnormalized<T: Real>(rho: &TwoPairState<T>) -> CMatrix<T, 4> {
    let proj = coincidence_projector::<T>();
    let kept = proj * rho.0 * proj;
    trace_second::<T, 4, 4, 16>(&kept)
}

/// Keeps pair 1 when the target z outcomes coincide.
///
/// Returns the normalized state of pair 1 and the success probability.
pub fn coincidence_project<T: Real>(rho: &TwoPairState<T>) -> Result<(DensityMatrix<T>, T)> {
    let reduced = coincidence_unnormalized(rho);
    let n = reduced.trace().re;
    if !(n >= lit(T::DISCARD_TOL)) {
        return Err(Error::AlwaysDiscarded(n.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((DensityMatrix::new_unchecked(reduced.scale(n.recip())), n))
}

/// One purification round computed on explicit matrices.
pub fn oracle_step<T: Real>(
    s1: &CorrelationTriple<T>,
    s2: &CorrelationTriple<T>,
    variant: Variant,
    noise: &NoiseModel<T>,
) -> Result<StepResult<T>> {
    let mut rho1 = s1.to_density_matrix();
    let mut rho2 = s2.to_density_matrix();
    if variant == Variant::Ox1 {
        let u = LocalRotation::CounterX.unitary::<T>();
        rho1 = rho1.conjugate_by(&u);
        rho2 = rho2.conjugate_by(&u);
    }
    if noise.transmission {
        rho1 = depolarize_pair(&rho1, Party::Alice, noise);
        rho2 = depolarize_pair(&rho2, Party::Alice, noise);
    }
    let joint = tensor_pairs(&rho1, &rho2);
    let after = if noise.gate {
        noisy_bcnot(&joint, noise)
    } else {
        TwoPairState(build_bcnot::<T>().conjugate(&joint.0))
    };
    let (out, n) = coincidence_project(&after)?;
    let output = out.to_triple().map_err(|e| match e {
        Error::NotBellDiagonal { .. } | Error::NotPositive(..) => {
            Error::Inconsistent(format!("oracle output left the Bell-diagonal family: {e}"))
        }
        other => other,
    })?;
    Ok(StepResult {
        output,
        success_probability: n,
        variant,
        noise: *noise,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Triple = CorrelationTriple<f64>;

    fn id16() -> CMatrix<f64, 16> {
        CMatrix::identity()
    }

    #[test]
    fn bcnot_is_unitary_and_involutive() {
        let u = build_bcnot::<f64>();
        let m = *u.matrix();
        assert!((m * m.adjoint()).max_abs_diff(&id16()) < 1e-12);
        assert!((m * m).max_abs_diff(&id16()) < 1e-12);
    }

    #[test]
    fn control_z_is_fixed() {
        let u = build_bcnot::<f64>();
        let z1 = pauli4::<f64>([Pauli::Z, Pauli::I, Pauli::I, Pauli::I]);
        assert!(u.conjugate(&z1).max_abs_diff(&z1) < 1e-15);
    }

    #[test]
    fn standard_propagation_rules() {
        let audit = pauli_conjugation_table::<f64>();
        assert_eq!(audit.entries.len(), 16);
        assert!(audit.is_clifford());
        let find = |c: Pauli, t: Pauli| {
            audit
                .entries
                .iter()
                .find(|e| e.control == c && e.target == t)
                .unwrap()
                .computed
                .unwrap()
        };
        assert_eq!(find(Pauli::I, Pauli::Z), SignedPauli::new(1, Pauli::Z, Pauli::Z));
        assert_eq!(find(Pauli::X, Pauli::I), SignedPauli::new(1, Pauli::X, Pauli::X));
        assert_eq!(find(Pauli::X, Pauli::Z), SignedPauli::new(-1, Pauli::Y, Pauli::Y));
        assert_eq!(find(Pauli::Y, Pauli::Y), SignedPauli::new(-1, Pauli::X, Pauli::Z));
    }

    #[test]
    fn tensor_of_mixed_states() {
        let m = Triple::maximally_mixed().to_density_matrix();
        let t = tensor_pairs(&m, &m);
        assert!(t.matrix().max_abs_diff(&id16().scale(1.0 / 16.0)) < 1e-15);
    }

    #[test]
    fn tensor_of_pure_states_is_pure_and_traces_back() {
        let ideal = Triple::ideal().to_density_matrix();
        let other = Triple::binary(0.8).unwrap().to_density_matrix();
        let t = tensor_pairs(&ideal, &ideal);
        assert!((t.matrix().purity() - 1.0).abs() < 1e-12);
        let mixed = tensor_pairs(&other, &ideal);
        assert!(mixed.first_pair().max_abs_diff(other.matrix()) < 1e-15);
        assert!(mixed.second_pair().max_abs_diff(ideal.matrix()) < 1e-15);
        mixed.validate().unwrap();
    }

    #[test]
    fn depolarization_scales_correlations() {
        let f = 0.8;
        let p = 0.9;
        let noise = NoiseModel::new(p).unwrap();
        let b = Triple::binary(f).unwrap().to_density_matrix();
        let out = depolarize_pair(&b, Party::Alice, &noise).to_triple().unwrap();
        let [cx, cy, cz] = out.coefficients();
        assert!((cx - p).abs() < 1e-14);
        assert!((cy - p * (2.0 * f - 1.0)).abs() < 1e-14);
        assert!((cz - p * (2.0 * f - 1.0)).abs() < 1e-14);

        let one = NoiseModel::new(1.0).unwrap();
        assert!(depolarize_pair(&b, Party::Bob, &one).matrix().max_abs_diff(b.matrix()) < 1e-15);

        let zero = NoiseModel::new(0.0).unwrap();
        let dead = depolarize_pair(&b, Party::Bob, &zero).to_triple().unwrap();
        assert!(dead.max_abs_diff(&Triple::maximally_mixed()) < 1e-15);
    }

    #[test]
    fn noisy_bcnot_limits() {
        let s = Triple::new(0.5, -0.2, 0.3).unwrap().to_density_matrix();
        let t = Triple::binary(0.7).unwrap().to_density_matrix();
        let joint = tensor_pairs(&s, &t);
        let exact = build_bcnot::<f64>().conjugate(joint.matrix());
        let p1 = noisy_bcnot(&joint, &NoiseModel::new(1.0).unwrap());
        assert!(p1.matrix().max_abs_diff(&exact) < 1e-15);
        let p0 = noisy_bcnot(&joint, &NoiseModel::new(0.0).unwrap());
        assert!(p0.matrix().max_abs_diff(&id16().scale(1.0 / 16.0)) < 1e-15);
        let mid = noisy_bcnot(&joint, &NoiseModel::new(0.37).unwrap());
        assert!((mid.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coincidence_of_ideal_pairs() {
        let ideal = Triple::ideal().to_density_matrix();
        let joint = tensor_pairs(&ideal, &ideal);
        let after = TwoPairState(build_bcnot::<f64>().conjugate(joint.matrix()));
        let (out, n) = coincidence_project(&after).unwrap();
        assert!((n - 1.0).abs() < 1e-14);
        assert!(out.to_triple().unwrap().max_abs_diff(&Triple::ideal()) < 1e-14);
    }

    #[test]
    fn coincidence_probability_of_binary_pairs() {
        for f in [0.55, 0.7, 0.9] {
            let b = Triple::binary(f).unwrap();
            let r = oracle_step(&b, &b, Variant::Ox2, &NoiseModel::noiseless()).unwrap();
            assert!((r.success_probability - (2.0 * f * f - 2.0 * f + 1.0)).abs() < 1e-13);
            let fp = f * f / (f * f + (1.0 - f) * (1.0 - f));
            let want = Triple::binary(fp).unwrap();
            assert!(r.output.max_abs_diff(&want) < 1e-13);
        }
    }

    #[test]
    fn zero_probability_is_reported() {
        // Targets that always anticorrelate in z.
        let anti = Triple::new(1.0, 1.0, -1.0).unwrap().to_density_matrix();
        let z = Triple::new(0.0, 0.0, 1.0).unwrap().to_density_matrix();
        let joint = tensor_pairs(&z, &anti);
        let after = TwoPairState(build_bcnot::<f64>().conjugate(joint.matrix()));
        assert!(matches!(
            coincidence_project(&after),
            Err(Error::AlwaysDiscarded(_))
        ));
    }

    #[test]
    fn fixed_point_for_both_variants() {
        let ideal = Triple::ideal();
        for v in [Variant::Ox1, Variant::Ox2] {
            let r = oracle_step(&ideal, &ideal, v, &NoiseModel::noiseless()).unwrap();
            assert!((r.success_probability - 1.0).abs() < 1e-14);
            assert!(r.output.max_abs_diff(&ideal) < 1e-14);
        }
    }

    #[test]
    fn reference_table_has_known_mismatches() {
        let audit = pauli_conjugation_table::<f64>();
        assert!(audit.disagreements().count() > 0);
        assert!(audit
            .disagreements()
            .any(|e| e.control == Pauli::X && e.target == Pauli::I));
    }
}
