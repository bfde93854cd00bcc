use std::collections::VecDeque;

use crate::scalar::Real;

use super::{Axis, CorrelationTriple, LocalRotation};

const GENERATORS: [LocalRotation; 6] = [
    LocalRotation::Bilateral(Axis::X),
    LocalRotation::Bilateral(Axis::Y),
    LocalRotation::Bilateral(Axis::Z),
    LocalRotation::u1(Axis::X),
    LocalRotation::u1(Axis::Y),
    LocalRotation::u1(Axis::Z),
];

/// Canonical representative of `s` under local rotations.
///
/// In fidelity form the result has magnitudes sorted `|cx| >= |cy| >= |cz|`
/// and non-negative signs wherever the product of the coefficients allows;
/// otherwise only `cz` is negative. The returned rotations, applied in
/// order, map `s` to the result exactly. An already canonical input yields an
/// empty sequence.
pub fn canonicalize<T: Real>(
    s: &CorrelationTriple<T>,
) -> (CorrelationTriple<T>, Vec<LocalRotation>) {
    let target = canonical_target(s);

    // Breadth-first over the finite orbit, so the witness is a shortest word.
    let mut seen: Vec<CorrelationTriple<T>> = vec![*s];
    let mut queue: VecDeque<(CorrelationTriple<T>, Vec<LocalRotation>)> = VecDeque::new();
    queue.push_back((*s, Vec::new()));
    while let Some((state, word)) = queue.pop_front() {
        if state.coefficients() == target {
            return (state, word);
        }
        for g in GENERATORS {
            let next = g.apply(&state);
            if seen.contains(&next) {
                continue;
            }
            seen.push(next);
            let mut w = word.clone();
            w.push(g);
            queue.push_back((next, w));
        }
    }
    unreachable!("canonical target lies in the orbit of every triple")
}

fn canonical_target<T: Real>(s: &CorrelationTriple<T>) -> [T; 3] {
    let c = s.coefficients();
    let mut m = c.map(|x| x.abs());
    m.sort_by(|a, b| b.partial_cmp(a).expect("finite coefficients"));
    if c[0] * c[1] * c[2] < T::zero() {
        m[2] = -m[2];
    }
    m
}
