//! Witness search over the span of a finite list of vectors.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{FieldSpec, Scalar};

/// Limits for witness searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Enumerate exhaustively when |k|^dim is at most this.
    pub exhaustive_bound: u64,
    /// Number of random samples otherwise.
    pub samples: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, exhaustive_bound: 200_000, samples: 2_000 }
    }
}

/// Outcome of a witness search. `Absent` is a certificate: the whole
/// space was enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    Undetermined,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

pub fn combine(field: FieldSpec, basis: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = vec![field.zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o = o.add(&c.mul(x));
            }
        }
    }
    out
}

/// Searches span(basis) for a vector satisfying `pred`. Exhaustive runs
/// visit coefficient tuples in lexicographic order, so the first witness
/// is canonical.
pub fn search_span(
    field: FieldSpec,
    basis: &[Vec<Scalar>],
    cfg: &SearchConfig,
    mut pred: impl FnMut(&[Scalar]) -> bool,
) -> Search<Vec<Scalar>> {
    let r = basis.len();
    let exhaustive = field
        .size()
        .and_then(|q| q.checked_pow(r as u32))
        .is_some_and(|total| total <= cfg.exhaustive_bound);
    if exhaustive {
        let q = field.size().unwrap();
        let mut idx = vec![0u64; r];
        loop {
            let coeffs: Vec<Scalar> = idx.iter().map(|&v| Scalar::from_u64(field, v)).collect();
            let v = combine(field, basis, &coeffs);
            if pred(&v) {
                return Search::Found(v);
            }
            let mut k = r;
            loop {
                if k == 0 {
                    return Search::Absent;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < q {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    // Basis vectors first: they are the cheapest witnesses to report.
    for b in basis {
        if pred(b) {
            return Search::Found(b.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let coeffs: Vec<Scalar> = (0..r).map(|_| field.sample(&mut rng)).collect();
        let v = combine(field, basis, &coeffs);
        if pred(&v) {
            return Search::Found(v);
        }
    }
    Search::Undetermined
}
