use std::collections::BTreeMap;

use super::{Base, GradedMatrixRing};
use crate::error::{Error, Result};
use crate::verdict::{Truth, Verdict};

/// Canonical shifts of a graded-isomorphic ring.
///
/// Over K: translate so the minimum is 0, then sort. Over K[x^m, x^-m]:
/// reduce mod m and take the lexicographically least sorted vector over all
/// common translations.
pub fn normalize_shifts(ring: &GradedMatrixRing) -> GradedMatrixRing {
    let shifts = match ring.base() {
        Base::Field => {
            let min = *ring.shifts().iter().min().expect("n >= 1");
            let mut s: Vec<i64> = ring.shifts().iter().map(|g| g - min).collect();
            s.sort_unstable();
            s
        }
        Base::Laurent { m } => {
            let m = m as i64;
            (0..m)
                .map(|t| {
                    let mut s: Vec<i64> = ring.shifts().iter().map(|g| (g + t).rem_euclid(m)).collect();
                    s.sort_unstable();
                    s
                })
                .min()
                .expect("m >= 1")
        }
    };
    GradedMatrixRing::new(ring.base(), shifts).expect("same size and base")
}

/// `k_i = #{γ : γ ≡ i mod m}` for `i = 0..m`.
pub fn residue_multiplicities(ring: &GradedMatrixRing) -> Result<Vec<usize>> {
    let Base::Laurent { m } = ring.base() else {
        return Err(Error::Contract(
            "residue multiplicities need a Laurent base".into(),
        ));
    };
    let mut k = vec![0usize; m as usize];
    for g in ring.shifts() {
        k[g.rem_euclid(m as i64) as usize] += 1;
    }
    Ok(k)
}

/// Index blocks of the degree-zero component: equal shifts over K, equal
/// residues mod m over the Laurent ring. Blocks are ordered by key.
pub fn zero_component_structure(ring: &GradedMatrixRing) -> Vec<Vec<usize>> {
    let key = |g: i64| match ring.base() {
        Base::Field => g,
        Base::Laurent { m } => g.rem_euclid(m as i64),
    };
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &g) in ring.shifts().iter().enumerate() {
        blocks.entry(key(g)).or_default().push(i);
    }
    blocks.into_values().collect()
}

pub fn is_graded_clean_ring(ring: &GradedMatrixRing) -> Verdict {
    match ring.base() {
        Base::Field => {
            let s = ring.shifts();
            Verdict::new(
                Truth::from_bool(s.iter().all(|&g| g == s[0])),
                "matrix.graded_clean_trivial_base",
            )
        }
        Base::Laurent { .. } => Verdict::new(
            Truth::from_bool(ring.n() == 1),
            "matrix.graded_clean_laurent_base",
        ),
    }
}

pub fn graded_exchange_ring(ring: &GradedMatrixRing) -> Verdict {
    match ring.base() {
        Base::Field => Verdict::new(Truth::Yes, "matrix.graded_exchange_trivial_base"),
        Base::Laurent { .. } => {
            let k = residue_multiplicities(ring).expect("Laurent base");
            if k.iter().all(|&c| c <= 1) {
                Verdict::new(Truth::Yes, "matrix.graded_exchange_distinct_residues")
            } else {
                Verdict::new(Truth::Unknown, "matrix.graded_exchange_repeated_residue_open")
            }
        }
    }
}
