//! Exhaustive search over H-ISL connecting choices.
//!
//! Each of the `n1-1` plane boundaries either links forward to the same
//! slot (adds `+Δf` to the running phase offset) or backward by `s >= 1`
//! slots (adds `Δf - s·ωf`). Assignments that drive any running offset
//! negative are discarded; among the rest we keep the one with the
//! smallest maximum offset. The search knows nothing about floors or
//! `mod K`, which is what makes it useful as a check on them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub const BRUTE_FORCE_MAX_PLANES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceOptimum {
    /// Minimum achievable max_h ΔP'(h), in quanta of `2π/(n1·n2)`.
    pub min_max_quanta: u64,
    /// Backward shift chosen at each boundary `1..n1`.
    pub shifts: Vec<usize>,
    /// Boundaries that link backward in the optimum.
    pub bh_boundaries: BTreeSet<usize>,
    /// Number of distinct assignments attaining the optimum.
    pub optimal_count: usize,
}

pub fn theorem1_bruteforce(n1: usize, n2: usize, phasing: usize) -> Result<BruteForceOptimum> {
    if n1 > BRUTE_FORCE_MAX_PLANES {
        return Err(Error::OracleScope {
            n1,
            limit: BRUTE_FORCE_MAX_PLANES,
        });
    }
    if n1 < 2 || phasing >= n2 {
        return Err(Error::config(
            "F",
            format!("need n1 >= 2 and F < n2 (n1={n1}, n2={n2}, F={phasing})"),
        ));
    }
    let f = phasing as i64;
    let w = n1 as i64;
    // a backward link never needs to skip more than ⌈F/n1⌉ slots
    let max_shift = phasing.div_ceil(n1).max(1);

    let mut search = Search {
        f,
        w,
        max_shift,
        boundaries: n1 - 1,
        current: Vec::with_capacity(n1 - 1),
        best: None,
        count: 0,
    };
    search.descend(0, 0);
    let (best_max, shifts) = search.best.expect("all-forward assignment is always feasible");
    let bh_boundaries = shifts
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 0)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(BruteForceOptimum {
        min_max_quanta: best_max as u64,
        shifts,
        bh_boundaries,
        optimal_count: search.count,
    })
}

struct Search {
    f: i64,
    w: i64,
    max_shift: usize,
    boundaries: usize,
    current: Vec<usize>,
    best: Option<(i64, Vec<usize>)>,
    count: usize,
}

impl Search {
    fn descend(&mut self, offset: i64, running_max: i64) {
        if let Some((b, _)) = &self.best {
            if running_max > *b {
                return;
            }
        }
        if self.current.len() == self.boundaries {
            match &self.best {
                Some((b, _)) if *b == running_max => self.count += 1,
                _ => {
                    self.best = Some((running_max, self.current.clone()));
                    self.count = 1;
                }
            }
            return;
        }
        for s in 0..=self.max_shift {
            let next = offset + self.f - s as i64 * self.w;
            if next < 0 {
                break;
            }
            self.current.push(s);
            self.descend(next, running_max.max(next));
            self.current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_planes_k3() {
        let r = theorem1_bruteforce(6, 12, 2).unwrap();
        // 2Δf = 4 quanta
        assert_eq!(r.min_max_quanta, 4);
        assert_eq!(r.bh_boundaries, BTreeSet::from([3]));
        assert_eq!(r.optimal_count, 1);
    }

    #[test]
    fn zero_phasing() {
        let r = theorem1_bruteforce(4, 8, 0).unwrap();
        assert_eq!(r.min_max_quanta, 0);
        assert!(r.bh_boundaries.is_empty());
    }

    #[test]
    fn nine_planes_k3() {
        let r = theorem1_bruteforce(9, 18, 3).unwrap();
        assert_eq!(r.min_max_quanta, 2 * 3);
        assert_eq!(r.bh_boundaries, BTreeSet::from([3, 6]));
    }

    #[test]
    fn refuses_large_n1() {
        assert!(matches!(theorem1_bruteforce(13, 26, 1), Err(Error::OracleScope { .. })));
    }
}
