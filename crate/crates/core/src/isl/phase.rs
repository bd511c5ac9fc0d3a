use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

/// In-row phase quantities for a Walker phasing factor.
///
/// Phases are kept in integer quanta of `2π/(n1·n2)` so that every
/// comparison is exact; `Δf` is `F` quanta and `ωf` is `n1` quanta.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseAnalysis {
    pub planes: usize,
    pub per_plane: usize,
    pub phasing: usize,
    /// `n1/F`; `None` when `F = 0`.
    pub k: Option<Rational64>,
    /// ΔP'(h) for `h = 1..=n1` (index `h-1`), in quanta.
    pub offsets: Vec<u64>,
    /// N(h): backward links between plane 1 and plane h.
    pub backward: Vec<usize>,
    /// M(h): forward links between plane 1 and plane h.
    pub forward: Vec<usize>,
    /// `(n1-1)·Δf` in quanta.
    pub conventional_max_quanta: u64,
    /// Smallest arc covering all same-slot phases of a conventional row,
    /// which differs from the above once `(n1-1)·Δf` passes π.
    pub conventional_wrapped_quanta: u64,
    pub optimized_max_quanta: u64,
}

impl PhaseAnalysis {
    pub fn quantum(&self) -> f64 {
        TAU / (self.planes * self.per_plane) as f64
    }

    pub fn delta_f(&self) -> f64 {
        self.phasing as f64 * self.quantum()
    }

    pub fn conventional_max(&self) -> f64 {
        self.conventional_max_quanta as f64 * self.quantum()
    }

    pub fn optimized_max(&self) -> f64 {
        self.optimized_max_quanta as f64 * self.quantum()
    }

    pub fn offset(&self, h: usize) -> f64 {
        self.offsets[h - 1] as f64 * self.quantum()
    }
}

pub fn phase_analysis(n1: usize, n2: usize, phasing: usize) -> PhaseAnalysis {
    let k = (phasing > 0).then(|| Rational64::new(n1 as i64, phasing as i64));
    let mut offsets = Vec::with_capacity(n1);
    let mut backward = Vec::with_capacity(n1);
    let mut forward = Vec::with_capacity(n1);
    let mut bh = 0;
    for h in 1..=n1 {
        // (h-1)·F = ⌊(h-1)/K⌋·n1 + ΔP'(h)
        let (_, rem) = ((h - 1) * phasing).div_rem(&n1);
        offsets.push(rem as u64);
        // For F <= n1 every backward link skips one slot and N(h) equals
        // ⌊(h-1)/K⌋; beyond that a single link may skip several slots.
        if h > 1 && backward_shift(n1, phasing, h - 1) > 0 {
            bh += 1;
        }
        backward.push(bh);
        forward.push(h - 1 - bh);
    }
    let conventional_max_quanta = ((n1 - 1) * phasing) as u64;
    let total = (n1 * n2) as u64;
    let mut pts: Vec<u64> = (0..n1).map(|h| (h * phasing) as u64 % total).collect();
    pts.sort_unstable();
    pts.dedup();
    let largest_gap = pts
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(total - pts[pts.len() - 1] + pts[0]))
        .max()
        .unwrap_or(total);
    PhaseAnalysis {
        planes: n1,
        per_plane: n2,
        phasing,
        k,
        optimized_max_quanta: offsets.iter().copied().max().unwrap_or(0),
        offsets,
        backward,
        forward,
        conventional_max_quanta,
        conventional_wrapped_quanta: total - largest_gap,
    }
}

/// Slots skipped backwards by the H-ISL leaving plane `h` eastward in the
/// optimized mode: `⌊h/K⌋ - ⌊(h-1)/K⌋`.
pub fn backward_shift(n1: usize, phasing: usize, h: usize) -> usize {
    (h * phasing) / n1 - ((h - 1) * phasing) / n1
}

/// Planes `h` in `1..n1` whose eastward H-ISL is backward.
pub fn bh_isl_planes(n1: usize, k: Rational64) -> BTreeSet<usize> {
    (1..n1)
        .filter(|&h| {
            let hi = (Rational64::from_integer(h as i64) / k).floor();
            let lo = (Rational64::from_integer(h as i64 - 1) / k).floor();
            hi > lo
        })
        .collect()
}
