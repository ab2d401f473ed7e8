//! Probe-point grids. Exact max-stratum computation is out of reach of the
//! procedures implemented here, so semicontinuous loci are explored at
//! finitely many rational points: a small coordinate window over ℚ, the
//! whole space over small prime fields.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::ring::{PointSpec, Ring};

/// The full probe grid of a ring: coordinates from {0, 1, -1, 2} over ℚ,
/// all of 𝔽_p^d over a prime field.
pub fn probe_grid(ring: &Arc<Ring>) -> Vec<PointSpec> {
    let values = ring.field().probe_values();
    let d = ring.nvars();
    let mut out = Vec::new();
    let mut idx = alloc::vec![0usize; d];
    loop {
        let coords: Vec<_> = idx.iter().map(|&i| values[i].clone()).collect();
        out.push(PointSpec::new(ring, coords).expect("grid point matches ring"));
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if idx[i] + 1 < values.len() {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
