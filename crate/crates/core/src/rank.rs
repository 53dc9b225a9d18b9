//! Numerical rank of the desired-signal matrices `U_i^H H_ii V_i`.

use crate::beamformer::BeamformerSet;
use crate::channel::ChannelSet;
use crate::error::Result;

/// Default relative singular-value threshold.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RankDiagnostics {
    pub per_user_rank: Vec<usize>,
    pub per_user_smallest_singular: Vec<f64>,
    pub satisfied: bool,
}

/// Counts singular values above `tol` times the largest one, per user.
pub fn rank_check(h: &ChannelSet, b: &BeamformerSet, tol: f64) -> Result<RankDiagnostics> {
    b.check_shapes(h.spec())?;
    let k = h.spec().users();
    let mut per_user_rank = Vec::with_capacity(k);
    let mut per_user_smallest_singular = Vec::with_capacity(k);
    for i in 0..k {
        let direct = b.decoder(i).adjoint() * h.link(i, i) * b.precoder(i);
        let sv = direct.singular_values();
        let largest = sv.iter().copied().fold(0.0_f64, f64::max);
        let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
        let rank = if largest > 0.0 {
            sv.iter().filter(|&&s| s > tol * largest).count()
        } else {
            0
        };
        per_user_rank.push(rank);
        per_user_smallest_singular.push(smallest.max(0.0));
    }
    let satisfied = per_user_rank
        .iter()
        .zip(h.spec().streams())
        .all(|(&r, &d)| r == d);
    Ok(RankDiagnostics { per_user_rank, per_user_smallest_singular, satisfied })
}
