//! Constants of the Borda and Copeland convergence bounds.
//!
//! Borda: `(1/n) sum_v E d_tau <= min{C1 e^{-c1 t}, C2 e^{-c2 t}}` with
//! `C1 = 2(m-1) gammaB / (n deltaB^2)` and `C2 = (m-1) sqrt(m gammaB) / (sqrt(n) deltaB)`.
//!
//! Copeland: `(m-1)/deltaC * min{K1 e^{-c1 t}, K2 e^{-c2 t}}` with
//! `K1 = sum_{i != j} ||p0_ij - p_ij 1||^2 / (n delta_ij^2)` and
//! `K2 = sum_{i != j} ||p0_ij - p_ij 1|| / (sqrt(n) delta_ij)`, `delta_ij = |p_ij - 1/2|`.
//! `deltaC` is the minimum gap between loss counts `sum_j I{p_ij <= 1/2}`.
//!
//! Rates are `c1 = c/2` and `c2 = c/4`.

use serde::Serialize;

use crate::consensus::check_transitivity;
use crate::error::Result;
use crate::gossip::effective_completion;
use crate::graph::SpectralInfo;
use crate::ranking::{CompletionScheme, PairwiseMatrix, Ranking};

/// Score gaps at or below this are treated as ties.
pub const GAP_TOL: f64 = 1e-12;

/// Undefined constants are `None` (tied scores, or a duel matrix that is not
/// strictly transitive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "gammaB")]
    pub gamma_b: f64,
    #[serde(rename = "deltaB")]
    pub delta_b: f64,
    #[serde(rename = "deltaC")]
    pub delta_c: Option<f64>,
    #[serde(rename = "C1")]
    pub const_c1: Option<f64>,
    #[serde(rename = "C2")]
    pub const_c2: Option<f64>,
    #[serde(rename = "K1")]
    pub const_k1: Option<f64>,
    #[serde(rename = "K2")]
    pub const_k2: Option<f64>,
    #[serde(rename = "c1")]
    pub rate_c1: f64,
    #[serde(rename = "c2")]
    pub rate_c2: f64,
}

impl BoundConstants {
    /// `C1 e^{-c1 t}`.
    pub fn borda_fast(&self, t: f64) -> Option<f64> {
        self.const_c1.map(|c| c * (-self.rate_c1 * t).exp())
    }

    /// `C2 e^{-c2 t}`.
    pub fn borda_slow(&self, t: f64) -> Option<f64> {
        self.const_c2.map(|c| c * (-self.rate_c2 * t).exp())
    }

    pub fn borda_bound(&self, t: f64) -> Option<f64> {
        Some(self.borda_fast(t)?.min(self.borda_slow(t)?))
    }

    /// `(m-1)/deltaC * K1 e^{-c1 t}`.
    pub fn copeland_fast(&self, t: f64) -> Option<f64> {
        Some(self.copeland_scale()? * self.const_k1? * (-self.rate_c1 * t).exp())
    }

    /// `(m-1)/deltaC * K2 e^{-c2 t}`.
    pub fn copeland_slow(&self, t: f64) -> Option<f64> {
        Some(self.copeland_scale()? * self.const_k2? * (-self.rate_c2 * t).exp())
    }

    pub fn copeland_bound(&self, t: f64) -> Option<f64> {
        Some(self.copeland_fast(t)?.min(self.copeland_slow(t)?))
    }

    fn copeland_scale(&self) -> Option<f64> {
        Some((self.m - 1) as f64 / self.delta_c?)
    }
}

fn min_gap(scores: &[f64]) -> f64 {
    let mut s = scores.to_vec();
    s.sort_by(f64::total_cmp);
    s.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Evaluates every constant for a profile on a graph with the given spectrum.
pub fn bound_constants(
    profile: &[Ranking],
    spectral: &SpectralInfo,
    completion: Option<CompletionScheme>,
) -> Result<BoundConstants> {
    let m = crate::consensus::uniform_m(profile)?;
    let n = profile.len();
    let nf = n as f64;
    let scheme = effective_completion(profile, completion);

    let initial: Vec<Vec<f64>> = profile.iter().map(|r| r.completed_scores(scheme).into_vec()).collect();
    let s: Vec<f64> = (0..m).map(|i| initial.iter().map(|x| x[i]).sum::<f64>() / nf).collect();
    let gamma_b: f64 = initial
        .iter()
        .map(|x| x.iter().zip(&s).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
        .sum();
    let delta_b = min_gap(&s);
    let (const_c1, const_c2) = if delta_b > GAP_TOL {
        let mm1 = (m - 1) as f64;
        (
            Some(2.0 * mm1 * gamma_b / (nf * delta_b * delta_b)),
            Some(mm1 * (m as f64 * gamma_b).sqrt() / (nf.sqrt() * delta_b)),
        )
    } else {
        (None, None)
    };

    let p = PairwiseMatrix::from_profile(profile)?;
    let (delta_c, const_k1, const_k2) = if check_transitivity(&p).is_strict() {
        let losses: Vec<f64> = (0..m)
            .map(|i| (0..m).filter(|&j| j != i && p.get(i, j) <= 0.5).count() as f64)
            .collect();
        let mut k1 = 0.0;
        let mut k2 = 0.0;
        let mut single = vec![0.0; m * m];
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                let pij = p.get(i, j);
                let dev2: f64 = profile
                    .iter()
                    .map(|r| {
                        single.iter_mut().for_each(|x| *x = 0.0);
                        crate::ranking::add_pairwise(r, &mut single);
                        (single[i * m + j] - pij).powi(2)
                    })
                    .sum();
                let delta = (pij - 0.5).abs();
                k1 += dev2 / (nf * delta * delta);
                k2 += dev2.sqrt() / (nf.sqrt() * delta);
            }
        }
        (Some(min_gap(&losses)), Some(k1), Some(k2))
    } else {
        (None, None, None)
    };

    Ok(BoundConstants {
        m,
        n,
        gamma_b,
        delta_b,
        delta_c,
        const_c1,
        const_c2,
        const_k1,
        const_k2,
        rate_c1: spectral.c / 2.0,
        rate_c2: spectral.c / 4.0,
    })
}
