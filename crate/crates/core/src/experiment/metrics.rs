//! Convergence metrics evaluated on gossip states.

use crate::error::{Error, Result};
use crate::gossip::{pair_index, NodeStates};
use crate::ranking::{kendall_tau_fast, PairwiseMatrix, Permutation, ScoreVector};

fn check_m(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `(1 / (n m)) sum_{v,i} (x_{v,i} - s_i)^2` over Borda score states.
pub fn score_mse(states: &impl NodeStates, truth: &ScoreVector) -> Result<f64> {
    check_m(states.m(), truth.m())?;
    let (n, m) = (states.n(), states.m());
    let mut acc = 0.0;
    for v in 0..n {
        let row = states
            .borda_scores(v)
            .ok_or_else(|| Error::InvalidParameter(format!("method `{}` carries no Borda scores", states.method())))?;
        acc += row
            .iter()
            .zip(truth.as_slice())
            .map(|(x, s)| (x - s).powi(2))
            .sum::<f64>();
    }
    Ok(acc / (n * m) as f64)
}

/// `(1 / (n m (m - 1))) sum_{v, i != j} (x_{v,(i,j)} - p_ij)^2`.
pub fn pairwise_mse(states: &impl NodeStates, truth: &PairwiseMatrix) -> Result<f64> {
    check_m(states.m(), truth.m())?;
    let (n, m) = (states.n(), states.m());
    let mut acc = 0.0;
    for v in 0..n {
        let row = states.pairwise_entries(v).ok_or_else(|| {
            Error::InvalidParameter(format!("method `{}` carries no pairwise entries", states.method()))
        })?;
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                acc += (row[pair_index(i, j, m)] - truth.get(i, j)).powi(2);
            }
        }
    }
    Ok(acc / (n * m * (m - 1)) as f64)
}

/// Mean Kendall distance `(1/n) sum_v d_tau(pi_v, truth)`.
pub fn kendall_error(estimates: &[Permutation], truth: &Permutation) -> Result<f64> {
    if estimates.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let total = estimates
        .iter()
        .map(|p| kendall_tau_fast(p, truth))
        .sum::<Result<u64>>()?;
    Ok(total as f64 / estimates.len() as f64)
}

/// Kendall error of every node's local estimate.
pub fn kendall_error_of(states: &impl NodeStates, truth: &Permutation) -> Result<f64> {
    let est: Vec<Permutation> = states.extract_all()?.into_iter().map(|e| e.ranking).collect();
    kendall_error(&est, truth)
}

/// Kendall error at each snapshot.
pub fn kendall_error_curve<S: NodeStates>(snapshots: &[S], truth: &Permutation) -> Result<Vec<f64>> {
    snapshots.iter().map(|s| kendall_error_of(s, truth)).collect()
}

/// `||X - xbar 1||^2` summed over every coordinate of an `n x dim` array.
pub fn squared_deviation(states: &[f64], dim: usize) -> f64 {
    let n = states.len() / dim;
    (0..dim)
        .map(|k| {
            let mean = (0..n).map(|v| states[v * dim + k]).sum::<f64>() / n as f64;
            (0..n).map(|v| (states[v * dim + k] - mean).powi(2)).sum::<f64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gossip::{GossipMethod, Simulation};
    use crate::graph::gen_complete;
    use crate::ranking::{Ranking, SortDirection};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sim(profile: &[&[usize]], method: GossipMethod) -> Simulation {
        let ballots: Vec<Ranking> = profile
            .iter()
            .map(|r| Permutation::new(r.to_vec()).unwrap().into())
            .collect();
        Simulation::init(method, &ballots, &gen_complete(ballots.len()).unwrap(), 0).unwrap()
    }

    #[test]
    fn score_mse_examples() {
        let s = sim(&[&[1, 2, 3], &[1, 2, 3]], GossipMethod::Borda);
        let exact = ScoreVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(score_mse(&s, &exact).unwrap(), 0.0);
        // every node off by one in a single coordinate
        let off = ScoreVector::new(vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(score_mse(&s, &off).unwrap(), 2.0 / 6.0);
        // one node matches, the other is off by one in two coordinates
        let s = sim(&[&[1, 2, 3], &[2, 1, 3]], GossipMethod::Borda);
        assert_eq!(score_mse(&s, &exact).unwrap(), 2.0 / 6.0);
        assert!(score_mse(&s, &ScoreVector::new(vec![1.0, 2.0]).unwrap()).is_err());
        assert!(score_mse(
            &sim(&[&[1, 2], &[2, 1]], GossipMethod::Copeland),
            &ScoreVector::new(vec![1.0, 2.0]).unwrap()
        )
        .is_err());
    }

    #[test]
    fn score_mse_matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ballots: Vec<Ranking> = (0..12)
            .map(|_| crate::data::uniform_permutation(5, &mut rng).into())
            .collect();
        let mut s = Simulation::init(GossipMethod::Borda, &ballots, &gen_complete(12).unwrap(), 4).unwrap();
        s.run(37, &[]);
        let truth: Vec<f64> = (0..5).map(|_| rng.random_range(1.0..5.0)).collect();
        let mut oracle = 0.0;
        for v in 0..12 {
            for (x, t) in s.state(v).iter().zip(&truth) {
                oracle += (x - t) * (x - t);
            }
        }
        let got = score_mse(&s, &ScoreVector::new(truth).unwrap()).unwrap();
        approx::assert_relative_eq!(got, oracle / 60.0, max_relative = 1e-12);
    }

    #[test]
    fn pairwise_mse_is_zero_for_unanimity() {
        let s = sim(&[&[2usize, 1, 3][..]; 3], GossipMethod::Copeland);
        let p = PairwiseMatrix::from_profile(&[Ranking::from(Permutation::new(vec![2, 1, 3]).unwrap())]).unwrap();
        assert_eq!(pairwise_mse(&s, &p).unwrap(), 0.0);
    }

    #[test]
    fn kendall_error_single_dissenter() {
        let truth = Permutation::identity(4);
        let mut est = vec![truth.clone(); 10];
        est[3] = Permutation::new(vec![1, 3, 2, 4]).unwrap();
        approx::assert_relative_eq!(kendall_error(&est, &truth).unwrap(), 0.1);
        assert_eq!(kendall_error(&vec![truth.clone(); 3], &truth).unwrap(), 0.0);
    }

    #[test]
    fn kendall_curve_at_t0_for_unanimous_profile() {
        let mut s = sim(&[&[3usize, 1, 2][..]; 4], GossipMethod::Footrule);
        let snaps = s.run(10, &[5]);
        let truth = Permutation::from_scores(&[3.0, 1.0, 2.0], SortDirection::Ascending).unwrap();
        assert_eq!(kendall_error_curve(&snaps, &truth).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn squared_deviation_by_hand() {
        // coordinates (1, 3) and (2, 2)
        assert_eq!(squared_deviation(&[1.0, 2.0, 3.0, 2.0], 2), 2.0);
    }
}
