use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::PreferenceProfile;
use crate::error::{Error, Result};
use crate::ranking::{kendall_tau, Permutation, Ranking};

/// Mallows distribution `P(pi) ∝ phi^{d_tau(pi, center)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MallowsModel {
    center: Permutation,
    phi: f64,
}

impl MallowsModel {
    pub fn new(center: Permutation, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&phi) {
            return Err(Error::InvalidParameter(format!("phi = {phi} outside [0, 1]")));
        }
        Ok(Self { center, phi })
    }

    pub fn center(&self) -> &Permutation {
        &self.center
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// One draw by repeated insertion: the `i`-th item of the center ordering
    /// is inserted at position `j <= i` with weight `phi^(i - j)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let center = self.center.to_ordering();
        let mut order: Vec<usize> = Vec::with_capacity(center.m());
        for (i, &item) in center.items().iter().enumerate() {
            let pos = insertion_position(i, self.phi, rng);
            order.insert(pos, item);
        }
        let mut ranks = vec![0; order.len()];
        for (pos, &item) in order.iter().enumerate() {
            ranks[item - 1] = pos + 1;
        }
        Permutation::new(ranks).expect("insertion yields a permutation")
    }
}

/// Zero-based slot among `i + 1` slots; slot `i` (the end) has weight 1, slot
/// `j` weight `phi^(i - j)`.
fn insertion_position<R: Rng + ?Sized>(i: usize, phi: f64, rng: &mut R) -> usize {
    if phi == 0.0 || i == 0 {
        return i;
    }
    let total: f64 = (0..=i).map(|d| phi.powi(d as i32)).sum();
    let mut u = rng.random::<f64>() * total;
    for d in 0..i {
        u -= phi.powi(d as i32);
        if u < 0.0 {
            return i - d;
        }
    }
    0
}

/// `Z(phi) = prod_{i=1}^{m} (1 + phi + ... + phi^(i-1))`.
pub fn mallows_normalizer(phi: f64, m: usize) -> f64 {
    (1..=m)
        .map(|i| (0..i).map(|d| phi.powi(d as i32)).sum::<f64>())
        .product()
}

/// Exact probability of `pi` under the model.
pub fn mallows_pmf(model: &MallowsModel, pi: &Permutation) -> Result<f64> {
    let d = kendall_tau(pi, model.center())?;
    Ok(model.phi().powi(d as i32) / mallows_normalizer(model.phi(), pi.m()))
}

pub fn sample_mallows<R: Rng + ?Sized>(model: &MallowsModel, n: usize, rng: &mut R) -> Vec<Permutation> {
    (0..n).map(|_| model.sample(rng)).collect()
}

/// `n` i.i.d. Mallows ballots.
pub fn mallows_sample<R: Rng + ?Sized>(model: &MallowsModel, n: usize, rng: &mut R) -> Result<PreferenceProfile> {
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    Ok(
        PreferenceProfile::from_permutations(sample_mallows(model, n, rng))?.with_source(format!(
            "mallows(m={}, phi={})",
            model.center().m(),
            model.phi()
        )),
    )
}

pub fn uniform_permutation<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Permutation {
    let mut ranks: Vec<usize> = (1..=m).collect();
    ranks.shuffle(rng);
    Permutation::new(ranks).expect("shuffled identity")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContaminationKind {
    /// Replaced voters hold uniformly random rankings.
    UniformRandom,
    /// Replaced voters are drawn from a Mallows model centred at the order
    /// reversal of the clean center.
    AdversarialReversed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContaminationSpec {
    pub epsilon: f64,
    pub kind: ContaminationKind,
    /// Dispersion of the adversarial Mallows model.
    pub phi: f64,
}

impl ContaminationSpec {
    pub fn new(epsilon: f64, kind: ContaminationKind, phi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!("epsilon = {epsilon} outside [0, 1)")));
        }
        if !(0.0..=1.0).contains(&phi) {
            return Err(Error::InvalidParameter(format!("phi = {phi} outside [0, 1]")));
        }
        Ok(Self { epsilon, kind, phi })
    }

    /// Number of voters replaced out of `n`: `floor(epsilon * n)`.
    pub fn replaced(&self, n: usize) -> usize {
        // the nudge keeps e.g. 0.29 * 100 from flooring to 28
        ((self.epsilon * n as f64) + 1e-9).floor() as usize
    }
}

/// Replaces `floor(epsilon * n)` uniformly chosen voters.
pub fn contaminate<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    spec: &ContaminationSpec,
    model: &MallowsModel,
    rng: &mut R,
) -> Result<PreferenceProfile> {
    if model.center().m() != profile.m() {
        return Err(Error::DimensionMismatch {
            expected: profile.m(),
            found: model.center().m(),
        });
    }
    let mut out = profile.clone();
    let k = spec.replaced(profile.n());
    if k == 0 {
        return Ok(out);
    }
    let adversary = MallowsModel::new(model.center().reversed(), spec.phi)?;
    let mut chosen = index::sample(rng, profile.n(), k).into_vec();
    chosen.sort_unstable();
    for v in chosen {
        let replacement = match spec.kind {
            ContaminationKind::UniformRandom => uniform_permutation(profile.m(), rng),
            ContaminationKind::AdversarialReversed => adversary.sample(rng),
        };
        out.voters_mut()[v] = Ranking::Complete(replacement);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn phi_zero_is_a_point_mass() {
        let center = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let model = MallowsModel::new(center.clone(), 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(sample_mallows(&model, 200, &mut rng).iter().all(|p| *p == center));
        assert_eq!(mallows_pmf(&model, &center).unwrap(), 1.0);
    }

    #[test]
    fn normalizer_matches_hand_value() {
        approx::assert_relative_eq!(mallows_normalizer(0.5, 3), 2.625);
        approx::assert_relative_eq!(mallows_normalizer(1.0, 4), 24.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(MallowsModel::new(Permutation::identity(3), 1.5).is_err());
        assert!(ContaminationSpec::new(1.0, ContaminationKind::UniformRandom, 0.5).is_err());
        assert!(ContaminationSpec::new(0.2, ContaminationKind::UniformRandom, -0.1).is_err());
        let model = MallowsModel::new(Permutation::identity(3), 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(mallows_sample(&model, 0, &mut rng).is_err());
    }

    #[test]
    fn contamination_counts() {
        let model = MallowsModel::new(Permutation::identity(5), 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let clean = mallows_sample(&model, 100, &mut rng).unwrap();

        let none = ContaminationSpec::new(0.0, ContaminationKind::UniformRandom, 0.5).unwrap();
        assert_eq!(contaminate(&clean, &none, &model, &mut rng).unwrap(), clean);
        assert_eq!(
            ContaminationSpec::new(0.29, ContaminationKind::UniformRandom, 0.5)
                .unwrap()
                .replaced(100),
            29
        );

        // unanimous clean profile and a point-mass adversary make replacements visible
        let unanimous = PreferenceProfile::from_permutations(vec![Permutation::identity(5); 100]).unwrap();
        let spec = ContaminationSpec::new(0.3, ContaminationKind::AdversarialReversed, 0.0).unwrap();
        assert_eq!(spec.replaced(100), 30);
        let dirty = contaminate(&unanimous, &spec, &model, &mut rng).unwrap();
        let reversed: Ranking = model.center().reversed().into();
        assert_eq!(dirty.voters().iter().filter(|r| **r == reversed).count(), 30);
        assert_eq!(
            dirty.voters().iter().filter(|r| **r == unanimous.voters()[0]).count(),
            70
        );
        assert_eq!((dirty.n(), dirty.m()), (100, 5));
    }
}
