//! Centralized consensus rules and the local Kemenization refinement.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ranking::{
    pairwise_disagreement, spearman_footrule, CompletionScheme, Ordering, PairwiseMatrix, Permutation, Ranking,
    ScoreVector, SortDirection,
};

/// Largest item count accepted by [`kemeny_bruteforce`].
pub const KEMENY_MAX_ITEMS: usize = 10;

/// Loss differences below this are treated as ties during the Kemeny search.
const LOSS_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Borda,
    Copeland,
    Footrule,
    Kemeny,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::Borda, Rule::Copeland, Rule::Footrule, Rule::Kemeny];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Borda => "borda",
            Rule::Copeland => "copeland",
            Rule::Footrule => "footrule",
            Rule::Kemeny => "kemeny",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown {
                kind: "consensus rule",
                name: s.to_string(),
            })
    }
}

/// Outcome of a centralized rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusResult {
    pub rule: Rule,
    /// Rule scores; `None` for Kemeny.
    pub scores: Option<ScoreVector>,
    pub ranking: Permutation,
    /// Mean Kendall distance from `ranking` to the voters (total loss divided by n).
    pub objective: f64,
}

/// Mean rank of each item; the consensus sorts ascending.
pub fn borda_consensus(profile: &[Permutation]) -> Result<ConsensusResult> {
    let ballots = complete_ballots(profile)?;
    borda_consensus_with(&ballots, CompletionScheme::AverageImpute)
}

/// Borda over ballots that may be partial, completed with `scheme` first.
pub fn borda_consensus_with(profile: &[Ranking], scheme: CompletionScheme) -> Result<ConsensusResult> {
    let m = uniform_m(profile)?;
    let mut s = vec![0.0; m];
    for r in profile {
        for (acc, x) in s.iter_mut().zip(r.completed_scores(scheme).as_slice()) {
            *acc += x;
        }
    }
    let n = profile.len() as f64;
    s.iter_mut().for_each(|x| *x /= n);
    let ranking = Permutation::from_scores(&s, SortDirection::Ascending)?;
    let p = PairwiseMatrix::from_profile(profile)?;
    Ok(ConsensusResult {
        rule: Rule::Borda,
        objective: pairwise_disagreement(ranking.ranks(), &p),
        scores: Some(ScoreVector::new(s)?),
        ranking,
    })
}

/// Copeland scores: duels won minus duels lost, where item `i` wins against
/// `j` iff `p[i][j] > 1/2`. A duel at exactly one half is a loss for both.
pub fn copeland_scores(p: &PairwiseMatrix) -> Vec<f64> {
    let m = p.m();
    (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i)
                .map(|j| if p.get(i, j) > 0.5 { 1.0 } else { -1.0 })
                .sum()
        })
        .collect()
}

/// Copeland consensus; sorts scores descending.
pub fn copeland_consensus(p: &PairwiseMatrix) -> Result<ConsensusResult> {
    let s = copeland_scores(p);
    let ranking = Permutation::from_scores(&s, SortDirection::Descending)?;
    Ok(ConsensusResult {
        rule: Rule::Copeland,
        objective: pairwise_disagreement(ranking.ranks(), p),
        scores: Some(ScoreVector::new(s)?),
        ranking,
    })
}

/// Coordinate-wise median rank of each item. With an even voter count the
/// median is the midpoint of the two middle order statistics.
pub fn median_ranks(profile: &[Permutation]) -> Result<Vec<f64>> {
    let m = uniform_m_complete(profile)?;
    let n = profile.len();
    let mut column = Vec::with_capacity(n);
    Ok((0..m)
        .map(|i| {
            column.clear();
            column.extend(profile.iter().map(|p| p.rank(i)));
            column.sort_unstable();
            if n % 2 == 1 {
                column[n / 2] as f64
            } else {
                (column[n / 2 - 1] + column[n / 2]) as f64 / 2.0
            }
        })
        .collect())
}

/// Median-rank (footrule) consensus: sorts median ranks ascending, ties by item index.
pub fn footrule_consensus(profile: &[Permutation]) -> Result<ConsensusResult> {
    let s = median_ranks(profile)?;
    let ranking = Permutation::from_scores(&s, SortDirection::Ascending)?;
    let ballots = complete_ballots(profile)?;
    let p = PairwiseMatrix::from_profile(&ballots)?;
    Ok(ConsensusResult {
        rule: Rule::Footrule,
        objective: pairwise_disagreement(ranking.ranks(), &p),
        scores: Some(ScoreVector::new(s)?),
        ranking,
    })
}

/// Total footrule distance from `candidate` to every voter.
pub fn total_footrule(candidate: &Permutation, profile: &[Permutation]) -> Result<u64> {
    profile.iter().map(|v| spearman_footrule(candidate, v)).sum()
}

/// Exact Kemeny median by exhaustive search over all `m!` rankings.
///
/// Branches whose partial loss already exceeds the best complete loss are cut,
/// which leaves the argmin unchanged. Among equal-loss rankings the
/// lexicographically smallest rank vector wins.
pub fn kemeny_bruteforce(p: &PairwiseMatrix, n: usize) -> Result<ConsensusResult> {
    let m = p.m();
    if m > KEMENY_MAX_ITEMS {
        return Err(Error::KemenyCap {
            m,
            cap: KEMENY_MAX_ITEMS,
        });
    }
    if n == 0 {
        return Err(Error::EmptyProfile);
    }
    let mut search = KemenySearch {
        p,
        m,
        order: Vec::with_capacity(m),
        used: vec![false; m],
        best_loss: f64::INFINITY,
        best_ranks: Vec::new(),
    };
    search.descend(0.0);
    let ranking = Permutation::new(search.best_ranks)?;
    Ok(ConsensusResult {
        rule: Rule::Kemeny,
        scores: None,
        objective: pairwise_disagreement(ranking.ranks(), p),
        ranking,
    })
}

struct KemenySearch<'a> {
    p: &'a PairwiseMatrix,
    m: usize,
    order: Vec<usize>,
    used: Vec<bool>,
    best_loss: f64,
    best_ranks: Vec<usize>,
}

impl KemenySearch<'_> {
    fn descend(&mut self, loss: f64) {
        if loss > self.best_loss + LOSS_TIE_TOL {
            return;
        }
        if self.order.len() == self.m {
            let mut ranks = vec![0; self.m];
            for (pos, &item) in self.order.iter().enumerate() {
                ranks[item] = pos + 1;
            }
            let better = loss < self.best_loss - LOSS_TIE_TOL
                || (loss <= self.best_loss + LOSS_TIE_TOL && ranks < self.best_ranks);
            if better || self.best_ranks.is_empty() {
                self.best_loss = loss.min(self.best_loss);
                self.best_ranks = ranks;
            }
            return;
        }
        for x in 0..self.m {
            if self.used[x] {
                continue;
            }
            // Placing x next puts it above every remaining item y, costing p[y][x].
            let added: f64 = (0..self.m)
                .filter(|&y| y != x && !self.used[y])
                .map(|y| self.p.get(y, x))
                .sum();
            self.used[x] = true;
            self.order.push(x);
            self.descend(loss + added);
            self.order.pop();
            self.used[x] = false;
        }
    }
}

/// Adjacent-swap refinement until no neighbouring pair is reversed by a
/// majority. Sweeps run top to bottom and stop at the first sweep without swaps.
pub fn local_kemenize(start: &Ordering, p: &PairwiseMatrix) -> Result<Ordering> {
    if start.m() != p.m() {
        return Err(Error::DimensionMismatch {
            expected: p.m(),
            found: start.m(),
        });
    }
    local_kemenize_by(start.clone(), |i, j| p.get(i, j))
}

/// Local Kemenization against an arbitrary preference lookup on zero-based item
/// indices (`pref(i, j)` = support for `i` over `j`).
pub(crate) fn local_kemenize_by(mut order: Ordering, pref: impl Fn(usize, usize) -> f64) -> Result<Ordering> {
    let m = order.m();
    let max_sweeps = (m * m).max(1);
    let items = order.items_mut();
    for _ in 0..max_sweeps {
        let mut swapped = false;
        for pos in 0..m.saturating_sub(1) {
            let (upper, lower) = (items[pos] - 1, items[pos + 1] - 1);
            if pref(upper, lower) < 0.5 {
                items.swap(pos, pos + 1);
                swapped = true;
            }
        }
        if !swapped {
            return Ok(order);
        }
    }
    Err(Error::NonTermination { sweeps: max_sweeps })
}

/// Strongest stochastic-transitivity property satisfied by a duel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Transitivity {
    None,
    Weak,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityReport {
    pub level: Transitivity,
    pub has_half_ties: bool,
}

impl TransitivityReport {
    /// Weak transitivity without any duel at exactly one half.
    pub fn is_strict(&self) -> bool {
        self.level >= Transitivity::Weak && !self.has_half_ties
    }
}

pub fn check_transitivity(p: &PairwiseMatrix) -> TransitivityReport {
    let m = p.m();
    let mut weak = true;
    let mut strong = true;
    let mut has_half_ties = false;
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let pij = p.get(i, j);
            if pij == 0.5 {
                has_half_ties = true;
            }
            if pij < 0.5 {
                continue;
            }
            for k in 0..m {
                if k == i || k == j || p.get(j, k) < 0.5 {
                    continue;
                }
                let pik = p.get(i, k);
                if pik < 0.5 {
                    weak = false;
                }
                if pik < pij.max(p.get(j, k)) {
                    strong = false;
                }
            }
        }
    }
    let level = match (weak, strong) {
        (true, true) => Transitivity::Strong,
        (true, false) => Transitivity::Weak,
        _ => Transitivity::None,
    };
    TransitivityReport { level, has_half_ties }
}

/// Applies local Kemenization to a centralized result, recomputing its objective.
pub fn kemenize_result(result: &ConsensusResult, p: &PairwiseMatrix) -> Result<Permutation> {
    Ok(local_kemenize(&result.ranking.to_ordering(), p)?.to_permutation())
}

fn complete_ballots(profile: &[Permutation]) -> Result<Vec<Ranking>> {
    uniform_m_complete(profile)?;
    Ok(profile.iter().cloned().map(Ranking::from).collect())
}

fn uniform_m_complete(profile: &[Permutation]) -> Result<usize> {
    let m = profile.first().ok_or(Error::EmptyProfile)?.m();
    if let Some(bad) = profile.iter().find(|p| p.m() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bad.m(),
        });
    }
    Ok(m)
}

pub(crate) fn uniform_m(profile: &[Ranking]) -> Result<usize> {
    let m = profile.first().ok_or(Error::EmptyProfile)?.m();
    if let Some(bad) = profile.iter().find(|p| p.m() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bad.m(),
        });
    }
    Ok(m)
}
