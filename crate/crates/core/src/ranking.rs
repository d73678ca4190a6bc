//! Rankings over `m` items and the distances between them.
//!
//! Item labels and rank values are 1-based (rank 1 is the best). Anything
//! indexed by item, such as `Permutation::ranks()` or a score slice, uses the
//! zero-based position `item - 1`.

use std::cmp;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance used when validating floating-point invariants (row sums, complements).
pub const FLOAT_TOL: f64 = 1e-9;

/// A complete strict ranking: `ranks[i]` is the rank given to item `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    ranks: Vec<usize>,
}

impl Permutation {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        check_bijection(&ranks, ranks.len(), "rank")?;
        Ok(Self { ranks })
    }

    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "a permutation needs at least one item");
        Self {
            ranks: (1..=m).collect(),
        }
    }

    /// Ranks items by `scores`, ascending or descending, breaking exact ties
    /// by the lower item index.
    pub fn from_scores(scores: &[f64], direction: SortDirection) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidRanking("no items".into()));
        }
        if let Some(bad) = scores.iter().find(|s| !s.is_finite()) {
            return Err(Error::InvalidScores(format!("non-finite score {bad}")));
        }
        Ok(Self::rank_by(scores.len(), |a, b| match direction {
            SortDirection::Ascending => scores[a].total_cmp(&scores[b]),
            SortDirection::Descending => scores[b].total_cmp(&scores[a]),
        }))
    }

    /// Ranks `0..m` by a comparator on item indices; equal items keep index order.
    pub(crate) fn rank_by(m: usize, cmp_items: impl Fn(usize, usize) -> cmp::Ordering) -> Self {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| cmp_items(a, b).then(a.cmp(&b)));
        let mut ranks = vec![0; m];
        for (pos, &item) in order.iter().enumerate() {
            ranks[item] = pos + 1;
        }
        Self { ranks }
    }

    pub fn m(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of the item at zero-based index `i`.
    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn to_ordering(&self) -> Ordering {
        let mut items = vec![0; self.m()];
        for (i, &r) in self.ranks.iter().enumerate() {
            items[r - 1] = i + 1;
        }
        Ordering { items }
    }

    /// Order reversal: rank `r` becomes `m + 1 - r`.
    pub fn reversed(&self) -> Self {
        let m = self.m();
        Self {
            ranks: self.ranks.iter().map(|&r| m + 1 - r).collect(),
        }
    }

    /// Group inverse of the rank map.
    pub fn inverse(&self) -> Self {
        Self {
            ranks: self.to_ordering().items,
        }
    }

    pub fn into_ranks(self) -> Vec<usize> {
        self.ranks
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.ranks)
    }
}

/// Items listed best first: `items[j]` is the item placed `j + 1`-th.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    items: Vec<usize>,
}

impl Ordering {
    pub fn new(items: Vec<usize>) -> Result<Self> {
        check_bijection(&items, items.len(), "item")?;
        Ok(Self { items })
    }

    pub fn m(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut ranks = vec![0; self.m()];
        for (pos, &item) in self.items.iter().enumerate() {
            ranks[item - 1] = pos + 1;
        }
        Permutation { ranks }
    }

    pub(crate) fn items_mut(&mut self) -> &mut [usize] {
        &mut self.items
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.items)
    }
}

/// A top-`k` ranking: only `k < m` items are ranked, the rest share the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialRanking {
    ranks: Vec<Option<usize>>,
    k: usize,
}

impl PartialRanking {
    pub fn new(ranks: Vec<Option<usize>>) -> Result<Self> {
        let m = ranks.len();
        let given: Vec<usize> = ranks.iter().flatten().copied().collect();
        let k = given.len();
        if k == 0 || k >= m {
            return Err(Error::InvalidRanking(format!(
                "partial ranking needs 1 <= k < m, got k = {k}, m = {m}"
            )));
        }
        check_bijection(&given, k, "rank")?;
        Ok(Self { ranks, k })
    }

    /// Builds a partial ranking from the top items listed best first (1-based labels).
    pub fn from_top(m: usize, top: &[usize]) -> Result<Self> {
        let mut ranks = vec![None; m];
        for (pos, &item) in top.iter().enumerate() {
            if item == 0 || item > m {
                return Err(Error::InvalidRanking(format!("item {item} out of 1..={m}")));
            }
            if ranks[item - 1].replace(pos + 1).is_some() {
                return Err(Error::InvalidRanking(format!("item {item} listed twice")));
            }
        }
        Self::new(ranks)
    }

    pub fn m(&self) -> usize {
        self.ranks.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.ranks[i]
    }

    pub fn ranks(&self) -> &[Option<usize>] {
        &self.ranks
    }

    /// Ranked items, best first (1-based labels).
    pub fn top_items(&self) -> Vec<usize> {
        let mut top = vec![0; self.k];
        for (i, r) in self.ranks.iter().enumerate() {
            if let Some(r) = r {
                top[r - 1] = i + 1;
            }
        }
        top
    }
}

/// A single voter's ballot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ranking {
    Complete(Permutation),
    Partial(PartialRanking),
}

impl Ranking {
    pub fn m(&self) -> usize {
        match self {
            Ranking::Complete(p) => p.m(),
            Ranking::Partial(p) => p.m(),
        }
    }

    pub fn is_partial(&self) -> bool {
        matches!(self, Ranking::Partial(_))
    }

    pub fn as_complete(&self) -> Option<&Permutation> {
        match self {
            Ranking::Complete(p) => Some(p),
            Ranking::Partial(_) => None,
        }
    }

    /// Rank used for pairwise comparison: unranked items all sit at `k + 1`.
    pub fn comparison_rank(&self, i: usize) -> usize {
        match self {
            Ranking::Complete(p) => p.rank(i),
            Ranking::Partial(p) => p.rank(i).unwrap_or(p.k() + 1),
        }
    }

    /// Score vector under a completion scheme. Complete rankings behave like
    /// top-`(m - 1)` rankings, so both schemes agree across ballot kinds.
    pub fn completed_scores(&self, scheme: CompletionScheme) -> ScoreVector {
        match self {
            Ranking::Complete(p) => {
                let m = p.m();
                let s = match scheme {
                    CompletionScheme::AverageImpute => p.ranks().iter().map(|&r| r as f64).collect(),
                    CompletionScheme::Normalize if m == 1 => vec![0.0],
                    CompletionScheme::Normalize => p.ranks().iter().map(|&r| (r - 1) as f64 / (m - 1) as f64).collect(),
                };
                ScoreVector(s)
            }
            Ranking::Partial(p) => complete_partial(p, scheme),
        }
    }
}

impl From<Permutation> for Ranking {
    fn from(p: Permutation) -> Self {
        Ranking::Complete(p)
    }
}

impl From<PartialRanking> for Ranking {
    fn from(p: PartialRanking) -> Self {
        Ranking::Partial(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortDirection {
    Ascending,
    Descending,
}

/// How unranked items of a partial ranking receive a score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionScheme {
    /// Ranked items keep their rank, unranked ones get `(k + 1 + m) / 2`.
    AverageImpute,
    /// Ranked items get `(rank - 1) / k`, unranked ones get 1.
    #[default]
    Normalize,
}

impl FromStr for CompletionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average-impute" | "average" => Ok(Self::AverageImpute),
            "normalize" => Ok(Self::Normalize),
            other => Err(Error::Unknown {
                kind: "completion scheme",
                name: other.to_string(),
            }),
        }
    }
}

/// Dense `m x m` matrix of preference fractions, row-major, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    m: usize,
    p: Vec<f64>,
}

impl PairwiseMatrix {
    pub fn new(m: usize, p: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidMatrix("m must be positive".into()));
        }
        if p.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                found: p.len(),
            });
        }
        for i in 0..m {
            if p[i * m + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is not 0")));
            }
            for j in (i + 1)..m {
                let (a, b) = (p[i * m + j], p[j * m + i]);
                if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) outside [0, 1]")));
                }
                if (a + b - 1.0).abs() > FLOAT_TOL {
                    return Err(Error::InvalidMatrix(format!(
                        "p[{i}][{j}] + p[{j}][{i}] = {} != 1",
                        a + b
                    )));
                }
            }
        }
        Ok(Self { m, p })
    }

    /// Builds the matrix from the strict upper triangle, row by row
    /// (`p[0][1], p[0][2], ..., p[1][2], ...`); lower entries are the complements.
    pub fn from_upper(m: usize, upper: &[f64]) -> Result<Self> {
        if upper.len() != m * (m.saturating_sub(1)) / 2 {
            return Err(Error::DimensionMismatch {
                expected: m * (m.saturating_sub(1)) / 2,
                found: upper.len(),
            });
        }
        let mut p = vec![0.0; m * m];
        let mut it = upper.iter();
        for i in 0..m {
            for j in (i + 1)..m {
                let v = *it.next().expect("length checked");
                p[i * m + j] = v;
                p[j * m + i] = 1.0 - v;
            }
        }
        Self::new(m, p)
    }

    /// Empirical duel fractions of a profile.
    pub fn from_profile<'a>(profile: impl IntoIterator<Item = &'a Ranking>) -> Result<Self> {
        let mut acc: Option<(usize, Vec<f64>)> = None;
        let mut n = 0usize;
        for r in profile {
            let m = r.m();
            let (m0, sum) = acc.get_or_insert_with(|| (m, vec![0.0; m * m]));
            if *m0 != m {
                return Err(Error::DimensionMismatch {
                    expected: *m0,
                    found: m,
                });
            }
            add_pairwise(r, sum);
            n += 1;
        }
        let (m, mut sum) = acc.ok_or(Error::EmptyProfile)?;
        let inv = 1.0 / n as f64;
        sum.iter_mut().for_each(|x| *x *= inv);
        // Averaging can leave complements a few ulps off; snap the lower triangle.
        for i in 0..m {
            for j in (i + 1)..m {
                sum[j * m + i] = 1.0 - sum[i * m + j];
            }
        }
        Self::new(m, sum)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Fraction of voters preferring item index `i` to item index `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.m + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

/// Adds the 0/1/half indicators of `r` into a row-major `m x m` accumulator.
pub(crate) fn add_pairwise(r: &Ranking, acc: &mut [f64]) {
    let m = r.m();
    let ranks: Vec<usize> = (0..m).map(|i| r.comparison_rank(i)).collect();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            acc[i * m + j] += match ranks[i].cmp(&ranks[j]) {
                cmp::Ordering::Less => 1.0,
                cmp::Ordering::Equal => 0.5,
                cmp::Ordering::Greater => 0.0,
            };
        }
    }
}

/// A vector of `m` finite scores, one per item.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = s.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidScores(format!("entry {i} is {v}")));
        }
        Ok(Self(s))
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// `h[i][r]`: fraction of voters giving rank `r + 1` to item `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankHistogram {
    m: usize,
    h: Vec<f64>,
}

impl RankHistogram {
    pub fn new(m: usize, h: Vec<f64>) -> Result<Self> {
        if h.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                found: h.len(),
            });
        }
        for (i, row) in h.chunks(m.max(1)).enumerate() {
            if row.iter().any(|&x| x < 0.0 || !x.is_finite()) {
                return Err(Error::InvalidScores(format!("row {i} has a negative entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > FLOAT_TOL {
                return Err(Error::InvalidScores(format!("row {i} sums to {s}")));
            }
        }
        Ok(Self { m, h })
    }

    pub fn one_hot(p: &Permutation) -> Self {
        let m = p.m();
        let mut h = vec![0.0; m * m];
        for (i, &r) in p.ranks().iter().enumerate() {
            h[i * m + r - 1] = 1.0;
        }
        Self { m, h }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.h
    }

    /// Per-item median rank read from the cumulative distribution.
    pub fn median_ranks(&self) -> Vec<f64> {
        median_ranks_from_rows(&self.h, self.m)
    }
}

/// Median of each histogram row: the smallest rank whose cumulative mass
/// reaches one half, or the midpoint with the next occupied rank when the
/// mass sits exactly on one half (even voter counts).
pub(crate) fn median_ranks_from_rows(h: &[f64], m: usize) -> Vec<f64> {
    h.chunks(m)
        .map(|row| {
            let mut cum = 0.0;
            for (r, &mass) in row.iter().enumerate() {
                cum += mass;
                if cum >= 0.5 - FLOAT_TOL {
                    if (cum - 0.5).abs() <= FLOAT_TOL {
                        if let Some(next) = row[r + 1..].iter().position(|&x| x > FLOAT_TOL) {
                            return (r + 1) as f64 + (next + 1) as f64 / 2.0;
                        }
                    }
                    return (r + 1) as f64;
                }
            }
            m as f64
        })
        .collect()
}

/// Number of discordant item pairs, by direct pair enumeration.
pub fn kendall_tau(a: &Permutation, b: &Permutation) -> Result<u64> {
    same_len(a, b)?;
    let (ra, rb) = (a.ranks(), b.ranks());
    let m = ra.len();
    let mut d = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            let sa = ra[i] as i64 - ra[j] as i64;
            let sb = rb[i] as i64 - rb[j] as i64;
            if sa * sb < 0 {
                d += 1;
            }
        }
    }
    Ok(d)
}

/// Kendall tau via merge-sort inversion counting, `O(m log m)`.
pub fn kendall_tau_fast(a: &Permutation, b: &Permutation) -> Result<u64> {
    same_len(a, b)?;
    // b's ranks listed in a's order; every inversion is a discordant pair.
    let mut seq: Vec<usize> = a.to_ordering().items().iter().map(|&it| b.rank(it - 1)).collect();
    let mut buf = vec![0; seq.len()];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (lo, hi) = seq.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        count_inversions(lo, blo) + count_inversions(hi, bhi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Spearman footrule: L1 distance between rank vectors.
pub fn spearman_footrule(a: &Permutation, b: &Permutation) -> Result<u64> {
    same_len(a, b)?;
    Ok(a.ranks()
        .iter()
        .zip(b.ranks())
        .map(|(&x, &y)| x.abs_diff(y) as u64)
        .sum())
}

/// Spearman rank correlation distance: squared L2 distance between rank vectors.
pub fn spearman_rho_sq(a: &Permutation, b: &Permutation) -> Result<u64> {
    same_len(a, b)?;
    Ok(a.ranks()
        .iter()
        .zip(b.ranks())
        .map(|(&x, &y)| (x.abs_diff(y) as u64).pow(2))
        .sum())
}

/// 0/1/half preference indicators of one ballot.
pub fn pairwise_of(r: &Ranking) -> PairwiseMatrix {
    let m = r.m();
    let mut p = vec![0.0; m * m];
    add_pairwise(r, &mut p);
    PairwiseMatrix { m, p }
}

/// Completes a partial ranking into a score vector.
pub fn complete_partial(r: &PartialRanking, scheme: CompletionScheme) -> ScoreVector {
    let (m, k) = (r.m() as f64, r.k() as f64);
    let s = r
        .ranks()
        .iter()
        .map(|rank| match (scheme, rank) {
            (CompletionScheme::AverageImpute, Some(x)) => *x as f64,
            (CompletionScheme::AverageImpute, None) => (k + 1.0 + m) / 2.0,
            (CompletionScheme::Normalize, Some(x)) => (*x as f64 - 1.0) / k,
            (CompletionScheme::Normalize, None) => 1.0,
        })
        .collect();
    ScoreVector(s)
}

/// Total Kendall disagreement of `candidate` with a profile summarized by its
/// duel fractions: `n * sum_{i<j}` of the fraction of voters on the other side.
pub fn total_kendall_loss(candidate: &Permutation, p: &PairwiseMatrix, n: usize) -> Result<f64> {
    if candidate.m() != p.m() {
        return Err(Error::DimensionMismatch {
            expected: p.m(),
            found: candidate.m(),
        });
    }
    Ok(n as f64 * pairwise_disagreement(candidate.ranks(), p))
}

/// Per-voter Kendall loss, `sum_{i<j}` of the minority side of each duel.
pub(crate) fn pairwise_disagreement(ranks: &[usize], p: &PairwiseMatrix) -> f64 {
    let m = ranks.len();
    let mut loss = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            loss += if ranks[i] < ranks[j] { p.get(j, i) } else { p.get(i, j) };
        }
    }
    loss
}

fn same_len(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch {
            expected: a.m(),
            found: b.m(),
        });
    }
    Ok(())
}

fn check_bijection(values: &[usize], m: usize, what: &str) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidRanking("no items".into()));
    }
    let mut seen = vec![false; m];
    for &v in values {
        if v == 0 || v > m {
            return Err(Error::InvalidRanking(format!("{what} {v} outside 1..={m}")));
        }
        if std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::InvalidRanking(format!("{what} {v} appears twice")));
        }
    }
    Ok(())
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(r: &[usize]) -> Permutation {
        Permutation::new(r.to_vec()).unwrap()
    }

    #[test]
    fn kendall_examples() {
        assert_eq!(kendall_tau(&perm(&[1, 2, 3, 4]), &perm(&[1, 2, 3, 4])).unwrap(), 0);
        assert_eq!(kendall_tau(&perm(&[1, 2, 3]), &perm(&[3, 2, 1])).unwrap(), 3);
        // pairs (1,2): (+)(-) discord, (1,3): (-)(-) agree, (2,3): (-)(+) discord
        assert_eq!(kendall_tau(&perm(&[2, 1, 3]), &perm(&[1, 3, 2])).unwrap(), 2);
        assert_eq!(kendall_tau_fast(&perm(&[2, 1, 3]), &perm(&[1, 3, 2])).unwrap(), 2);
    }

    #[test]
    fn distances_reject_mismatched_lengths() {
        let (a, b) = (perm(&[1, 2]), perm(&[1, 2, 3]));
        assert!(matches!(kendall_tau(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(kendall_tau_fast(&a, &b).is_err());
        assert!(spearman_footrule(&a, &b).is_err());
        assert!(spearman_rho_sq(&a, &b).is_err());
    }

    #[test]
    fn footrule_and_rho_examples() {
        assert_eq!(spearman_footrule(&perm(&[1, 2, 3]), &perm(&[2, 1, 3])).unwrap(), 2);
        // |1-4| + |2-3| + |3-2| + |4-1|
        assert_eq!(
            spearman_footrule(&perm(&[1, 2, 3, 4]), &perm(&[4, 3, 2, 1])).unwrap(),
            8
        );
        assert_eq!(spearman_rho_sq(&perm(&[1, 2]), &perm(&[2, 1])).unwrap(), 2);
        // 4 + 1 + 1
        assert_eq!(spearman_rho_sq(&perm(&[1, 2, 3]), &perm(&[3, 1, 2])).unwrap(), 6);
    }

    #[test]
    fn invalid_permutations_are_rejected() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Ordering::new(vec![2, 2]).is_err());
    }

    #[test]
    fn ordering_roundtrip_and_display() {
        let p = perm(&[2, 3, 1]);
        let o = p.to_ordering();
        assert_eq!(o.items(), &[3, 1, 2]);
        assert_eq!(o.to_permutation(), p);
        assert_eq!(p.to_string(), "(2,3,1)");
        assert_eq!(p.reversed(), perm(&[2, 1, 3]));
        assert_eq!(p.inverse(), perm(&[3, 1, 2]));
    }

    #[test]
    fn from_scores_breaks_ties_by_index() {
        let asc = Permutation::from_scores(&[1.5, 1.5, 1.0], SortDirection::Ascending).unwrap();
        assert_eq!(asc.ranks(), &[2, 3, 1]);
        let desc = Permutation::from_scores(&[0.0, 2.0, 2.0], SortDirection::Descending).unwrap();
        assert_eq!(desc.ranks(), &[3, 1, 2]);
        assert!(Permutation::from_scores(&[f64::NAN], SortDirection::Ascending).is_err());
    }

    #[test]
    fn pairwise_examples() {
        let p = pairwise_of(&perm(&[1, 2]).into());
        assert_eq!((p.get(0, 1), p.get(1, 0)), (1.0, 0.0));

        let partial = PartialRanking::new(vec![Some(1), None, None]).unwrap();
        let p = pairwise_of(&partial.into());
        assert_eq!((p.get(1, 2), p.get(2, 1)), (0.5, 0.5));
        assert_eq!((p.get(0, 1), p.get(0, 2)), (1.0, 1.0));

        let p = pairwise_of(&perm(&[2, 3, 1]).into());
        assert_eq!(p.get(2, 0), 1.0);
        assert_eq!(p.get(0, 1), 1.0);
        assert_eq!(p.get(2, 1), 1.0);
        assert_eq!(p.get(0, 2) + p.get(1, 0) + p.get(1, 2), 0.0);
    }

    #[test]
    fn partial_ranking_validation() {
        assert!(PartialRanking::new(vec![Some(1), Some(2), Some(3)]).is_err());
        assert!(PartialRanking::new(vec![None, None]).is_err());
        assert!(PartialRanking::new(vec![Some(2), None, None]).is_err());
        assert!(PartialRanking::from_top(3, &[2, 2]).is_err());
        let p = PartialRanking::from_top(4, &[3, 1]).unwrap();
        assert_eq!(p.ranks(), &[Some(2), None, Some(1), None]);
        assert_eq!(p.top_items(), vec![3, 1]);
    }

    #[test]
    fn completion_examples() {
        let r = PartialRanking::from_top(5, &[1, 2]).unwrap();
        let avg = complete_partial(&r, CompletionScheme::AverageImpute);
        assert_eq!(avg.as_slice(), &[1.0, 2.0, 4.0, 4.0, 4.0]);
        let norm = complete_partial(&r, CompletionScheme::Normalize);
        assert_eq!(norm.as_slice(), &[0.0, 0.5, 1.0, 1.0, 1.0]);

        let m = 6;
        let r = PartialRanking::from_top(m, &[6, 5, 4, 3, 2]).unwrap();
        let avg = complete_partial(&r, CompletionScheme::AverageImpute);
        assert_eq!(avg.as_slice()[0], m as f64);

        assert!("borda".parse::<CompletionScheme>().is_err());
        assert_eq!(
            "normalize".parse::<CompletionScheme>().unwrap(),
            CompletionScheme::Normalize
        );
    }

    #[test]
    fn complete_ballots_match_top_m_minus_one() {
        let p = perm(&[3, 1, 2]);
        let as_partial = PartialRanking::from_top(3, &[2, 3]).unwrap();
        for scheme in [CompletionScheme::AverageImpute, CompletionScheme::Normalize] {
            assert_eq!(
                Ranking::from(p.clone()).completed_scores(scheme),
                complete_partial(&as_partial, scheme)
            );
        }
    }

    #[test]
    fn total_loss_examples() {
        let common = perm(&[2, 1, 3]);
        let profile: Vec<Ranking> = vec![common.clone().into(); 4];
        let p = PairwiseMatrix::from_profile(&profile).unwrap();
        assert_eq!(total_kendall_loss(&common, &p, 4).unwrap(), 0.0);

        let profile: Vec<Ranking> = vec![perm(&[1, 2]).into(), perm(&[2, 1]).into()];
        let p = PairwiseMatrix::from_profile(&profile).unwrap();
        for c in [perm(&[1, 2]), perm(&[2, 1])] {
            assert_eq!(total_kendall_loss(&c, &p, 2).unwrap(), 1.0);
        }
        assert!(total_kendall_loss(&perm(&[1, 2, 3]), &p, 2).is_err());
    }

    #[test]
    fn matrix_validation() {
        assert!(PairwiseMatrix::from_upper(2, &[1.2]).is_err());
        assert!(PairwiseMatrix::new(2, vec![0.0, 0.6, 0.6, 0.0]).is_err());
        assert!(PairwiseMatrix::new(2, vec![0.5, 0.5, 0.5, 0.0]).is_err());
        assert!(PairwiseMatrix::new(2, vec![0.0, 1.0, 0.0]).is_err());
        let p = PairwiseMatrix::from_upper(3, &[0.6, 0.8, 0.4]).unwrap();
        assert_eq!(p.get(2, 1), 0.6);
        assert!(PairwiseMatrix::from_profile(std::iter::empty()).is_err());
    }

    #[test]
    fn histogram_medians() {
        // ranks {1, 1, 3} for item 1 -> median 1
        let profile = [perm(&[1, 2, 3]), perm(&[1, 3, 2]), perm(&[3, 1, 2])];
        let mut h = vec![0.0; 9];
        for p in &profile {
            for (x, y) in h.iter_mut().zip(RankHistogram::one_hot(p).as_slice()) {
                *x += y / 3.0;
            }
        }
        let h = RankHistogram::new(3, h).unwrap();
        assert_eq!(h.median_ranks()[0], 1.0);

        // even count: ranks {1, 2} -> midpoint 1.5
        let h = RankHistogram::new(2, vec![0.5, 0.5, 0.5, 0.5]).unwrap();
        assert_eq!(h.median_ranks(), vec![1.5, 1.5]);
        assert!(RankHistogram::new(2, vec![0.5, 0.4, 0.5, 0.5]).is_err());
        assert!(RankHistogram::new(1, vec![-1.0]).is_err());
    }
}
