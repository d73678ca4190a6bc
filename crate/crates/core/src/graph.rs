//! Communication graphs, edge-activation probabilities and spectral gaps.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::IteratorRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Regenerations attempted by the random generators before giving up.
pub const GENERATION_ATTEMPTS: usize = 100;

/// Graphs up to this size use a dense symmetric eigensolve.
pub const DENSE_EIGEN_MAX_NODES: usize = 2000;

/// Eigenvalues at or below this are treated as zero.
pub const ZERO_EIGEN_TOL: f64 = 1e-8;

/// Undirected simple connected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl Topology {
    /// Validates an edge list: no self-loops, no duplicates, connected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let t = Self::build(n, edges)?;
        if !t.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(t)
    }

    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("graph needs n >= 2, got {n}")));
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut degrees = vec![0; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u},{v})")));
            }
            degrees[u] += 1;
            degrees[v] += 1;
            list.push(e);
        }
        list.sort_unstable();
        Ok(Self {
            n,
            edges: list,
            degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// BFS two-colouring.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("coloured when queued");
                for &v in &adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Edge-list text: `n <count>` then one zero-based `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: String| Error::Parse {
            path: "<edge list>".into(),
            line,
            msg,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| bad(1, "missing header".into()))?;
        let n = header
            .strip_prefix("n ")
            .and_then(|c| c.trim().parse::<usize>().ok())
            .ok_or_else(|| bad(ln, format!("expected `n <count>`, got `{header}`")))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let mut parts = line.split_whitespace().map(usize::from_str);
            match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(bad(ln, format!("expected `u v`, got `{line}`"))),
            }
        }
        Self::from_edges(n, edges)
    }
}

/// Complete graph `K_n`.
pub fn gen_complete(n: usize) -> Result<Topology> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("complete graph needs n >= 2, got {n}")));
    }
    Topology::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
}

/// Ring lattice with `k` neighbours on each side, each lattice edge rewired to
/// a uniformly chosen new endpoint with probability `beta`.
pub fn gen_watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, beta: f64, rng: &mut R) -> Result<Topology> {
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!(
            "Watts-Strogatz needs 1 <= k < n/2, got n = {n}, k = {k}"
        )));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!("beta = {beta} outside [0, 1]")));
    }
    for _ in 0..GENERATION_ATTEMPTS {
        let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
        for u in 0..n {
            for j in 1..=k {
                let v = (u + j) % n;
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        for j in 1..=k {
            for u in 0..n {
                let v = (u + j) % n;
                if !rng.random_bool(beta) || adj[u].len() >= n - 1 || !adj[u].contains(&v) {
                    continue;
                }
                let w = (0..n)
                    .filter(|&w| w != u && !adj[u].contains(&w))
                    .choose(rng)
                    .expect("u has a non-neighbour");
                adj[u].remove(&v);
                adj[v].remove(&u);
                adj[u].insert(w);
                adj[w].insert(u);
            }
        }
        let mut edges: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        let t = Topology::build(n, edges)?;
        if t.is_connected() {
            return Ok(t);
        }
    }
    Err(Error::ConnectivityNotAchieved {
        attempts: GENERATION_ATTEMPTS,
    })
}

/// Random geometric graph: `n` uniform points in the unit square, edges
/// between points at Euclidean distance at most `r`.
pub fn gen_geometric<R: Rng + ?Sized>(n: usize, r: f64, rng: &mut R) -> Result<Topology> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "geometric graph needs n >= 2, got {n}"
        )));
    }
    let r2 = r * r;
    for _ in 0..GENERATION_ATTEMPTS {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                if dx * dx + dy * dy <= r2 {
                    edges.push((u, v));
                }
            }
        }
        let t = Topology::build(n, edges)?;
        if t.is_connected() {
            return Ok(t);
        }
    }
    Err(Error::ConnectivityNotAchieved {
        attempts: GENERATION_ATTEMPTS,
    })
}

/// Two-dimensional 4-neighbour lattice, node `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Topology> {
    if rows * cols < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid {rows}x{cols} has fewer than 2 nodes"
        )));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let u = r * cols + c;
            if c + 1 < cols {
                edges.push((u, u + 1));
            }
            if r + 1 < rows {
                edges.push((u, u + cols));
            }
        }
    }
    Topology::from_edges(rows * cols, edges)
}

/// `k = max(floor(n / 500), 5)` neighbours per side.
pub fn default_ws_k(n: usize) -> usize {
    (n / 500).max(5)
}

/// `r = sqrt((ln n + 16) / (n pi))`.
pub fn default_geometric_radius(n: usize) -> f64 {
    let n = n as f64;
    ((n.ln() + 16.0) / (n * std::f64::consts::PI)).sqrt()
}

/// Most square `rows x cols` factorisation of `n` (rows <= cols).
pub fn grid_shape(n: usize) -> (usize, usize) {
    let mut rows = (n as f64).sqrt() as usize;
    while rows > 1 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    (rows.max(1), n / rows.max(1))
}

/// Activation probability of each edge, aligned with `Topology::edges()`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDistribution {
    probs: Vec<f64>,
}

impl EdgeDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Node `u` wakes with probability `1/n` and calls a uniform neighbour:
/// `p_e = (1/n)(1/d_u + 1/d_v)`.
pub fn edge_distribution(t: &Topology) -> EdgeDistribution {
    let n = t.n() as f64;
    let d = t.degrees();
    EdgeDistribution {
        probs: t
            .edges()
            .iter()
            .map(|&(u, v)| (1.0 / d[u] as f64 + 1.0 / d[v] as f64) / n)
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralInfo {
    /// Second-smallest eigenvalue of `L(P) = sum_e p_e L_e`.
    pub c: f64,
    /// `1 - c/2`, the contraction factor of one gossip step in expectation.
    pub lambda2: f64,
    pub bipartite: bool,
}

/// Spectral gap of the activation-weighted Laplacian.
pub fn spectral_info(t: &Topology, d: &EdgeDistribution) -> Result<SpectralInfo> {
    if d.probs.len() != t.edges().len() {
        return Err(Error::DimensionMismatch {
            expected: t.edges().len(),
            found: d.probs.len(),
        });
    }
    let c = if t.n() <= DENSE_EIGEN_MAX_NODES {
        dense_gap(t, d)?
    } else {
        lanczos_gap(t, d, ZERO_EIGEN_TOL, 600)?
    };
    if c <= ZERO_EIGEN_TOL {
        return Err(Error::Disconnected);
    }
    Ok(SpectralInfo {
        c,
        lambda2: 1.0 - c / 2.0,
        bipartite: t.is_bipartite(),
    })
}

pub(crate) fn weighted_laplacian(t: &Topology, d: &EdgeDistribution) -> DMatrix<f64> {
    let n = t.n();
    let mut l = DMatrix::zeros(n, n);
    for (&(u, v), &p) in t.edges().iter().zip(&d.probs) {
        l[(u, u)] += p;
        l[(v, v)] += p;
        l[(u, v)] -= p;
        l[(v, u)] -= p;
    }
    l
}

/// Sorted eigenvalues of `L(P)` from a dense symmetric solve.
pub fn laplacian_eigenvalues(t: &Topology, d: &EdgeDistribution) -> Vec<f64> {
    let eig = SymmetricEigen::new(weighted_laplacian(t, d));
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn dense_gap(t: &Topology, d: &EdgeDistribution) -> Result<f64> {
    let ev = laplacian_eigenvalues(t, d);
    if ev.iter().any(|x| !x.is_finite()) {
        return Err(Error::Eigen("non-finite eigenvalue".into()));
    }
    if ev[0].abs() > ZERO_EIGEN_TOL {
        return Err(Error::Eigen(format!("smallest eigenvalue {} is not 0", ev[0])));
    }
    Ok(ev[1])
}

/// Smallest eigenvalue of `L(P)` on the complement of the constant vector,
/// by Lanczos with full reorthogonalisation.
pub(crate) fn lanczos_gap(t: &Topology, d: &EdgeDistribution, tol: f64, max_iter: usize) -> Result<f64> {
    let n = t.n();
    let apply = |x: &[f64], y: &mut [f64]| {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (&(u, v), &p) in t.edges().iter().zip(&d.probs) {
            let diff = p * (x[u] - x[v]);
            y[u] += diff;
            y[v] -= diff;
        }
    };
    let deflate = |x: &mut [f64]| {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        x.iter_mut().for_each(|v| *v -= mean);
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    // Deterministic start vector with components along every eigenvector.
    let mut q: Vec<f64> = (0..n)
        .map(|i| ((i as f64 + 1.0) * 0.618_033_988_75).fract() - 0.5)
        .collect();
    deflate(&mut q);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|v| *v /= norm);

    let kmax = max_iter.min(n - 1);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(kmax);
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    let mut scale = 0.0_f64;
    for k in 0..kmax {
        apply(&q, &mut w);
        deflate(&mut w);
        let a = dot(&q, &w);
        alpha.push(a);
        for (wi, qi) in w.iter_mut().zip(&q) {
            *wi -= a * qi;
        }
        if let Some(prev) = basis.last() {
            let b: f64 = *beta.last().expect("beta follows basis");
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= b * pi;
            }
        }
        basis.push(q.clone());
        for _ in 0..2 {
            for v in &basis {
                let h = dot(&w, v);
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi -= h * vi;
                }
            }
            deflate(&mut w);
        }
        let b = dot(&w, &w).sqrt();
        scale = scale.max(a.abs()).max(b);
        let breakdown = b <= 1e-12 * scale;
        let done = breakdown || k + 1 == kmax;
        if done || (k + 1) % 20 == 0 {
            let dim = alpha.len();
            let mut tri = DMatrix::zeros(dim, dim);
            for i in 0..dim {
                tri[(i, i)] = alpha[i];
                if i + 1 < dim {
                    tri[(i, i + 1)] = beta[i];
                    tri[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(tri);
            let (idx, theta) = eig
                .eigenvalues
                .iter()
                .copied()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty");
            let residual = b * eig.eigenvectors[(dim - 1, idx)].abs();
            if residual <= tol || breakdown {
                return Ok(theta);
            }
            if done {
                return Err(Error::Eigen(format!(
                    "Lanczos did not converge in {dim} iterations (residual {residual:e})"
                )));
            }
        }
        beta.push(b);
        q = w.iter().map(|x| x / b).collect();
    }
    Err(Error::Eigen("Lanczos ran out of iterations".into()))
}

/// Graph family selector used by configs and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphSpec {
    Complete,
    WattsStrogatz { k: Option<usize>, beta: f64 },
    Geometric { radius: Option<f64> },
    Grid { rows: Option<usize>, cols: Option<usize> },
}

impl GraphSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GraphSpec::Complete => "complete",
            GraphSpec::WattsStrogatz { .. } => "watts-strogatz",
            GraphSpec::Geometric { .. } => "geometric",
            GraphSpec::Grid { .. } => "grid",
        }
    }

    /// Builds a graph on `n` nodes, filling unset parameters with the defaults.
    pub fn generate<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Topology> {
        match *self {
            GraphSpec::Complete => gen_complete(n),
            GraphSpec::WattsStrogatz { k, beta } => {
                gen_watts_strogatz(n, k.unwrap_or_else(|| default_ws_k(n)), beta, rng)
            }
            GraphSpec::Geometric { radius } => {
                gen_geometric(n, radius.unwrap_or_else(|| default_geometric_radius(n)), rng)
            }
            GraphSpec::Grid { rows, cols } => {
                let (rows, cols) = match (rows, cols) {
                    (Some(r), Some(c)) => (r, c),
                    (Some(r), None) => (r, n / r.max(1)),
                    (None, Some(c)) => (n / c.max(1), c),
                    (None, None) => grid_shape(n),
                };
                if rows * cols != n {
                    return Err(Error::InvalidParameter(format!(
                        "grid {rows}x{cols} does not have {n} nodes"
                    )));
                }
                gen_grid(rows, cols)
            }
        }
    }

    /// Parses a family name with default parameters.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "complete" => Ok(GraphSpec::Complete),
            "watts-strogatz" | "ws" | "watts_strogatz" => Ok(GraphSpec::WattsStrogatz {
                k: None,
                beta: DEFAULT_WS_BETA,
            }),
            "geometric" | "rgg" => Ok(GraphSpec::Geometric { radius: None }),
            "grid" => Ok(GraphSpec::Grid { rows: None, cols: None }),
            other => Err(Error::Unknown {
                kind: "graph kind",
                name: other.to_string(),
            }),
        }
    }
}

/// Rewiring probability used when none is configured.
pub const DEFAULT_WS_BETA: f64 = 0.3;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> Topology {
        Topology::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn complete_graph_counts() {
        let t = gen_complete(3).unwrap();
        assert_eq!(t.edges().len(), 3);
        assert_eq!(t.degrees(), &[2, 2, 2]);
        assert_eq!(gen_complete(151).unwrap().edges().len(), 151 * 150 / 2);
        assert!(gen_complete(1).is_err());
    }

    #[test]
    fn watts_strogatz_lattice_and_rewiring() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = gen_watts_strogatz(20, 3, 0.0, &mut rng).unwrap();
        assert!(t.degrees().iter().all(|&d| d == 6));
        assert_eq!(t.edges().len(), 60);
        for beta in [0.3, 1.0] {
            let t = gen_watts_strogatz(151, 5, beta, &mut rng).unwrap();
            assert_eq!(t.edges().len(), 151 * 5);
        }
        assert!(gen_watts_strogatz(10, 5, 0.1, &mut rng).is_err());
        assert!(gen_watts_strogatz(10, 2, 1.5, &mut rng).is_err());
        assert_eq!(default_ws_k(151), 5);
        assert_eq!(default_ws_k(5000), 10);
    }

    #[test]
    fn geometric_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = gen_geometric(30, 2f64.sqrt(), &mut rng).unwrap();
        assert_eq!(t.edges().len(), 30 * 29 / 2);
        assert!(matches!(
            gen_geometric(30, 1e-6, &mut rng),
            Err(Error::ConnectivityNotAchieved { attempts: 100 })
        ));
        assert!(gen_geometric(30, 0.0, &mut rng).is_err());
        assert_abs_diff_eq!(default_geometric_radius(151), 0.2105, epsilon = 1e-3);
    }

    #[test]
    fn grid_counts_and_bipartite() {
        assert_eq!(gen_grid(2, 2).unwrap().edges().len(), 4);
        for (r, c) in [(3, 4), (5, 5), (1, 7)] {
            let t = gen_grid(r, c).unwrap();
            assert_eq!(t.edges().len(), r * (c - 1) + c * (r - 1));
            assert!(t.is_bipartite());
        }
        assert!(gen_grid(1, 1).is_err());
        assert_eq!(grid_shape(504), (21, 24));
        assert!(!gen_complete(3).unwrap().is_bipartite());
    }

    #[test]
    fn edge_probabilities() {
        let d = edge_distribution(&gen_complete(3).unwrap());
        d.probs()
            .iter()
            .for_each(|&p| assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-15));
        assert_eq!(edge_distribution(&path3()).probs(), &[0.5, 0.5]);
        let star = Topology::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        edge_distribution(&star)
            .probs()
            .iter()
            .for_each(|&p| assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-15));
    }

    #[test]
    fn spectral_examples() {
        let t = gen_complete(3).unwrap();
        let s = spectral_info(&t, &edge_distribution(&t)).unwrap();
        assert_abs_diff_eq!(s.c, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.lambda2, 0.5, epsilon = 1e-12);

        let t = path3();
        let ev = laplacian_eigenvalues(&t, &edge_distribution(&t));
        for (a, b) in ev.iter().zip([0.0, 0.5, 1.5]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            spectral_info(&t, &edge_distribution(&t)).unwrap().c,
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        assert!(matches!(
            Topology::from_edges(4, [(0, 1), (2, 3)]),
            Err(Error::Disconnected)
        ));
        // bypass validation to check the spectrum itself
        let t = Topology::build(4, [(0, 1), (2, 3)]).unwrap();
        let d = EdgeDistribution { probs: vec![0.5, 0.5] };
        let ev = laplacian_eigenvalues(&t, &d);
        assert!(ev[1] <= ZERO_EIGEN_TOL);
        assert!(matches!(spectral_info(&t, &d), Err(Error::Disconnected)));
    }

    #[test]
    fn lanczos_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in [
            gen_geometric(300, 0.15, &mut rng).unwrap(),
            gen_watts_strogatz(400, 3, 0.2, &mut rng).unwrap(),
            gen_grid(12, 15).unwrap(),
        ] {
            let d = edge_distribution(&t);
            let dense = dense_gap(&t, &d).unwrap();
            let lanczos = lanczos_gap(&t, &d, 1e-10, 600).unwrap();
            assert_abs_diff_eq!(dense, lanczos, epsilon = 1e-8);
        }
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let t = gen_grid(2, 3).unwrap();
        assert_eq!(Topology::from_edge_list(&t.to_edge_list()).unwrap(), t);
        assert!(Topology::from_edge_list("").is_err());
        assert!(Topology::from_edge_list("n 3\n0 1\n1").is_err());
        assert!(Topology::from_edge_list("n 3\n0 0\n1 2").is_err());
        assert!(Topology::from_edge_list("n 3\n0 1\n0 1\n1 2").is_err());
    }

    #[test]
    fn graph_spec_names() {
        for name in ["complete", "watts-strogatz", "geometric", "grid"] {
            assert_eq!(GraphSpec::from_name(name).unwrap().name(), name);
        }
        assert!(GraphSpec::from_name("torus").is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(GraphSpec::Grid {
            rows: Some(5),
            cols: None
        }
        .generate(12, &mut rng)
        .is_err());
        assert_eq!(
            GraphSpec::Grid { rows: None, cols: None }
                .generate(504, &mut rng)
                .unwrap()
                .n(),
            504
        );
    }
}
