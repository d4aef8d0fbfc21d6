//! Simple undirected graphs and the degree-based profiles computed on them.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple undirected graph on the vertices `0..n`.
///
/// Neighbor lists are kept sorted so that every iteration order is
/// deterministic. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// edges (in either orientation) and endpoints `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge { u: a, v: b });
            }
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from neighbor lists that are already known to be
    /// symmetric and loop-free.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.adj.len() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.adj.len() });
        }
        Ok(())
    }
}

/// Position-indexed vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Per-vertex pairs `(d1, d2)`: the number of vertices at distance exactly
/// one and exactly two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SodsTarget {
    pub pairs: Vec<(usize, usize)>,
}

/// Per-vertex pairs `(d, D2)`: the degree and the sum of the neighbors'
/// degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct XyTarget {
    pub pairs: Vec<(usize, usize)>,
}

/// Joint degree matrix: entry `(i, j)` counts edges between a vertex of
/// degree `i` and one of degree `j`. Indices are degree classes `1..=delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jdm {
    delta: usize,
    entries: Vec<u64>,
}

impl Jdm {
    pub fn zero(delta: usize) -> Self {
        Jdm { delta, entries: vec![0; delta * delta] }
    }

    /// Builds a matrix from signed rows, validating shape, sign and symmetry.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let delta = rows.len();
        if rows.iter().any(|r| r.len() != delta) {
            return Err(Error::NonSquareMatrix);
        }
        let mut jdm = Jdm::zero(delta);
        for i in 0..delta {
            for j in 0..delta {
                if rows[i][j] < 0 {
                    return Err(Error::NegativeEntry { i: i + 1, j: j + 1 });
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::AsymmetricMatrix { i: i + 1, j: j + 1 });
                }
                jdm.entries[i * delta + j] = rows[i][j] as u64;
            }
        }
        Ok(jdm)
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Entry for degree classes `i` and `j` (both 1-based).
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[(i - 1) * self.delta + (j - 1)]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.entries[(i - 1) * self.delta + (j - 1)] = value;
        self.entries[(j - 1) * self.delta + (i - 1)] = value;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.delta.max(1)).take(self.delta).map(<[u64]>::to_vec).collect()
    }

    /// The same matrix padded with zero rows and columns up to `delta`.
    pub fn padded(&self, delta: usize) -> Jdm {
        let mut out = Jdm::zero(delta.max(self.delta));
        for i in 1..=self.delta {
            for j in 1..=self.delta {
                out.entries[(i - 1) * out.delta + (j - 1)] = self.get(i, j);
            }
        }
        out
    }
}

/// Neighbor counts of one vertex, bucketed by neighbor degree `1..=delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSpectrum {
    counts: Vec<usize>,
}

impl DegreeSpectrum {
    /// Number of neighbors of degree `i` (1-based).
    pub fn get(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    DegreeSequence((0..g.vertex_count()).map(|v| g.degree(v)).collect())
}

/// Number of vertices whose shortest-path distance from `v` is exactly `k`.
pub fn distance_k_count(g: &Graph, v: usize, k: usize) -> Result<usize> {
    g.check_vertex(v)?;
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([v]);
    dist[v] = 0;
    let mut count = usize::from(k == 0);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= k {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if dist[w] == k {
                    count += 1;
                }
                queue.push_back(w);
            }
        }
    }
    Ok(count)
}

/// `(d1, d2)` for every vertex, computed by a two-level expansion.
pub fn second_order_profile(g: &Graph) -> SodsTarget {
    let n = g.vertex_count();
    let mut stamp = vec![usize::MAX; n];
    let mut pairs = Vec::with_capacity(n);
    for v in 0..n {
        stamp[v] = v;
        for &u in g.neighbors(v) {
            stamp[u] = v;
        }
        let mut second = 0;
        for &u in g.neighbors(v) {
            for &w in g.neighbors(u) {
                if stamp[w] != v {
                    stamp[w] = v;
                    second += 1;
                }
            }
        }
        pairs.push((g.degree(v), second));
    }
    SodsTarget { pairs }
}

/// `(d(v), sum of d(u) over neighbors u)` for every vertex.
pub fn neighbor_degree_sum(g: &Graph) -> XyTarget {
    let pairs =
        (0..g.vertex_count()).map(|v| (g.degree(v), g.neighbors(v).iter().map(|&u| g.degree(u)).sum())).collect();
    XyTarget { pairs }
}

pub fn jdm_of_graph(g: &Graph) -> Result<Jdm> {
    let delta = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    if delta == 0 {
        return Err(Error::NoEdges);
    }
    let mut jdm = Jdm::zero(delta);
    for (u, v) in g.edges() {
        let (i, j) = (g.degree(u), g.degree(v));
        let value = jdm.get(i, j) + 1;
        jdm.set(i, j, value);
    }
    Ok(jdm)
}

pub fn degree_spectrum(g: &Graph, v: usize) -> Result<DegreeSpectrum> {
    g.check_vertex(v)?;
    let delta = (0..g.vertex_count()).map(|u| g.degree(u)).max().unwrap_or(0);
    let mut counts = vec![0; delta];
    for &u in g.neighbors(v) {
        counts[g.degree(u) - 1] += 1;
    }
    Ok(DegreeSpectrum { counts })
}

/// A proper two-coloring (`false`/`true` per vertex) if one exists. The
/// lowest vertex of every component gets `false`.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u]?;
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    color.into_iter().collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn from_edges_validates() {
        assert_eq!(Graph::from_edges(2, &[(0, 1)]).unwrap().edge_count(), 1);
        assert_eq!(complete(3).edge_count(), 3);
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop { vertex: 0 }));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge { u: 0, v: 1 }));
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(degree_sequence(&complete(3)).0, vec![2, 2, 2]);
        assert_eq!(degree_sequence(&path(3)).0, vec![1, 2, 1]);
        assert_eq!(degree_sequence(&Graph::empty(3)).0, vec![0, 0, 0]);
    }

    #[test]
    fn distance_counts() {
        assert_eq!(distance_k_count(&complete(3), 0, 1).unwrap(), 2);
        assert_eq!(distance_k_count(&path(4), 0, 2).unwrap(), 1);
        assert_eq!(distance_k_count(&path(4), 0, 3).unwrap(), 1);
        assert_eq!(distance_k_count(&path(4), 0, 4).unwrap(), 0);
        assert_eq!(distance_k_count(&path(4), 0, 0).unwrap(), 1);
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance_k_count(&two_edges, 0, 2).unwrap(), 0);
        assert!(matches!(distance_k_count(&path(2), 5, 1), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn second_order_profiles() {
        assert_eq!(second_order_profile(&cycle(4)).pairs, vec![(2, 1); 4]);
        assert_eq!(second_order_profile(&cycle(5)).pairs, vec![(2, 2); 5]);
        assert_eq!(second_order_profile(&path(3)).pairs, vec![(1, 1), (2, 0), (1, 1)]);
    }

    #[test]
    fn neighbor_degree_sums() {
        assert_eq!(neighbor_degree_sum(&complete(3)).pairs, vec![(2, 4); 3]);
        assert_eq!(neighbor_degree_sum(&path(3)).pairs, vec![(1, 2), (2, 2), (1, 2)]);
        assert_eq!(neighbor_degree_sum(&star(3)).pairs, vec![(3, 3), (1, 3), (1, 3), (1, 3)]);
    }

    #[test]
    fn joint_degree_matrices() {
        let k3 = jdm_of_graph(&complete(3)).unwrap();
        assert_eq!(k3.rows(), vec![vec![0, 0], vec![0, 3]]);
        let p3 = jdm_of_graph(&path(3)).unwrap();
        assert_eq!(p3.rows(), vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(jdm_of_graph(&complete(2)).unwrap().rows(), vec![vec![1]]);
        assert_eq!(jdm_of_graph(&Graph::empty(3)), Err(Error::NoEdges));
    }

    #[test]
    fn jdm_rows_validation() {
        assert_eq!(Jdm::from_rows(&[vec![0, 1], vec![0, 0]]), Err(Error::AsymmetricMatrix { i: 1, j: 2 }));
        assert_eq!(Jdm::from_rows(&[vec![-1]]), Err(Error::NegativeEntry { i: 1, j: 1 }));
        assert_eq!(Jdm::from_rows(&[vec![0, 1]]), Err(Error::NonSquareMatrix));
    }

    #[test]
    fn degree_spectra() {
        assert_eq!(degree_spectrum(&complete(3), 0).unwrap().counts(), &[0, 2]);
        assert_eq!(degree_spectrum(&path(3), 1).unwrap().get(1), 2);
        assert_eq!(degree_spectrum(&star(3), 0).unwrap().get(1), 3);
    }

    #[test]
    fn bipartitions() {
        assert_eq!(bipartition(&cycle(4)), Some(vec![false, true, false, true]));
        assert_eq!(bipartition(&complete(3)), None);
        assert_eq!(bipartition(&Graph::empty(3)), Some(vec![false; 3]));
    }
}
