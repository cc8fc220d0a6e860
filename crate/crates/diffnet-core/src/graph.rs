//! Simple undirected graphs with hop distances and weighted Laplacians.
//!
//! Node ids are dense 0-based integers. Distances are unweighted hop
//! counts throughout; edge weights only enter matrix assembly.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Simple undirected graph as sorted adjacency lists.
///
/// Immutable for analysis purposes once built; `add_edge` exists for
/// construction-time densification. Connectivity is checked lazily at the
/// analysis entry points that need it, so partially built graphs are
/// representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a graph from an edge list. Duplicate edges are allowed in
    /// the input and stored once; self loops and out-of-range ids are
    /// rejected.
    pub fn new(num_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph {
            adj: vec![Vec::new(); num_nodes],
        };
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(num_nodes: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); num_nodes],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.num_nodes();
        if u >= n {
            return Err(Error::OutOfRangeNode {
                node: u,
                num_nodes: n,
            });
        }
        if v >= n {
            return Err(Error::OutOfRangeNode {
                node: v,
                num_nodes: n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop { node: u });
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    pub(crate) fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Hop distances from `source` to every node.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>> {
        let n = self.num_nodes();
        if source >= n {
            return Err(Error::OutOfRangeNode {
                node: source,
                num_nodes: n,
            });
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(dist)
    }

    /// Maximum hop distance from `v` to any node.
    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        Ok(self.bfs_distances(v)?.into_iter().max().unwrap_or(0))
    }

    /// Maximum eccentricity over all nodes.
    pub fn diameter(&self) -> Result<usize> {
        let mut diam = 0;
        for v in 0..self.num_nodes() {
            diam = diam.max(self.eccentricity(v)?);
        }
        Ok(diam)
    }

    /// Weighted Laplacian `L = Delta - A`.
    pub fn laplacian(&self, w: &EdgeWeights) -> Result<SquareMatrix> {
        let n = self.num_nodes();
        let mut l = SquareMatrix::zeros(n);
        for (u, v) in self.edges() {
            let wt = w.get(u, v).ok_or(Error::MissingWeight { u, v })?;
            l.add_to(u, u, wt);
            l.add_to(v, v, wt);
            l.set(u, v, -wt);
            l.set(v, u, -wt);
        }
        Ok(l)
    }
}

/// Positive coupling weights on the edges of a graph, constrained to a
/// declared interval `[w_min, w_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    weights: BTreeMap<(usize, usize), f64>,
    w_min: f64,
    w_max: f64,
}

impl EdgeWeights {
    /// The same weight on every edge of `g`.
    pub fn uniform(g: &Graph, w: f64) -> Result<Self> {
        if !(w > 0.0) {
            return Err(Error::NonpositiveRange);
        }
        let weights = g.edges().map(|e| (e, w)).collect();
        Ok(EdgeWeights {
            weights,
            w_min: w,
            w_max: w,
        })
    }

    /// Per-edge weights produced by `f`, validated against `[w_min, w_max]`.
    pub fn from_fn(
        g: &Graph,
        w_min: f64,
        w_max: f64,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        if !(w_min > 0.0 && w_min <= w_max) {
            return Err(Error::NonpositiveRange);
        }
        let mut weights = BTreeMap::new();
        for (u, v) in g.edges() {
            let w = f(u, v);
            if !(w >= w_min && w <= w_max) {
                return Err(Error::WeightOutOfBounds);
            }
            weights.insert((u, v), w);
        }
        Ok(EdgeWeights {
            weights,
            w_min,
            w_max,
        })
    }

    pub fn get(&self, u: usize, v: usize) -> Option<f64> {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.weights.get(&key).copied()
    }

    pub fn w_min(&self) -> f64 {
        self.w_min
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    /// All weights multiplied by `alpha > 0` (bounds scale along).
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::NonpositiveRange);
        }
        Ok(EdgeWeights {
            weights: self.weights.iter().map(|(&e, &w)| (e, w * alpha)).collect(),
            w_min: self.w_min * alpha,
            w_max: self.w_max * alpha,
        })
    }
}

/// A path graph `P_n` (0 - 1 - ... - n-1).
pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).expect("path edges are valid")
}

/// A cycle graph `C_n`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges).expect("cycle edges are valid")
}

/// A complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).expect("complete edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_connected_graph() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(g.num_nodes(), 2);
        assert_eq!(g.num_edges(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn duplicate_edges_stored_once() {
        let g = Graph::new(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(Error::OutOfRangeNode {
                node: 2,
                num_nodes: 2
            })
        );
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(Error::SelfLoop { node: 1 }));
    }

    #[test]
    fn laplacian_single_edge() {
        let g = path_graph(2);
        let w = EdgeWeights::uniform(&g, 1.0).unwrap();
        let l = g.laplacian(&w).unwrap();
        assert_eq!(l.row(0), &[1.0, -1.0]);
        assert_eq!(l.row(1), &[-1.0, 1.0]);
    }

    #[test]
    fn laplacian_complete_graph() {
        let g = complete_graph(3);
        let w = EdgeWeights::uniform(&g, 1.0).unwrap();
        let l = g.laplacian(&w).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 2.0 } else { -1.0 };
                assert_eq!(l.get(i, j), expect);
            }
        }
    }

    #[test]
    fn laplacian_weighted_path() {
        // P_3 with weights 2 and 3: diagonal (2, 5, 3).
        let g = path_graph(3);
        let w = EdgeWeights::from_fn(&g, 2.0, 3.0, |u, _| if u == 0 { 2.0 } else { 3.0 }).unwrap();
        let l = g.laplacian(&w).unwrap();
        assert_eq!(l.get(0, 0), 2.0);
        assert_eq!(l.get(1, 1), 5.0);
        assert_eq!(l.get(2, 2), 3.0);
        assert_eq!(l.get(0, 1), -2.0);
        assert_eq!(l.get(1, 2), -3.0);
        assert_eq!(l.get(0, 2), 0.0);
    }

    #[test]
    fn laplacian_missing_weight() {
        let g = path_graph(3);
        let smaller = path_graph(2);
        let w = EdgeWeights::uniform(&smaller, 1.0).unwrap();
        assert_eq!(g.laplacian(&w), Err(Error::MissingWeight { u: 1, v: 2 }));
    }

    #[test]
    fn weight_validation() {
        let g = path_graph(3);
        assert_eq!(EdgeWeights::uniform(&g, 0.0), Err(Error::NonpositiveRange));
        assert_eq!(
            EdgeWeights::from_fn(&g, 1.0, 2.0, |_, _| 3.0),
            Err(Error::WeightOutOfBounds)
        );
    }

    #[test]
    fn bfs_on_path_from_end() {
        let g = path_graph(4);
        assert_eq!(g.bfs_distances(0).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn bfs_on_clique() {
        let g = complete_graph(5);
        assert_eq!(g.bfs_distances(0).unwrap(), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn bfs_reports_disconnected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(g.bfs_distances(0), Err(Error::Disconnected));
    }

    #[test]
    fn path_diameter() {
        for n in 2..8 {
            assert_eq!(path_graph(n).diameter().unwrap(), n - 1);
        }
    }

    #[test]
    fn clique_eccentricities() {
        let g = complete_graph(6);
        for v in 0..6 {
            assert_eq!(g.eccentricity(v).unwrap(), 1);
        }
        assert_eq!(g.diameter().unwrap(), 1);
    }

    #[test]
    fn scaled_weights() {
        let g = path_graph(3);
        let w = EdgeWeights::uniform(&g, 2.0).unwrap();
        let s = w.scaled(0.5).unwrap();
        assert_eq!(s.get(0, 1), Some(1.0));
        assert_eq!(s.w_min(), 1.0);
    }
}
