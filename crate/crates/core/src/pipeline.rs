//! End-to-end transforms built from the metric and bottleneck pieces.
//!
//! * [`gtree`]: approximating tree of a distance matrix, `igprd ∘ apbp ∘ gprd`.
//! * [`apbp_via_gtree`]: bottleneck paths answered by an approximating tree of
//!   an `(n + 1)`-point space whose products are the capacities.
//! * [`gtree_from_graph`]: approximating tree of an unweighted connected graph
//!   without ever forming its distance matrix. Only the products of adjacent
//!   pairs are needed, and those come from one breadth-first search.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bottleneck::{bottleneck_in_place, BottleneckResult};
use crate::metric::{
    delta_hyperbolicity, exte, gprd, igprd_unchecked, products_into_distances, CapacityMatrix,
    DistanceMatrix, Hyperbolicity, ProductMatrix, SquareMatrix,
};
use crate::{Error, Result};

/// Undirected simple connected graph with a distinguished base vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adjacency: Vec<Vec<usize>>,
    base: usize,
}

impl AdjacencyGraph {
    /// Builds the graph from an edge list, rejecting loops, repeated edges
    /// and disconnected inputs.
    pub fn new(n: usize, edges: &[(usize, usize)], base: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if base >= n {
            return Err(Error::BaseOutOfRange { base, n });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let graph = Self { adjacency, base };
        graph.check_connected()?;
        Ok(graph)
    }

    /// From a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency_matrix<R: AsRef<[u8]>>(rows: &[R], base: usize) -> Result<Self> {
        let n = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for (j, &g) in row.iter().enumerate() {
                if g != rows[j].as_ref()[i] {
                    return Err(Error::AsymmetricEntry(i.min(j), i.max(j)));
                }
                match (g, i == j) {
                    (0, _) => {}
                    (_, true) => return Err(Error::SelfLoop(i)),
                    (_, false) if i < j => edges.push((i, j)),
                    _ => {}
                }
            }
        }
        Self::new(n, &edges, base)
    }

    pub fn to_adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut g = vec![vec![0u8; n]; n];
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                g[u][v] = 1;
            }
        }
        g
    }

    fn check_connected(&self) -> Result<()> {
        let depth = bfs(self, 0);
        match depth.iter().position(|&d| d == usize::MAX) {
            Some(unreached) => Err(Error::Disconnected { from: 0, unreached }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn base(&self) -> usize {
        self.base
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn with_base(mut self, base: usize) -> Result<Self> {
        if base >= self.n() {
            return Err(Error::BaseOutOfRange { base, n: self.n() });
        }
        self.base = base;
        Ok(self)
    }
}

/// Hop counts from `source`; `usize::MAX` marks unreachable vertices.
fn bfs(g: &AdjacencyGraph, source: usize) -> Vec<usize> {
    let mut depth = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    depth[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = depth[u] + 1;
        for &v in g.neighbors(u) {
            if depth[v] == usize::MAX {
                depth[v] = next;
                queue.push_back(v);
            }
        }
    }
    depth
}

/// Exact hop distances from `source`. The graph is unweighted, so a
/// breadth-first search stands in for Dijkstra.
pub fn bfs_distances(g: &AdjacencyGraph, source: usize) -> Result<Vec<usize>> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: source,
            n: g.n(),
        });
    }
    let depth = bfs(g, source);
    if let Some(unreached) = depth.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected {
            from: source,
            unreached,
        });
    }
    Ok(depth)
}

/// All-pairs hop distances, one search per vertex, based at `g.base()`.
pub fn graph_distance_matrix(g: &AdjacencyGraph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut m = SquareMatrix::zeros(n);
    for s in 0..n {
        for (t, d) in bfs_distances(g, s)?.into_iter().enumerate() {
            m.set(s, t, d as f64);
        }
    }
    Ok(DistanceMatrix::trusted(m, g.base(), 0.0))
}

/// Gromov products of adjacent pairs only; every other off-diagonal entry,
/// and the whole base row and column, is zero. The diagonal holds the hop
/// distance to the base.
pub fn lprd(g: &AdjacencyGraph) -> Result<ProductMatrix> {
    let n = g.n();
    let w = g.base();
    let depth = bfs_distances(g, w)?;
    let mut k = SquareMatrix::zeros(n);
    for i in 0..n {
        if i == w {
            continue;
        }
        let di = depth[i] as f64;
        k.set(i, i, di);
        for &j in g.neighbors(i) {
            if j != w {
                k.set(i, j, 0.5 * (di + depth[j] as f64 - 1.0));
            }
        }
    }
    Ok(ProductMatrix::trusted(k, w, 0.0))
}

/// Distance matrix of an approximating tree together with what it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeApproximation {
    distances: DistanceMatrix,
    source: Option<DistanceMatrix>,
}

impl TreeApproximation {
    /// Tree pseudo-distances, based at the source's basepoint.
    pub fn distances(&self) -> &DistanceMatrix {
        &self.distances
    }

    pub fn into_distances(self) -> DistanceMatrix {
        self.distances
    }

    /// The input metric. Routes that start from a graph leave this empty
    /// unless [`gtree_from_graph_with_source`] was used.
    pub fn source(&self) -> Option<&DistanceMatrix> {
        self.source.as_ref()
    }

    /// Hyperbolicity of the source, when the source is present.
    pub fn delta(&self) -> Option<Hyperbolicity> {
        self.source.as_ref().map(delta_hyperbolicity)
    }
}

fn products_to_tree(l: ProductMatrix) -> DistanceMatrix {
    let (base, tol) = (l.base(), l.tol());
    let m = bottleneck_in_place(l.into_matrix());
    DistanceMatrix::trusted(products_into_distances(m, base), base, tol)
}

/// Gromov's approximating tree of `d` based at `d.base()`, in `O(n²)`.
pub fn gtree(d: &DistanceMatrix) -> TreeApproximation {
    let a = products_to_tree(gprd(d));
    debug_assert!((0..d.n()).all(|i| a.get(d.base(), i) == d.get(d.base(), i)));
    TreeApproximation {
        distances: a,
        source: Some(d.clone()),
    }
}

/// Bottleneck paths answered through an approximating tree:
/// the off-diagonal of `gprd(gtree(igprd(exte(c))))` restricted to the
/// first `n` points. The diagonal is copied from `c`.
pub fn apbp_via_gtree(c: &CapacityMatrix) -> BottleneckResult {
    let n = c.n();
    let space = igprd_unchecked(&exte(c));
    let tree = gtree(&space);
    let products = gprd(tree.distances());
    let mut m = products.matrix().truncate_last();
    for i in 0..n {
        m.set(i, i, c.get(i, i));
    }
    BottleneckResult::from_matrix(m)
}

/// Approximating tree of an unweighted connected graph, based at
/// `g.base()`, in `O(n²)`. The source field is left empty.
pub fn gtree_from_graph(g: &AdjacencyGraph) -> Result<TreeApproximation> {
    Ok(TreeApproximation {
        distances: products_to_tree(lprd(g)?),
        source: None,
    })
}

/// [`gtree_from_graph`] plus the graph's distance matrix as the source.
/// The extra searches cost `O(n · (n + m))`.
pub fn gtree_from_graph_with_source(g: &AdjacencyGraph) -> Result<TreeApproximation> {
    let mut approx = gtree_from_graph(g)?;
    approx.source = Some(graph_distance_matrix(g)?);
    Ok(approx)
}
