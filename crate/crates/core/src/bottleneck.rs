//! All-pairs bottleneck paths on a complete graph with capacities.
//!
//! The bottleneck value of a pair is the largest, over all paths between
//! them, of the smallest capacity on the path. Every such value is the
//! smallest capacity on the path inside any maximum spanning tree, so the
//! quadratic route is: grow a maximum spanning tree densely, then replay its
//! edges from the widest down. Each merge concatenates the two member lists
//! and records the edge capacity at the seam; pairs are then read off the
//! final list as running minima of the seam capacities.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::metric::{CapacityMatrix, SquareMatrix};
use crate::util::DisjointSets;

/// Bottleneck capacities of every pair. The diagonal repeats the input's.
#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckResult {
    matrix: SquareMatrix,
}

impl BottleneckResult {
    #[inline]
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }

    /// Reads the result back as capacities.
    pub fn to_capacities(&self, tol: f64) -> CapacityMatrix {
        CapacityMatrix::trusted(self.matrix.clone(), tol)
    }

    pub(crate) fn from_matrix(matrix: SquareMatrix) -> Self {
        Self { matrix }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEdge {
    /// Endpoint already in the tree when the edge was added.
    pub u: usize,
    pub v: usize,
    pub capacity: f64,
}

/// Dense Prim's algorithm for a maximum spanning tree, grown from vertex 0.
/// Ties go to the smallest vertex index. Edges come back in insertion order.
pub fn max_spanning_tree(c: &CapacityMatrix) -> Vec<TreeEdge> {
    spanning_tree_of(c.matrix())
}

fn spanning_tree_of(m: &SquareMatrix) -> Vec<TreeEdge> {
    let n = m.n();
    let mut in_tree = alloc::vec![false; n];
    let mut best = m.row(0).to_vec();
    let mut link = alloc::vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;

    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut width = f64::NEG_INFINITY;
        for v in 0..n {
            if !in_tree[v] && best[v] > width {
                width = best[v];
                pick = v;
            }
        }
        in_tree[pick] = true;
        edges.push(TreeEdge {
            u: link[pick],
            v: pick,
            capacity: width,
        });
        let row = m.row(pick);
        for v in 0..n {
            if !in_tree[v] && row[v] > best[v] {
                best[v] = row[v];
                link[v] = pick;
            }
        }
    }
    edges
}

/// Quadratic all-pairs bottleneck paths.
pub fn apbp(c: &CapacityMatrix) -> BottleneckResult {
    BottleneckResult::from_matrix(bottleneck_matrix(c.matrix()))
}

/// [`apbp`] on a raw symmetric matrix.
pub(crate) fn bottleneck_matrix(c: &SquareMatrix) -> SquareMatrix {
    bottleneck_in_place(c.clone())
}

/// Replaces capacities with bottleneck values, row by row. The diagonal is
/// left alone.
pub(crate) fn bottleneck_in_place(mut m: SquareMatrix) -> SquareMatrix {
    let n = m.n();
    if n < 2 {
        return m;
    }
    let (order, height) = leaf_order(spanning_tree_of(&m), n);

    // every component was an interval of `order`, so the bottleneck between
    // positions a < b is the smallest junction height in a..b
    for (a, &s) in order.iter().enumerate() {
        let row = m.row_mut(s);
        let mut cur = f64::INFINITY;
        for b in (0..a).rev() {
            cur = cur.min(height[b]);
            row[order[b]] = cur;
        }
        cur = f64::INFINITY;
        for b in a + 1..n {
            cur = cur.min(height[b - 1]);
            row[order[b]] = cur;
        }
    }
    m
}

/// Replays tree edges widest first, concatenating the two member lists at
/// each merge. Returns the final list and, for each adjacent pair in it, the
/// capacity of the edge that first joined them.
fn leaf_order(mut edges: Vec<TreeEdge>, n: usize) -> (Vec<usize>, Vec<f64>) {
    // stable so equal widths keep insertion order
    edges.sort_by(|a, b| {
        b.capacity
            .partial_cmp(&a.capacity)
            .unwrap_or(Ordering::Equal)
    });

    const NIL: usize = usize::MAX;
    let mut sets = DisjointSets::new(n);
    // list ends, valid at each set's root
    let mut head: Vec<usize> = (0..n).collect();
    let mut tail: Vec<usize> = (0..n).collect();
    let mut next = alloc::vec![NIL; n];
    let mut join = alloc::vec![0.0f64; n];
    for e in edges {
        let (a, b) = (sets.find(e.u), sets.find(e.v));
        let (first, second) = (head[a], head[b]);
        let (end_a, end_b) = (tail[a], tail[b]);
        next[end_a] = second;
        join[end_a] = e.capacity;
        let root = sets.union(a, b).expect("spanning tree edge closes a cycle");
        head[root] = first;
        tail[root] = end_b;
    }

    let mut order = Vec::with_capacity(n);
    let mut height = Vec::with_capacity(n - 1);
    let mut at = head[sets.find(0)];
    while at != NIL {
        order.push(at);
        if next[at] != NIL {
            height.push(join[at]);
        }
        at = next[at];
    }
    (order, height)
}

/// Max-min closure by a single Floyd-Warshall style pass over intermediate
/// vertices. Cubic; kept as an independent check on [`apbp`].
pub fn maxmin_closure_naive(c: &CapacityMatrix) -> BottleneckResult {
    let n = c.n();
    let mut m = c.matrix().clone();
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            let mik = m.get(i, k);
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = mik.min(m.get(k, j));
                if via > m.get(i, j) {
                    m.set(i, j, via);
                }
            }
        }
    }
    BottleneckResult::from_matrix(m)
}
