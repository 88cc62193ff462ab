//! Explicit weighted trees for 0-hyperbolic pseudo-metrics.
//!
//! With products `M = gprd(d)` at the basepoint `w`, point `i` sits at depth
//! `M[i][i]` below the root, and two points part ways at depth `M[i][j]`.
//! Max-min transitivity of `M` makes these meet depths consistent, so the
//! tree is the single-linkage dendrogram of `M` hung from the root:
//! merging clusters at product value `p` creates a branch node at depth `p`.
//! Edges of length zero (within tolerance) are contracted, which places a
//! point on a branch node when its depth equals the branch depth and puts
//! points at pseudo-distance zero on one shared node.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use crate::metric::{gprd, DistanceMatrix, SquareMatrix};
use crate::pipeline::TreeApproximation;
use crate::util::DisjointSets;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    /// Length of the edge to the parent; zero for the root.
    pub length: f64,
    /// Ordered by the smallest point index in each child's subtree.
    pub children: Vec<usize>,
    /// Input points mapped onto this node, ascending.
    pub points: Vec<usize>,
}

/// A rooted weighted tree with a map from input points to nodes. Node 0 is
/// the root and carries the basepoint; nodes are numbered in preorder.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTree {
    nodes: Vec<TreeNode>,
    leaf_map: Vec<usize>,
}

impl WeightedTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        0
    }

    /// Node carrying input point `i`.
    pub fn node_of(&self, i: usize) -> usize {
        self.leaf_map[i]
    }

    pub fn leaf_map(&self) -> &[usize] {
        &self.leaf_map
    }

    pub fn point_count(&self) -> usize {
        self.leaf_map.len()
    }

    /// Path lengths from `node` to every node.
    pub fn distances_from(&self, node: usize) -> Vec<f64> {
        let mut dist = vec![f64::NAN; self.nodes.len()];
        let mut stack = vec![node];
        dist[node] = 0.0;
        while let Some(u) = stack.pop() {
            let here = &self.nodes[u];
            let mut visit = |v: usize, len: f64| {
                if dist[v].is_nan() {
                    dist[v] = dist[u] + len;
                    stack.push(v);
                }
            };
            if let Some(p) = here.parent {
                visit(p, here.length);
            }
            for &c in &here.children {
                visit(c, self.nodes[c].length);
            }
        }
        dist
    }

    /// All-pairs tree distances between input points, by traversal.
    pub fn point_distances(&self) -> SquareMatrix {
        let n = self.leaf_map.len();
        let from: Vec<Vec<f64>> = (0..self.nodes.len())
            .map(|u| {
                if self.nodes[u].points.is_empty() {
                    Vec::new()
                } else {
                    self.distances_from(u)
                }
            })
            .collect();
        SquareMatrix::from_fn(n, |i, j| from[self.leaf_map[i]][self.leaf_map[j]])
    }
}

/// Realizes an approximating tree's pseudo-metric as a weighted tree.
pub fn realize_tree(approx: &TreeApproximation) -> Result<WeightedTree> {
    realize_distances(approx.distances())
}

/// Realizes any pseudo-metric whose products at its basepoint are max-min
/// transitive, i.e. any 0-hyperbolic pseudo-metric.
pub fn realize_distances(d: &DistanceMatrix) -> Result<WeightedTree> {
    let n = d.n();
    let w = d.base();
    let tol = d.tol();
    let m = gprd(d);

    let others: Vec<usize> = (0..n).filter(|&i| i != w).collect();
    for &i in &others {
        for &j in &others {
            if j <= i {
                continue;
            }
            let mij = m.get(i, j);
            for &k in &others {
                if k != i && k != j && mij + tol < m.get(i, k).min(m.get(k, j)) {
                    return Err(Error::NotZeroHyperbolic(i, j, k));
                }
            }
        }
    }

    struct Proto {
        depth: f64,
        children: Vec<usize>,
        points: Vec<usize>,
    }
    let mut protos = vec![Proto {
        depth: 0.0,
        children: Vec::new(),
        points: vec![w],
    }];
    let mut top = vec![usize::MAX; n];
    for &i in &others {
        top[i] = protos.len();
        protos.push(Proto {
            depth: m.get(i, i),
            children: Vec::new(),
            points: vec![i],
        });
    }

    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            pairs.push((m.get(i, j), i, j));
        }
    }
    pairs.sort_by(|x, y| {
        y.0.partial_cmp(&x.0)
            .unwrap_or(Ordering::Equal)
            .then((x.1, x.2).cmp(&(y.1, y.2)))
    });

    let mut sets = DisjointSets::new(n);
    let mut clusters = others.len();
    for (p, i, j) in pairs {
        if clusters <= 1 {
            break;
        }
        let (ri, rj) = (sets.find(i), sets.find(j));
        if ri == rj {
            continue;
        }
        let joined = protos.len();
        protos.push(Proto {
            depth: p.max(0.0),
            children: vec![top[ri], top[rj]],
            points: Vec::new(),
        });
        let r = sets.union(ri, rj).expect("distinct roots");
        top[r] = joined;
        clusters -= 1;
    }
    for &i in &others {
        if sets.find(i) == i {
            protos[0].children.push(top[i]);
        }
    }

    // contract zero-length edges; `kept[u]` lists surviving children
    let mut kept: Vec<Vec<usize>> = vec![Vec::new(); protos.len()];
    let mut merged: Vec<Vec<usize>> = vec![Vec::new(); protos.len()];
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        let mut points = protos[u].points.clone();
        let mut frontier = protos[u].children.clone();
        while let Some(c) = frontier.pop() {
            if protos[c].depth - protos[u].depth <= tol {
                points.extend_from_slice(&protos[c].points);
                frontier.extend_from_slice(&protos[c].children);
            } else {
                kept[u].push(c);
                stack.push(c);
            }
        }
        points.sort_unstable();
        merged[u] = points;
    }

    // smallest point index in each surviving subtree, children before parents
    let mut order = vec![0usize];
    let mut at = 0;
    while at < order.len() {
        let u = order[at];
        order.extend_from_slice(&kept[u]);
        at += 1;
    }
    let mut lowest = vec![usize::MAX; protos.len()];
    for &u in order.iter().rev() {
        let own = merged[u].first().copied().unwrap_or(usize::MAX);
        lowest[u] = kept[u].iter().map(|&c| lowest[c]).fold(own, usize::min);
    }
    for list in &mut kept {
        list.sort_by_key(|&c| lowest[c]);
    }

    // preorder renumbering
    let mut nodes: Vec<TreeNode> = Vec::with_capacity(order.len());
    let mut leaf_map = vec![usize::MAX; n];
    // (proto node, (parent id, parent proto node))
    let mut stack = vec![(0usize, None::<(usize, usize)>)];
    while let Some((u, parent)) = stack.pop() {
        let id = nodes.len();
        let length = parent.map_or(0.0, |(_, pu)| protos[u].depth - protos[pu].depth);
        for &pt in &merged[u] {
            leaf_map[pt] = id;
        }
        nodes.push(TreeNode {
            parent: parent.map(|(p, _)| p),
            length,
            children: Vec::new(),
            points: core::mem::take(&mut merged[u]),
        });
        if let Some((p, _)) = parent {
            nodes[p].children.push(id);
        }
        for &c in kept[u].iter().rev() {
            stack.push((c, Some((id, u))));
        }
    }
    Ok(WeightedTree { nodes, leaf_map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewickOptions {
    /// Digits after the decimal point before trailing zeros are trimmed.
    pub precision: usize,
    /// Emit one leaf per input point, hanging co-located points on
    /// zero-length branches, instead of joining their labels on one node.
    pub split_coincident: bool,
}

impl Default for NewickOptions {
    fn default() -> Self {
        Self {
            precision: 9,
            split_coincident: false,
        }
    }
}

/// Default label of point `i`: `x1`, `x2`, ...
pub fn default_label(i: usize) -> String {
    format!("x{}", i + 1)
}

/// Serializes `tree` as a single semicolon-terminated Newick line rooted at
/// the basepoint. Points sharing a node are joined with `_`.
pub fn to_newick<S: AsRef<str>>(
    tree: &WeightedTree,
    labels: Option<&[S]>,
    options: NewickOptions,
) -> Result<String> {
    let n = tree.point_count();
    let names: Vec<String> = match labels {
        Some(l) if l.len() != n => {
            return Err(Error::LabelCount {
                expected: n,
                got: l.len(),
            })
        }
        Some(l) => l.iter().map(|s| quote_label(s.as_ref())).collect(),
        None => (0..n).map(|i| quote_label(&default_label(i))).collect(),
    };
    let mut out = String::new();
    write_node(tree, tree.root(), &names, options, &mut out);
    out.push(';');
    Ok(out)
}

enum Item {
    Node(usize),
    Point(usize),
}

fn write_node(
    tree: &WeightedTree,
    u: usize,
    names: &[String],
    opts: NewickOptions,
    out: &mut String,
) {
    let node = &tree.nodes[u];
    let split = opts.split_coincident && !(node.children.is_empty() && node.points.len() == 1);

    let mut items: Vec<(usize, Item)> = node
        .children
        .iter()
        .map(|&c| (subtree_min(tree, c), Item::Node(c)))
        .collect();
    if split {
        items.extend(node.points.iter().map(|&p| (p, Item::Point(p))));
        items.sort_by_key(|(key, _)| *key);
    }

    if !items.is_empty() {
        out.push('(');
        for (k, (_, item)) in items.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            match *item {
                Item::Node(c) => write_node(tree, c, names, opts, out),
                Item::Point(p) => {
                    out.push_str(&names[p]);
                    out.push_str(":0");
                }
            }
        }
        out.push(')');
    }
    if !split {
        let joined: Vec<&str> = node.points.iter().map(|&p| names[p].as_str()).collect();
        out.push_str(&joined.join("_"));
    }
    if node.parent.is_some() {
        out.push(':');
        out.push_str(&format_length(node.length, opts.precision));
    }
}

fn subtree_min(tree: &WeightedTree, u: usize) -> usize {
    let node = &tree.nodes[u];
    let own = node.points.first().copied().unwrap_or(usize::MAX);
    // children are already ordered by their subtree minimum
    match node.children.first() {
        Some(&c) => own.min(subtree_min(tree, c)),
        None => own,
    }
}

/// Fixed-point with trailing zeros trimmed; never `-0`.
pub fn format_length(v: f64, precision: usize) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:.*}", precision, v);
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = String::from("0");
    }
    s
}

fn quote_label(s: &str) -> String {
    if s.chars()
        .any(|c| c.is_whitespace() || "()[]':;,".contains(c))
    {
        format!("'{}'", s.replace('\'', "''"))
    } else {
        String::from(s)
    }
}
