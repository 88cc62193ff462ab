#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::VecDeque;

use gromtree_core::bottleneck::maxmin_closure_naive;
use gromtree_core::metric::{
    gprd, igprd, CapacityMatrix, DistanceMatrix, ProductMatrix, SquareMatrix,
};
use gromtree_core::pipeline::AdjacencyGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Values {
    Integer,
    HalfInteger,
    Real,
}

impl Values {
    pub const ALL: [Values; 3] = [Values::Integer, Values::HalfInteger, Values::Real];

    pub fn sample<R: Rng>(self, rng: &mut R, scale: u32) -> f64 {
        match self {
            Values::Integer => rng.gen_range(0..=scale) as f64,
            Values::HalfInteger => rng.gen_range(0..=2 * scale) as f64 / 2.0,
            Values::Real => rng.gen_range(0.0..scale as f64),
        }
    }

    pub fn tol(self) -> f64 {
        match self {
            Values::Real => TOL,
            _ => 0.0,
        }
    }
}

pub fn random_capacities<R: Rng>(rng: &mut R, n: usize, values: Values) -> CapacityMatrix {
    // small ranges make ties common
    let scale = rng.gen_range(1..=12);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        rows[i][i] = if rng.gen_bool(0.3) {
            values.sample(rng, scale)
        } else {
            0.0
        };
        for j in i + 1..n {
            let v = values.sample(rng, scale);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    CapacityMatrix::new(&rows, TOL).unwrap()
}

/// Random spanning tree plus extra edges, as an edge list.
pub fn random_connected_edges<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for k in 1..n {
        let u = order[k];
        let v = order[rng.gen_range(0..k)];
        seen.insert((u.min(v), u.max(v)));
        edges.push((u, v));
    }
    if n > 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> AdjacencyGraph {
    let extra = rng.gen_range(0..=2 * n);
    let base = rng.gen_range(0..n);
    AdjacencyGraph::new(n, &random_connected_edges(rng, n, extra), base).unwrap()
}

/// Shortest-path metric of a random connected weighted graph.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize, values: Values) -> DistanceMatrix {
    let extra = rng.gen_range(0..=n * 2);
    let edges = random_connected_edges(rng, n, extra);
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v) in edges {
        let w = match values {
            Values::Integer => rng.gen_range(1..=9) as f64,
            Values::HalfInteger => rng.gen_range(1..=18) as f64 / 2.0,
            Values::Real => rng.gen_range(0.05..5.0),
        };
        d[u][v] = w;
        d[v][u] = w;
    }
    floyd_warshall(&mut d);
    let base = if rng.gen_bool(0.5) {
        n - 1
    } else {
        rng.gen_range(0..n)
    };
    DistanceMatrix::new(&d, base, true, TOL).unwrap()
}

pub fn floyd_warshall(d: &mut [Vec<f64>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// Hop distances by a plain queue-based search, independent of the library.
pub fn bfs_matrix(g: &AdjacencyGraph) -> DistanceMatrix {
    let n = g.n();
    let mut rows = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        for t in 0..n {
            rows[s][t] = dist[t] as f64;
        }
    }
    DistanceMatrix::new(&rows, g.base(), true, TOL).unwrap()
}

/// `igprd ∘ closure ∘ gprd` with the cubic closure as the bottleneck step.
pub fn gtree_oracle(d: &DistanceMatrix) -> SquareMatrix {
    let l = gprd(d);
    let m = maxmin_closure_naive(&l.to_capacities());
    let p = ProductMatrix::from_matrix(m.into_matrix(), d.base(), TOL).unwrap();
    igprd(&p).unwrap().matrix().clone()
}

/// Entrywise comparison; exact when `tol == 0`.
pub fn assert_close(a: &SquareMatrix, b: &SquareMatrix, tol: f64, what: &str) {
    assert_eq!(a.n(), b.n(), "{what}: size");
    for i in 0..a.n() {
        for j in 0..a.n() {
            let (x, y) = (a.get(i, j), b.get(i, j));
            assert!((x - y).abs() <= tol, "{what}: ({i},{j}) {x} vs {y}");
        }
    }
}

pub fn max_min_violation(p: &ProductMatrix) -> f64 {
    let n = p.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    worst = worst.max(p.get(i, k).min(p.get(k, j)) - p.get(i, j));
                }
            }
        }
    }
    worst
}

/// Lowers random off-base entries one at a time, each into the interval that
/// keeps every triangle inequality: `[max_k |d_ik − d_jk|, d_ij]`.
pub fn random_minorant<R: Rng>(rng: &mut R, d: &DistanceMatrix, steps: usize) -> DistanceMatrix {
    let n = d.n();
    let w = d.base();
    let exact = d.tol() == 0.0;
    let mut rows = d.matrix().to_rows();
    if n < 3 {
        return d.clone();
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || i == w || j == w {
            continue;
        }
        let lo = (0..n)
            .filter(|&k| k != i && k != j)
            .map(|k| (rows[i][k] - rows[j][k]).abs())
            .fold(0.0, f64::max);
        let hi = rows[i][j];
        if hi <= lo {
            continue;
        }
        let v = if exact {
            // stay on half-integers
            let (a, b) = ((lo * 2.0).ceil() as i64, (hi * 2.0).floor() as i64);
            rng.gen_range(a..=b) as f64 / 2.0
        } else {
            rng.gen_range(lo..=hi)
        };
        rows[i][j] = v;
        rows[j][i] = v;
    }
    DistanceMatrix::new(&rows, w, false, TOL).unwrap()
}

/// Minimal Newick reader for round-trip checks: returns, per label, the path
/// length from the root, and the label sets on each node with their parent.
pub mod newick {
    #[derive(Debug, Default)]
    pub struct Node {
        pub labels: Vec<String>,
        pub length: f64,
        pub parent: Option<usize>,
    }

    pub fn parse(s: &str) -> Vec<Node> {
        let b = s.trim().as_bytes();
        assert_eq!(*b.last().unwrap(), b';', "missing semicolon");
        let mut nodes = vec![];
        let mut pos = 0;
        node(b, &mut pos, None, &mut nodes);
        assert_eq!(pos, b.len() - 1, "trailing input");
        nodes
    }

    fn node(b: &[u8], pos: &mut usize, parent: Option<usize>, nodes: &mut Vec<Node>) -> usize {
        let id = nodes.len();
        nodes.push(Node {
            parent,
            ..Node::default()
        });
        if b[*pos] == b'(' {
            loop {
                *pos += 1;
                node(b, pos, Some(id), nodes);
                match b[*pos] {
                    b',' => continue,
                    b')' => {
                        *pos += 1;
                        break;
                    }
                    c => panic!("unexpected {}", c as char),
                }
            }
        }
        let start = *pos;
        while !b":,);".contains(&b[*pos]) {
            *pos += 1;
        }
        let label = std::str::from_utf8(&b[start..*pos]).unwrap();
        if !label.is_empty() {
            nodes[id].labels = label.split('_').map(str::to_owned).collect();
        }
        if b[*pos] == b':' {
            *pos += 1;
            let start = *pos;
            while !b",);".contains(&b[*pos]) {
                *pos += 1;
            }
            nodes[id].length = std::str::from_utf8(&b[start..*pos])
                .unwrap()
                .parse()
                .unwrap();
        }
        id
    }

    /// Pairwise path lengths between labelled points `x1..xn`.
    pub fn point_distances(nodes: &[Node], n: usize) -> Vec<Vec<f64>> {
        let mut at = vec![usize::MAX; n];
        for (id, node) in nodes.iter().enumerate() {
            for l in &node.labels {
                let i: usize = l.trim_start_matches('x').parse().unwrap();
                at[i - 1] = id;
            }
        }
        let depth = |mut u: usize| {
            let mut chain = vec![(u, 0.0)];
            let mut acc = 0.0;
            while let Some(p) = nodes[u].parent {
                acc += nodes[u].length;
                chain.push((p, acc));
                u = p;
            }
            chain
        };
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            let ci = depth(at[i]);
            for j in 0..n {
                let cj = depth(at[j]);
                let (meet, up_j) = cj
                    .iter()
                    .find_map(|&(u, dj)| ci.iter().find(|&&(v, _)| v == u).map(|&(_, di)| (di, dj)))
                    .unwrap();
                out[i][j] = meet + up_j;
            }
        }
        out
    }
}
