/// True when every value is an exact multiple of one half.
pub(crate) fn all_half_integers(values: &[f64]) -> bool {
    values.iter().all(|&v| {
        let t = v * 2.0;
        // 2^52: beyond this every finite double is an integer anyway
        t.is_finite() && (t.abs() >= 4_503_599_627_370_496.0 || t == (t as i64) as f64)
    })
}

/// Tolerance actually applied to a set of entries.
pub(crate) fn effective_tol(values: &[f64], tol: f64) -> f64 {
    if all_half_integers(values) {
        0.0
    } else {
        tol
    }
}

pub(crate) struct DisjointSets {
    parent: alloc::vec::Vec<usize>,
    size: alloc::vec::Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union by size. Returns the surviving root, or `None` if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return None;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        Some(a)
    }
}
