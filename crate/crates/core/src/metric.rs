//! Square matrices of a finite pointed space: distances, Gromov products at a
//! basepoint, edge capacities, and the conversions between them.
//!
//! Conventions shared by every type here:
//!
//! * entries are stored row-major as `f64`;
//! * the basepoint `w` is an explicit index rather than always the last point;
//! * each validated matrix remembers the tolerance it was checked with. The
//!   tolerance collapses to `0.0` when every entry is a multiple of one half,
//!   because all the arithmetic below stays exact on such inputs.

use alloc::vec::Vec;
use core::ops::Index;

use crate::util::effective_tol;
use crate::{Error, Result};

/// Dense `n × n` matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// Checks shape and finiteness only.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite(i, j));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        // written out rather than requested zeroed, so every page is
        // faulted in here once instead of being read as a shared zero page
        // and copied again on the first write
        let mut data = Vec::with_capacity(n * n);
        data.resize(n * n, 0.0);
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub(crate) fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Largest absolute entrywise difference. Panics on size mismatch.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Drops the last row and column.
    pub(crate) fn truncate_last(&self) -> SquareMatrix {
        let m = self.n - 1;
        SquareMatrix::from_fn(m, |i, j| self.get(i, j))
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

/// Distance matrix of a pointed (pseudo-)metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    matrix: SquareMatrix,
    base: usize,
    strict: bool,
    tol: f64,
}

/// Checks that `raw` is the distance matrix of a pseudo-metric space (or of a
/// metric space when `strict` is set) and pins `base` as its basepoint.
pub fn validate_distance_matrix<R: AsRef<[f64]>>(
    raw: &[R],
    base: usize,
    strict: bool,
    tol: f64,
) -> Result<DistanceMatrix> {
    DistanceMatrix::from_matrix(SquareMatrix::from_rows(raw)?, base, strict, tol)
}

impl DistanceMatrix {
    pub fn new<R: AsRef<[f64]>>(raw: &[R], base: usize, strict: bool, tol: f64) -> Result<Self> {
        validate_distance_matrix(raw, base, strict, tol)
    }

    pub fn from_matrix(matrix: SquareMatrix, base: usize, strict: bool, tol: f64) -> Result<Self> {
        let n = matrix.n();
        check_base(base, n)?;
        let tol = effective_tol(matrix.as_slice(), tol);
        let d = &matrix;
        if let Some(i) = (0..n).find(|&i| d[(i, i)] != 0.0) {
            return Err(Error::NonzeroDiagonal(i));
        }
        for i in 0..n {
            for j in i + 1..n {
                if d[(i, j)] < 0.0 {
                    return Err(Error::NegativeEntry(i, j));
                }
                if d[(j, i)] < 0.0 {
                    return Err(Error::NegativeEntry(j, i));
                }
                if (d[(i, j)] - d[(j, i)]).abs() > tol {
                    return Err(Error::AsymmetricEntry(i, j));
                }
            }
        }
        for i in 0..n {
            let row_i = d.row(i);
            for j in i + 1..n {
                let dij = row_i[j];
                for k in 0..n {
                    if k != i && k != j && dij > row_i[k] + d[(k, j)] + tol {
                        return Err(Error::TriangleViolation(i, j, k));
                    }
                }
            }
        }
        if strict {
            for i in 0..n {
                for j in i + 1..n {
                    if d[(i, j)] <= tol {
                        return Err(Error::ZeroOffDiagonal(i, j));
                    }
                }
            }
        }
        Ok(Self {
            matrix,
            base,
            strict,
            tol,
        })
    }

    /// Caller guarantees the distance-matrix invariants.
    pub(crate) fn trusted(matrix: SquareMatrix, base: usize, tol: f64) -> Self {
        Self {
            matrix,
            base,
            strict: false,
            tol,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    #[inline]
    pub fn base(&self) -> usize {
        self.base
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    /// Whether this matrix was validated as a metric (no zero off-diagonal).
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Same distances, different basepoint.
    pub fn with_base(mut self, base: usize) -> Result<Self> {
        check_base(base, self.n())?;
        self.base = base;
        Ok(self)
    }
}

/// Gromov products at a basepoint: `entries[i][j] = (x_i | x_j)_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMatrix {
    matrix: SquareMatrix,
    base: usize,
    tol: f64,
}

impl ProductMatrix {
    /// Validates symmetry, non-negativity, the diagonal bound and the zero
    /// base row. Membership in the image of [`gprd`] additionally needs the
    /// triangle inequality, which [`igprd`] checks.
    pub fn new<R: AsRef<[f64]>>(raw: &[R], base: usize, tol: f64) -> Result<Self> {
        Self::from_matrix(SquareMatrix::from_rows(raw)?, base, tol)
    }

    pub fn from_matrix(matrix: SquareMatrix, base: usize, tol: f64) -> Result<Self> {
        let n = matrix.n();
        check_base(base, n)?;
        let tol = effective_tol(matrix.as_slice(), tol);
        let l = &matrix;
        for i in 0..n {
            for j in 0..n {
                let v = l[(i, j)];
                if v < -tol {
                    return Err(Error::NegativeEntry(i, j));
                }
                if j > i && (v - l[(j, i)]).abs() > tol {
                    return Err(Error::AsymmetricEntry(i, j));
                }
                if (i == base || j == base) && v.abs() > tol {
                    return Err(Error::NonzeroBaseEntry(i, j));
                }
                if i != j && v > l[(i, i)].min(l[(j, j)]) + tol {
                    return Err(Error::ProductExceedsDiagonal(i, j));
                }
            }
        }
        Ok(Self { matrix, base, tol })
    }

    pub(crate) fn trusted(matrix: SquareMatrix, base: usize, tol: f64) -> Self {
        Self { matrix, base, tol }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    #[inline]
    pub fn base(&self) -> usize {
        self.base
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

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The same entries read as edge capacities of a complete graph.
    pub fn to_capacities(&self) -> CapacityMatrix {
        CapacityMatrix::trusted(self.matrix.clone(), self.tol)
    }
}

/// Symmetric non-negative edge capacities of the complete graph on `n`
/// vertices. The diagonal is carried along but never used as an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityMatrix {
    matrix: SquareMatrix,
    tol: f64,
}

impl CapacityMatrix {
    pub fn new<R: AsRef<[f64]>>(raw: &[R], tol: f64) -> Result<Self> {
        Self::from_matrix(SquareMatrix::from_rows(raw)?, tol)
    }

    pub fn from_matrix(matrix: SquareMatrix, tol: f64) -> Result<Self> {
        let n = matrix.n();
        let tol = effective_tol(matrix.as_slice(), tol);
        for i in 0..n {
            for j in 0..n {
                if matrix[(i, j)] < 0.0 {
                    return Err(Error::NegativeEntry(i, j));
                }
                if j > i && (matrix[(i, j)] - matrix[(j, i)]).abs() > tol {
                    return Err(Error::AsymmetricEntry(i, j));
                }
            }
        }
        Ok(Self { matrix, tol })
    }

    pub(crate) fn trusted(matrix: SquareMatrix, tol: f64) -> Self {
        Self { matrix, tol }
    }

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

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Gromov hyperbolicity and the lexicographically first quadruple
/// `[x, y, z, w]` attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbolicity {
    pub delta: f64,
    pub witness: [usize; 4],
}

fn check_base(base: usize, n: usize) -> Result<()> {
    if base >= n {
        return Err(Error::BaseOutOfRange { base, n });
    }
    Ok(())
}

/// Gromov products at `d.base()`.
pub fn gprd(d: &DistanceMatrix) -> ProductMatrix {
    let n = d.n();
    let w = d.base();
    let mut l = SquareMatrix::zeros(n);
    for i in 0..n {
        if i == w {
            continue;
        }
        let di = d.get(i, w);
        l.set(i, i, di);
        for j in i + 1..n {
            if j != w {
                l.set_sym(i, j, 0.5 * (di + d.get(j, w) - d.get(i, j)));
            }
        }
    }
    ProductMatrix::trusted(l, w, d.tol())
}

/// Distances recovered from Gromov products, validated as a pseudo-metric.
///
/// Fails with [`Error::TriangleViolation`] when `l` is not the product matrix
/// of any pointed pseudo-metric space.
pub fn igprd(l: &ProductMatrix) -> Result<DistanceMatrix> {
    let d = igprd_unchecked(l);
    DistanceMatrix::from_matrix(d.matrix, l.base(), false, l.tol())
}

/// [`igprd`] without the cubic validation pass, for inputs already known to
/// be product matrices of a pseudo-metric.
pub fn igprd_unchecked(l: &ProductMatrix) -> DistanceMatrix {
    DistanceMatrix::trusted(
        distances_from_products(l.matrix(), l.base()),
        l.base(),
        l.tol(),
    )
}

pub(crate) fn distances_from_products(l: &SquareMatrix, w: usize) -> SquareMatrix {
    products_into_distances(l.clone(), w)
}

/// Overwrites products at `w` with the distances they determine, row by row.
pub(crate) fn products_into_distances(mut m: SquareMatrix, w: usize) -> SquareMatrix {
    let n = m.n();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    for i in 0..n {
        let li = diag[i];
        let row = m.row_mut(i);
        for j in 0..n {
            row[j] = if i == j {
                0.0
            } else if i == w {
                diag[j]
            } else if j == w {
                li
            } else {
                li + diag[j] - 2.0 * row[j]
            };
        }
    }
    m
}

/// Embeds capacities as Gromov products of an `(n + 1)`-point metric space:
/// off-diagonal entries are kept, every diagonal entry becomes
/// [`exte_diagonal`], and a zero row and column for the new basepoint
/// (index `n`) are appended.
pub fn exte(c: &CapacityMatrix) -> ProductMatrix {
    let n = c.n();
    let mu = exte_diagonal(c);
    let m = SquareMatrix::from_fn(n + 1, |i, j| {
        if i == n || j == n {
            0.0
        } else if i == j {
            mu
        } else {
            c.get(i, j)
        }
    });
    ProductMatrix::trusted(m, n, c.tol())
}

/// Diagonal value used by [`exte`]:
/// `max(1 + max c_ij, max_k (a_k + b_k))` where `a_k ≥ b_k` are the two
/// largest off-diagonal capacities in row `k`.
///
/// Recovered distances are `d_ij = 2μ − 2c_ij`, so the triangle inequality
/// through `k` needs `μ ≥ c_ik + c_kj − c_ij`, which the second term bounds.
/// `1 + max c_ij` alone is not enough once `n ≥ 3`: capacities 5, 1, 3 on a
/// triangle give `μ = 6` and distances 2, 10, 6. The first term keeps every
/// distance among the original points at least 2.
pub fn exte_diagonal(c: &CapacityMatrix) -> f64 {
    let n = c.n();
    let mut mu = 1.0
        + c.matrix()
            .as_slice()
            .iter()
            .copied()
            .fold(f64::MIN, f64::max);
    for k in 0..n {
        let (mut a, mut b) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (j, &v) in c.matrix().row(k).iter().enumerate() {
            if j == k {
                continue;
            }
            if v > a {
                b = a;
                a = v;
            } else if v > b {
                b = v;
            }
        }
        if b.is_finite() {
            mu = mu.max(a + b);
        }
    }
    mu
}

/// Brute force over all `n⁴` quadruples of
/// `min{(x|y)_w, (y|z)_w} − (x|z)_w`, with products recomputed at every
/// basepoint `w`.
pub fn delta_hyperbolicity(d: &DistanceMatrix) -> Hyperbolicity {
    let n = d.n();
    let mut best = Hyperbolicity {
        delta: 0.0,
        witness: [0; 4],
    };
    let mut prod = SquareMatrix::zeros(n);
    for w in 0..n {
        for x in 0..n {
            let dxw = d.get(x, w);
            for y in 0..n {
                prod.set(x, y, 0.5 * (dxw + d.get(y, w) - d.get(x, y)));
            }
        }
        for x in 0..n {
            let px = prod.row(x);
            for y in 0..n {
                let pxy = px[y];
                let py = prod.row(y);
                for z in 0..n {
                    let v = pxy.min(py[z]) - px[z];
                    if v > best.delta || (v == best.delta && [x, y, z, w] < best.witness) {
                        best = Hyperbolicity {
                            delta: v,
                            witness: [x, y, z, w],
                        };
                    }
                }
            }
        }
    }
    best
}
