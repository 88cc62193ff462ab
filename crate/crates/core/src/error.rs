use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("base index {base} is out of range for {n} points")]
    BaseOutOfRange { base: usize, n: usize },
    #[error("entry ({0}, {1}) is not a finite number")]
    NonFinite(usize, usize),
    #[error("entries ({0}, {1}) and ({1}, {0}) differ")]
    AsymmetricEntry(usize, usize),
    #[error("diagonal entry ({0}, {0}) is not zero")]
    NonzeroDiagonal(usize),
    #[error("entry ({0}, {1}) is negative")]
    NegativeEntry(usize, usize),
    #[error("triangle inequality fails: d({0},{1}) > d({0},{2}) + d({2},{1})")]
    TriangleViolation(usize, usize, usize),
    #[error("off-diagonal entry ({0}, {1}) is zero in a strict metric")]
    ZeroOffDiagonal(usize, usize),
    #[error("Gromov product ({0}, {1}) exceeds a diagonal entry")]
    ProductExceedsDiagonal(usize, usize),
    #[error("entry ({0}, {1}) in the base row or column is not zero")]
    NonzeroBaseEntry(usize, usize),
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} - {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {unreached} is unreachable from {from}")]
    Disconnected { from: usize, unreached: usize },
    #[error("products are not max-min transitive at ({0}, {1}) through {2}")]
    NotZeroHyperbolic(usize, usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}
