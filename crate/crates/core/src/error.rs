use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("complete index-trees need ell = 2^d - 1 for some d >= 1, got ell = {0}")]
    NotComplete(usize),

    #[error("alpha must be a finite real > 2, got {0}")]
    InvalidAlpha(f64),

    #[error("m = {0} exceeds 2^40; floor(m / alpha) is no longer exact in f64")]
    TooLarge(u64),

    #[error("index {index} is out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid index-tree: {reason} (witness index {witness})")]
    InvalidTree { reason: String, witness: usize },

    #[error("barrier B({i},{j}) needs i > j")]
    BadFactorOrder { i: usize, j: usize },

    #[error("ell = {ell} is above the exhaustive-check cap of {cap}; use a sampled check instead")]
    AboveCap { ell: usize, cap: usize },

    #[error("chain is not properly nested: T({inner}) is not a proper subtree of T({outer})")]
    NotNested { outer: usize, inner: usize },

    #[error("ell = {ell} exceeds the memory guard ({guard}); the skeleton has 2^(2^ell - 1) - 1 nodes")]
    MemoryGuard { ell: usize, guard: usize },

    #[error("rank {rank} is out of range {min}..={max} for this node")]
    RankOutOfRange { rank: usize, min: usize, max: usize },

    #[error("index-tree has ell = {tree}, skeleton has ell = {skeleton}")]
    EllMismatch { tree: usize, skeleton: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("path does not follow the analysis convention: {0}")]
    Convention(String),

    #[error("constructed Hamiltonian path failed verification: {0}")]
    HamiltonianFailed(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
