use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid linear order {ranking:?} over {n} alternatives")]
    InvalidOrder { ranking: Vec<usize>, n: usize },

    #[error("alternative {index} out of range for n = {n}")]
    AlternativeOutOfRange { index: usize, n: usize },

    #[error("prefers() needs two distinct alternatives, got {0} twice")]
    SameAlternative(usize),

    #[error("profile has {got} orders, expected {expected}")]
    ProfileLength { got: usize, expected: usize },

    #[error("rank {rank} out of range, there are {count} {what}")]
    RankOutOfRange { rank: usize, count: usize, what: &'static str },

    #[error("instance n = {n}, N = {voters} is outside the supported envelope: {reason}")]
    Envelope { n: usize, voters: usize, reason: String },

    #[error("invalid social choice table: {0}")]
    InvalidTable(String),

    #[error("vertex {vertex} out of range for a complex on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("simplex {0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),

    #[error("degree {degree} out of range (complex dimension {dim})")]
    DegreeOutOfRange { degree: usize, dim: isize },

    #[error("cover is empty")]
    EmptyCover,

    #[error("cover set {set} has a mask of length {got}, expected {expected}")]
    CoverMask { set: usize, got: usize, expected: usize },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("matrix shapes do not match: {0}")]
    Shape(String),

    #[error("vertex map is not simplicial: image of {face:?} is {image:?}, not a face of the target")]
    NotSimplicial { face: Vec<usize>, image: Vec<usize> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
