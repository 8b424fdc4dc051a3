use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters GP({n},{k}): need n >= 3 and 1 <= k < n/2")]
    InvalidParameters { n: usize, k: usize },

    #[error("operation requires a graph of the form GP(3k,k), got GP({n},{k})")]
    NotApplicable { n: usize, k: usize },

    #[error("vertex {vertex} is not a vertex of the triple graph {graph}")]
    VertexNotInGraph { graph: &'static str, vertex: usize },

    #[error("closed form for {what} is not an integer (numerator {numerator}, divisor {divisor})")]
    NonIntegerResult {
        what: &'static str,
        numerator: String,
        divisor: u32,
    },

    #[error("outer edge {edge} has no colour")]
    IncompleteColouring { edge: usize },

    #[error("outer colouring does not extend: colour triple {index} fails")]
    NotExtendable { index: usize },

    #[error("instance too large: size {size} exceeds bound {bound}")]
    InstanceTooLarge { size: usize, bound: usize },

    #[error("list for edge {edge} is empty")]
    EmptyList { edge: usize },

    #[error("list size {list_size} exceeds palette size {palette_size}")]
    ListLargerThanPalette { list_size: usize, palette_size: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
