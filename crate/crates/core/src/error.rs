use thiserror::Error;

use crate::graph::ForbiddenPattern;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Peeling got stuck; `quad` holds four 0-based vertices inducing `pattern`.
    #[error("not a threshold graph: induced {pattern} at {{{}}}", fmt_quad(.quad))]
    NotThreshold {
        pattern: ForbiddenPattern,
        quad: [usize; 4],
    },
    /// Two vertices from each part inducing 2K₂, 0-based within their part.
    #[error(
        "not a bipartite threshold graph: induced 2K2 at V1 {{{},{}}} V2 {{{},{}}}",
        .v1[0] + 1, .v1[1] + 1, .v2[0] + 1, .v2[1] + 1
    )]
    NotBipartiteThreshold { v1: [usize; 2], v2: [usize; 2] },
    #[error("size guard: n = {n} exceeds limit {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("gave up after {attempts} rejected block sequences")]
    RestartLimit { attempts: usize },
    #[error("characteristic polynomial has a non-integer root (residual degree {degree})")]
    NonIntegerRoot { degree: usize },
    #[error("{0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Format(String),
}

/// Vertices printed 1-based.
fn fmt_quad(q: &[usize; 4]) -> String {
    q.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}
