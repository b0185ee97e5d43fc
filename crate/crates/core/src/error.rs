use thiserror::Error;

use crate::word::Letter;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter {ch:?} at position {pos}; expected one of a, b, A, B")]
    InvalidLetter { ch: char, pos: usize },

    #[error("word \"{0}\" is not cyclically reduced")]
    NotCyclicallyReduced(String),

    #[error("({{{y}}}, {x}) is not a one-letter automorphism: {y} must differ from {x} and its inverse")]
    DegeneratePair { y: Letter, x: Letter },

    #[error("\"{0}\" is not a permutation of the alphabet")]
    NotAPermutation(String),

    #[error("word \"{0}\" is not minimal")]
    NotMinimal(String),

    #[error("cannot parse automorphism {0:?}; expected W[y,x] or P[img_a,img_b]")]
    AutomorphismSyntax(String),

    #[error("class graph matches no known type (vertices {vertices:?}, edges {edges:?})")]
    Unrecognized {
        vertices: Vec<String>,
        edges: Vec<(usize, usize, u8)>,
    },

    #[error("theorem violation: {0}")]
    Violation(String),

    #[error("invalid graph document: {0}")]
    GraphDocument(String),
}
