use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("letter `{letter}`: permutation has length {found}, expected {expected}")]
    LengthMismatch {
        letter: String,
        expected: usize,
        found: usize,
    },
    #[error("letter `{letter}` is not a bijection: image {image} is hit twice")]
    NonBijection { letter: String, image: usize },
    #[error("image {image} of letter `{letter}` is outside 0..{n}")]
    ImageOutOfRange { letter: String, image: usize, n: usize },
    #[error("letter index {0} is not in the alphabet")]
    LetterOutOfRange(usize),
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs differ in vertex count or alphabet")]
    ShapeMismatch,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("no perfect matching found in a regular bipartite double")]
    MatchingFailure,
    #[error("action is not transitive")]
    NotTransitive,
    #[error("generator {0} moves the basepoint")]
    WordNotInSubgroup(usize),
    #[error("subset element {element} is outside the group of order {order}")]
    OutOfRange { element: usize, order: usize },
    #[error("instance of size {size} exceeds the exhaustive limit {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("a generator maps the domain outside itself")]
    DomainNotInvariant,
    #[error("domain is empty")]
    EmptyDomain,
    #[error("no nonempty set of at most half the domain exists")]
    NoAdmissibleSet,
    #[error("base edge at vertex {vertex} with letter {letter} has no preimage")]
    NotSurjective { vertex: usize, letter: usize },
    #[error("base eigenvalue {0} has no partner in the total spectrum")]
    MatchFailure(f64),
    #[error("covering maps have different bases")]
    BaseMismatch,
    #[error("glue points lie over different base vertices")]
    FiberMismatch,
    #[error("girth {0} is too small for gluing (need > 2)")]
    GirthTooSmall(u64),
    #[error("no acceptable sample within {0} tries")]
    RetriesExhausted(usize),
    #[error("{0} is not a prime >= 5")]
    NotPrime(u64),
    #[error("base of size {0} is too small (need >= 3)")]
    TooSmall(usize),
    #[error("construction needs {needed} vertices, cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
