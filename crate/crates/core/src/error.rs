use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("group size cap exceeded: more than {cap} elements (max-group-size), {reached} found before aborting")]
    GroupTooLarge { cap: usize, reached: usize },

    #[error("homomorphism domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("element is not in the group")]
    ElementNotInGroup,

    #[error("braid relation violated: g1 g2 g1 != g2 g1 g2")]
    BraidRelationViolated,

    #[error("image of c does not commute with the other generator images")]
    CentralImageNotCentral,

    #[error("kernel is not contained in PB3")]
    KernelNotInPb3,

    #[error("word is not in the commutator subgroup of F2: {0}")]
    NotCommutatorWord(String),

    #[error("candidate cap exceeded: {count} candidates, max-candidates is {cap}")]
    CandidateCapExceeded { cap: usize, count: usize },

    #[error("catalog degree {requested} exceeds the configured limit {limit} (max-degree)")]
    CatalogDegreeTooLarge { requested: usize, limit: usize },

    #[error("({m}, {f}) is not a GT-shadow with target {target}")]
    NotAShadow { m: i64, f: String, target: String },

    #[error("source of the left shadow differs from the target of the right shadow")]
    SourceTargetMismatch,

    #[error("subgroup {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("object {0} is not isolated")]
    NotIsolated(String),

    #[error("2m+1 = {unit} is not invertible modulo {modulus}")]
    UnitInverseMissing { unit: u64, modulus: u64 },

    #[error("cannot parse word {word:?}: unexpected {ch:?} at position {pos}")]
    WordParse { word: String, ch: char, pos: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
