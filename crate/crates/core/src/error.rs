use thiserror::Error;

/// Everything that can go wrong when building or querying the structures in
/// this crate. Property *violations* (a brace axiom failing, an oracle
/// disagreeing with a condition) are not errors; they come back as
/// [`Verdict`](crate::check::Verdict)s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} out of range for a group of order {order}")]
    OutOfRange { id: usize, order: usize },

    #[error("objects belong to different host groups")]
    HostMismatch,

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("map is not a homomorphism: f({g}*{h}) != f({g})*f({h})")]
    NotHomomorphism { g: usize, h: usize },

    #[error("map is not an endomorphism of this group")]
    NotEndomorphism,

    #[error("elements {0:?} do not generate the group")]
    DoesNotGenerate(Vec<usize>),

    #[error("generator images are inconsistent with the group relations")]
    InconsistentImages,

    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("operation is not a group: {0}")]
    NotAGroup(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
