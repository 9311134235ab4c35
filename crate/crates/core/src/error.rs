use thiserror::Error;

use crate::group::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table[{a}][{b}] = {value} is out of range")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("identity must be element 0, found {found}")]
    IdentityNotZero { found: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of the common degree")]
    BadPermutation { index: usize },
    #[error("permutation group closure exceeds 4096 elements")]
    TooLarge,
    #[error("element set is not a subgroup (witness {witness})")]
    NotASubgroup { witness: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action matrix of {sigma} entry ({i},{j}) is not compatible with the moduli")]
    IncompatibleMatrix { sigma: Elem, i: usize, j: usize },
    #[error("action is not a homomorphism at ({sigma}, {rho})")]
    NotHomomorphism { sigma: Elem, rho: Elem },
    #[error("action matrices do not cover the acting subgroup (missing {missing})")]
    IncompleteAction { missing: Elem },
    #[error("element {sigma} does not act on this module")]
    NotActing { sigma: Elem },
    #[error("matrix has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("modulus must be positive")]
    BadModulus,
    #[error("exponent {exponent} of the module does not divide {n}")]
    ExponentMismatch { exponent: i64, n: i64 },
    #[error("coefficient module must be cyclic with a unit action")]
    NotCyclic,
    #[error("map is not equivariant at element {sigma}, basis vector {basis}")]
    NotEquivariant { sigma: Elem, basis: usize },
    #[error("modules live over different groups")]
    GroupMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("degree {degree} exceeds the ceiling {ceiling}")]
    DegreeTooLarge { degree: usize, ceiling: usize },
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("pairing does not match the cochain modules")]
    PairingMismatch,
    #[error("homogeneous cochain is not equivariant at {sigma}")]
    NotEquivariant { sigma: Elem },
    #[error("transversal is not normalized: T(H) must be the identity")]
    TransversalNotNormalized,
    #[error("cochains are not over the same group and module")]
    Mismatch,
    #[error("class map is not well defined: {0}")]
    NotWellDefined(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("finite abelian group too large to enumerate ({size} elements)")]
    TooLarge { size: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("invariant map at place {place} is inconsistent: {detail}")]
    InvInconsistent { place: String, detail: String },
    #[error("decorated objects live on different contexts")]
    ContextMismatch,
    #[error("class map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtpError {
    #[error("no epsilon: the class of ι⁻¹(df) ∪ ψ̄ in H³(G, C) is nonzero ({class:?})")]
    EpsilonObstruction { class: Vec<i64> },
    #[error("no local lift of φ̄ with class in the local condition at place {place}")]
    LocalLiftObstruction { place: String },
    #[error("{which} is not in the Selmer group")]
    NotSelmer { which: &'static str },
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl From<CochainError> for ModuleError {
    fn from(e: CochainError) -> Self {
        match e {
            CochainError::Module(m) => m,
            other => ModuleError::PreconditionViolation(other.to_string()),
        }
    }
}

/// Failures while reading a context file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
    #[error("{0}")]
    Io(String),
}
