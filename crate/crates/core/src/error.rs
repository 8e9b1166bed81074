use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero in cyclotomic field")]
    ZeroDivision,
    #[error("Q(zeta_{from}) does not embed in Q(zeta_{to})")]
    NotASubfield { from: u32, to: u32 },
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("catalog validation failed for {group}: {check}: {detail}")]
    CatalogValidation {
        group: String,
        check: &'static str,
        detail: String,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("reflection closure exceeded bound {bound}")]
    ClosureBoundExceeded { bound: usize },
    #[error("root orbit exceeded bound {bound}")]
    RootBoundExceeded { bound: usize },
    #[error("product of generators of {group} is not a Coxeter element: {detail}")]
    NotCoxeter { group: String, detail: String },
    #[error("element order exceeds bound {bound}")]
    OrderBoundExceeded { bound: u64 },
    #[error("rank {0} is above the supported maximum of 8")]
    RankTooLarge(usize),
    #[error("no usable modular reduction for conductor {0}")]
    NoModularImage(u32),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval has {found} elements, expected Cat(W) = {expected}")]
    CardinalMismatch { found: usize, expected: u128 },
    #[error("elements {u} and {w} have no unique {kind}; maximal candidates {candidates:?}")]
    NotALattice {
        u: usize,
        w: usize,
        kind: &'static str,
        candidates: Vec<usize>,
    },
    #[error("{what}: computed {found}, formula gives {expected}")]
    FormulaMismatch {
        what: &'static str,
        found: u128,
        expected: u128,
    },
    #[error("{what} is not an integer")]
    NonInteger { what: &'static str },
    #[error("enumeration of {count} items exceeds cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("orbit exceeds cap {cap}")]
    CapExceeded { cap: usize },
    #[error("Hurwitz orbit has {orbit} tuples but Red_R has {expected}")]
    TransitivityFailure { orbit: usize, expected: usize },
    #[error("position {0} is outside 1..n-1")]
    BadPosition(usize),
    #[error("tuple entries do not fit a 64-bit key ({width} entries of {bits} bits)")]
    TupleTooWide { width: usize, bits: u32 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GarsideError {
    #[error("conjugate {conjugate} of atoms ({left}, {right}) is not an atom")]
    AtomResolutionFailure {
        left: usize,
        right: usize,
        conjugate: usize,
    },
    #[error("unknown simple {0:?}")]
    UnknownSimple(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}
