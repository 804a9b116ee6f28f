use num_rational::BigRational;
use thiserror::Error;

/// Errors produced by lattice construction and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} out of range for {n} elements")]
    InvalidElement { id: usize, n: usize },
    #[error("cover relation contains a cycle")]
    CyclicCovers,
    #[error("poset has no unique minimum and maximum")]
    NoBoundedStructure,
    #[error("elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("lattice has coincident bottom and top")]
    DegenerateLattice,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("element {0} is not below element {1}")]
    NotComparable(usize, usize),
    #[error("the bottom element has no join-irreducibles below it")]
    BottomHasNoIrreducibles,
    #[error("probability target is the bottom element")]
    BottomTarget,
    #[error("size limit exceeded: {what} needs {requested}, limit is {limit}")]
    SizeLimitExceeded {
        what: String,
        requested: u128,
        limit: u128,
    },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("mismatch at s = {s}: series gives {series}, oracle gives {oracle}")]
    MismatchDetected {
        s: i64,
        series: Box<BigRational>,
        oracle: Box<BigRational>,
    },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("part {part} is not divisible by {d}")]
    PartNotDivisible { part: u64, d: u64 },
    #[error("group order {requested} exceeds limit {limit}")]
    OrderLimitExceeded { requested: usize, limit: usize },
    #[error("group orders {0} and {1} are not coprime")]
    NotCoprimeOrders(usize, usize),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
