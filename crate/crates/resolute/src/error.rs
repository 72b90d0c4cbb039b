use std::error::Error as StdError;
use std::fmt;

/// Why a hypothesis of the reversal-invariant extension was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisTag {
    /// ψ is not a conjugate of the order-reversing permutation
    /// (wrong order or wrong cycle type).
    NotInvolution,
    /// The relation has a reflexive pair or a directed cycle.
    NotAcyclic,
    /// The relation is not ψ-reverse-symmetric: (x,y) present but
    /// (ψ(y),ψ(x)) absent, or vice versa.
    ConditionA,
}

impl fmt::Display for HypothesisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HypothesisTag::NotInvolution => "not-involution",
            HypothesisTag::NotAcyclic => "not-acyclic",
            HypothesisTag::ConditionA => "condition-a",
        };
        f.write_str(s)
    }
}

/// Why a consistent resolute refinement does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoRefinementReason {
    /// Every value of the correspondence at a reversal-stabilized orbit
    /// representative is fixed by ψ_j.
    A2Empty,
}

impl fmt::Display for NoRefinementReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoRefinementReason::A2Empty => f.write_str("A2Empty"),
        }
    }
}

/// Errors shared by the whole crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DegreeMismatch { expected: usize, found: usize },
    GroupTooLarge { cap: usize },
    DegreeTooLarge { degree: usize, cap: usize },
    NotAnOrder,
    InvalidK { k: usize, n: usize },
    ProfileSpaceTooLarge { size: u128, cap: u64 },
    /// The group fails the stabilizer template; carries the first failing
    /// profile index when one was found.
    NotRegular { witness: Option<u64> },
    /// The correspondence is not U-symmetric; carries (profile index, group
    /// element index) of the first violation.
    NotSymmetric { profile: u64, element: usize },
    /// The correspondence is not U-consistent; same witness convention.
    NotConsistent { profile: u64, element: usize },
    /// The correspondence is empty somewhere, so no resolute refinement of
    /// any kind can exist.
    NotDecisive { profile: u64 },
    /// S(p^j) ∩ C(p^j) is empty at the given orbit.
    EmptyIntersection { orbit: usize },
    /// No consistent resolute refinement exists; names the blocking orbit.
    NoRefinement { orbit: usize, reason: NoRefinementReason },
    /// An input to the reversal-invariant extension violates its
    /// hypotheses; carries the violating pair when there is one.
    HypothesisViolated { tag: HypothesisTag, pair: Option<(usize, usize)> },
    /// A verified-at-runtime invariant failed; indicates a bug.
    BrokenInvariant(String),
    Parse { line: usize, msg: String },
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::GroupTooLarge { cap } => {
                write!(f, "group closure exceeds the cap of {cap} elements")
            }
            Error::DegreeTooLarge { degree, cap } => {
                write!(f, "degree {degree} exceeds the brute-force cap {cap}")
            }
            Error::NotAnOrder => write!(f, "relation is not an order (complete and transitive)"),
            Error::InvalidK { k, n } => {
                write!(f, "invalid committee size k={k}: need 1 <= k <= n-1 with n={n}")
            }
            Error::ProfileSpaceTooLarge { size, cap } => {
                write!(f, "profile space of size {size} exceeds the cap {cap}")
            }
            Error::NotRegular { witness } => match witness {
                Some(p) => write!(f, "group is not regular (witness profile index {p})"),
                None => write!(f, "group is not regular"),
            },
            Error::NotSymmetric { profile, element } => write!(
                f,
                "correspondence is not symmetric (profile {profile}, group element {element})"
            ),
            Error::NotConsistent { profile, element } => write!(
                f,
                "correspondence is not consistent (profile {profile}, group element {element})"
            ),
            Error::NotDecisive { profile } => {
                write!(f, "correspondence is empty at profile {profile}")
            }
            Error::EmptyIntersection { orbit } => {
                write!(f, "no invariant ranking intersects the correspondence at orbit {orbit}")
            }
            Error::NoRefinement { orbit, reason } => {
                write!(f, "no resolute refinement exists (orbit {orbit}, reason {reason})")
            }
            Error::HypothesisViolated { tag, pair } => match pair {
                Some((x, y)) => write!(f, "hypothesis violated: {tag} at pair ({x}, {y})"),
                None => write!(f, "hypothesis violated: {tag}"),
            },
            Error::BrokenInvariant(msg) => write!(f, "internal invariant broken: {msg}"),
            Error::Parse { line: 0, msg } => write!(f, "invalid input: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl StdError for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
