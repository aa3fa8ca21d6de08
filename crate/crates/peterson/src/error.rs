//! Error types shared by the whole crate.

use crate::rootsys::NodeSet;
use std::fmt;

/// A single failed Cartan-matrix invariant, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Diagonal entry is not 2.
    Diagonal { index: usize, value: i64 },
    /// Off-diagonal entry is positive.
    OffDiagonalSign { row: usize, col: usize, value: i64 },
    /// c_ij = 0 but c_ji != 0 (or vice versa).
    ZeroSymmetry { row: usize, col: usize },
    /// A principal minor has non-positive determinant (affine or indefinite).
    NotFiniteType { subset: NodeSet, det: String },
    /// Input could not be parsed at all.
    Malformed(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { index, value } => {
                write!(f, "diagonal entry at ({index},{index}) is {value}, expected 2")
            }
            Violation::OffDiagonalSign { row, col, value } => {
                write!(f, "off-diagonal entry at ({row},{col}) is {value}, expected <= 0")
            }
            Violation::ZeroSymmetry { row, col } => {
                write!(f, "zero-symmetry violated at ({row},{col}): exactly one of c_ij, c_ji is zero")
            }
            Violation::NotFiniteType { subset, det } => {
                write!(f, "principal minor {subset} has determinant {det}; not finite type")
            }
            Violation::Malformed(msg) => write!(f, "malformed input: {msg}"),
        }
    }
}

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("unknown family '{0}' (expected one of A,B,C,D,E,F,G)")]
    UnknownFamily(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("not a valid finite-type Cartan matrix:\n{}", format_violations(.0))]
    InvalidCartan(Vec<Violation>),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("rank-one update denominator 1 - v*Ainv*u is zero")]
    SingularUpdate,
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("node {node} is not a member of {subset}")]
    NodeNotInSubset { node: usize, subset: NodeSet },
    #[error("subset {0} is not connected")]
    NotConnected(NodeSet),
    #[error("subset {0} is not simply laced")]
    NotSimplyLaced(NodeSet),
    #[error("the empty subset is not allowed here")]
    EmptySubset,
    #[error("expected an expansion in the {expected} basis, got {got}")]
    BasisMismatch { expected: &'static str, got: &'static str },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("nodes {i} and {s} must be distinct")]
    NodesNotDistinct { i: usize, s: usize },
    #[error("rank {rank} is outside the supported range 1..={cap} for this operation")]
    RankCap { rank: usize, cap: usize },
    #[error("invalid composition: need {rank} non-negative parts summing to {rank}, got {got}")]
    InvalidComposition { rank: usize, got: String },
    #[error("mixed Eulerian numbers are defined here only for irreducible (connected) root systems")]
    ReducibleUnsupported,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}

impl Error {
    /// Process exit code for the CLI: 2 input/validation, 3 unsupported, 4 internal.
    /// Process exit code classification: 2 for input/validation errors, 3 for
    /// requests the tool deliberately refuses (reducible Eulerian queries,
    /// ranks beyond the supported caps), 4 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ReducibleUnsupported | Error::RankCap { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
