use num::BigUint;
use thiserror::Error;

/// Every failure mode of the library.
///
/// Each variant carries enough context to diagnose the offending input
/// without re-running the computation, and maps to a stable machine code
/// via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A Cartan type outside the admissible families/ranks.
    #[error("inadmissible Cartan factor {family}{rank}")]
    InadmissibleFactor { family: char, rank: usize },

    /// A weight or element whose coordinate length disagrees with the rank.
    #[error("rank mismatch: system has rank {expected}, got {found} coordinates")]
    RankMismatch { expected: usize, found: usize },

    /// Reflection requested in a vector that is not a root of the system.
    #[error("not a root of the system: [{0}] (simple-root coords)")]
    NotARoot(String),

    /// Weyl group enumeration would exceed the configured cap.
    #[error("Weyl group order {order} exceeds enumeration cap {cap}")]
    WeylCapExceeded { order: BigUint, cap: u64 },

    /// A highest weight that is not dominant.
    #[error("weight [{0}] (fundamental-weight coords) is not dominant")]
    NotDominant(String),

    /// A weight that is not integral where integrality is required.
    #[error("weight [{0}] (fundamental-weight coords) is not integral")]
    NotIntegral(String),

    /// Exterior power degree outside 0..=total multiplicity mass.
    #[error("exterior power degree {degree} exceeds character mass {mass}")]
    ExteriorDegree { degree: usize, mass: usize },

    /// Division by zero in a cyclotomic field.
    #[error("division by zero in cyclotomic field of conductor {conductor}")]
    CycloDivisionByZero { conductor: u64 },

    /// A root-of-unity order that is unusable.
    #[error("root of unity order must be positive, got {0}")]
    BadConductor(u64),

    /// Compact subset of a symmetric pair contains a vector outside the
    /// positive system.
    #[error("compact subset member [{0}] (simple-root coords) is not a positive root")]
    CompactNotPositive(String),

    /// The compact/noncompact grading fails closure on the named triple.
    #[error(
        "grading violation: [{a}] ({ga}) + [{b}] ({gb}) = [{sum}] ({gsum}) breaks Z2-closure"
    )]
    GradingViolation {
        a: String,
        ga: &'static str,
        b: String,
        gb: &'static str,
        sum: String,
        gsum: &'static str,
    },

    /// A character that must be invariant under the compact Weyl group
    /// is not.
    #[error("character is not invariant under the compact Weyl group: weight [{0}] maps outside the support")]
    NotWkInvariant(String),

    /// Iterated highest-weight extraction met a maximal weight that is not
    /// dominant for the compact subsystem.
    #[error("extraction met non-K-dominant maximal weight [{0}] (fundamental-weight coords)")]
    NotKDominant(String),

    /// Orbital integral of `g_tau` requested at a non-regular element.
    #[error("element of order {order} is not regular: root [{root}] pairs integrally")]
    NotRegular { order: u64, root: String },

    /// A signed index was requested strictly, but the shifted parameter
    /// does not come from a genuine finite-dimensional module.
    #[error("no genuine module with shifted parameter [{0}]: shifted-by-rho weight is not integral")]
    NoGenuineModule(String),

    /// A torsion element coordinate vector of the wrong length.
    #[error("torsion element has {found} coordinates, system has rank {expected}")]
    TorsionRankMismatch { expected: usize, found: usize },
}

impl Error {
    /// Stable machine-readable code, used verbatim in CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InadmissibleFactor { .. } => "E_FACTOR",
            Error::RankMismatch { .. } => "E_RANK",
            Error::NotARoot(_) => "E_NOT_ROOT",
            Error::WeylCapExceeded { .. } => "E_WEYL_CAP",
            Error::NotDominant(_) => "E_NOT_DOMINANT",
            Error::NotIntegral(_) => "E_NOT_INTEGRAL",
            Error::ExteriorDegree { .. } => "E_EXT_DEGREE",
            Error::CycloDivisionByZero { .. } => "E_DIV_ZERO",
            Error::BadConductor(_) => "E_CONDUCTOR",
            Error::CompactNotPositive(_) => "E_COMPACT_SUBSET",
            Error::GradingViolation { .. } => "E_GRADING",
            Error::NotWkInvariant(_) => "E_NOT_WK_INVARIANT",
            Error::NotKDominant(_) => "E_NOT_K_DOMINANT",
            Error::NotRegular { .. } => "E_NOT_REGULAR",
            Error::NoGenuineModule(_) => "E_NO_GENUINE_MODULE",
            Error::TorsionRankMismatch { .. } => "E_TORSION_RANK",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
