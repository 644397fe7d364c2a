//! Truncated free-fermion Fock spaces over 24 fermions: the untwisted
//! sector on half-integer modes, the twisted sector on integer modes over
//! the spin module, vertex operator modes of low-degree states and the
//! checks built on them.

mod checks;
mod state;
mod vertex;

use thiserror::Error;

pub use checks::{
    graded_trace, lie_algebra_checks, ns_check, t_products, tau_on_twisted, tau_on_untwisted, trace_identity_check,
    virasoro_check, LieReport, MonomialAction, NsReport, TProducts, TraceAction, TraceIdentityReport, VirasoroReport,
};
pub use state::{apply_mode, census, enumerate_basis, FockState, FockVector, Half, Sector, ENUMERATION_CAP, LEVELS};
pub use vertex::{degree_one_basis, omega, vertex_mode, virasoro, MAX_VERTEX_DEGREE};

use crate::scalar::ScalarError;
use crate::spinmod::SpinModError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Module(#[from] SpinModError),
    #[error("mode {mode} does not act on the {sector:?} sector")]
    SectorMismatch { sector: Sector, mode: Half },
    #[error("index {0} is outside 0..24")]
    BadIndex(usize),
    #[error("{0} is not a creation mode")]
    NotCreation(Half),
    #[error("degree {0} exceeds the enumeration cap")]
    CapExceeded(Half),
    #[error("vertex operators are available up to degree 2, got {0}")]
    DegreeTooHigh(Half),
    #[error("result leaves the truncation window")]
    TruncationOverflow,
    #[error("vector mixes the two sectors")]
    MixedSectors,
    #[error("expected an untwisted vector")]
    NotUntwisted,
    #[error("expected a homogeneous vector")]
    NotHomogeneous,
    #[error("spin vector must be even")]
    OddVector,
    #[error("spin vector must have unit norm")]
    NotUnit,
    #[error("malformed half-integer {0:?}")]
    BadHalf(String),
    #[error("element does not act monomially")]
    NotMonomial,
}
