pub mod clifford;
pub mod ascent;
pub mod codes;
pub mod fockvoa;
pub mod json;
pub mod linalg;
pub mod mckaythompson;
pub mod qseries;
pub mod scalar;
pub mod spingroup;
pub mod spinmod;
pub mod superconformal;

pub use clifford::{basis_mul, bilinear_form, CliffordElement, CliffordError};
pub use ascent::{orbit_ascent, AscentParams, AscentResult, SpinWord};
pub use codes::{golay, BinaryCode, BitWord, CocodeClass, CodeError, Golay, OverlapType, Sextet};
pub use fockvoa::{FockError, FockState, FockVector, Half, Sector};
pub use linalg::Matrix;
pub use mckaythompson::{FrameShape, MtError};
pub use qseries::{QSeries, QSeriesError};
pub use scalar::{Mode, QSqrt2, Rational, Scalar, ScalarError};
pub use spingroup::{golay_lift, GroupLift, SignedPermutation, SpinGroupError};
pub use spinmod::{SpinModError, SpinVector};
pub use superconformal::{ScError, ScReport};
