pub mod bh;
pub mod error;
pub mod linalg;
pub mod machine;
pub mod optimize;
pub mod phase_covariant;
pub mod qmat;
pub mod quadrature;
pub mod scalar;
pub mod sdc;

pub use error::{Error, Result};
pub use scalar::{Field, Rational, Real};

/// Double-precision instantiations.
pub type PureQubitF64 = qmat::PureQubit<f64>;
pub type DensityMatrix2F64 = qmat::DensityMatrix2<f64>;
pub type DensityMatrix4F64 = qmat::DensityMatrix4<f64>;
pub type BhOverlapsF64 = bh::BhOverlaps<f64>;
pub type PcCoeffsF64 = phase_covariant::PcCoeffs<f64>;
pub type SdcOverlapsF64 = sdc::SdcOverlaps<f64>;
