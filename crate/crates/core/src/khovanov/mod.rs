//! Khovanov and annular Khovanov complexes of diagrams.

mod cube;
mod euler;

pub use cube::{GradingData, KhComplex, KhGenerator, Mode, QRange};
pub use euler::{annular_state_sum, euler_characteristics, Laurent, Laurent2};
