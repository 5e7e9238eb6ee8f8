//! The involution, the axis-moving maps, the pair cone and the Tate spectral sequence.

mod axis;
mod tate;
mod tau;
mod verify;

pub use axis::{
    axis_moving_maps, kink_maps, pair_cone_homology, AxisMaps, ReverseMaps, F_MINUS_SHIFT, F_PLUS_SHIFT,
};
pub use tate::{tate_middle_column, TateColumn, TateComplex, TateModel};
pub use tau::tau_chain_map;
pub use verify::{tate_collapsed_homology, verify_theorem, GradedDim, QuantumReport, TateReport, VerifyOptions};
