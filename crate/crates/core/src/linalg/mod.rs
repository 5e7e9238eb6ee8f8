//! Exact linear algebra over F2, Z and Z/4.

mod f2;
mod mod4;
mod reduce;
mod zmat;
mod zreduce;

pub use f2::{f2_rank_kernel, solve_f2, BitVec, F2Matrix};
pub use mod4::{mod4_lift_boundary, Z4Matrix};
pub use reduce::{apply_sparse, normalize_support, Reducer};
pub use zmat::{is_unimodular, smith_normal_form, Snf, ZMatrix};
pub use zreduce::ZReducer;
