//! Annular and intravergent knot diagrams.

mod annular;
mod closure;
mod generate;
mod lift;
mod pd;
mod tangle;
mod wrap;

pub use annular::{state_circle_count, AnnularDiagram, Resolution};
pub use closure::{
    axis_face, close_quotients, diagram_invariants, quotient_axis_faces, quotient_windings, DiagramInvariants,
    Quotients, LOOP_SOURCE,
};
pub use generate::RaySide;
pub use lift::{lift_intravergent, lifted_arc, IntravergentDiagram};
pub use pd::{resolved_partner, union_find_circles, Pd, Slot};
pub use tangle::{AxisCrossing, End, QuotientTangle};
pub use wrap::{apply_axis_wrap_move, WrapDirection};
