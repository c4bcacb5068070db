//! Chordal Loewner evolution in the upper half-plane.

pub mod composed;
pub mod driving;
pub mod elementary;
mod forward;
mod trace;
mod weld;

pub use composed::ComposedMap;
pub use driving::{DrivingPath, DrivingSample};
pub use elementary::{unit_tip_modulus, unit_tip_modulus_sq, ElementaryMap, Side, SlitKind};
pub use forward::{multi_solve_forward, solve_forward};
pub(crate) use forward::integrate;
pub use trace::{driving_steps, trace};
pub(crate) use weld::{weld_curve, weld_union, CurveSpec, SlitInput};
pub use weld::{
    attachment_side, map_hull_forward, map_hull_forward_with, weld, weld_detailed, weld_through, Weld, WeldNode,
    MIN_STEP_CAPACITY,
};
