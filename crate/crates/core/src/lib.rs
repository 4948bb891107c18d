//! Exact computations on the Grassmannian `G(3,9)` of 3-planes in a 9-dimensional space.

pub mod homog;
pub mod k3;
pub mod linalg;
pub mod localize;
pub mod properties;
pub mod resolution;
pub mod serde_util;
pub mod strata;
pub mod trivector;
pub mod verify;
pub mod weights;
