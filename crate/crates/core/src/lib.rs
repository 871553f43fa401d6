//! Exact machinery for convex polytopes cut out by hyperplane arrangements:
//! region and face enumeration, minimal teaching sets, active and passive
//! learners over halfspace queries, the point/hyperplane duality for
//! separable dichotomies, and rankings induced by bisecting hyperplanes.

pub mod error;
pub mod arrangement;
pub mod exactmath;
pub mod counting;
pub mod teaching;
pub mod learners;
pub mod dichotomy;
pub mod ranking;
pub mod io;
pub mod experiment;
pub mod rng;

pub use error::{Error, Result};
