//! Mixed-radix odometer dynamics on a compactified digit space, together
//! with a finite-dimensional weighted-shift operator model and a
//! verification suite tying the two together.
//!
//! The pieces:
//!
//! * [`radix`] — radix schedules, digit words, points of the digit space
//!   `K = prod {0..q_j-1}`, and the compactified space `X = N ∪ K`.
//! * [`odometer`] — the add-one-with-carry map on `K`, its partial variant
//!   and inverse, orbits, and exact cylinder measures.
//! * [`topology`] — cylinder idempotents over `X`, the neighborhood basis of
//!   points of `K`, and sequence convergence in `X`.
//! * [`operator`] — dense complex truncations: weighted shifts, the circle
//!   action and its spectral bands, cylinder projections, and the shift
//!   conjugation with its regularity identities.
//! * [`quotient`] — functions on level-k cylinders, their refinement maps,
//!   and the rotation induced by the odometer.
//! * [`suite`] — the named verification checks and [`suite::run_all`].

pub mod error;
pub mod odometer;
pub mod operator;
pub mod quotient;
pub mod radix;
pub mod report;
pub mod suite;
pub mod topology;

pub use error::{Error, Result};
pub use odometer::{
    cylinder_index, cylinder_measure, odometer_inverse, odometer_partial, odometer_total, orbit,
    orbit_partial, prefix_increment, step_x, OrbitRecord,
};
pub use operator::{
    circle_conjugate, delta_diag, diagonal_unitary, e_beta_diag, f_k_diag, lambda_map,
    regularity_check, shift, spectral_component, spectral_component_with_samples,
    support_transport, theta, weighted_shift, PeriodicWeights, RegularityResiduals,
    ToleranceConfig, TruncatedOperator,
};
pub use quotient::{quotient_compatibility, LevelFunction};
pub use radix::{parse_point, CantorPoint, DigitWord, Extension, RadixSchedule, Tail, XPoint};
pub use report::{CheckResult, Report};
pub use suite::{run_all, SuiteConfig, DEFAULT_SEED};
pub use topology::{
    converges_to, multiply, support_in_x, v_k_neighborhood, BasicIdempotent, Neighborhood,
};
