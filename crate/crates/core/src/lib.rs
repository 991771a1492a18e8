//! Numerics for Schwarzian-derivative bounds on a class of locally univalent
//! functions defined by a subordination condition.
//!
//! The class is parameterized by `alpha in (-pi/2, pi/2)` and `beta in [0, 1)`.
//! Modules follow the pipeline: power series, analytic bounds, the
//! subordination-based Schwarzian, extremal witnesses, norm estimation and a
//! brute-force check of the pointwise bound.

pub mod bounds;
pub mod dieudonne;
pub mod error;
pub mod extremal;
pub mod grid;
pub mod norm;
pub mod schwarzian;
pub mod series;
pub mod verify;

pub use bounds::{
    boundary_branch, g_profile, h_gate, interior_branch, large_d_suprema, pointwise_bound,
    preschwarzian_norm_bound, s0, schwarzian_norm_bound, Branch, ClassParams, PointwiseBound,
    Regime,
};
pub use dieudonne::{
    brute_force_pointwise_max, brute_force_pointwise_max_at, dieudonne_disk, verify_inner_max,
    BruteForceMax, InnerMaxKind, InnerMaxReport, SweepSpec,
};
pub use error::{Error, Result};
pub use extremal::{
    blaschke_b, closed_form_p_f0, closed_form_s_f0, closed_form_s_fz0_at_z0, subordinate_series,
    ExtremalKind, ExtremalSpec,
};
pub use grid::GridSpec;
pub use norm::{
    estimate_norm, radial_profile, weighted_modulus, ClosedForm, DiskFunction, NormEstimate,
    SeriesFunction, WeightPower,
};
pub use schwarzian::{
    is_member_evidence, membership_margin, preschwarzian_from_omega, preschwarzian_series,
    schwarzian_from_omega, schwarzian_from_omega_raw, schwarzian_series, OmegaPointData,
};
pub use verify::{run_verify, SuiteReport, VerifyConfig, VerifyReport};
pub use series::{ComplexSeries, SeriesValue, DEFAULT_EVAL_CAP, DEFAULT_ORDER};

pub use num_complex::Complex64;
