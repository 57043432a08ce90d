//! Numerics for the one-dimensional regularized Coulomb potential
//!
//! ```text
//! V_q(x) = 2 e^{x^2} / Gamma(q+1) * int_x^inf e^{-t^2} (t^2 - x^2)^q dt,   q > -1, x >= 0
//! ```
//!
//! its Tricomi-function representation, the Mills ratio `m(x) = V_0(x/sqrt 2)/sqrt 2`,
//! closed-form bounds, and a grid verifier for the monotonicity, power-mean
//! convexity and Turan-type inequalities satisfied by `V_q`.

// comparisons are negated on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod quadrature;
pub mod special;
pub mod tolerance;
pub mod verifier;
pub mod vq;

pub use bounds::{
    mills_bounds, mills_f1, mills_f2, mills_f3, mills_f3_raw, mills_f4, mills_f5, vq_envelope,
    vq_lower_exp, vq_lower_kratzel, vq_upper_agm, BoundValue, MillsBoundRow, VqEnvelope,
};
pub use error::{Error, Result};
pub use quadrature::{QuadOutcome, QuadratureSpec};
pub use special::{
    erfc, erfcx, kratzel_z, kummer_phi, ln_gamma, tricomi_psi, KratzelParams, PsiParams,
};
pub use tolerance::TolerancePolicy;
pub use verifier::{run_suite, Grid, RunConfig, Suite, VerificationReport};
pub use vq::{
    mills, vq, vq_neg1, vq_next, vq_prime, vq_quadrature, vq_value, vq_via_psi, vq_zero,
    DerivMethod, EvalMethod, EvalResult, Order, VqMethod,
};
