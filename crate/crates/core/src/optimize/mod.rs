//! Exact stationary points and Hessian classification of the averaged
//! quadratic objectives, constrained quadratic maximisation, and the
//! α-moment table behind every closed-form average.

mod constrained;
mod moments;
mod quadratic;

pub use constrained::{constrained_quadratic_max, generalized_quadratic_max, ConstrainedMax};
pub use moments::{
    exact_moment, moment, AlphaPoly, MomentTable, MomentValue, MAX_ALPHA_POWER, MAX_BETA_POWER,
};
pub use quadratic::{
    classify_hessian, determinant, solve_linear, stationary_point, AffineForm, Coefficient,
    HessianClass, QuadraticObjective,
};
