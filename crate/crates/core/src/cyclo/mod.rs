//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Everything downstream (line coefficients, intersection points, critical
//! values, character values) lives in some `Q(zeta_N)`; mixed conductors are
//! coerced to their lcm.

mod literal;
mod matrix;
mod number;
mod poly;
mod sign;

pub use literal::{parse_scalar, parse_scalar_at};
pub use matrix::CycMatrix;
pub use number::{cyclotomic_poly, euler_phi, CycNumber};
pub use poly::{monomials_of_degree, MultiPoly};
pub use sign::{cmp_real, positive_lower_bound, real_bounds, sign_real};

