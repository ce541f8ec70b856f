//! Exact verification on truncated series in Q = q^{1/4}.
//!
//! Coefficients are Laurent polynomials in e^{i·s} for the angle symbols s,
//! over the Gaussian rationals. Identities are proved up to a chosen Q-order
//! by expanding both sides and comparing every coefficient.

mod expand;
mod gaussian;
mod laurent;
mod series;
mod verify;

pub use expand::{HalfPiShift, PochhammerKind, TauScale, pochhammer_qseries, theta_qseries, triple_sum_qseries};
pub use gaussian::GaussianRational;
pub use laurent::{AngleSymbols, Exponents, LaurentPoly, format_monomial};
pub use series::QSeries;
pub use verify::{
    ExactIdentity, ExactReport, Factor, Mutation, Side, Term, Witness, doubling_null_identity,
    doubling_product_identity, prop_t2_identity, prop_t3_identity, prop_t4_identity, quarter_pi_squared_identity,
    riemann_identity, triple_product_identity, verify, verify_doubling, verify_doubling_with, verify_prop_t2,
    verify_prop_t3, verify_prop_t4, verify_quarter_pi_squared, verify_riemann_l, verify_triple_product,
};
