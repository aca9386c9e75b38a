//! Airy function, Painleve II Hastings-McLeod solution, and the
//! Tracy-Widom distributions F1/F2 with their quantiles.

mod airy;
mod painleve;

pub use airy::{airy_ai, airy_ai_both, airy_ai_prime};
pub use painleve::{
    default_solution, solve_painleve_ii, tw_cdf, tw_quantile, PainleveSolution, DEFAULT_STEP,
    DEFAULT_X_HI, DEFAULT_X_LO,
};
