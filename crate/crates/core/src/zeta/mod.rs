//! Riemann and Hurwitz zeta, Dirichlet L-functions, and critical-line zeros.

mod bernoulli;
mod dirichlet;
mod gamma;
mod hurwitz;
mod riemann;
mod zeros;

pub use bernoulli::{bernoulli, bernoulli_fraction, MAX_BERNOULLI_INDEX};
pub use dirichlet::dirichlet_l;
pub use gamma::{cos_pi, cos_pi_complex, gamma, ln_gamma, sin_pi, sin_pi_complex};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_rational, hurwitz_zeta_regularized};
pub use riemann::{
    in_validated_box, riemann_zeta, riemann_zeta_flagged, zeta_derivative, ZetaValue, VALIDATED_IM,
    VALIDATED_RE,
};
pub use zeros::{
    find_zeros, hardy_z, riemann_siegel_theta, zero_count_main_term, ZeroList, ZERO_SCAN_STEP,
};
