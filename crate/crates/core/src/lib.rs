//! Escape statistics of open circular billiards.
//!
//! The exact long-time survival constants (`survival`), their Mellin
//! transforms and small-hole expansions (`mellin`), the fluctuation probes
//! built on them (`probe`), a Monte Carlo oracle (`montecarlo`), and the
//! number-theoretic plumbing underneath (`arithmetic`, `zeta`).
//!
//! Numerical kernels are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, where all stated tolerances apply.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arithmetic;
pub mod billiard;
pub mod error;
pub mod mellin;
pub mod montecarlo;
pub mod probe;
pub mod quadrature;
pub mod scalar;
pub mod survival;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;

pub use arithmetic::{
    character_table, farey_sequence, sieve_tables, ArithmeticTables, CharacterTable,
};
pub use mellin::{asymptotic_expansion, residue_numeric, MellinModel, MellinSource};
pub use montecarlo::estimate_survival;
pub use probe::{comparator_one_two, fluctuation, q_hole_comparator, ProbeOptions};
pub use survival::{p_infinity_q_holes, p_infinity_rational, p_infinity_two_holes, SurvivalEngine};
pub use zeta::{dirichlet_l, find_zeros, hurwitz_zeta, riemann_zeta, zeta_derivative};

pub type ComplexValue = num_complex::Complex<f64>;
pub type PhasePoint = billiard::PhasePoint<f64>;
pub type HoleConfiguration = billiard::HoleConfiguration<f64>;
pub type EscapeResult = billiard::EscapeResult<f64>;
pub type SurvivalConstant = survival::SurvivalConstant<f64>;
pub type SurvivalProfile = survival::SurvivalProfile<f64>;
pub type Residue = mellin::Residue<f64>;
pub type AsymptoticExpansion = mellin::AsymptoticExpansion<f64>;
pub type FluctuationSeries = probe::FluctuationSeries<f64>;
pub type SurvivalEstimate = montecarlo::SurvivalEstimate<f64>;
pub type ZeroList = zeta::ZeroList<f64>;
