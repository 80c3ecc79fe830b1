//! Mellin transforms `P̃(s) = ∫₀^∞ P∞(Δ) Δ^{s−1} dΔ`, their residues, and the
//! small-width expansions they generate.

mod closed;
mod expansion;
mod residue;
mod series;

use num_complex::Complex;

pub use closed::{p_tilde_closed, p_tilde_q_holes};
pub use expansion::{
    asymptotic_expansion, asymptotic_expansion_with_zeros, real_pole_locations, zeros_for,
    AsymptoticExpansion, CRITICAL_RADIUS, LOG_PERIODIC_MAX_IM, REMOVABLE_TOL,
};
pub use residue::{
    residue_numeric, residue_numeric_with, Residue, CONVERGENCE_TOL, DEFAULT_POINTS, DEFAULT_RADIUS,
};
pub use series::{p_tilde_general, p_tilde_series, DivisorCharacters};

use crate::arithmetic::{gcd, prime_factors};
use crate::billiard::HoleConfiguration;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::survival::SurvivalProfile;

/// Moduli with a tabulated closed form.
pub const CLOSED_FORM_MODULI: [u64; 5] = [1, 2, 3, 4, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinSource {
    TableClosedForm,
    CharacterSeries,
    QHoles,
}

impl MellinSource {
    pub fn name(self) -> &'static str {
        match self {
            MellinSource::TableClosedForm => "table-closed-form",
            MellinSource::CharacterSeries => "character-series",
            MellinSource::QHoles => "q-hole",
        }
    }
}

/// An evaluator `s ↦ P̃(s)` for two holes at `θ = 2πr/q` (one hole when
/// `q = 1`) or for `q` equally spaced holes.
#[derive(Debug, Clone)]
pub struct MellinModel {
    r: u64,
    q: u64,
    source: MellinSource,
    characters: Option<DivisorCharacters>,
}

impl MellinModel {
    /// Closed form for `θ = 2π/q`, `q ∈ {1, 2, 3, 4, 6}`.
    pub fn closed_form(q: u64) -> Result<Self> {
        if !CLOSED_FORM_MODULI.contains(&q) {
            return Err(Error::Domain(format!(
                "closed form exists only for q in {{1, 2, 3, 4, 6}}, got {q}"
            )));
        }
        Ok(Self {
            r: u64::from(q > 1),
            q,
            source: MellinSource::TableClosedForm,
            characters: None,
        })
    }

    /// Character expansion for any coprime `(r, q)`.
    pub fn character_series(r: u64, q: u64) -> Result<Self> {
        if q == 0 || gcd(r, q) != 1 || (q > 1 && r >= q) {
            return Err(Error::Domain(format!(
                "need q >= 1, 0 <= r < q, gcd(r, q) = 1; got r = {r}, q = {q}"
            )));
        }
        Ok(Self {
            r: r % q,
            q,
            source: MellinSource::CharacterSeries,
            characters: Some(DivisorCharacters::new(q)),
        })
    }

    /// Closed form when one exists for `r/q` (up to mirror symmetry), else the series.
    pub fn for_angle(r: u64, q: u64) -> Result<Self> {
        let mirrored = q > 1 && (r == 1 || r == q - 1);
        if CLOSED_FORM_MODULI.contains(&q) && (q == 1 || mirrored) {
            Self::closed_form(q)
        } else {
            Self::character_series(r, q)
        }
    }

    /// `q ≥ 2` equally spaced holes.
    pub fn q_holes(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("need at least 2 holes, got {q}")));
        }
        Ok(Self {
            r: 1,
            q,
            source: MellinSource::QHoles,
            characters: None,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn source(&self) -> MellinSource {
        self.source
    }

    pub fn evaluate<T: Real>(&self, s: Complex<T>) -> Result<Complex<T>> {
        match self.source {
            MellinSource::TableClosedForm => p_tilde_closed(self.q, s),
            MellinSource::QHoles => p_tilde_q_holes(self.q, s),
            MellinSource::CharacterSeries => p_tilde_series(
                self.characters.as_ref().expect("series tables"),
                self.r,
                s,
                false,
            ),
        }
    }

    /// Whether every non-real pole comes from `ζ(s+1)` or `p^{s+1} = 1`.
    pub fn zeta_only(&self) -> bool {
        self.source == MellinSource::QHoles || CLOSED_FORM_MODULI.contains(&self.q)
    }

    /// Primes `p` whose factors `p^{s+1} − 1` can put poles on `Re s = −1`.
    pub fn log_periodic_primes(&self) -> Vec<u64> {
        match self.source {
            MellinSource::QHoles => Vec::new(),
            _ => prime_factors(self.q),
        }
    }

    /// The hole configuration whose constant this model transforms.
    pub fn holes<T: Real>(&self, delta: T) -> Result<HoleConfiguration<T>> {
        match self.source {
            MellinSource::QHoles => HoleConfiguration::equally_spaced(self.q, delta),
            _ if self.q == 1 => HoleConfiguration::one_hole(delta),
            _ => HoleConfiguration::rational(self.r, self.q, delta),
        }
    }

    /// Piecewise-quadratic profile of the exact constant on `[delta_min, π]`.
    pub fn profile<T: Real>(&self, delta_min: T) -> Result<SurvivalProfile<T>> {
        SurvivalProfile::new(&self.holes(T::one())?, delta_min)
    }
}
