use num_complex::Complex;

use super::residue::{residue_numeric_with, Residue, DEFAULT_POINTS, DEFAULT_RADIUS};
use super::MellinModel;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::zeta::{find_zeros, zero_count_main_term, ZeroList, VALIDATED_IM};

/// Log-periodic poles are collected up to this height.
pub const LOG_PERIODIC_MAX_IM: f64 = 60.0;
/// Residues below this magnitude are treated as removable singularities.
pub const REMOVABLE_TOL: f64 = 1e-9;
/// Largest contour radius used on the critical line.
pub const CRITICAL_RADIUS: f64 = 0.2;

/// Truncated inverse-Mellin sum `Σ Res(P̃(s)Δ^{−s})`.
///
/// Poles off the real axis are stored once; their conjugates are implied.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion<T> {
    /// `s = 1, −1, −2, −3, −5, …`.
    pub real_pole_terms: Vec<Residue<T>>,
    /// `s = −1 + 2πik/ln p` for primes `p | q`, upper half-plane.
    pub log_periodic_terms: Vec<Residue<T>>,
    /// `s = −1/2 + iτ_j`.
    pub critical_terms: Vec<Residue<T>>,
    pub real_pole_cutoff: u32,
    pub zero_count: usize,
}

impl<T: Real> AsymptoticExpansion<T> {
    /// Sum with conjugate partners evaluated separately; the imaginary part
    /// measures how well the terms pair up.
    pub fn evaluate_complex(&self, delta: T) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for r in &self.real_pole_terms {
            acc += r.term_at(delta);
        }
        for r in self.log_periodic_terms.iter().chain(&self.critical_terms) {
            let partner = Residue {
                pole: r.pole.conj(),
                coefficient: r.coefficient.conj(),
                log_coefficient: r.log_coefficient.conj(),
                radius: r.radius,
            };
            acc += r.term_at(delta) + partner.term_at(delta);
        }
        acc
    }

    /// Real value of the truncated expansion at width `delta`.
    pub fn evaluate(&self, delta: T) -> T {
        let two = T::lit(2.0);
        let mut acc = T::zero();
        for r in &self.real_pole_terms {
            acc += r.term_at(delta).re;
        }
        for r in self.log_periodic_terms.iter().chain(&self.critical_terms) {
            acc += two * r.term_at(delta).re;
        }
        acc
    }

    /// The expansion without its critical-line terms.
    pub fn without_critical(&self) -> Self {
        Self {
            critical_terms: Vec::new(),
            zero_count: 0,
            ..self.clone()
        }
    }
}

/// Real poles `1, −1, −2` and odd `s ≤ −3` down to `−cutoff`.
pub fn real_pole_locations(cutoff: u32) -> Vec<i64> {
    let mut poles = vec![1];
    for k in 1..=cutoff as i64 {
        if k <= 2 || k % 2 == 1 {
            poles.push(-k);
        }
    }
    poles
}

/// Zeros of `ζ(1/2 + it)`, enough for `count` plus one neighbour.
pub fn zeros_for<T: Real>(count: usize) -> Result<ZeroList<T>> {
    if count == 0 {
        return Ok(ZeroList {
            ordinates: Vec::new(),
            multiplicities: Vec::new(),
        });
    }
    let mut t = 20.0;
    while zero_count_main_term(t) < count as f64 + 3.0 && t < VALIDATED_IM {
        t += 5.0;
    }
    let zeros = find_zeros(T::lit(t.min(VALIDATED_IM)))?;
    if zeros.len() < count {
        return Err(Error::Domain(format!(
            "{count} zeros requested, {} available below t = {VALIDATED_IM}",
            zeros.len()
        )));
    }
    Ok(zeros)
}

/// Collects residues at the real poles, the log-periodic poles and the first
/// `zero_count` critical-line poles (with conjugates implied).
pub fn asymptotic_expansion<T: Real>(
    model: &MellinModel,
    real_pole_cutoff: u32,
    zero_count: usize,
) -> Result<AsymptoticExpansion<T>> {
    let zeros = zeros_for::<T>(zero_count)?;
    asymptotic_expansion_with_zeros(
        model,
        real_pole_cutoff,
        &zeros.first(zero_count + 1),
        zero_count,
    )
}

/// [`asymptotic_expansion`] with a precomputed zero list (at least
/// `zero_count` entries; one more sets the last contour radius).
pub fn asymptotic_expansion_with_zeros<T: Real>(
    model: &MellinModel,
    real_pole_cutoff: u32,
    zeros: &ZeroList<T>,
    zero_count: usize,
) -> Result<AsymptoticExpansion<T>> {
    if real_pole_cutoff < 1 {
        return Err(Error::Domain("real pole cutoff must be at least 1".into()));
    }
    if !model.zeta_only() {
        return Err(Error::Domain(format!(
            "pole set of q = {} involves L-function zeros; expansion unsupported",
            model.q()
        )));
    }
    if zeros.len() < zero_count {
        return Err(Error::Domain(format!(
            "{zero_count} zeros requested, {} supplied",
            zeros.len()
        )));
    }
    let delta = T::one();
    let radius = T::lit(DEFAULT_RADIUS);

    let real_pole_terms = real_pole_locations(real_pole_cutoff)
        .into_iter()
        .map(|k| {
            let s0 = Complex::new(T::lit(k as f64), T::zero());
            residue_numeric_with(model, s0, delta, radius, DEFAULT_POINTS)
        })
        .collect::<Result<Vec<_>>>()?;

    // Candidate log-periodic poles, sorted by height.
    let mut candidates: Vec<T> = Vec::new();
    for p in model.log_periodic_primes() {
        let step = T::two_pi() / T::from_count(p).ln();
        let mut k = 1u64;
        while (step * T::from_count(k)).as_f64() <= LOG_PERIODIC_MAX_IM {
            candidates.push(step * T::from_count(k));
            k += 1;
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut log_periodic_terms = Vec::new();
    for (i, &im) in candidates.iter().enumerate() {
        let mut gap = T::lit(2.0) * radius;
        if i > 0 {
            gap = gap.min(im - candidates[i - 1]);
        }
        if i + 1 < candidates.len() {
            gap = gap.min(candidates[i + 1] - im);
        }
        let s0 = Complex::new(-T::one(), im);
        let r = residue_numeric_with(model, s0, delta, gap / T::lit(2.0), DEFAULT_POINTS)?;
        if r.coefficient.norm().max(r.log_coefficient.norm()) >= T::lit(REMOVABLE_TOL) {
            log_periodic_terms.push(r);
        }
    }

    let mut critical_terms = Vec::with_capacity(zero_count);
    let ords = &zeros.ordinates;
    for j in 0..zero_count {
        let mut gap = T::lit(2.0 * CRITICAL_RADIUS);
        if j > 0 {
            gap = gap.min(ords[j] - ords[j - 1]);
        }
        if j + 1 < ords.len() {
            gap = gap.min(ords[j + 1] - ords[j]);
        }
        let s0 = Complex::new(T::lit(-0.5), ords[j]);
        critical_terms.push(residue_numeric_with(
            model,
            s0,
            delta,
            gap / T::lit(2.0),
            DEFAULT_POINTS,
        )?);
    }

    Ok(AsymptoticExpansion {
        real_pole_terms,
        log_periodic_terms,
        critical_terms,
        real_pole_cutoff,
        zero_count,
    })
}
