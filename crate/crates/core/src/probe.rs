//! Fluctuations of the exact survival constant around its real-pole expansion.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mellin::{asymptotic_expansion_with_zeros, zeros_for, AsymptoticExpansion, MellinModel};
use crate::scalar::Real;
use crate::survival::SurvivalEngine;
use crate::zeta::ZeroList;

pub const GRID_MIN: f64 = 1e-5;
pub const GRID_MAX: f64 = 1e-1;

/// Knobs shared by every probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeOptions {
    /// Real poles down to `s = −real_pole_cutoff` are subtracted.
    pub real_pole_cutoff: u32,
    /// Critical-line pole pairs also subtracted.
    pub zero_count: usize,
    /// Width in decades of the windows whose maxima are fitted.
    pub window_decades: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            real_pole_cutoff: 3,
            zero_count: 0,
            window_decades: 0.5,
        }
    }
}

/// Maximum `|residual|` within one window of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowMax<T> {
    /// Width at which the maximum occurs.
    pub delta: T,
    pub max_abs: T,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationSeries<T> {
    /// Strictly decreasing widths.
    pub deltas: Vec<T>,
    pub residuals: Vec<T>,
    /// Least-squares slope of `log|max|` against `log Δ` over the windows.
    pub envelope_exponent: T,
    /// Two standard errors of the slope (zero with only two windows).
    pub exponent_half_width: T,
    pub windows: Vec<WindowMax<T>>,
    pub sign_changes: usize,
}

impl<T: Real> FluctuationSeries<T> {
    /// Decades spanned by the grid.
    pub fn span_decades(&self) -> T {
        (self.deltas[0] / self.deltas[self.deltas.len() - 1]).log10()
    }

    pub fn sign_changes_per_decade(&self) -> T {
        T::from_count(self.sign_changes as u64) / self.span_decades()
    }
}

/// `count` log-spaced widths from `hi` down to `lo`.
pub fn log_grid<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    if count == 1 {
        return vec![hi];
    }
    let (a, b) = (hi.ln(), lo.ln());
    (0..count)
        .map(|k| {
            if k + 1 == count {
                lo
            } else if k == 0 {
                hi
            } else {
                (a + (b - a) * T::from_count(k as u64) / T::from_count(count as u64 - 1)).exp()
            }
        })
        .collect()
}

fn checked_grid<T: Real>(grid: &[T]) -> Result<Vec<T>> {
    let mut g = grid.to_vec();
    if g.len() < 2 {
        return Err(Error::Domain("grid needs at least two widths".into()));
    }
    if g.iter().any(|&d| {
        !(d.as_f64() >= GRID_MIN * (1.0 - 1e-12) && d.as_f64() <= GRID_MAX * (1.0 + 1e-12))
    }) {
        return Err(Error::Domain(format!(
            "grid must lie in [{GRID_MIN:e}, {GRID_MAX:e}]"
        )));
    }
    g.sort_by(|a, b| b.partial_cmp(a).expect("finite widths"));
    if g.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Domain("grid widths must be distinct".into()));
    }
    Ok(g)
}

/// Slope fit of window maxima; `window_decades` wide windows from the top of the grid.
pub fn envelope_fit<T: Real>(
    deltas: &[T],
    residuals: &[T],
    window_decades: f64,
) -> Result<(T, T, Vec<WindowMax<T>>)> {
    if !(window_decades > 0.0) {
        return Err(Error::Domain("window width must be positive".into()));
    }
    let top = deltas[0].log10().as_f64();
    let span = top - deltas[deltas.len() - 1].log10().as_f64();
    let count = ((span / window_decades).round() as usize).max(1);
    let mut windows: Vec<WindowMax<T>> = vec![
        WindowMax {
            delta: T::zero(),
            max_abs: T::zero(),
            points: 0,
        };
        count
    ];
    for (&d, &r) in deltas.iter().zip(residuals) {
        let pos = (top - d.log10().as_f64()) / window_decades;
        let idx = (pos.floor().max(0.0) as usize).min(count - 1);
        let w = &mut windows[idx];
        w.points += 1;
        if r.abs() >= w.max_abs {
            w.max_abs = r.abs();
            w.delta = d;
        }
    }
    let usable: Vec<(f64, f64)> = windows
        .iter()
        .filter(|w| w.points > 0 && w.max_abs > T::zero())
        .map(|w| (w.delta.log10().as_f64(), w.max_abs.log10().as_f64()))
        .collect();
    if usable.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "{} usable windows of {count}",
            usable.len()
        )));
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("window maxima share one width".into()));
    }
    let slope = sxy / sxx;
    let half_width = if usable.len() > 2 {
        let rss: f64 = usable
            .iter()
            .map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2))
            .sum();
        2.0 * (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok((T::lit(slope), T::lit(half_width), windows))
}

fn count_sign_changes<T: Real>(residuals: &[T]) -> usize {
    let signs: Vec<bool> = residuals
        .iter()
        .filter(|r| **r != T::zero())
        .map(|r| *r > T::zero())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn series<T: Real>(
    deltas: Vec<T>,
    residuals: Vec<T>,
    window_decades: f64,
) -> Result<FluctuationSeries<T>> {
    if residuals.iter().any(|r| !r.is_finite()) {
        return Err(Error::Accuracy("non-finite residual".into()));
    }
    if residuals.iter().all(|r| *r == T::zero()) {
        return Err(Error::DegenerateFit("all residuals vanish".into()));
    }
    let (envelope_exponent, exponent_half_width, windows) =
        envelope_fit(&deltas, &residuals, window_decades)?;
    let sign_changes = count_sign_changes(&residuals);
    Ok(FluctuationSeries {
        deltas,
        residuals,
        envelope_exponent,
        exponent_half_width,
        windows,
        sign_changes,
    })
}

/// `(model, weight)` pairs: the residual is `Σ w·(P∞ − expansion)`.
fn combined<T: Real>(
    parts: &[(MellinModel, T)],
    grid: &[T],
    opts: ProbeOptions,
    zeros: Option<&ZeroList<T>>,
) -> Result<FluctuationSeries<T>> {
    let deltas = checked_grid(grid)?;
    let owned;
    let zeros = match zeros {
        Some(z) => z,
        None => {
            owned = zeros_for::<T>(opts.zero_count)?;
            &owned
        }
    };
    let expansions: Vec<AsymptoticExpansion<T>> = parts
        .iter()
        .map(|(m, _)| {
            asymptotic_expansion_with_zeros(m, opts.real_pole_cutoff, zeros, opts.zero_count)
        })
        .collect::<Result<_>>()?;
    let engine = SurvivalEngine::for_delta_min(deltas[deltas.len() - 1])?;
    let residuals: Vec<T> = deltas
        .par_iter()
        .map(|&d| {
            let mut acc = T::zero();
            for ((model, w), e) in parts.iter().zip(&expansions) {
                let exact = engine.evaluate(&model.holes(d)?)?.value;
                acc += *w * (exact - e.evaluate(d));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    series(deltas, residuals, opts.window_decades)
}

/// Residual of the two-hole constant at `θ = 2πr/q` against its expansion.
pub fn fluctuation<T: Real>(
    q: u64,
    r: u64,
    delta_grid: &[T],
    real_pole_cutoff: u32,
) -> Result<FluctuationSeries<T>> {
    let opts = ProbeOptions {
        real_pole_cutoff,
        ..ProbeOptions::default()
    };
    fluctuation_with(&MellinModel::for_angle(r, q)?, delta_grid, opts, None)
}

/// [`fluctuation`] for any supported model; `zeros` may be shared between calls.
pub fn fluctuation_with<T: Real>(
    model: &MellinModel,
    delta_grid: &[T],
    opts: ProbeOptions,
    zeros: Option<&ZeroList<T>>,
) -> Result<FluctuationSeries<T>> {
    combined(&[(model.clone(), T::one())], delta_grid, opts, zeros)
}

/// `P∞(0, Δ) − 2P∞(π, Δ)` minus the same combination of expansions.
pub fn comparator_one_two<T: Real>(delta_grid: &[T]) -> Result<FluctuationSeries<T>> {
    comparator_one_two_with(delta_grid, ProbeOptions::default(), None)
}

pub fn comparator_one_two_with<T: Real>(
    delta_grid: &[T],
    opts: ProbeOptions,
    zeros: Option<&ZeroList<T>>,
) -> Result<FluctuationSeries<T>> {
    let parts = [
        (MellinModel::closed_form(1)?, T::one()),
        (MellinModel::closed_form(2)?, T::lit(-2.0)),
    ];
    combined(&parts, delta_grid, opts, zeros)
}

/// One hole against `q` equally spaced holes: `P∞(0, Δ) − q·P_q(Δ)`, detrended.
pub fn q_hole_comparator<T: Real>(q: u64, delta_grid: &[T]) -> Result<FluctuationSeries<T>> {
    q_hole_comparator_with(q, delta_grid, ProbeOptions::default(), None)
}

pub fn q_hole_comparator_with<T: Real>(
    q: u64,
    delta_grid: &[T],
    opts: ProbeOptions,
    zeros: Option<&ZeroList<T>>,
) -> Result<FluctuationSeries<T>> {
    if ![2u64, 3, 4, 6].contains(&q) {
        return Err(Error::Domain(format!(
            "q-hole comparator needs q in {{2, 3, 4, 6}}, got {q}"
        )));
    }
    let parts = [
        (MellinModel::closed_form(1)?, T::one()),
        (MellinModel::q_holes(q)?, -T::from_count(q)),
    ];
    combined(&parts, delta_grid, opts, zeros)
}
