use num_complex::Complex;

use super::MellinModel;
use crate::error::{Error, Result};
use crate::quadrature::contour_mean;
use crate::scalar::{real_pow_complex, Real};

pub const DEFAULT_RADIUS: f64 = 0.25;
pub const DEFAULT_POINTS: usize = 128;
/// Agreement required between the `M`- and `2M`-point trapezoid sums.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Residue of `P̃(s)Δ^{−s}` divided by `Δ^{−s0}`: `coefficient + log_coefficient·ln Δ`.
///
/// `log_coefficient` is nonzero only at double poles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residue<T> {
    pub pole: Complex<T>,
    pub coefficient: Complex<T>,
    pub log_coefficient: Complex<T>,
    pub radius: T,
}

impl<T: Real> Residue<T> {
    /// `coefficient + log_coefficient·ln Δ`.
    pub fn normalized_at(&self, delta: T) -> Complex<T> {
        self.coefficient + self.log_coefficient * delta.ln()
    }

    /// Contribution `(c + ℓ ln Δ)·Δ^{−s0}` to the inverse transform.
    pub fn term_at(&self, delta: T) -> Complex<T> {
        self.normalized_at(delta) * real_pow_complex(delta, -self.pole)
    }
}

fn normalized_contour<T: Real>(
    model: &MellinModel,
    s0: Complex<T>,
    delta: T,
    radius: T,
    points: usize,
) -> Result<Complex<T>> {
    let f = |s: Complex<T>| match model.evaluate(s) {
        Ok(v) => v * real_pow_complex(delta, -(s - s0)),
        Err(_) => Complex::new(T::nan(), T::nan()),
    };
    let (coarse, fine) = contour_mean(&f, s0, radius, points);
    if !(fine.re.is_finite() && fine.im.is_finite()) {
        return Err(Error::Accuracy(format!(
            "contour of radius {radius} around {s0} passes through a singularity"
        )));
    }
    let tol = T::lit(CONVERGENCE_TOL) * fine.norm().max(T::one());
    if (coarse - fine).norm() > tol {
        return Err(Error::Accuracy(format!(
            "residue at {s0}: {points}- and {}-point sums differ by {:e}",
            2 * points,
            (coarse - fine).norm()
        )));
    }
    Ok(fine)
}

/// Residue at `s0` with the default radius 0.25 and 128/256 nodes.
pub fn residue_numeric<T: Real>(
    model: &MellinModel,
    s0: Complex<T>,
    delta: T,
) -> Result<Residue<T>> {
    residue_numeric_with(model, s0, delta, T::lit(DEFAULT_RADIUS), DEFAULT_POINTS)
}

/// Contour residue of `P̃(s)Δ^{−s}` at `s0`, normalized by `Δ^{−s0}`.
///
/// Repeated at `Δ` and `Δ/e` so that a double pole's `ln Δ` part separates:
/// `R(Δ) = c + ℓ ln Δ` gives `ℓ = R(Δ) − R(Δ/e)`.
pub fn residue_numeric_with<T: Real>(
    model: &MellinModel,
    s0: Complex<T>,
    delta: T,
    radius: T,
    points: usize,
) -> Result<Residue<T>> {
    if !(delta > T::zero()) {
        return Err(Error::Domain(format!(
            "width must be positive, got {delta}"
        )));
    }
    if !(radius > T::zero()) || points < 8 {
        return Err(Error::Domain(format!(
            "bad contour: radius {radius}, {points} points"
        )));
    }
    let r1 = normalized_contour(model, s0, delta, radius, points)?;
    let r2 = normalized_contour(model, s0, delta / T::E(), radius, points)?;
    let log_coefficient = r1 - r2;
    Ok(Residue {
        pole: s0,
        coefficient: r1 - log_coefficient * delta.ln(),
        log_coefficient,
        radius,
    })
}
