use num_complex::Complex;
use rayon::prelude::*;

use super::gamma::ln_gamma;
use super::riemann::{riemann_zeta, VALIDATED_IM};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Grid step of the sign-change scan.
pub const ZERO_SCAN_STEP: f64 = 0.05;

/// Ordinates `τ_j` of zeros `1/2 + iτ_j` in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList<T> {
    pub ordinates: Vec<T>,
    /// 1 for a simple sign change; 2 where `|Z|` touches zero without changing sign.
    pub multiplicities: Vec<u32>,
}

impl<T: Real> ZeroList<T> {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Zeros with `τ ≤ t`, counted with multiplicity.
    pub fn count_up_to(&self, t: T) -> u32 {
        self.ordinates
            .iter()
            .zip(&self.multiplicities)
            .filter(|(&o, _)| o <= t)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn first(&self, n: usize) -> Self {
        let n = n.min(self.len());
        Self {
            ordinates: self.ordinates[..n].to_vec(),
            multiplicities: self.multiplicities[..n].to_vec(),
        }
    }
}

/// Riemann–Siegel phase `θ(t) = Im lnΓ(1/4 + it/2) − (t/2) ln π`.
pub fn riemann_siegel_theta<T: Real>(t: T) -> T {
    let z = Complex::new(T::lit(0.25), t / T::lit(2.0));
    ln_gamma(z).im - t / T::lit(2.0) * T::PI().ln()
}

/// Hardy's function `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z<T: Real>(t: T) -> Result<T> {
    let z = riemann_zeta(Complex::new(T::lit(0.5), t))?;
    let theta = riemann_siegel_theta(t);
    Ok((Complex::from_polar(T::one(), theta) * z).re)
}

/// Main terms of the zero-counting function `(T/2π) ln(T/2π) − T/2π + 7/8`.
pub fn zero_count_main_term(t: f64) -> f64 {
    let x = t / std::f64::consts::TAU;
    x * x.ln() - x + 0.875
}

fn bisect<T: Real>(mut lo: T, mut hi: T, mut z_lo: T) -> Result<T> {
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(8.0)) * hi.max(T::one());
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / T::lit(2.0);
        let z_mid = hardy_z(mid)?;
        if z_mid == T::zero() {
            return Ok(mid);
        }
        if (z_mid > T::zero()) == (z_lo > T::zero()) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / T::lit(2.0))
}

/// Golden-section minimum of `|Z|` on `[lo, hi]`.
fn abs_z_minimum<T: Real>(mut lo: T, mut hi: T) -> Result<(T, T)> {
    let ratio = T::lit(0.618_033_988_749_894_9);
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let mut fa = hardy_z(a)?.abs();
    let mut fb = hardy_z(b)?.abs();
    for _ in 0..80 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = hardy_z(a)?.abs();
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = hardy_z(b)?.abs();
        }
    }
    Ok(if fa < fb { (a, fa) } else { (b, fb) })
}

/// Zeros of `ζ(1/2 + it)` with `0 < t ≤ t_max`.
///
/// Sign changes of `Z` on a grid of step 0.05 are refined by bisection and
/// verified by `|ζ(1/2 + iτ)| < 10⁻⁸`. A grid-local minimum of `|Z|` that
/// refines to zero without a sign change is reported with multiplicity 2.
pub fn find_zeros<T: Real>(t_max: T) -> Result<ZeroList<T>> {
    if !(t_max > T::zero()) || t_max.as_f64() > VALIDATED_IM {
        return Err(Error::Domain(format!(
            "t_max = {t_max} outside (0, {VALIDATED_IM}]"
        )));
    }
    let step = T::lit(ZERO_SCAN_STEP);
    let points = (t_max / step).floor().to_u64().unwrap_or(0) as usize;
    let grid: Vec<T> = (1..=points)
        .map(|i| T::from_count(i as u64) * step)
        .collect();
    let values: Vec<T> = grid
        .par_iter()
        .map(|&t| hardy_z(t))
        .collect::<Result<Vec<T>>>()?;

    let verify = T::lit(1e-8).max(T::epsilon().sqrt());
    let mut found: Vec<(T, u32)> = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (za, zb) = (values[i], values[i + 1]);
        if za == T::zero() {
            found.push((grid[i], 1));
            continue;
        }
        if (za > T::zero()) != (zb > T::zero()) && zb != T::zero() {
            found.push((bisect(grid[i], grid[i + 1], za)?, 1));
        } else if i > 0
            && (values[i - 1] > T::zero()) == (za > T::zero())
            && za.abs() < values[i - 1].abs()
            && za.abs() < zb.abs()
        {
            let (t, z) = abs_z_minimum(grid[i - 1], grid[i + 1])?;
            if z < verify {
                found.push((t, 2));
            }
        }
    }

    let mut list = ZeroList {
        ordinates: Vec::with_capacity(found.len()),
        multiplicities: Vec::with_capacity(found.len()),
    };
    for (t, m) in found {
        let residual = riemann_zeta(Complex::new(T::lit(0.5), t))?.norm();
        if !(residual < verify) {
            return Err(Error::Accuracy(format!(
                "|zeta(1/2 + i{t})| = {residual} after refinement"
            )));
        }
        list.ordinates.push(t);
        list.multiplicities.push(m);
    }
    Ok(list)
}
