use num_complex::Complex;

use super::gamma::{gamma, sin_pi_complex};
use super::hurwitz::hurwitz_zeta;
use crate::error::{Error, Result};
use crate::scalar::{real_pow_complex, Real};

/// Half-widths of the region where the accuracy targets are validated.
pub const VALIDATED_RE: f64 = 30.0;
pub const VALIDATED_IM: f64 = 200.0;

/// Whether `s` lies in `|Re s| ≤ 30`, `|Im s| ≤ 200`.
pub fn in_validated_box<T: Real>(s: Complex<T>) -> bool {
    s.re.abs().as_f64() <= VALIDATED_RE && s.im.abs().as_f64() <= VALIDATED_IM
}

/// A zeta value with its validation flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue<T> {
    pub value: Complex<T>,
    /// False when `s` is outside the validated box and accuracy is not guaranteed.
    pub validated: bool,
}

/// Riemann zeta.
///
/// Euler–Maclaurin for `Re s ≥ −1/2`; below that the functional equation
/// `ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)`.
pub fn riemann_zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    if s == one {
        return Err(Error::pole(s));
    }
    if s.re >= T::lit(-0.5) {
        return hurwitz_zeta(s, T::one());
    }
    let w = one - s;
    let reflected = hurwitz_zeta(w, T::one())?;
    let factor = real_pow_complex(T::lit(2.0), s)
        * real_pow_complex(T::PI(), s - one)
        * sin_pi_complex(s / T::lit(2.0))
        * gamma(w);
    Ok(factor * reflected)
}

/// [`riemann_zeta`] with the validated-box flag attached.
pub fn riemann_zeta_flagged<T: Real>(s: Complex<T>) -> Result<ZetaValue<T>> {
    Ok(ZetaValue {
        value: riemann_zeta(s)?,
        validated: in_validated_box(s),
    })
}

/// `ζ'(s)` by a central difference with one Richardson step.
pub fn zeta_derivative<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    if (s - one).norm() < T::lit(0.1) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    let h = T::lit(1e-5).max(T::epsilon().cbrt());
    let diff = |h: T| -> Result<Complex<T>> {
        Ok((riemann_zeta(s + h)? - riemann_zeta(s - h)?) / (h + h))
    };
    let coarse = diff(h)?;
    let fine = diff(h / T::lit(2.0))?;
    Ok((fine * T::lit(4.0) - coarse) / T::lit(3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::bernoulli::bernoulli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    /// Partial sum to `n` plus the integral tail and half the last term.
    fn direct_zeta(s: f64, a: f64, n: u64) -> f64 {
        let mut acc = 0.0;
        for k in 0..n {
            acc += (k as f64 + a).powf(-s);
        }
        let x = n as f64 + a;
        acc + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn special_values() {
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((riemann_zeta(c(-1.0, 0.0)).unwrap() - c(-1.0 / 12.0, 0.0)).norm() < 1e-14);
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((z2.re - direct_zeta(2.0, 1.0, 1_000_000)).abs() < 1e-10);
        assert!((z2.re - 1.644_934_066_8).abs() < 1e-10);
        let z3 = riemann_zeta(c(3.0, 0.0)).unwrap();
        assert!((z3.re - direct_zeta(3.0, 1.0, 100_000)).abs() < 1e-10);
        assert!((z3.re - 1.202_056_903_2).abs() < 1e-10);
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn trivial_zeros_and_odd_values() {
        for m in 1..=5usize {
            let z = riemann_zeta(c(-2.0 * m as f64, 0.0)).unwrap();
            assert!(z.norm() < 1e-10, "zeta(-{}) = {z}", 2 * m);
            // ζ(1−2m) = (−1)^m |B_{2m}| / (2m).
            let b = bernoulli(2 * m).unwrap();
            let expected = if m % 2 == 0 { 1.0 } else { -1.0 } * b.abs() / (2 * m) as f64;
            let v = riemann_zeta(c(1.0 - 2.0 * m as f64, 0.0)).unwrap();
            assert!(
                (v.re - expected).abs() < 1e-10 * (1.0 + expected.abs()),
                "m = {m}"
            );
        }
    }

    #[test]
    fn functional_equation_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let s = c(rng.gen_range(-10.0..10.0), rng.gen_range(-100.0..100.0));
            let one = c(1.0, 0.0);
            let lhs = riemann_zeta(one - s).unwrap();
            let rhs = c(2.0, 0.0).powc(one - s)
                * c(PI, 0.0).powc(-s)
                * (s * (PI / 2.0)).cos()
                * gamma(s)
                * riemann_zeta(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-8 * (1.0 + lhs.norm()), "s = {s}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for &(x, y) in &[(0.5, 14.0), (-3.2, 7.7), (2.5, 90.0), (-0.7, 1.0)] {
            let a = riemann_zeta(c(x, y)).unwrap();
            let b = riemann_zeta(c(x, -y)).unwrap();
            assert!((a - b.conj()).norm() <= 1e-14 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn derivative_values() {
        let z3 = riemann_zeta(c(3.0, 0.0)).unwrap().re;
        let d2 = zeta_derivative(c(-2.0, 0.0)).unwrap();
        assert!((d2.re + z3 / (4.0 * PI * PI)).abs() < 1e-8);
        let d0 = zeta_derivative(c(0.0, 0.0)).unwrap();
        assert!((d0.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-8);
        // Secant slopes at two step sizes agree with the derivative.
        let s = c(2.0, 0.0);
        let d = zeta_derivative(s).unwrap();
        for h in [1e-4, 1e-5] {
            let secant = (riemann_zeta(s + h).unwrap() - riemann_zeta(s - h).unwrap()) / (2.0 * h);
            assert!((secant - d).norm() < 1e-7);
        }
        assert!(zeta_derivative(c(1.05, 0.0)).is_err());
    }

    #[test]
    fn box_flag() {
        assert!(riemann_zeta_flagged(c(0.5, 100.0)).unwrap().validated);
        assert!(!riemann_zeta_flagged(c(0.5, 250.0)).unwrap().validated);
        assert!(!riemann_zeta_flagged(c(-35.0, 0.0)).unwrap().validated);
    }

    #[test]
    fn single_precision_agrees_roughly() {
        let v = riemann_zeta(Complex::new(2.0f32, 0.0)).unwrap();
        assert!((v.re - 1.644_934).abs() < 1e-5);
    }
}
