use num_complex::Complex;

use super::bernoulli::bernoulli;
use super::gamma::{cos_pi_complex, gamma};
use crate::error::{Error, Result};
use crate::scalar::{real_pow_complex, Real};

/// Number of Bernoulli correction terms in the Euler–Maclaurin tail.
pub(crate) const EM_CORRECTIONS: usize = 10;

/// Terms summed directly before the Euler–Maclaurin tail.
pub(crate) fn em_terms<T: Real>(s: Complex<T>) -> u64 {
    let n = (T::lit(1.3) * s.im.abs())
        .ceil()
        .to_u64()
        .unwrap_or(u64::MAX);
    n.max(20)
}

/// `(e^w − 1)/w`, accurate for small `|w|`.
fn expm1_over<T: Real>(w: Complex<T>) -> Complex<T> {
    if w.norm() < T::lit(0.1) {
        // Horner on Σ w^k/(k+1)!, k ≤ 9.
        let mut acc = Complex::new(T::one(), T::zero());
        for k in (1..=9u64).rev() {
            acc = acc * w / T::from_count(k + 1) + T::one();
        }
        acc
    } else {
        (w.exp() - T::one()) / w
    }
}

/// Euler–Maclaurin evaluation of `ζ(s, a)`, optionally minus its pole `1/(s−1)`.
fn euler_maclaurin<T: Real>(s: Complex<T>, a: T, regularized: bool) -> Complex<T> {
    let one = T::one();
    let n = em_terms(s);
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..n {
        acc += real_pow_complex(T::from_count(k) + a, -s);
    }
    let x = T::from_count(n) + a;
    let lx = x.ln();
    let x_pow = real_pow_complex(x, -s);
    let sm1 = s - one;
    if regularized {
        // (x^{1−s} − 1)/(s − 1) = −ln x · (e^w − 1)/w with w = (1 − s) ln x.
        acc -= expm1_over(-sm1 * lx) * lx;
    } else {
        acc += x_pow * x / sm1;
    }
    acc += x_pow * T::lit(0.5);

    let inv_x2 = one / (x * x);
    let mut factor = s / T::lit(2.0); // s(s+1)…(s+2j−2)/(2j)!
    let mut power = x_pow / x; // x^{−s−2j+1}
    for j in 1..=EM_CORRECTIONS {
        acc += factor * power * T::lit(bernoulli(2 * j).expect("tabulated"));
        let jj = T::from_count(2 * j as u64);
        factor *= (s + jj - one) * (s + jj) / ((jj + one) * (jj + T::lit(2.0)));
        power *= inv_x2;
    }
    acc
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{−s}` for `0 < a ≤ 1`.
///
/// Direct Euler–Maclaurin; accurate for `Re s ≥ −1/2` in the validated box.
/// For rational `a` and `Re s < −1/2` prefer [`hurwitz_zeta_rational`].
pub fn hurwitz_zeta<T: Real>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    if !(a > T::zero() && a <= T::one()) {
        return Err(Error::Domain(format!(
            "Hurwitz parameter {a} not in (0, 1]"
        )));
    }
    if s == Complex::new(T::one(), T::zero()) {
        return Err(Error::pole(s));
    }
    Ok(euler_maclaurin(s, a, false))
}

/// `ζ(s, a) − 1/(s − 1)`, finite at `s = 1` (where it equals `−ψ(a)`).
pub fn hurwitz_zeta_regularized<T: Real>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    if !(a > T::zero() && a <= T::one()) {
        return Err(Error::Domain(format!(
            "Hurwitz parameter {a} not in (0, 1]"
        )));
    }
    Ok(euler_maclaurin(s, a, true))
}

/// `ζ(s, m/q)` (or its regularized form) for `1 ≤ m ≤ q`.
///
/// Left of `Re s = −1/2` the rational-argument functional equation
/// `ζ(1−w, m/q) = 2Γ(w)(2πq)^{−w} Σ_k cos(πw/2 − 2πkm/q) ζ(w, k/q)`
/// moves every evaluation to `Re w > 3/2`.
pub fn hurwitz_zeta_rational<T: Real>(
    s: Complex<T>,
    m: u64,
    q: u64,
    regularized: bool,
) -> Result<Complex<T>> {
    if q == 0 || m == 0 || m > q {
        return Err(Error::Domain(format!(
            "Hurwitz parameter {m}/{q} not in (0, 1]"
        )));
    }
    let a = T::from_count(m) / T::from_count(q);
    if s.re >= T::lit(-0.5) {
        return if regularized {
            hurwitz_zeta_regularized(s, a)
        } else {
            hurwitz_zeta(s, a)
        };
    }
    let one = Complex::new(T::one(), T::zero());
    let w = one - s;
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 1..=q {
        let shift = T::lit(2.0) * T::from_count(k * m % q) / T::from_count(q);
        let c = cos_pi_complex(w / T::lit(2.0) - shift);
        sum += c * euler_maclaurin(w, T::from_count(k) / T::from_count(q), false);
    }
    let pref = gamma(w) * real_pow_complex(T::two_pi() * T::from_count(q), -w) * T::lit(2.0);
    let value = pref * sum;
    Ok(if regularized {
        value - one / (s - one)
    } else {
        value
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn half_integer_shift_at_two() {
        // ζ(2, 1/2) = 3ζ(2) = π²/2.
        let v = hurwitz_zeta(c(2.0), 0.5).unwrap();
        assert!((v.re - PI * PI / 2.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn regularized_at_one_is_minus_digamma() {
        let euler_gamma = 0.577_215_664_901_532_9;
        let v = hurwitz_zeta_regularized(c(1.0), 1.0).unwrap();
        assert!((v.re - euler_gamma).abs() < 1e-13);
        // −ψ(1/2) = γ + 2 ln 2.
        let v = hurwitz_zeta_regularized(c(1.0), 0.5).unwrap();
        assert!((v.re - (euler_gamma + 2.0 * 2f64.ln())).abs() < 1e-13);
        assert!(matches!(hurwitz_zeta(c(1.0), 0.5), Err(Error::Pole { .. })));
    }

    #[test]
    fn negative_integers_give_bernoulli_polynomials() {
        // ζ(−n, a) = −B_{n+1}(a)/(n+1); B_2(x) = x² − x + 1/6, B_4(x) = x⁴ − 2x³ + x² − 1/30.
        for &(m, q) in &[(1u64, 3u64), (2, 5), (1, 6), (4, 4)] {
            let a = m as f64 / q as f64;
            let b2 = a * a - a + 1.0 / 6.0;
            let b4 = a.powi(4) - 2.0 * a.powi(3) + a * a - 1.0 / 30.0;
            let v1 = hurwitz_zeta_rational(c(-1.0), m, q, false).unwrap();
            assert!((v1.re + b2 / 2.0).abs() < 1e-12, "{m}/{q}: {v1}");
            let v3 = hurwitz_zeta_rational(c(-3.0), m, q, false).unwrap();
            assert!((v3.re + b4 / 4.0).abs() < 1e-12, "{m}/{q}: {v3}");
            assert!(v3.im.abs() < 1e-12);
        }
    }

    #[test]
    fn rational_paths_agree_across_the_switch() {
        for &(m, q) in &[(1u64, 4u64), (3, 7), (5, 6)] {
            for &im in &[0.0, 3.0, -12.0] {
                let s = Complex::new(-0.5, im);
                let direct = hurwitz_zeta(s, m as f64 / q as f64).unwrap();
                let w = Complex::new(1.0, 0.0) - s;
                let mut sum = Complex::new(0.0, 0.0);
                for k in 1..=q {
                    let arg = w * (PI / 2.0) - 2.0 * PI * (k * m) as f64 / q as f64;
                    sum += arg.cos() * hurwitz_zeta(w, k as f64 / q as f64).unwrap();
                }
                let via_fe = 2.0 * gamma(w) * Complex::new(2.0 * PI * q as f64, 0.0).powc(-w) * sum;
                assert!(
                    (direct - via_fe).norm() < 1e-10 * (1.0 + direct.norm()),
                    "{m}/{q} {im}"
                );
            }
        }
    }
}
