use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real_pow_complex, Real};
use crate::zeta::riemann_zeta;

/// Distance below which an evaluation point counts as sitting on a pole.
pub(crate) const POLE_GUARD: f64 = 1e-6;

pub(crate) fn guard<T: Real>(s: Complex<T>, factor: Complex<T>) -> Result<Complex<T>> {
    if factor.norm() < T::lit(POLE_GUARD) {
        Err(Error::pole(s))
    } else {
        Ok(factor)
    }
}

/// `s(s+1)(s+2)` and `ζ(s+1)`, rejecting their zeros.
fn common_denominator<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let one = T::one();
    let cubic = guard(s, s)? * guard(s, s + one)? * guard(s, s + T::lit(2.0))?;
    let zeta_next = riemann_zeta(s + one).map_err(|_| Error::pole(s))?;
    Ok(cubic * guard(s, zeta_next)?)
}

fn zeta_at<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if (s - T::one()).norm() < T::lit(POLE_GUARD) {
        return Err(Error::pole(s));
    }
    riemann_zeta(s)
}

/// The Mellin transform `P̃_{1/q}(s)` in closed form for `q ∈ {1, 2, 3, 4, 6}`
/// (`q = 1` is the single hole).
pub fn p_tilde_closed<T: Real>(q: u64, s: Complex<T>) -> Result<Complex<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let pi = T::PI();
    let pw = |base: f64, e: Complex<T>| real_pow_complex(T::lit(base), e);
    let z = zeta_at(s)?;
    let den = common_denominator(s)?;
    let sp1 = s + one;
    let value = match q {
        1 => real_pow_complex(T::two_pi(), sp1) * (z - one) / (den * two),
        2 => real_pow_complex(pi, sp1) * z / den,
        3 => {
            let num = pw(3.0, s) * (z * T::lit(7.0) + pw(2.0, s + two) * (z - one) + two)
                - z * (pw(2.0, s + two) + one);
            let d3 = guard(s, pw(3.0, sp1) - one)?;
            real_pow_complex(T::two_pi() / T::lit(3.0), sp1) * num / (den * two * d3)
        }
        4 => {
            let num = pw(2.0, s) * (z * T::lit(13.0) + pw(3.0, s + two) * (z - one) + T::lit(3.0))
                - z * (pw(3.0, s + two) + T::lit(5.0));
            let d2 = guard(s, pw(2.0, sp1) - one)?;
            real_pow_complex(pi / two, sp1) * num / (den * T::lit(4.0) * d2)
        }
        6 => {
            let c = |k: f64, base: f64| pw(base, s) * T::lit(k);
            let plain = c(1.0, 6.0) + c(8.0, 12.0) - c(25.0, 30.0);
            let zeta_part = c(-3.0, 2.0) - c(13.0, 3.0) - c(8.0, 4.0) + c(25.0, 5.0) + c(27.0, 6.0)
                - c(25.0, 10.0)
                + c(8.0, 12.0)
                - c(25.0, 15.0)
                + c(25.0, 30.0)
                + one;
            let d2 = guard(s, pw(2.0, sp1) - one)?;
            let d3 = guard(s, pw(3.0, sp1) - one)?;
            real_pow_complex(pi / T::lit(3.0), sp1) * (plain + zeta_part * z)
                / (den * two * d2 * d3)
        }
        _ => {
            return Err(Error::Domain(format!(
                "closed form exists only for q in {{1, 2, 3, 4, 6}}, got {q}"
            )))
        }
    };
    Ok(value)
}

/// Mellin transform of the `q`-hole constant:
/// `(2π)^{s+1} ζ(s) / (2 q^s s(s+1)(s+2) ζ(s+1))`.
pub fn p_tilde_q_holes<T: Real>(q: u64, s: Complex<T>) -> Result<Complex<T>> {
    if q < 2 {
        return Err(Error::Domain(format!("need at least 2 holes, got {q}")));
    }
    let z = zeta_at(s)?;
    let den = common_denominator(s)?;
    let num = real_pow_complex(T::two_pi(), s + T::one()) * z;
    Ok(num / (den * real_pow_complex(T::from_count(q), s) * T::lit(2.0)))
}
