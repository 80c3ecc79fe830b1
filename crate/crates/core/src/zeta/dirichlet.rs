use num_complex::Complex;

use super::hurwitz::hurwitz_zeta_rational;
use crate::arithmetic::Character;
use crate::error::{Error, Result};
use crate::scalar::{real_pow_complex, Real};

/// `L(s, χ) = q^{−s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`.
///
/// The Hurwitz values are taken in regularized form, so nontrivial characters
/// are finite at `s = 1`; the trivial character restores `φ(q)/(s − 1)`.
pub fn dirichlet_l<T: Real>(s: Complex<T>, chi: &Character) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let q = chi.modulus();
    let trivial = chi.is_trivial();
    if trivial && s == one {
        return Err(Error::pole(s));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    let mut units = 0u64;
    for a in 1..=q {
        if chi.exponent(a as i64).is_none() {
            continue;
        }
        units += 1;
        acc += chi.value::<T>(a as i64) * hurwitz_zeta_rational(s, a, q, true)?;
    }
    if trivial {
        acc += one * T::from_count(units) / (s - one);
    }
    Ok(acc * real_pow_complex(T::from_count(q), -s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{character_table, prime_factors};
    use crate::zeta::riemann_zeta;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn trivial_character_matches_euler_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 6] {
            let table = character_table(q);
            for _ in 0..20 {
                let s = Complex::new(rng.gen_range(-6.0..6.0), rng.gen_range(-40.0..40.0));
                let l = dirichlet_l(s, table.trivial()).unwrap();
                let mut expected = riemann_zeta(s).unwrap();
                for p in prime_factors(q) {
                    expected *= Complex::new(1.0, 0.0) - Complex::new(p as f64, 0.0).powc(-s);
                }
                assert!(
                    (l - expected).norm() < 1e-10 * (1.0 + expected.norm()),
                    "q={q} s={s}"
                );
            }
        }
    }

    #[test]
    fn catalan_constant() {
        // Alternating series with its averaged-partial-sum acceleration.
        let mut partial = 0.0f64;
        let mut prev = 0.0;
        for k in 0..200_000u64 {
            prev = partial;
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            partial += if k % 2 == 0 { t } else { -t };
        }
        let oracle = 0.5 * (partial + prev);
        let table = character_table(4);
        let l = dirichlet_l(Complex::new(2.0, 0.0), &table.characters()[1]).unwrap();
        assert!((l.re - oracle).abs() < 1e-10);
        assert!((l.re - 0.915_965_594_177_219).abs() < 1e-12);
    }

    #[test]
    fn mod_three_at_one() {
        // Blocks (1/(3k+1) − 1/(3k+2)) summed directly, tail ~ 1/(9K).
        let blocks = 2_000_000u64;
        let mut oracle = 0.0f64;
        for k in 0..blocks {
            oracle += 1.0 / (3 * k + 1) as f64 - 1.0 / (3 * k + 2) as f64;
        }
        oracle += 1.0 / (9.0 * blocks as f64);
        let table = character_table(3);
        let l = dirichlet_l(Complex::new(1.0, 0.0), &table.characters()[1]).unwrap();
        assert!((l.re - oracle).abs() < 1e-10, "{} vs {oracle}", l.re);
        assert!((l.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!(dirichlet_l(Complex::new(1.0, 0.0), table.trivial()).is_err());
    }

    #[test]
    fn odd_character_functional_values() {
        // L(0, χ) = −(1/q) Σ a χ(a) for nontrivial χ.
        for q in [3u64, 4, 5, 7, 8] {
            let table = character_table(q);
            for chi in &table.characters()[1..] {
                let mut expected = Complex::new(0.0, 0.0);
                for a in 1..q {
                    expected -= chi.value::<f64>(a as i64) * (a as f64 / q as f64);
                }
                let l = dirichlet_l(Complex::new(0.0, 0.0), chi).unwrap();
                assert!((l - expected).norm() < 1e-12, "q = {q}");
            }
        }
    }
}
