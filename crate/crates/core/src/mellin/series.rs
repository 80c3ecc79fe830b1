use num_complex::Complex;

use super::closed::guard;
use crate::arithmetic::{character_table, gcd, prime_factors, CharacterTable, Parity};
use crate::error::{Error, Result};
use crate::scalar::{real_pow_complex, Real};
use crate::zeta::dirichlet_l;

fn phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

fn mu(n: u64) -> i64 {
    let primes = prime_factors(n);
    if primes.iter().any(|&p| n.is_multiple_of(p * p)) {
        0
    } else if primes.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Character tables for every divisor of `q`, indexed by the divisor.
#[derive(Debug, Clone)]
pub struct DivisorCharacters {
    q: u64,
    tables: Vec<(u64, CharacterTable)>,
}

impl DivisorCharacters {
    pub fn new(q: u64) -> Self {
        let tables = (1..=q)
            .filter(|d| q.is_multiple_of(*d))
            .map(|d| (d, character_table(d)))
            .collect();
        Self { q, tables }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn table(&self, d: u64) -> &CharacterTable {
        &self
            .tables
            .iter()
            .find(|(m, _)| *m == d)
            .expect("divisor table present")
            .1
    }
}

/// `P̃_{r/q}(s)` from the Dirichlet character expansion.
///
/// For each `a = 1..q` with `b = gcd(a, q)`, `a′ = a/b`, `q′ = q/b`:
/// `[(1 − {ar/q})^{s+2} + {ar/q}^{s+2}] / (b^{s+1} φ(q′))` times
/// `Σ_{χ mod q′} χ̄(a′)(φ(b)L(s,χ) − μ(b)) / (L(s+1,χ) Π_{p|b}(1 − χ(p)p^{−s−1}))`,
/// all multiplied by `(2π)^{s+1} / (2s(s+1)(s+2))`. A vanishing fractional
/// part contributes no `0^{s+2}` term (that arc is empty).
pub fn p_tilde_general<T: Real>(r: u64, q: u64, s: Complex<T>) -> Result<Complex<T>> {
    p_tilde_series(&DivisorCharacters::new(q), r, s, false)
}

/// [`p_tilde_general`] over cached tables; `even_only` drops the odd characters,
/// whose contributions cancel between `a` and `q − a`.
pub fn p_tilde_series<T: Real>(
    chars: &DivisorCharacters,
    r: u64,
    s: Complex<T>,
    even_only: bool,
) -> Result<Complex<T>> {
    let q = chars.modulus();
    if q == 0 || gcd(r, q) != 1 {
        return Err(Error::Domain(format!(
            "need gcd(r, q) = 1, got r = {r}, q = {q}"
        )));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let zero = Complex::new(T::zero(), T::zero());
    let sp1 = s + one;
    let sp2 = s + two;
    let mut total = zero;
    for a in 1..=q {
        let b = gcd(a, q);
        let (a1, q1) = (a / b, q / b);
        let k = ((a as u128 * r as u128) % q as u128) as u64;
        let bracket = if k == 0 {
            Complex::new(one, T::zero())
        } else {
            let frac = T::from_count(k) / T::from_count(q);
            real_pow_complex(one - frac, sp2) + real_pow_complex(frac, sp2)
        };
        let primes_b = prime_factors(b);
        let mut inner = zero;
        for chi in chars.table(q1).characters() {
            if even_only && chi.parity() == Parity::Odd {
                continue;
            }
            let l_s = dirichlet_l(s, chi)?;
            let l_next = guard(s, dirichlet_l(sp1, chi).map_err(|_| Error::pole(s))?)?;
            let mut euler = Complex::new(one, T::zero());
            for &p in &primes_b {
                euler *= Complex::new(one, T::zero())
                    - chi.value::<T>(p as i64) * real_pow_complex(T::from_count(p), -sp1);
            }
            let numer = l_s * T::from_count(phi(b)) - T::lit(mu(b) as f64);
            inner += chi.conj_value::<T>(a1 as i64) * numer / (l_next * guard(s, euler)?);
        }
        let scale = real_pow_complex(T::from_count(b), sp1) * T::from_count(phi(q1));
        total += bracket * inner / scale;
    }
    let cubic = guard(s, s)? * guard(s, sp1)? * guard(s, sp2)?;
    Ok(total * real_pow_complex(T::two_pi(), sp1) / (cubic * two))
}
