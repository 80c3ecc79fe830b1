use crate::error::{Error, Result};

/// Euler totient and Möbius values for `1 ≤ n ≤ limit`.
///
/// Index 0 holds a placeholder (`φ(0) = 0`, `μ(0) = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticTables {
    limit: usize,
    phi: Vec<u32>,
    mu: Vec<i8>,
}

impl ArithmeticTables {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `φ(n)`; panics if `n > limit`.
    #[inline]
    pub fn phi(&self, n: usize) -> u64 {
        self.phi[n] as u64
    }

    /// `μ(n)`; panics if `n > limit`.
    #[inline]
    pub fn mu(&self, n: usize) -> i64 {
        self.mu[n] as i64
    }

    pub fn phi_slice(&self) -> &[u32] {
        &self.phi
    }

    pub fn mu_slice(&self) -> &[i8] {
        &self.mu
    }
}

/// Linear sieve filling `φ` and `μ` exactly up to `limit`.
pub fn sieve_tables(limit: usize) -> Result<ArithmeticTables> {
    if limit == 0 {
        return Err(Error::Domain("sieve limit must be at least 1".into()));
    }
    if limit > u32::MAX as usize {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds u32 range"
        )));
    }
    let len = limit + 1;
    let mut phi: Vec<u32> = Vec::new();
    let mut mu: Vec<i8> = Vec::new();
    let mut composite: Vec<bool> = Vec::new();
    let mut primes: Vec<u32> = Vec::new();
    phi.try_reserve_exact(len)
        .and_then(|_| mu.try_reserve_exact(len))
        .and_then(|_| composite.try_reserve_exact(len))
        .map_err(|e| Error::Resource(format!("sieve to {limit}: {e}")))?;
    phi.resize(len, 0);
    mu.resize(len, 0);
    composite.resize(len, false);
    phi[1] = 1;
    mu[1] = 1;
    for i in 2..len {
        if !composite[i] {
            primes.push(i as u32);
            phi[i] = i as u32 - 1;
            mu[i] = -1;
        }
        for &p in &primes {
            let p = p as usize;
            let m = i * p;
            if m >= len {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                phi[m] = phi[i] * p as u32;
                mu[m] = 0;
                break;
            }
            phi[m] = phi[i] * (p as u32 - 1);
            mu[m] = -mu[i];
        }
    }
    Ok(ArithmeticTables { limit, phi, mu })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Distinct prime factors of `n` in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi_reference(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn mu_reference(mut n: u64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn small_values() {
        let t = sieve_tables(100).unwrap();
        assert_eq!((t.phi(1), t.mu(1)), (1, 1));
        assert_eq!((t.phi(12), t.mu(12)), (4, 0));
        assert_eq!((t.phi(30), t.mu(30)), (8, -1));
        for p in [2usize, 3, 5, 7, 97] {
            assert_eq!(t.phi(p), p as u64 - 1);
            assert_eq!(t.mu(p), -1);
        }
    }

    #[test]
    fn matches_trial_division() {
        let t = sieve_tables(10_000).unwrap();
        for n in 1..=10_000u64 {
            assert_eq!(t.mu(n as usize), mu_reference(n), "mu({n})");
        }
        // phi by brute force is quadratic; use the product formula instead.
        for n in 1..=10_000u64 {
            let mut phi = n;
            for p in prime_factors(n) {
                phi = phi / p * (p - 1);
            }
            assert_eq!(t.phi(n as usize), phi, "phi({n})");
        }
        for n in 1..=300u64 {
            assert_eq!(t.phi(n as usize), phi_reference(n));
        }
    }

    #[test]
    fn zero_limit_rejected() {
        assert!(matches!(sieve_tables(0), Err(Error::Domain(_))));
    }

    #[test]
    fn ramanujan_sine_identity() {
        // sum over m < n coprime to n of sin^2(pi m / n) = (phi(n) - mu(n)) / 2
        let t = sieve_tables(1000).unwrap();
        let six: f64 = [1.0f64, 5.0]
            .iter()
            .map(|m| (std::f64::consts::PI * m / 6.0).sin().powi(2))
            .sum();
        assert!((six - 0.5).abs() < 1e-15);
        assert_eq!(t.phi(6) as i64 - t.mu(6), 1);
        for n in 1..=1000u64 {
            let s: f64 = (0..n)
                .filter(|&m| gcd(m, n) == 1)
                .map(|m| (std::f64::consts::PI * m as f64 / n as f64).sin().powi(2))
                .sum();
            let rhs = (t.phi(n as usize) as f64 - t.mu(n as usize) as f64) / 2.0;
            assert!((s - rhs).abs() < 1e-9, "n = {n}: {s} vs {rhs}");
        }
    }

    proptest! {
        #[test]
        fn divisor_sums(n in 1usize..20_000) {
            let t = sieve_tables(20_000).unwrap();
            let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
            let phi_sum: u64 = divisors.iter().map(|&d| t.phi(d)).sum();
            let mu_sum: i64 = divisors.iter().map(|&d| t.mu(d)).sum();
            prop_assert_eq!(phi_sum, n as u64);
            prop_assert_eq!(mu_sum, if n == 1 { 1 } else { 0 });
        }
    }
}
