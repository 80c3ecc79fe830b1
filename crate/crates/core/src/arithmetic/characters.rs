use num_complex::Complex;

use super::sieve::gcd;
use crate::scalar::Real;

/// `χ(−1) = +1` (even) or `−1` (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A Dirichlet character mod `q`, stored as exact exponents of `e^{2πi/order}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: u64,
    order: u64,
    /// Position in the cyclic decomposition of the dual group.
    index: Vec<u64>,
    /// `exponents[a]` for `0 ≤ a < q`; `None` off the units.
    exponents: Vec<Option<u64>>,
}

impl Character {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Common order `D`: every value is a power of `e^{2πi/D}`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> &[u64] {
        &self.index
    }

    #[inline]
    fn residue(&self, n: i64) -> usize {
        n.rem_euclid(self.modulus as i64) as usize
    }

    /// Exponent `k` with `χ(n) = e^{2πik/D}`, or `None` when `gcd(n, q) > 1`.
    #[inline]
    pub fn exponent(&self, n: i64) -> Option<u64> {
        self.exponents[self.residue(n)]
    }

    pub fn value<T: Real>(&self, n: i64) -> Complex<T> {
        match self.exponent(n) {
            None => Complex::new(T::zero(), T::zero()),
            Some(k) => root_of_unity(k, self.order),
        }
    }

    /// `χ̄(n)`.
    pub fn conj_value<T: Real>(&self, n: i64) -> Complex<T> {
        self.value::<T>(n).conj()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|e| matches!(e, None | Some(0)))
    }

    pub fn parity(&self) -> Parity {
        match self.exponent(-1) {
            Some(0) => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

fn root_of_unity<T: Real>(k: u64, order: u64) -> Complex<T> {
    let k = k % order;
    match (4 * k).checked_rem(order) {
        // Exact values at quarter turns.
        Some(0) => match 4 * k / order {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        },
        _ => {
            let angle = T::two_pi() * T::from_count(k) / T::from_count(order);
            Complex::from_polar(T::one(), angle)
        }
    }
}

/// The full group of `φ(q)` characters modulo `q`, trivial character first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    modulus: u64,
    order: u64,
    characters: Vec<Character>,
}

impl CharacterTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn trivial(&self) -> &Character {
        &self.characters[0]
    }

    pub fn even(&self) -> impl Iterator<Item = &Character> {
        self.characters
            .iter()
            .filter(|c| c.parity() == Parity::Even)
    }

    /// `Σ_χ χ̄(a) χ(n)`, decided exactly from the exponent tables.
    ///
    /// The map `χ ↦ χ(n)χ̄(a)` is a homomorphism onto a subgroup of the
    /// `D`-th roots of unity, so the sum is `φ(q)` when that subgroup is
    /// trivial and zero otherwise. The subgroup structure is checked.
    pub fn orthogonality_sum_exact(&self, a: i64, n: i64) -> u64 {
        let d = self.order;
        let mut counts = vec![0u64; d as usize];
        for chi in &self.characters {
            match (chi.exponent(a), chi.exponent(n)) {
                (Some(ea), Some(en)) => counts[((en + d - ea) % d) as usize] += 1,
                _ => return 0,
            }
        }
        let hit: Vec<usize> = (0..d as usize).filter(|&k| counts[k] > 0).collect();
        if hit == [0] {
            return self.characters.len() as u64;
        }
        // Image must be the subgroup generated by its smallest nonzero element,
        // with equal fibres; then the roots of unity sum to zero.
        let step = hit[1];
        let expected: Vec<usize> = (0..d as usize).step_by(step).collect();
        assert!(
            (d as usize).is_multiple_of(step) && hit == expected,
            "image is not a subgroup"
        );
        assert!(
            hit.iter().all(|&k| counts[k] == counts[0]),
            "unequal fibres"
        );
        0
    }

    /// Floating point evaluation of `(1/φ(q)) Σ_χ χ̄(a) χ(n)`.
    pub fn orthogonality_sum<T: Real>(&self, a: i64, n: i64) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for chi in &self.characters {
            acc += chi.conj_value::<T>(a) * chi.value::<T>(n);
        }
        acc / T::from_count(self.characters.len() as u64)
    }
}

/// One cyclic factor of `(Z/qZ)*`, represented through its prime-power modulus.
struct CyclicFactor {
    prime_power: u64,
    order: u64,
    /// Discrete logarithm of each residue mod `prime_power` (None off the units).
    logs: Vec<Option<u64>>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let factors = super::sieve::prime_factors(p - 1);
    let mut g = 2;
    loop {
        if factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1) {
            break;
        }
        g += 1;
    }
    if k >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

fn cyclic_logs(generator: u64, order: u64, modulus: u64) -> Vec<Option<u64>> {
    let mut logs = vec![None; modulus as usize];
    let mut x = 1 % modulus;
    for e in 0..order {
        logs[x as usize] = Some(e);
        x = x * generator % modulus;
    }
    logs
}

fn factorize(mut q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut k = 0;
            while q.is_multiple_of(p) {
                q /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if q > 1 {
        out.push((q, 1));
    }
    out
}

fn cyclic_factors(q: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, k) in factorize(q) {
        let pk = p.pow(k);
        if p == 2 {
            match k {
                1 => {}
                2 => out.push(CyclicFactor {
                    prime_power: 4,
                    order: 2,
                    logs: cyclic_logs(3, 2, 4),
                }),
                _ => {
                    // (Z/2^k)* = <-1> x <5>.
                    let half = pk / 4;
                    let mut sign_logs = vec![None; pk as usize];
                    let mut five_logs = vec![None; pk as usize];
                    let mut x = 1u64;
                    for e in 0..half {
                        sign_logs[x as usize] = Some(0);
                        five_logs[x as usize] = Some(e);
                        let neg = pk - x;
                        sign_logs[neg as usize] = Some(1);
                        five_logs[neg as usize] = Some(e);
                        x = x * 5 % pk;
                    }
                    out.push(CyclicFactor {
                        prime_power: pk,
                        order: 2,
                        logs: sign_logs,
                    });
                    out.push(CyclicFactor {
                        prime_power: pk,
                        order: half,
                        logs: five_logs,
                    });
                }
            }
        } else {
            let order = pk / p * (p - 1);
            let g = primitive_root_prime_power(p, k);
            out.push(CyclicFactor {
                prime_power: pk,
                order,
                logs: cyclic_logs(g, order, pk),
            });
        }
    }
    out
}

/// Builds all `φ(q)` characters mod `q` from the cyclic decomposition of the
/// unit group, ordered lexicographically by their index vector.
pub fn character_table(q: u64) -> CharacterTable {
    assert!(q >= 1, "modulus must be positive");
    let factors = cyclic_factors(q);
    let order = factors
        .iter()
        .fold(1u64, |l, f| l / gcd(l, f.order) * f.order);

    // Exponent vector of every residue (None when not a unit).
    let logs: Vec<Option<Vec<u64>>> = (0..q)
        .map(|a| {
            if gcd(a, q) != 1 {
                return None;
            }
            factors
                .iter()
                .map(|f| f.logs[(a % f.prime_power) as usize])
                .collect::<Option<Vec<u64>>>()
        })
        .collect();

    let count: u64 = factors.iter().map(|f| f.order).product();
    let mut characters = Vec::with_capacity(count as usize);
    for flat in 0..count {
        // Lexicographic: first factor most significant.
        let mut index = vec![0u64; factors.len()];
        let mut rest = flat;
        for (slot, f) in index.iter_mut().zip(&factors).rev() {
            *slot = rest % f.order;
            rest /= f.order;
        }
        let exponents = logs
            .iter()
            .map(|entry| {
                entry.as_ref().map(|e| {
                    e.iter()
                        .zip(&index)
                        .zip(&factors)
                        .map(|((&ei, &ki), f)| ei * ki % f.order * (order / f.order))
                        .sum::<u64>()
                        % order
                })
            })
            .collect();
        characters.push(Character {
            modulus: q,
            order,
            index,
            exponents,
        });
    }
    CharacterTable {
        modulus: q,
        order,
        characters,
    }
}
