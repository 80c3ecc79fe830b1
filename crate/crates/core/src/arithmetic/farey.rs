/// Reduced fraction `num/den` in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    pub num: u64,
    pub den: u64,
}

impl FareyFraction {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// All reduced fractions in `(0, 1)` with denominator at most `max_denominator`,
/// in increasing order. Empty for `max_denominator < 2`.
pub fn farey_sequence(max_denominator: u64) -> Vec<FareyFraction> {
    let n = max_denominator;
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    // Next-term recurrence starting from 0/1, 1/n.
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push(FareyFraction { num: c, den: d });
        let k = (n + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::gcd;

    #[test]
    fn order_three() {
        let f = farey_sequence(3);
        let pairs: Vec<(u64, u64)> = f.iter().map(|x| (x.num, x.den)).collect();
        assert_eq!(pairs, vec![(1, 3), (1, 2), (2, 3)]);
        assert!(farey_sequence(1).is_empty());
    }

    #[test]
    fn neighbour_identities() {
        for n in 2..=500u64 {
            let f = farey_sequence(n);
            for w in f.windows(2) {
                let (x, y) = (w[0], w[1]);
                assert_eq!(y.num * x.den - x.num * y.den, 1, "n = {n}");
                assert!(x.den + y.den > n, "n = {n}");
            }
            assert!(f.iter().all(|x| gcd(x.num, x.den) == 1 && x.den <= n));
        }
    }

    #[test]
    fn length_is_totient_sum() {
        let n = 200u64;
        let phi_sum: u64 = (2..=n)
            .map(|k| (1..k).filter(|&m| gcd(m, k) == 1).count() as u64)
            .sum();
        assert_eq!(farey_sequence(n).len() as u64, phi_sum);
    }
}
