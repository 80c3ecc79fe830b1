//! Exact long-time survival constants `P∞ = lim t·μ(N_t)`.
//!
//! Every configuration reduces to a finite sum `(1/8π) Σ_k c_k g(L_k − Δ)` with
//! `g(x) = x²` for `x > 0` and integer weights `c_k` built from `φ` and `μ`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::arithmetic::{gcd, sieve_tables, ArithmeticTables};
use crate::billiard::{HoleConfiguration, HoleLayout};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::scalar::{pairwise_sum, pairwise_sum_complex, real_pow_complex, Real};

/// Below this many terms the n-sum runs on the calling thread.
const PARALLEL_TERMS: u64 = 1 << 15;

/// `g(x) = x²` for `x > 0`, else 0.
#[inline]
pub fn g<T: Real>(x: T) -> T {
    if x > T::zero() {
        x * x
    } else {
        T::zero()
    }
}

/// `θ′ = (2π/n)·frac(nθ/2π) ∈ [0, 2π/n)`.
pub fn theta_reduced<T: Real>(n: u64, theta: T) -> T {
    let period = T::two_pi() / T::from_count(n);
    let x = T::from_count(n) * theta / T::two_pi();
    let r = period * (x - x.floor());
    if r >= period || r < T::zero() {
        T::zero()
    } else {
        r
    }
}

/// `θ′` for `θ = 2π r/q`, from the exact residue `n r mod q`.
pub fn theta_reduced_rational<T: Real>(n: u64, r: u64, q: u64) -> T {
    let k = ((n as u128 * r as u128) % q as u128) as u64;
    T::two_pi() / T::from_count(n) * T::from_count(k) / T::from_count(q)
}

/// Number of terms `⌊2π/Δ⌋` needed at hole width `delta`.
pub fn term_cutoff<T: Real>(delta: T) -> u64 {
    (T::two_pi() / delta).floor().to_u64().unwrap_or(u64::MAX)
}

/// Result of an exact survival computation.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalConstant<T> {
    pub value: T,
    /// Largest `n` in the arc sum.
    pub terms_used: u64,
    pub config: HoleConfiguration<T>,
}

/// Calls `emit(c, L)` for each arc of level `n`; the contribution is `c·g(L − Δ)`.
#[inline]
fn level_terms<T: Real>(
    layout: &HoleLayout<T>,
    n: u64,
    tables: &ArithmeticTables,
    mut emit: impl FnMut(T, T),
) {
    let weight = n as i64 * (tables.phi(n as usize) as i64 - tables.mu(n as usize));
    if weight == 0 {
        return;
    }
    let tau = T::two_pi();
    let nn = T::from_count(n);
    match *layout {
        HoleLayout::Single => emit(T::lit(weight as f64), tau / nn),
        HoleLayout::Pair { theta, rational } => {
            let reduced = match rational {
                Some((r, q)) => theta_reduced_rational(n, r, q),
                None => theta_reduced(n, theta),
            };
            let c = T::lit(weight as f64);
            emit(c, tau / nn - reduced);
            emit(c, reduced);
        }
        HoleLayout::EquallySpaced { count } => {
            let reduced_count = count / gcd(n, count);
            emit(
                T::lit((weight * reduced_count as i64) as f64),
                tau / (nn * T::from_count(reduced_count)),
            );
        }
    }
}

/// Sum of `f(n)` for `n = 1..=terms` in a fixed reduction order.
fn deterministic_sum<T: Real>(terms: u64, f: impl Fn(u64) -> T + Sync) -> T {
    let values: Vec<T> = if terms >= PARALLEL_TERMS {
        (1..=terms).into_par_iter().map(&f).collect()
    } else {
        (1..=terms).map(&f).collect()
    };
    pairwise_sum(&values)
}

/// `Σ_{n: n/gcd(n,q) = ñ} n(φ(n) − μ(n))·q/gcd(n,q)`, by brute force over `n ≤ ñq`.
///
/// The grouping collapses this to `ñ φ(ñ) q²`.
pub fn q_hole_group_weight(q: u64, n_tilde: u64, tables: &ArithmeticTables) -> i128 {
    let mut acc = 0i128;
    for n in 1..=(n_tilde * q) {
        let d = gcd(n, q);
        if n / d == n_tilde {
            let w = n as i128 * (tables.phi(n as usize) as i128 - tables.mu(n as usize) as i128);
            acc += w * (q / d) as i128;
        }
    }
    acc
}

/// Sieve-backed evaluator for every hole layout.
#[derive(Debug, Clone)]
pub struct SurvivalEngine {
    tables: ArithmeticTables,
}

impl SurvivalEngine {
    /// Engine able to evaluate any width `Δ ≥ delta_min`.
    pub fn for_delta_min<T: Real>(delta_min: T) -> Result<Self> {
        if !(delta_min > T::zero()) {
            return Err(Error::Domain(format!(
                "hole width must be positive, got {delta_min}"
            )));
        }
        Self::with_limit(term_cutoff(delta_min).max(2) as usize)
    }

    pub fn with_limit(limit: usize) -> Result<Self> {
        Ok(Self {
            tables: sieve_tables(limit)?,
        })
    }

    pub fn tables(&self) -> &ArithmeticTables {
        &self.tables
    }

    fn ensure<T: Real>(&self, delta: T) -> Result<u64> {
        let terms = term_cutoff(delta);
        if terms as usize > self.tables.limit() {
            return Err(Error::Domain(format!(
                "width {delta} needs {terms} terms, engine sieved to {}",
                self.tables.limit()
            )));
        }
        Ok(terms)
    }

    /// `P∞` for any configuration; for equally spaced holes the regrouped
    /// form is evaluated too and must agree to `10⁻¹²` relative.
    pub fn evaluate<T: Real>(&self, holes: &HoleConfiguration<T>) -> Result<SurvivalConstant<T>> {
        let delta = holes.delta();
        let terms = self.ensure(delta)?;
        let layout = holes.layout();
        let tables = &self.tables;
        let sum = deterministic_sum(terms, |n| {
            let mut acc = T::zero();
            level_terms(layout, n, tables, |c, l| acc += c * g(l - delta));
            acc
        });
        let value = sum / (T::lit(8.0) * T::PI());
        if let HoleLayout::EquallySpaced { count } = *layout {
            let regrouped = self.q_holes_regrouped(count, delta)?;
            let tol = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
            if (regrouped - value).abs() > tol * value.abs().max(T::min_positive_value()) {
                return Err(Error::Accuracy(format!(
                    "{count}-hole sums disagree: {value} vs regrouped {regrouped}"
                )));
            }
        }
        Ok(SurvivalConstant {
            value,
            terms_used: terms,
            config: holes.clone(),
        })
    }

    /// `(1/8π) Σ_ñ ñ φ(ñ) q² g(2π/(ñq) − Δ)`.
    pub fn q_holes_regrouped<T: Real>(&self, q: u64, delta: T) -> Result<T> {
        if q < 2 {
            return Err(Error::Domain(format!("need at least 2 holes, got {q}")));
        }
        let terms = self.ensure(delta)? / q;
        let qq = T::from_count(q);
        let tables = &self.tables;
        let sum = deterministic_sum(terms, |n| {
            let nn = T::from_count(n);
            nn * T::from_count(tables.phi(n as usize))
                * qq
                * qq
                * g(T::two_pi() / (nn * qq) - delta)
        });
        Ok(sum / (T::lit(8.0) * T::PI()))
    }
}

/// Two holes at separation `theta ∈ [0, 2π)`; `theta = 0` is the one-hole case.
pub fn p_infinity_two_holes<T: Real>(theta: T, delta: T) -> Result<SurvivalConstant<T>> {
    let holes = HoleConfiguration::two_holes(theta, delta)?;
    SurvivalEngine::for_delta_min(delta)?.evaluate(&holes)
}

/// Two holes at the rational separation `θ = 2π r/q`.
pub fn p_infinity_rational<T: Real>(r: u64, q: u64, delta: T) -> Result<SurvivalConstant<T>> {
    let holes = HoleConfiguration::rational(r, q, delta)?;
    SurvivalEngine::for_delta_min(delta)?.evaluate(&holes)
}

/// `q ≥ 2` equally spaced holes.
pub fn p_infinity_q_holes<T: Real>(q: u64, delta: T) -> Result<SurvivalConstant<T>> {
    let holes = HoleConfiguration::equally_spaced(q, delta)?;
    SurvivalEngine::for_delta_min(delta)?.evaluate(&holes)
}

/// `P∞` as an explicit piecewise quadratic in `Δ` on `[delta_min, π]`.
///
/// Between consecutive arc lengths `L_k` the active set is fixed, so
/// `8π·P∞(Δ) = A − BΔ + CΔ²` with cumulative `A = Σ cL²`, `B = Σ 2cL`, `C = Σ c`.
#[derive(Debug, Clone)]
pub struct SurvivalProfile<T> {
    delta_min: T,
    /// Arc lengths in decreasing order.
    breaks: Vec<T>,
    /// `(A, B, C)` over the first `k + 1` arcs.
    cumulative: Vec<(T, T, T)>,
}

impl<T: Real> SurvivalProfile<T> {
    /// Profile of the layout of `holes` (its width is ignored).
    pub fn new(holes: &HoleConfiguration<T>, delta_min: T) -> Result<Self> {
        let engine = SurvivalEngine::for_delta_min(delta_min)?;
        let terms = term_cutoff(delta_min);
        let mut arcs: Vec<(T, T)> = Vec::new();
        for n in 1..=terms {
            level_terms(holes.layout(), n, engine.tables(), |c, l| {
                if l > delta_min {
                    arcs.push((l, c));
                }
            });
        }
        arcs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite arc lengths"));
        let mut cumulative = Vec::with_capacity(arcs.len());
        let (mut a, mut b, mut c) = (T::zero(), T::zero(), T::zero());
        for &(l, w) in &arcs {
            a += w * l * l;
            b += T::lit(2.0) * w * l;
            c += w;
            cumulative.push((a, b, c));
        }
        Ok(Self {
            delta_min,
            breaks: arcs.into_iter().map(|(l, _)| l).collect(),
            cumulative,
        })
    }

    pub fn delta_min(&self) -> T {
        self.delta_min
    }

    /// Quadratic coefficients `(A, B, C)` active at width `delta`.
    fn coefficients(&self, delta: T) -> (T, T, T) {
        let active = self.breaks.partition_point(|&l| l > delta);
        if active == 0 {
            (T::zero(), T::zero(), T::zero())
        } else {
            self.cumulative[active - 1]
        }
    }

    /// `P∞(Δ)` for `Δ ≥ delta_min`.
    pub fn value(&self, delta: T) -> T {
        let (a, b, c) = self.coefficients(delta);
        let raw = a - b * delta + c * delta * delta;
        raw.max(T::zero()) / (T::lit(8.0) * T::PI())
    }

    /// `∫₀^π P∞(Δ) Δ^{s−1} dΔ` by adaptive Gauss–Kronrod on each quadratic
    /// piece of `[delta_min, π]`, plus `c·Δ_min^{s−1}/(s−1)` for the `c/Δ`
    /// behaviour below `delta_min`.
    pub fn mellin_transform(&self, s: Complex<T>) -> Result<Complex<T>> {
        let one = T::one();
        let upper = T::PI();
        let mut edges: Vec<T> = self.breaks.iter().copied().filter(|&l| l < upper).collect();
        edges.push(upper);
        edges.push(self.delta_min);
        edges.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        edges.dedup();
        let pieces: Vec<Complex<T>> = edges
            .par_windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let (a, b, c) = self.coefficients((lo + hi) / T::lit(2.0));
                let f = |x: T| {
                    real_pow_complex(x, s - one)
                        * ((a - b * x + c * x * x) / (T::lit(8.0) * T::PI()))
                };
                integrate(
                    &f,
                    lo,
                    hi,
                    T::lit(1e-300).max(T::min_positive_value()),
                    T::lit(1e-13).max(T::epsilon() * T::lit(16.0)),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let body = pairwise_sum_complex(&pieces);
        let lead = self.delta_min * self.value(self.delta_min);
        let tail = real_pow_complex(self.delta_min, s - one) * lead / (s - one);
        Ok(body + tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    #[test]
    fn reduced_angles() {
        assert!(theta_reduced(2, PI).abs() < 1e-15);
        assert!((theta_reduced(3, PI) - PI / 3.0).abs() < 1e-15);
        assert!((theta_reduced(4, TAU / 3.0) - PI / 6.0).abs() < 1e-15);
        assert_eq!(theta_reduced_rational::<f64>(2, 1, 2), 0.0);
        assert!((theta_reduced_rational::<f64>(4, 1, 3) - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn hand_values() {
        let one = p_infinity_two_holes(0.0, FRAC_PI_2).unwrap();
        assert!((one.value - 5.0 * PI / 32.0).abs() < 1e-15);
        assert_eq!(one.terms_used, 4);
        let opposite = p_infinity_two_holes(PI, FRAC_PI_2).unwrap();
        assert!((opposite.value - PI / 8.0).abs() < 1e-15);
        assert_eq!(p_infinity_two_holes(0.0, PI).unwrap().value, 0.0);
        assert!(p_infinity_two_holes(0.0, -1.0).is_err());
        assert!(p_infinity_two_holes(0.0, 0.0).is_err());
    }

    #[test]
    fn rational_and_float_angles_agree() {
        for &(r, q) in &[(1u64, 2u64), (1, 3), (2, 5), (1, 6)] {
            for &delta in &[0.3, 0.05, 0.011] {
                let exact = p_infinity_rational(r, q, delta).unwrap().value;
                let float = p_infinity_two_holes(TAU * r as f64 / q as f64, delta)
                    .unwrap()
                    .value;
                assert!(
                    (exact - float).abs() < 1e-9 * exact.max(1.0),
                    "{r}/{q} {delta}"
                );
            }
        }
    }

    #[test]
    fn two_q_holes_are_the_opposite_pair() {
        let v = p_infinity_q_holes(2, FRAC_PI_2).unwrap().value;
        assert!((v - PI / 8.0).abs() < 1e-15);
        for delta in [0.1, 0.01] {
            let a = p_infinity_q_holes(2, delta).unwrap().value;
            let b = p_infinity_two_holes(PI, delta).unwrap().value;
            assert!((a - b).abs() < 1e-12 * b, "{delta}");
        }
        assert!(p_infinity_q_holes(1, 0.1).is_err());
    }

    #[test]
    fn regrouping_identity_is_exact() {
        let tables = sieve_tables(6000).unwrap();
        for q in [2u64, 3, 4, 6] {
            for n_tilde in 1..=1000u64 {
                let lhs = q_hole_group_weight(q, n_tilde, &tables);
                let rhs = n_tilde as i128 * tables.phi(n_tilde as usize) as i128 * (q * q) as i128;
                assert_eq!(lhs, rhs, "q = {q}, n~ = {n_tilde}");
            }
        }
        assert_eq!(q_hole_group_weight(2, 2, &tables), 8);
    }

    #[test]
    fn monotone_in_width() {
        let engine = SurvivalEngine::for_delta_min(1e-3).unwrap();
        for theta in [0.0, PI, TAU / 3.0] {
            let base = HoleConfiguration::two_holes(theta, 1.0).unwrap();
            let mut prev = f64::INFINITY;
            for k in 0..1000 {
                let delta = 1e-3 + (PI - 1e-3) * k as f64 / 999.0;
                let v = engine
                    .evaluate(&base.with_delta(delta).unwrap())
                    .unwrap()
                    .value;
                assert!(v <= prev * (1.0 + 1e-13), "theta {theta}, delta {delta}");
                prev = v;
            }
        }
    }

    #[test]
    fn leading_small_width_behaviour() {
        let a = p_infinity_two_holes(0.0f64, 1e-4).unwrap().value * 1e-4;
        let b = p_infinity_two_holes(PI, 1e-4f64).unwrap().value * 1e-4;
        assert!((a - 2.0).abs() < 0.1, "{a}");
        assert!((b - 1.0).abs() < 0.05, "{b}");
    }

    #[test]
    fn profile_matches_engine() {
        for holes in [
            HoleConfiguration::one_hole(1.0).unwrap(),
            HoleConfiguration::rational(1, 3, 1.0).unwrap(),
            HoleConfiguration::two_holes(2.0, 1.0).unwrap(),
            HoleConfiguration::equally_spaced(4, 1.0).unwrap(),
        ] {
            let profile = SurvivalProfile::new(&holes, 1e-3).unwrap();
            let engine = SurvivalEngine::for_delta_min(1e-3).unwrap();
            for k in 0..300 {
                let delta = 1e-3 * (3.2e3f64).powf(k as f64 / 299.0);
                let exact = engine
                    .evaluate(&holes.with_delta(delta).unwrap())
                    .unwrap()
                    .value;
                let prof = profile.value(delta);
                assert!(
                    (exact - prof).abs() <= 1e-10 * exact.max(1.0),
                    "{delta}: {exact} vs {prof}"
                );
            }
        }
    }

    #[test]
    fn single_precision_engine() {
        let v = p_infinity_two_holes(0.0f32, std::f32::consts::FRAC_PI_2)
            .unwrap()
            .value;
        assert!((v - 5.0 * std::f32::consts::PI / 32.0).abs() < 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn mirror_symmetry(theta in 0.001f64..(TAU - 0.001), delta in 0.01f64..3.5) {
            let a = p_infinity_two_holes(theta, delta).unwrap().value;
            let b = p_infinity_two_holes(TAU - theta, delta).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }

        #[test]
        fn nonnegative(theta in 0.0f64..TAU, delta in 0.01f64..7.0) {
            prop_assert!(p_infinity_two_holes(theta, delta).unwrap().value >= 0.0);
        }
    }
}
