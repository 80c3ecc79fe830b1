//! The circle billiard: collision map, invariant measure, escape detection and
//! the ψ-structure of orbits that survive up to a finite time.
//!
//! Angles are radians. A boundary point is `beta ∈ [0, 2π)` and the
//! reflection angle `psi ∈ [-π/2, π/2]` is measured from the inner normal.
//! In the disk the collision map is a rigid rotation of `beta` by `π - 2ψ`
//! and `psi` is conserved.

use rand::Rng;
use rayon::prelude::*;

use crate::arithmetic::gcd;
use crate::error::{Error, Result};
use crate::scalar::{wrap_angle, Real};

/// Bounce cap used when the caller has no better bound.
pub const DEFAULT_BOUNCE_CAP: u64 = 100_000_000;

/// Steps between re-synchronisations of the incremental `beta` update with
/// the closed form `beta_0 + k (π - 2ψ)`.
const RESYNC_PERIOD: u64 = 1 << 12;

/// Collision state `(beta, psi)` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint<T> {
    pub beta: T,
    pub psi: T,
}

impl<T: Real> PhasePoint<T> {
    /// Builds a point, wrapping `beta` into `[0, 2π)`.
    pub fn new(beta: T, psi: T) -> Result<Self> {
        let half_pi = T::FRAC_PI_2();
        if !(psi >= -half_pi && psi <= half_pi) {
            return Err(Error::Domain(format!("psi = {psi} outside [-pi/2, pi/2]")));
        }
        if !beta.is_finite() {
            return Err(Error::Domain("beta must be finite".into()));
        }
        Ok(Self {
            beta: wrap_angle(beta),
            psi,
        })
    }

    /// Rotation of `beta` per collision, wrapped into `[0, 2π)`.
    #[inline]
    pub fn rotation(&self) -> T {
        wrap_angle(T::PI() - self.psi - self.psi)
    }

    /// Continuous time between consecutive collisions (chord length).
    #[inline]
    pub fn chord(&self) -> T {
        self.psi.cos() + self.psi.cos()
    }
}

/// One application of the billiard map: `(β, ψ) ↦ (β + π − 2ψ mod 2π, ψ)`.
#[inline]
pub fn billiard_map<T: Real>(p: PhasePoint<T>) -> PhasePoint<T> {
    PhasePoint {
        beta: wrap_angle(p.beta + T::PI() - p.psi - p.psi),
        psi: p.psi,
    }
}

/// `beta` after `k` collisions, from the closed form rather than iteration.
#[inline]
pub fn beta_after<T: Real>(p: PhasePoint<T>, k: u64) -> T {
    wrap_angle(p.beta + T::from_count(k) * p.rotation())
}

/// Draws `count` i.i.d. points from `dμ = cos ψ /(4π) dψ dβ`.
///
/// `beta` is uniform; `psi = asin(2u − 1)` has density `cos ψ / 2`.
pub fn sample_initial<T: Real, R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<PhasePoint<T>> {
    (0..count).map(|_| sample_one(rng)).collect()
}

#[inline]
pub(crate) fn sample_one<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PhasePoint<T> {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let beta = wrap_angle(T::lit(u * std::f64::consts::TAU));
    let psi = T::lit((2.0 * v - 1.0).asin());
    PhasePoint { beta, psi }
}

/// Arrangement of the holes on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum HoleLayout<T> {
    /// A single hole `[0, Δ)`.
    Single,
    /// Holes `[0, Δ)` and `[θ, θ + Δ)`; `rational = (r, q)` when `θ = 2π r/q`.
    Pair {
        theta: T,
        rational: Option<(u64, u64)>,
    },
    /// `count ≥ 2` holes starting at `2π k / count`.
    EquallySpaced { count: u64 },
}

/// Hole width plus layout. Hole arcs are half-open `[start, start + Δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoleConfiguration<T> {
    delta: T,
    layout: HoleLayout<T>,
    starts: Vec<T>,
}

impl<T: Real> HoleConfiguration<T> {
    fn validate_delta(delta: T) -> Result<()> {
        if !(delta > T::zero()) || !delta.is_finite() {
            return Err(Error::Domain(format!(
                "hole width must be positive, got {delta}"
            )));
        }
        Ok(())
    }

    pub fn one_hole(delta: T) -> Result<Self> {
        Self::validate_delta(delta)?;
        Ok(Self {
            delta,
            layout: HoleLayout::Single,
            starts: vec![T::zero()],
        })
    }

    /// Two holes with the second at angle `theta` (floating point).
    pub fn two_holes(theta: T, delta: T) -> Result<Self> {
        Self::validate_delta(delta)?;
        if !(theta >= T::zero() && theta < T::two_pi()) {
            return Err(Error::Domain(format!("theta = {theta} outside [0, 2pi)")));
        }
        Ok(Self {
            delta,
            layout: HoleLayout::Pair {
                theta,
                rational: None,
            },
            starts: vec![T::zero(), theta],
        })
    }

    /// Two holes separated by the rational angle `θ = 2π r/q`, `gcd(r, q) = 1`.
    pub fn rational(r: u64, q: u64, delta: T) -> Result<Self> {
        Self::validate_delta(delta)?;
        if q == 0 || gcd(r, q) != 1 || (r >= q && q > 1) {
            return Err(Error::Domain(format!(
                "angle 2pi*{r}/{q} needs q >= 1, 0 <= r < q and gcd(r, q) = 1"
            )));
        }
        let r = r % q;
        let theta = T::two_pi() * T::from_count(r) / T::from_count(q);
        Ok(Self {
            delta,
            layout: HoleLayout::Pair {
                theta,
                rational: Some((r, q)),
            },
            starts: vec![T::zero(), theta],
        })
    }

    /// `count ≥ 2` equal holes at the vertices of a regular polygon.
    pub fn equally_spaced(count: u64, delta: T) -> Result<Self> {
        Self::validate_delta(delta)?;
        if count < 2 {
            return Err(Error::Domain(format!("need at least 2 holes, got {count}")));
        }
        let starts = (0..count)
            .map(|k| T::two_pi() * T::from_count(k) / T::from_count(count))
            .collect();
        Ok(Self {
            delta,
            layout: HoleLayout::EquallySpaced { count },
            starts,
        })
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    /// The same layout with a different hole width.
    pub fn with_delta(&self, delta: T) -> Result<Self> {
        Self::validate_delta(delta)?;
        Ok(Self {
            delta,
            ..self.clone()
        })
    }

    pub fn layout(&self) -> &HoleLayout<T> {
        &self.layout
    }

    /// Angle of the second hole; zero for a single hole.
    pub fn theta(&self) -> T {
        match self.layout {
            HoleLayout::Pair { theta, .. } => theta,
            _ => T::zero(),
        }
    }

    /// `(r, q)` with `θ = 2π r/q` when known exactly; `(0, 1)` for one hole.
    pub fn rational_angle(&self) -> Option<(u64, u64)> {
        match self.layout {
            HoleLayout::Single => Some((0, 1)),
            HoleLayout::Pair { rational, .. } => rational,
            HoleLayout::EquallySpaced { .. } => None,
        }
    }

    /// Left endpoints of the hole arcs.
    pub fn starts(&self) -> &[T] {
        &self.starts
    }

    /// Whether boundary point `beta ∈ [0, 2π)` lies in some hole.
    #[inline]
    pub fn contains(&self, beta: T) -> bool {
        if self.delta >= T::two_pi() {
            return true;
        }
        self.starts.iter().any(|&start| {
            let mut d = beta - start;
            if d < T::zero() {
                d += T::two_pi();
            }
            d < self.delta
        })
    }
}

/// Outcome of following one orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EscapeResult<T> {
    /// Escaped at collision `bounces ≥ 1` after continuous time `2 cos ψ · bounces`.
    Escaped { bounces: u64, time: T },
    /// No hole was hit in the first `cap` collisions.
    Survived { cap: u64 },
}

impl<T: Real> EscapeResult<T> {
    pub fn bounces(&self) -> Option<u64> {
        match *self {
            EscapeResult::Escaped { bounces, .. } => Some(bounces),
            EscapeResult::Survived { .. } => None,
        }
    }

    pub fn time(&self) -> Option<T> {
        match *self {
            EscapeResult::Escaped { time, .. } => Some(time),
            EscapeResult::Survived { .. } => None,
        }
    }

    pub fn survived(&self) -> bool {
        matches!(self, EscapeResult::Survived { .. })
    }
}

/// First collision `1 ≤ k ≤ max_bounces` whose boundary point is in a hole.
///
/// The starting point (`k = 0`) is never tested.
pub fn escape_count<T: Real>(
    p: PhasePoint<T>,
    holes: &HoleConfiguration<T>,
    max_bounces: u64,
) -> EscapeResult<T> {
    let step = p.rotation();
    let tau = T::two_pi();
    let escaped = |k: u64| EscapeResult::Escaped {
        bounces: k,
        time: p.chord() * T::from_count(k),
    };
    if max_bounces == 0 {
        return EscapeResult::Survived { cap: 0 };
    }
    if step == T::zero() {
        // Fixed point of the map: only one distinct boundary point.
        return if holes.contains(p.beta) {
            escaped(1)
        } else {
            EscapeResult::Survived { cap: max_bounces }
        };
    }
    let mut beta = p.beta;
    for k in 1..=max_bounces {
        if k % RESYNC_PERIOD == 0 {
            beta = beta_after(p, k);
        } else {
            beta += step;
            if beta >= tau {
                beta -= tau;
            }
        }
        if holes.contains(beta) {
            return escaped(k);
        }
    }
    EscapeResult::Survived { cap: max_bounces }
}

/// Largest bounce count whose continuous time does not exceed `horizon`.
///
/// Returns `None` when the chord vanishes (grazing orbit, infinite budget).
#[inline]
pub(crate) fn bounce_budget<T: Real>(p: &PhasePoint<T>, horizon: T) -> Option<u64> {
    let chord = p.chord();
    if !(chord > T::zero()) {
        return None;
    }
    let k = (horizon / chord).floor();
    Some(k.to_u64().unwrap_or(u64::MAX))
}

/// Whether the orbit of `p` has continuous escape time strictly beyond `horizon`.
pub fn survives_past<T: Real>(p: PhasePoint<T>, holes: &HoleConfiguration<T>, horizon: T) -> bool {
    let budget = bounce_budget(&p, horizon)
        .unwrap_or(DEFAULT_BOUNCE_CAP)
        .min(DEFAULT_BOUNCE_CAP);
    escape_count(p, holes, budget).survived()
}

/// Result of a ψ-scan at fixed `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiScan<T> {
    /// Maximal runs of surviving grid points, as closed intervals `[lo, hi]`.
    pub intervals: Vec<(T, T)>,
    /// Grid spacing; true interval ends are known only to this resolution.
    pub resolution: T,
}

/// Grid scan of the ψ-directions at `beta` that survive beyond `time_horizon`.
///
/// Grid points are `−π/2 + i·π/(psi_grid − 1)`, `i = 0..psi_grid`.
pub fn surviving_psi_intervals<T: Real>(
    beta: T,
    holes: &HoleConfiguration<T>,
    time_horizon: T,
    psi_grid: usize,
) -> Result<PsiScan<T>> {
    let delta = holes.delta();
    if psi_grid < 1000 {
        return Err(Error::Domain(format!(
            "psi grid of {psi_grid} points is below 1000"
        )));
    }
    if !(time_horizon > T::lit(8.0) * T::PI() / delta) {
        return Err(Error::Domain(format!(
            "time horizon {time_horizon} not above 8 pi / delta"
        )));
    }
    let resolution = T::PI() / T::from_count(psi_grid as u64 - 1);
    if delta >= T::PI() {
        return Ok(PsiScan {
            intervals: Vec::new(),
            resolution,
        });
    }
    let beta = wrap_angle(beta);
    let grid_point = |i: usize| -T::FRAC_PI_2() + T::from_count(i as u64) * resolution;
    let marks: Vec<bool> = (0..psi_grid)
        .into_par_iter()
        .map(|i| {
            let psi = grid_point(i).max(-T::FRAC_PI_2()).min(T::FRAC_PI_2());
            survives_past(PhasePoint { beta, psi }, holes, time_horizon)
        })
        .collect();

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < psi_grid {
        if marks[i] {
            let start = i;
            while i + 1 < psi_grid && marks[i + 1] {
                i += 1;
            }
            intervals.push((grid_point(start), grid_point(i)));
        }
        i += 1;
    }
    Ok(PsiScan {
        intervals,
        resolution,
    })
}
