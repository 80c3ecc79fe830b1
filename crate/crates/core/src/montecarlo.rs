//! Direct simulation of survival probabilities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::billiard::{sample_one, survives_past, HoleConfiguration, PhasePoint};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest sample count accepted by [`estimate_survival`].
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalEstimate<T> {
    pub t: T,
    pub survivors: u64,
    pub samples: u64,
    pub p_hat: T,
    pub std_error: T,
    /// `t·p_hat`, comparable with the exact constant.
    pub tp_hat: T,
    pub seed: u64,
    pub streams: u64,
    /// Set when `t ≤ 8π/Δ`, outside the asymptotic regime.
    pub below_regime: bool,
}

impl<T: Real> SurvivalEstimate<T> {
    /// Standard error of `tp_hat`.
    pub fn tp_std_error(&self) -> T {
        self.t * self.std_error
    }

    /// `|tp_hat − reference|` in units of the standard error.
    pub fn z_score(&self, reference: T) -> T {
        (self.tp_hat - reference).abs() / self.tp_std_error()
    }
}

/// RNG for stream `index`: ChaCha keyed by `seed`, stream id `index`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Fraction of μ-distributed initial conditions whose escape time exceeds `t`.
///
/// Samples are split over `streams` independent RNG streams; counts are
/// merged by integer addition, so results do not depend on scheduling.
pub fn estimate_survival<T: Real>(
    holes: &HoleConfiguration<T>,
    t: T,
    samples: u64,
    seed: u64,
    streams: u64,
) -> Result<SurvivalEstimate<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "time horizon must be positive, got {t}"
        )));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    if streams == 0 || streams > samples {
        return Err(Error::Domain(format!(
            "stream count {streams} out of range"
        )));
    }
    let base = samples / streams;
    let extra = samples % streams;
    let survivors: u64 = (0..streams)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let n = base + u64::from(k < extra);
            (0..n)
                .filter(|_| {
                    let p: PhasePoint<T> = sample_one(&mut rng);
                    survives_past(p, holes, t)
                })
                .count() as u64
        })
        .sum();
    let p_hat = T::from_count(survivors) / T::from_count(samples);
    let std_error = (p_hat * (T::one() - p_hat) / T::from_count(samples)).sqrt();
    Ok(SurvivalEstimate {
        t,
        survivors,
        samples,
        p_hat,
        std_error,
        tp_hat: t * p_hat,
        seed,
        streams,
        below_regime: t <= T::lit(8.0) * T::PI() / holes.delta(),
    })
}
