//! Adaptive Gauss–Kronrod integration and trapezoid contour means.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum_complex, Real};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights at the odd-indexed Kronrod nodes (1, 3, 5, 7).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One G7–K15 panel: Kronrod estimate and `|K15 − G7|`.
pub fn gauss_kronrod15<T, F>(f: &F, a: T, b: T) -> (Complex<T>, T)
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let zero = Complex::new(T::zero(), T::zero());
    let (mut k, mut g) = (zero, zero);
    for i in 0..8 {
        let wk = T::lit(WGK[i]);
        let (fx, gauss_node) = if i == 7 {
            (f(mid), true)
        } else {
            let dx = half * T::lit(XGK[i]);
            (f(mid - dx) + f(mid + dx), i % 2 == 1)
        };
        k += fx * wk;
        if gauss_node {
            g += fx * T::lit(WG[i / 2]);
        }
    }
    let k = k * half;
    let g = g * half;
    (k, (k - g).norm())
}

/// Adaptive bisection on G7–K15 panels until `err ≤ max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T, F>(f: &F, a: T, b: T, abs_tol: T, rel_tol: T) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    fn recurse<T: Real, F: Fn(T) -> Complex<T>>(
        f: &F,
        a: T,
        b: T,
        whole: (Complex<T>, T),
        abs_tol: T,
        rel_tol: T,
        depth: u32,
    ) -> Result<Complex<T>> {
        let (value, err) = whole;
        if err <= abs_tol.max(rel_tol * value.norm()) {
            return Ok(value);
        }
        if depth == 0 {
            return Err(Error::Accuracy(format!(
                "quadrature on [{a}, {b}] stalled with error {err:e}"
            )));
        }
        let m = (a + b) / T::lit(2.0);
        let left = gauss_kronrod15(f, a, m);
        let right = gauss_kronrod15(f, m, b);
        let half_tol = abs_tol / T::lit(2.0);
        Ok(recurse(f, a, m, left, half_tol, rel_tol, depth - 1)?
            + recurse(f, m, b, right, half_tol, rel_tol, depth - 1)?)
    }
    let whole = gauss_kronrod15(f, a, b);
    recurse(f, a, b, whole, abs_tol, rel_tol, 40)
}

/// Real-valued convenience wrapper over [`integrate`].
pub fn integrate_real<T, F>(f: &F, a: T, b: T, abs_tol: T, rel_tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let g = |x: T| Complex::new(f(x), T::zero());
    Ok(integrate(&g, a, b, abs_tol, rel_tol)?.re)
}

/// `(1/2πi) ∮ f(z) dz` over `|z − center| = radius` by the trapezoid rule.
///
/// Returns the estimates with `points` and `2·points` nodes; the coarse one
/// reuses every other node of the fine one. Nodes are evaluated in parallel
/// and summed in a fixed order.
pub fn contour_mean<T, F>(
    f: &F,
    center: Complex<T>,
    radius: T,
    points: usize,
) -> (Complex<T>, Complex<T>)
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T> + Sync,
{
    let total = 2 * points;
    let terms: Vec<Complex<T>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let angle = T::two_pi() * T::from_count(k as u64) / T::from_count(total as u64);
            let dir = Complex::from_polar(T::one(), angle);
            f(center + dir * radius) * dir * radius
        })
        .collect();
    let coarse: Vec<Complex<T>> = terms.iter().step_by(2).copied().collect();
    let fine = pairwise_sum_complex(&terms) / T::from_count(total as u64);
    let coarse = pairwise_sum_complex(&coarse) / T::from_count(points as u64);
    (coarse, fine)
}
