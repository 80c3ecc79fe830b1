use num_complex::Complex;

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(πx)` with exact zeros at integers and exact `±1` at half-integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let r = x - two * (x / two).round();
    let half = T::lit(0.5);
    if r == T::zero() || r.abs() == T::one() {
        T::zero()
    } else if r == half {
        T::one()
    } else if r == -half {
        -T::one()
    } else {
        (T::PI() * r).sin()
    }
}

/// `cos(πx)`, exact at integers and half-integers.
pub fn cos_pi<T: Real>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}

/// Complex `sin(πz)` built from the exact real helpers.
pub fn sin_pi_complex<T: Real>(z: Complex<T>) -> Complex<T> {
    let y = T::PI() * z.im;
    Complex::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// Complex `cos(πz)`.
pub fn cos_pi_complex<T: Real>(z: Complex<T>) -> Complex<T> {
    let y = T::PI() * z.im;
    Complex::new(cos_pi(z.re) * y.cosh(), -sin_pi(z.re) * y.sinh())
}

fn ln_gamma_lanczos<T: Real>(z: Complex<T>) -> Complex<T> {
    let z = z - T::one();
    let mut x = Complex::new(T::lit(LANCZOS_COEFFS[0]), T::zero());
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += Complex::new(T::lit(c), T::zero()) / (z + T::from_count(i as u64));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_7);
    (z + T::lit(0.5)) * t.ln() - t + x.ln() + half_ln_two_pi
}

/// Principal branch of `ln Γ(z)`, continuous off the non-positive real axis.
///
/// Points left of `Re z = 1/2` are shifted right with `Γ(z) = Γ(z+1)/z`.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    if z.re >= half {
        return ln_gamma_lanczos(z);
    }
    let shift = (half - z.re).ceil().to_u64().unwrap_or(0);
    let mut acc = ln_gamma_lanczos(z + T::from_count(shift));
    for k in 0..shift {
        acc -= (z + T::from_count(k)).ln();
    }
    acc
}

/// `Γ(z)`, by reflection left of `Re z = 1/2`.
///
/// Returns a non-finite value at the poles `z = 0, −1, −2, …`.
pub fn gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.re >= T::lit(0.5) {
        return ln_gamma_lanczos(z).exp();
    }
    let one = Complex::new(T::one(), T::zero());
    let denom = sin_pi_complex(z) * ln_gamma_lanczos(one - z).exp();
    Complex::new(T::PI(), T::zero()) / denom
}
