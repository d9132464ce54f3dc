//! Complex log-gamma and reciprocal gamma.
//!
//! The right half-plane uses Stirling's series after shifting the argument
//! to `|z| >= 15`; the left half-plane goes through the reflection formula
//! `Γ(z)Γ(1-z) = π / sin(πz)`, with `sin(πz)` evaluated after reduction by
//! the nearest integer so that arguments close to a pole keep full relative
//! accuracy.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Distance from a nonpositive integer below which `log_gamma` reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-14;

const STIRLING_MIN_ABS: f64 = 15.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..=10
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// `sin(πz)` with argument reduction by the nearest integer of `Re z`.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let (s, c) = (PI * r.re).sin_cos();
    let v = Complex64::new(s * (PI * r.im).cosh(), c * (PI * r.im).sinh());
    if (n as i64).rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

/// `ln sin(πz)`, stable for large `|Im z|` where `sin` itself would overflow.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return sin_pi(z).ln();
    }
    // sin w = (i/2) e^{-iw} (1 - e^{2iw}) for Im w > 0; conjugate otherwise.
    let (w, flip) = if z.im > 0.0 { (z * PI, false) } else { (z.conj() * PI, true) };
    let i = Complex64::i();
    let e2 = (i * w * 2.0).exp();
    let v = -i * w + Complex64::new((0.5f64).ln(), PI / 2.0) + (Complex64::new(1.0, 0.0) - e2).ln();
    if flip {
        v.conj()
    } else {
        v
    }
}

fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING_COEFFS {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// `ln Γ(z)` for `Re z >= 1/2` on the principal (continuous) branch.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut log_prod = Complex64::new(0.0, 0.0);
    while shifted.norm() < STIRLING_MIN_ABS {
        log_prod += shifted.ln();
        shifted += 1.0;
    }
    ln_gamma_stirling(shifted) - log_prod
}

fn near_nonpositive_integer(z: Complex64) -> bool {
    z.re <= POLE_TOLERANCE && (z.re - z.re.round()).hypot(z.im) < POLE_TOLERANCE
}

/// Complex `ln Γ(z)`.
///
/// For `Re z >= 1/2` the result is on the principal branch; in the left
/// half-plane it comes from the reflection formula and agrees with the
/// principal branch modulo `2πi`, so `exp(log_gamma(z)) = Γ(z)` everywhere.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Invalid(format!("non-finite gamma argument {z}")));
    }
    if near_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(one - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// `1/Γ(z)`, an entire function: exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        sin_pi(z) * ln_gamma_right(one - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}
