//! Hermite functions `H_ν(z)` of complex order.
//!
//! Three evaluation routes:
//!
//! * the power series, summed in double-double arithmetic so that the
//!   cancellation on the rays `arg z = ±π/4, ±3π/4` (where the terms grow
//!   like `e^{|z|²}` while the sum stays algebraic) costs nothing up to the
//!   switch radius;
//! * the compound asymptotic expansion `(2z)^ν S₁ + K z^{-ν-1} e^{z²} S₂`,
//!   optimally truncated, with the Stokes multiplier `K` switched on across
//!   the Stokes lines `arg z = ±π/2`;
//! * the three-term recurrence for nonnegative integer orders.
//!
//! Between the radius where the series loses its seeds' accuracy and the
//! radius where the expansion becomes sharp, `H_ν` is continued along the
//! ray through `z` with Taylor steps of the Hermite equation
//! `H'' - 2zH' + 2νH = 0`, inward from the switch radius or outward from
//! the origin. Inward is the stable direction where `H_ν` is recessive
//! (`|arg z| < π/4`, and on the rays `arg z = ±π/4` for `Re ν < 0`).
//!
//! The series coefficients `Γ((n-ν)/2) / Γ(-ν)` are generated from the
//! duplication formula, which turns both chain seeds into reciprocal gamma
//! values. Nothing in the series has a pole, so orders close to an integer
//! lose no accuracy.

use super::dd::{CDd, Dd, DD_EPS};
use super::gamma::rgamma;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

/// Distance from `ℕ₀` below which an order is treated as an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Largest integer order served by the polynomial recurrence.
pub const MAX_POLY_DEGREE: u32 = 60;

/// Default term cap for the power series.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

const SQRT_PI: f64 = 1.772_453_850_905_516;
const F64_EPS: f64 = f64::EPSILON;
// Relative accuracy of the reciprocal-gamma seeds and the final f64 products.
const SEED_REL_ERR: f64 = 5e-15;
const MAX_ASYMPTOTIC_TERMS: usize = 400;
const TAYLOR_MAX_TERMS: usize = 400;
const TAYLOR_STEP_SCALE: f64 = 1.5;

/// Order `ν` of a Hermite function, validated finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder {
    nu: Complex64,
    integer: Option<u32>,
}

impl ComplexOrder {
    pub fn new(nu: Complex64) -> Result<Self> {
        if !(nu.re.is_finite() && nu.im.is_finite()) {
            return Err(Error::Invalid(format!("non-finite order {nu}")));
        }
        let n = nu.re.round();
        let integer = if n >= 0.0 && (nu.re - n).hypot(nu.im) < INTEGER_TOLERANCE && n <= u32::MAX as f64 {
            Some(n as u32)
        } else {
            None
        };
        Ok(ComplexOrder { nu, integer })
    }

    pub fn real(nu: f64) -> Result<Self> {
        Self::new(Complex64::new(nu, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.nu
    }

    pub fn is_nonneg_integer(&self) -> bool {
        self.integer.is_some()
    }

    /// The integer `n` when the order is (within tolerance) in `ℕ₀`.
    pub fn as_integer(&self) -> Option<u32> {
        self.integer
    }

    /// The reflected order `-(ν+1)` used by the second eigenfunction family.
    pub fn reflected(&self) -> Self {
        // reflection of a finite order is finite
        Self::new(-(self.nu + 1.0)).expect("finite order")
    }
}

/// Which evaluation regime produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorTag {
    Series,
    /// `|arg z| < 3π/4`: one-term form `(2z)^ν`.
    AsyPrincipal,
    /// `π/4 < arg z < 5π/4`: two-term form with `e^{iπν}`.
    AsyUpper,
    /// `-5π/4 < arg z < -π/4`: two-term form with `e^{-iπν}`.
    AsyLower,
    /// Taylor continuation of the Hermite equation along a ray.
    Continuation,
}

impl SectorTag {
    pub fn name(self) -> &'static str {
        match self {
            SectorTag::Series => "series",
            SectorTag::AsyPrincipal => "asy_principal",
            SectorTag::AsyUpper => "asy_upper",
            SectorTag::AsyLower => "asy_lower",
            SectorTag::Continuation => "continuation",
        }
    }
}

impl std::fmt::Display for SectorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A value together with an absolute error estimate and its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub est_abs_error: f64,
    pub sector_used: SectorTag,
}

/// Radius beyond which `hermite_nu` uses the asymptotic expansion only.
///
/// At and above it the optimally truncated expansion keeps about 1e-12
/// relative accuracy for `|ν| <= 30`. Below it the series is tried first
/// and the expansion only competes when the series estimate is poor.
pub fn switch_radius(nu: &ComplexOrder) -> f64 {
    (2.5 + 0.8 * nu.value().norm()).max(6.0)
}

/// Relative accuracy at which the series result is accepted without
/// consulting the expansion.
const SERIES_ACCEPT_REL: f64 = 1e-13;

/// `H_n(z)` by the recurrence `H_{k+1} = 2z H_k - 2k H_{k-1}`.
pub fn hermite_int(n: u32, z: Complex64) -> Result<Complex64> {
    if n > MAX_POLY_DEGREE {
        return Err(Error::Domain(format!("polynomial degree {n} exceeds {MAX_POLY_DEGREE}")));
    }
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = z * 2.0;
    for k in 1..n {
        let next = z * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn pow_c(base: Complex64, expo: Complex64) -> Complex64 {
    (expo * base.ln()).exp()
}

/// Reciprocal-gamma seeds of the even and odd series chains:
/// `g₀ = Γ(-ν/2)/Γ(-ν)`, `g₁ = Γ((1-ν)/2)/Γ(-ν)` via the duplication formula.
fn series_seeds(nu: Complex64) -> (Complex64, Complex64) {
    let scale = ((nu + 1.0) * LN_2).exp() * SQRT_PI;
    let g0 = scale * rgamma((Complex64::new(1.0, 0.0) - nu) * 0.5);
    let g1 = scale * rgamma(-nu * 0.5);
    (g0, g1)
}

fn series_core(nu: Complex64, z: Complex64, tol: f64, max_terms: usize) -> Result<EvalResult> {
    let (g0, g1) = series_seeds(nu);
    let (a0, a1) = (g0.norm(), g1.norm());
    let two_z = z * 2.0;
    let w = CDd::square_of(two_z);
    let w_abs = two_z.norm_sqr();

    let mut even = CDd::from_c64(Complex64::new(1.0, 0.0));
    let mut odd = CDd::from_c64(-two_z);
    let mut sum_e = even;
    let mut sum_o = odd;
    let mut max_contrib = 0.5 * (a0 + a1 * two_z.norm());
    let mut terms = 2usize;

    let step = |t: CDd, n: f64| -> CDd {
        let factor = CDd { re: Dd::diff(n, nu.re), im: Dd::new(-nu.im) };
        (t * (w * factor)).div_f64(2.0 * (n + 1.0) * (n + 2.0))
    };
    let ratio = |n: f64| w_abs * (Complex64::new(n, 0.0) - nu).norm() / (2.0 * (n + 1.0) * (n + 2.0));

    let mut n = 0.0f64;
    let tail = loop {
        even = step(even, n);
        odd = step(odd, n + 1.0);
        sum_e = sum_e + even;
        sum_o = sum_o + odd;
        terms += 2;
        n += 2.0;

        let contrib = 0.5 * (a0 * even.norm_f64() + a1 * odd.norm_f64());
        max_contrib = max_contrib.max(contrib);
        let decreasing = ratio(n) < 0.5 && ratio(n + 1.0) < 0.5;
        if decreasing {
            let partial = (g0 * sum_e.to_c64() + g1 * sum_o.to_c64()) * 0.5;
            if contrib <= tol * partial.norm() || contrib <= DD_EPS * max_contrib {
                break contrib;
            }
        }
        if terms >= max_terms {
            return Err(Error::NonConvergence { terms });
        }
    };

    let e = sum_e.to_c64();
    let o = sum_o.to_c64();
    let value = (g0 * e + g1 * o) * 0.5;
    let rounding = 4.0 * DD_EPS * terms as f64 * max_contrib + SEED_REL_ERR * 0.5 * (a0 * e.norm() + a1 * o.norm());
    Ok(EvalResult { value, est_abs_error: tail + rounding, sector_used: SectorTag::Series })
}

/// Power series `H_ν(z) = (1/(2Γ(-ν))) Σ (-1)^n/n! Γ((n-ν)/2) (2z)^n`.
///
/// Summation stops once the last two terms fall below `tol·|partial sum|`.
pub fn hermite_nu_series(nu: &ComplexOrder, z: Complex64, tol: f64) -> Result<EvalResult> {
    hermite_nu_series_capped(nu, z, tol, DEFAULT_MAX_TERMS)
}

/// [`hermite_nu_series`] with an explicit term cap.
pub fn hermite_nu_series_capped(nu: &ComplexOrder, z: Complex64, tol: f64, max_terms: usize) -> Result<EvalResult> {
    if nu.is_nonneg_integer() {
        return Err(Error::IntegerOrder(nu.value()));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("series tolerance must be positive, got {tol}")));
    }
    check_finite(z)?;
    series_core(nu.value(), z, tol, max_terms)
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("non-finite argument {z}")))
    }
}

/// Stokes constant of the `z^{-ν-1} e^{z²}` term in the upper (`sign = 1`)
/// or lower (`sign = -1`) sector.
fn stokes_constant(nu: Complex64, sign: f64) -> Complex64 {
    let phase = (Complex64::new(0.0, sign * PI) * nu).exp();
    -phase * rgamma(-nu) * SQRT_PI
}

fn in_sector(sector: SectorTag, theta: f64) -> bool {
    match sector {
        SectorTag::Series | SectorTag::Continuation => false,
        SectorTag::AsyPrincipal => theta.abs() < 3.0 * FRAC_PI_4,
        // principal-branch part of (π/4, 5π/4) and (-5π/4, -π/4)
        SectorTag::AsyUpper => theta > FRAC_PI_4,
        SectorTag::AsyLower => theta < -FRAC_PI_4,
    }
}

/// Leading asymptotic form of `H_ν(z)` in the given sector.
///
/// Principal: `(2z)^ν`. Upper/lower: `(2z)^ν - √π e^{±iπν}/Γ(-ν) z^{-ν-1} e^{z²}`.
/// Powers use the principal branch, so the upper and lower sectors are
/// restricted to their parts with `arg z ∈ (-π, π]`. The error estimate is
/// the `|z|^{-1/2}` relative correction scale.
pub fn hermite_nu_asymptotic(nu: &ComplexOrder, z: Complex64, sector: SectorTag) -> Result<EvalResult> {
    check_finite(z)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("asymptotic form needs z != 0".into()));
    }
    let theta = z.arg();
    if !in_sector(sector, theta) {
        return Err(Error::SectorMismatch { sector: sector.name(), arg: theta });
    }
    let n = nu.value();
    let mut value = pow_c(z * 2.0, n);
    match sector {
        SectorTag::AsyUpper | SectorTag::AsyLower => {
            let sign = if sector == SectorTag::AsyUpper { 1.0 } else { -1.0 };
            let k = stokes_constant(n, sign);
            value += k * (z * z - (n + 1.0) * z.ln()).exp();
        }
        _ => {}
    }
    Ok(EvalResult { value, est_abs_error: value.norm() / z.norm().sqrt(), sector_used: sector })
}

/// Optimally truncated asymptotic series `Σ_s c_s` with term ratio
/// `c_{s+1}/c_s = ratio(s)`. Returns the sum and the truncation error.
fn truncated_series(ratio: impl Fn(f64) -> Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for s in 0..MAX_ASYMPTOTIC_TERMS {
        let next = term * ratio(s as f64);
        if next.norm() >= term.norm() {
            return (sum, term.norm());
        }
        sum += next;
        term = next;
        if term.norm() <= 0.25 * F64_EPS * sum.norm() {
            return (sum, term.norm());
        }
    }
    (sum, term.norm())
}

/// Compound asymptotic expansion including the Stokes-switched subdominant
/// term. Valid for large `|z|` in every direction.
pub fn hermite_nu_expansion(nu: &ComplexOrder, z: Complex64) -> Result<EvalResult> {
    check_finite(z)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("asymptotic expansion needs z != 0".into()));
    }
    let n = nu.value();
    let inv4z2 = (z * z * 4.0).inv();
    let theta = z.arg();

    let log_lead = n * (z * 2.0).ln();
    let lead = log_lead.exp();
    let (s1, err1) = truncated_series(|s| -(n - 2.0 * s) * (n - 2.0 * s - 1.0) * inv4z2 / (s + 1.0));
    let first = lead * s1;
    let mut est = 4.0 * lead.norm() * err1 + first.norm() * F64_EPS * (4.0 + log_lead.norm());

    let (multiplier, sector) = if theta > FRAC_PI_2 {
        (1.0, SectorTag::AsyUpper)
    } else if theta < -FRAC_PI_2 {
        (1.0, SectorTag::AsyLower)
    } else if theta == FRAC_PI_2 || theta == -FRAC_PI_2 {
        // on the Stokes line the multiplier is one half
        (0.5, if theta > 0.0 { SectorTag::AsyUpper } else { SectorTag::AsyLower })
    } else {
        (0.0, SectorTag::AsyPrincipal)
    };

    let mut value = first;
    if multiplier > 0.0 {
        let sign = if theta > 0.0 { 1.0 } else { -1.0 };
        let k = stokes_constant(n, sign) * multiplier;
        let log_sub = z * z - (n + 1.0) * z.ln();
        let sub = k * log_sub.exp();
        let (s2, err2) = truncated_series(|s| (n + 1.0 + 2.0 * s) * (n + 2.0 + 2.0 * s) * inv4z2 / (s + 1.0));
        let second = sub * s2;
        est += 4.0 * sub.norm() * err2 + second.norm() * (F64_EPS * (4.0 + log_sub.norm()) + SEED_REL_ERR);
        value += second;
    }
    Ok(EvalResult { value, est_abs_error: est, sector_used: sector })
}

/// Taylor step of `H'' - 2zH' + 2νH = 0` from `z0` by `dz` applied to
/// several states `(H, H')` at once.
fn taylor_step(nu: Complex64, z0: Complex64, dz: Complex64, states: &mut [(Complex64, Complex64)]) {
    let a = z0 * dz * 2.0;
    let b = dz * dz * 2.0;
    for st in states.iter_mut() {
        // b_k = a_k dz^k, with a_k the Taylor coefficients at z0
        let mut prev = st.0;
        let mut cur = st.1 * dz;
        let mut value = prev + cur;
        let mut slope = cur;
        let scale = prev.norm() + cur.norm();
        for k in 0..TAYLOR_MAX_TERMS {
            let kf = k as f64;
            let next = (a * cur * (kf + 1.0) + b * prev * (Complex64::new(kf, 0.0) - nu)) / ((kf + 1.0) * (kf + 2.0));
            value += next;
            slope += next * (kf + 2.0);
            if k > 4 && next.norm() + cur.norm() <= 0.1 * F64_EPS * (value.norm() + slope.norm()).max(F64_EPS * scale) {
                break;
            }
            prev = cur;
            cur = next;
        }
        *st = (value, slope / dz);
    }
}

/// Continues `(H, H')` from `start` to `end` along a straight segment.
///
/// `init_err` bounds the absolute errors of the initial value and
/// derivative. The estimate propagates them through the transfer matrix
/// of the segment and adds the accumulated rounding.
fn continue_segment(
    nu: Complex64,
    start: Complex64,
    end: Complex64,
    init: (Complex64, Complex64),
    init_err: (f64, f64),
) -> EvalResult {
    let reach = start.norm().max(end.norm()) + (nu.norm() + 1.0).sqrt();
    let h = TAYLOR_STEP_SCALE / reach;
    let steps = ((end - start).norm() / h).ceil().max(1.0) as usize;
    let dz = (end - start) / steps as f64;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut states = [init, (one, zero), (zero, one)];
    let mut rounding = 0.0;
    for k in 0..steps {
        let z0 = start + dz * k as f64;
        taylor_step(nu, z0, dz, &mut states);
        rounding += states[0].0.norm() + states[0].1.norm() * dz.norm();
    }
    let (u, v) = (states[1].0.norm(), states[2].0.norm());
    let amp = u.max(v * dz.norm()).max(1.0);
    let est = u * init_err.0 + v * init_err.1 + 16.0 * F64_EPS * amp * rounding;
    EvalResult { value: states[0].0, est_abs_error: est, sector_used: SectorTag::Continuation }
}

/// `H_ν(z)` by Taylor continuation along the ray through `z`, inward from
/// the switch radius and outward from the origin; the route with the
/// smaller error estimate is returned.
fn hermite_nu_continued(nu: &ComplexOrder, z: Complex64) -> Result<EvalResult> {
    let n = nu.value();
    let radius = switch_radius(nu).max(z.norm());
    let start = Complex64::from_polar(radius, z.arg());
    let h = hermite_nu_expansion(nu, start)?;
    let lower = hermite_nu_expansion(&ComplexOrder::new(n - 1.0)?, start)?;
    let two_nu = n * 2.0;
    let inward = continue_segment(
        n,
        start,
        z,
        (h.value, two_nu * lower.value),
        (h.est_abs_error, two_nu.norm() * lower.est_abs_error),
    );

    let (g0, g1) = series_seeds(n);
    let outward = continue_segment(
        n,
        Complex64::new(0.0, 0.0),
        z,
        (g0 * 0.5, -g1),
        (SEED_REL_ERR * 0.5 * g0.norm(), SEED_REL_ERR * g1.norm()),
    );
    Ok(if inward.est_abs_error < outward.est_abs_error { inward } else { outward })
}

/// `H_ν(z)` anywhere in the plane, dispatching between the polynomial,
/// the series and the asymptotic expansion.
///
/// For `|z| >= R` the expansion is used. Below `R` the series is used
/// unless its error estimate exceeds `1e-13` relative, in which case the
/// expansion is also evaluated and the result with the smaller estimate
/// wins.
pub fn hermite_nu(nu: &ComplexOrder, z: Complex64) -> Result<EvalResult> {
    check_finite(z)?;
    if let Some(n) = nu.as_integer() {
        let value = hermite_int(n, z)?;
        let scale = (2.0 * z.norm()).max(1.0).powi(n as i32).max(value.norm());
        return Ok(EvalResult {
            value,
            est_abs_error: 4.0 * F64_EPS * (n as f64 + 1.0) * scale,
            sector_used: SectorTag::Series,
        });
    }
    if z.norm() < switch_radius(nu) {
        let series = series_core(nu.value(), z, 1e-17, DEFAULT_MAX_TERMS)?;
        if series.est_abs_error <= SERIES_ACCEPT_REL * series.value.norm() || z.norm() < 1.0 {
            return Ok(series);
        }
        let mut best = series;
        for candidate in [hermite_nu_expansion(nu, z)?, hermite_nu_continued(nu, z)?] {
            if candidate.est_abs_error < best.est_abs_error {
                best = candidate;
            }
        }
        Ok(best)
    } else {
        hermite_nu_expansion(nu, z)
    }
}

/// Convenience wrapper returning only the value of `H_ν(z)`.
pub fn hermite_value(nu: &ComplexOrder, z: Complex64) -> Result<Complex64> {
    hermite_nu(nu, z).map(|r| r.value)
}
