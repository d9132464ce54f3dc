//! Eigenfunctions of the inverted oscillator `H = -d²/dx² - x²`.
//!
//! For `Hψ = λψ` with `λ = -i(2ν+1)` two independent solutions are
//!
//! ```text
//! ψ_ν(x)      = e^{ix²/2}  H_ν(e^{3πi/4} x)
//! ψ_{-(ν+1)}(x) = e^{-ix²/2} H_{-(ν+1)}(e^{5πi/4} x)
//! ```
//!
//! Their behavior at `x → ±∞` is carried by six amplitudes (see
//! [`AsymptoticCoefficients`]). All complex powers use the principal branch
//! of the argument of `e^{3πi/4}x` and `e^{5πi/4}x` in `(-π, π]`.

use crate::error::{Error, Result};
use crate::specfun::{hermite_nu, rgamma, switch_radius, ComplexOrder, EvalResult};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};
use std::io;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Largest allowed step of grids passed to [`ode_residual`].
pub const MAX_RESIDUAL_STEP: f64 = 0.01;

/// `ν = (iλ - 1)/2`.
pub fn nu_from_lambda(lambda: Complex64) -> Result<ComplexOrder> {
    ComplexOrder::new((Complex64::i() * lambda - 1.0) * 0.5)
}

/// `λ = -i(2ν + 1)`.
pub fn lambda_from_nu(nu: &ComplexOrder) -> Complex64 {
    -Complex64::i() * (nu.value() * 2.0 + 1.0)
}

/// A spectral parameter together with its Hermite order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    lambda: Complex64,
    nu: ComplexOrder,
}

impl SpectralPoint {
    pub fn from_lambda(lambda: Complex64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::Invalid(format!("non-finite spectral parameter {lambda}")));
        }
        let nu = nu_from_lambda(lambda)?;
        Ok(SpectralPoint { lambda, nu })
    }

    pub fn from_nu(nu: ComplexOrder) -> Self {
        SpectralPoint { lambda: lambda_from_nu(&nu), nu }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn nu(&self) -> &ComplexOrder {
        &self.nu
    }

    /// The order `-(ν+1)` of the second family.
    pub fn reflected_nu(&self) -> ComplexOrder {
        self.nu.reflected()
    }

    /// The point `λ̄`. Conjugation swaps the families: `conj ψ_ν` at `λ` is
    /// `ψ_{-(ν+1)}` at `λ̄` and vice versa.
    pub fn conj(&self) -> Self {
        SpectralPoint::from_lambda(self.lambda.conj()).expect("conjugate of a finite point is finite")
    }
}

/// `e^{iφ}|x|` for the ray angle that `x` selects.
fn on_ray(x: f64, angle_pos: f64, angle_neg: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::from_polar(x, angle_pos)
    } else {
        Complex64::from_polar(-x, angle_neg)
    }
}

fn gauss_phase(x: f64, sign: f64) -> Complex64 {
    Complex64::from_polar(1.0, sign * 0.5 * x * x)
}

/// `ψ_ν(x) = e^{ix²/2} H_ν(e^{3πi/4} x)`.
pub fn psi_nu(point: &SpectralPoint, x: f64) -> Result<Complex64> {
    Ok(psi_eval(point, x, Family::PsiNu)?.value)
}

/// `ψ_{-(ν+1)}(x) = e^{-ix²/2} H_{-(ν+1)}(e^{5πi/4} x)`.
pub fn psi_neg(point: &SpectralPoint, x: f64) -> Result<Complex64> {
    Ok(psi_eval(point, x, Family::PsiNeg)?.value)
}

/// Either family with the error estimate and route of the Hermite evaluation
/// (the Gaussian phase has modulus one).
pub fn psi_eval(point: &SpectralPoint, x: f64, family: Family) -> Result<EvalResult> {
    let (order, z, sign) = match family {
        Family::PsiNu => (point.nu, on_ray(x, 3.0 * FRAC_PI_4, -FRAC_PI_4), 1.0),
        Family::PsiNeg => (point.reflected_nu(), on_ray(x, -3.0 * FRAC_PI_4, FRAC_PI_4), -1.0),
    };
    let h = hermite_nu(&order, z)?;
    Ok(EvalResult { value: gauss_phase(x, sign) * h.value, ..h })
}

/// `ψ_ν'(x)`, using `H_ν' = 2ν H_{ν-1}`.
pub fn psi_nu_prime(point: &SpectralPoint, x: f64) -> Result<Complex64> {
    let omega = Complex64::from_polar(1.0, 3.0 * FRAC_PI_4);
    let z = on_ray(x, 3.0 * FRAC_PI_4, -FRAC_PI_4);
    hermite_prime(&point.nu, z, omega, x, 1.0)
}

/// `ψ_{-(ν+1)}'(x)`.
pub fn psi_neg_prime(point: &SpectralPoint, x: f64) -> Result<Complex64> {
    let omega = Complex64::from_polar(1.0, -3.0 * FRAC_PI_4);
    let z = on_ray(x, -3.0 * FRAC_PI_4, FRAC_PI_4);
    hermite_prime(&point.reflected_nu(), z, omega, x, -1.0)
}

/// Derivative of `e^{sign·ix²/2} H_n(ωx)` at `x`, with `z = ωx`.
fn hermite_prime(n: &ComplexOrder, z: Complex64, omega: Complex64, x: f64, sign: f64) -> Result<Complex64> {
    let h = hermite_nu(n, z)?.value;
    let lowered = ComplexOrder::new(n.value() - 1.0)?;
    let dh = n.value() * 2.0 * hermite_nu(&lowered, z)?.value;
    Ok(gauss_phase(x, sign) * (Complex64::new(0.0, sign * x) * h + omega * dh))
}

/// Amplitudes of the far-field forms:
///
/// ```text
/// ψ_ν(x)        ~ a x^ν e^{ix²/2} + b x^{-ν-1} e^{-ix²/2}      x → +∞
/// ψ_ν(x)        ~ c |x|^ν e^{ix²/2}                          x → -∞
/// ψ_{-(ν+1)}(x) ~ d x^{-ν-1} e^{-ix²/2} + e x^ν e^{ix²/2}      x → +∞
/// ψ_{-(ν+1)}(x) ~ f |x|^{-ν-1} e^{-ix²/2}                    x → -∞
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
}

fn cis(phase: Complex64) -> Complex64 {
    (Complex64::i() * phase).exp()
}

/// Evaluates the six amplitudes.
///
/// `b` carries `1/Γ(-ν)` and `e` carries `1/Γ(ν+1)`; each is exactly zero
/// when that reciprocal gamma vanishes. The phases of `c`, `d` and `e`
/// follow from the principal arguments `-π/4`, `-3π/4` and `-3π/4` of the
/// rays `e^{3πi/4}x` (x < 0) and `e^{5πi/4}x` (x > 0).
pub fn asymptotic_coefficients(nu: &ComplexOrder) -> Result<AsymptoticCoefficients> {
    let n = nu.value();
    let np1 = n + 1.0;
    let pow2 = |p: Complex64| (p * std::f64::consts::LN_2).exp();
    let q = PI / 4.0;
    let coeffs = AsymptoticCoefficients {
        a: pow2(n) * cis(n * 3.0 * q),
        b: -cis(n * PI) * rgamma(-n) * SQRT_PI * cis(-np1 * 3.0 * q),
        c: pow2(n) * cis(-n * q),
        d: pow2(-np1) * cis(np1 * 3.0 * q),
        e: -cis(np1 * PI) * rgamma(np1) * SQRT_PI * cis(-n * 3.0 * q),
        f: pow2(-np1) * cis(-np1 * q),
    };
    let all = [coeffs.a, coeffs.b, coeffs.c, coeffs.d, coeffs.e, coeffs.f];
    if all.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Invalid(format!("asymptotic coefficients overflow for nu = {n}")));
    }
    Ok(coeffs)
}

/// Which eigenfunction family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    PsiNu,
    PsiNeg,
}

/// `|x|^p` with a real logarithm.
fn abs_pow(x: f64, p: Complex64) -> Complex64 {
    (p * x.abs().ln()).exp()
}

/// Far-field form of the requested family at `x`, for `|x| >= R` with `R`
/// the Hermite switch radius of the family's order.
pub fn asymptotic_form(point: &SpectralPoint, x: f64, family: Family) -> Result<Complex64> {
    let order = match family {
        Family::PsiNu => point.nu,
        Family::PsiNeg => point.reflected_nu(),
    };
    let radius = switch_radius(&order);
    if !(x.abs() >= radius) {
        return Err(Error::Domain(format!("asymptotic form needs |x| >= {radius}, got {x}")));
    }
    let k = asymptotic_coefficients(&point.nu)?;
    let n = point.nu.value();
    let up = gauss_phase(x, 1.0);
    let down = gauss_phase(x, -1.0);
    let small = abs_pow(x, n);
    let large = abs_pow(x, -n - 1.0);
    Ok(match (family, x > 0.0) {
        (Family::PsiNu, true) => k.a * small * up + k.b * large * down,
        (Family::PsiNu, false) => k.c * small * up,
        (Family::PsiNeg, true) => k.d * large * down + k.e * small * up,
        (Family::PsiNeg, false) => k.f * large * down,
    })
}

/// Samples of a complex function on a strictly increasing real grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Grid(format!("{} nodes but {} values", grid.len(), values.len())));
        }
        if grid.len() < 2 {
            return Err(Error::Grid("need at least two nodes".into()));
        }
        if grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::Grid("non-finite node".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Grid("grid is not strictly increasing".into()));
        }
        Ok(SampledFunction { grid, values })
    }

    /// Samples `f` at every node of `grid`.
    pub fn sample(grid: Vec<f64>, f: impl Fn(f64) -> Result<Complex64>) -> Result<Self> {
        let values = grid.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        SampledFunction::new(grid, values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self.grid.iter().zip(&self.values).map(|(&x, &v)| f(x, v)).collect();
        SampledFunction { grid: self.grid.clone(), values }
    }

    /// Writes CSV with header `x,re,im` and 17 significant digits.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io_err = |e: csv::Error| Error::Invalid(format!("csv write: {e}"));
        w.write_record(["x", "re", "im"]).map_err(io_err)?;
        for (x, v) in self.grid.iter().zip(&self.values) {
            w.write_record([format!("{x:.16e}"), format!("{:.16e}", v.re), format!("{:.16e}", v.im)])
                .map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv write: {e}")))?;
        Ok(())
    }

    /// Reads the format produced by [`SampledFunction::write_csv`].
    pub fn read_csv<R: io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers().map_err(|e| Error::Invalid(format!("csv read: {e}")))?;
        if headers.iter().collect::<Vec<_>>() != ["x", "re", "im"] {
            return Err(Error::Invalid("expected header x,re,im".into()));
        }
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| Error::Invalid(format!("csv read: {e}")))?;
            let num = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::Invalid("short csv record".into()))?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Invalid(format!("csv number: {e}")))
            };
            grid.push(num(0)?);
            values.push(Complex64::new(num(1)?, num(2)?));
        }
        SampledFunction::new(grid, values)
    }
}

/// Uniform grid `start, start + h, …` with `n` nodes.
pub fn uniform_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    let h = (stop - start) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { stop } else { start + h * i as f64 }).collect()
}

/// Uniform step of `grid`, or a `Grid` error.
pub(crate) fn uniform_step(grid: &[f64]) -> Result<f64> {
    let n = grid.len();
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-6 * h {
            return Err(Error::Grid("grid is not uniform".into()));
        }
    }
    Ok(h)
}

/// Residual of `f'' + x² f + λ f = 0` on a uniform grid.
///
/// Second derivatives use the 5-point central stencil; the maximum over
/// interior nodes is scaled by `max(1, max |f|)`.
pub fn ode_residual(f: &SampledFunction, lambda: Complex64) -> Result<f64> {
    let (x, v) = (f.grid(), f.values());
    if x.len() < 5 {
        return Err(Error::Grid(format!("need at least 5 nodes, got {}", x.len())));
    }
    let h = uniform_step(x)?;
    if h > MAX_RESIDUAL_STEP {
        return Err(Error::Grid(format!("step {h} exceeds {MAX_RESIDUAL_STEP}")));
    }
    let scale = v.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let inv = 1.0 / (12.0 * h * h);
    let mut worst = 0.0f64;
    for i in 2..x.len() - 2 {
        let d2 = (-v[i + 2] + v[i + 1] * 16.0 - v[i] * 30.0 + v[i - 1] * 16.0 - v[i - 2]) * inv;
        let r = d2 + v[i] * (x[i] * x[i]) + lambda * v[i];
        worst = worst.max(r.norm());
    }
    Ok(worst / scale)
}
