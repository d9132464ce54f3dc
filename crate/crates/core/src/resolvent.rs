//! Green's kernel and resolvent of `H = -d²/dx² - x²` for `Im λ >= 0`.
//!
//! `φ́` is the solution with unit decaying tail `|x|^ν e^{ix²/2}` at `-∞`,
//! `φ̀` the one with the same tail at `+∞`. With the Wronskian
//! `w = φ́'φ̀ - φ́φ̀'` the kernel
//!
//! ```text
//! s_λ(x, x') = φ́(min(x, x')) φ̀(max(x, x')) / w
//! ```
//!
//! satisfies `(H - λ) s_λ(·, x') = δ(· - x')`. Points with `Im λ < 0` are
//! handled by conjugation: `(H - λ)^{-1} ψ = conj((H - λ̄)^{-1} conj ψ)`.

use crate::eigen::{
    asymptotic_coefficients, psi_neg, psi_neg_prime, psi_nu, psi_nu_prime, uniform_step, AsymptoticCoefficients,
    SampledFunction, SpectralPoint,
};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::io;

/// `|det|` below which the pair construction is reported as singular.
pub const SINGULAR_DET: f64 = 1e-13;

/// Smallest grid accepted by [`kernel_constant`] along each axis.
pub const MIN_KERNEL_GRID: usize = 100;

/// `φ̀ = α ψ_ν + β ψ_{-(ν+1)}`, `φ́ = ψ_ν / c` and their tail amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalPair {
    point: SpectralPoint,
    coefficients: AsymptoticCoefficients,
    pub alpha_grave: Complex64,
    pub beta_grave: Complex64,
    /// `φ́ ~ ć₁ x^ν e^{ix²/2} + ć₂ x^{-ν-1} e^{-ix²/2}` at `+∞`.
    pub c_acute_1: Complex64,
    pub c_acute_2: Complex64,
    /// `φ̀ ~ c̀₁ |x|^ν e^{ix²/2} + c̀₂ |x|^{-ν-1} e^{-ix²/2}` at `-∞`.
    pub c_grave_1: Complex64,
    pub c_grave_2: Complex64,
    pub wronskian: Complex64,
}

impl FundamentalPair {
    /// Builds the pair for `Im λ >= 0`.
    pub fn build(lambda: Complex64) -> Result<Self> {
        if !(lambda.im >= 0.0) {
            return Err(Error::Domain(format!(
                "fundamental pair needs Im λ >= 0, got {lambda}; use the conjugate point"
            )));
        }
        let point = SpectralPoint::from_lambda(lambda)?;
        let k = asymptotic_coefficients(point.nu())?;
        // α b + β d = 0 kills the x^{-ν-1} tail at +∞, α a + β e = 1 normalizes.
        // By Γ(-ν)Γ(1+ν) = -π/sin(πν) the determinant b e - d a reduces to
        // -(i/2) e^{iπ(1-2ν)/4}; the direct difference loses up to |b e / det|.
        let nu = point.nu().value();
        let det = Complex64::new(0.0, -0.5) * (Complex64::new(0.0, 0.25 * PI) * (1.0 - nu * 2.0)).exp();
        if det.norm() < SINGULAR_DET {
            return Err(Error::SingularSystem(det.norm()));
        }
        let alpha = -k.d / det;
        let beta = k.b / det;
        let c_acute_1 = k.a / k.c;
        let c_acute_2 = k.b / k.c;
        Ok(FundamentalPair {
            point,
            coefficients: k,
            alpha_grave: alpha,
            beta_grave: beta,
            c_acute_1,
            c_acute_2,
            c_grave_1: alpha * k.c,
            c_grave_2: beta * k.f,
            wronskian: Complex64::new(0.0, -2.0) * c_acute_2,
        })
    }

    pub fn lambda(&self) -> Complex64 {
        self.point.lambda()
    }

    pub fn point(&self) -> &SpectralPoint {
        &self.point
    }

    pub fn coefficients(&self) -> &AsymptoticCoefficients {
        &self.coefficients
    }
}

/// `φ́(x) = ψ_ν(x) / c`.
pub fn phi_acute(pair: &FundamentalPair, x: f64) -> Result<Complex64> {
    Ok(psi_nu(&pair.point, x)? / pair.coefficients.c)
}

/// `φ̀(x) = α ψ_ν(x) + β ψ_{-(ν+1)}(x)`.
pub fn phi_grave(pair: &FundamentalPair, x: f64) -> Result<Complex64> {
    Ok(pair.alpha_grave * psi_nu(&pair.point, x)? + pair.beta_grave * psi_neg(&pair.point, x)?)
}

/// `φ́'(x)`.
pub fn phi_acute_prime(pair: &FundamentalPair, x: f64) -> Result<Complex64> {
    Ok(psi_nu_prime(&pair.point, x)? / pair.coefficients.c)
}

/// `φ̀'(x)`.
pub fn phi_grave_prime(pair: &FundamentalPair, x: f64) -> Result<Complex64> {
    Ok(pair.alpha_grave * psi_nu_prime(&pair.point, x)? + pair.beta_grave * psi_neg_prime(&pair.point, x)?)
}

/// `φ́'(x)φ̀(x) - φ́(x)φ̀'(x)` from analytic derivatives.
pub fn pointwise_wronskian(pair: &FundamentalPair, x: f64) -> Result<Complex64> {
    Ok(phi_acute_prime(pair, x)? * phi_grave(pair, x)? - phi_acute(pair, x)? * phi_grave_prime(pair, x)?)
}

/// One kernel value with its envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEvaluation {
    pub x: f64,
    pub xp: f64,
    pub value: Complex64Repr,
    pub envelope: f64,
}

/// Plain `(re, im)` pair so that kernel rows serialize without extra crates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex64Repr {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Repr {
    fn from(c: Complex64) -> Self {
        Complex64Repr { re: c.re, im: c.im }
    }
}

impl From<Complex64Repr> for Complex64 {
    fn from(c: Complex64Repr) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl KernelEvaluation {
    pub fn value(&self) -> Complex64 {
        self.value.into()
    }
}

/// Envelope `(1+|x|)^{-1/2} (1+|x'|)^{-1/2} ρ^{Im λ/2}` with
/// `ρ = min((1+|x|)/(1+|x'|), (1+|x'|)/(1+|x|))`.
///
/// The shift by one keeps the decay factor bounded away from zero near the
/// origin, where the kernel itself does not vanish; for large arguments it
/// agrees with the ratio `min(|x/x'|, |x'/x|)`.
pub fn kernel_envelope(im_lambda: f64, x: f64, xp: f64) -> f64 {
    let (u, v) = (1.0 + x.abs(), 1.0 + xp.abs());
    let ratio = if u < v { u / v } else { v / u };
    ratio.powf(0.5 * im_lambda) / (u * v).sqrt()
}

/// The envelope with the unshifted ratio `min(|x/x'|, |x'/x|)`, taken as 1
/// when either coordinate is within `1e-12` of the origin.
///
/// Near the origin this bound is not satisfied by the kernel: for fixed
/// `x' != 0` the kernel tends to a nonzero limit as `x → 0` while the ratio
/// vanishes like `|x|^{Im λ/2}`.
pub fn literal_envelope(im_lambda: f64, x: f64, xp: f64) -> f64 {
    let (ax, axp) = (x.abs(), xp.abs());
    let ratio = if ax.min(axp) < 1e-12 {
        1.0
    } else if ax < axp {
        ax / axp
    } else {
        axp / ax
    };
    ratio.powf(0.5 * im_lambda) / ((1.0 + ax) * (1.0 + axp)).sqrt()
}

/// Combines precomputed `φ́` and `φ̀` values into `s_λ(x, x')`.
fn kernel_from_values(pair: &FundamentalPair, x: f64, xp: f64, acute: [Complex64; 2], grave: [Complex64; 2]) -> Complex64 {
    // acute = [φ́(x), φ́(x')], grave = [φ̀(x), φ̀(x')]
    if x <= xp {
        acute[0] * grave[1] / pair.wronskian
    } else {
        acute[1] * grave[0] / pair.wronskian
    }
}

/// `s_λ(x, x')` and its envelope.
pub fn greens_kernel(pair: &FundamentalPair, x: f64, xp: f64) -> Result<KernelEvaluation> {
    let (lo, hi) = if x <= xp { (x, xp) } else { (xp, x) };
    let value = phi_acute(pair, lo)? * phi_grave(pair, hi)? / pair.wronskian;
    Ok(KernelEvaluation {
        x,
        xp,
        value: value.into(),
        envelope: kernel_envelope(pair.lambda().im, x, xp),
    })
}

/// `φ́` and `φ̀` at every node, evaluated in parallel.
pub fn tabulate_pair(pair: &FundamentalPair, xs: &[f64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let both: Vec<(Complex64, Complex64)> = xs
        .par_iter()
        .map(|&x| {
            let u = psi_nu(&pair.point, x)?;
            let v = psi_neg(&pair.point, x)?;
            Ok((u / pair.coefficients.c, pair.alpha_grave * u + pair.beta_grave * v))
        })
        .collect::<Result<_>>()?;
    Ok(both.into_iter().unzip())
}

fn box_grid(sample_box: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * sample_box / (n - 1) as f64;
    (0..n).map(|i| -sample_box + h * i as f64).collect()
}

/// Kernel values on the `n × n` tensor grid over `[-box, box]²`, row-major
/// in `x` then `x'`.
pub fn kernel_table(pair: &FundamentalPair, sample_box: f64, n: usize) -> Result<Vec<KernelEvaluation>> {
    if n < 2 || !(sample_box > 0.0) {
        return Err(Error::Invalid("kernel table needs n >= 2 and a positive box".into()));
    }
    let xs = box_grid(sample_box, n);
    let (acute, grave) = tabulate_pair(pair, &xs)?;
    let im = pair.lambda().im;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = kernel_from_values(pair, xs[i], xs[j], [acute[i], acute[j]], [grave[i], grave[j]]);
            out.push(KernelEvaluation {
                x: xs[i],
                xp: xs[j],
                value: v.into(),
                envelope: kernel_envelope(im, xs[i], xs[j]),
            });
        }
    }
    Ok(out)
}

/// `max |s_λ| / envelope` over the `n × n` grid on `[-box, box]²`.
pub fn kernel_constant(pair: &FundamentalPair, sample_box: f64, n: usize) -> Result<f64> {
    kernel_constant_with(pair, sample_box, n, kernel_envelope)
}

/// [`kernel_constant`] with a caller-supplied envelope `(Im λ, x, x') -> f64`.
pub fn kernel_constant_with(
    pair: &FundamentalPair,
    sample_box: f64,
    n: usize,
    envelope: impl Fn(f64, f64, f64) -> f64 + Sync,
) -> Result<f64> {
    if n < MIN_KERNEL_GRID {
        return Err(Error::Invalid(format!("kernel constant needs n >= {MIN_KERNEL_GRID}, got {n}")));
    }
    if !(sample_box > 0.0 && sample_box.is_finite()) {
        return Err(Error::Invalid(format!("sample box must be positive, got {sample_box}")));
    }
    let xs = box_grid(sample_box, n);
    let (acute, grave) = tabulate_pair(pair, &xs)?;
    let im = pair.lambda().im;
    let worst = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut m = 0.0f64;
            for j in 0..n {
                let v = kernel_from_values(pair, xs[i], xs[j], [acute[i], acute[j]], [grave[i], grave[j]]);
                m = m.max(v.norm() / envelope(im, xs[i], xs[j]));
            }
            m
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// Writes kernel rows as CSV `x,xp,re,im,envelope`.
pub fn write_kernel_csv<W: io::Write>(rows: &[KernelEvaluation], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Invalid(format!("csv write: {e}"));
    w.write_record(["x", "xp", "re", "im", "envelope"]).map_err(err)?;
    for r in rows {
        w.write_record([
            format!("{:.16e}", r.x),
            format!("{:.16e}", r.xp),
            format!("{:.16e}", r.value.re),
            format!("{:.16e}", r.value.im),
            format!("{:.16e}", r.envelope),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv write: {e}")))?;
    Ok(())
}

/// Truncation and step control for [`apply_resolvent`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Integration is restricted to `[-L, L]`.
    pub half_width: f64,
    /// Largest quadrature step.
    pub base_step: f64,
    /// Largest phase advance of `e^{±ix²/2}` per step.
    pub phase_resolution: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { half_width: 20.0, base_step: 0.01, phase_resolution: 0.05 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let finite_pos = |v: f64| v.is_finite() && v > 0.0;
        if !finite_pos(self.half_width) || !finite_pos(self.base_step) || !finite_pos(self.phase_resolution) {
            return Err(Error::Config(format!("quadrature parameters must be positive and finite: {self:?}")));
        }
        if self.phase_resolution > FRAC_PI_2 {
            return Err(Error::Config(format!(
                "phase resolution {} exceeds π/2; e^(±ix²/2) would be under-resolved",
                self.phase_resolution
            )));
        }
        Ok(())
    }

    /// Step used at position `x`.
    pub fn step_at(&self, x: f64) -> f64 {
        self.base_step.min(self.phase_resolution / (1.0 + x.abs()))
    }

    /// Halves both the base step and the phase resolution.
    pub fn refined(&self) -> Self {
        QuadratureConfig { base_step: 0.5 * self.base_step, phase_resolution: 0.5 * self.phase_resolution, ..*self }
    }
}

/// Output of [`apply_resolvent`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventOutput {
    pub eta: SampledFunction,
    /// Heuristic bound on the quadrature error, uniform over the grid.
    pub est_error: f64,
}

/// Linear interpolation of the samples, zero outside the grid.
fn interpolate(f: &SampledFunction, x: f64) -> Complex64 {
    let (g, v) = (f.grid(), f.values());
    if x < g[0] || x > g[g.len() - 1] {
        return Complex64::new(0.0, 0.0);
    }
    let k = g.partition_point(|&t| t <= x);
    if k == 0 {
        return v[0];
    }
    if k >= g.len() {
        return v[g.len() - 1];
    }
    let t = (x - g[k - 1]) / (g[k] - g[k - 1]);
    v[k - 1] * (1.0 - t) + v[k] * t
}

/// Quadrature nodes on `[a, b]`: every grid node inside plus a subdivision
/// of each grid interval fine enough for the configured step.
fn quadrature_nodes(grid: &[f64], a: f64, b: f64, cfg: &QuadratureConfig) -> Vec<f64> {
    let mut breaks: Vec<f64> = vec![a];
    breaks.extend(grid.iter().copied().filter(|&x| x > a && x < b));
    breaks.push(b);
    let mut nodes = vec![a];
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let step = cfg.step_at(lo.abs().max(hi.abs()));
        let m = ((hi - lo) / step).ceil().max(1.0) as usize;
        for k in 1..m {
            nodes.push(lo + (hi - lo) * k as f64 / m as f64);
        }
        nodes.push(hi);
    }
    nodes
}

/// `(s_λ ψ)(x) = ∫ s_λ(x, x') ψ(x') dx'` on the grid of `psi`.
///
/// With `A(x) = ∫_{-L}^x φ́ψ` and `B(x) = ∫_x^L φ̀ψ` the result is
/// `η(x) = (φ̀(x) A(x) + φ́(x) B(x)) / w`. Both running integrals use the
/// trapezoid rule on nodes that contain every grid point, with `ψ`
/// interpolated linearly in between and taken as zero outside its grid.
pub fn apply_resolvent(pair: &FundamentalPair, psi: &SampledFunction, cfg: &QuadratureConfig) -> Result<ResolventOutput> {
    cfg.validate()?;
    let grid = psi.grid();
    let zero = Complex64::new(0.0, 0.0);
    let a = grid[0].max(-cfg.half_width);
    let b = grid[grid.len() - 1].min(cfg.half_width);
    if !(a < b) || psi.values().iter().all(|v| *v == zero) {
        let eta = SampledFunction::new(grid.to_vec(), vec![zero; grid.len()])?;
        return Ok(ResolventOutput { eta, est_error: 0.0 });
    }

    let nodes = quadrature_nodes(grid, a, b, cfg);
    let (acute, grave) = tabulate_pair(pair, &nodes)?;
    let f: Vec<Complex64> = nodes.iter().map(|&x| interpolate(psi, x)).collect();
    let m = nodes.len();

    // running integrals at every node
    let mut left = vec![zero; m];
    for i in 1..m {
        let h = nodes[i] - nodes[i - 1];
        left[i] = left[i - 1] + (acute[i - 1] * f[i - 1] + acute[i] * f[i]) * (0.5 * h);
    }
    let mut right = vec![zero; m];
    for i in (0..m - 1).rev() {
        let h = nodes[i + 1] - nodes[i];
        right[i] = right[i + 1] + (grave[i] * f[i] + grave[i + 1] * f[i + 1]) * (0.5 * h);
    }

    // trapezoid error ~ Σ h³ |g''| / 12, with g'' from second differences
    let curvature = |g: &dyn Fn(usize) -> Complex64| -> f64 {
        (1..m - 1)
            .map(|i| {
                let (h0, h1) = (nodes[i] - nodes[i - 1], nodes[i + 1] - nodes[i]);
                let d2 = ((g(i + 1) - g(i)) / h1 - (g(i) - g(i - 1)) / h0) * (2.0 / (h0 + h1));
                d2.norm() * (0.5 * (h0 + h1)).powi(3) / 12.0
            })
            .sum()
    };
    let err_left = curvature(&|i| acute[i] * f[i]);
    let err_right = curvature(&|i| grave[i] * f[i]);
    let amp_acute = acute.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let amp_grave = grave.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let est_error = (amp_grave * err_left + amp_acute * err_right) / pair.wronskian.norm();

    // grid nodes outside [a, b] see only one of the two integrals
    let outside: Vec<f64> = grid.iter().copied().filter(|&x| x < a || x > b).collect();
    let (acute_out, grave_out) = tabulate_pair(pair, &outside)?;
    let mut out_iter = outside.iter().zip(acute_out.iter().zip(grave_out.iter()));
    let total_left = left[m - 1];
    let total_right = right[0];

    let mut values = Vec::with_capacity(grid.len());
    let mut k = 0usize;
    for &x in grid {
        if x < a || x > b {
            let (_, (ac, gr)) = out_iter.next().expect("outside node was tabulated");
            let v = if x < a { *ac * total_right } else { *gr * total_left };
            values.push(v / pair.wronskian);
            continue;
        }
        while nodes[k] < x {
            k += 1;
        }
        values.push((grave[k] * left[k] + acute[k] * right[k]) / pair.wronskian);
    }
    Ok(ResolventOutput { eta: SampledFunction::new(grid.to_vec(), values)?, est_error })
}

/// `(H - λ)^{-1} ψ` for any `λ`, routing `Im λ < 0` through conjugation.
pub fn resolve(lambda: Complex64, psi: &SampledFunction, cfg: &QuadratureConfig) -> Result<ResolventOutput> {
    if lambda.im >= 0.0 {
        let pair = FundamentalPair::build(lambda)?;
        return apply_resolvent(&pair, psi, cfg);
    }
    let pair = FundamentalPair::build(lambda.conj())?;
    let conj_psi = psi.map(|_, v| v.conj());
    let out = apply_resolvent(&pair, &conj_psi, cfg)?;
    Ok(ResolventOutput { eta: out.eta.map(|_, v| v.conj()), est_error: out.est_error })
}

/// Residual of `-η'' - x²η - λη = ψ` on a uniform grid with step at most
/// `0.005`, ignoring nodes within `5h` of the ends of `ψ`'s support.
pub fn resolvent_residual(lambda: Complex64, psi: &SampledFunction, eta: &SampledFunction) -> Result<f64> {
    if psi.grid() != eta.grid() {
        return Err(Error::Grid("psi and eta must share one grid".into()));
    }
    let x = psi.grid();
    if x.len() < 5 {
        return Err(Error::Grid(format!("need at least 5 nodes, got {}", x.len())));
    }
    let h = uniform_step(x)?;
    if h > 0.005 {
        return Err(Error::Grid(format!("step {h} exceeds 0.005")));
    }
    let (p, e) = (psi.values(), eta.values());
    let zero = Complex64::new(0.0, 0.0);
    let support = match (p.iter().position(|v| *v != zero), p.iter().rposition(|v| *v != zero)) {
        (Some(i), Some(j)) => Some((x[i], x[j])),
        _ => None,
    };
    let scale = p.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let inv = 1.0 / (12.0 * h * h);
    let mut worst = 0.0f64;
    for i in 2..x.len() - 2 {
        if let Some((s0, s1)) = support {
            if (x[i] - s0).abs() < 5.0 * h || (x[i] - s1).abs() < 5.0 * h {
                continue;
            }
        }
        let d2 = (-e[i + 2] + e[i + 1] * 16.0 - e[i] * 30.0 + e[i - 1] * 16.0 - e[i - 2]) * inv;
        let r = -d2 - e[i] * (x[i] * x[i]) - lambda * e[i] - p[i];
        worst = worst.max(r.norm());
    }
    Ok(worst / scale)
}
