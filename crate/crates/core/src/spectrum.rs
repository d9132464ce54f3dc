//! Where `λ` sits relative to the `L^p` spectrum of `-d²/dx² - x²`.
//!
//! The spectrum on `L^p(ℝ)` is the closed strip `|Im λ| <= |2/p - 1|`. Its
//! interior is point spectrum for `p > 2`; for `p = ∞` the whole strip is.
//! Besides the closed-form classification this module has two numerical
//! probes: truncated `L^p` masses of an eigen-solution and the induced norm
//! of the discretized Green's kernel.

use crate::error::{Error, Result};
use crate::resolvent::{tabulate_pair, FundamentalPair};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io;
use std::str::FromStr;

/// Width of the band around `|Im λ| = w(p)` classified as boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Largest number of kernel entries a probe may allocate.
pub const PROBE_ENTRY_CAP: usize = 40_000_000;

/// Smallest probe grid.
pub const MIN_PROBE_N: usize = 200;

/// Largest map resolution per axis, and the cap when probes are attached.
pub const MAX_MAP_RESOLUTION: usize = 2000;
pub const MAX_PROBED_MAP_RESOLUTION: usize = 50;

/// `p ∈ [1, ∞]`, with infinity kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum LebesgueExponent {
    Finite(f64),
    Infinity,
}

impl LebesgueExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            return Ok(LebesgueExponent::Infinity);
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::Invalid(format!("Lebesgue exponent must lie in [1, ∞], got {p}")));
        }
        Ok(LebesgueExponent::Finite(p))
    }

    /// `1/p` with `1/∞ = 0`.
    pub fn reciprocal(&self) -> f64 {
        match *self {
            LebesgueExponent::Finite(p) => 1.0 / p,
            LebesgueExponent::Infinity => 0.0,
        }
    }

    /// `q` with `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> Self {
        match *self {
            LebesgueExponent::Infinity => LebesgueExponent::Finite(1.0),
            LebesgueExponent::Finite(1.0) => LebesgueExponent::Infinity,
            LebesgueExponent::Finite(p) => LebesgueExponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LebesgueExponent::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            LebesgueExponent::Finite(p) => Some(p),
            LebesgueExponent::Infinity => None,
        }
    }

    fn is_two(&self) -> bool {
        self.reciprocal() == 0.5
    }

    /// `p > 2`, with `∞` included.
    fn above_two(&self) -> bool {
        self.reciprocal() < 0.5
    }
}

impl fmt::Display for LebesgueExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LebesgueExponent::Finite(p) => write!(f, "{p}"),
            LebesgueExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for LebesgueExponent {
    type Err = Error;

    /// Accepts decimals, fractions `a/b` and `inf`/`infinity`/`∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(LebesgueExponent::Infinity);
        }
        let bad = || Error::Invalid(format!("cannot parse Lebesgue exponent {s:?}"));
        let p = match t.split_once('/') {
            Some((a, b)) => {
                let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                a / b
            }
            None => t.parse().map_err(|_| bad())?,
        };
        LebesgueExponent::new(p)
    }
}

impl From<LebesgueExponent> for String {
    fn from(p: LebesgueExponent) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for LebesgueExponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Region {
    ResolventSet,
    SpectrumInterior,
    SpectrumBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PointSpectrum {
    Yes,
    No,
    Unresolved,
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::ResolventSet => "RESOLVENT_SET",
            Region::SpectrumInterior => "SPECTRUM_INTERIOR",
            Region::SpectrumBoundary => "SPECTRUM_BOUNDARY",
        }
    }
}

impl PointSpectrum {
    pub fn name(&self) -> &'static str {
        match self {
            PointSpectrum::Yes => "YES",
            PointSpectrum::No => "NO",
            PointSpectrum::Unresolved => "UNRESOLVED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripVerdict {
    pub region: Region,
    pub point_spectrum: PointSpectrum,
}

/// `w(p) = |2/p - 1|`.
pub fn strip_half_width(p: LebesgueExponent) -> f64 {
    (2.0 * p.reciprocal() - 1.0).abs()
}

/// Region of `λ` and whether it is an eigenvalue in `L^p`.
///
/// On the boundary the point spectrum is only known for `p = ∞` (yes) and
/// `p = 2` (no square-integrable solutions); elsewhere it is unresolved.
/// Inside the strip for `p < 2` every solution has a tail outside `L^p`.
pub fn classify(p: LebesgueExponent, lambda: Complex64) -> StripVerdict {
    let w = strip_half_width(p);
    let a = lambda.im.abs();
    let region = if (a - w).abs() <= BOUNDARY_TOL {
        Region::SpectrumBoundary
    } else if a < w {
        Region::SpectrumInterior
    } else {
        Region::ResolventSet
    };
    let point_spectrum = match region {
        Region::ResolventSet => PointSpectrum::No,
        _ if p.is_infinite() => PointSpectrum::Yes,
        _ if p.is_two() => PointSpectrum::No,
        Region::SpectrumInterior if p.above_two() => PointSpectrum::Yes,
        Region::SpectrumInterior => PointSpectrum::No,
        Region::SpectrumBoundary => PointSpectrum::Unresolved,
    };
    StripVerdict { region, point_spectrum }
}

/// Whether solutions growing like `(1+|x|)^{|Im λ|/2 - 1/2}` lie in `L^p`:
/// `p(|Im λ|/2 - 1/2) < -1`, or boundedness `|Im λ| <= 1` for `p = ∞`.
pub fn point_spectrum_growth_test(p: LebesgueExponent, lambda: Complex64) -> bool {
    let e = 0.5 * lambda.im.abs() - 0.5;
    match p {
        LebesgueExponent::Finite(p) => p * e < -1.0,
        LebesgueExponent::Infinity => e <= 0.0,
    }
}

/// `|Im λ|/2 > |1/2 - 1/p|`: the kernel defines a bounded operator on `L^p`.
pub fn resolvent_bounded_condition(p: LebesgueExponent, lambda: Complex64) -> bool {
    0.5 * lambda.im.abs() > (0.5 - p.reciprocal()).abs()
}

/// The two integrability conditions on the kernel's singular weights,
/// `|Im λ|/2 - 1/2 - 1/p > -1` and the same with `q`. Both hold exactly when
/// [`resolvent_bounded_condition`] does.
pub fn pole_integrability(p: LebesgueExponent, lambda: Complex64) -> (bool, bool) {
    let e = 0.5 * lambda.im.abs() - 0.5;
    (e - p.reciprocal() > -1.0, e - p.conjugate().reciprocal() > -1.0)
}

/// Step of the mass quadrature at `x`.
fn mass_step(x: f64) -> f64 {
    0.01f64.min(0.05 / (1.0 + x.abs()))
}

fn segment_nodes(a: f64, b: f64) -> Vec<f64> {
    let mut nodes = vec![a];
    let mut x = a;
    while x < b {
        // every step is at most 0.01, so this bounds the step at both ends
        x = (x + mass_step(x.abs() + 0.01)).min(b);
        nodes.push(x);
    }
    nodes
}

fn integrate_power(f: &(dyn Fn(f64) -> Result<Complex64> + Sync), p: f64, a: f64, b: f64) -> Result<f64> {
    let nodes = segment_nodes(a, b);
    let vals: Vec<f64> = nodes
        .par_iter()
        .map(|&x| {
            let v = f(x)?.norm().powf(p);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Quadrature(format!("non-finite integrand at x = {x}")))
            }
        })
        .collect::<Result<_>>()?;
    Ok(nodes.windows(2).zip(vals.windows(2)).map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1])).sum())
}

/// `∫_{|x| <= R_i} |f|^p dx` for each radius.
pub fn lp_mass_scan(
    f: &(dyn Fn(f64) -> Result<Complex64> + Sync),
    p: LebesgueExponent,
    radii: &[f64],
) -> Result<Vec<f64>> {
    let p = p.finite().ok_or_else(|| Error::Invalid("mass scan needs finite p".into()))?;
    if radii.len() < 4 {
        return Err(Error::Invalid(format!("mass scan needs at least 4 radii, got {}", radii.len())));
    }
    if radii[0] < 1.0 || radii.windows(2).any(|w| !(w[1] > w[0])) || !radii.iter().all(|r| r.is_finite()) {
        return Err(Error::Invalid(format!("radii must be finite, increasing and >= 1: {radii:?}")));
    }
    let mut masses = Vec::with_capacity(radii.len());
    let mut total = integrate_power(f, p, -radii[0], radii[0])?;
    masses.push(total);
    for w in radii.windows(2) {
        total += integrate_power(f, p, w[0], w[1])? + integrate_power(f, p, -w[1], -w[0])?;
        masses.push(total);
    }
    Ok(masses)
}

/// Local power-law exponents of the mass increments: for increments over
/// shells `[R_{i-1}, R_i]`, `log(Δ_{i+1}/Δ_i) / log(R_{i+1}/R_i)`. An
/// integrand `~ x^{-s}` gives `1 - s`.
pub fn mass_increment_exponents(radii: &[f64], masses: &[f64]) -> Vec<f64> {
    let inc: Vec<f64> = masses.windows(2).map(|m| m[1] - m[0]).collect();
    (1..inc.len())
        .map(|i| (inc[i] / inc[i - 1]).ln() / (radii[i + 1] / radii[i]).ln())
        .collect()
}

/// Whether a mass scan has settled: the last local exponent is negative, or
/// the last two increments both vanish.
pub fn lp_mass_converges(radii: &[f64], masses: &[f64]) -> Result<bool> {
    if radii.len() != masses.len() || radii.len() < 4 {
        return Err(Error::Invalid("need at least 4 radii with one mass each".into()));
    }
    let n = masses.len();
    let (d1, d2) = (masses[n - 2] - masses[n - 3], masses[n - 1] - masses[n - 2]);
    if d1 == 0.0 && d2 == 0.0 {
        return Ok(true);
    }
    let last = *mass_increment_exponents(radii, masses).last().expect("at least two increments");
    Ok(last < 0.0)
}

/// Mass scan of `φ́`, the solution decaying fastest at `-∞`, whose growth at
/// `+∞` is that of every solution. `Im λ < 0` uses the conjugate point.
pub fn eigen_solution_mass(p: LebesgueExponent, lambda: Complex64, radii: &[f64]) -> Result<Vec<f64>> {
    let lam = if lambda.im < 0.0 { lambda.conj() } else { lambda };
    let pair = FundamentalPair::build(lam)?;
    let f = |x: f64| crate::resolvent::phi_acute(&pair, x);
    lp_mass_scan(&f, p, radii)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Induced norm of the discretized operator.
    Exact,
    /// Riesz–Thorin bound from the exact `p ∈ {1, 2, ∞}` values.
    Interpolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeMetadata {
    pub p: LebesgueExponent,
    #[serde(rename = "box")]
    pub sample_box: f64,
    pub n: usize,
    pub norm_kind: NormKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    pub value: f64,
    pub metadata: ProbeMetadata,
}

/// `B = W^{1/2} S W^{1/2}` with trapezoid weights `W`, row-major, plus the
/// weights. `S` is symmetric, so `B` is too.
struct KernelMatrix {
    n: usize,
    weights: Vec<f64>,
    kernel: Vec<Complex64>,
}

impl KernelMatrix {
    fn build(lambda: Complex64, sample_box: f64, n: usize) -> Result<Self> {
        let conjugate = lambda.im < 0.0;
        let pair = FundamentalPair::build(if conjugate { lambda.conj() } else { lambda })?;
        let h = 2.0 * sample_box / (n - 1) as f64;
        let xs: Vec<f64> = (0..n).map(|i| -sample_box + h * i as f64).collect();
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n - 1] = 0.5 * h;
        let (acute, grave) = tabulate_pair(&pair, &xs)?;
        let w = pair.wronskian;
        let mut kernel = vec![Complex64::new(0.0, 0.0); n * n];
        kernel.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, k) in row.iter_mut().enumerate() {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                let v = acute[lo] * grave[hi] / w;
                *k = if conjugate { v.conj() } else { v };
            }
        });
        if kernel.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Quadrature("non-finite kernel entry".into()));
        }
        Ok(KernelMatrix { n, weights, kernel })
    }

    /// `max_j Σ_i w_i |s_ij|`, the norm on weighted `ℓ¹`.
    fn norm_one(&self) -> f64 {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .map(|j| (0..n).map(|i| self.weights[i] * self.kernel[i * n + j].norm()).sum::<f64>())
            .reduce(|| 0.0, f64::max)
    }

    /// `max_i Σ_j |s_ij| w_j`, the norm on `ℓ^∞`.
    fn norm_inf(&self) -> f64 {
        let n = self.n;
        self.kernel
            .par_chunks(n)
            .map(|row| row.iter().zip(&self.weights).map(|(k, w)| k.norm() * w).sum::<f64>())
            .reduce(|| 0.0, f64::max)
    }

    /// Spectral norm of `W^{1/2} S W^{1/2}` by power iteration on `B^H B`.
    fn norm_two(&self) -> f64 {
        let n = self.n;
        let sw: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        let apply = |v: &[Complex64], conj: bool| -> Vec<Complex64> {
            self.kernel
                .par_chunks(n)
                .enumerate()
                .map(|(i, row)| {
                    let s: Complex64 = row
                        .iter()
                        .zip(v)
                        .zip(&sw)
                        .map(|((k, x), w)| if conj { k.conj() * x * w } else { k * x * w })
                        .sum();
                    s * sw[i]
                })
                .collect()
        };
        let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        // B is symmetric, so B^H = conj(B)
        let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0, 0.3 * (i as f64 * 0.7).sin())).collect();
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        let mut sigma = 0.0;
        for _ in 0..1000 {
            let u = apply(&v, false);
            let mut next = apply(&u, true);
            let lam = norm(&next);
            if lam == 0.0 {
                return 0.0;
            }
            next.iter_mut().for_each(|x| *x /= lam);
            let s = lam.sqrt();
            let done = (s - sigma).abs() <= 1e-10 * s;
            sigma = s;
            v = next;
            if done {
                break;
            }
        }
        sigma
    }
}

/// Lower estimate of `‖s_λ‖_{L^p → L^p}` from the kernel on `[-box, box]²`.
///
/// For `p ∈ {1, 2, ∞}` this is the exact induced norm of the discretized
/// operator; for other `p` it is the smallest Riesz–Thorin bound between the
/// bracketing exact values.
pub fn resolvent_norm_probe(p: LebesgueExponent, lambda: Complex64, sample_box: f64, n: usize) -> Result<ProbeResult> {
    if n < MIN_PROBE_N {
        return Err(Error::Invalid(format!("probe needs n >= {MIN_PROBE_N}, got {n}")));
    }
    if n.checked_mul(n).is_none_or(|e| e > PROBE_ENTRY_CAP) {
        return Err(Error::Resource(format!("probe with n = {n} exceeds {PROBE_ENTRY_CAP} kernel entries")));
    }
    if !(sample_box > 0.0 && sample_box.is_finite()) {
        return Err(Error::Invalid(format!("probe box must be positive, got {sample_box}")));
    }
    let m = KernelMatrix::build(lambda, sample_box, n)?;
    let r = p.reciprocal();
    let (value, norm_kind) = if r == 1.0 {
        (m.norm_one(), NormKind::Exact)
    } else if r == 0.0 {
        (m.norm_inf(), NormKind::Exact)
    } else if r == 0.5 {
        (m.norm_two(), NormKind::Exact)
    } else {
        let (n1, n2, ninf) = (m.norm_one(), m.norm_two(), m.norm_inf());
        // 1/p = (1-θ)/p0 + θ/p1
        let between_one_inf = n1.powf(r) * ninf.powf(1.0 - r);
        let other = if r > 0.5 {
            let theta = 2.0 * (1.0 - r);
            n1.powf(1.0 - theta) * n2.powf(theta)
        } else {
            let theta = 1.0 - 2.0 * r;
            n2.powf(1.0 - theta) * ninf.powf(theta)
        };
        (between_one_inf.min(other), NormKind::Interpolated)
    };
    Ok(ProbeResult { value, metadata: ProbeMetadata { p, sample_box, n, norm_kind } })
}

/// Probe grid attached to a spectrum map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSettings {
    #[serde(rename = "box")]
    pub sample_box: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapNode {
    pub lambda: Complex64,
    pub verdict: StripVerdict,
    pub probe: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMap {
    pub p: LebesgueExponent,
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
    pub probe: Option<ProbeMetadata>,
    /// Row-major: imaginary part outer, real part inner.
    pub nodes: Vec<MapNode>,
}

fn axis(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![range.0];
    }
    (0..n).map(|k| range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64).collect()
}

/// Verdicts on a `resolution × resolution` grid over the two ranges.
pub fn spectrum_map(
    p: LebesgueExponent,
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: usize,
    probe: Option<ProbeSettings>,
) -> Result<SpectrumMap> {
    if resolution == 0 {
        return Err(Error::Invalid("map resolution must be positive".into()));
    }
    if resolution > MAX_MAP_RESOLUTION {
        return Err(Error::Resource(format!("map resolution {resolution} exceeds {MAX_MAP_RESOLUTION}")));
    }
    if probe.is_some() && resolution > MAX_PROBED_MAP_RESOLUTION {
        return Err(Error::Resource(format!(
            "probed map resolution {resolution} exceeds {MAX_PROBED_MAP_RESOLUTION}"
        )));
    }
    let finite = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 <= r.1;
    if !finite(re_range) || !finite(im_range) {
        return Err(Error::Invalid(format!("map ranges must be finite and ordered: {re_range:?}, {im_range:?}")));
    }
    let (res, ims) = (axis(re_range, resolution), axis(im_range, resolution));
    let lambdas: Vec<Complex64> = ims.iter().flat_map(|&b| res.iter().map(move |&a| Complex64::new(a, b))).collect();
    let nodes: Vec<MapNode> = lambdas
        .par_iter()
        .map(|&lambda| {
            let probe = match probe {
                Some(s) => Some(resolvent_norm_probe(p, lambda, s.sample_box, s.n)?.value),
                None => None,
            };
            Ok(MapNode { lambda, verdict: classify(p, lambda), probe })
        })
        .collect::<Result<_>>()?;
    let metadata = match probe {
        Some(s) => {
            let kind = if [0.0, 0.5, 1.0].contains(&p.reciprocal()) { NormKind::Exact } else { NormKind::Interpolated };
            Some(ProbeMetadata { p, sample_box: s.sample_box, n: s.n, norm_kind: kind })
        }
        None => None,
    };
    Ok(SpectrumMap { p, re_range, im_range, resolution, probe: metadata, nodes })
}

/// CSV `re_lambda,im_lambda,region,point_spectrum[,probe]`.
pub fn write_map_csv<W: io::Write>(map: &SpectrumMap, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Invalid(format!("csv write: {e}"));
    let mut header = vec!["re_lambda", "im_lambda", "region", "point_spectrum"];
    if map.probe.is_some() {
        header.push("probe");
    }
    w.write_record(&header).map_err(err)?;
    for node in &map.nodes {
        let mut rec = vec![
            format!("{:.16e}", node.lambda.re),
            format!("{:.16e}", node.lambda.im),
            node.verdict.region.name().to_string(),
            node.verdict.point_spectrum.name().to_string(),
        ];
        if map.probe.is_some() {
            rec.push(format!("{:.16e}", node.probe.unwrap_or(f64::NAN)));
        }
        w.write_record(&rec).map_err(err)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv write: {e}")))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapMetadata {
    pub p: LebesgueExponent,
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
    pub strip_half_width: f64,
    pub probe: Option<ProbeMetadata>,
}

impl SpectrumMap {
    pub fn metadata(&self) -> MapMetadata {
        MapMetadata {
            p: self.p,
            re_range: self.re_range,
            im_range: self.im_range,
            resolution: self.resolution,
            strip_half_width: strip_half_width(self.p),
            probe: self.probe,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fin(p: f64) -> LebesgueExponent {
        LebesgueExponent::new(p).unwrap()
    }

    #[test]
    fn half_widths() {
        assert_eq!(strip_half_width(fin(1.0)), 1.0);
        assert_eq!(strip_half_width(fin(2.0)), 0.0);
        assert_eq!(strip_half_width(LebesgueExponent::Infinity), 1.0);
        assert!((strip_half_width(fin(4.0)) - 0.5).abs() < 1e-15);
        let p = fin(3.0);
        assert!((strip_half_width(p) - strip_half_width(p.conjugate())).abs() < 1e-15);
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<LebesgueExponent>().unwrap(), LebesgueExponent::Infinity);
        assert_eq!("4/3".parse::<LebesgueExponent>().unwrap(), fin(4.0 / 3.0));
        assert_eq!(" 2.5 ".parse::<LebesgueExponent>().unwrap(), fin(2.5));
        assert!("0.5".parse::<LebesgueExponent>().is_err());
        assert!("x".parse::<LebesgueExponent>().is_err());
        assert_eq!(fin(1.0).conjugate(), LebesgueExponent::Infinity);
        assert_eq!(LebesgueExponent::Infinity.conjugate(), fin(1.0));
        let json = serde_json::to_string(&LebesgueExponent::Infinity).unwrap();
        assert_eq!(json, "\"inf\"");
        assert_eq!(serde_json::from_str::<LebesgueExponent>(&json).unwrap(), LebesgueExponent::Infinity);
    }

    #[test]
    fn classification_examples() {
        let v = classify(fin(1.0), c(0.0, 0.5));
        assert_eq!((v.region, v.point_spectrum), (Region::SpectrumInterior, PointSpectrum::No));
        let v = classify(fin(4.0), c(0.0, 0.25));
        assert_eq!((v.region, v.point_spectrum), (Region::SpectrumInterior, PointSpectrum::Yes));
        let v = classify(LebesgueExponent::Infinity, c(0.0, 1.0));
        assert_eq!((v.region, v.point_spectrum), (Region::SpectrumBoundary, PointSpectrum::Yes));
        let v = classify(fin(2.0), c(0.0, 0.1));
        assert_eq!((v.region, v.point_spectrum), (Region::ResolventSet, PointSpectrum::No));
        let v = classify(fin(2.0), c(3.0, 0.0));
        assert_eq!((v.region, v.point_spectrum), (Region::SpectrumBoundary, PointSpectrum::No));
        let v = classify(fin(4.0), c(1.0, -0.5));
        assert_eq!((v.region, v.point_spectrum), (Region::SpectrumBoundary, PointSpectrum::Unresolved));
    }

    #[test]
    fn growth_and_boundedness_examples() {
        assert!(point_spectrum_growth_test(fin(4.0), c(0.0, 0.25)));
        assert!(!point_spectrum_growth_test(fin(4.0), c(0.0, 0.5)));
        assert!(!point_spectrum_growth_test(fin(2.0), c(0.0, 0.0)));
        assert!(point_spectrum_growth_test(LebesgueExponent::Infinity, c(0.0, 1.0)));
        assert!(resolvent_bounded_condition(fin(2.0), c(0.0, 0.1)));
        assert!(resolvent_bounded_condition(fin(1.0), c(0.0, 1.5)));
        assert!(!resolvent_bounded_condition(fin(1.0), c(0.0, 0.5)));
    }

    #[test]
    fn map_limits() {
        assert!(matches!(spectrum_map(fin(1.0), (0.0, 1.0), (0.0, 1.0), 2001, None), Err(Error::Resource(_))));
        let s = Some(ProbeSettings { sample_box: 10.0, n: 200 });
        assert!(matches!(spectrum_map(fin(1.0), (0.0, 1.0), (0.0, 1.0), 51, s), Err(Error::Resource(_))));
        assert!(matches!(spectrum_map(fin(1.0), (0.0, 1.0), (0.0, 1.0), 0, None), Err(Error::Invalid(_))));
    }

    #[test]
    fn probe_limits() {
        assert!(matches!(resolvent_norm_probe(fin(1.0), c(0.0, 2.0), 10.0, 100), Err(Error::Invalid(_))));
        assert!(matches!(resolvent_norm_probe(fin(1.0), c(0.0, 2.0), 10.0, 7000), Err(Error::Resource(_))));
    }
}
