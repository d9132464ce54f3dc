use crate::args::{check_half_plane, Suite, VerifyArgs};
use anyhow::{bail, Context, Result};
use hubble_core::eigen::{
    ode_residual, psi_neg, psi_neg_prime, psi_nu, psi_nu_prime, uniform_grid, SampledFunction, SpectralPoint,
};
use hubble_core::resolvent::{
    greens_kernel, kernel_constant, kernel_envelope, phi_acute, phi_acute_prime, pointwise_wronskian, resolve,
    resolvent_residual, FundamentalPair, QuadratureConfig,
};
use hubble_core::specfun::{hermite_int, hermite_value, ComplexOrder};
use hubble_core::spectrum::{
    classify, point_spectrum_growth_test, resolvent_bounded_condition, resolvent_norm_probe, LebesgueExponent,
    Region,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const SEED: u64 = 0x5eed;

#[derive(Debug, Serialize)]
struct Check {
    suite: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Debug, Serialize)]
struct Report {
    passed: bool,
    checks: Vec<Check>,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { suite: self.suite, name, passed, detail });
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn specfun_suite(r: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let zs: Vec<Complex64> = (0..20)
        .map(|_| Complex64::from_polar(rng.gen_range(0.0..3.0), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)))
        .collect();

    let mut worst = 0.0f64;
    for n in 0..=6u32 {
        let nu = ComplexOrder::real(n as f64 + 1e-7)?;
        for &z in &zs {
            let exact = hermite_int(n, z)?;
            let got = hermite_value(&nu, z)?;
            worst = worst.max((got - exact).norm() / exact.norm().max(1.0));
        }
    }
    r.record("integer_reduction", worst <= 1e-5, format!("max relative deviation {worst:.3e} (tol 1e-5)"));

    // H_{ν+1}(z) = 2z H_ν(z) - 2ν H_{ν-1}(z)
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let nu = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        let z = zs[rng.gen_range(0..zs.len())];
        let at = |s: f64| -> Result<Complex64> { Ok(hermite_value(&ComplexOrder::new(nu + s)?, z)?) };
        let (hp, h0, hm) = (at(1.0)?, at(0.0)?, at(-1.0)?);
        let scale = hp.norm() + (2.0 * z * h0).norm() + (2.0 * nu * hm).norm();
        worst = worst.max((hp - 2.0 * z * h0 + 2.0 * nu * hm).norm() / scale.max(f64::MIN_POSITIVE));
    }
    r.record("three_term_recurrence", worst <= 1e-8, format!("max scaled defect {worst:.3e} (tol 1e-8)"));
    Ok(())
}

fn eigen_suite(r: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let grid = uniform_grid(-5.0, 5.0, 2001);
    let mut worst = 0.0f64;
    let mut worst_conj = 0.0f64;
    for _ in 0..10 {
        let lambda = c(rng.gen_range(-3.0..3.0), rng.gen_range(0.0..3.0));
        let point = SpectralPoint::from_lambda(lambda)?;
        let u = SampledFunction::sample(grid.clone(), |x| psi_nu(&point, x))?;
        let v = SampledFunction::sample(grid.clone(), |x| psi_neg(&point, x))?;
        worst = worst.max(ode_residual(&u, lambda)?).max(ode_residual(&v, lambda)?);

        let mirror = point.conj();
        for x in [-4.0, -1.5, 0.0, 0.7, 3.0] {
            let a = psi_nu(&point, x)?.conj();
            let b = psi_neg(&mirror, x)?;
            worst_conj = worst_conj.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    r.record("ode_residual", worst <= 1e-4, format!("max residual {worst:.3e} on [-5,5], step 0.005 (tol 1e-4)"));
    r.record(
        "conjugation_swaps_families",
        worst_conj <= 1e-10,
        format!("max relative deviation {worst_conj:.3e} (tol 1e-10)"),
    );
    Ok(())
}

fn bump(x: f64) -> Complex64 {
    if x.abs() < 1.0 {
        c((1.0 - x * x).powi(4), 0.0)
    } else {
        c(0.0, 0.0)
    }
}

fn resolvent_suite(r: &mut Recorder, lambda: Complex64, cfg: &QuadratureConfig) -> Result<()> {
    let upper = if lambda.im < 0.0 { lambda.conj() } else { lambda };
    let pair = FundamentalPair::build(upper)?;
    let p = pair.point();

    let mut worst = 0.0f64;
    for x in [-4.0, -1.0, 0.0, 1.0, 4.0] {
        let w = pointwise_wronskian(&pair, x)?;
        // the grave solution is a combination that can cancel; measure against its terms
        let (a, b) = (pair.alpha_grave.norm(), pair.beta_grave.norm());
        let grave = a * psi_nu(p, x)?.norm() + b * psi_neg(p, x)?.norm();
        let grave_prime = a * psi_nu_prime(p, x)?.norm() + b * psi_neg_prime(p, x)?.norm();
        let scale = (phi_acute_prime(&pair, x)?.norm() * grave + phi_acute(&pair, x)?.norm() * grave_prime)
            .max(pair.wronskian.norm());
        worst = worst.max((w - pair.wronskian).norm() / scale);
    }
    r.record(
        "wronskian_constant",
        worst <= 1e-10,
        format!("W = {:.12e},{:.12e}; max scaled spread {worst:.3e} (tol 1e-10)", pair.wronskian.re, pair.wronskian.im),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let pairs: Vec<(f64, f64)> = (0..1000).map(|_| (rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0))).collect();
    let mut asym = 0.0f64;
    for &(x, xp) in pairs.iter().take(200) {
        let a = greens_kernel(&pair, x, xp)?.value();
        let b = greens_kernel(&pair, xp, x)?.value();
        asym = asym.max((a - b).norm() / a.norm().max(f64::MIN_POSITIVE));
    }
    r.record("kernel_symmetric", asym <= 1e-12, format!("max relative asymmetry {asym:.3e} (tol 1e-12)"));

    let constant = kernel_constant(&pair, 12.0, 200)?;
    let mut ratio = 0.0f64;
    for &(x, xp) in &pairs {
        let k = greens_kernel(&pair, x, xp)?;
        ratio = ratio.max(k.value().norm() / kernel_envelope(upper.im, x, xp));
    }
    r.record(
        "kernel_envelope",
        ratio <= 1.2 * constant,
        format!("grid constant {constant:.4e}, off-grid max ratio {ratio:.4e} (limit 1.2x)"),
    );

    let sample = |n: usize| SampledFunction::sample(uniform_grid(-5.0, 5.0, n), |x| Ok(bump(x)));
    let psi = sample(2001)?;
    let coarse = resolvent_residual(lambda, &psi, &resolve(lambda, &psi, cfg)?.eta)?;
    r.record("resolvent_residual", coarse <= 1e-3, format!("residual {coarse:.3e} (tol 1e-3)"));
    let fine_psi = sample(4001)?;
    let fine = resolvent_residual(lambda, &fine_psi, &resolve(lambda, &fine_psi, &cfg.refined())?.eta)?;
    r.record(
        "residual_halves_under_refinement",
        2.0 * fine <= coarse,
        format!("{coarse:.3e} -> {fine:.3e} after halving grid and quadrature steps"),
    );
    Ok(())
}

fn spectrum_suite(r: &mut Recorder) -> Result<()> {
    let exponents: Vec<LebesgueExponent> = ["1", "4/3", "2", "4", "inf"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut dual = 0;
    let mut bounded = 0;
    let mut growth = 0;
    let samples = 200;
    for _ in 0..samples {
        let p = exponents[rng.gen_range(0..exponents.len())];
        let lambda = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let v = classify(p, lambda);
        // point spectrum is not dual-invariant, the region is
        if v.region == classify(p.conjugate(), lambda).region && v == classify(p, lambda.conj()) {
            dual += 1;
        }
        if (v.region == Region::ResolventSet) == resolvent_bounded_condition(p, lambda) {
            bounded += 1;
        }
        let decays = point_spectrum_growth_test(p, lambda);
        if v.region != Region::SpectrumInterior || decays == (v.point_spectrum.name() == "YES") {
            growth += 1;
        }
    }
    r.record("duality_and_reflection", dual == samples, format!("{dual}/{samples} samples agree"));
    r.record("bounded_iff_outside_strip", bounded == samples, format!("{bounded}/{samples} samples agree"));
    r.record("growth_test_matches_verdict", growth == samples, format!("{growth}/{samples} samples agree"));

    let one = LebesgueExponent::new(1.0)?;
    let norms = [0.5, 0.25, 0.1]
        .iter()
        .map(|d| Ok(resolvent_norm_probe(one, c(0.0, 1.0 + d), 10.0, 200)?.value))
        .collect::<Result<Vec<f64>>>()?;
    let increasing = norms.windows(2).all(|w| w[1] > w[0]);
    r.record(
        "probe_grows_toward_strip",
        increasing,
        format!("p = 1 at i(1+δ), δ = 0.5, 0.25, 0.1: {:.4}, {:.4}, {:.4}", norms[0], norms[1], norms[2]),
    );
    Ok(())
}

pub fn run(a: VerifyArgs, cfg: &QuadratureConfig) -> Result<()> {
    check_half_plane(a.lambda, a.conjugate)?;
    let wants = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut checks = Vec::new();
    let mut run_suite = |suite: &'static str, f: &dyn Fn(&mut Recorder) -> Result<()>| -> Result<()> {
        let mut r = Recorder { suite, checks: Vec::new() };
        f(&mut r).with_context(|| format!("{suite} suite"))?;
        checks.extend(r.checks);
        Ok(())
    };
    if wants(Suite::Specfun) {
        run_suite("specfun", &specfun_suite)?;
    }
    if wants(Suite::Eigen) {
        run_suite("eigen", &eigen_suite)?;
    }
    if wants(Suite::Resolvent) {
        run_suite("resolvent", &|r| resolvent_suite(r, a.lambda, cfg))?;
    }
    if wants(Suite::Spectrum) {
        run_suite("spectrum", &spectrum_suite)?;
    }

    for c in &checks {
        println!("{} {}/{}: {}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = Report { passed: failed == 0, checks };
    if let Some(path) = &a.report {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if failed > 0 {
        bail!("{failed} of {} checks failed", report.checks.len());
    }
    Ok(())
}
