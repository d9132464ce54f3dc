use hubble_core::eigen::{psi_neg, psi_neg_prime, psi_nu, psi_nu_prime, uniform_grid, SampledFunction};
use hubble_core::resolvent::*;
use hubble_core::Error;
use num_complex::Complex64;
use ode_solvers::{Rk4, System, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_lambdas(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| c(rng.gen_range(-4.0..4.0), rng.gen_range(0.2..4.0))).collect()
}

fn bump(x: f64) -> Complex64 {
    if x.abs() < 1.0 {
        c((1.0 - x * x).powi(4), 0.0)
    } else {
        c(0.0, 0.0)
    }
}

fn residual_grid() -> Vec<f64> {
    uniform_grid(-5.0, 5.0, 2001)
}

#[test]
fn wronskian_is_constant_and_matches_tails() {
    for lambda in random_lambdas(21, 10) {
        let pair = FundamentalPair::build(lambda).unwrap();
        for x in [-7.0, -2.0, 0.0, 0.5, 3.0, 9.0] {
            let w = pointwise_wronskian(&pair, x).unwrap();
            // φ̀ = αψ_ν + βψ_{-(ν+1)} can cancel heavily; bound by the size of its terms
            let p = pair.point();
            let (a, b) = (pair.alpha_grave.norm(), pair.beta_grave.norm());
            let grave = a * psi_nu(p, x).unwrap().norm() + b * psi_neg(p, x).unwrap().norm();
            let grave_prime = a * psi_nu_prime(p, x).unwrap().norm() + b * psi_neg_prime(p, x).unwrap().norm();
            let scale = phi_acute_prime(&pair, x).unwrap().norm() * grave + phi_acute(&pair, x).unwrap().norm() * grave_prime;
            assert!(
                (w - pair.wronskian).norm() <= 1e-10 * scale.max(pair.wronskian.norm()),
                "λ = {lambda}, x = {x}: {w} vs {}",
                pair.wronskian
            );
        }
    }
}

#[test]
fn grave_solution_mirrors_acute() {
    for lambda in random_lambdas(22, 5) {
        let pair = FundamentalPair::build(lambda).unwrap();
        for x in [-6.0, -1.0, 0.0, 2.0, 7.5] {
            let a = phi_acute(&pair, -x).unwrap();
            let b = phi_grave(&pair, x).unwrap();
            // φ̀ is a combination of two solutions that may nearly cancel
            let p = pair.point();
            let scale = (pair.alpha_grave * psi_nu(p, x).unwrap()).norm() + (pair.beta_grave * psi_neg(p, x).unwrap()).norm();
            assert!((a - b).norm() <= 1e-10 * scale.max(a.norm()), "λ = {lambda}, x = {x}: {a} vs {b}");
        }
    }
}

#[test]
fn grave_solution_has_unit_tail() {
    let pair = FundamentalPair::build(c(0.5, 1.5)).unwrap();
    let nu = pair.point().nu().value();
    let x: f64 = 16.0;
    let tail = Complex64::from(x).powc(nu) * Complex64::from_polar(1.0, 0.5 * x * x);
    let got = phi_grave(&pair, x).unwrap();
    assert!((got - tail).norm() / tail.norm() < 1e-2, "{got} vs {tail}");
    let got = phi_acute(&pair, -x).unwrap();
    assert!((got - tail).norm() / tail.norm() < 1e-2, "{got} vs {tail}");
}

#[test]
fn kernel_is_symmetric() {
    let pair = FundamentalPair::build(c(0.7, 1.3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10_000 {
        let (x, xp) = (rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0));
        let a = greens_kernel(&pair, x, xp).unwrap().value();
        let b = greens_kernel(&pair, xp, x).unwrap().value();
        assert_eq!(a, b, "x = {x}, x' = {xp}");
    }
}

#[test]
fn kernel_stays_under_envelope() {
    for lambda in [c(0.0, 1.0), c(2.0, 2.0), c(-3.0, 0.5)] {
        let pair = FundamentalPair::build(lambda).unwrap();
        let k = kernel_constant(&pair, 12.0, 200).unwrap();
        assert!(k.is_finite() && k > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..2000 {
            let (x, xp) = (rng.gen_range(-12.0..12.0), rng.gen_range(-12.0..12.0));
            let e = greens_kernel(&pair, x, xp).unwrap();
            assert!(e.value().norm() <= 1.2 * k * e.envelope, "λ = {lambda}, ({x}, {xp})");
        }
    }
}

#[test]
fn kernel_constant_is_grid_stable() {
    for lambda in [c(0.0, 0.0), c(0.0, 2.0), c(-2.0, 1.0), c(3.0, 4.0)] {
        let pair = FundamentalPair::build(lambda).unwrap();
        let (a, b) = (kernel_constant(&pair, 20.0, 200).unwrap(), kernel_constant(&pair, 20.0, 400).unwrap());
        assert!((a - b).abs() <= 0.2 * b, "λ = {lambda}: {a} vs {b}");
    }
}

#[test]
fn kernel_ratio_peaks_inside_the_box() {
    let pair = FundamentalPair::build(c(0.0, 2.0)).unwrap();
    let (mut edge, mut inner) = (0.0f64, 0.0f64);
    for r in kernel_table(&pair, 20.0, 400).unwrap() {
        let q = r.value().norm() / r.envelope;
        if r.x.abs().max(r.xp.abs()) > 18.0 {
            edge = edge.max(q);
        } else {
            inner = inner.max(q);
        }
    }
    assert!(edge < inner, "edge {edge} vs interior {inner}");
}

#[test]
fn kernel_constant_rejects_coarse_grids() {
    let pair = FundamentalPair::build(c(0.0, 1.0)).unwrap();
    assert!(matches!(kernel_constant(&pair, 10.0, 50), Err(Error::Invalid(_))));
}

#[test]
fn unshifted_envelope_fails_near_origin() {
    // the kernel has a nonzero limit at x = 0 while |x/x'|^{Im λ/2} vanishes
    let pair = FundamentalPair::build(c(0.0, 2.0)).unwrap();
    let literal = |x: f64| {
        let e = greens_kernel(&pair, x, 3.0).unwrap();
        e.value().norm() / literal_envelope(2.0, x, 3.0)
    };
    assert!(literal(1e-6) > 1e4 * literal(1.0));
    let shifted = |x: f64| {
        let e = greens_kernel(&pair, x, 3.0).unwrap();
        e.value().norm() / e.envelope
    };
    assert!(shifted(1e-6) < 2.0 * shifted(1.0));
}

#[test]
fn kernel_csv_has_expected_columns() {
    let pair = FundamentalPair::build(c(0.0, 1.0)).unwrap();
    let rows = kernel_table(&pair, 2.0, 3).unwrap();
    let mut buf = Vec::new();
    write_kernel_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,xp,re,im,envelope"));
    assert_eq!(lines.count(), 9);
}

/// `y = (Re φ, Im φ, Re φ', Im φ')` for `φ'' = -(x² + λ) φ` in the shifted
/// variable `s = x - origin`.
struct EigenOde {
    lambda: Complex64,
    origin: f64,
}

impl System<f64, Vector4<f64>> for EigenOde {
    fn system(&self, s: f64, y: &Vector4<f64>, dy: &mut Vector4<f64>) {
        let phi = c(y[0], y[1]);
        let x = s + self.origin;
        let acc = -(self.lambda + x * x) * phi;
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = acc.re;
        dy[3] = acc.im;
    }
}

/// `t^ν e^{it²/2} Σ a_k t^{-2k}` and its `t`-derivative, `t > 0`.
fn decaying_tail(nu: Complex64, t: f64) -> (Complex64, Complex64) {
    let i = c(0.0, 1.0);
    let (mut a, mut u, mut du) = (c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    for k in 0..12 {
        let kf = k as f64;
        a = a * (2.0 * kf - nu) * (2.0 * kf + 1.0 - nu) / (i * 4.0 * (kf + 1.0));
        u += a * t.powi(-2 * (k + 1));
        du += a * (-2.0 * (kf + 1.0)) * t.powi(-2 * (k + 1) - 1);
    }
    let g = Complex64::from(t).powc(nu) * Complex64::from_polar(1.0, 0.5 * t * t);
    let dg = g * (i * t + nu / t);
    (g * u, dg * u + g * du)
}

#[test]
fn kernel_matches_direct_integration() {
    let lambda = c(0.0, 1.0);
    let nu = (c(0.0, 1.0) * lambda - 1.0) * 0.5;
    // φ́ from its decaying tail at x = -25; φ̀(x) = φ́(-x)
    let (f, df) = decaying_tail(nu, 25.0);
    let y0 = Vector4::new(f.re, f.im, -df.re, -df.im);
    // a binary step size puts x = ±1 exactly on the grid
    let h = 1.0 / 8192.0;
    let mut solver = Rk4::new(EigenOde { lambda, origin: -25.0 }, 0.0, y0, 26.0, h);
    solver.integrate().unwrap();
    let (ss, ys) = solver.results().get();
    let at = |target: f64| {
        let k = ((target + 25.0) / h).round() as usize;
        assert_eq!(ss[k] - 25.0, target);
        (c(ys[k][0], ys[k][1]), c(ys[k][2], ys[k][3]))
    };
    let (acute_m1, dacute_m1) = at(-1.0);
    let (acute_p1, dacute_p1) = at(1.0);
    let (grave_p1, dgrave_p1) = (acute_m1, -dacute_m1);
    let w = dacute_p1 * grave_p1 - acute_p1 * dgrave_p1;
    let expect = acute_m1 * grave_p1 / w;

    let pair = FundamentalPair::build(lambda).unwrap();
    let got = greens_kernel(&pair, -1.0, 1.0).unwrap().value();
    assert!((got - expect).norm() <= 1e-5, "{got} vs {expect}");
    assert!((pair.wronskian - w).norm() <= 1e-5 * w.norm(), "{} vs {w}", pair.wronskian);
}

#[test]
fn resolvent_solves_equation() {
    let lambda = c(0.0, 2.0);
    let psi = SampledFunction::sample(residual_grid(), |x| Ok(bump(x))).unwrap();
    let cfg = QuadratureConfig::default();
    let out = resolve(lambda, &psi, &cfg).unwrap();
    let r = resolvent_residual(lambda, &psi, &out.eta).unwrap();
    assert!(r <= 1e-3, "residual {r:e}");
    assert!(out.est_error.is_finite());

    let fine_grid = uniform_grid(-5.0, 5.0, 4001);
    let fine_psi = SampledFunction::sample(fine_grid, |x| Ok(bump(x))).unwrap();
    let fine = resolve(lambda, &fine_psi, &cfg.refined()).unwrap();
    let (r1, r2) = (r, resolvent_residual(lambda, &fine_psi, &fine.eta).unwrap());
    assert!(r2 * 2.0 <= r1, "{r1:e} -> {r2:e}");
}

#[test]
fn resolvent_is_linear() {
    let lambda = c(-1.0, 1.5);
    let cfg = QuadratureConfig::default();
    let f = SampledFunction::sample(residual_grid(), |x| Ok(bump(x))).unwrap();
    let g = SampledFunction::sample(residual_grid(), |x| Ok(bump(x - 1.5) * c(0.0, 2.0))).unwrap();
    let (a, b) = (c(0.3, -1.1), c(2.0, 0.5));
    let sum = SampledFunction::new(
        f.grid().to_vec(),
        f.values().iter().zip(g.values()).map(|(u, v)| a * u + b * v).collect(),
    )
    .unwrap();
    let (rf, rg, rs) = (
        resolve(lambda, &f, &cfg).unwrap().eta,
        resolve(lambda, &g, &cfg).unwrap().eta,
        resolve(lambda, &sum, &cfg).unwrap().eta,
    );
    for k in 0..rs.len() {
        let lin = a * rf.values()[k] + b * rg.values()[k];
        assert!((rs.values()[k] - lin).norm() <= 1e-12 * (1.0 + lin.norm()));
    }
}

#[test]
fn zero_input_gives_zero() {
    let psi = SampledFunction::new(residual_grid(), vec![c(0.0, 0.0); 2001]).unwrap();
    let out = resolve(c(1.0, 1.0), &psi, &QuadratureConfig::default()).unwrap();
    assert!(out.eta.values().iter().all(|v| *v == c(0.0, 0.0)));
    assert_eq!(out.est_error, 0.0);
}

#[test]
fn lower_half_plane_uses_conjugation() {
    let lambda = c(0.5, -1.5);
    let psi = SampledFunction::sample(residual_grid(), |x| Ok(bump(x) * c(1.0, 0.5 * x))).unwrap();
    let cfg = QuadratureConfig::default();
    let out = resolve(lambda, &psi, &cfg).unwrap();
    assert!(resolvent_residual(lambda, &psi, &out.eta).unwrap() <= 1e-3);
    assert!(matches!(FundamentalPair::build(lambda), Err(Error::Domain(_))));
}

#[test]
fn residual_rejects_coarse_grid() {
    let grid = uniform_grid(-5.0, 5.0, 201);
    let psi = SampledFunction::sample(grid, |x| Ok(bump(x))).unwrap();
    assert!(matches!(resolvent_residual(c(0.0, 1.0), &psi, &psi), Err(Error::Grid(_))));
}

#[test]
fn config_rejects_coarse_phase() {
    let psi = SampledFunction::sample(residual_grid(), |x| Ok(bump(x))).unwrap();
    let cfg = QuadratureConfig { phase_resolution: 2.0, ..Default::default() };
    assert!(matches!(resolve(c(0.0, 1.0), &psi, &cfg), Err(Error::Config(_))));
}
