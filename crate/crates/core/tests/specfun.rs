use hubble_core::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const CORPUS: &str = include_str!("data/hermite_oracle.txt");

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn order(nu: Complex64) -> ComplexOrder {
    ComplexOrder::new(nu).unwrap()
}

fn corpus() -> Vec<OracleRecord> {
    parse_corpus(CORPUS).unwrap()
}

fn lookup(nu: Complex64, z: Complex64) -> Complex64 {
    corpus()
        .into_iter()
        .find(|r| (r.nu - nu).norm() < 1e-15 && (r.z - z).norm() < 1e-13 * (1.0 + z.norm()))
        .unwrap_or_else(|| panic!("no corpus record for nu = {nu}, z = {z}"))
        .value
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn corpus_has_one_hundred_records() {
    assert_eq!(corpus().len(), 100);
}

#[test]
fn error_estimates_cover_corpus() {
    let mut worst = 0.0f64;
    for r in corpus() {
        let got = hermite_nu(&order(r.nu), r.z).unwrap();
        let err = (got.value - r.value).norm();
        assert!(
            err <= 10.0 * got.est_abs_error,
            "nu = {}, z = {}: err {err:e} > 10 * est {:e} ({})",
            r.nu,
            r.z,
            got.est_abs_error,
            got.sector_used
        );
        if r.value.norm() > 0.0 {
            worst = worst.max(err / r.value.norm());
        }
    }
    assert!(worst < 1e-8, "worst relative error {worst:e}");
}

#[test]
fn log_gamma_high_precision_value() {
    // mpmath loggamma at 60 digits
    let expect = c(-0.652_790_644_204_372_9, -0.955_007_724_342_569_1);
    let got = log_gamma(c(0.5, 1.0)).unwrap();
    assert!(rel(got, expect) < 1e-14, "{got}");
    assert!(rel(got.exp(), expect.exp()) < 1e-12);
}

#[test]
fn log_gamma_matches_recurrence_on_disk() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let z = Complex64::from_polar(rng.gen_range(0.1..49.0), rng.gen_range(-PI..PI));
        if (z.re - z.re.round()).hypot(z.im) < 1e-3 {
            continue;
        }
        let g = gamma(z).unwrap();
        let g1 = gamma(z + 1.0).unwrap();
        assert!(rel(g * z, g1) < 1e-12, "z = {z}");
    }
}

#[test]
fn series_examples() {
    let nu = order(c(-1.0, 0.0));
    let got = hermite_nu_series(&nu, c(1.0, 0.0), 1e-16).unwrap();
    assert_eq!(got.sector_used, SectorTag::Series);
    assert!(rel(got.value, lookup(nu.value(), c(1.0, 0.0))) < 1e-13);

    let nu = order(c(-0.5, 0.3));
    let z = Complex64::from_polar(2.0, 0.75 * PI);
    let got = hermite_nu_series(&nu, z, 1e-16).unwrap();
    assert!(rel(got.value, lookup(nu.value(), z)) < 1e-13);

    // only the n = 0 term survives: Γ(1/4) / (2Γ(1/2))
    let nu = order(c(-0.5, 0.0));
    let got = hermite_nu_series(&nu, c(0.0, 0.0), 1e-16).unwrap();
    let expect = gamma(c(0.25, 0.0)).unwrap() / (gamma(c(0.5, 0.0)).unwrap() * 2.0);
    assert!(rel(got.value, expect) < 1e-14);
    assert!(rel(got.value, lookup(nu.value(), c(0.0, 0.0))) < 1e-14);
    assert_eq!(hermite_nu(&nu, c(0.0, 0.0)).unwrap().value, got.value);
}

#[test]
fn polynomial_examples() {
    assert_eq!(hermite_int(0, c(5.0, 2.0)).unwrap(), c(1.0, 0.0));
    assert_eq!(hermite_int(2, c(1.0, 0.0)).unwrap(), c(2.0, 0.0));
    let z = c(0.5, 0.5);
    let expect = z * z * z * 8.0 - z * 12.0;
    assert!((hermite_int(3, z).unwrap() - expect).norm() < 1e-14);
    assert!((hermite_int(3, z).unwrap() - lookup(c(3.0, 0.0), z)).norm() < 1e-14);
    assert_eq!(hermite_nu(&order(c(3.0, 0.0)), c(1.0, 0.0)).unwrap().value, c(-4.0, 0.0));
}

#[test]
fn leading_forms_against_oracle() {
    let nu = order(c(-0.5, 0.0));
    let z = Complex64::from_polar(10.0, 0.75 * PI);
    let got = hermite_nu_asymptotic(&nu, z, SectorTag::AsyUpper).unwrap();
    assert!(rel(got.value, lookup(nu.value(), z)) <= 3.0 / 10f64.sqrt());

    let nu = order(c(-1.0, 0.0));
    let z = Complex64::from_polar(12.0, 1.25 * PI);
    let got = hermite_nu_asymptotic(&nu, z, SectorTag::AsyLower).unwrap();
    assert!(rel(got.value, lookup(nu.value(), z)) <= 3.0 / 12f64.sqrt());

    let nu = order(c(-0.5, 0.0));
    let z = Complex64::from_polar(10.0, 1.75 * PI);
    let got = hermite_nu_asymptotic(&nu, z, SectorTag::AsyPrincipal).unwrap();
    let expect = (z * 2.0).powc(c(-0.5, 0.0));
    assert!(rel(got.value, expect) < 1e-15);
    assert!(rel(got.value, lookup(nu.value(), z)) <= 3.0 / 10f64.sqrt());
}

#[test]
fn continuity_across_switch_radius() {
    for nu in [c(-0.5, 0.0), c(-1.5, 1.0), c(2.3, 0.0), c(-3.0, -2.0)] {
        let nu = order(nu);
        let r = switch_radius(&nu);
        for theta in [0.75 * PI, 0.25 * PI, 0.0, -0.5 * PI, PI] {
            let zi = Complex64::from_polar(r * (1.0 - 1e-13), theta);
            let zo = Complex64::from_polar(r * (1.0 + 1e-13), theta);
            let inner = hermite_nu(&nu, zi).unwrap();
            let outer = hermite_nu(&nu, zo).unwrap();
            // H' = 2ν H_{ν-1} accounts for the distance between the two points
            let lowered = order(nu.value() - 1.0);
            let slope = (nu.value() * 2.0 * hermite_value(&lowered, zo).unwrap()).norm();
            let slack = 2.0 * slope * (zo - zi).norm();
            assert!(
                (inner.value - outer.value).norm() <= inner.est_abs_error + outer.est_abs_error + slack,
                "nu = {}, theta = {theta}: {} vs {}",
                nu.value(),
                inner.value,
                outer.value
            );
        }
    }
}

#[test]
fn satisfies_hermite_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-4;
    for _ in 0..20 {
        let nu = order(c(rng.gen_range(-4.0..3.0), rng.gen_range(-2.0..2.0)));
        let z = Complex64::from_polar(rng.gen_range(0.0..3.0), rng.gen_range(-PI..PI));
        let f = |w: Complex64| hermite_value(&nu, w).unwrap();
        let (fm, f0, fp) = (f(z - h), f(z), f(z + h));
        let d2 = (fp - f0 * 2.0 + fm) / (h * h);
        let d1 = (fp - fm) / (2.0 * h);
        let terms = [d2, -z * d1 * 2.0, nu.value() * f0 * 2.0];
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        let residual = terms.iter().sum::<Complex64>().norm() / scale;
        assert!(residual <= 1e-6, "nu = {}, z = {z}: residual {residual:e}", nu.value());
    }
}

#[test]
fn orders_near_integers_reduce_to_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 0..=10u32 {
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(0.0..3.0), rng.gen_range(-PI..PI));
            let exact = hermite_int(n, z).unwrap();
            let errs: Vec<f64> = [1e-3, 1e-5, 1e-7]
                .iter()
                .map(|d| (hermite_value(&order(c(n as f64 + d, 0.0)), z).unwrap() - exact).norm())
                .collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "n = {n}, z = {z}: {errs:?}");
        }
    }
}

proptest! {
    #[test]
    fn conjugation_symmetry(
        nu_re in -5.0f64..4.0,
        nu_im in -3.0f64..3.0,
        r in 0.0f64..14.0,
        theta in -3.1f64..3.1,
    ) {
        let nu = order(c(nu_re, nu_im));
        let z = Complex64::from_polar(r, theta);
        let a = hermite_nu(&nu, z).unwrap();
        let b = hermite_nu(&order(nu.value().conj()), z.conj()).unwrap();
        prop_assert!((a.value.conj() - b.value).norm() <= 1e-12 * a.value.norm());
    }

    #[test]
    fn estimate_is_finite_and_nonnegative(
        nu_re in -6.0f64..6.0,
        nu_im in -3.0f64..3.0,
        r in 0.0f64..20.0,
        theta in -3.2f64..3.2,
    ) {
        let got = hermite_nu(&order(c(nu_re, nu_im)), Complex64::from_polar(r, theta)).unwrap();
        prop_assert!(got.est_abs_error >= 0.0 && got.est_abs_error.is_finite());
        prop_assert!(got.value.re.is_finite() && got.value.im.is_finite());
    }
}
