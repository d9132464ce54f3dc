use crate::args::{check_half_plane, EvalArgs, FamilyArg, TextFormat};
use crate::failure::usage;
use anyhow::{Context, Result};
use hubble_core::eigen::{lambda_from_nu, psi_eval, uniform_grid, Family, SampledFunction, SpectralPoint};
use hubble_core::resolvent::FundamentalPair;
use hubble_core::specfun::{hermite_nu, ComplexOrder};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Serialize)]
struct Evaluation {
    x: Option<f64>,
    re: f64,
    im: f64,
    est_abs_error: f64,
    route: String,
}

impl Evaluation {
    fn new(x: Option<f64>, value: Complex64, est_abs_error: f64, route: String) -> Self {
        Evaluation { x, re: value.re, im: value.im, est_abs_error, route }
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn conj(self) -> Self {
        Evaluation { im: -self.im, ..self }
    }
}

/// One family at a point with `Im λ >= 0`.
struct Evaluator {
    point: SpectralPoint,
    pair: Option<FundamentalPair>,
}

impl Evaluator {
    fn new(lambda: Complex64, family: FamilyArg) -> Result<Self> {
        let point = SpectralPoint::from_lambda(lambda)?;
        let pair = match family {
            FamilyArg::PhiAcute | FamilyArg::PhiGrave => Some(FundamentalPair::build(lambda)?),
            _ => None,
        };
        Ok(Evaluator { point, pair })
    }

    fn eval(&self, family: FamilyArg, x: f64) -> Result<Evaluation> {
        let psi = |f: Family| psi_eval(&self.point, x, f);
        Ok(match family {
            FamilyArg::PsiNu => {
                let r = psi(Family::PsiNu)?;
                Evaluation::new(Some(x), r.value, r.est_abs_error, r.sector_used.to_string())
            }
            FamilyArg::PsiNeg => {
                let r = psi(Family::PsiNeg)?;
                Evaluation::new(Some(x), r.value, r.est_abs_error, r.sector_used.to_string())
            }
            FamilyArg::PhiAcute => {
                let c = self.pair.as_ref().expect("pair built for phi families").coefficients().c;
                let r = psi(Family::PsiNu)?;
                Evaluation::new(Some(x), r.value / c, r.est_abs_error / c.norm(), r.sector_used.to_string())
            }
            FamilyArg::PhiGrave => {
                let pair = self.pair.as_ref().expect("pair built for phi families");
                let (u, v) = (psi(Family::PsiNu)?, psi(Family::PsiNeg)?);
                Evaluation::new(
                    Some(x),
                    pair.alpha_grave * u.value + pair.beta_grave * v.value,
                    pair.alpha_grave.norm() * u.est_abs_error + pair.beta_grave.norm() * v.est_abs_error,
                    format!("{}+{}", u.sector_used, v.sector_used),
                )
            }
        })
    }
}

/// `Im λ < 0` goes through `conj ψ_ν(λ) = ψ_{-(ν+1)}(λ̄)` and
/// `φ(λ) = conj φ(λ̄)`.
fn evaluate_family(lambda: Complex64, family: FamilyArg, xs: &[f64]) -> Result<Vec<Evaluation>> {
    let conjugate = lambda.im < 0.0;
    let (lam, fam) = if conjugate {
        let swapped = match family {
            FamilyArg::PsiNu => FamilyArg::PsiNeg,
            FamilyArg::PsiNeg => FamilyArg::PsiNu,
            other => other,
        };
        (lambda.conj(), swapped)
    } else {
        (lambda, family)
    };
    let ev = Evaluator::new(lam, fam)?;
    xs.iter()
        .map(|&x| {
            let r = ev.eval(fam, x)?;
            Ok(if conjugate { r.conj() } else { r })
        })
        .collect()
}

fn open_output(path: Option<&std::path::Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_single(r: &Evaluation, format: TextFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        TextFormat::Text => {
            writeln!(out, "value = {:.16e},{:.16e}", r.re, r.im)?;
            writeln!(out, "est_abs_error = {:.3e}", r.est_abs_error)?;
            writeln!(out, "sector = {}", r.route)?;
        }
        TextFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, r)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn run(a: EvalArgs) -> Result<()> {
    let mut out = open_output(a.output.as_deref())?;
    if a.hermite {
        let (nu, z) = (a.nu.expect("clap requires --nu"), a.z.expect("clap requires --z"));
        let r = hermite_nu(&ComplexOrder::new(nu)?, z)?;
        let e = Evaluation::new(None, r.value, r.est_abs_error, r.sector_used.to_string());
        return write_single(&e, a.format, &mut out);
    }
    let family = a.family.ok_or_else(|| usage("pass --hermite or --family"))?;
    let lambda = match (a.lambda, a.nu) {
        (Some(l), _) => l,
        (None, Some(nu)) => lambda_from_nu(&ComplexOrder::new(nu)?),
        (None, None) => return Err(usage("pass --lambda or --nu")),
    };
    check_half_plane(lambda, a.conjugate)?;
    match (a.x, a.grid) {
        (Some(x), None) => {
            let r = evaluate_family(lambda, family, &[x])?;
            write_single(&r[0], a.format, &mut out)
        }
        (None, Some(g)) => {
            let xs = uniform_grid(g.start, g.stop, g.count);
            let rs = evaluate_family(lambda, family, &xs)?;
            match a.format {
                TextFormat::Text => {
                    let f = SampledFunction::new(xs, rs.iter().map(Evaluation::value).collect())?;
                    f.write_csv(&mut out)?;
                }
                TextFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &rs)?;
                    writeln!(out)?;
                }
            }
            Ok(())
        }
        _ => Err(usage("pass exactly one of --x or --grid")),
    }
}
