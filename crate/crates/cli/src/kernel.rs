use crate::args::{check_half_plane, KernelArgs, TableFormat};
use crate::failure::usage;
use anyhow::{bail, Context, Result};
use hubble_core::resolvent::{kernel_table, write_kernel_csv, FundamentalPair, KernelEvaluation};
use std::io::Write;

/// Largest grid accepted per axis.
const MAX_N: usize = 2000;

pub fn run(a: KernelArgs) -> Result<()> {
    if a.n < 2 {
        return Err(usage(format!("kernel grid needs at least 2 nodes per axis, got {}", a.n)));
    }
    if a.n > MAX_N {
        return Err(usage(format!("kernel grid is limited to {MAX_N} nodes per axis, got {}", a.n)));
    }
    if !(a.sample_box > 0.0 && a.sample_box.is_finite()) {
        return Err(usage(format!("--box must be positive, got {}", a.sample_box)));
    }
    check_half_plane(a.lambda, a.conjugate)?;

    // s_λ = conj(s_λ̄) below the real axis
    let conjugate = a.lambda.im < 0.0;
    let pair = FundamentalPair::build(if conjugate { a.lambda.conj() } else { a.lambda })?;
    let mut rows = kernel_table(&pair, a.sample_box, a.n)?;
    if conjugate {
        for r in &mut rows {
            r.value.im = -r.value.im;
        }
    }

    let constant = rows.iter().map(|r| r.value().norm() / r.envelope).fold(0.0, f64::max);
    eprintln!("envelope constant = {constant:.6e}");

    if a.check_symmetry {
        check_symmetry(&rows, a.n)?;
        eprintln!("symmetry check passed on {} pairs", rows.len());
    }

    let out: Box<dyn Write> = match &a.output {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    match a.format {
        TableFormat::Csv => write_kernel_csv(&rows, out)?,
        TableFormat::Json => {
            let mut out = out;
            serde_json::to_writer(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn check_symmetry(rows: &[KernelEvaluation], n: usize) -> Result<()> {
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (&rows[i * n + j], &rows[j * n + i]);
            if a.value != b.value {
                bail!("kernel symmetry fails at x = {}, x' = {}: {:?} vs {:?}", a.x, a.xp, a.value, b.value);
            }
        }
    }
    Ok(())
}
