use crate::args::{MapArgs, TableFormat};
use crate::failure::usage;
use anyhow::{Context, Result};
use hubble_core::spectrum::{spectrum_map, write_map_csv, LebesgueExponent, ProbeSettings, SpectrumMap};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Serialize)]
struct JsonNode {
    re_lambda: f64,
    im_lambda: f64,
    region: &'static str,
    point_spectrum: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    probe: Option<f64>,
}

fn json_nodes(map: &SpectrumMap) -> Vec<JsonNode> {
    map.nodes
        .iter()
        .map(|n| JsonNode {
            re_lambda: n.lambda.re,
            im_lambda: n.lambda.im,
            region: n.verdict.region.name(),
            point_spectrum: n.verdict.point_spectrum.name(),
            probe: n.probe,
        })
        .collect()
}

pub fn run(a: MapArgs) -> Result<()> {
    let p: LebesgueExponent = a.p.parse().map_err(|e| usage(format!("--p: {e}")))?;
    let probe = a.probe.then_some(ProbeSettings { sample_box: a.probe_box, n: a.probe_n });
    let map = spectrum_map(p, a.re, a.im, a.resolution, probe)?;

    let mut out: Box<dyn Write> = match &a.output {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    match a.format {
        TableFormat::Csv => write_map_csv(&map, &mut out)?,
        TableFormat::Json => {
            serde_json::to_writer(&mut out, &json_nodes(&map))?;
            writeln!(out)?;
        }
    }
    out.flush()?;

    let metadata = serde_json::to_string_pretty(&map.metadata())?;
    let sidecar: Option<PathBuf> = a.metadata.clone().or_else(|| {
        a.output
            .as_ref()
            .map(|o| o.with_extension("json"))
            .filter(|m| Some(m) != a.output.as_ref())
    });
    match sidecar {
        Some(path) => std::fs::write(&path, metadata + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => eprintln!("{metadata}"),
    }
    Ok(())
}
