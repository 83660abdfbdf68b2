//! The JSON run report every subcommand emits, plus the CSV export of
//! modulus curves.

use anyhow::{bail, Result};
use serde::Serialize;

use rectcon::{
    IpsReport, ModulusPoint, MuWitness, NormSpec, OrthoCertificate, SearchConfig, SegmentReport,
    VerifyReport,
};

/// One run, one document. Keys are emitted in declaration order and all
/// numbers use shortest-round-trip formatting, so identical runs produce
/// byte-identical reports apart from `elapsed_s`.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    /// Canonical echo of the norm descriptor the run operated on; absent
    /// for `verify` runs over generated polygons, which are reproducible
    /// from the recorded seed instead.
    pub norm: Option<NormSpec>,
    pub config: SearchConfig,
    pub result: CommandResult,
    pub elapsed_s: f64,
    pub tool_version: String,
}

/// Typed payloads of the subcommands, serialized without an outer tag.
#[derive(Serialize)]
#[serde(untagged)]
pub enum CommandResult {
    Mu(MuWitness),
    Modulus(Vec<ModulusPoint>),
    Ortho {
        orthogonal: bool,
        certificate: OrthoCertificate,
    },
    Segments(SegmentReport),
    Ips(IpsReport),
    Verify(VerifyReport),
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Renders a modulus curve as CSV: a fixed header, one row per lambda,
/// numbers with 17 significant digits (enough to round-trip an f64), `.` as
/// the decimal separator.
pub fn modulus_csv(points: &[ModulusPoint]) -> Result<String> {
    let mut out = String::from(
        "lambda,star_value,value,witness_x1,witness_x2,witness_y1,witness_y2,witness_t\n",
    );
    for p in points {
        let (xc, yc) = (p.witness.x.coords(), p.witness.y.coords());
        if xc.len() != 2 || yc.len() != 2 {
            bail!("CSV export covers two-dimensional witnesses, got dimension {}", xc.len());
        }
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            sig17(p.lambda),
            sig17(p.star_value),
            sig17(p.value),
            sig17(xc[0]),
            sig17(xc[1]),
            sig17(yc[0]),
            sig17(yc[1]),
            sig17(p.witness.t),
        ));
    }
    Ok(out)
}

/// 17 significant digits: one leading digit plus 16 after the point.
fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}
