//! JSON and text renderings of decompositions, fingerprints and verdicts.
//!
//! JSON is canonical: floats are printed in shortest round-trip form. Text is
//! for humans and keeps six significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bloch::{decompose2, decompose3, BlochBipartite, BlochTripartite, CONVENTION};
use crate::compare::Verdict;
use crate::fingerprint::{FingerprintMetadata, InvariantFingerprint};
use crate::orbit::OrbitSummary;
use crate::states::DensityMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json or text)")),
        }
    }
}

/// Six significant digits, `%g` style.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn vector_json(v: &DVector<f64>) -> Value {
    json!(v.iter().copied().collect::<Vec<f64>>())
}

fn matrix_json(m: &DMatrix<f64>) -> Value {
    json!((0..m.nrows())
        .map(|r| m.row(r).iter().copied().collect::<Vec<f64>>())
        .collect::<Vec<_>>())
}

fn bipartite_blocks(b: &BlochBipartite) -> Value {
    json!({
        "S": vector_json(&b.s),
        "T": vector_json(&b.t),
        "R": matrix_json(&b.r),
    })
}

fn tripartite_blocks(b: &BlochTripartite, unfoldings: bool) -> Result<Value> {
    let [n1, n2, n3] = b.r.shape();
    let r: Vec<Vec<Vec<f64>>> = (0..n1)
        .map(|i| {
            (0..n2)
                .map(|j| (0..n3).map(|k| b.r.get(i, j, k)).collect())
                .collect()
        })
        .collect();
    let mut blocks = json!({
        "S1": vector_json(&b.s[0]),
        "S2": vector_json(&b.s[1]),
        "S3": vector_json(&b.s[2]),
        "T12": matrix_json(&b.t12),
        "T13": matrix_json(&b.t13),
        "T23": matrix_json(&b.t23),
        "R": r,
    });
    if unfoldings {
        blocks["unfoldings"] = json!({
            "R1|23": matrix_json(&b.r.unfold(1)?),
            "R2|13": matrix_json(&b.r.unfold(2)?),
            "R3|12": matrix_json(&b.r.unfold(3)?),
        });
    }
    Ok(blocks)
}

/// Bloch coefficients of a state as a JSON value.
pub fn decomposition_value(state: &DensityMatrix, unfoldings: bool) -> Result<Value> {
    let blocks = match state.parties() {
        2 => bipartite_blocks(&decompose2(state)?),
        3 => tripartite_blocks(&decompose3(state)?, unfoldings)?,
        n => {
            return Err(Error::PartyCount {
                expected: "2 or 3".into(),
                found: n,
            })
        }
    };
    Ok(json!({
        "metadata": { "dims": state.dims(), "convention": CONVENTION },
        "blocks": blocks,
    }))
}

fn text_vector(out: &mut String, name: &str, v: &[f64]) {
    let cells: Vec<String> = v.iter().map(|&x| sig6(x)).collect();
    let _ = writeln!(out, "{name} = [{}]", cells.join(", "));
}

fn text_value(out: &mut String, name: &str, value: &Value) {
    match value {
        Value::Array(rows) if rows.first().is_some_and(Value::is_array) => {
            let _ = writeln!(out, "{name} =");
            for (i, row) in rows.iter().enumerate() {
                text_value(out, &format!("  {name}[{i}]"), row);
            }
        }
        Value::Array(cells) => {
            let v: Vec<f64> = cells.iter().filter_map(Value::as_f64).collect();
            text_vector(out, name, &v);
        }
        Value::Object(map) => {
            for (k, v) in map {
                text_value(out, k, v);
            }
        }
        other => {
            let _ = writeln!(out, "{name} = {other}");
        }
    }
}

pub fn render_decomposition(
    state: &DensityMatrix,
    unfoldings: bool,
    format: Format,
) -> Result<String> {
    let value = decomposition_value(state, unfoldings)?;
    Ok(match format {
        Format::Json => to_json_pretty(&value),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "# dims: {:?}", state.dims());
            let _ = writeln!(out, "# convention: {CONVENTION}");
            // Fixed block order rather than the map's alphabetical order.
            let blocks = &value["blocks"];
            let order: &[&str] = if state.parties() == 2 {
                &["S", "T", "R"]
            } else {
                &["S1", "S2", "S3", "T12", "T13", "T23", "R", "unfoldings"]
            };
            for name in order {
                if let Some(v) = blocks.get(*name) {
                    text_value(&mut out, name, v);
                }
            }
            out
        }
    })
}

fn text_metadata(out: &mut String, meta: &FingerprintMetadata) {
    let _ = writeln!(out, "# dims: {:?}", meta.dims);
    let _ = writeln!(out, "# convention: {}", meta.convention);
    for r in &meta.ranges {
        let _ = writeln!(
            out,
            "# range {}: {}={}..{} ({})",
            r.family, r.power, r.first, r.last, r.rule
        );
    }
    for key in &meta.not_applicable {
        let _ = writeln!(out, "# not applicable: {key}");
    }
}

pub fn render_fingerprint(fp: &InvariantFingerprint, format: Format) -> String {
    match format {
        Format::Json => to_json_pretty(fp),
        Format::Text => {
            let mut out = String::new();
            text_metadata(&mut out, &fp.metadata);
            for (key, value) in fp.entries() {
                let _ = writeln!(out, "{key} = {}", sig6(*value));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct VerdictReport<'a> {
    metadata: &'a FingerprintMetadata,
    status: String,
    tolerance: f64,
    witnesses: &'a [crate::compare::Witness],
}

pub fn render_verdict(verdict: &Verdict, metadata: &FingerprintMetadata, format: Format) -> String {
    match format {
        Format::Json => to_json_pretty(&VerdictReport {
            metadata,
            status: verdict.status.to_string(),
            tolerance: verdict.tolerance,
            witnesses: &verdict.witnesses,
        }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} ({} witnesses, tolerance {:e})",
                verdict.status,
                verdict.witnesses.len(),
                verdict.tolerance
            );
            if !verdict.witnesses.is_empty() {
                let width = verdict
                    .witnesses
                    .iter()
                    .map(|w| w.key.len())
                    .max()
                    .unwrap_or(0)
                    .max(3);
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>12}  {:>12}  {:>12}",
                    "key", "a", "b", "|delta|"
                );
                for w in &verdict.witnesses {
                    let _ = writeln!(
                        out,
                        "{:<width$}  {:>12}  {:>12}  {:>12}",
                        w.key,
                        sig6(w.value_a),
                        sig6(w.value_b),
                        sig6(w.abs_delta)
                    );
                }
            }
            out
        }
    }
}

pub fn render_orbit(summary: &OrbitSummary, format: Format) -> String {
    match format {
        Format::Json => to_json_pretty(summary),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} after {} trials (seed {}, tolerance {:e})",
                summary.status, summary.trials, summary.seed, summary.tolerance
            );
            if !summary.distinct_trials.is_empty() {
                let _ = writeln!(out, "distinct trials: {:?}", summary.distinct_trials);
            }
            for (family, delta) in &summary.max_abs_delta {
                let _ = writeln!(out, "max |delta| {family} = {}", sig6(*delta));
            }
            out
        }
    }
}
