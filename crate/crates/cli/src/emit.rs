//! Output rendering: CSV and JSON with full-precision floats.

use std::io::Write;
use std::path::Path;

use crate::config::{model_name, Experiment};
use crate::experiment::Table;
use crate::CliError;

/// Scientific notation with 17 significant digits, enough for an exact
/// round trip back to the same f64.
pub fn float_repr(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub enum JsonValue {
    Str(String),
    Float(f64),
    Int(u64),
    Bool(bool),
}

impl JsonValue {
    fn render(&self) -> String {
        match self {
            JsonValue::Str(s) => {
                let escaped: String = s
                    .chars()
                    .flat_map(|c| match c {
                        '"' | '\\' => vec!['\\', c],
                        _ => vec![c],
                    })
                    .collect();
                format!("\"{escaped}\"")
            }
            JsonValue::Float(v) => float_repr(*v),
            JsonValue::Int(v) => v.to_string(),
            JsonValue::Bool(v) => v.to_string(),
        }
    }
}

/// The resolved settings echoed into output files, in a fixed key order.
pub fn config_echo(exp: &Experiment) -> Vec<(&'static str, JsonValue)> {
    let mut echo = vec![
        ("preset", JsonValue::Str(exp.preset_name.clone())),
        ("freq_ghz", JsonValue::Float(exp.freq_ghz)),
        ("rows", JsonValue::Int(exp.grid.rows() as u64)),
        ("cols", JsonValue::Int(exp.grid.cols() as u64)),
        ("spacing_m", JsonValue::Float(exp.spacing_m)),
        ("bits", JsonValue::Int(u64::from(exp.quantizer.bits()))),
        ("tx_az_deg", JsonValue::Float(exp.tx_deg.0)),
        ("tx_el_deg", JsonValue::Float(exp.tx_deg.1)),
        ("tx_dist_m", JsonValue::Float(exp.tx_deg.2)),
        ("rx_az_deg", JsonValue::Float(exp.rx_deg.0)),
        ("rx_el_deg", JsonValue::Float(exp.rx_deg.1)),
        ("rx_dist_m", JsonValue::Float(exp.rx_deg.2)),
        ("start", JsonValue::Float(exp.start)),
        ("stop", JsonValue::Float(exp.stop)),
        ("points", JsonValue::Int(exp.points as u64)),
    ];
    if let Some((start2, stop2, points2)) = exp.axis2_window {
        echo.push(("start2", JsonValue::Float(start2)));
        echo.push(("stop2", JsonValue::Float(stop2)));
        echo.push(("points2", JsonValue::Int(points2 as u64)));
    }
    echo.push(("trials", JsonValue::Int(exp.trials as u64)));
    echo.push(("seed", JsonValue::Int(exp.seed)));
    echo.push((
        "distance_model",
        JsonValue::Str(model_name(exp.model).to_owned()),
    ));
    echo.push(("with_mc", JsonValue::Bool(exp.with_mc)));
    echo.push(("db", JsonValue::Bool(exp.db)));
    echo
}

pub fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| float_repr(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(
    experiment: &str,
    config: &[(&'static str, JsonValue)],
    table: &Table,
) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"experiment\": \"{experiment}\",\n"));
    out.push_str("  \"config\": {\n");
    for (i, (key, value)) in config.iter().enumerate() {
        let comma = if i + 1 < config.len() { "," } else { "" };
        out.push_str(&format!("    \"{key}\": {}{comma}\n", value.render()));
    }
    out.push_str("  },\n");
    let columns: Vec<String> = table.columns.iter().map(|c| format!("\"{c}\"")).collect();
    out.push_str(&format!("  \"columns\": [{}],\n", columns.join(", ")));
    out.push_str("  \"rows\": [\n");
    for (i, row) in table.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| float_repr(*v)).collect();
        let comma = if i + 1 < table.rows.len() { "," } else { "" };
        out.push_str(&format!("    [{}]{comma}\n", cells.join(", ")));
    }
    out.push_str("  ]\n");
    out.push_str("}\n");
    out
}

/// Writes to the given path, or to stdout when no path is set.
pub fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".to_owned(),
                source,
            }),
    }
}
