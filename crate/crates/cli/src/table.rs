//! Grid evaluation and table rendering.

use std::collections::BTreeMap;
use std::time::Instant;

use qreading::reading::Cutoff;
use rayon::prelude::*;
use serde_json::{json, Map, Value as Json};

use crate::error::CliError;
use crate::format::format_number;
use crate::quantity::{evaluate, Param, Params, Quantity};

/// A table to compute: named axes and one `Params` per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub name: String,
    /// Parameters held constant over the table, for the metadata header.
    pub fixed: Vec<(Param, f64)>,
    /// Column names of the swept values leading each row.
    pub axis_columns: Vec<String>,
    /// Swept values and the full parameter set, in output order.
    pub points: Vec<(Vec<f64>, Params)>,
    pub quantities: Vec<Quantity>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub fixed: Vec<(Param, f64)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Smallest and largest Fock cutoff seen, per Fock-engine quantity.
    pub cutoffs: Vec<(Quantity, usize, usize)>,
    pub wall_time_s: Option<f64>,
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if i + 1 == points {
                stop
            } else {
                start + (stop - start) * (i as f64 / (points - 1) as f64)
            }
        })
        .collect()
}

fn describe_point(columns: &[String], values: &[f64], params: &Params) -> String {
    if columns.is_empty() {
        let set: Vec<String> = Param::ALL
            .iter()
            .filter_map(|&p| params.get(p).map(|v| format!("{p}={}", format_number(v))))
            .collect();
        return set.join(", ");
    }
    columns
        .iter()
        .zip(values)
        .map(|(c, v)| format!("{c}={}", format_number(*v)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Evaluates every point of `job` on the current rayon pool. Rows come back
/// in point order whatever the scheduling, and the first failing point in
/// that order is the one reported.
pub fn run_job(job: &Job, cutoff: Cutoff, timing: bool) -> Result<Table, CliError> {
    let start = Instant::now();
    let results: Vec<_> = job
        .points
        .par_iter()
        .map(|(_, params)| evaluate(&job.quantities, params, cutoff))
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut cutoffs: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for ((axis, params), result) in job.points.iter().zip(results) {
        let values = result.map_err(|e| {
            CliError::from_core(
                e,
                format!(
                    "table {} at {}",
                    job.name,
                    describe_point(&job.axis_columns, axis, params)
                ),
            )
        })?;
        for (i, v) in values.iter().enumerate() {
            if let Some(c) = v.cutoff {
                let e = cutoffs.entry(i).or_insert((c, c));
                e.0 = e.0.min(c);
                e.1 = e.1.max(c);
            }
        }
        let mut row = axis.clone();
        row.extend(values.iter().map(|v| v.value));
        rows.push(row);
    }
    let mut columns = job.axis_columns.clone();
    columns.extend(job.quantities.iter().map(|q| q.name().to_string()));
    Ok(Table {
        name: job.name.clone(),
        fixed: job.fixed.clone(),
        columns,
        rows,
        cutoffs: cutoffs
            .into_iter()
            .map(|(i, (lo, hi))| (job.quantities[i], lo, hi))
            .collect(),
        wall_time_s: timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Tables produced by one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Normalized command description, e.g. `fig fig5`. Flags that do not
    /// change results (threads, output path) are left out so output stays
    /// byte-identical across them.
    pub command: String,
    pub tables: Vec<Table>,
}

pub const TOOL: &str = "qreading";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn cutoff_summary(t: &Table) -> String {
    if t.cutoffs.is_empty() {
        return "none (closed form)".into();
    }
    t.cutoffs
        .iter()
        .map(|(q, lo, hi)| format!("{q}={lo}..{hi}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# {TOOL} {VERSION}\n"));
            out.push_str(&format!("# command: {}\n", self.command));
            out.push_str(&format!("# table: {}\n", t.name));
            if !t.fixed.is_empty() {
                let fixed: Vec<String> = t
                    .fixed
                    .iter()
                    .map(|(p, v)| format!("{p}={}", format_number(*v)))
                    .collect();
                out.push_str(&format!("# fixed: {}\n", fixed.join(" ")));
            }
            out.push_str(&format!("# cutoff: {}\n", cutoff_summary(t)));
            if let Some(w) = t.wall_time_s {
                out.push_str(&format!("# wall-time-s: {w:.3}\n"));
            }
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        // Numbers go through the same nine-digit rounding as the CSV output.
        let num = |x: f64| -> Json {
            format_number(x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Json::Null, Json::Number)
        };
        let tables: Vec<Json> = self
            .tables
            .iter()
            .map(|t| {
                let fixed: Map<String, Json> = t
                    .fixed
                    .iter()
                    .map(|(p, v)| (p.name().to_string(), num(*v)))
                    .collect();
                let cutoffs: Map<String, Json> = t
                    .cutoffs
                    .iter()
                    .map(|(q, lo, hi)| (q.name().to_string(), json!({ "min": lo, "max": hi })))
                    .collect();
                let mut meta = Map::new();
                meta.insert("fixed".into(), Json::Object(fixed));
                meta.insert("cutoff".into(), Json::Object(cutoffs));
                if let Some(w) = t.wall_time_s {
                    meta.insert("wall_time_s".into(), json!(w));
                }
                let rows: Vec<Json> = t
                    .rows
                    .iter()
                    .map(|r| Json::Array(r.iter().map(|&x| num(x)).collect()))
                    .collect();
                json!({
                    "name": t.name,
                    "meta": meta,
                    "columns": t.columns,
                    "rows": rows,
                })
            })
            .collect();
        let doc = json!({
            "meta": { "tool": TOOL, "version": VERSION, "command": self.command },
            "tables": tables,
        });
        let mut s = serde_json::to_string(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}
