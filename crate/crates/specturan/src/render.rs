//! JSON, CSV and TSV renderings of results and reports.

use anyhow::Result;
use serde_json::Value;
use specturan_core::extremal::{DensityPoint, VerificationReport};
use specturan_core::spectral::Sweep;
use specturan_core::SpectralResult;

use crate::formats::write_hgr;

fn pretty(value: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// The report as JSON, with every witness graph as an HGR text block.
pub fn report_json(report: &VerificationReport) -> Result<String> {
    let mut value = serde_json::to_value(report)?;
    if let Some(Value::Array(ws)) = value.get_mut("witnesses") {
        for (w, original) in ws.iter_mut().zip(&report.witnesses) {
            if let Value::Object(map) = w {
                map.remove("graph");
                map.insert("hgr".into(), Value::String(write_hgr(&original.graph)));
            }
        }
    }
    pretty(&value)
}

fn csv_string(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(row)?;
    }
    Ok(String::from_utf8(wtr.into_inner()?)?)
}

/// The report's table, or its margins when it has none.
pub fn report_csv(report: &VerificationReport) -> Result<String> {
    if !report.table.columns.is_empty() {
        return csv_string(&report.table.columns, &report.table.rows);
    }
    let rows: Vec<Vec<String>> =
        report.margins.iter().map(|m| vec![m.instance.clone(), m.margin.to_string()]).collect();
    csv_string(&["instance".into(), "margin".into()], &rows)
}

pub fn spectral_json(result: &SpectralResult) -> Result<String> {
    pretty(&serde_json::to_value(result)?)
}

const DENSITY_COLUMNS: [&str; 9] =
    ["n", "s", "p", "ex_count", "ex_ratio", "lambda_max", "lambda_scaled", "witness_ex", "witness_lambda"];

pub fn density_csv(points: &[DensityPoint]) -> Result<String> {
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|pt| {
            vec![
                pt.n.to_string(),
                pt.s.to_string(),
                pt.p.to_string(),
                pt.ex_count.to_string(),
                pt.ex_ratio.to_string(),
                pt.lambda_max.to_string(),
                pt.lambda_scaled.to_string(),
                pt.witness_ex.to_hex(),
                pt.witness_lambda.to_hex(),
            ]
        })
        .collect();
    csv_string(&DENSITY_COLUMNS.map(String::from), &rows)
}

pub fn density_json(points: &[DensityPoint]) -> Result<String> {
    pretty(&serde_json::to_value(points)?)
}

/// Two columns, `n` and the scaled spectral density, for plotting.
pub fn density_tsv(points: &[DensityPoint]) -> String {
    let mut out = String::from("n\tlambda_scaled\n");
    for pt in points {
        out.push_str(&format!("{}\t{}\n", pt.n, pt.lambda_scaled));
    }
    out
}

pub fn sweep_csv(sweep: &Sweep) -> Result<String> {
    let header = ["p", "lambda", "f", "scaled", "residual", "converged", "lower_bound", "upper_bound"].map(String::from);
    let rows: Vec<Vec<String>> = sweep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.result.lambda.to_string(),
                r.f.to_string(),
                r.scaled.to_string(),
                r.result.residual.to_string(),
                r.result.converged.to_string(),
                r.result.lower_bound.to_string(),
                r.result.upper_bound.to_string(),
            ]
        })
        .collect();
    csv_string(&header, &rows)
}

pub fn sweep_json(sweep: &Sweep) -> Result<String> {
    pretty(&serde_json::to_value(sweep)?)
}
