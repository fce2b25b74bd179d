//! Text formats that need `std`: CSV and JSON distribution tables and JSON
//! verification reports.
//!
//! Table rows come out in ascending key order, so the same table always
//! serializes to the same bytes.

use std::io;

use dyckbij_core::{DistributionTable, Pattern, PermError, Permutation, VerificationReport};
use serde_json::{json, Map, Value};

/// Compact pattern text: `321` when every entry is a single digit,
/// otherwise the entries joined by `-` (commas would clash with CSV).
pub fn pattern_text(pattern: &Pattern) -> String {
    let sep = if pattern.values().iter().all(|&v| v <= 9) {
        ""
    } else {
        "-"
    };
    pattern
        .values()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Accepts the compact digit form (`321`) as well as the comma form
/// (`3,2,1`).
pub fn parse_pattern(text: &str) -> Result<Pattern, PermError> {
    let text = text.trim();
    if !text.contains(',') && text.len() > 1 && text.bytes().all(|b| b.is_ascii_digit()) {
        return Permutation::new(text.bytes().map(|b| (b - b'0') as usize).collect());
    }
    text.parse()
}

fn header(table: &DistributionTable) -> Vec<&'static str> {
    let mut h = vec!["n", "pattern"];
    h.extend(table.stats.iter().map(|s| s.name()));
    h.push("count");
    h
}

/// `n,pattern,<stat names…>,count`, one row per key.
pub fn write_table_csv<W: io::Write>(table: &DistributionTable, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(table))?;
    let pattern = pattern_text(&table.pattern);
    for (key, count) in table.rows() {
        let mut record = vec![table.n.to_string(), pattern.clone()];
        record.extend(key.iter().map(|v| v.to_string()));
        record.push(count.to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// The CSV rows as JSON records with the same fields, one record per line.
pub fn table_json(table: &DistributionTable) -> String {
    let pattern = pattern_text(&table.pattern);
    let records: Vec<String> = table
        .rows()
        .map(|(key, count)| {
            let mut m = Map::new();
            m.insert("n".into(), json!(table.n));
            m.insert("pattern".into(), json!(pattern));
            for (stat, v) in table.stats.iter().zip(key) {
                m.insert(stat.name().into(), json!(v));
            }
            m.insert("count".into(), json!(count));
            Value::Object(m).to_string()
        })
        .collect();
    if records.is_empty() {
        return "[]\n".into();
    }
    format!("[\n  {}\n]\n", records.join(",\n  "))
}

pub fn report_json(report: &VerificationReport) -> Value {
    let counterexamples: Vec<Value> = report
        .counterexamples
        .iter()
        .map(|c| {
            json!({
                "n": c.n,
                "subject": c.subject,
                "image": c.image,
                "detail": c.detail,
            })
        })
        .collect();
    json!({
        "check": report.check.name(),
        "n_min": report.n_range.start(),
        "n_max": report.n_range.end(),
        "status": report.status().to_string(),
        "failures": report.failures,
        "counterexamples": counterexamples,
        "notes": report.notes,
        "elapsed_secs": report.elapsed.as_secs_f64(),
    })
}
