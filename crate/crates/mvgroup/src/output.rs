//! CSV and JSON renderings of the library's tables.

use std::fmt::Write as _;

use mvgroup_core::cayley::{ComparisonReport, GrowthTable, PowerTable};
use mvgroup_core::dynamics::{BoundsReport, DynamicsTable, GrowthClassification, GrowthVerdict};
use mvgroup_core::{Element, MultiSet};
use serde_json::{json, Value};

use crate::config::SCHEMA_VERSION;

pub fn growth_csv(table: &GrowthTable) -> String {
    let mut out = String::from("r,ball,sphere\n");
    for (r, ball, sphere) in table.rows() {
        let _ = writeln!(out, "{r},{ball},{sphere}");
    }
    out
}

pub fn growth_json(table: &GrowthTable, render: &dyn Fn(&Element) -> String, emit_elements: bool) -> Value {
    let rows: Vec<Value> = table
        .rows()
        .map(|(r, ball, sphere)| {
            let mut row = json!({ "r": r, "ball": ball, "sphere": sphere });
            if emit_elements {
                row["elements"] = table.spheres[r].iter().map(render).collect();
            }
            row
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "growth",
        "center": render(&table.center),
        "generators": table.generators.iter().map(render).collect::<Vec<_>>(),
        "rows": rows,
    })
}

pub fn powers_csv(table: &PowerTable) -> String {
    let mut out = String::from("r,bstar,sstar_size\n");
    for (r, bstar, sstar) in table.rows() {
        let _ = writeln!(out, "{r},{bstar},{sstar}");
    }
    out
}

pub fn powers_json(table: &PowerTable, render: &dyn Fn(&Element) -> String, emit_elements: bool) -> Value {
    let rows: Vec<Value> = table
        .rows()
        .map(|(r, bstar, sstar)| {
            let mut row = json!({ "r": r, "bstar": bstar, "sstar_size": sstar });
            if emit_elements {
                row["sstar"] = table.spheres[r].iter().map(render).collect();
            }
            row
        })
        .collect();
    json!({ "schema": SCHEMA_VERSION, "kind": "powers", "x": render(&table.base), "rows": rows })
}

pub fn dynamics_csv(table: &DynamicsTable) -> String {
    let mut out = String::from("r,xi\n");
    for (r, xi) in table.xi().into_iter().enumerate() {
        let _ = writeln!(out, "{r},{xi}");
    }
    out
}

pub fn bounds_csv(report: &BoundsReport) -> String {
    let mut out = String::from("r,xi,lower_bound,upper_bound,verdict\n");
    for row in &report.rows {
        let verdict = if row.holds() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{},{},{},{},{verdict}", row.r, row.xi, row.lower_bound(), row.monoid_ball);
    }
    out
}

pub fn dynamics_json(
    table: &DynamicsTable,
    bounds: Option<&BoundsReport>,
    classification: Option<&GrowthClassification>,
    render: &dyn Fn(&Element) -> String,
    emit_elements: bool,
) -> Value {
    let rows: Vec<Value> = table
        .supports
        .iter()
        .enumerate()
        .map(|(r, support)| {
            let mut row = json!({ "r": r, "xi": support.len() });
            if let Some(b) = bounds.map(|b| &b.rows[r]) {
                row["lower_bound"] = json!(b.lower_bound());
                row["upper_bound"] = json!(b.monoid_ball);
                row["verdict"] = json!(b.holds());
            }
            if emit_elements {
                row["support"] = support.iter().map(render).collect();
            }
            row
        })
        .collect();
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "kind": "dynamics",
        "z": render(&table.z),
        "y": render(&table.y),
        "rows": rows,
    });
    if let Some(c) = classification {
        doc["classification"] = classification_json(c);
    }
    doc
}

pub fn classification_json(c: &GrowthClassification) -> Value {
    json!({
        "verdict": verdict_name(&c.verdict),
        "degree": c.degree,
        "r_squared": c.r_squared,
        "min_ratio": c.min_ratio,
        "base": c.base,
        "caveat": "heuristic: describes finitely many rows, proves nothing",
    })
}

pub fn verdict_name(v: &GrowthVerdict) -> &'static str {
    match v {
        GrowthVerdict::Bounded => "bounded",
        GrowthVerdict::Polynomial { .. } => "empirically-polynomial",
        GrowthVerdict::Exponential { .. } => "empirically-exponential",
        GrowthVerdict::Inconclusive => "inconclusive",
    }
}

pub fn classification_line(c: &GrowthClassification) -> String {
    let detail = match c.verdict {
        GrowthVerdict::Polynomial { degree } => format!(" degree={degree:.3}"),
        GrowthVerdict::Exponential { base } => format!(" base={base:.3}"),
        _ => String::new(),
    };
    format!("growth: {}{detail} (heuristic, not a theorem)", verdict_name(&c.verdict))
}

pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("r,lower,middle,upper,verdict\n");
    for row in &report.rows {
        let verdict = if row.holds() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{},{},{},{},{verdict}", row.r, row.lower, row.middle, row.upper);
    }
    out
}

pub fn comparison_json(report: &ComparisonReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| json!({ "r": r.r, "lower": r.lower, "middle": r.middle, "upper": r.upper, "verdict": r.holds() }))
        .collect();
    json!({ "schema": SCHEMA_VERSION, "kind": "compare", "constant": report.constant, "rows": rows })
}

pub fn render_multiset(ms: &MultiSet<Element>, render: &dyn Fn(&Element) -> String) -> String {
    let parts: Vec<String> = ms.iter().map(|(x, m)| format!("{}:{m}", render(x))).collect();
    format!("{{{}}}", parts.join(", "))
}
