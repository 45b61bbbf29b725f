//! Report objects from `imbcost_core` rendered as [`Table`]s or plain text.

use std::fmt::Write as _;

use imbcost_core::costs::{self, CostProfile};
use imbcost_core::measures::{self, MeasureId};
use imbcost_core::report::{Series, Table2, Table3};
use imbcost_core::{ClassRates, ConfusionMatrix, Verdict};
use serde::Serialize;

use crate::output::{format_number, Cell, Table};

pub fn table2_table(t: &Table2) -> Table {
    let mut table = Table::new(
        "table2",
        &[
            "p2",
            "e1",
            "e2",
            "ber",
            "ber_lambda12",
            "ber_lambda21",
            "f1",
            "f1_lambda12",
            "f1_lambda21",
            "ber_residual",
            "f1_residual",
        ],
    );
    for c in &t.columns {
        table.push(
            [
                c.p2,
                c.e1,
                c.e2,
                c.ber,
                c.ber_lambda12,
                c.ber_lambda21,
                c.f1,
                c.f1_lambda12,
                c.f1_lambda21,
                c.ber_residual,
                c.f1_residual,
            ]
            .into_iter()
            .map(Cell::Num)
            .collect(),
        );
    }
    table
}

/// Fixed-point with `digits` decimals, without a sign on values that round to zero.
fn fixed(v: f64, digits: usize) -> String {
    let s = format!("{v:.digits$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn text_grid(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |out: &mut String, cells: &[String]| {
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i == 0 {
                let _ = write!(out, "{cell:<w$}");
            } else {
                let _ = write!(out, "  {cell:>w$}");
            }
        }
        out.push('\n');
    };
    line(out, header);
    let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for row in rows {
        line(out, row);
    }
}

/// Transposed layout: one column per population rate, rounded for reading.
pub fn table2_text(t: &Table2) -> String {
    let mut header = vec!["p2".to_string()];
    header.extend(t.columns.iter().map(|c| format!("{:.3}", c.p2)));
    let row = |name: &str, digits: usize, get: fn(&imbcost_core::Table2Column) -> f64| {
        let mut r = vec![name.to_string()];
        r.extend(t.columns.iter().map(|c| fixed(get(c), digits)));
        r
    };
    let rows = vec![
        row("BER", 3, |c| c.ber),
        row("  lambda12", 3, |c| c.ber_lambda12),
        row("  lambda21", 1, |c| c.ber_lambda21),
        row("F1", 3, |c| c.f1),
        row("  lambda12", 1, |c| c.f1_lambda12),
        row("  lambda21", 1, |c| c.f1_lambda21),
    ];
    let mut out = format!(
        "BER and F1 cost values, N = {}, E1 = 0.1, E2 = p2/2\n\n",
        format_number(t.n)
    );
    text_grid(&mut out, &header, &rows);
    let worst = t
        .columns
        .iter()
        .map(|c| c.ber_residual.max(c.f1_residual))
        .fold(0.0, f64::max);
    let _ = writeln!(out, "\nmax cost-identity residual: {worst:.3e}");
    out
}

pub fn table3_table(t: &Table3) -> Table {
    let mut table = Table::new(
        "table3",
        &[
            "measure",
            "p2",
            "skew_ratio",
            "x_b",
            "value",
            "e1_over_p1",
            "e2_over_p2",
            "status",
        ],
    );
    for cell in &t.sweep.cells {
        let mut row = vec![
            Cell::text(cell.id.to_string()),
            Cell::Num(cell.p2),
            Cell::Num((1.0 - cell.p2) / cell.p2),
        ];
        match &cell.result {
            Ok(s) => {
                row.extend([s.x_b, s.value, s.e1_over_p1, s.e2_over_p2].map(Cell::Num));
                row.push("ok".into());
            }
            Err(e) => {
                row.extend([Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing]);
                row.push(Cell::text(e.to_string()));
            }
        }
        table.push(row);
    }
    table
}

pub fn table3_text(t: &Table3) -> String {
    let s = &t.scenario;
    let mut out = format!(
        "Optimum decision boundaries, mu1 = {}, mu2 = {}, sigma1 = {}, sigma2 = {}\n\n",
        format_number(s.mu1()),
        format_number(s.mu2()),
        format_number(s.sigma1()),
        format_number(s.sigma2())
    );
    let mut header = vec!["p2".to_string()];
    header.extend(t.sweep.p2_values.iter().map(|p| format!("{p:.5}")));
    let mut rows = Vec::new();
    for (i, id) in t.sweep.ids.iter().enumerate() {
        let cells = t.sweep.row(i);
        let sense = match id.orientation() {
            measures::Orientation::Maximize => "max",
            measures::Orientation::Minimize => "min",
        };
        let fmt_row = |name: String, f: &dyn Fn(&imbcost_core::OptimumSolution) -> String| {
            let mut r = vec![name];
            r.extend(cells.iter().map(|c| match &c.result {
                Ok(s) => f(s),
                Err(_) => "failed".to_string(),
            }));
            r
        };
        rows.push(fmt_row(format!("({id})_{sense}"), &|s| fixed(s.value, 4)));
        rows.push(fmt_row("  x_b".into(), &|s| fixed(s.x_b, 4)));
        rows.push(fmt_row("  E1/p1".into(), &|s| {
            format!("{:.3e}", s.e1_over_p1)
        }));
        rows.push(fmt_row("  E2/p2".into(), &|s| fixed(s.e2_over_p2, 4)));
    }
    text_grid(&mut out, &header, &rows);
    for cell in &t.sweep.cells {
        if let Err(e) = &cell.result {
            let _ = writeln!(out, "{} at p2 = {}: {e}", cell.id, format_number(cell.p2));
        }
    }
    out
}

pub fn series_table(schema: &str, series: &[Series]) -> Table {
    let mut table = Table::new(schema, &["series", "x_name", "y_name", "x", "y"]);
    for s in series {
        for (x, y) in s.x.iter().zip(&s.y) {
            table.push(vec![
                Cell::text(s.label.as_str()),
                Cell::text(s.x_name.as_str()),
                Cell::text(s.y_name.as_str()),
                Cell::Num(*x),
                Cell::Num(*y),
            ]);
        }
    }
    table
}

pub fn series_text(title: &str, series: &[Series]) -> String {
    let mut out = format!("{title}\n");
    for s in series {
        let _ = writeln!(out, "\n{}  ({} vs {})", s.label, s.y_name, s.x_name);
        for (x, y) in s.x.iter().zip(&s.y) {
            let _ = writeln!(out, "  {:>14}  {:>14}", fmt_sig(*x), fmt_sig(*y));
        }
    }
    out
}

fn fmt_sig(v: f64) -> String {
    if !v.is_finite() {
        format_number(v)
    } else if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e6) {
        format!("{v:.4e}")
    } else {
        fixed(v, 4)
    }
}

pub fn costs_table(profile: &CostProfile, p2_values: &[f64]) -> Result<Table, costs::CostError> {
    let mut table = Table::new(
        "costs",
        &[
            "measure",
            "p2",
            "lambda12",
            "lambda21",
            "cost_type",
            "exactness",
            "verdict",
        ],
    );
    for &p2 in p2_values {
        let (l12, l21) = profile.eval(p2)?;
        table.push(vec![
            Cell::text(profile.id.to_string()),
            Cell::Num(p2),
            Cell::Num(l12),
            Cell::Num(l21),
            profile.cost_type.as_str().into(),
            profile.exactness.as_str().into(),
            profile.verdict().as_str().into(),
        ]);
    }
    Ok(table)
}

pub fn costs_text(profile: &CostProfile, p2_values: &[f64]) -> Result<String, costs::CostError> {
    let mut out = format!(
        "{}: type {} cost functions ({}), {}\n\n",
        profile.id,
        profile.cost_type,
        profile.exactness.as_str(),
        profile.verdict().as_str()
    );
    let header = ["p2", "lambda12", "lambda21"].map(String::from);
    let mut rows = Vec::new();
    for &p2 in p2_values {
        let (l12, l21) = profile.eval(p2)?;
        rows.push(vec![fmt_sig(p2), format!("{l12:.3}"), format!("{l21:.3}")]);
    }
    text_grid(&mut out, &header, &rows);
    Ok(out)
}

/// Cost annotation of one measure, as emitted by the `metrics` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annotation {
    pub cost_type: &'static str,
    pub exactness: &'static str,
    pub verdict: &'static str,
}

pub fn annotation(id: MeasureId) -> Annotation {
    match costs::cost_profile(id) {
        Ok(p) => Annotation {
            cost_type: p.cost_type.as_str(),
            exactness: p.exactness.as_str(),
            verdict: p.verdict().as_str(),
        },
        // F-beta only has error-coupled costs, which still diverge as p2 -> 0.
        Err(_) => Annotation {
            cost_type: "apparent",
            exactness: "apparent",
            verdict: Verdict::Improper.as_str(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureRecord {
    pub measure: String,
    pub value: Option<f64>,
    pub orientation: &'static str,
    #[serde(flatten)]
    pub annotation: Annotation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub record: usize,
    pub source: String,
    pub tn: f64,
    pub fp: f64,
    #[serde(rename = "fn")]
    pub fn_: f64,
    pub tp: f64,
    pub p2: f64,
    pub skew_ratio: f64,
    pub measures: Vec<MeasureRecord>,
}

pub fn metrics_record(
    record: usize,
    source: String,
    matrix: &ConfusionMatrix,
    rates: &ClassRates,
    betas: &[f64],
) -> MetricsRecord {
    let measures = measures::evaluate_all_with_betas(rates, betas)
        .into_iter()
        .map(|(id, v)| MeasureRecord {
            measure: id.to_string(),
            value: v.as_ref().ok().map(|v| v.value),
            orientation: id.orientation().as_str(),
            annotation: annotation(id),
            error: v.err().map(|e| e.to_string()),
        })
        .collect();
    MetricsRecord {
        record,
        source,
        tn: matrix.tn(),
        fp: matrix.fp(),
        fn_: matrix.fn_(),
        tp: matrix.tp(),
        p2: rates.p2(),
        skew_ratio: rates.skew_ratio(),
        measures,
    }
}

/// Wide layout: per measure a value column plus `_type` and `_verdict` columns.
/// Degenerate values are written as `degenerate`.
pub fn metrics_table(records: &[MetricsRecord]) -> Table {
    let mut columns: Vec<String> = ["record", "tn", "fp", "fn", "tp", "p2", "skew_ratio"]
        .map(String::from)
        .to_vec();
    if let Some(first) = records.first() {
        for m in &first.measures {
            columns.push(m.measure.clone());
            columns.push(format!("{}_type", m.measure));
            columns.push(format!("{}_verdict", m.measure));
        }
    }
    let mut table = Table {
        schema: "metrics".to_string(),
        columns,
        rows: Vec::new(),
    };
    for r in records {
        let mut row = vec![
            Cell::Int(r.record as u64),
            Cell::Num(r.tn),
            Cell::Num(r.fp),
            Cell::Num(r.fn_),
            Cell::Num(r.tp),
            Cell::Num(r.p2),
            Cell::Num(r.skew_ratio),
        ];
        for m in &r.measures {
            row.push(m.value.map_or_else(|| "degenerate".into(), Cell::Num));
            row.push(m.annotation.cost_type.into());
            row.push(m.annotation.verdict.into());
        }
        table.push(row);
    }
    table
}

pub fn metrics_json(records: &[MetricsRecord]) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        schema: &'static str,
        rows: &'a [MetricsRecord],
    }
    let mut out = serde_json::to_string_pretty(&Doc {
        schema: "metrics",
        rows: records,
    })
    .expect("metrics serialize");
    out.push('\n');
    out
}
