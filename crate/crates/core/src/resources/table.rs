use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use super::{CostModel, DepthModel, ResourceError, ResourceReport};
use crate::published::{deviation_pct, ComponentRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = ResourceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(ResourceError::UnknownMode {
                what: "format",
                value: s.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    #[serde(flatten)]
    pub report: ResourceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<ComponentRow>,
}

impl ReportRow {
    fn deviations(&self) -> Option<serde_json::Value> {
        let p = self.published.as_ref()?;
        let r = &self.report;
        let d = |ours: u64, theirs: u64| deviation_pct(ours as f64, theirs as f64);
        Some(json!({
            "total_pct": d(r.total_gates, p.total),
            "cost_pct": d(r.cost_excl_swap, p.cost),
            "cost_swap_pct": d(r.cost_incl_swap, p.cost_swap),
            "depth_pct": d(r.depth, p.depth),
        }))
    }
}

const HEADERS: [&str; 10] = [
    "LAYER",
    "QUBITS",
    "NOT",
    "CNOT",
    "CCNOT",
    "SWAP",
    "TOTAL",
    "COST",
    "COST(SWAP)",
    "DEPTH",
];

fn cells(r: &ResourceReport) -> [String; 10] {
    let h = &r.histogram;
    [
        r.component.clone(),
        r.qubits.to_string(),
        h.not.to_string(),
        h.cnot.to_string(),
        h.ccnot.to_string(),
        h.swap.to_string(),
        r.total_gates.to_string(),
        r.cost_excl_swap.to_string(),
        r.cost_incl_swap.to_string(),
        r.depth.to_string(),
    ]
}

fn published_cells(p: &ComponentRow) -> [String; 10] {
    [
        "  published".to_string(),
        p.qubits
            .map(|q| q.to_string())
            .unwrap_or_else(|| "-".into()),
        p.not.to_string(),
        p.cnot.to_string(),
        p.ccnot.to_string(),
        p.swap.to_string(),
        p.total.to_string(),
        p.cost.to_string(),
        p.cost_swap.to_string(),
        p.depth.to_string(),
    ]
}

fn convention(cost: &CostModel, depth: &DepthModel) -> serde_json::Value {
    json!({
        "cost": format!("NOT*{} + CNOT*{} + CCNOT*{} (+ 3*SWAP in COST(SWAP))", cost.not_w, cost.cnot_w, cost.ccnot_w),
        "depth": depth.describe(),
        "depth_model": depth,
        "cost_model": cost,
    })
}

/// Renders rows as aligned text, CSV, or a JSON document; every format
/// carries the cost and depth conventions.
pub fn render(
    rows: &[ReportRow],
    cost: &CostModel,
    depth: &DepthModel,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Json => {
            let doc = json!({
                "kind": "report",
                "convention": convention(cost, depth),
                "rows": rows.iter().map(|r| {
                    let mut v = serde_json::to_value(r).expect("rows serialize");
                    if let Some(d) = r.deviations() {
                        v["deviation"] = d;
                    }
                    v
                }).collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut s = format!("# depth convention: {}\n", depth.describe());
            let _ = writeln!(s, "source,{}", HEADERS.join(","));
            for r in rows {
                let _ = writeln!(s, "ours,{}", cells(&r.report).join(","));
                if let Some(p) = &r.published {
                    let mut c = published_cells(p);
                    c[0] = r.report.component.clone();
                    let _ = writeln!(s, "published,{}", c.join(","));
                }
            }
            s
        }
        ReportFormat::Text => {
            let mut lines: Vec<[String; 10]> = vec![HEADERS.map(String::from)];
            let mut notes = Vec::new();
            for r in rows {
                lines.push(cells(&r.report));
                if let Some(p) = &r.published {
                    lines.push(published_cells(p));
                    if let Some(d) = r.deviations() {
                        notes.push(format!(
                            "{}: total {:+.2}%, cost {:+.2}%, cost(swap) {:+.2}%, depth {:+.2}%",
                            r.report.component,
                            d["total_pct"].as_f64().unwrap_or(0.0),
                            d["cost_pct"].as_f64().unwrap_or(0.0),
                            d["cost_swap_pct"].as_f64().unwrap_or(0.0),
                            d["depth_pct"].as_f64().unwrap_or(0.0),
                        ));
                    }
                }
            }
            let widths: Vec<usize> = (0..10)
                .map(|i| lines.iter().map(|l| l[i].len()).max().unwrap_or(0))
                .collect();
            let mut s = String::new();
            for l in &lines {
                let row: Vec<String> = l
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        if i == 0 {
                            format!("{c:<w$}", w = widths[i])
                        } else {
                            format!("{c:>w$}", w = widths[i])
                        }
                    })
                    .collect();
                let _ = writeln!(s, "{}", row.join("  ").trim_end());
            }
            let _ = writeln!(s, "\ncost: NOT + CNOT + 6*CCNOT; COST(SWAP) adds 3*SWAP");
            let _ = writeln!(s, "depth: {}", depth.describe());
            if !notes.is_empty() {
                let _ = writeln!(s, "\nsigned deviation from published values:");
                for n in notes {
                    let _ = writeln!(s, "  {n}");
                }
            }
            s
        }
    }
}
