use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{
    reconstruct_dominator, CrossValidationReport, FullClassification, LpSolveCounts, OrientedClass,
    ParetoClass, RouteResult,
};
use crate::dataset::Dataset;
use crate::dominance::IoPoint;
use crate::error::Result;
use crate::models::UnifiedOutcome;

/// One unit of a classification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitRecord {
    pub name: String,
    pub pareto: ParetoClass,
    pub input: Option<OrientedClass>,
    pub output: Option<OrientedClass>,
    /// Whether the dominance program had a solution; `None` if it was not run.
    pub feasible: Option<bool>,
    pub t_minus: Option<Vec<f64>>,
    pub t_plus: Option<Vec<f64>>,
    pub sum_t_minus: Option<usize>,
    pub sum_t_plus: Option<usize>,
    pub sigma: Option<f64>,
    pub dominator: Option<IoPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub unified: Option<usize>,
    pub three_pass: Option<LpSolveCounts>,
    /// `three-pass` for nonnegative data, `pareto` otherwise.
    pub rdse_route: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub agreed: usize,
    pub total: usize,
    pub oriented_compared: bool,
    pub disagreeing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub units: Vec<UnitRecord>,
    pub lp_solves: SolveSummary,
    pub agreement: Option<Agreement>,
}

impl ClassificationReport {
    /// Builds the report from whichever routes were run. Labels come from the
    /// unified route when present.
    pub fn assemble(
        ds: &Dataset,
        unified: Option<&RouteResult>,
        rdse: Option<&RouteResult>,
        comparison: Option<&CrossValidationReport>,
    ) -> Result<Self> {
        let primary = unified.or(rdse).map(|r| r.units.as_slice()).unwrap_or_default();
        let units = primary
            .iter()
            .map(|c| unit_record(ds, c))
            .collect::<Result<Vec<_>>>()?;
        let agreement = comparison.map(|r| Agreement {
            agreed: r.agreement_count(),
            total: r.units.len(),
            oriented_compared: r.oriented_compared,
            disagreeing: r
                .units
                .iter()
                .filter(|u| !u.agrees())
                .map(|u| u.name.clone())
                .collect(),
        });
        Ok(Self {
            units,
            lp_solves: SolveSummary {
                unified: unified.map(|r| r.lp_solves.total()),
                three_pass: rdse.map(|r| r.lp_solves),
                rdse_route: rdse.map(|_| {
                    if ds.is_nonnegative() {
                        "three-pass"
                    } else {
                        "pareto"
                    }
                }),
            },
            agreement,
        })
    }

    pub fn fully_agrees(&self) -> bool {
        self.agreement.as_ref().is_none_or(|a| a.agreed == a.total)
    }
}

fn unit_record(ds: &Dataset, c: &FullClassification) -> Result<UnitRecord> {
    let mut record = UnitRecord {
        name: c.name.clone(),
        pareto: c.pareto,
        input: c.input,
        output: c.output,
        feasible: None,
        t_minus: None,
        t_plus: None,
        sum_t_minus: None,
        sum_t_plus: None,
        sigma: None,
        dominator: None,
    };
    match &c.evidence {
        None => {}
        Some(UnifiedOutcome::Infeasible) => record.feasible = Some(false),
        Some(outcome @ UnifiedOutcome::Feasible(sol)) => {
            record.feasible = Some(true);
            record.t_minus = Some(sol.t_minus.clone());
            record.t_plus = Some(sol.t_plus.clone());
            record.sum_t_minus = Some(sol.sum_t_minus);
            record.sum_t_plus = Some(sol.sum_t_plus);
            record.sigma = Some(sol.sigma);
            record.dominator = Some(reconstruct_dominator(outcome, ds, c.index)?);
        }
    }
    Ok(record)
}

/// Which oriented column groups a table shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Columns {
    pub input: bool,
    pub output: bool,
}

/// Compact decimal: integers without a fraction, others to six places.
pub fn fmt_num(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        return format!("{}", r + 0.0);
    }
    let s = format!("{v:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter().map(|&c| fmt_num(c)).collect::<Vec<_>>().join(", ")
}

fn oriented_cells(
    label: Option<OrientedClass>,
    suffix: &str,
    out: &mut Vec<String>,
    header: &mut Vec<String>,
) {
    for class in OrientedClass::ALL {
        header.push(format!("{}_{suffix}", class.as_str()));
        out.push(match label {
            None => "n/a".into(),
            Some(l) if l == class => "✓".into(),
            Some(_) => String::new(),
        });
    }
}

fn table_row(cells: &[String]) -> String {
    format!("| {} |\n", cells.join(" | "))
}

pub fn render_markdown(report: &ClassificationReport, columns: Columns) -> String {
    let mut out = String::new();
    let mut header = vec!["DMU".to_string()];
    let mut rows = Vec::new();
    for (k, u) in report.units.iter().enumerate() {
        let mut cells = vec![u.name.clone()];
        let mut h = Vec::new();
        if columns.input {
            oriented_cells(u.input, "I", &mut cells, &mut h);
        }
        if columns.output {
            oriented_cells(u.output, "O", &mut cells, &mut h);
        }
        for class in ParetoClass::ALL {
            h.push(format!("{}_P", class.as_str().trim_end_matches('P')));
            cells.push(if u.pareto == class {
                "✓".into()
            } else {
                String::new()
            });
        }
        if k == 0 {
            header.extend(h);
        }
        rows.push(cells);
    }
    out.push_str(&table_row(&header));
    out.push_str(&table_row(&vec!["---".to_string(); header.len()]));
    for r in &rows {
        out.push_str(&table_row(r));
    }

    if report.units.iter().any(|u| u.feasible.is_some()) {
        out.push('\n');
        out.push_str(&table_row(
            &["DMU", "program", "t-", "t+", "sigma", "dominator"].map(String::from),
        ));
        out.push_str(&table_row(&vec!["---".to_string(); 6]));
        for u in &report.units {
            let cells = match (u.feasible, &u.t_minus, &u.t_plus, &u.dominator) {
                (Some(true), Some(tm), Some(tp), Some(d)) => vec![
                    u.name.clone(),
                    "feasible".into(),
                    fmt_vec(tm),
                    fmt_vec(tp),
                    fmt_num(u.sigma.unwrap_or(f64::NAN)),
                    format!("({}; {})", fmt_vec(&d.x), fmt_vec(&d.y)),
                ],
                _ => vec![
                    u.name.clone(),
                    "infeasible".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                    "-".into(),
                ],
            };
            out.push_str(&table_row(&cells));
        }
    }

    out.push('\n');
    let solves = &report.lp_solves;
    if let Some(n) = solves.unified {
        let _ = writeln!(out, "LP solves, dominance program: {n}");
    }
    if let (Some(c), Some(route)) = (solves.three_pass, solves.rdse_route) {
        let _ = writeln!(
            out,
            "LP solves, super-efficiency ({route}): {} ({} first stage, {} slack stage)",
            c.total(),
            c.stage_one,
            c.stage_two
        );
    }
    if let Some(a) = &report.agreement {
        let scope = if a.oriented_compared {
            "input, output and Pareto"
        } else {
            "Pareto"
        };
        let _ = writeln!(out, "Agreement ({scope} labels): {}/{}", a.agreed, a.total);
        if !a.disagreeing.is_empty() {
            let _ = writeln!(out, "Disagreeing units: {}", a.disagreeing.join(", "));
        }
    }
    out
}

pub fn render_json(report: &ClassificationReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| crate::DeaError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render_csv(report: &ClassificationReport, columns: Columns) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| crate::DeaError::Io(e.into());
    let mut header = vec!["dmu", "pareto"];
    if columns.input {
        header.push("input");
    }
    if columns.output {
        header.push("output");
    }
    header.extend(["sum_t_minus", "sum_t_plus", "sigma"]);
    w.write_record(&header).map_err(to_err)?;
    let label = |l: Option<OrientedClass>| l.map_or("n/a", OrientedClass::as_str).to_string();
    let opt = |v: Option<usize>| v.map(|c| c.to_string()).unwrap_or_default();
    for u in &report.units {
        let mut row = vec![u.name.clone(), u.pareto.as_str().to_string()];
        if columns.input {
            row.push(label(u.input));
        }
        if columns.output {
            row.push(label(u.output));
        }
        row.push(opt(u.sum_t_minus));
        row.push(opt(u.sum_t_plus));
        row.push(u.sigma.map(|v| format!("{v}")).unwrap_or_default());
        w.write_record(&row).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::DeaError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| crate::DeaError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_compact() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.5), "1.5");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_num(2.0 + 1e-12), "2");
    }
}
