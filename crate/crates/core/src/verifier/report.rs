use std::fmt::Write as _;

use serde::Serialize;

use super::search::brute_force_max;
use super::{SearchConfig, VerificationStatus};
use crate::bounds::{BoundStatus, FunctionalId, Mu};
use crate::error::Result;
use crate::operator::HohlovParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub functional: FunctionalId,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: Option<[f64; 2]>,
    pub printed_bound: f64,
    pub bound_status: BoundStatus,
    pub hypotheses_hold: bool,
    pub numeric_max: f64,
    pub status: VerificationStatus,
    /// Witness coefficients `a₂, a₃, …`, kept for report-only rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_coefficients: Option<Vec<[f64; 2]>>,
    pub witness_margin: f64,
    pub witness_certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub seed: u64,
    pub rows: Vec<DiscrepancyRow>,
}

impl DiscrepancyReport {
    /// Proved rows whose hypotheses hold but which came out `VIOLATED`.
    pub fn proved_violations(&self) -> Vec<&DiscrepancyRow> {
        self.rows
            .iter()
            .filter(|r| {
                r.bound_status == BoundStatus::Proved && r.hypotheses_hold && r.status == VerificationStatus::Violated
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:>22} {:>16} {:>14} {:>14} {:<11} {:<12}",
            "functional", "(a, b, c)", "mu", "bound", "numeric", "status", "kind"
        );
        for r in &self.rows {
            let mu = r.mu.map(|m| format!("{}{:+}i", m[0], m[1])).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:<10} {:>22} {:>16} {:>14.8} {:>14.8} {:<11} {:<12}",
                r.functional.as_str(),
                format!("({}, {}, {})", r.a, r.b, r.c),
                mu,
                r.printed_bound,
                r.numeric_max,
                r.status.as_str(),
                r.bound_status.as_str()
            );
            if let Some(w) = &r.witness_coefficients {
                let coeffs: Vec<String> = w.iter().map(|z| format!("{:.6}{:+.6}i", z[0], z[1])).collect();
                let _ =
                    writeln!(out, "{:<10} witness a2.. = [{}], margin {:.3e}", "", coeffs.join(", "), r.witness_margin);
            }
        }
        out
    }
}

/// Runs every functional at each parameter triple: the Fekete–Szegő
/// functional once per `μ`, the others once.
pub fn discrepancy_report(params: &[HohlovParams], mus: &[Mu], cfg: &SearchConfig) -> Result<DiscrepancyReport> {
    let mut rows = Vec::new();
    for p in params {
        let mut jobs: Vec<(FunctionalId, Option<Mu>)> = mus.iter().map(|m| (m.fs_functional(), Some(*m))).collect();
        jobs.extend(FunctionalId::ALL.iter().filter(|id| !id.needs_mu()).map(|&id| (id, None)));
        for (id, mu) in jobs {
            let r = brute_force_max(id, p, mu, cfg)?;
            let report_only = r.bound_status == BoundStatus::ReportOnly;
            rows.push(DiscrepancyRow {
                functional: id,
                a: p.a,
                b: p.b,
                c: p.c,
                mu: r.mu,
                printed_bound: r.bound,
                bound_status: r.bound_status,
                hypotheses_hold: r.hypotheses_hold,
                numeric_max: r.numeric_max,
                status: r.status,
                witness_coefficients: report_only.then(|| r.witness.coefficients.clone()),
                witness_margin: r.witness.certification.margin,
                witness_certified: r.witness.certification.certified,
            });
        }
    }
    Ok(DiscrepancyReport { seed: cfg.seed, rows })
}
