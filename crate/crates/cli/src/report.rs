//! Report assembly and rendering. JSON reports follow
//! `schema/report.schema.json`; TSV column order is fixed.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;

use magicineq::evaluator::SignCertificate;
use magicineq::numerics::Rational;
use magicineq::verifier::{Certificate, Evidence, NamedEnclosure, Status, DECIMAL_DIGITS};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Serialize)]
pub struct Config {
    pub command: String,
    pub order: usize,
    pub precision: u32,
    pub format: Format,
    pub mutations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

/// One evaluation point with whichever sign certificates were requested.
#[derive(Debug, Serialize)]
pub struct Point {
    pub t_num: String,
    pub t_den: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<SignCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<SignCertificate>,
}

impl Point {
    pub fn new(t: &Rational, a: Option<SignCertificate>, b: Option<SignCertificate>) -> Self {
        Point { t_num: t.numer().to_string(), t_den: t.denom().to_string(), a, b }
    }

    fn statuses(&self) -> impl Iterator<Item = Status> + '_ {
        self.a.iter().chain(self.b.iter()).map(|c| c.status)
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub config: Config,
    pub certificates: Vec<Certificate>,
    pub points: Vec<Point>,
    pub summary: Summary,
    /// Milliseconds per check, present only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(
        config: Config,
        certificates: Vec<Certificate>,
        points: Vec<Point>,
        timings_ms: Option<BTreeMap<String, f64>>,
    ) -> Self {
        let mut summary = Summary::default();
        let statuses = certificates.iter().map(|c| c.status).chain(points.iter().flat_map(Point::statuses));
        for s in statuses {
            match s {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            tool: "magicineq",
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            config,
            certificates,
            points,
            summary,
            timings_ms,
        }
    }

    /// 0 when everything passes, 1 on any failure, 2 when something is
    /// inconclusive and nothing failed.
    pub fn exit_code(&self) -> u8 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if self.points.is_empty() {
            out.push_str("check_id\tstatus\tkind\tdetail\n");
            for c in &self.certificates {
                let (kind, detail) = evidence_cells(&c.evidence);
                writeln!(out, "{}\t{}\t{kind}\t{detail}", c.check_id, c.status.as_str()).unwrap();
            }
        } else {
            out.push_str("t_num\tt_den\tA_status\tA_lo\tA_hi\tA_route\tB_status\tB_lo\tB_hi\tB_route\n");
            for p in &self.points {
                write!(out, "{}\t{}", p.t_num, p.t_den).unwrap();
                for c in [&p.a, &p.b] {
                    match c {
                        Some(c) => {
                            let (lo, hi) = c.value.interval.to_decimal_pair(DECIMAL_DIGITS);
                            let route = serde_json::to_value(c.route).unwrap();
                            write!(out, "\t{}\t{lo}\t{hi}\t{}", c.status.as_str(), route.as_str().unwrap()).unwrap();
                        }
                        None => out.push_str("\t\t\t\t"),
                    }
                }
                out.push('\n');
            }
        }
        out
    }
}

fn enclosure_cell(e: &NamedEnclosure) -> String {
    let (lo, hi) = e.interval.to_decimal_pair(DECIMAL_DIGITS);
    format!("{}=[{lo},{hi}]", e.name)
}

fn evidence_cells(e: &Evidence) -> (&'static str, String) {
    match e {
        Evidence::Residual { nonzero_terms, first_nonzero } => {
            let first = first_nonzero.as_ref().map(|t| format!(" first=q^{}:{}", t.index, t.coefficient)).unwrap_or_default();
            ("residual", format!("nonzero_terms={nonzero_terms}{first}"))
        }
        Evidence::Signs { checked_below, violations, .. } => {
            ("signs", format!("checked_below={checked_below} violations={}", violations.len()))
        }
        Evidence::Exact { values } => {
            ("exact", values.iter().map(|v| format!("{}={}", v.name, v.value)).collect::<Vec<_>>().join(";"))
        }
        Evidence::Enclosures { comparison, enclosures } => {
            let cells: Vec<String> = enclosures.iter().map(enclosure_cell).collect();
            ("enclosures", format!("{comparison};{}", cells.join(";")))
        }
    }
}
