//! Machine-readable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use supercardy::classifier::Violation;
use supercardy::mf::DaoReport;
use supercardy::{CheckReport, Classification, ClassificationReport, Rational, Verdict};

use crate::doc::kind_name;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summands: Option<Vec<SummandLine>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dao: Option<DaoLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckLine {
    pub check: String,
    /// "pass", "fail" or "refused"
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessLine {
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandLine {
    #[serde(rename = "type")]
    pub ty: String,
    pub n: usize,
    pub m: usize,
    pub lambda: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_squared: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DaoLine {
    pub variables: usize,
    pub even: usize,
    pub odd: usize,
    pub chi: i64,
}

impl Report {
    fn new(command: &str, verdict: &str, exit_code: i32) -> Self {
        Report {
            command: command.into(),
            verdict: verdict.into(),
            exit_code,
            checks: Vec::new(),
            summands: None,
            dao: None,
            detail: None,
        }
    }

    pub fn input_error(command: &str, detail: String) -> Self {
        let mut r = Report::new(command, "input_error", EXIT_INPUT);
        r.detail = Some(detail);
        r
    }

    pub fn verification(command: &str, report: &CheckReport<Rational>) -> Self {
        let (verdict, code) = if report.passed() {
            ("pass", EXIT_OK)
        } else {
            ("axiom_violation", EXIT_VIOLATION)
        };
        let mut r = Report::new(command, verdict, code);
        r.checks = check_lines(report);
        r
    }

    pub fn classification(command: &str, report: &ClassificationReport<Rational>) -> Self {
        let mut r = match &report.verdict {
            Classification::Classified => Report::new(command, "classified", EXIT_OK),
            Classification::NotSemisimple(s) => {
                let mut r = Report::new(command, "not_semisimple", EXIT_UNDECIDED);
                r.detail = Some(s.clone());
                r
            }
            Classification::NotSplit(s) => {
                let mut r = Report::new(command, "not_split", EXIT_UNDECIDED);
                r.detail = Some(s.clone());
                r
            }
            Classification::AxiomViolation(v) => {
                let mut r = Report::new(command, "axiom_violation", EXIT_VIOLATION);
                match v {
                    Violation::Checks { block, report } => {
                        r.checks = check_lines(report);
                        r.detail = Some(match block {
                            None => "axiom checks failed on the input".into(),
                            Some(b) => format!("axiom checks failed on the summand of block {b}"),
                        });
                    }
                    Violation::Matching {
                        idempotent,
                        coefficients,
                        detail,
                    } => {
                        let c: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
                        r.detail = Some(format!(
                            "tau_* of idempotent {idempotent} has block-unit coefficients [{}]: {detail}",
                            c.join(", ")
                        ));
                    }
                    Violation::BlockCoverage { block, hits } => {
                        r.detail = Some(format!("block {block} is hit by {hits} idempotents"));
                    }
                    Violation::Form { block, detail } => {
                        r.detail = Some(format!("boundary form on block {block}: {detail}"));
                    }
                }
                r
            }
        };
        if report.is_classified() {
            r.summands = Some(
                report
                    .summands
                    .iter()
                    .map(|s| SummandLine {
                        ty: kind_name(s.kind).into(),
                        n: s.n,
                        m: s.m,
                        lambda: s.lambda.to_string(),
                        mu_squared: s.mu_squared.as_ref().map(|x| x.to_string()),
                    })
                    .collect(),
            );
        }
        r
    }

    pub fn dao(command: &str, d: &DaoReport) -> Self {
        let mut r = if d.holds() {
            Report::new(command, "chi_zero", EXIT_OK)
        } else {
            Report::new(command, "chi_nonzero", EXIT_VIOLATION)
        };
        r.dao = Some(DaoLine {
            variables: d.nvars,
            even: d.dims.even,
            odd: d.dims.odd,
            chi: d.chi,
        });
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.verdict);
        if let Some(d) = &self.dao {
            let _ = writeln!(
                out,
                "χ = {} (even {}, odd {}), {} variable(s)",
                d.chi, d.even, d.odd, d.variables
            );
        }
        for c in &self.checks {
            let _ = write!(out, "  {:<30} {}", c.check, c.verdict);
            if let Some(w) = &c.witness {
                let _ = write!(
                    out,
                    " at {:?}: lhs {}, rhs {} ({})",
                    w.indices, w.lhs, w.rhs, w.detail
                );
            }
            if let Some(reason) = &c.reason {
                let _ = write!(out, ": {reason}");
            }
            if let Some(note) = &c.note {
                let _ = write!(out, " [{note}]");
            }
            out.push('\n');
        }
        if let Some(summands) = &self.summands {
            let _ = writeln!(out, "  {} summand(s):", summands.len());
            for s in summands {
                let shape = match s.ty.as_str() {
                    "mat" => format!("Mat({}|{})", s.n, s.m),
                    "q" => format!("Q({})", s.n),
                    _ => "Triv".into(),
                };
                let _ = write!(out, "    {shape:<10} lambda = {}", s.lambda);
                if let Some(mu2) = &s.mu_squared {
                    let _ = write!(out, ", mu^2 = {mu2}");
                }
                out.push('\n');
            }
        }
        if let Some(d) = &self.detail {
            let _ = writeln!(out, "  {d}");
        }
        out
    }
}

fn check_lines(report: &CheckReport<Rational>) -> Vec<CheckLine> {
    report
        .outcomes
        .iter()
        .map(|o| {
            let (verdict, witness, reason) = match &o.verdict {
                Verdict::Pass => ("pass", None, None),
                Verdict::Fail(w) => (
                    "fail",
                    Some(WitnessLine {
                        indices: w.indices.clone(),
                        lhs: w.lhs.to_string(),
                        rhs: w.rhs.to_string(),
                        detail: w.detail.clone(),
                    }),
                    None,
                ),
                Verdict::Refused(s) => ("refused", None, Some(s.clone())),
            };
            CheckLine {
                check: o.kind.name().into(),
                verdict: verdict.into(),
                witness,
                reason,
                note: o.note.clone(),
            }
        })
        .collect()
}
