//! What every command returns: an echo of the command, digests of its
//! inputs, a payload and the process exit code.
//!
//! Exit codes: 0 success or bound established, 1 a negative answer
//! (hypotheses violated, not isomorphic, a failed self-test), 2 bad input
//! or usage.

use std::fmt::Write as _;

use designlab::incidence::Intersection;
use designlab::theorems::Hypothesis;
use designlab::{BoundCertificate, DesignClass, FisherReport};
use designlab::enumerate::EnumerationReport;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::format::DesignFormat;
use crate::selftest::{CriterionResult, Level};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// `sha256:<hex>` of each input file, in argument order.
    pub input_digests: Vec<String>,
    pub payload: Payload,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemSize {
    pub v: usize,
    pub b: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub family: String,
    pub v: usize,
    pub k: Option<usize>,
    pub lambda: Option<usize>,
    pub limit: Option<usize>,
    pub families_emitted: usize,
    pub max_family_size: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Classification(DesignClass),
    Matrix { rows: usize, cols: usize, matrix: Vec<String> },
    Construction {
        construction: String,
        v: usize,
        b: usize,
        format: DesignFormat,
        output: Option<String>,
        design: String,
    },
    Fisher(FisherReport),
    Isomorphism { isomorphic: bool, first: SystemSize, second: SystemSize },
    Enumeration(EnumerationSummary),
    Selftest {
        level: Level,
        passed: usize,
        failed: usize,
        criteria: Vec<CriterionResult>,
        exhaustive: Vec<EnumerationReport>,
    },
    Error { message: String },
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: Vec<String>, input_digests: Vec<String>, payload: Payload, exit_code: i32) -> Self {
        Report { command, input_digests, payload, exit_code }
    }

    pub fn error(command: Vec<String>, message: impl Into<String>) -> Self {
        Report::new(command, Vec::new(), Payload::Error { message: message.into() }, EXIT_ERROR)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering of the payload.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Classification(c) => write_class(&mut out, c),
            Payload::Matrix { matrix, .. } => {
                for row in matrix {
                    let _ = writeln!(out, "{row}");
                }
            }
            Payload::Construction { construction, v, b, output: Some(path), .. } => {
                let _ = writeln!(out, "wrote {construction} (v={v}, b={b}) to {path}");
            }
            Payload::Construction { design, .. } => out.push_str(design),
            Payload::Fisher(r) => write_fisher(&mut out, r),
            Payload::Isomorphism { isomorphic, first, second } => {
                let verdict = if *isomorphic { "isomorphic" } else { "not isomorphic" };
                let _ = writeln!(out, "{verdict} (v={}, b={} vs v={}, b={})", first.v, first.b, second.v, second.b);
            }
            Payload::Enumeration(s) => {
                let _ = writeln!(
                    out,
                    "{} v={}: {} families, largest has {} blocks",
                    s.family, s.v, s.families_emitted, s.max_family_size
                );
            }
            Payload::Selftest { level, passed, failed, criteria, .. } => {
                for c in criteria {
                    let _ = writeln!(out, "{c}");
                }
                let _ = writeln!(out, "selftest ({level}): {passed} passed, {failed} failed");
            }
            Payload::Error { message } => {
                let _ = writeln!(out, "error: {message}");
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".into(), |x| x.to_string())
}

fn write_class(out: &mut String, c: &DesignClass) {
    let intersection = match c.const_intersect {
        Intersection::Undetermined => "undetermined".to_string(),
        Intersection::Constant(k) => format!("constant {k}"),
        Intersection::Varying => "varying".to_string(),
    };
    let rows = [
        ("points v", c.v.to_string()),
        ("blocks b", c.b.to_string()),
        ("well-formed", yes_no(c.is_wellformed).into()),
        ("design", yes_no(c.is_design).into()),
        ("simple", yes_no(c.is_simple).into()),
        ("uniform k", opt(c.uniform_k)),
        ("regular r", opt(c.regular_r)),
        ("pairwise λ", opt(c.pbd_lambda)),
        ("intersection", intersection),
        ("incomplete", yes_no(c.is_incomplete).into()),
        ("bibd", yes_no(c.is_bibd).into()),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "{name:<14}{value}");
    }
}

fn write_hypothesis(out: &mut String, h: &Hypothesis) {
    let mark = if h.passed { "pass" } else { "FAIL" };
    let _ = write!(out, "  [{mark}] {}", h.name);
    if !h.detail.is_empty() {
        let _ = write!(out, ": {}", h.detail);
    }
    out.push('\n');
}

fn certificate_line(c: &BoundCertificate) -> String {
    let (rows, cols) = c.matrix_dims;
    let mut line = format!("{} over {}, {rows}×{cols}, rank {}", c.technique, c.domain, c.rank_value);
    if let Some(det) = &c.square_det {
        let _ = write!(line, ", det(N·Nᵀ) = {det}");
    }
    line
}

fn write_fisher(out: &mut String, r: &FisherReport) {
    let _ = writeln!(out, "{:<14}{}", "variant", r.variant);
    let _ = writeln!(out, "{:<14}v={}, b={}", "system", r.v, r.b);
    let _ = writeln!(out, "hypotheses");
    for h in &r.hypotheses {
        write_hypothesis(out, h);
    }
    let _ = writeln!(out, "{:<14}{}", "verdict", r.verdict);
    if let Some(bound) = &r.bound {
        let _ = writeln!(out, "{:<14}{bound}", "bound");
    }
    if let Some(cert) = &r.certificate {
        let _ = writeln!(out, "{:<14}{}", "certificate", certificate_line(cert));
    }
}
