//! Report records and their JSON, CSV, and plain-text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use idealshi::ExponentMultiset;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NotFreeConfirmed,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotFreeConfirmed => "NOT_FREE_CONFIRMED",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetKind {
    Ideal,
    Roots,
}

/// Which `Σ` a case uses. `roots` is always filled, so a record can be
/// replayed without the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetDesc {
    pub kind: SubsetKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ideal_index: Option<usize>,
    pub roots: Vec<String>,
    pub is_ideal: bool,
}

impl SubsetDesc {
    pub fn label(&self) -> String {
        if self.roots.is_empty() {
            "none".into()
        } else {
            self.roots.join(",")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subset: Option<SubsetDesc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub added: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub case: VerificationCase,
    pub hyperplanes: usize,
    pub ambient_dim: usize,
    pub predicted_exponents: Option<ExponentMultiset>,
    /// Ascending coefficients as decimal strings.
    pub chi: Option<Vec<String>>,
    pub chi_display: Option<String>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_free_confirmed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let mut s = Summary { total: records.len(), ..Summary::default() };
        for r in records {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::NotFreeConfirmed => s.not_free_confirmed += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: "idealshi".into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    /// No step of a campaign is randomized; kept so the schema can carry one.
    pub seed: Option<u64>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, records: Vec<Record>) -> Self {
        let summary = Summary::of(&records);
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool::current(),
            command: command.into(),
            seed: None,
            records,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "command", "type", "k", "sign", "subset", "step", "added", "hyperplanes", "predicted_exponents", "chi", "verdict",
            "detail",
        ])
        .expect("in-memory write");
        for r in &self.records {
            let c = &r.case;
            w.write_record([
                self.command.clone(),
                c.ty.clone(),
                c.k.map(|k| k.to_string()).unwrap_or_default(),
                c.sign.clone().unwrap_or_default(),
                c.subset.as_ref().map(SubsetDesc::label).unwrap_or_default(),
                c.step.map(|s| s.to_string()).unwrap_or_default(),
                c.added.clone().unwrap_or_default(),
                r.hyperplanes.to_string(),
                r.predicted_exponents.as_ref().map(|e| e.to_string()).unwrap_or_default(),
                r.chi_display.clone().unwrap_or_default(),
                r.verdict.as_str().to_string(),
                r.detail.clone(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let c = &r.case;
            let mut head = c.ty.clone();
            if let Some(step) = c.step {
                write!(head, " step {step}").unwrap();
            }
            if let Some(k) = c.k {
                write!(head, " k={k}").unwrap();
            }
            if let Some(sign) = &c.sign {
                write!(head, " {sign}").unwrap();
            }
            if let Some(s) = &c.subset {
                let tag = if s.is_ideal { "I" } else { "Σ" };
                match s.ideal_index {
                    Some(i) => write!(head, " {tag}#{i}={{{}}}", s.label()).unwrap(),
                    None => write!(head, " {tag}={{{}}}", s.label()).unwrap(),
                }
            }
            if let Some(added) = &c.added {
                write!(head, " +{added}").unwrap();
            }
            writeln!(out, "{:<18} {head}", r.verdict.as_str()).unwrap();
            write!(out, "{:<18} |A| = {}", "", r.hyperplanes).unwrap();
            if let Some(e) = &r.predicted_exponents {
                write!(out, "  exponents {e}").unwrap();
            }
            out.push('\n');
            if let Some(chi) = &r.chi_display {
                writeln!(out, "{:<18} χ = {chi}", "").unwrap();
            }
            if !r.detail.is_empty() {
                writeln!(out, "{:<18} {}", "", r.detail).unwrap();
            }
            if let Some(ms) = r.elapsed_ms {
                writeln!(out, "{:<18} {ms:.1} ms", "").unwrap();
            }
        }
        let s = &self.summary;
        writeln!(
            out,
            "{} cases: {} PASS, {} FAIL, {} NOT_FREE_CONFIRMED, {} SKIPPED",
            s.total, s.pass, s.fail, s.not_free_confirmed, s.skipped
        )
        .unwrap();
        out
    }
}
