//! Output documents for every subcommand, with text, JSON, and CSV
//! renderers.  All collections are emitted in sorted order so identical
//! inputs produce identical bytes no matter how the work was scheduled.

use serde::{Deserialize, Serialize};
use wdist_core::codes::WeightDistribution;
use wdist_core::expsums::SumDistribution;
use wdist_core::predict::{DiffEntry, DistributionSummary, VerifyStatus};
use wdist_core::structure::CaseTag;

/// A weight distribution plus its run parameters; shared by the
/// `predict` and `enumerate` subcommands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionDoc {
    pub p: u64,
    pub m: u32,
    pub t: Option<u64>,
    pub k: Option<u32>,
    pub tau: Option<u32>,
    pub case: Option<CaseTag>,
    pub n: u64,
    pub dimension: u32,
    /// Sorted (weight, frequency) pairs, frequency counted over (a, b)
    /// pairs.
    pub distribution: Vec<(u64, u128)>,
    pub enumerator: String,
    pub minimum_distance: Option<u64>,
    /// Field modulus, constant term first.
    pub modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub p: u64,
    pub m: u32,
    pub t: u64,
    pub k: u32,
    pub tau: u32,
    pub case: CaseTag,
    pub n: u64,
    pub status: VerifyStatus,
    pub predicted: DistributionSummary,
    pub computed: DistributionSummary,
    pub diff: Vec<DiffEntry>,
    pub modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpsumEntry {
    /// Canonical coordinates on 1, z, ..., z^{p-2}.
    pub coeffs: Vec<i128>,
    /// The value as a plain integer when it is one.
    pub integer: Option<i128>,
    pub count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpsumDoc {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub which: String,
    pub n: u64,
    pub total: u128,
    /// Entries in descending value order (the canonical ring order
    /// reversed), matching the closed-form tables' presentation.
    pub entries: Vec<ExpsumEntry>,
    pub modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetDoc {
    pub p: u64,
    pub m: u32,
    pub i: u64,
    pub n: u64,
    pub coset: Vec<u64>,
    pub modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinpolyDoc {
    pub p: u64,
    pub m: u32,
    pub t: u64,
    pub n: u64,
    /// Discrete log of the dual zero pi^{-t} the polynomial annihilates.
    pub zero_log: u64,
    pub degree: usize,
    /// Constant term first, monic.
    pub coefficients: Vec<u64>,
    pub polynomial: String,
    pub modulus: Vec<u64>,
}

pub fn distribution_pairs(dist: &WeightDistribution) -> Vec<(u64, u128)> {
    dist.entries().iter().map(|(&w, &c)| (w, c)).collect()
}

pub fn expsum_entries(dist: &SumDistribution) -> Vec<ExpsumEntry> {
    dist.entries()
        .iter()
        .rev()
        .map(|(v, &count)| ExpsumEntry {
            coeffs: v.coeffs().to_vec(),
            integer: v.as_integer(),
            count,
        })
        .collect()
}

fn modulus_text(modulus: &[u64]) -> String {
    modulus
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt_text<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

/// One sum value for text mode: plain integer when rational (negative
/// values carry a leading minus), coefficient array otherwise.
fn sum_value_text(entry: &ExpsumEntry) -> String {
    match entry.integer {
        Some(v) => v.to_string(),
        None => format!(
            "[{}]",
            entry
                .coeffs
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

fn summary_lines(label: &str, s: &DistributionSummary, out: &mut Vec<String>) {
    out.push(format!("{label} (n={}, dimension={}):", s.n, s.dimension));
    for (w, c) in &s.distribution {
        out.push(format!("  {w}: {c}"));
    }
}

impl DistributionDoc {
    pub fn text(&self) -> String {
        let mut lines = vec![
            format!("p: {}", self.p),
            format!("m: {}", self.m),
            format!("t: {}", opt_text(&self.t)),
            format!("k: {}", opt_text(&self.k)),
            format!("tau: {}", opt_text(&self.tau)),
            format!(
                "case: {}",
                self.case.map_or("-".to_string(), |c| c.to_string())
            ),
            format!("n: {}", self.n),
            format!("dimension: {}", self.dimension),
            format!("modulus: {}", modulus_text(&self.modulus)),
            "distribution:".to_string(),
        ];
        for (w, c) in &self.distribution {
            lines.push(format!("  {w}: {c}"));
        }
        lines.push(format!("enumerator: {}", self.enumerator));
        if let Some(d) = self.minimum_distance {
            lines.push(format!("minimum distance: {d}"));
        }
        finish(lines)
    }

    pub fn csv(&self) -> String {
        let mut lines = vec![
            format!(
                "# p={} m={} t={} modulus={}",
                self.p,
                self.m,
                opt_text(&self.t),
                modulus_text(&self.modulus)
            ),
            "weight,frequency".to_string(),
        ];
        for (w, c) in &self.distribution {
            lines.push(format!("{w},{c}"));
        }
        finish(lines)
    }
}

impl VerifyDoc {
    pub fn text(&self) -> String {
        let mut lines = vec![
            format!("p: {}", self.p),
            format!("m: {}", self.m),
            format!("t: {}", self.t),
            format!("k: {}", self.k),
            format!("tau: {}", self.tau),
            format!("case: {}", self.case),
            format!("n: {}", self.n),
            format!("modulus: {}", modulus_text(&self.modulus)),
            format!(
                "status: {}",
                match self.status {
                    VerifyStatus::Pass => "PASS",
                    VerifyStatus::Fail => "FAIL",
                }
            ),
        ];
        summary_lines("predicted", &self.predicted, &mut lines);
        summary_lines("computed", &self.computed, &mut lines);
        if self.diff.is_empty() {
            lines.push("diff: none".to_string());
        } else {
            lines.push("diff:".to_string());
            for d in &self.diff {
                lines.push(format!(
                    "  weight {}: predicted {}, computed {}",
                    d.weight, d.predicted, d.computed
                ));
            }
        }
        finish(lines)
    }
}

impl ExpsumDoc {
    pub fn text(&self) -> String {
        let values = self
            .entries
            .iter()
            .map(|e| format!("{}:{}", sum_value_text(e), e.count))
            .collect::<Vec<_>>()
            .join(", ");
        finish(vec![
            format!("p: {}", self.p),
            format!("m: {}", self.m),
            format!("k: {}", self.k),
            format!("which: {}", self.which),
            format!("n: {}", self.n),
            format!("modulus: {}", modulus_text(&self.modulus)),
            format!("total: {}", self.total),
            format!("values: {{{values}}}"),
        ])
    }

    /// CSV requires rational values; the caller screens for that.
    pub fn csv(&self) -> Option<String> {
        let mut lines = vec![
            format!(
                "# p={} m={} k={} which={} modulus={}",
                self.p,
                self.m,
                self.k,
                self.which,
                modulus_text(&self.modulus)
            ),
            "value,count".to_string(),
        ];
        for e in &self.entries {
            lines.push(format!("{},{}", e.integer?, e.count));
        }
        Some(finish(lines))
    }
}

impl CosetDoc {
    pub fn text(&self) -> String {
        let coset = self
            .coset
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        finish(vec![
            format!("p: {}", self.p),
            format!("m: {}", self.m),
            format!("i: {}", self.i),
            format!("n: {}", self.n),
            format!("modulus: {}", modulus_text(&self.modulus)),
            format!("coset: {coset}"),
        ])
    }
}

impl MinpolyDoc {
    pub fn text(&self) -> String {
        finish(vec![
            format!("p: {}", self.p),
            format!("m: {}", self.m),
            format!("t: {}", self.t),
            format!("n: {}", self.n),
            format!("modulus: {}", modulus_text(&self.modulus)),
            format!("zero: pi^{}", self.zero_log),
            format!("degree: {}", self.degree),
            format!(
                "coefficients (constant first): {}",
                self.coefficients
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            format!("polynomial: {}", self.polynomial),
        ])
    }
}

/// Human form of a constant-first coefficient vector, highest power
/// first: "x^6 + 2*x^4 + x + 2".
pub fn polynomial_text(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(match (c, i) {
            (c, 0) => format!("{c}"),
            (1, _) => var,
            (c, _) => format!("{c}*{var}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn finish(lines: Vec<String>) -> String {
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// JSON with a trailing newline; field order is declaration order, so
/// output bytes depend only on the document contents.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize infallibly");
    s.push('\n');
    s
}
