//! Closed-form weight distributions for the matched code family, and
//! verification of enumerated distributions against them.
//!
//! Every family member is determined up to code equality by (p, m, k):
//! the exponent t only needs to be congruent to (p^k+1)/2 * p^tau
//! modulo (p^m-1)/2 for some tau, and all such exponents define the
//! same code.  Which of four closed forms applies depends on the
//! 2-adic valuations of m and k together with d = gcd(m, k); the forms
//! are built here in exact integer arithmetic with every division
//! checked, and cross-checked structurally (total count, zero-weight
//! count, first moment) before being returned.

use crate::codes::{self, CodesError, Method, WeightDistribution};
use crate::gf::Field;
use crate::structure::{self, Admissibility, CaseTag};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictError {
    #[error("invalid parameters: {reason}")]
    InvalidParameters { reason: String },
    #[error("exponent {t} does not belong to the predicted family for any (k, tau)")]
    NoMatch { t: u64 },
    #[error(transparent)]
    Enumeration(#[from] CodesError),
}

fn invalid(reason: impl Into<String>) -> PredictError {
    PredictError::InvalidParameters {
        reason: reason.into(),
    }
}

/// Everything the closed forms depend on, derived from (p, m, k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInfo {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub case: CaseTag,
    /// gcd(m, k)
    pub d: u32,
    /// m / d; even exactly in the two EVEN cases
    pub s: u32,
    pub q: u64,
    pub n: u64,
    /// p^{m-1}: the granularity all closed-form weights are built from
    pub pow_base: u64,
    /// p^{m/2-1} (even m only)
    pub pow_mid: Option<u64>,
    /// p^{m/2+d-1} (even m only)
    pub pow_high: Option<u64>,
}

/// Classify (p, m, k) into the four closed-form cases and compute the
/// derived quantities the tables are written in.
pub fn classify(p: u64, m: u32, k: u32) -> Result<CaseInfo, PredictError> {
    if !crate::gf::poly::is_prime(p) || p == 2 {
        return Err(invalid(format!("p = {p} must be an odd prime")));
    }
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let q = (p as u128).pow(m);
    if q > crate::gf::MAX_FIELD_SIZE {
        return Err(invalid(format!(
            "field size p^m = {q} exceeds the supported ceiling {}",
            crate::gf::MAX_FIELD_SIZE
        )));
    }
    let q = q as u64;
    let d = structure::gcd_u128(m as u128, k as u128) as u32;
    let case = structure::case_of(m, k);
    let (pow_mid, pow_high) = if m.is_multiple_of(2) {
        (Some(p.pow(m / 2 - 1)), Some(p.pow(m / 2 + d - 1)))
    } else {
        (None, None)
    };
    Ok(CaseInfo {
        p,
        m,
        k,
        case,
        d,
        s: m / d,
        q,
        n: q - 1,
        pow_base: p.pow(m - 1),
        pow_mid,
        pow_high,
    })
}

/// Exact division with a hard check; the closed forms only ever divide
/// when divisibility is a theorem, so a remainder is a bug.
fn exact_div(num: u128, den: u128) -> u128 {
    assert_eq!(
        num % den,
        0,
        "non-exact division {num}/{den} in a closed form"
    );
    num / den
}

/// The closed-form weight distribution shared by every code in the
/// (p, m, k) family.  Refuses parameter triples whose family exponent
/// (p^k+1)/2 is not admissible — no well-defined two-zero code of full
/// dimension exists there, and the tables do not apply.
pub fn predicted_distribution(p: u64, m: u32, k: u32) -> Result<WeightDistribution, PredictError> {
    let info = classify(p, m, k)?;
    let base_t = structure::family_exponent(p, m, k).map_err(|e| invalid(e.to_string()))?;
    match structure::check_admissible(p, m, base_t).map_err(|e| invalid(e.to_string()))? {
        Admissibility::Admissible => {}
        Admissibility::Inadmissible { witness } => {
            return Err(invalid(format!(
                "family exponent {base_t} for (p, m, k) = ({p}, {m}, {k}) is not admissible \
                 (period witness {witness}); the closed forms do not apply"
            )));
        }
    }
    let q = info.q as u128;
    let n = info.n as u128;
    let a = info.pow_base as u128;
    let half = (p as u128 - 1) / 2;
    let full = p as u128 - 1;
    let mut entries: BTreeMap<u64, u128> = BTreeMap::new();
    let mut add = |w: u128, c: u128| {
        *entries.entry(w as u64).or_insert(0) += c;
    };
    add(0, 1);
    match info.case {
        CaseTag::EvenEq | CaseTag::EvenLt => {
            let b = info.pow_high.unwrap() as u128;
            let c = info.pow_mid.unwrap() as u128;
            let big_d = (p as u128).pow(info.d);
            let e = exact_div(n, big_d + 1);
            // EVEN_LT mirrors EVEN_EQ with both square-root terms
            // flipped in sign.
            let (wb, wc) = if info.case == CaseTag::EvenEq {
                (a - b, a + c)
            } else {
                (a + b, a - c)
            };
            add(half * wb, 2 * e);
            add(half * wc, 2 * big_d * e);
            add(half * (wb + wc), 2 * big_d * e * e);
            add(full * wb, e * e);
            add(full * wc, big_d * big_d * e * e);
        }
        CaseTag::OddM => {
            add(half * a, 2 * n);
            add(full * a, n * n);
        }
        CaseTag::OddS => {
            let c = info.pow_mid.unwrap() as u128;
            add(half * (a - c), n);
            add(half * (a + c), n);
            add(full * a, exact_div(n * n, 2));
            add(full * (a - c), exact_div(n * n, 4));
            add(full * (a + c), exact_div(n * n, 4));
        }
    }
    let dist = WeightDistribution::from_parts(p, m, info.n, 2 * m, entries);
    // Independent structural identity: the first moment counts nonzero
    // symbols over all pairs, and each coordinate is uniform.
    let first_moment: u128 = dist.entries().iter().map(|(&w, &c)| w as u128 * c).sum();
    assert_eq!(first_moment, n * full * q * q / p as u128);
    Ok(dist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// A weight distribution flattened for reporting: sorted (weight,
/// frequency) pairs plus the two shape parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionSummary {
    pub n: u64,
    pub dimension: u32,
    pub distribution: Vec<(u64, u128)>,
}

impl From<&WeightDistribution> for DistributionSummary {
    fn from(d: &WeightDistribution) -> DistributionSummary {
        DistributionSummary {
            n: d.n,
            dimension: d.dimension,
            distribution: d.entries().iter().map(|(&w, &c)| (w, c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffEntry {
    pub weight: u64,
    pub predicted: u128,
    pub computed: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub status: VerifyStatus,
    pub predicted: DistributionSummary,
    pub computed: DistributionSummary,
    pub diff: Vec<DiffEntry>,
}

/// Enumerate the code C_t and compare against the closed form for its
/// family.  Errors NoMatch if t is outside the family; enumeration
/// failures (inadmissible t, oversized workload) propagate unchanged.
pub fn verify(field: &Field, t: u64, method: Method) -> Result<VerifyReport, PredictError> {
    let matched =
        structure::match_exponent(field.p(), field.m(), t).map_err(|e| invalid(e.to_string()))?;
    let Some((k, _tau)) = matched else {
        return Err(PredictError::NoMatch { t: t % field.n() });
    };
    let computed = codes::weight_distribution(field, t, method)?;
    let predicted = predicted_distribution(field.p(), field.m(), k)?;
    let mut weights: Vec<u64> = predicted
        .entries()
        .keys()
        .chain(computed.entries().keys())
        .copied()
        .collect();
    weights.sort_unstable();
    weights.dedup();
    let diff: Vec<DiffEntry> = weights
        .into_iter()
        .filter_map(|w| {
            let (pc, cc) = (predicted.frequency(w), computed.frequency(w));
            (pc != cc).then_some(DiffEntry {
                weight: w,
                predicted: pc,
                computed: cc,
            })
        })
        .collect();
    let predicted = DistributionSummary::from(&predicted);
    let computed = DistributionSummary::from(&computed);
    let status = if diff.is_empty() && predicted == computed {
        VerifyStatus::Pass
    } else {
        VerifyStatus::Fail
    };
    Ok(VerifyReport {
        status,
        predicted,
        computed,
        diff,
    })
}
