//! Arithmetic structure of the code parameters: 2-adic valuations, the
//! closed form for gcd(p^k+1, p^m-1), cyclotomic cosets and minimal
//! polynomials, admissibility of the exponent t, and matching t against
//! the family form t = ((p^k+1)/2)*p^tau mod (p^m-1)/2.
//!
//! Everything here works on plain integers (exponent arithmetic modulo
//! p^m-1) except minimal polynomials, which need field arithmetic.
//! Exponents supplied by callers are canonicalized into [0, p^m-1).

use crate::gf::{Field, FieldElement, MAX_FIELD_SIZE};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("2-adic valuation requires a positive argument")]
    NonPositive,
    #[error("field size p^m = {q} exceeds the supported bound 2^40")]
    TooLarge { q: u128 },
    #[error("t = {t} is inadmissible: t*p^{witness} = t + (p^m-1)/2 mod p^m-1, so the two dual zeros coincide")]
    Inadmissible { t: u64, witness: u32 },
}

/// Largest e with 2^e dividing j.
pub fn two_adic_valuation(j: u64) -> Result<u32, StructureError> {
    if j == 0 {
        return Err(StructureError::NonPositive);
    }
    Ok(j.trailing_zeros())
}

/// Euclidean gcd on wide integers (oracle for the closed form below).
pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd(p^k+1, p^m-1) by closed form: p^gcd(k,m)+1 when v2(m) > v2(k),
/// otherwise 2.
pub fn gcd_power_plus_one(p: u64, k: u32, m: u32) -> u128 {
    assert!(k >= 1 && m >= 1);
    let v2m = m.trailing_zeros();
    let v2k = k.trailing_zeros();
    if v2m > v2k {
        let d = gcd_u128(k as u128, m as u128) as u32;
        (p as u128).pow(d) + 1
    } else {
        2
    }
}

/// p^m and p^m - 1 under the global size guard.
fn group_order(p: u64, m: u32) -> Result<u64, StructureError> {
    assert!(p >= 3 && m >= 1, "callers validate p and m first");
    let mut q: u128 = 1;
    for _ in 0..m {
        q *= p as u128;
        if q > MAX_FIELD_SIZE {
            return Err(StructureError::TooLarge { q });
        }
    }
    Ok(q as u64 - 1)
}

/// ((p^k+1)/2) mod md, via r = p^k mod 2*md: writing p^k = 2*md*j + r
/// with r odd gives (p^k+1)/2 = md*j + (r+1)/2, so the residue is
/// (r+1)/2 mod md — valid for every positive md.
fn half_power_plus_one(p: u64, k: u32, md: u64) -> u64 {
    debug_assert!(md >= 1);
    let r = crate::gf::mod_pow(p, k as u64, 2 * md);
    debug_assert_eq!(r % 2, 1, "p^k must be odd");
    r.div_ceil(2) % md
}

/// The canonical family exponent ((p^k+1)/2) mod (p^m-1): the shift-zero
/// representative every matched exponent is equivalent to.
pub fn family_exponent(p: u64, m: u32, k: u32) -> Result<u64, StructureError> {
    let n = group_order(p, m)?;
    if k == 0 {
        return Err(StructureError::NonPositive);
    }
    Ok(half_power_plus_one(p, k, n))
}

/// The p-cyclotomic coset of i modulo p^m-1, sorted ascending.
pub fn cyclotomic_coset(p: u64, m: u32, i: u64) -> Result<Vec<u64>, StructureError> {
    let n = group_order(p, m)?;
    let start = i % n;
    let mut out = vec![start];
    let mut cur = (start as u128 * p as u128 % n as u128) as u64;
    while cur != start {
        out.push(cur);
        cur = (cur as u128 * p as u128 % n as u128) as u64;
    }
    debug_assert_eq!(m as usize % out.len(), 0, "coset size must divide m");
    out.sort_unstable();
    Ok(out)
}

/// Monic minimal polynomial of a nonzero field element over F_p,
/// coefficients constant-first.  Computed as the product of (X - c) over
/// the Frobenius conjugates c; the result provably has entries in F_p,
/// which is asserted.
pub fn minimal_polynomial(field: &Field, beta: &FieldElement) -> Vec<u64> {
    let lb = field
        .log(beta)
        .expect("minimal polynomial requires a nonzero element");
    let coset = cyclotomic_coset(field.p(), field.m(), lb)
        .expect("field size already validated by construction");
    // Product over conjugates, with coefficients living in the big field.
    let mut coeffs = vec![field.one()];
    for &e in &coset {
        let root = field.from_log(e);
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(c, &root));
        }
        coeffs = next;
    }
    coeffs
        .iter()
        .map(|c| {
            assert!(
                c.coeffs()[1..].iter().all(|&x| x == 0),
                "minimal polynomial coefficients must land in the prime field"
            );
            c.coeffs()[0]
        })
        .collect()
}

/// Outcome of the admissibility check on t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// t*p^witness = t + (p^m-1)/2 mod p^m-1: the zeros pi^{-t} and
    /// -pi^{-t} are Frobenius-conjugate, so the family degenerates.
    Inadmissible {
        witness: u32,
    },
}

/// Check (pi^t)^{p^i} != -pi^t for all i in [0, m), in the exponent
/// domain: t*p^i != t + (p^m-1)/2 mod p^m-1.
pub fn check_admissible(p: u64, m: u32, t: u64) -> Result<Admissibility, StructureError> {
    let n = group_order(p, m)?;
    let half = n / 2;
    let t = t % n;
    let target = (t + half) % n;
    let mut cur = t;
    for i in 0..m {
        if cur == target {
            return Ok(Admissibility::Inadmissible { witness: i });
        }
        cur = (cur as u128 * p as u128 % n as u128) as u64;
    }
    Ok(Admissibility::Admissible)
}

/// Find (k, tau) with t = ((p^k+1)/2)*p^tau mod (p^m-1)/2, minimizing
/// (k, tau) lexicographically; k is searched in [1, 2m] (the residues of
/// (p^k+1)/2 repeat with period m in k, so 2m is ample), tau in [0, m).
/// None when t is outside the family.
pub fn match_exponent(p: u64, m: u32, t: u64) -> Result<Option<(u32, u32)>, StructureError> {
    let n = group_order(p, m)?;
    let h = n / 2;
    let target = t % h;
    for k in 1..=2 * m {
        let mut cur = half_power_plus_one(p, k, h);
        for tau in 0..m {
            if cur == target {
                return Ok(Some((k, tau)));
            }
            cur = (cur as u128 * p as u128 % h as u128) as u64;
        }
    }
    Ok(None)
}

/// All exponents e in [0, p^m-1) whose code has the same weight
/// distribution as C_t by the equivalence lemma: the orbit of t under
/// e -> e*p mod (p^m-1)/2, with both lifts e and e + (p^m-1)/2 included.
pub fn equivalent_exponents(p: u64, m: u32, t: u64) -> Result<BTreeSet<u64>, StructureError> {
    let n = group_order(p, m)?;
    let h = n / 2;
    let mut out = BTreeSet::new();
    let start = t % h;
    let mut cur = start;
    loop {
        out.insert(cur);
        out.insert(cur + h);
        cur = (cur as u128 * p as u128 % h as u128) as u64;
        if cur == start {
            break;
        }
    }
    debug_assert_eq!(2 * m as usize % out.len(), 0, "orbit size must divide 2m");
    Ok(out)
}

/// The four-way case split of the main theorem, by the 2-adic valuations
/// of m and k.  s = m/gcd(m,k) is even exactly in the two EVEN cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "EVEN_EQ")]
    EvenEq,
    #[serde(rename = "EVEN_LT")]
    EvenLt,
    #[serde(rename = "ODD_M")]
    OddM,
    #[serde(rename = "ODD_S")]
    OddS,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::EvenEq => "EVEN_EQ",
            CaseTag::EvenLt => "EVEN_LT",
            CaseTag::OddM => "ODD_M",
            CaseTag::OddS => "ODD_S",
        };
        write!(f, "{s}")
    }
}

/// Which of the four cases (m, k) falls in; total and single-valued.
pub fn case_of(m: u32, k: u32) -> CaseTag {
    assert!(m >= 1 && k >= 1);
    let v2m = m.trailing_zeros();
    let v2k = k.trailing_zeros();
    if v2m == 0 {
        CaseTag::OddM
    } else if v2k >= v2m {
        CaseTag::OddS
    } else if v2k + 1 == v2m {
        CaseTag::EvenEq
    } else {
        CaseTag::EvenLt
    }
}

/// A fully resolved family member: an admissible exponent t matched to
/// its (k, tau) form, with the derived case data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub p: u64,
    pub m: u32,
    /// Canonical exponent, reduced into [0, p^m-1).
    pub t: u64,
    pub k: u32,
    pub tau: u32,
    pub d: u32,
    pub s: u32,
    pub case: CaseTag,
    pub n: u64,
    /// The shift-zero representative ((p^k+1)/2) mod (p^m-1); C_t and
    /// C_{base_t} have the same weight distribution.
    pub base_t: u64,
}

/// Resolve (p, m, t) into family parameters.  Errors on inadmissible t
/// (or oversized field); Ok(None) when t is admissible but outside the
/// family, in which case enumeration is still available.
pub fn resolve_params(p: u64, m: u32, t: u64) -> Result<Option<CodeParams>, StructureError> {
    let n = group_order(p, m)?;
    let t = t % n;
    if let Admissibility::Inadmissible { witness } = check_admissible(p, m, t)? {
        return Err(StructureError::Inadmissible { t, witness });
    }
    let Some((k, tau)) = match_exponent(p, m, t)? else {
        return Ok(None);
    };
    let d = gcd_u128(m as u128, k as u128) as u32;
    let s = m / d;
    let case = case_of(m, k);
    debug_assert_eq!(
        s.is_multiple_of(2),
        matches!(case, CaseTag::EvenEq | CaseTag::EvenLt),
        "s is even exactly in the EVEN cases"
    );
    let base_t = half_power_plus_one(p, k, n);
    debug_assert_eq!(
        check_admissible(p, m, base_t),
        Ok(Admissibility::Admissible),
        "admissibility is invariant across the equivalence orbit"
    );
    Ok(Some(CodeParams {
        p,
        m,
        t,
        k,
        tau,
        d,
        s,
        case,
        n,
        base_t,
    }))
}
