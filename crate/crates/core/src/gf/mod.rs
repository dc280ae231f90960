//! Finite fields F_{p^m} for odd primes p, in a polynomial basis modulo a
//! primitive polynomial.  The class of x is a multiplicative generator pi,
//! and construction precomputes discrete-log, power, and trace tables
//! (O(p^m) memory), so later arithmetic is table lookups.
//!
//! Field sizes are guarded to p^m <= 2^40; the full-enumeration operations
//! in the codes module impose their own, much stricter, work guards.

mod moduli;
pub(crate) mod poly;

pub use moduli::{
    builtin_entries, builtin_modulus, parse_modulus_config, resolve_modulus, MODULUS_PATH_ENV,
};
pub use poly::is_prime;

use thiserror::Error;

/// Hard upper bound on the field size p^m.
pub const MAX_FIELD_SIZE: u128 = 1 << 40;

const LOG_SENTINEL: u64 = u64::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("p must be an odd prime, got {p}")]
    NotPrime { p: u64 },
    #[error("invalid modulus: {reason}")]
    InvalidModulus { reason: String },
    #[error("modulus is not irreducible over F_{p}")]
    NotIrreducible { p: u64 },
    #[error("modulus is irreducible but x is not primitive: x^{witness} = 1")]
    NotPrimitive { witness: u64 },
    #[error("field size p^m = {q} exceeds the supported bound 2^40")]
    TooLarge { q: u128 },
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("{l} does not divide m = {m}")]
    NotADivisor { l: u32, m: u32 },
    #[error("no modulus available for p = {p}, m = {m}: not in the built-in table and no config entry found")]
    MissingModulus { p: u64, m: u32 },
    #[error("modulus config error (line {line}): {reason}")]
    BadConfig { line: usize, reason: String },
}

/// An element of F_{p^m}: coefficients of 1, x, ..., x^{m-1}, each in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    /// Coefficients in the polynomial basis, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// F_{p^m} with precomputed power, discrete-log, and trace tables.
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    n: u64,
    modulus: Vec<u64>,
    /// exp[j] = rank of pi^j, j in [0, n)
    exp: Vec<u64>,
    /// log[rank] = j with pi^j = element, LOG_SENTINEL at rank 0
    log: Vec<u64>,
    /// tr[rank] = Tr(element) as a residue in [0, p)
    tr: Vec<u64>,
    /// residue of pi^{(p^m-1)/(p-1)}, a generator of F_p^*
    subfield_gen: u64,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Build F_{p^m} from a monic modulus of degree m (constant term
    /// first).  Validates that p is an odd prime, the modulus is
    /// irreducible, and the class of x is primitive; precomputes tables.
    pub fn new(p: u64, m: u32, modulus: &[u64]) -> Result<Field, GfError> {
        if !poly::is_prime(p) || p == 2 {
            return Err(GfError::NotPrime { p });
        }
        if m == 0 {
            return Err(GfError::InvalidModulus {
                reason: "degree m must be at least 1".into(),
            });
        }
        if modulus.len() != m as usize + 1 {
            return Err(GfError::InvalidModulus {
                reason: format!("expected {} coefficients, got {}", m + 1, modulus.len()),
            });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(GfError::InvalidModulus {
                reason: "modulus must be monic (leading coefficient 1)".into(),
            });
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(GfError::InvalidModulus {
                reason: format!("coefficient {c} is not reduced mod {p}"),
            });
        }

        let mut q: u128 = 1;
        for _ in 0..m {
            q *= p as u128;
            if q > MAX_FIELD_SIZE {
                return Err(GfError::TooLarge { q });
            }
        }
        let q = q as u64;
        let n = q - 1;

        if !poly::is_irreducible(modulus, p) {
            return Err(GfError::NotIrreducible { p });
        }
        if let Err(witness) = poly::x_has_full_order(modulus, p, n) {
            return Err(GfError::NotPrimitive { witness });
        }

        let mut field = Field {
            p,
            m,
            q,
            n,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
            tr: Vec::new(),
            subfield_gen: 0,
        };
        field.build_power_tables();
        field.build_trace_table();
        field.subfield_gen = {
            let e = n / (p - 1);
            let rank = field.exp[e as usize];
            let elem = field.decode(rank);
            debug_assert!(
                elem.coeffs[1..].iter().all(|&c| c == 0),
                "pi^{{n/(p-1)}} must lie in the prime subfield"
            );
            elem.coeffs[0]
        };
        Ok(field)
    }

    /// Build F_{p^m} using the built-in modulus table.
    pub fn builtin(p: u64, m: u32) -> Result<Field, GfError> {
        let modulus = builtin_modulus(p, m).ok_or(GfError::MissingModulus { p, m })?;
        Field::new(p, m, modulus)
    }

    /// Build F_{p^m} resolving the modulus from a config file, the
    /// `WDIST_MODULUS_PATH` environment variable, or the built-in table.
    pub fn resolved(p: u64, m: u32, config: Option<&std::path::Path>) -> Result<Field, GfError> {
        let modulus = resolve_modulus(p, m, config)?;
        Field::new(p, m, &modulus)
    }

    fn build_power_tables(&mut self) {
        let q = usize::try_from(self.q).expect("field size fits usize");
        let n = q - 1;
        let mut exp = vec![0u64; n];
        let mut log = vec![LOG_SENTINEL; q];
        let mut cur = vec![0u64; self.m as usize];
        cur[0] = 1;
        for (j, slot) in exp.iter_mut().enumerate() {
            let rank = self.encode(&cur);
            *slot = rank;
            assert_eq!(
                log[rank as usize], LOG_SENTINEL,
                "power walk revisited an element; primitivity check is inconsistent"
            );
            log[rank as usize] = j as u64;
            self.mul_by_x(&mut cur);
        }
        assert_eq!(self.encode(&cur), 1, "pi^n must close the cycle at 1");
        self.exp = exp;
        self.log = log;
    }

    /// Multiply a coefficient vector by the class of x in place.
    fn mul_by_x(&self, coeffs: &mut [u64]) {
        let m = self.m as usize;
        let carry = coeffs[m - 1];
        for i in (1..m).rev() {
            coeffs[i] = coeffs[i - 1];
        }
        coeffs[0] = 0;
        if carry != 0 {
            for (c, &f) in coeffs.iter_mut().zip(&self.modulus) {
                *c = poly::subp(*c, poly::mulp(carry, f, self.p), self.p);
            }
        }
    }

    fn build_trace_table(&mut self) {
        let p = self.p;
        let m = self.m as usize;
        // Tr(x^i) for the basis, via Frobenius powers x^{p^r} mod f.
        let mut frob = Vec::with_capacity(m);
        let mut cur = if m == 1 {
            vec![poly::subp(0, self.modulus[0], p)]
        } else {
            vec![0, 1]
        };
        for _ in 0..m {
            frob.push(cur.clone());
            cur = poly::powmod(&cur, p, &self.modulus, p);
        }
        let mut basis_tr = vec![0u64; m];
        for fr in &frob {
            let mut pow_i = vec![1u64]; // fr^i, starting at i = 0
            for (i, bt) in basis_tr.iter_mut().enumerate() {
                *bt = poly::addp(*bt, *pow_i.first().unwrap_or(&0), p);
                if i + 1 < m {
                    pow_i = poly::mulmod(&pow_i, fr, &self.modulus, p);
                }
            }
        }
        // The full sums must be constants; verify by recomputing the sums
        // as polynomials, not just their constant terms.
        #[cfg(debug_assertions)]
        {
            for (i, &bt) in basis_tr.iter().enumerate() {
                let mut total = vec![0u64; m];
                for fr in &frob {
                    let pw = poly::powmod(fr, i as u64, &self.modulus, p);
                    for (t, c) in total.iter_mut().zip(pw.iter()) {
                        *t = poly::addp(*t, *c, p);
                    }
                }
                assert!(
                    total[1..].iter().all(|&c| c == 0),
                    "Tr(x^{i}) is not in the prime field"
                );
                assert_eq!(total[0], bt);
            }
        }

        // Walk all ranks as a mixed-radix odometer; a digit stepping c ->
        // c+1 (including the wrap p-1 -> 0, since -(p-1) = 1 mod p) adds
        // basis_tr[i] to the running trace.
        let q = usize::try_from(self.q).expect("field size fits usize");
        let mut tr = vec![0u64; q];
        let mut digits = vec![0u64; m];
        let mut acc = 0u64;
        for slot in tr.iter_mut().skip(1) {
            let mut i = 0;
            loop {
                digits[i] += 1;
                acc = poly::addp(acc, basis_tr[i], p);
                if digits[i] == p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            *slot = acc;
        }
        self.tr = tr;
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut r = 0u64;
        for &c in coeffs.iter().rev() {
            r = r * self.p + c;
        }
        r
    }

    fn decode(&self, mut rank: u64) -> FieldElement {
        let mut coeffs = vec![0u64; self.m as usize];
        for c in coeffs.iter_mut() {
            *c = rank % self.p;
            rank /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size q = p^m.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Multiplicative group order n = p^m - 1 (also the code length).
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Residue of pi^{(p^m-1)/(p-1)}, a generator of F_p^*.
    pub fn subfield_generator(&self) -> u64 {
        self.subfield_gen
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// The multiplicative generator pi (the class of x).
    pub fn pi(&self) -> FieldElement {
        self.from_log(1)
    }

    /// Element from explicit coefficients.  Panics if the slice does not
    /// have length m with entries below p.
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        assert_eq!(coeffs.len(), self.m as usize, "coefficient count must be m");
        assert!(
            coeffs.iter().all(|&c| c < self.p),
            "coefficients must be reduced mod p"
        );
        FieldElement {
            coeffs: coeffs.to_vec(),
        }
    }

    /// Element with the given rank in the mixed-radix element order.
    pub fn from_rank(&self, rank: u64) -> FieldElement {
        assert!(rank < self.q, "rank out of range");
        self.decode(rank)
    }

    /// Rank of an element (0 is the zero element, 1 is one).
    pub fn rank_of(&self, x: &FieldElement) -> u64 {
        self.encode(&x.coeffs)
    }

    /// pi^j; j is reduced mod n.
    pub fn from_log(&self, j: u64) -> FieldElement {
        self.decode(self.exp[(j % self.n) as usize])
    }

    /// Discrete log base pi, or None for the zero element.
    pub fn log(&self, x: &FieldElement) -> Option<u64> {
        let l = self.log[self.rank_of(x) as usize];
        (l != LOG_SENTINEL).then_some(l)
    }

    /// Rank (element index) of pi^j, for table-driven scans; j < n.
    #[inline]
    pub fn rank_at_log(&self, j: u64) -> u64 {
        self.exp[j as usize]
    }

    /// Discrete log of a rank, or None for rank 0.
    #[inline]
    pub fn log_of_rank(&self, rank: u64) -> Option<u64> {
        let l = self.log[rank as usize];
        (l != LOG_SENTINEL).then_some(l)
    }

    /// Trace residue of the element with the given rank, in [0, p).
    #[inline]
    pub fn trace_of_rank(&self, rank: u64) -> u64 {
        self.tr[rank as usize]
    }

    /// Tr(pi^j) for j in [0, n): the table behind all enumeration scans.
    pub fn trace_of_powers(&self) -> Vec<u64> {
        self.exp.iter().map(|&r| self.tr[r as usize]).collect()
    }

    /// Iterate all q elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|r| self.decode(r))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| poly::addp(x, y, self.p))
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| poly::subp(x, y, self.p))
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| poly::subp(0, x, self.p)).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self.log(a), self.log(b)) {
            (Some(la), Some(lb)) => {
                let j = (la + lb) % self.n; // la, lb < n <= 2^40: no overflow
                self.from_log(j)
            }
            _ => self.zero(),
        }
    }

    /// a^e with e an arbitrary (possibly negative) integer; exponents are
    /// reduced mod n for nonzero a.  Errors on 0^e with e < 0; 0^0 = 1.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement, GfError> {
        match self.log(a) {
            None => {
                if e == 0 {
                    Ok(self.one())
                } else if e > 0 {
                    Ok(self.zero())
                } else {
                    Err(GfError::DivisionByZero)
                }
            }
            Some(la) => {
                let ee = (e as i128).rem_euclid(self.n as i128) as u128;
                let j = ((la as u128 * ee) % self.n as u128) as u64;
                Ok(self.from_log(j))
            }
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        let la = self.log(a).ok_or(GfError::DivisionByZero)?;
        Ok(self.from_log((self.n - la) % self.n))
    }

    /// Absolute trace Tr_1^m(x) as a residue in [0, p).
    pub fn trace(&self, x: &FieldElement) -> u64 {
        self.tr[self.rank_of(x) as usize]
    }

    /// Relative trace Tr_l^m(x) = sum of x^{p^{l i}} over i < m/l, an
    /// element of the subfield F_{p^l}.
    pub fn trace_to_subfield(&self, x: &FieldElement, l: u32) -> Result<FieldElement, GfError> {
        if l == 0 || !self.m.is_multiple_of(l) {
            return Err(GfError::NotADivisor { l, m: self.m });
        }
        let Some(lx) = self.log(x) else {
            return Ok(self.zero());
        };
        let pl = mod_pow(self.p, l as u64, self.n);
        let mut acc = self.zero();
        let mut e = lx;
        for _ in 0..(self.m / l) {
            acc = self.add(&acc, &self.from_log(e));
            e = ((e as u128 * pl as u128) % self.n as u128) as u64;
        }
        Ok(acc)
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise,
    /// computed as the sign of x^{(p^m-1)/2}.
    pub fn quadratic_character(&self, x: &FieldElement) -> i64 {
        match self.log(x) {
            None => 0,
            Some(lx) => {
                let half = self.n / 2;
                let j = ((lx as u128 * half as u128) % self.n as u128) as u64;
                if j == 0 {
                    1
                } else {
                    debug_assert_eq!(j, half, "x^{{n/2}} must be +1 or -1");
                    -1
                }
            }
        }
    }
}

/// b^e mod md with u128 intermediates.
pub(crate) fn mod_pow(b: u64, mut e: u64, md: u64) -> u64 {
    debug_assert!(md > 0);
    if md == 1 {
        return 0;
    }
    let mut r: u128 = 1;
    let mut b: u128 = (b % md) as u128;
    let md = md as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % md;
        }
        b = b * b % md;
        e >>= 1;
    }
    r as u64
}
