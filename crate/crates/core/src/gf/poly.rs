//! Dense polynomial arithmetic over F_p, used only during field
//! construction (irreducibility, primitivity, trace of basis elements).
//!
//! Polynomials are coefficient vectors with the constant term first.
//! Coefficients are residues in `[0, p)`; products go through `u128` so
//! that primes up to the 2^40 field-size guard cannot overflow.

/// `a * b mod p` without overflow for `a, b < p <= 2^40`.
#[inline]
pub fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `a + b mod p`.
#[inline]
pub fn addp(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// `a - b mod p`.
#[inline]
pub fn subp(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Deterministic primality test by trial division (fine for p <= 2^40).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` by trial division, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// `a * b mod f` where `f` is monic of degree m and deg a, deg b < m.
pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    debug_assert!(a.len() <= m && b.len() <= m);
    let mut r = vec![0u64; 2 * m.max(1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = addp(r[i + j], mulp(x, y, p), p);
        }
    }
    for d in (m..2 * m.max(1)).rev() {
        let c = r[d];
        if c != 0 {
            r[d] = 0;
            for i in 0..m {
                r[d - m + i] = subp(r[d - m + i], mulp(c, f[i], p), p);
            }
        }
    }
    r.truncate(m.max(1));
    trim(&mut r);
    r
}

/// `base^e mod f` by square-and-multiply.
pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    trim(&mut b);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

/// `x^e mod f`.
pub fn x_powmod(e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let x = if m == 1 {
        // x = -c0 in the degree-1 quotient ring
        vec![subp(0, f[0], p)]
    } else {
        vec![0, 1]
    };
    powmod(&x, e, f, p)
}

/// Monic gcd of `a` and `b` over F_p.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if !is_zero(&a) {
        let lead = *a.last().unwrap();
        let inv = inv_modp(lead, p);
        for c in a.iter_mut() {
            *c = mulp(*c, inv, p);
        }
    }
    a
}

/// Remainder of `a` divided by a *not necessarily monic* nonzero `b`.
/// Each round cancels the leading coefficient, so the degree strictly
/// decreases and the loop terminates.
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_modp(b[db], p);
    while !is_zero(&a) && a.len() > db {
        let da = a.len() - 1;
        let c = mulp(a[da], lead_inv, p);
        for i in 0..=db {
            a[da - db + i] = subp(a[da - db + i], mulp(c, b[i], p), p);
        }
        trim(&mut a);
        if a.len() - 1 == da {
            // leading term canceled exactly; only possible when da == 0
            break;
        }
    }
    a
}

/// Inverse of a nonzero residue mod prime p (Fermat).
fn inv_modp(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, b, p);
        }
        b = mulp(b, b, p);
        e >>= 1;
    }
    r
}

/// Rabin irreducibility test for monic `f` of degree `m` over F_p:
/// x^{p^m} = x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for each prime r | m.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // x^{p^m} via iterated Frobenius: p^m can exceed u64 only past the
    // 2^40 field guard, which the caller has already enforced.
    let xpm = frobenius_power(m, f, p);
    if xpm != vec![0, 1] {
        return false;
    }
    for r in distinct_prime_factors(m as u64) {
        // h = x^{p^{m/r}} - x
        let mut h = frobenius_power(m / r as u32, f, p);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = subp(h[1], 1, p);
        trim(&mut h);
        if is_zero(&h) {
            return false; // x^{p^{m/r}} = x: all roots in a proper subfield
        }
        if gcd(f, &h, p).len() > 1 {
            return false;
        }
    }
    true
}

/// `x^{p^j} mod f` computed as j successive p-th powers.
fn frobenius_power(j: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut cur = vec![0, 1];
    for _ in 0..j {
        cur = powmod(&cur, p, f, p);
    }
    cur
}

/// True iff the class of x has multiplicative order exactly `n = p^m - 1`
/// in F_p[x]/(f), with `f` already known irreducible.  Returns a witness
/// exponent on the error side: a proper divisor `n / l` with x^{n/l} = 1,
/// or `n` itself when x is not even a unit of order dividing n (the
/// degenerate modulus f = x).
pub fn x_has_full_order(f: &[u64], p: u64, n: u64) -> Result<(), u64> {
    if x_powmod(n, f, p) != vec![1] {
        return Err(n);
    }
    for l in distinct_prime_factors(n) {
        if x_powmod(n / l, f, p) == vec![1] {
            return Err(n / l);
        }
    }
    Ok(())
}
