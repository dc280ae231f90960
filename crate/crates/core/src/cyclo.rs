//! Exact arithmetic in Z[zeta_p], the ring of integers generated by a
//! primitive p-th root of unity, for odd primes p.
//!
//! Elements are stored on the canonical basis 1, zeta, ..., zeta^{p-2}:
//! internally a length-p coefficient vector whose last entry is forced to
//! zero by subtracting it from every coordinate (legal because the sum of
//! all p-th roots of unity is zero).  Two elements are equal iff their
//! canonical vectors are equal, so the derived `Eq`/`Ord`/`Hash` are
//! semantically correct and values can key ordered maps.
//!
//! Coefficients are `i128`; all quantities arising from fields within the
//! supported size bound stay far below the overflow limit, and debug
//! builds keep integer overflow checks on.

use std::fmt;

/// An element of Z[zeta_p].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclotomicInt {
    p: u64,
    /// Length p, last entry always 0 after canonicalization.
    coeffs: Vec<i128>,
}

impl CyclotomicInt {
    fn from_raw(p: u64, mut coeffs: Vec<i128>) -> CyclotomicInt {
        assert!(p >= 3 && p % 2 == 1, "modulus must be an odd prime");
        assert_eq!(coeffs.len(), p as usize);
        let last = coeffs[p as usize - 1];
        if last != 0 {
            for c in coeffs.iter_mut() {
                *c -= last;
            }
        }
        debug_assert_eq!(coeffs[p as usize - 1], 0);
        CyclotomicInt { p, coeffs }
    }

    pub fn zero(p: u64) -> CyclotomicInt {
        CyclotomicInt::from_raw(p, vec![0; p as usize])
    }

    pub fn one(p: u64) -> CyclotomicInt {
        CyclotomicInt::integer(p, 1)
    }

    /// The rational integer v as an element of Z[zeta_p].
    pub fn integer(p: u64, v: i128) -> CyclotomicInt {
        let mut coeffs = vec![0; p as usize];
        coeffs[0] = v;
        CyclotomicInt::from_raw(p, coeffs)
    }

    /// zeta^j (j reduced mod p).
    pub fn root_power(p: u64, j: u64) -> CyclotomicInt {
        let mut coeffs = vec![0; p as usize];
        coeffs[(j % p) as usize] = 1;
        CyclotomicInt::from_raw(p, coeffs)
    }

    /// Sum of counts[r] * zeta^r over r in [0, p): the value of a
    /// character sum given its histogram of exponent residues.
    pub fn from_counts(p: u64, counts: &[u64]) -> CyclotomicInt {
        assert_eq!(counts.len(), p as usize, "need one count per residue");
        let coeffs = counts.iter().map(|&c| c as i128).collect();
        CyclotomicInt::from_raw(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical coefficients on 1, zeta, ..., zeta^{p-2}.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs[..self.p as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(v) iff the element is the rational integer v.
    pub fn as_integer(&self) -> Option<i128> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn check_same_ring(&self, other: &CyclotomicInt) {
        assert_eq!(
            self.p, other.p,
            "mixed cyclotomic moduli: operands live in Z[zeta_{}] and Z[zeta_{}]",
            self.p, other.p
        );
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        CyclotomicInt::from_raw(self.p, coeffs)
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a - b)
            .collect();
        CyclotomicInt::from_raw(self.p, coeffs)
    }

    pub fn neg(&self) -> CyclotomicInt {
        CyclotomicInt::from_raw(self.p, self.coeffs.iter().map(|&a| -a).collect())
    }

    pub fn scale(&self, k: i128) -> CyclotomicInt {
        CyclotomicInt::from_raw(self.p, self.coeffs.iter().map(|&a| a * k).collect())
    }

    /// Product, via cyclic convolution of exponents mod p.
    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        self.check_same_ring(other);
        let p = self.p as usize;
        let mut out = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = i + j;
                let k = if k >= p { k - p } else { k };
                out[k] += a * b;
            }
        }
        CyclotomicInt::from_raw(self.p, out)
    }

    /// Small-exponent power by repeated multiplication.
    pub fn pow(&self, e: u32) -> CyclotomicInt {
        let mut acc = CyclotomicInt::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Galois automorphism zeta -> zeta^u, for u not divisible by p.
    pub fn galois(&self, u: u64) -> CyclotomicInt {
        assert!(
            !u.is_multiple_of(self.p),
            "zeta -> zeta^u needs gcd(u, p) = 1"
        );
        let p = self.p as usize;
        let u = (u % self.p) as usize;
        let mut out = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                out[i * u % p] += a;
            }
        }
        CyclotomicInt::from_raw(self.p, out)
    }

    /// The quadratic Gauss sum: sum of zeta^{t^2} over all t mod p.
    /// Its square is +p when p = 1 mod 4 and -p when p = 3 mod 4.
    pub fn gauss_sum(p: u64) -> CyclotomicInt {
        assert!(p >= 3 && p % 2 == 1);
        let mut counts = vec![0u64; p as usize];
        for t in 0..p {
            counts[(t * t % p) as usize] += 1;
        }
        CyclotomicInt::from_counts(p, &counts)
    }
}

impl fmt::Display for CyclotomicInt {
    /// Renders as a polynomial in `z` (a primitive p-th root of unity) on
    /// the canonical basis, e.g. `1 + 2*z + 2*z^4` or `-27`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
