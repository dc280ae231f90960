//! Default moduli and the modulus config file format.
//!
//! A config file is ASCII text; each non-comment line reads
//!
//! ```text
//! p m c_0 c_1 ... c_m
//! ```
//!
//! with the constant term first and `c_m = 1` (monic).  `#` starts a
//! comment, blank lines are ignored, and the first entry matching a
//! requested `(p, m)` wins.  Lookup order for a modulus is: explicit
//! config path, then the `WDIST_MODULUS_PATH` environment variable, then
//! the built-in table below.

use super::GfError;
use std::path::Path;

/// Environment variable consulted when no explicit config path is given.
pub const MODULUS_PATH_ENV: &str = "WDIST_MODULUS_PATH";

/// Built-in primitive polynomials for p in {3, 5, 7}, degrees 1..=8.
/// Each is the first primitive monic polynomial in the base-p enumeration
/// of its non-leading coefficient vector (constant term least significant);
/// `Field::new` revalidates every entry, and an exhaustive test builds all
/// of them.
const BUILTIN: &[(u64, u32, &[u64])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (5, 4, &[2, 2, 1, 0, 1]),
    (5, 5, &[2, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
    (7, 1, &[2, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (7, 4, &[5, 3, 1, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[5, 1, 3, 0, 0, 0, 1]),
    (7, 7, &[2, 6, 0, 0, 0, 0, 0, 1]),
    (7, 8, &[3, 1, 0, 0, 0, 0, 0, 0, 1]),
];

/// The built-in primitive polynomial for `(p, m)`, if the table has one.
pub fn builtin_modulus(p: u64, m: u32) -> Option<&'static [u64]> {
    BUILTIN
        .iter()
        .find(|&&(bp, bm, _)| bp == p && bm == m)
        .map(|&(_, _, coeffs)| coeffs)
}

/// All `(p, m)` pairs covered by the built-in table, for exhaustive tests.
pub fn builtin_entries() -> impl Iterator<Item = (u64, u32, &'static [u64])> {
    BUILTIN.iter().copied()
}

/// One parsed config row: the `(p, m)` key and the coefficient list.
pub type ModulusEntry = ((u64, u32), Vec<u64>);

/// Parse a modulus config file into `((p, m), coefficients)` entries.
pub fn parse_modulus_config(text: &str) -> Result<Vec<ModulusEntry>, GfError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(GfError::BadConfig {
                line: line_no,
                reason: "expected `p m c_0 ... c_m`".into(),
            });
        }
        let parse = |s: &str| -> Result<u64, GfError> {
            s.parse::<u64>().map_err(|_| GfError::BadConfig {
                line: line_no,
                reason: format!("`{s}` is not a nonnegative integer"),
            })
        };
        let p = parse(toks[0])?;
        let m64 = parse(toks[1])?;
        let m: u32 = m64.try_into().map_err(|_| GfError::BadConfig {
            line: line_no,
            reason: "m out of range".into(),
        })?;
        if m == 0 {
            return Err(GfError::BadConfig {
                line: line_no,
                reason: "m must be at least 1".into(),
            });
        }
        if toks.len() != 2 + m as usize + 1 {
            return Err(GfError::BadConfig {
                line: line_no,
                reason: format!(
                    "expected {} coefficients c_0..c_{m}, found {}",
                    m + 1,
                    toks.len() - 2
                ),
            });
        }
        let coeffs: Vec<u64> = toks[2..]
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_, _>>()?;
        if *coeffs.last().unwrap() != 1 {
            return Err(GfError::BadConfig {
                line: line_no,
                reason: "modulus must be monic (c_m = 1)".into(),
            });
        }
        out.push(((p, m), coeffs));
    }
    Ok(out)
}

/// Resolve the modulus for `(p, m)`: explicit config file first, then the
/// `WDIST_MODULUS_PATH` file if set, then the built-in table.  A file that
/// parses but has no matching entry falls through to the next source; a
/// file that cannot be read or parsed is a hard error.
pub fn resolve_modulus(p: u64, m: u32, config: Option<&Path>) -> Result<Vec<u64>, GfError> {
    let env_path = std::env::var_os(MODULUS_PATH_ENV).map(std::path::PathBuf::from);
    let sources = config.into_iter().chain(env_path.as_deref());
    for path in sources {
        let text = std::fs::read_to_string(path).map_err(|e| GfError::BadConfig {
            line: 0,
            reason: format!("cannot read {}: {e}", path.display()),
        })?;
        let entries = parse_modulus_config(&text)?;
        if let Some((_, coeffs)) = entries
            .into_iter()
            .find(|&((ep, em), _)| ep == p && em == m)
        {
            return Ok(coeffs);
        }
    }
    builtin_modulus(p, m)
        .map(<[u64]>::to_vec)
        .ok_or(GfError::MissingModulus { p, m })
}
