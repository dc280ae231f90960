//! Acceptance gate: one test per criterion, each printing a single
//! "acceptance criterion NN: PASS" line when its checks hold (run with
//! `cargo test --test acceptance -- --nocapture` to see the lines).
//! Frequencies are counted over message pairs (a, b); the representation
//! map is injective for every code checked here, so these equal the
//! codeword counts.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};
use wdist_core::codes::{self, Method, WeightDistribution};
use wdist_core::cyclo::CyclotomicInt;
use wdist_core::expsums;
use wdist_core::gf::Field;
use wdist_core::predict::{self, VerifyStatus};
use wdist_core::structure;

fn field(p: u64, m: u32) -> Field {
    Field::resolved(p, m, None).expect("built-in modulus exists for test sizes")
}

fn dist_map(dist: &WeightDistribution) -> BTreeMap<u64, u128> {
    dist.entries().clone()
}

fn assert_under(elapsed: Duration, budget_s: u64, what: &str) {
    assert!(
        elapsed < Duration::from_secs(budget_s),
        "{what} took {elapsed:?}, budget {budget_s} s"
    );
}

#[test]
fn criterion_01_first_even_regime_example() {
    // The CLI invocation itself must pass...
    let out = Command::new(env!("CARGO_BIN_EXE_wdist"))
        .env_remove("WDIST_MODULUS_PATH")
        .args(["verify", "--p", "3", "--m", "6", "--t", "2"])
        .output()
        .expect("binary must spawn");
    assert_eq!(out.status.code(), Some(0), "verify must exit 0 (PASS)");
    assert!(String::from_utf8_lossy(&out.stdout).contains("status: PASS"));

    // ...and the library agrees, with the exact table, on the fast route,
    // within budget and without any thread pool (the route is serial).
    let f = field(3, 6);
    let start = Instant::now();
    let report = predict::verify(&f, 2, Method::Fast).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.status, VerifyStatus::Pass);
    let expected = BTreeMap::from([
        (0u64, 1u128),
        (216, 364),
        (252, 1092),
        (432, 33124),
        (468, 198744),
        (504, 298116),
    ]);
    let computed: BTreeMap<u64, u128> = report.computed.distribution.iter().copied().collect();
    assert_eq!(computed, expected);
    assert_under(elapsed, 5, "fast verify at (3,6,t=2)");
    println!(
        "acceptance criterion 01: PASS — verify (3,6,t=2) PASS, exact table, fast route in {elapsed:?}"
    );
}

#[test]
fn criterion_02_second_even_regime_example() {
    let f = field(3, 4);
    let expected = BTreeMap::from([
        (0u64, 1u128),
        (24, 120),
        (36, 40),
        (48, 3600),
        (60, 2400),
        (72, 400),
    ]);
    let start = Instant::now();
    let direct = codes::weight_distribution(&f, 2, Method::Direct).unwrap();
    let elapsed = start.elapsed();
    let fast = codes::weight_distribution(&f, 2, Method::Fast).unwrap();
    assert_eq!(dist_map(&direct), expected, "direct route");
    assert_eq!(dist_map(&fast), expected, "fast route");
    assert_under(elapsed, 60, "direct enumeration at (3,4,t=2)");
    println!(
        "acceptance criterion 02: PASS — (3,4,t=2) exact by both routes, direct in {elapsed:?}"
    );
}

#[test]
fn criterion_03_odd_regime_example() {
    let f = field(5, 3);
    let expected = BTreeMap::from([(0u64, 1u128), (50, 248), (100, 15376)]);
    let start = Instant::now();
    let fast = codes::weight_distribution(&f, 3, Method::Fast).unwrap();
    let direct = codes::weight_distribution(&f, 3, Method::Direct).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(dist_map(&fast), expected, "per-pair character-sum route");
    assert_eq!(dist_map(&direct), expected, "direct count");
    assert_under(elapsed, 120, "both routes at (5,3,t=3)");
    println!("acceptance criterion 03: PASS — (5,3,t=3) exact by both routes in {elapsed:?}");
}

#[test]
fn criterion_04_second_family_example() {
    let f = field(3, 6);
    let expected = BTreeMap::from([
        (0u64, 1u128),
        (234, 728),
        (252, 728),
        (468, 132496),
        (486, 264992),
        (504, 132496),
    ]);
    let dist = codes::weight_distribution(&f, 5, Method::Fast).unwrap();
    assert_eq!(dist_map(&dist), expected);
    println!("acceptance criterion 04: PASS — (3,6,t=5) exact");
}

#[test]
fn criterion_05_both_weight_routes_agree_on_every_pair() {
    // (p, m, k) = (3, 4, 1): t is the family exponent (3^1+1)/2 = 2.
    let f = field(3, 4);
    let t = structure::family_exponent(3, 4, 1).unwrap();
    assert_eq!(t, 2);
    let mut mismatches = 0u32;
    for ra in 0..f.q() {
        let a = f.from_rank(ra);
        for rb in 0..f.q() {
            let b = f.from_rank(rb);
            if codes::weight_direct(&f, t, &a, &b) != codes::weight_fast(&f, t, &a, &b).unwrap() {
                mismatches += 1;
            }
        }
    }
    assert_eq!(mismatches, 0, "the two weight routes must never disagree");
    println!("acceptance criterion 05: PASS — direct = fast on all 6561 pairs at (3,4,k=1)");
}

#[test]
fn criterion_06_exponential_sum_lemma_suite() {
    // Case checks: integer multiset tables in the even regime, Gauss
    // closed forms in the odd regime.
    for (p, m) in [(3, 6), (3, 4), (5, 3), (3, 5)] {
        expsums::check_power_sum_cases(&field(p, m), 1)
            .unwrap_or_else(|e| panic!("power-sum case check failed at ({p},{m},1): {e}"));
    }
    // Factorization identity, exhaustively over alpha.
    for (p, m) in [(3, 6), (3, 4)] {
        expsums::check_counting_factorization(&field(p, m), 1)
            .unwrap_or_else(|e| panic!("counting factorization failed at ({p},{m},1): {e}"));
    }
    // The counting-sum value distributions match the tables exactly.
    let r36 = expsums::counting_sum_distribution(&field(3, 6), 1)
        .unwrap()
        .as_integer_entries()
        .expect("even-regime counting sums are integers");
    assert_eq!(
        r36,
        BTreeMap::from([(1458i128, 1u128), (162, 182), (-54, 546)])
    );
    let r34 = expsums::counting_sum_distribution(&field(3, 4), 1)
        .unwrap()
        .as_integer_entries()
        .expect("even-regime counting sums are integers");
    assert_eq!(r34, BTreeMap::from([(162i128, 1u128), (18, 60), (-54, 20)]));
    println!("acceptance criterion 06: PASS — power-sum cases, factorization, counting tables");
}

#[test]
fn criterion_07_pair_sum_distribution_table() {
    let f = field(3, 6);
    let params = structure::resolve_params(3, 6, 2)
        .unwrap()
        .expect("t = 2 matches the (3,6) family");
    let dist = expsums::pair_sum_distribution(&f, &params).unwrap();
    assert_eq!(dist.total(), 531441);
    let table = dist
        .as_integer_entries()
        .expect("even-regime pair sums are integers");
    assert_eq!(
        table,
        BTreeMap::from([
            (2916i128, 1u128),
            (1620, 364),
            (1404, 1092),
            (324, 33124),
            (108, 198744),
            (-108, 298116),
        ])
    );
    println!("acceptance criterion 07: PASS — six-row pair-sum table at (3,6,k=1), total 531441");
}

#[test]
fn criterion_08_moment_identities_on_all_predicted_tables() {
    let start = Instant::now();
    let mut tables = 0u32;
    for p in [3u64, 5, 7] {
        for m in 1..=8u32 {
            for k in 1..=8u32 {
                let dist = match predict::predicted_distribution(p, m, k) {
                    Ok(d) => d,
                    // Skip parameter sets whose family exponent is
                    // degenerate (no closed form applies there).
                    Err(_) => continue,
                };
                tables += 1;
                let q2 = (p as u128).pow(2 * m);
                let total: u128 = dist.entries().values().sum();
                assert_eq!(total, q2, "mass at ({p},{m},{k})");
                let first: u128 = dist.entries().iter().map(|(&w, &c)| w as u128 * c).sum();
                let n = (p as u128).pow(m) - 1;
                let expected = n * (p as u128 - 1) * (p as u128).pow(2 * m - 1);
                assert_eq!(first, expected, "first moment at ({p},{m},{k})");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        tables >= 100,
        "the sweep must cover real tables, got {tables}"
    );
    assert_under(elapsed, 1, "moment sweep");
    println!("acceptance criterion 08: PASS — both identities on {tables} tables in {elapsed:?}");
}

#[test]
fn criterion_09_orbit_equivalence() {
    // Closure of t = 2 under multiplication by p and the half-shift,
    // modulo p^m - 1 = 80.
    let f = field(3, 4);
    let n = f.n();
    let mut orbit = std::collections::BTreeSet::from([2u64]);
    loop {
        let next: std::collections::BTreeSet<u64> = orbit
            .iter()
            .flat_map(|&t| [t * 3 % n, (t + n / 2) % n])
            .chain(orbit.iter().copied())
            .collect();
        if next == orbit {
            break;
        }
        orbit = next;
    }
    assert!(orbit.len() >= 4, "orbit of 2 must be nontrivial");
    let reference = codes::weight_distribution(&f, 2, Method::Auto).unwrap();
    for &t in &orbit {
        let dist = codes::weight_distribution(&f, t, Method::Auto).unwrap();
        assert_eq!(
            dist_map(&dist),
            dist_map(&reference),
            "t = {t} must share the distribution of t = 2"
        );
    }
    println!(
        "acceptance criterion 09: PASS — {} orbit members of t=2 at (3,4) share one table",
        orbit.len()
    );
}

#[test]
fn criterion_10_exponent_one_equivalence() {
    // Odd-regime equivalence: the t = 1 code and the family-exponent code
    // carry the same distribution.
    let f53 = field(5, 3);
    let t53 = structure::family_exponent(5, 3, 1).unwrap();
    assert_eq!(t53, 3);
    let one = codes::weight_distribution(&f53, 1, Method::Auto).unwrap();
    let fam = codes::weight_distribution(&f53, t53, Method::Auto).unwrap();
    assert_eq!(dist_map(&one), dist_map(&fam), "(5,3,k=1)");

    let f33 = field(3, 3);
    let t33 = structure::family_exponent(3, 3, 3).unwrap();
    assert_eq!(t33, 14);
    assert!(matches!(
        structure::check_admissible(3, 3, t33).unwrap(),
        structure::Admissibility::Admissible
    ));
    let one = codes::weight_distribution(&f33, 1, Method::Auto).unwrap();
    let fam = codes::weight_distribution(&f33, t33, Method::Auto).unwrap();
    assert_eq!(dist_map(&one), dist_map(&fam), "(3,3,k=3) class");
    println!(
        "acceptance criterion 10: PASS — t=1 equals the family code at (5,3,k=1) and (3,3,k=3)"
    );
}

#[test]
fn criterion_11_property_suites() {
    // Trace linearity and balance, exhaustive at (3, 4).
    let f = field(3, 4);
    for x in f.elements() {
        for y in f.elements() {
            assert_eq!(
                f.trace(&f.add(&x, &y)),
                (f.trace(&x) + f.trace(&y)) % f.p(),
                "trace must be additive"
            );
        }
    }
    let mut counts = vec![0u64; f.p() as usize];
    for x in f.elements() {
        counts[f.trace(&x) as usize] += 1;
    }
    assert!(
        counts.iter().all(|&c| c == f.q() / f.p()),
        "trace must be balanced: {counts:?}"
    );

    // Quadratic-character multiplicativity, exhaustive at (3,4) and (5,3).
    for fld in [&field(3, 4), &field(5, 3)] {
        for i in 0..fld.n() {
            let x = fld.from_log(i);
            for j in 0..fld.n() {
                let y = fld.from_log(j);
                assert_eq!(
                    fld.quadratic_character(&fld.mul(&x, &y)),
                    fld.quadratic_character(&x) * fld.quadratic_character(&y),
                    "character must be multiplicative"
                );
            }
        }
        assert_eq!(fld.quadratic_character(&fld.zero()), 0);
    }

    // Ring laws in the cyclotomic-integer ring, on a deterministic sample.
    for p in [3u64, 5, 7] {
        let mut state = 0x243F_6A88_85A3_08D3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let sample: Vec<CyclotomicInt> = (0..12)
            .map(|_| {
                let j = next() % p;
                let s = (next() % 41) as i128 - 20;
                CyclotomicInt::root_power(p, j)
                    .scale(s)
                    .add(&CyclotomicInt::integer(p, (next() % 17) as i128 - 8))
            })
            .collect();
        let one = CyclotomicInt::one(p);
        let zero = CyclotomicInt::zero(p);
        for a in &sample {
            assert_eq!(a.add(&zero), *a);
            assert_eq!(a.mul(&one), *a);
            assert_eq!(a.add(&a.neg()), zero);
            for b in &sample {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in &sample {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
        // The generator is a genuine p-th root of unity.
        assert_eq!(CyclotomicInt::root_power(p, 1).pow(p as u32), one);
    }

    // Gauss-sum square identity for every odd prime p <= 50.
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let g = CyclotomicInt::gauss_sum(p);
        let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
        assert_eq!(
            g.mul(&g).as_integer(),
            Some(sign * p as i128),
            "G^2 must be (-1)^((p-1)/2) p at p = {p}"
        );
    }

    // Closed-form gcd against Euclid, exhaustively for k, m <= 12.
    fn euclid(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    for p in [3u64, 5, 7] {
        for k in 1..=12u32 {
            for m in 1..=12u32 {
                let lhs = structure::gcd_power_plus_one(p, k, m);
                let rhs = euclid((p as u128).pow(k) + 1, (p as u128).pow(m) - 1);
                assert_eq!(lhs, rhs, "gcd closed form at ({p},{k},{m})");
            }
        }
    }
    println!("acceptance criterion 11: PASS — trace, character, ring, Gauss, and gcd properties");
}
