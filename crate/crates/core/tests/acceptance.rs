//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero on failure.

mod common;

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl23::arith::{factor, is_prime, zsigmondy_primes, Natural};
use sl23::certify::{certify, q_divisibility_scan, verify, Certificate};
use sl23::construct::{
    build, build_generic, build_sl11, build_special, instantiate_generic, q_value, symbolic_fz11,
    PairMetadata, SPECIAL_CASES,
};
use sl23::ff::make_field;
use sl23::meataxe::{check_witness, is_irreducible_module_seeded, scan_lines, Verdict};
use sl23::poly::is_irreducible;
use sl23::{Field, GaloisField};

const GENERIC: [(u32, u64); 15] = [
    (9, 3),
    (9, 5),
    (9, 7),
    (9, 8),
    (9, 9),
    (9, 11),
    (9, 13),
    (9, 16),
    (10, 5),
    (10, 7),
    (10, 8),
    (10, 9),
    (10, 11),
    (10, 13),
    (10, 16),
];
const SL11: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn all_pairs() -> Vec<(u32, u64)> {
    let mut v: Vec<_> = SPECIAL_CASES.iter().map(|c| (c.n, c.q)).collect();
    v.extend(GENERIC);
    v.extend(SL11.iter().map(|&q| (11, q)));
    v
}

fn criterion1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for case in &SPECIAL_CASES {
        let t = Instant::now();
        let pair = build_special(case.n, case.q).map_err(|e| e.to_string())?;
        let PairMetadata::Special { witnesses, .. } = &pair.metadata else {
            return Err("special pair without witnesses".into());
        };
        ensure!(witnesses[0].word.to_string() == "xy", "first witness is not xy");
        for w in witnesses {
            let m = w.word.eval(&pair.x, &pair.y).map_err(|e| e.to_string())?;
            let ord = m.element_order().map_err(|e| e.to_string())?;
            ensure!(
                ord == w.claimed_order,
                "SL_{}({}): {} has order {ord}, expected {}",
                case.n,
                case.q,
                w.word,
                w.claimed_order
            );
        }
        let el = t.elapsed();
        ensure!(el < Duration::from_secs(1), "SL_{}({}) took {el:?}", case.n, case.q);
        slowest = slowest.max(el);
    }
    Ok(format!("10 witness orders exact, slowest case {slowest:.2?}"))
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    for (n, q) in GENERIC {
        let pair = build_generic(n, q).map_err(|e| e.to_string())?;
        let one = pair.field.one();
        ensure!(pair.x.element_order() == Ok(nat(2)), "({n},{q}): ord x");
        ensure!(pair.y.element_order() == Ok(nat(3)), "({n},{q}): ord y");
        ensure!(pair.x.determinant() == one && pair.y.determinant() == one, "({n},{q}): det");
        let expect_q = q_value(n, q).unwrap();
        ensure!(pair.q_order == expect_q, "({n},{q}): Q");
        ensure!(pair.z.element_order() == Ok(expect_q.clone()), "({n},{q}): ord z != {expect_q}");
        ensure!(
            Some(pair.z.char_poly()) == pair.expected_char_poly(),
            "({n},{q}): char poly identity"
        );
        let PairMetadata::Generic { min_poly, .. } = &pair.metadata else {
            return Err("generic pair without alphas".into());
        };
        ensure!(is_irreducible(min_poly) == Ok(true), "({n},{q}): f_n reducible");
    }
    let el = t.elapsed();
    ensure!(el < Duration::from_secs(30), "took {el:?}");
    Ok(format!("15 generic pairs verified in {el:.2?}"))
}

fn criterion3() -> Outcome {
    let t = Instant::now();
    for q in SL11 {
        let pair = build_sl11(q).map_err(|e| e.to_string())?;
        let PairMetadata::Sl11 { l_poly, deltas, .. } = &pair.metadata else {
            return Err("sl11 pair without deltas".into());
        };
        let cp = pair.z.char_poly();
        ensure!(&cp == l_poly, "q={q}: char poly != l");
        ensure!(symbolic_fz11(&pair.field, deltas) == cp, "q={q}: closed form != char poly");
        let expect = (nat(q).pow(11) - 1u32) / (nat(q) - 1u32);
        ensure!(pair.z.element_order() == Ok(expect.clone()), "q={q}: ord z != {expect}");
        ensure!(expect.gcd_six_is_one(), "q={q}: gcd(6, Q) != 1");
        let scan = q_divisibility_scan(q).map_err(|e| format!("q={q}: {e}"))?;
        ensure!(scan.divisible == [7], "q={q}: scan {:?}", scan.divisible);
    }
    let el = t.elapsed();
    ensure!(el < Duration::from_secs(60), "took {el:?}");
    Ok(format!("7 fields verified in {el:.2?}"))
}

trait SixCoprime {
    fn gcd_six_is_one(&self) -> bool;
}

impl SixCoprime for Natural {
    fn gcd_six_is_one(&self) -> bool {
        (self % 6u32).to_u32().is_some_and(|r| r == 1 || r == 5)
    }
}

fn criterion4() -> Outcome {
    for (n, q) in all_pairs() {
        let pair = build(n, q).map_err(|e| e.to_string())?;
        ensure!(scan_lines(&pair.x, &pair.y).is_irreducible(), "({n},{q}): scan found a line");
        let v = is_irreducible_module_seeded(&[pair.x.clone(), pair.y.clone()], 0);
        ensure!(matches!(v, Ok(Verdict::Irreducible)), "({n},{q}): meataxe {v:?}");
    }
    let excluded = [(9, 2), (9, 4), (10, 2), (10, 3), (10, 4)];
    let mut missing = Vec::new();
    for (n, q) in excluded {
        let pair = instantiate_generic(n, q).map_err(|e| e.to_string())?;
        match scan_lines(&pair.x, &pair.y) {
            Verdict::Reducible { basis, side } => ensure!(
                check_witness(&[pair.x, pair.y], &basis, side),
                "({n},{q}): witness not invariant"
            ),
            Verdict::Irreducible => missing.push(format!("({n},{q})")),
        }
    }
    ensure!(
        missing.is_empty(),
        "27 pairs irreducible on both tests, but the canonical instantiation at {} has no invariant \
         line or hyperplane (see tests/excluded_values.rs for the omega choices that do)",
        missing.join(", ")
    );
    Ok("27 pairs irreducible on both tests, 5 excluded instances reducible".into())
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bad = common::oracle_disagreements(&mut rng, 200);
    ensure!(bad == 0, "{bad} disagreements");
    Ok("200 random pairs, 0 disagreements".into())
}

fn criterion6() -> Outcome {
    let pairs = all_pairs();
    for &(n, q) in &pairs {
        let a = certify(n, q, 0).map_err(|e| e.to_string())?.to_json();
        let b = certify(n, q, 0).map_err(|e| e.to_string())?.to_json();
        ensure!(a == b, "({n},{q}): certificates differ between runs");
        let cert = Certificate::from_json(&a).map_err(|e| e.to_string())?;
        let r = verify(&cert);
        ensure!(r.is_ok(), "({n},{q}): verify failed at {:?}", r.failure);
        let mut bad = cert.clone();
        let e = &mut bad.matrices.x[n as usize - 1][0];
        *e = if e == "0" { "1".into() } else { "0".into() };
        ensure!(!verify(&bad).is_ok(), "({n},{q}): tampering undetected");
    }
    Ok(format!("{} certificates round-trip, tamper-evident, byte-stable", pairs.len()))
}

fn criterion7() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let mut spf = vec![0usize; LIMIT];
    for i in 2..LIMIT {
        if spf[i] == 0 {
            for j in (i..LIMIT).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    for n in 1..LIMIT {
        ensure!(is_prime(&nat(n as u64)) == (n > 1 && spf[n] == n), "is_prime({n})");
        let mut expect: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let r = spf[m] as u64;
            match expect.last_mut() {
                Some((p, e)) if *p == r => *e += 1,
                _ => expect.push((r, 1)),
            }
            m /= spf[m];
        }
        let got: Vec<(u64, u32)> = factor(&nat(n as u64))
            .factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect();
        ensure!(got == expect, "factor({n})");
    }
    ensure!(is_prime(&nat(0)) == false, "is_prime(0)");
    ensure!(zsigmondy_primes(&nat(2), 11) == [nat(23), nat(89)], "zsigmondy(2, 11)");
    let mut fields: Vec<GaloisField> = Vec::new();
    for (n, q) in all_pairs() {
        let (p, m) = sl23::arith::prime_power_decompose(q).unwrap();
        let ext = if n == 11 { 11 } else { n as usize - 1 };
        for k in [m as usize, m as usize * ext] {
            let f = make_field(&p, k).map_err(|e| e.to_string())?;
            if !fields.contains(&f) {
                fields.push(f);
            }
        }
    }
    for (i, f) in fields.iter().enumerate() {
        common::field_axioms(f, 1000, i as u64)?;
    }
    Ok(format!(
        "primality and factoring agree below 10^6, zsigmondy(2,11) = [23, 89], {} fields pass axioms",
        fields.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("special-case order witnesses", criterion1),
        ("generic construction n = 9, 10", criterion2),
        ("SL_11 construction and maxsub scan", criterion3),
        ("invariant line scan and MeatAxe", criterion4),
        ("MeatAxe against exhaustive enumeration", criterion5),
        ("certificate round trip", criterion6),
        ("arithmetic substrate", criterion7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let el = t.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{el:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{el:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
