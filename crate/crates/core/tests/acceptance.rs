//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Run with `cargo test --release --test acceptance` for realistic timings.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qsign::analytic::{dominance, eventual_dominance_certificate, FamilyModel, DEFAULT_PRECISION, PRECISION_CAP};
use qsign::certifier::{richmond_szekeres_scan, verify_known_theorems};
use qsign::circle::{arc_spotcheck, numeric_coefficient, run_identity, Identity, DEFAULT_SEED};
use qsign::modular::{dedekind_sum, delta_table, lpos_set, omega_of};
use qsign::qseries::{expand_product, registered, rr_sum_side, ProductSpec, PsiFactor, RrVariant, Sign};
use qsign::Rational;

type Outcome = Result<String, String>;
/// title, check, time budget in seconds
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// Exact sign of every coefficient at `first + 5j` up to `hi`.
fn class_signs(name: &str, residue: usize, first: usize, hi: usize, want: Sign) -> Outcome {
    let s = expand_product(&registered(name).map_err(e)?, hi);
    let mut checked = 0;
    for i in (first..=hi).filter(|i| i % 5 == residue) {
        let c = s.coeff(i).ok_or("series too short")?;
        if Sign::of(c) != want {
            return Err(format!("{name}({i}) = {c}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} coefficients up to index {hi}"))
}

fn c1() -> Outcome {
    class_signs("A", 0, 5, 1000, Sign::Negative)
}

fn c2() -> Outcome {
    class_signs("B", 0, 5, 1000, Sign::Negative)
}

fn c3() -> Outcome {
    class_signs("D", 1, 1, 19_501, Sign::Positive)
}

fn c4() -> Outcome {
    let tables = verify_known_theorems(800).map_err(e)?;
    ensure(tables.len() == 4, "expected A, B, C, D")?;
    let mut n = 0;
    for t in &tables {
        ensure(t.all_hold(), format!("{} fails", t.spec))?;
        n += t.verdicts.iter().map(|v| v.checked).sum::<usize>();
    }
    Ok(format!("{n} indices"))
}

fn c5() -> Outcome {
    let want = [("A", -24, vec![(1, 5), (4, 5)]), ("B", 24, vec![(2, 5), (3, 5)])];
    for (name, omega, lpos) in want {
        let s = registered(name).map_err(e)?;
        ensure(s.level() == 5, format!("{name}: level {}", s.level()))?;
        ensure(omega_of(&s).value == omega, format!("{name}: omega {}", omega_of(&s).value))?;
        ensure(lpos_set(&s).map_err(e)? == lpos, format!("{name}: Lpos {:?}", lpos_set(&s)))?;
    }
    let d = registered("D").map_err(e)?;
    ensure(d.level() == 25 && omega_of(&d).value == 0, "D: level or omega")?;
    let rows = delta_table(&d).map_err(e)?;
    let pos: Vec<_> = rows.iter().filter(|r| r.delta > 0).collect();
    ensure(!pos.is_empty(), "D: no positive class")?;
    for r in pos {
        ensure(
            r.delta == 24 && [1, 4].contains(&(r.aleph % 5)) && [5, 10, 15, 20].contains(&(r.l % 25)),
            format!("D: unexpected class ({}, {}) with delta {}", r.aleph, r.l, r.delta),
        )?;
    }
    Ok("A, B, D match".into())
}

fn c6() -> Outcome {
    let cases = [(FamilyModel::a(), 805, 0, 801), (FamilyModel::b(), 805, 0, 801), (FamilyModel::d(), 19_006, 1, 19_001)];
    let mut bits = Vec::new();
    for (m, n, r, n0) in cases {
        let rep = dominance(&m, n, DEFAULT_PRECISION, PRECISION_CAP).map_err(e)?;
        ensure(rep.verdict.is_true(), format!("{} at {n}: {}", m.name, rep.verdict))?;
        let ev = eventual_dominance_certificate(&m, r, n0, DEFAULT_PRECISION, PRECISION_CAP).map_err(e)?;
        ensure(ev.verdict.is_true(), format!("{} from {n0}: {}", m.name, ev.verdict))?;
        bits.push(ev.precision_bits.max(rep.precision_bits));
    }
    Ok(format!("bits used {bits:?}"))
}

fn c7() -> Outcome {
    let mut out = Vec::new();
    for id in [Identity::Eta, Identity::Theta, Identity::Quasi, Identity::Product] {
        let rep = run_identity(id, 100, DEFAULT_SEED, 192).map_err(e)?;
        ensure(rep.samples == 100, format!("{id}: {} samples", rep.samples))?;
        ensure(rep.max_residual < 1e-25, format!("{id}: residual {:e}", rep.max_residual))?;
        out.push(format!("{id} {:.1e}", rep.max_residual));
    }
    Ok(out.join(", "))
}

/// `4c²·s(d,c)` from the definition, in integers: for `0 < r < c`,
/// `((r/c)) = (2r - c)/2c`, and `dr mod c` is never 0 when `gcd(d,c) = 1`.
fn dedekind_scaled(d: i64, c: i64) -> i64 {
    (1..c).map(|r| (2 * r - c) * (2 * (d * r).rem_euclid(c) - c)).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn c8() -> Outcome {
    let mut pairs = 0u64;
    for c in 1..=1000i64 {
        for d in 0..c {
            if gcd(d, c) != 1 {
                continue;
            }
            let fast = dedekind_sum(d, c).map_err(e)?;
            let slow = Rational::from((dedekind_scaled(d, c), 4 * c * c));
            ensure(fast == slow, format!("s({d},{c}): {fast} vs {slow}"))?;
            pairs += 1;
        }
    }
    for c in 1..=200i64 {
        for d in 1..=200i64 {
            if gcd(d, c) != 1 {
                continue;
            }
            let lhs = dedekind_sum(d, c).map_err(e)? + dedekind_sum(c, d).map_err(e)?;
            let rhs = (Rational::from((d, c)) + Rational::from((c, d)) + Rational::from((1, c * d))) / 12
                - Rational::from((1, 4));
            ensure(lhs == rhs, format!("reciprocity fails at ({d},{c})"))?;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c9() -> Outcome {
    let g = ProductSpec::new(vec![PsiFactor { r: 1, m: 5, delta: -1 }]).map_err(e)?;
    let h = ProductSpec::new(vec![PsiFactor { r: 2, m: 5, delta: -1 }]).map_err(e)?;
    ensure(rr_sum_side(RrVariant::G, 500) == expand_product(&g, 500), "G differs")?;
    ensure(rr_sum_side(RrVariant::H, 500) == expand_product(&h, 500), "H differs")?;
    Ok("G and H to q^500".into())
}

fn c10() -> Outcome {
    let mut worst = 0f64;
    for name in ["A", "B"] {
        let spec = registered(name).map_err(e)?;
        let exact = expand_product(&spec, 30);
        for n in 0..=30u64 {
            let x = exact.coeff(n as usize).unwrap().to_f64();
            let est = numeric_coefficient(&spec, n, 5).map_err(e)?;
            let rel = (est.re - x).abs() / x.abs().max(1.0);
            worst = worst.max(rel);
            ensure(rel < 1e-6, format!("{name}({n}): {} vs {x}", est.re))?;
        }
    }
    for (a, b) in [(24.0, -24.0), (24.0, 24.0), (24.0, 0.0)] {
        let r = arc_spotcheck(a, b, 5, 30, 13).map_err(e)?;
        ensure(r.holds, format!("(a,b)=({a},{b}): {:e} > {:e}", r.error, r.bound))?;
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

fn c11() -> Outcome {
    let tables = richmond_szekeres_scan(2000).map_err(e)?;
    let mut out = Vec::new();
    for t in &tables {
        let ex = t.exceptions_in(100, 2000);
        ensure(ex.is_empty(), format!("{}: exceptions {ex:?}", t.spec))?;
        let cut = t.cutoff.ok_or(format!("{}: no cutoff", t.spec))?;
        ensure(cut <= 100, format!("{}: cutoff {cut}", t.spec))?;
        out.push(format!("{} cutoff {cut}", t.spec));
    }
    ensure(out.len() == 2, "expected c and d")?;
    Ok(out.join(", "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("A(5n) < 0, 1 <= n <= 200", c1, 10),
        ("B(5n) < 0, 1 <= n <= 200", c2, 10),
        ("D(5n+1) > 0, 0 <= n <= 3900", c3, 300),
        ("known sign patterns of A, B, C, D to 800", c4, 10),
        ("omega and Lpos tables", c5, 60),
        ("dominance at 805/805/19006, eventual from 801/801/19001", c6, 60),
        ("eta, theta, quasi-period, product transformations", c7, 120),
        ("Dedekind sums and reciprocity", c8, 30),
        ("Rogers-Ramanujan identities to 500", c9, 60),
        ("circle-method coefficients and single-arc bound", c10, 300),
        ("eventual patterns of c, d on [100, 2000]", c11, 60),
    ];
    let mut failed = 0;
    for (i, (title, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let dt = t.elapsed();
        let res = match res {
            Ok(m) if dt > Duration::from_secs(*budget) => Err(format!("{m}; over the {budget} s budget")),
            r => r,
        };
        match res {
            Ok(m) => println!("criterion {:>2} PASS  {title}  [{:.1?}]  {m}", i + 1, dt),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}  [{:.1?}]  {m}", i + 1, dt);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
