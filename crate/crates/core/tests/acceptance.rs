//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;

use braidcong::pipeline::{Limits, VerdictReport};
use braidcong::suite::{hsu_oracle, to_json, verify_mtc, verify_theorem_a, verify_theorem_b};
use braidcong::RootFraction;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Suite = (&'static str, Box<dyn Fn() -> common::Check>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table(dim: usize, expected: usize) -> Outcome {
    let prefix = format!("A{dim}:");
    let out = verify_theorem_a(None, &Limits::default()).map_err(|e| e.to_string())?;
    let rows: Vec<_> = out.iter().filter(|o| o.name.starts_with(&prefix)).collect();
    ensure(
        rows.len() == expected,
        format!("{} cases, expected {expected}", rows.len()),
    )?;
    let failed: Vec<&str> = rows
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.name.as_str())
        .collect();
    ensure(failed.is_empty(), format!("failed: {failed:?}"))?;
    if dim == 2 {
        // each xi_5 branch: two level-20 cases, four level-60 cases
        for j in 1..=4 {
            let tag = format!("A2:r5j{j}:");
            let mut levels: BTreeMap<u64, usize> = BTreeMap::new();
            for o in rows.iter().filter(|o| o.name.starts_with(&tag)) {
                if let VerdictReport::Congruence { level } = o.verdict {
                    *levels.entry(level).or_default() += 1;
                }
            }
            let want = BTreeMap::from([(20, 2), (60, 4)]);
            ensure(levels == want, format!("r=5 j={j} levels {levels:?}"))?;
        }
    }
    Ok(format!(
        "{} congruence cases with matching levels",
        rows.len()
    ))
}

fn theorem_b() -> Outcome {
    let out = verify_theorem_b(&[3, 5, 7, 9], &Limits::default()).map_err(|e| e.to_string())?;
    ensure(out.len() == 8, "expected 8 families")?;
    for o in &out {
        ensure(o.pass, format!("{} failed: {o:?}", o.name))?;
        ensure(
            matches!(o.verdict, VerdictReport::NonCongruence { .. }),
            format!("{} not non-congruence", o.name),
        )?;
    }
    Ok("ell = 3,5,7,9, both signs: level 6l, witness [T^{3l+1}, U^{3l}]".into())
}

fn mtc() -> Outcome {
    let out = verify_mtc(&Limits::default()).map_err(|e| e.to_string())?;
    let by_name: BTreeMap<&str, _> = out.iter().map(|o| (o.name.as_str(), o)).collect();
    for (name, po, level) in [("MTC:C", 2, 6), ("MTC:D", 3, 12), ("MTC:sigma", 4, 24)] {
        let o = by_name.get(name).ok_or(format!("missing {name}"))?;
        ensure(o.po == po, format!("{name}: po {}", o.po))?;
        ensure(
            o.verdict == VerdictReport::Congruence { level },
            format!("{name}: {:?}", o.verdict),
        )?;
    }
    let g = by_name.get("MTC:G").ok_or("missing MTC:G")?;
    ensure(g.po == 6, format!("G: po {}", g.po))?;
    let mut spec = g.spectrum.clone();
    spec.sort();
    let mut want: Vec<RootFraction> = [(1, 9), (11, 18), (5, 18)]
        .iter()
        .map(|&(k, n)| RootFraction::new(k, n).unwrap())
        .collect();
    want.sort();
    ensure(spec == want, format!("G spectrum {spec:?}"))?;
    ensure(
        matches!(g.verdict, VerdictReport::NonCongruence { .. }),
        format!("G: {:?}", g.verdict),
    )?;
    Ok("C, D, sigma congruence (levels 6, 12, 24); scaled G non-congruence".into())
}

fn oracle() -> Outcome {
    let out = hsu_oracle(2, 60).map_err(|e| e.to_string())?;
    let bad: Vec<u64> = out.iter().filter(|o| !o.pass).map(|o| o.n).collect();
    ensure(bad.is_empty(), format!("failing levels {bad:?}"))?;
    Ok("all generators are +-I mod N for 2 <= N <= 60".into())
}

fn properties() -> Outcome {
    let checks: Vec<Suite> = vec![
        ("mobius", Box::new(|| common::check_mobius_oracle(60))),
        ("roots", Box::new(|| common::check_root_orders(60))),
        (
            "ring",
            Box::new(|| {
                [5, 8, 12, 24]
                    .into_iter()
                    .try_for_each(|n| common::check_ring_axioms(n, 1000))
            }),
        ),
        (
            "promote",
            Box::new(|| common::check_promotion_homomorphism(300)),
        ),
        ("conj", Box::new(|| common::check_conjugation(300))),
        ("matrix", Box::new(|| common::check_matrix_laws(200))),
        ("braid", Box::new(common::check_braid_relation_all)),
        ("po-scaling", Box::new(|| common::check_po_scaling(500))),
        (
            "central",
            Box::new(|| common::check_central_scalar_scaling(200)),
        ),
        (
            "closure",
            Box::new(|| common::check_closure_all_cases(200_000).map(|_| ())),
        ),
        ("symmetry", Box::new(common::check_symmetry_pairs)),
        ("fixtures", Box::new(|| common::check_fixture_coverage(42))),
    ];
    for (name, check) in &checks {
        check().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} property suites", checks.len()))
}

fn determinism() -> Outcome {
    let run = || verify_theorem_a(None, &Limits::default()).map(|o| to_json(&o));
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    ensure(a == b, "JSON differs between runs")?;
    Ok(format!("{} bytes identical across runs", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("two-dimensional table", || table(2, 54)),
        ("three-dimensional table", || table(3, 48)),
        ("non-congruence families", theorem_b),
        ("modular category examples", mtc),
        ("generating-set oracle", oracle),
        ("property suites", properties),
        ("deterministic output", determinism),
    ];
    let mut ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                ok = false;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
