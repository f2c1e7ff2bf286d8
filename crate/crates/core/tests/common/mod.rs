//! Independent oracles and property checks shared by the integration and
//! acceptance targets. Each check returns `Err(description)` on the first
//! counterexample.
#![allow(dead_code)]

use braidcong::braid::{
    central_scalar, is_irreducible, projective_order_of, tw_construct, BraidRep, RepSpec,
};
use braidcong::catalog::{
    mtc_examples, noncongruence_family, theorem_a_cases, CaseDescriptor, LevelSource, Sign,
};
use braidcong::closure::enumerate_group_elements;
use braidcong::congruence::to_modular_rep;
use braidcong::cyclotomic::{cyclotomic_polynomial, euler_phi, Rational};
use braidcong::pipeline::{full_pipeline, Limits, ThetaPolicy};
use braidcong::{CycMatrix, CycNum, RootFraction};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Check = Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

// ---- numeric embedding oracle ----

#[derive(Clone, Copy, Debug)]
pub struct C64(pub f64, pub f64);

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn close(self, o: C64) -> bool {
        let scale = 1.0 + self.0.abs().max(self.1.abs());
        (self.0 - o.0).abs() < 1e-7 * scale && (self.1 - o.1).abs() < 1e-7 * scale
    }
}

/// Evaluate at `zeta_n = e^{2 pi i / n}` in floating point.
pub fn numeric(x: &CycNum) -> C64 {
    let n = x.conductor() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .fold(C64(0.0, 0.0), |acc, (k, c)| {
            let v = c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap();
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            acc.add(C64(v * ang.cos(), v * ang.sin()))
        })
}

pub fn cyc_strategy(n: u64) -> impl Strategy<Value = CycNum> {
    let phi = euler_phi(n) as usize;
    prop::collection::vec((-20i64..=20, 1i64..=6), phi).prop_map(move |cs| {
        let q: Vec<Rational> = cs
            .into_iter()
            .map(|(a, b)| Rational::new(a.into(), b.into()))
            .collect();
        CycNum::from_coeffs(n, &q).unwrap()
    })
}

pub fn check_ring_axioms(n: u64, cases: u32) -> Check {
    let s = (cyc_strategy(n), cyc_strategy(n), cyc_strategy(n));
    run(cases, s, |(a, b, c)| {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycNum::zero(), a.clone());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!(numeric(&(&a * &b)).close(numeric(&a).mul(numeric(&b))));
        prop_assert!(numeric(&(&a + &c)).close(numeric(&a).add(numeric(&c))));
        Ok(())
    })
}

pub fn check_promotion_homomorphism(cases: u32) -> Check {
    let s = (cyc_strategy(12), cyc_strategy(12), 1u64..=4);
    run(cases, s, |(a, b, m)| {
        let big = 12 * m;
        let pa = a.promote(big).unwrap();
        let pb = b.promote(big).unwrap();
        prop_assert_eq!(pa.conductor(), big);
        prop_assert_eq!(&pa * &pb, (&a * &b).promote(big).unwrap());
        prop_assert_eq!(&pa + &pb, (&a + &b).promote(big).unwrap());
        prop_assert!(numeric(&pa).close(numeric(&a)));
        Ok(())
    })
}

pub fn check_conjugation(cases: u32) -> Check {
    let s = (cyc_strategy(24), cyc_strategy(24));
    run(cases, s, |(a, b)| {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let z = numeric(&a);
        prop_assert!(numeric(&a.conj()).close(C64(z.0, -z.1)));
        Ok(())
    })
}

/// `Phi_n` as the Moebius product of `x^d - 1`, over plain integers.
pub fn mobius_cyclotomic(n: u64) -> Vec<i128> {
    fn mobius(mut m: u64) -> i32 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mut f = vec![0i128; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db];
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / lead;
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= c * y;
        }
    }
    assert!(r.iter().all(|x| *x == 0), "inexact division");
    q
}

pub fn check_mobius_oracle(nmax: u64) -> Check {
    for n in 1..=nmax {
        let lib: Vec<BigInt> = cyclotomic_polynomial(n).coeffs().to_vec();
        let oracle: Vec<BigInt> = mobius_cyclotomic(n).into_iter().map(BigInt::from).collect();
        if lib != oracle {
            return Err(format!("Phi_{n}: {lib:?} vs {oracle:?}"));
        }
        if lib.len() as u64 - 1 != euler_phi(n) {
            return Err(format!("deg Phi_{n} != phi({n})"));
        }
    }
    Ok(())
}

pub fn check_root_orders(nmax: u64) -> Check {
    for n in 1..=nmax {
        for k in 0..n as i64 {
            let z = CycNum::root_of_unity(k, n);
            let rf = RootFraction::new(k, n).unwrap();
            let ord = rf.order();
            if !z.pow(ord as i64).unwrap().is_one() {
                return Err(format!("zeta_{n}^{k} to the {ord} is not 1"));
            }
            for d in (1..ord).filter(|d| ord.is_multiple_of(*d)) {
                if z.pow(d as i64).unwrap().is_one() {
                    return Err(format!("zeta_{n}^{k} has order below {ord}"));
                }
            }
            if z.as_root_of_unity() != Some(rf) {
                return Err(format!("root recognition failed for {k}/{n}"));
            }
            if z.is_zero() {
                return Err("root of unity is zero".into());
            }
        }
    }
    Ok(())
}

fn matrix_strategy(dim: usize) -> impl Strategy<Value = CycMatrix> {
    prop::collection::vec((-3i64..=3, 0i64..12), dim * dim).prop_map(move |es| {
        let entries = es
            .into_iter()
            .map(|(c, k)| &CycNum::integer(c) * &CycNum::root_of_unity(k, 12))
            .collect();
        CycMatrix::new(dim, entries).unwrap()
    })
}

pub fn check_matrix_laws(cases: u32) -> Check {
    let s = (2usize..=3)
        .prop_flat_map(|d| (matrix_strategy(d), matrix_strategy(d), -3i64..=3, -3i64..=3));
    run(cases, s, |(a, b, p, q)| {
        let n = a.dim();
        if !a.det().is_zero() {
            let ai = a.inverse().unwrap();
            prop_assert!(a.mul(&ai).unwrap().is_identity());
            prop_assert!(ai.mul(&a).unwrap().is_identity());
            prop_assert_eq!(
                a.pow(p + q).unwrap(),
                a.pow(p).unwrap().mul(&a.pow(q).unwrap()).unwrap()
            );
            if !b.det().is_zero() {
                let commute = a.mul(&b).unwrap() == b.mul(&a).unwrap();
                prop_assert_eq!(a.commutator(&b).unwrap().is_identity(), commute);
            }
        } else {
            prop_assert!(a.inverse().is_err());
        }
        prop_assert_eq!(a.mul(&b).unwrap().det(), &a.det() * &b.det());
        prop_assert!(a.mul(&CycMatrix::identity(n)).unwrap() == a);
        Ok(())
    })
}

/// Every representation the catalog constructs.
pub fn all_constructed_reps() -> Vec<(String, BraidRep)> {
    let mut out: Vec<(String, BraidRep)> = theorem_a_cases()
        .into_iter()
        .map(|c| (c.name.clone(), tw_construct(&c.spec()).unwrap()))
        .collect();
    for ell in [3, 5, 7, 9] {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push((
                format!("B:ell{ell}{sign}"),
                noncongruence_family(ell, sign).unwrap(),
            ));
        }
    }
    for ex in mtc_examples().unwrap() {
        out.push((format!("MTC:{}", ex.name), ex.rep().unwrap()));
    }
    out
}

pub fn check_braid_relation_all() -> Check {
    for (name, rep) in all_constructed_reps() {
        if !rep.satisfies_braid_relation().map_err(|e| e.to_string())? {
            return Err(format!("{name}: ABA != BAB"));
        }
    }
    Ok(())
}

fn spec_strategy() -> impl Strategy<Value = RepSpec> {
    (2usize..=3)
        .prop_flat_map(|d| prop::collection::vec(0i64..24, d))
        .prop_filter_map("irreducible", |ks| {
            let spec = RepSpec::new(
                ks.into_iter()
                    .map(|k| RootFraction::new(k, 24).unwrap())
                    .collect(),
            )
            .ok()?;
            is_irreducible(&spec).then_some(spec)
        })
}

pub fn check_po_scaling(cases: u32) -> Check {
    run(cases, (spec_strategy(), 0i64..72), |(spec, k)| {
        let theta = RootFraction::new(k, 72).unwrap();
        prop_assert_eq!(
            projective_order_of(&spec.scaled(theta).eigs),
            projective_order_of(&spec.eigs)
        );
        Ok(())
    })
}

pub fn check_central_scalar_scaling(cases: u32) -> Check {
    run(cases, (spec_strategy(), 0i64..72), |(spec, k)| {
        let theta = RootFraction::new(k, 72).unwrap();
        let rep = tw_construct(&spec).unwrap();
        let c = central_scalar(&rep).unwrap();
        let scaled = central_scalar(&rep.scale(theta)).unwrap();
        prop_assert_eq!(scaled, &theta.pow(6).to_cyc() * &c);
        Ok(())
    })
}

/// The modular image of every finite-image case is finite, closed, and its
/// order is divisible by the orders of `rho(T)` and `rho(U)`.
pub fn check_closure_all_cases(cap: usize) -> Result<Vec<(String, usize)>, String> {
    let mut orders = Vec::new();
    for c in theorem_a_cases() {
        let rep = tw_construct(&c.spec()).unwrap();
        let m = to_modular_rep(&rep).map_err(|e| format!("{}: {e}", c.name))?;
        let (res, elements) = enumerate_group_elements(&[m.x.clone(), m.y.clone()], cap)
            .map_err(|e| e.to_string())?;
        if !res.finite || res.cap_hit {
            return Err(format!("{}: image not finite within {cap}", c.name));
        }
        let ox = m.x.order(1000).ok_or("order of X")?;
        let oy = m.y.order(1000).ok_or("order of Y")?;
        if !(res.order as u64).is_multiple_of(ox) || !(res.order as u64).is_multiple_of(oy) {
            return Err(format!(
                "{}: |G| = {} not divisible by {ox}, {oy}",
                c.name, res.order
            ));
        }
        let keys: std::collections::HashSet<_> = elements.iter().map(|e| e.key()).collect();
        for g in [&m.x, &m.y] {
            let g = g.promote(elements[0].conductor()).unwrap();
            for s in &elements {
                if !keys.contains(&s.mul(&g).unwrap().key()) {
                    return Err(format!("{}: element set not closed", c.name));
                }
            }
        }
        orders.push((c.name, res.order));
    }
    Ok(orders)
}

/// Cases sharing an eigenvalue set with a worked case must get the same
/// verdict and level as that case.
pub fn check_symmetry_pairs() -> Check {
    let limits = Limits::default();
    let cases = theorem_a_cases();
    let sorted = |c: &CaseDescriptor| {
        let mut e = c.spec().eigs;
        e.sort();
        e
    };
    let mut pairs = 0;
    for c in cases
        .iter()
        .filter(|c| c.level_source == LevelSource::Symmetry)
    {
        let partner = cases
            .iter()
            .find(|w| w.level_source == LevelSource::CaseText && sorted(w) == sorted(c))
            .ok_or_else(|| format!("{}: no worked partner", c.name))?;
        let a = full_pipeline(&c.spec(), ThetaPolicy::Auto, &limits).map_err(|e| e.to_string())?;
        let b = full_pipeline(&partner.spec(), ThetaPolicy::Auto, &limits)
            .map_err(|e| e.to_string())?;
        if a.verdict != b.verdict || a.glevel != b.glevel {
            return Err(format!(
                "{} vs {}: {:?} / {:?}",
                c.name, partner.name, a.verdict, b.verdict
            ));
        }
        pairs += 1;
    }
    if pairs == 0 {
        return Err("no symmetry cases".into());
    }
    Ok(())
}

/// Every worked fixture row is matched by exactly one generated case.
pub fn check_fixture_coverage(expected_rows: usize) -> Check {
    let cases = theorem_a_cases();
    let hits: std::collections::HashSet<_> = cases
        .iter()
        .filter(|c| c.level_source == LevelSource::CaseText)
        .map(|c| c.name.clone())
        .collect();
    if hits.len() != expected_rows {
        return Err(format!(
            "{} worked cases matched, expected {expected_rows}",
            hits.len()
        ));
    }
    if cases.iter().any(|c| !c.satisfies_key_equation()) {
        return Err("case violates the sixth-power equation".into());
    }
    Ok(())
}
