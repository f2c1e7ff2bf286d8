//! Named representations: the finite-image families with projective order
//! 2..=5, the non-congruence families `rho_{l,+-}`, and the examples coming
//! from modular tensor categories.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::braid::{tw_construct_capped, BraidRep, RepSpec};
use crate::cyclotomic::{CycNum, Rational, RootFraction};
use crate::error::{Error, Result};
use crate::linear::CycMatrix;

/// Where an expected level comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSource {
    /// Level fixed by an explicit computation.
    CaseText,
    /// Same eigenvalue set as a worked case, via `rho_{r,j,l} = rho_{r,-j,xi^j l}`
    /// or a permutation of the eigenvalues.
    Symmetry,
    /// No explicit computation; the fixture is the order of `rho(T)`.
    Analogous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub name: String,
    pub dim: usize,
    pub r: u64,
    pub j: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub lambda: RootFraction,
    pub expected_level: Option<u64>,
    pub level_source: LevelSource,
    pub family_tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseDescriptor {
    /// `(l, xi_r^j l)` or `(l, xi_r^j l, xi_r^k l)`.
    pub fn spec(&self) -> RepSpec {
        let xi = |e: u64| RootFraction::new(e as i64, self.r).expect("r > 0");
        let mut eigs = vec![self.lambda, self.lambda.mul(xi(self.j))];
        if let Some(k) = self.k {
            eigs.push(self.lambda.mul(xi(k)));
        }
        RepSpec::new(eigs).expect("dimension 2 or 3")
    }

    /// The sixth-power equation forced by the centre acting trivially.
    pub fn satisfies_key_equation(&self) -> bool {
        self.lambda.pow(6) == key_rhs(self.r, self.j, self.k)
    }
}

/// `l^6` for the family: `-e^{-6 pi i j / r}` (d = 2) or
/// `e^{-4 pi i (j + k) / r}` (d = 3).
fn key_rhs(r: u64, j: u64, k: Option<u64>) -> RootFraction {
    match k {
        None => RootFraction::new(-3 * j as i64, r).expect("r > 0").negate(),
        Some(k) => RootFraction::new(-2 * (j + k) as i64, r).expect("r > 0"),
    }
}

/// The six sixth roots of `e(a/b)`, ascending.
fn sixth_roots(rhs: RootFraction) -> Vec<RootFraction> {
    let (a, b) = (rhs.numer() as i64, rhs.denom());
    let mut out: Vec<RootFraction> = (0..6)
        .map(|m| RootFraction::new(a + m * b as i64, 6 * b).expect("b > 0"))
        .collect();
    out.sort_by(|x, y| (x.numer() * y.denom()).cmp(&(y.numer() * x.denom())));
    out
}

fn units(r: u64) -> Vec<u64> {
    (1..r).filter(|j| j.gcd(&r) == 1).collect()
}

/// `(dim, r, j, k, lambda k/n, level, note)`
type WorkedRow = (usize, u64, u64, u64, i64, u64, u64, &'static str);

/// Levels worked out case by case.
const CASE_TEXT: &[WorkedRow] = &[
    (2, 2, 1, 0, 0, 1, 2, ""),
    (2, 2, 1, 0, 1, 2, 2, ""),
    (2, 2, 1, 0, 1, 6, 6, ""),
    (2, 2, 1, 0, 2, 3, 6, ""),
    (2, 2, 1, 0, 1, 3, 6, ""),
    (2, 2, 1, 0, 5, 6, 6, ""),
    (2, 3, 1, 0, 1, 12, 12, ""),
    (2, 3, 1, 0, 5, 12, 12, ""),
    (2, 3, 1, 0, 3, 4, 12, ""),
    (2, 3, 1, 0, 1, 4, 12, ""),
    (2, 3, 1, 0, 7, 12, 12, ""),
    (2, 3, 1, 0, 11, 12, 12, ""),
    (2, 4, 1, 0, 1, 8, 8, ""),
    (2, 4, 1, 0, 5, 8, 8, ""),
    (2, 4, 1, 0, 7, 24, 24, ""),
    (2, 4, 1, 0, 11, 24, 24, ""),
    (2, 4, 1, 0, 19, 24, 24, ""),
    (2, 4, 1, 0, 23, 24, 24, ""),
    (2, 5, 1, 0, 3, 20, 20, ""),
    (2, 5, 1, 0, 13, 20, 20, ""),
    (2, 5, 1, 0, 19, 60, 60, ""),
    (2, 5, 1, 0, 29, 60, 60, ""),
    (2, 5, 1, 0, 49, 60, 60, ""),
    (2, 5, 1, 0, 59, 60, 60, ""),
    (3, 3, 1, 2, 0, 1, 3, ""),
    (3, 3, 1, 2, 1, 3, 3, ""),
    (3, 3, 1, 2, 2, 3, 3, ""),
    (3, 3, 1, 2, 1, 6, 6, ""),
    (3, 3, 1, 2, 1, 2, 6, ""),
    (3, 3, 1, 2, 5, 6, 6, ""),
    (3, 4, 1, 3, 0, 1, 4, ""),
    (3, 4, 1, 3, 1, 2, 4, ""),
    (3, 4, 1, 3, 1, 6, 12, ""),
    (3, 4, 1, 3, 1, 3, 12, ""),
    (3, 4, 1, 3, 2, 3, 12, ""),
    (3, 4, 1, 3, 5, 6, 12, ""),
    (3, 5, 1, 2, 2, 15, 15, ""),
    (
        3,
        5,
        1,
        2,
        7,
        15,
        15,
        "e^{28 pi i/5} fails the sixth-power equation; e^{28 pi i/15} is the consistent value",
    ),
    (3, 5, 1, 2, 19, 30, 30, ""),
    (3, 5, 1, 2, 29, 30, 30, ""),
    (3, 5, 1, 2, 4, 5, 5, ""),
    (3, 5, 1, 2, 3, 10, 10, ""),
];

struct Worked {
    eig_set: Vec<RootFraction>,
    level: u64,
    exact: (usize, u64, u64, Option<u64>, RootFraction),
    note: &'static str,
}

fn worked_cases() -> Vec<Worked> {
    CASE_TEXT
        .iter()
        .map(|&(dim, r, j, k, ln, ld, level, note)| {
            let k = (dim == 3).then_some(k);
            let lambda = RootFraction::new(ln, ld).expect("valid fixture");
            let d = make(dim, r, j, k, lambda);
            let mut eig_set = d.spec().eigs;
            eig_set.sort();
            Worked {
                eig_set,
                level,
                exact: (dim, r, j, k, lambda),
                note,
            }
        })
        .collect()
}

fn make(dim: usize, r: u64, j: u64, k: Option<u64>, lambda: RootFraction) -> CaseDescriptor {
    let family_tag = match k {
        None => format!("A2:r{r}j{j}"),
        Some(k) => format!("A3:r{r}j{j}k{k}"),
    };
    CaseDescriptor {
        name: format!("{family_tag}:λ={lambda}"),
        dim,
        r,
        j,
        k,
        lambda,
        expected_level: None,
        level_source: LevelSource::Analogous,
        family_tag,
        note: None,
    }
}

/// All 54 two-dimensional and 48 three-dimensional cases.
pub fn theorem_a_cases() -> Vec<CaseDescriptor> {
    let worked = worked_cases();
    let mut out = Vec::new();
    let mut push = |mut d: CaseDescriptor| {
        let mut set = d.spec().eigs;
        set.sort();
        let exact = worked
            .iter()
            .find(|w| w.exact == (d.dim, d.r, d.j, d.k, d.lambda));
        if let Some(w) = exact {
            d.expected_level = Some(w.level);
            d.level_source = LevelSource::CaseText;
            d.note = (!w.note.is_empty()).then(|| w.note.to_string());
        } else if let Some(w) = worked.iter().find(|w| w.eig_set == set) {
            d.expected_level = Some(w.level);
            d.level_source = LevelSource::Symmetry;
        } else {
            d.expected_level = Some(d.spec().conductor());
            d.level_source = LevelSource::Analogous;
        }
        out.push(d);
    };
    for r in 2..=5 {
        for j in units(r) {
            for lambda in sixth_roots(key_rhs(r, j, None)) {
                push(make(2, r, j, None, lambda));
            }
        }
    }
    for r in 3..=5 {
        let u = units(r);
        for (a, &j) in u.iter().enumerate() {
            for &k in &u[a + 1..] {
                for lambda in sixth_roots(key_rhs(r, j, Some(k))) {
                    push(make(3, r, j, Some(k), lambda));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn check_ell(ell: u64) -> Result<()> {
    if ell < 3 || ell.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "ell must be an odd integer >= 3, got {ell}"
        )));
    }
    Ok(())
}

/// Spectrum `(a, -a, +-b)` with `a = e(1/3l)` and `b = e(-2/3l)`.
pub fn noncongruence_spec(ell: u64, sign: Sign) -> Result<RepSpec> {
    check_ell(ell)?;
    let a = RootFraction::new(1, 3 * ell)?;
    let b = RootFraction::new(-2, 3 * ell)?;
    let c = match sign {
        Sign::Plus => b,
        Sign::Minus => b.negate(),
    };
    RepSpec::new(vec![a, a.negate(), c])
}

/// `rho_{l,+-}` in Tuba–Wenzl form. For the `+` sign this is literally the
/// printed pair `sigma_1 -> X_+`, `sigma_2 -> Y_+^{-1}`; see
/// [`printed_crosscheck`] for the `-` sign.
pub fn noncongruence_family(ell: u64, sign: Sign) -> Result<BraidRep> {
    let spec = noncongruence_spec(ell, sign)?;
    tw_construct_capped(&spec, u64::MAX)
}

/// The printed matrices `X_+-`, `Y_+-` transcribed entry by entry.
pub fn printed_noncongruence_matrices(ell: u64, sign: Sign) -> Result<(CycMatrix, CycMatrix)> {
    check_ell(ell)?;
    let n = 3 * ell;
    let z = |k: i64| CycNum::root_of_unity(k, n);
    let s = match sign {
        Sign::Plus => CycNum::one(),
        Sign::Minus => CycNum::integer(-1),
    };
    let zero = CycNum::zero;
    let a = z(1);
    let x = CycMatrix::from_rows(vec![
        vec![a.clone(), -(&s * &a) - z(-2), -a.clone()],
        vec![zero(), -a.clone(), -a.clone()],
        vec![zero(), zero(), z(-2)],
    ])?;
    let y = CycMatrix::from_rows(vec![
        vec![&s * &z(2), zero(), zero()],
        vec![&s * &z(2), -z(-1), zero()],
        vec![-z(-1), &s * &z(-4) + z(-1), z(-1)],
    ])?;
    Ok((x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedCheck {
    pub x_matches: bool,
    pub y_matches: bool,
    /// Whether `X` and `Y^{-1}` as printed satisfy the braid relation.
    pub printed_braid_relation: bool,
}

/// Compare the printed matrices with the Tuba–Wenzl construction.
pub fn printed_crosscheck(ell: u64, sign: Sign) -> Result<PrintedCheck> {
    let rep = noncongruence_family(ell, sign)?;
    let (x, y) = printed_noncongruence_matrices(ell, sign)?;
    let b = y.inverse()?;
    let aba = x.mul(&b)?.mul(&x)?;
    let bab = b.mul(&x)?.mul(&b)?;
    Ok(PrintedCheck {
        x_matches: x == rep.a,
        y_matches: b == rep.b,
        printed_braid_relation: aba == bab,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MtcSource {
    Spec(RepSpec),
    Matrices(BraidRep),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MtcExample {
    pub name: &'static str,
    pub source: MtcSource,
    pub expected_po: u64,
    /// A scaling singled out by the example, if any.
    pub theta: Option<RootFraction>,
}

impl MtcExample {
    pub fn rep(&self) -> Result<BraidRep> {
        match &self.source {
            MtcSource::Spec(s) => tw_construct_capped(s, u64::MAX),
            MtcSource::Matrices(r) => Ok(r.clone()),
        }
    }
}

/// `rho_G` from the anyon `G` of `D(S_3)`, conductor 24.
pub fn rho_g() -> Result<BraidRep> {
    let w = CycNum::root_of_unity(1, 3);
    let w2 = CycNum::root_of_unity(2, 3);
    let half = CycNum::rational(Rational::new(1.into(), 2.into()));
    // 1/sqrt(2) = (zeta_8 + zeta_8^7) / 2
    let inv_sqrt2 = &(&CycNum::root_of_unity(1, 8) + &CycNum::root_of_unity(7, 8)) * &half;
    let s = &inv_sqrt2 * &w;
    let a = CycMatrix::diagonal(&[CycNum::one(), CycNum::integer(-1), w2.clone()])?.scale(&w2);
    let b = CycMatrix::from_rows(vec![
        vec![half.clone(), -half.clone(), s.clone()],
        vec![-half.clone(), half.clone(), s.clone()],
        vec![s.clone(), s, CycNum::zero()],
    ])?
    .scale(&w);
    BraidRep::from_matrices(a.promote(24)?, b.promote(24)?)
}

pub fn mtc_examples() -> Result<Vec<MtcExample>> {
    let spec = |e: &[(i64, u64)]| {
        RepSpec::new(
            e.iter()
                .map(|&(k, n)| RootFraction::new(k, n))
                .collect::<Result<_>>()?,
        )
    };
    Ok(vec![
        MtcExample {
            name: "C",
            source: MtcSource::Spec(spec(&[(1, 4), (3, 4)])?),
            expected_po: 2,
            theta: None,
        },
        MtcExample {
            name: "D",
            source: MtcSource::Spec(spec(&[(1, 3), (2, 3)])?),
            expected_po: 3,
            theta: None,
        },
        MtcExample {
            name: "sigma",
            source: MtcSource::Spec(spec(&[(-1, 16), (3, 16)])?),
            expected_po: 4,
            theta: None,
        },
        MtcExample {
            name: "G",
            source: MtcSource::Matrices(rho_g()?),
            expected_po: 6,
            // tau = e^{-pi i / 9}
            theta: Some(RootFraction::new(-1, 18)?),
        },
    ])
}

/// Listing entry for the `catalog` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: RepSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_level: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_source: Option<LevelSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Every named representation, in a fixed order.
pub fn catalog_listing(ells: &[u64]) -> Result<Vec<CatalogEntry>> {
    let mut out: Vec<CatalogEntry> = theorem_a_cases()
        .into_iter()
        .map(|d| CatalogEntry {
            spec: d.spec(),
            name: d.name,
            expected_level: d.expected_level,
            level_source: Some(d.level_source),
            note: d.note,
        })
        .collect();
    for &ell in ells {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(CatalogEntry {
                name: format!("B:ell{ell}{sign}"),
                spec: noncongruence_spec(ell, sign)?,
                expected_level: None,
                level_source: None,
                note: Some(format!("non-congruence, geometric level {}", 6 * ell)),
            });
        }
    }
    for ex in mtc_examples()? {
        out.push(CatalogEntry {
            name: format!("MTC:{}", ex.name),
            spec: ex.rep()?.spec,
            expected_level: None,
            level_source: None,
            note: ex.theta.map(|t| format!("scaled by e({t})")),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{central_scalar, projective_order_of};

    fn rf(k: i64, n: u64) -> RootFraction {
        RootFraction::new(k, n).unwrap()
    }

    #[test]
    fn case_counts() {
        let cases = theorem_a_cases();
        assert_eq!(cases.iter().filter(|c| c.dim == 2).count(), 54);
        assert_eq!(cases.iter().filter(|c| c.dim == 3).count(), 48);
        assert!(cases.iter().all(CaseDescriptor::satisfies_key_equation));
        assert!(cases.iter().all(|c| c.expected_level.is_some()));
    }

    #[test]
    fn names_are_unique() {
        let cases = theorem_a_cases();
        let mut names: Vec<&str> = cases.iter().map(|c| c.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cases.len());
        assert!(cases.iter().any(|c| c.name == "A2:r4j1:λ=7/24"));
        assert!(cases.iter().any(|c| c.name == "A3:r3j1k2:λ=0/1"));
    }

    #[test]
    fn r2_levels() {
        let cases = theorem_a_cases();
        let levels: Vec<u64> = cases
            .iter()
            .filter(|c| c.family_tag == "A2:r2j1")
            .map(|c| c.expected_level.unwrap())
            .collect();
        // lambda = 0, 1/6, 1/3, 1/2, 2/3, 5/6
        assert_eq!(levels, vec![2, 6, 6, 2, 6, 6]);
    }

    #[test]
    fn sources() {
        let cases = theorem_a_cases();
        let find = |n: &str| cases.iter().find(|c| c.name == n).unwrap();
        assert_eq!(find("A2:r4j1:λ=1/8").level_source, LevelSource::CaseText);
        assert_eq!(find("A2:r3j2:λ=5/12").level_source, LevelSource::Symmetry);
        assert_eq!(find("A2:r5j2:λ=1/20").level_source, LevelSource::Analogous);
        assert_eq!(find("A3:r5j1k2:λ=3/10").expected_level, Some(10));
        assert!(find("A3:r5j1k2:λ=7/15").note.is_some());
        let d3r5 = cases.iter().filter(|c| c.dim == 3 && c.r == 5);
        let analogous = d3r5
            .filter(|c| c.level_source == LevelSource::Analogous)
            .count();
        assert_eq!(analogous, 18);
    }

    #[test]
    fn projective_orders_match_r() {
        for c in theorem_a_cases() {
            assert_eq!(projective_order_of(&c.spec().eigs), c.r, "{}", c.name);
        }
    }

    #[test]
    fn family_spectrum_and_order() {
        let rep = noncongruence_family(3, Sign::Plus).unwrap();
        assert_eq!(rep.spec.eigs, vec![rf(1, 9), rf(11, 18), rf(7, 9)]);
        assert_eq!(projective_order_of(&rep.spec.eigs), 6);
        let rep5 = noncongruence_family(5, Sign::Minus).unwrap();
        assert_eq!(rep5.a.order(1000), Some(30));
        assert!(noncongruence_family(1, Sign::Plus).is_err());
        assert!(noncongruence_family(4, Sign::Plus).is_err());
    }

    #[test]
    fn printed_matrices() {
        for ell in [3, 5, 7] {
            let plus = printed_crosscheck(ell, Sign::Plus).unwrap();
            assert!(plus.x_matches && plus.y_matches && plus.printed_braid_relation);
            let minus = printed_crosscheck(ell, Sign::Minus).unwrap();
            assert!(minus.y_matches);
            assert!(!minus.x_matches);
            assert!(!minus.printed_braid_relation);
        }
    }

    #[test]
    fn rho_g_data() {
        let g = rho_g().unwrap();
        assert!(g.satisfies_braid_relation().unwrap());
        assert_eq!(central_scalar(&g).unwrap(), CycNum::root_of_unity(1, 3));
        let scaled = g.scale(rf(-1, 18));
        let mut eigs = scaled.spec.eigs.clone();
        eigs.sort();
        assert_eq!(eigs, vec![rf(1, 9), rf(5, 18), rf(11, 18)]);
    }

    #[test]
    fn mtc_projective_orders() {
        for ex in mtc_examples().unwrap() {
            let rep = ex.rep().unwrap();
            assert_eq!(
                projective_order_of(&rep.spec.eigs),
                ex.expected_po,
                "{}",
                ex.name
            );
        }
    }

    #[test]
    fn listing() {
        let l = catalog_listing(&[3]).unwrap();
        assert_eq!(l.len(), 102 + 2 + 4);
        assert_eq!(l[102].name, "B:ell3+");
        assert_eq!(l.last().unwrap().name, "MTC:G");
    }
}
