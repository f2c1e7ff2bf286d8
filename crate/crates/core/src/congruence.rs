//! Congruence test for kernels of modular-group representations.
//!
//! With `N` the order of `rho(T)`, the kernel contains the principal
//! congruence subgroup of level `N` iff it contains Hsu's generators of
//! that subgroup (the kernel is normal). By Wohlfahrt's theorem this is the
//! only level to check.

use rayon::prelude::*;

use crate::braid::{factors_through_modular, BraidRep};
use crate::error::{Error, Result};
use crate::hsu::{hsu_generators, HsuWord};
use crate::linear::{CycMatrix, DEFAULT_ORDER_CAP};
use crate::words::evaluate_word;

/// Images of `T` and `U` under a representation of the modular group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularRep {
    pub x: CycMatrix,
    pub y: CycMatrix,
}

impl ModularRep {
    /// Checks `(X Y^-1 X)^2 = I` and `(Y^-1 X)^3 = I`.
    pub fn new(x: CycMatrix, y: CycMatrix) -> Result<ModularRep> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: y.dim(),
            });
        }
        let yi = y.inverse()?;
        let s = x.mul(&yi)?.mul(&x)?;
        if !s.pow(2)?.is_identity() {
            return Err(Error::RelationViolated("(X Y^-1 X)^2 != I".into()));
        }
        if !yi.mul(&x)?.pow(3)?.is_identity() {
            return Err(Error::RelationViolated("(Y^-1 X)^3 != I".into()));
        }
        Ok(ModularRep { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.x.is_identity() && self.y.is_identity()
    }
}

/// `T -> A`, `U -> B^-1`.
pub fn to_modular_rep(rep: &BraidRep) -> Result<ModularRep> {
    if !factors_through_modular(rep)? {
        return Err(Error::DoesNotFactor(format!(
            "central element acts by {}",
            crate::braid::central_scalar(rep)?
        )));
    }
    ModularRep::new(rep.a.clone(), rep.b.inverse()?)
}

/// Order of `rho(T)`.
pub fn geometric_level(m: &ModularRep, cap: u64) -> Result<u64> {
    m.x.order(cap).ok_or(Error::OrderExceedsCap(cap))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Congruence {
        level: u64,
    },
    NonCongruence {
        witness: HsuWord,
        evaluated: CycMatrix,
    },
    NotApplicable {
        reason: String,
    },
}

impl Verdict {
    pub fn is_definitive(&self) -> bool {
        !matches!(self, Verdict::NotApplicable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub glevel: Option<u64>,
    pub verdict: Verdict,
    pub checked_words: usize,
    /// Every failing word with its image, when requested.
    pub failing_words: Option<Vec<(HsuWord, CycMatrix)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestOptions {
    pub order_cap: u64,
    pub all_failing: bool,
}

impl Default for TestOptions {
    fn default() -> Self {
        TestOptions {
            order_cap: DEFAULT_ORDER_CAP,
            all_failing: false,
        }
    }
}

pub fn congruence_test(m: &ModularRep) -> Result<CongruenceReport> {
    congruence_test_with(m, TestOptions::default())
}

pub fn congruence_test_with(m: &ModularRep, opts: TestOptions) -> Result<CongruenceReport> {
    let n = match geometric_level(m, opts.order_cap) {
        Ok(n) => n,
        Err(Error::OrderExceedsCap(cap)) => {
            return Ok(CongruenceReport {
                glevel: None,
                verdict: Verdict::NotApplicable {
                    reason: format!("order of rho(T) exceeds cap {cap}"),
                },
                checked_words: 0,
                failing_words: None,
            })
        }
        Err(e) => return Err(e),
    };
    let hsu = hsu_generators(n)?;
    if n == 1 {
        // Only the trivial representation has the full group as kernel.
        let verdict = if m.y.is_identity() {
            Verdict::Congruence { level: 1 }
        } else {
            Verdict::NotApplicable {
                reason: "rho(T) is trivial but rho(U) is not".into(),
            }
        };
        return Ok(CongruenceReport {
            glevel: Some(1),
            verdict,
            checked_words: 0,
            failing_words: None,
        });
    }

    let images: Vec<CycMatrix> = hsu
        .words
        .par_iter()
        .map(|w| evaluate_word(&w.word, &m.x, &m.y))
        .collect::<Result<_>>()?;
    if !images[0].is_identity() {
        return Err(Error::Inconsistent(format!(
            "T^{n} does not evaluate to the identity"
        )));
    }
    let failing: Vec<(HsuWord, CycMatrix)> = hsu
        .words
        .iter()
        .zip(images)
        .filter(|(_, img)| !img.is_identity())
        .map(|(w, img)| (w.clone(), img))
        .collect();
    let verdict = match failing.first() {
        None => Verdict::Congruence { level: n },
        Some((w, img)) => Verdict::NonCongruence {
            witness: w.clone(),
            evaluated: img.clone(),
        },
    };
    Ok(CongruenceReport {
        glevel: Some(n),
        verdict,
        checked_words: hsu.words.len(),
        failing_words: opts.all_failing.then_some(failing),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{scale_to_modular, tw_construct, RepSpec};
    use crate::cyclotomic::{CycNum, RootFraction};

    fn spec(e: &[(i64, u64)]) -> RepSpec {
        RepSpec::new(
            e.iter()
                .map(|&(k, n)| RootFraction::new(k, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn modular(e: &[(i64, u64)]) -> ModularRep {
        let rep = tw_construct(&spec(e)).unwrap();
        let (scaled, _) = scale_to_modular(&rep).unwrap();
        to_modular_rep(&scaled).unwrap()
    }

    #[test]
    fn sign_rep_x() {
        let m = to_modular_rep(&tw_construct(&spec(&[(0, 1), (1, 2)])).unwrap()).unwrap();
        let expected = CycMatrix::from_rows(vec![
            vec![CycNum::one(), CycNum::one()],
            vec![CycNum::zero(), CycNum::integer(-1)],
        ])
        .unwrap();
        assert_eq!(m.x, expected);
        assert_eq!(geometric_level(&m, 100).unwrap(), 2);
    }

    #[test]
    fn non_factoring_rejected() {
        let rep = tw_construct(&spec(&[(1, 4), (3, 4)])).unwrap();
        assert!(matches!(to_modular_rep(&rep), Err(Error::DoesNotFactor(_))));
    }

    #[test]
    fn level_twelve_congruence() {
        // r = 3, j = 1, lambda = e(1/12)
        let m = to_modular_rep(&tw_construct(&spec(&[(1, 12), (5, 12)])).unwrap()).unwrap();
        let r = congruence_test(&m).unwrap();
        assert_eq!(r.verdict, Verdict::Congruence { level: 12 });
        assert_eq!(r.glevel, Some(12));
        assert_eq!(r.checked_words, 8);
    }

    #[test]
    fn level_five_congruence() {
        let m = to_modular_rep(&tw_construct(&spec(&[(4, 5), (0, 1), (1, 5)])).unwrap()).unwrap();
        assert_eq!(
            congruence_test(&m).unwrap().verdict,
            Verdict::Congruence { level: 5 }
        );
    }

    #[test]
    fn non_congruence_witness() {
        let m = to_modular_rep(&tw_construct(&spec(&[(1, 9), (11, 18), (7, 9)])).unwrap()).unwrap();
        let r = congruence_test_with(
            &m,
            TestOptions {
                all_failing: true,
                ..TestOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.glevel, Some(18));
        match &r.verdict {
            Verdict::NonCongruence { witness, evaluated } => {
                assert_eq!(witness.expr.to_string(), "[T^10, U^9]");
                assert!(!evaluated.is_identity());
            }
            v => panic!("{v:?}"),
        }
        assert!(!r.failing_words.unwrap().is_empty());
    }

    #[test]
    fn order_cap_gives_not_applicable() {
        let m = modular(&[(1, 12), (5, 12)]);
        let r = congruence_test_with(
            &m,
            TestOptions {
                order_cap: 5,
                all_failing: false,
            },
        )
        .unwrap();
        assert!(matches!(r.verdict, Verdict::NotApplicable { .. }));
        assert_eq!(r.glevel, None);
    }

    #[test]
    fn trivial_rep_level_one() {
        let id = CycMatrix::identity(2);
        let m = ModularRep::new(id.clone(), id).unwrap();
        assert!(m.is_trivial());
        assert_eq!(
            congruence_test(&m).unwrap().verdict,
            Verdict::Congruence { level: 1 }
        );
    }

    #[test]
    fn relation_check() {
        let x = CycMatrix::diagonal(&[CycNum::root_of_unity(1, 5), CycNum::one()]).unwrap();
        assert!(matches!(
            ModularRep::new(x, CycMatrix::identity(2)),
            Err(Error::RelationViolated(_))
        ));
    }
}
