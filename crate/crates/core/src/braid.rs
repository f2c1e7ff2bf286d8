//! Irreducible representations of the three-strand braid group in
//! Tuba–Wenzl normal form, their central character, rescaling to the
//! modular group, and the Rowell–Tuba finiteness criteria.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{check_conductor, poly::lcm_u64, CycNum, RootFraction};
use crate::error::{Error, Result};
use crate::linear::CycMatrix;

/// Conjugacy-class data for an irreducible `B_3` representation: the
/// ordered eigenvalues of the image of `sigma_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepSpec {
    pub dim: usize,
    pub eigs: Vec<RootFraction>,
}

impl RepSpec {
    pub fn new(eigs: Vec<RootFraction>) -> Result<RepSpec> {
        let spec = RepSpec {
            dim: eigs.len(),
            eigs,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.dim) {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        if self.eigs.len() != self.dim {
            return Err(Error::InvalidParameter(format!(
                "dimension {} needs {} eigenvalues, got {}",
                self.dim,
                self.dim,
                self.eigs.len()
            )));
        }
        Ok(())
    }

    /// Least common multiple of the eigenvalue orders (the conductor of the
    /// Tuba–Wenzl matrices, and the order of `sigma_1` when eigenvalues are distinct).
    pub fn conductor(&self) -> u64 {
        self.eigs.iter().fold(1, |acc, e| lcm_u64(acc, e.order()))
    }

    pub fn has_distinct_eigenvalues(&self) -> bool {
        self.eigs
            .iter()
            .enumerate()
            .all(|(i, e)| !self.eigs[..i].contains(e))
    }

    pub fn scaled(&self, theta: RootFraction) -> RepSpec {
        RepSpec {
            dim: self.dim,
            eigs: self.eigs.iter().map(|e| e.mul(theta)).collect(),
        }
    }

    fn cyc_eigs(&self) -> Vec<CycNum> {
        self.eigs.iter().map(RootFraction::to_cyc).collect()
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.eigs.iter().map(|e| e.to_string()).collect();
        write!(f, "d={} [{}]", self.dim, e.join(", "))
    }
}

/// A representation given by the images of `sigma_1` and `sigma_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidRep {
    pub spec: RepSpec,
    pub a: CycMatrix,
    pub b: CycMatrix,
}

impl BraidRep {
    /// Wrap explicit generator images. The image of `sigma_1` must be
    /// triangular with root-of-unity diagonal; the braid relation is checked.
    pub fn from_matrices(a: CycMatrix, b: CycMatrix) -> Result<BraidRep> {
        let eigs = a
            .diag_spectrum()?
            .iter()
            .map(|e| {
                e.as_root_of_unity().ok_or_else(|| {
                    Error::InvalidParameter(format!("eigenvalue {e} is not a root of unity"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = RepSpec::new(eigs)?;
        let rep = BraidRep { spec, a, b };
        if !rep.satisfies_braid_relation()? {
            return Err(Error::RelationViolated("A B A != B A B".into()));
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn satisfies_braid_relation(&self) -> Result<bool> {
        let aba = self.a.mul(&self.b)?.mul(&self.a)?;
        let bab = self.b.mul(&self.a)?.mul(&self.b)?;
        Ok(aba == bab)
    }

    /// Multiply both generator images by the root of unity `theta`.
    pub fn scale(&self, theta: RootFraction) -> BraidRep {
        let t = theta.to_cyc();
        BraidRep {
            spec: self.spec.scaled(theta),
            a: self.a.scale(&t),
            b: self.b.scale(&t),
        }
    }
}

/// `N_2` / `N_3` membership test: irreducible iff no defining expression vanishes.
pub fn is_irreducible(spec: &RepSpec) -> bool {
    irreducibility_obstruction(spec).is_none()
}

fn irreducibility_obstruction(spec: &RepSpec) -> Option<String> {
    let l = spec.cyc_eigs();
    match spec.dim {
        2 => {
            // The 2x2 form has a common eigenvector exactly when l2/l1 is a
            // primitive sixth root of unity.
            let v = &(&(&l[0] * &l[0]) - &(&l[0] * &l[1])) + &(&l[1] * &l[1]);
            v.is_zero().then(|| "l1^2 - l1 l2 + l2^2 = 0".to_string())
        }
        3 => {
            for (j, k, m) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
                let v = &(&l[j] * &l[j]) + &(&l[k] * &l[m]);
                if v.is_zero() {
                    return Some(format!("l{}^2 + l{} l{} = 0", j + 1, k + 1, m + 1));
                }
            }
            None
        }
        _ => Some(format!("unsupported dimension {}", spec.dim)),
    }
}

/// Tuba–Wenzl normal form for `d = 2, 3`.
pub fn tw_construct(spec: &RepSpec) -> Result<BraidRep> {
    tw_construct_capped(spec, crate::cyclotomic::DEFAULT_MAX_CONDUCTOR)
}

pub fn tw_construct_capped(spec: &RepSpec, max_conductor: u64) -> Result<BraidRep> {
    spec.validate()?;
    check_conductor(spec.conductor(), max_conductor)?;
    if let Some(why) = irreducibility_obstruction(spec) {
        return Err(Error::Reducible(why));
    }
    let l = spec.cyc_eigs();
    let zero = CycNum::zero;
    let (a, b) = match spec.dim {
        2 => {
            let a = CycMatrix::from_rows(vec![
                vec![l[0].clone(), l[0].clone()],
                vec![zero(), l[1].clone()],
            ])?;
            let b =
                CycMatrix::from_rows(vec![vec![l[1].clone(), zero()], vec![-&l[1], l[0].clone()]])?;
            (a, b)
        }
        3 => {
            // l1 l3 / l2 + l2
            let corner = &(&(&l[0] * &l[2]) * &l[1].inv()?) + &l[1];
            let a = CycMatrix::from_rows(vec![
                vec![l[0].clone(), corner.clone(), l[1].clone()],
                vec![zero(), l[1].clone(), l[1].clone()],
                vec![zero(), zero(), l[2].clone()],
            ])?;
            let b = CycMatrix::from_rows(vec![
                vec![l[2].clone(), zero(), zero()],
                vec![-&l[1], l[1].clone(), zero()],
                vec![l[1].clone(), -corner, l[0].clone()],
            ])?;
            (a, b)
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    let rep = BraidRep {
        spec: spec.clone(),
        a,
        b,
    };
    if !rep.satisfies_braid_relation()? {
        return Err(Error::Inconsistent(format!(
            "braid relation fails for Tuba-Wenzl form of {spec}"
        )));
    }
    Ok(rep)
}

/// The scalar by which `(sigma_1 sigma_2)^3` acts.
///
/// Computed as `(A B)^3` and cross-checked against `-(l1 l2)^3` (d = 2) or
/// `(l1 l2 l3)^2` (d = 3).
pub fn central_scalar(rep: &BraidRep) -> Result<CycNum> {
    let c = rep
        .a
        .mul(&rep.b)?
        .pow(3)?
        .is_scalar()
        .ok_or(Error::NonScalarCenter)?;
    let expected = predicted_central_scalar(&rep.spec)?;
    if c != expected {
        return Err(Error::Inconsistent(format!(
            "central scalar {c} differs from eigenvalue formula {expected}"
        )));
    }
    Ok(c)
}

fn predicted_central_scalar(spec: &RepSpec) -> Result<CycNum> {
    let prod = spec
        .eigs
        .iter()
        .fold(RootFraction::ONE, |acc, e| acc.mul(*e));
    match spec.dim {
        2 => Ok(prod.pow(3).negate().to_cyc()),
        3 => Ok(prod.pow(2).to_cyc()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Whether `(sigma_1 sigma_2)^3` lies in the kernel.
pub fn factors_through_modular(rep: &BraidRep) -> Result<bool> {
    let by_matrix = central_scalar(rep)?.is_one();
    let by_formula = predicted_central_scalar(&rep.spec)?.is_one();
    if by_matrix != by_formula {
        return Err(Error::Inconsistent(
            "factoring condition disagrees with eigenvalue criterion".into(),
        ));
    }
    Ok(by_matrix)
}

/// All six `theta` with `theta^6 = conj(c)`, sorted by `k/n` ascending.
pub fn modular_scalings(rep: &BraidRep) -> Result<Vec<RootFraction>> {
    let c = central_scalar(rep)?;
    let c = c.as_root_of_unity().ok_or_else(|| {
        Error::InvalidParameter(format!("central scalar {c} is not a root of unity"))
    })?;
    // theta = e((j n - k) / (6 n)), j = 0..5
    let (k, n) = (c.numer() as i64, c.denom());
    let mut roots: Vec<RootFraction> = (0..6)
        .map(|j| RootFraction::new(j * n as i64 - k, 6 * n))
        .collect::<Result<_>>()?;
    roots.sort_by(|x, y| {
        (x.numer() as u128 * y.denom() as u128).cmp(&(y.numer() as u128 * x.denom() as u128))
    });
    Ok(roots)
}

/// Rescale so that the centre acts trivially, choosing the root of
/// `x^6 - conj(c)` with the smallest nonnegative `k/n`.
pub fn scale_to_modular(rep: &BraidRep) -> Result<(BraidRep, RootFraction)> {
    let theta = modular_scalings(rep)?[0];
    Ok((scale_to_modular_with(rep, theta)?, theta))
}

/// Rescale by an explicit `theta`, which must satisfy `theta^6 c = 1`.
pub fn scale_to_modular_with(rep: &BraidRep, theta: RootFraction) -> Result<BraidRep> {
    let scaled = rep.scale(theta);
    let c = central_scalar(&scaled)?;
    if !c.is_one() {
        return Err(Error::DoesNotFactor(format!(
            "{c} after scaling by e({theta})"
        )));
    }
    Ok(scaled)
}

/// Least `t >= 1` with all `l_i^t` equal; `None` if some ratio is not a root of unity.
pub fn projective_order(eigs: &[CycNum]) -> Option<u64> {
    let first = eigs.first()?;
    let inv = first.inv().ok()?;
    eigs.iter().try_fold(1, |acc, e| {
        let r = (e * &inv).as_root_of_unity()?;
        Some(lcm_u64(acc, r.order()))
    })
}

/// [`projective_order`] for eigenvalues already known to be roots of unity.
pub fn projective_order_of(eigs: &[RootFraction]) -> u64 {
    let Some(first) = eigs.first() else { return 1 };
    let inv = first.inv();
    eigs.iter()
        .fold(1, |acc, e| lcm_u64(acc, e.mul(inv).order()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finiteness {
    Finite,
    Infinite,
    Indeterminate,
}

/// Which finiteness criterion decided the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RtClause {
    /// (b) a repeated eigenvalue
    RepeatedEigenvalue,
    /// (c) distinct roots of unity with `2 <= po <= 5`
    SmallProjectiveOrder,
    /// (d) `d = 2` and `po` outside `[2, 5]`
    DimTwoProjectiveOrder,
    /// (e) `d = 3` with spectrum `{l, -l, m}`
    PlusMinusPair,
    /// none of the criteria apply
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtClassification {
    pub finiteness: Finiteness,
    pub clause: RtClause,
    pub projective_order: u64,
}

/// Rowell–Tuba finiteness criteria. Criterion (a), a non-root-of-unity
/// eigenvalue, cannot fire because eigenvalues are always given as roots
/// of unity.
pub fn rowell_tuba_classify(spec: &RepSpec) -> RtClassification {
    let po = projective_order_of(&spec.eigs);
    let class = |finiteness, clause| RtClassification {
        finiteness,
        clause,
        projective_order: po,
    };
    if !spec.has_distinct_eigenvalues() {
        return class(Finiteness::Infinite, RtClause::RepeatedEigenvalue);
    }
    if (2..=5).contains(&po) {
        return class(Finiteness::Finite, RtClause::SmallProjectiveOrder);
    }
    if spec.dim == 2 {
        return class(Finiteness::Infinite, RtClause::DimTwoProjectiveOrder);
    }
    if spec.dim == 3 {
        let e = &spec.eigs;
        let pair = (0..3).any(|i| (0..3).any(|j| i != j && e[i].negate() == e[j]));
        if pair {
            return class(Finiteness::Finite, RtClause::PlusMinusPair);
        }
    }
    class(Finiteness::Indeterminate, RtClause::Undecided)
}
