//! Small dense matrices over cyclotomic fields.

use std::fmt;

use num_bigint::BigInt;

use crate::cyclotomic::{poly::lcm_u64, CycNum};
use crate::error::{Error, Result};

/// Default cap for [`CycMatrix::order`].
pub const DEFAULT_ORDER_CAP: u64 = 1000;

const MAX_DIM: usize = 5;

/// A `dim x dim` matrix whose entries all live in one `Q(zeta_n)`.
/// Equality compares values, so the same matrix at two conductors is equal.
#[derive(Clone)]
pub struct CycMatrix {
    dim: usize,
    conductor: u64,
    entries: Vec<CycNum>,
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &CycMatrix) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for CycMatrix {}

/// Exact structural key: equal keys iff equal matrices at the same conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixKey {
    conductor: u64,
    parts: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycVector {
    entries: Vec<CycNum>,
}

impl CycVector {
    pub fn new(entries: Vec<CycNum>) -> CycVector {
        CycVector { entries }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> CycVector {
        CycVector::new(
            (0..dim)
                .map(|j| {
                    if j == i {
                        CycNum::one()
                    } else {
                        CycNum::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn scale(&self, c: &CycNum) -> CycVector {
        CycVector::new(self.entries.iter().map(|e| e * c).collect())
    }
}

impl fmt::Display for CycVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl CycMatrix {
    /// Row-major construction; entries are promoted to a common conductor.
    pub fn new(dim: usize, entries: Vec<CycNum>) -> Result<CycMatrix> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        let conductor = entries.iter().fold(1, |acc, e| lcm_u64(acc, e.conductor()));
        let entries = entries
            .into_iter()
            .map(|e| e.promote(conductor))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            dim,
            conductor,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<CycMatrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("matrix rows must be square".into()));
        }
        CycMatrix::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn identity(dim: usize) -> CycMatrix {
        CycMatrix::scalar(dim, &CycNum::one())
    }

    pub fn scalar(dim: usize, c: &CycNum) -> CycMatrix {
        let entries = (0..dim * dim)
            .map(|i| {
                if i % (dim + 1) == 0 {
                    c.clone()
                } else {
                    CycNum::zero()
                }
            })
            .collect();
        CycMatrix::new(dim, entries).expect("valid dimension")
    }

    pub fn diagonal(diag: &[CycNum]) -> Result<CycMatrix> {
        let dim = diag.len();
        let mut entries = vec![CycNum::zero(); dim * dim];
        for (i, d) in diag.iter().enumerate() {
            entries[i * dim + i] = d.clone();
        }
        CycMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn promote(&self, m: u64) -> Result<CycMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.promote(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix {
            dim: self.dim,
            conductor: m,
            entries,
        })
    }

    pub fn key(&self) -> MatrixKey {
        let mut parts = Vec::with_capacity(self.entries.len() * 4);
        for e in &self.entries {
            let (num, den) = e.raw_parts();
            parts.extend(num.iter().cloned());
            parts.push(den.clone());
        }
        MatrixKey {
            conductor: self.conductor,
            parts,
        }
    }

    fn check_dim(&self, other: &CycMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_dim(other)?;
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc: Option<CycNum> = None;
                for k in 0..d {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                entries.push(acc.unwrap_or_else(CycNum::zero));
            }
        }
        CycMatrix::new(d, entries)
    }

    pub fn apply(&self, v: &CycVector) -> Result<CycVector> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let out = (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(CycNum::zero(), |acc, k| {
                    &acc + &(self.get(i, k) * &v.entries[k])
                })
            })
            .collect();
        Ok(CycVector::new(out))
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        let entries = self.entries.iter().map(|e| e * c).collect();
        CycMatrix::new(self.dim, entries).expect("same shape")
    }

    fn minor(&self, row: usize, col: usize) -> CycMatrix {
        let d = self.dim;
        let entries = (0..d)
            .filter(|&i| i != row)
            .flat_map(|i| (0..d).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        CycMatrix::new(d - 1, entries).expect("minor of a matrix with dim >= 2")
    }

    pub fn det(&self) -> CycNum {
        match self.dim {
            1 => self.entries[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            d => (0..d).fold(CycNum::zero(), |acc, j| {
                let a = self.get(0, j);
                if a.is_zero() {
                    return acc;
                }
                let term = a * &self.minor(0, j).det();
                if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            }),
        }
    }

    /// Exact inverse via the adjugate.
    pub fn inverse(&self) -> Result<CycMatrix> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv_det = det.inv()?;
        let d = self.dim;
        if d == 1 {
            return CycMatrix::new(1, vec![inv_det]);
        }
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                // adj(A)_{ij} = (-1)^{i+j} det(minor(j, i))
                let c = &self.minor(j, i).det() * &inv_det;
                entries.push(if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        CycMatrix::new(d, entries)
    }

    /// `A^k`; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<CycMatrix> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_unsigned(k.unsigned_abs()))
    }

    fn pow_unsigned(&self, mut e: u64) -> CycMatrix {
        let mut acc: Option<CycMatrix> = None;
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul(&b).expect("same dimension"),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).expect("same dimension");
            }
        }
        acc.unwrap_or_else(|| CycMatrix::identity(self.dim))
    }

    /// `[A, B] = A B A^{-1} B^{-1}`.
    pub fn commutator(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_dim(other)?;
        self.mul(other)?
            .mul(&self.inverse()?)?
            .mul(&other.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix equals `c I`.
    pub fn is_scalar(&self) -> Option<CycNum> {
        let d = self.dim;
        let c = self.get(0, 0);
        for i in 0..d {
            for j in 0..d {
                let e = self.get(i, j);
                if i == j {
                    if e != c {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(c.clone())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j).is_zero()))
    }

    /// Diagonal entries of a triangular matrix, i.e. its spectrum.
    pub fn diag_spectrum(&self) -> Result<Vec<CycNum>> {
        if !self.is_upper_triangular() && !self.is_lower_triangular() {
            return Err(Error::NotTriangular);
        }
        Ok((0..self.dim).map(|i| self.get(i, i).clone()).collect())
    }

    /// Least `k >= 1` with `A^k = I` if it is at most `cap`.
    ///
    /// Triangular matrices whose diagonal consists of distinct roots of
    /// unity are diagonalizable, so the order is the lcm of the eigenvalue
    /// orders; that candidate is still confirmed by one exact power.
    pub fn order(&self, cap: u64) -> Option<u64> {
        if let Some(candidate) = self.diagonalizable_order_candidate() {
            if candidate <= cap && self.pow_unsigned(candidate).is_identity() {
                return Some(candidate);
            }
            if candidate > cap {
                return None;
            }
        }
        self.order_by_iteration(cap)
    }

    /// Order by repeated multiplication only (no eigenvalue shortcut).
    pub fn order_by_iteration(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            if k < cap {
                acc = acc.mul(self).expect("same dimension");
            }
        }
        None
    }

    fn diagonalizable_order_candidate(&self) -> Option<u64> {
        let spec = self.diag_spectrum().ok()?;
        for (i, a) in spec.iter().enumerate() {
            if spec[..i].iter().any(|b| b == a) {
                return None;
            }
        }
        spec.iter()
            .map(|e| e.as_root_of_unity().map(|r| r.order()))
            .try_fold(1, |acc, o| o.map(|o| lcm_u64(acc, o)))
    }

    pub fn transpose(&self) -> CycMatrix {
        let n = self.dim;
        CycMatrix {
            dim: n,
            conductor: self.conductor,
            entries: (0..n * n)
                .map(|idx| self.entries[(idx % n) * n + idx / n].clone())
                .collect(),
        }
    }

    /// Entries rendered row by row in `CycNum` text form.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycMatrix[n={}]{}", self.conductor, self)
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_string_rows()
            .into_iter()
            .map(|r| r.join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
