//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(n)-1)` of
//! `Q[x]/Phi_n(x)` as integer numerators over one common positive
//! denominator. The representation is canonical for a fixed conductor, so
//! equality at equal conductors is structural. Mixed-conductor operations
//! promote both operands to the least common multiple of the conductors;
//! nothing is ever reduced back to a smaller conductor.

pub mod poly;
mod root;

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use poly::{cyclotomic_polynomial, euler_phi, IntPolynomial};
pub use root::RootFraction;

pub type Rational = BigRational;

/// Largest conductor accepted by the checked entry points unless overridden.
pub const DEFAULT_MAX_CONDUCTOR: u64 = 360;

pub fn check_conductor(n: u64, max: u64) -> Result<()> {
    if n > max {
        Err(Error::ConductorTooLarge { conductor: n, max })
    } else {
        Ok(())
    }
}

#[derive(Debug)]
struct Field {
    n: u64,
    phi: usize,
    // Phi_n, lowest degree first, monic, length phi + 1.
    modulus: Vec<i64>,
}

fn field(n: u64) -> Arc<Field> {
    static FIELDS: OnceLock<RwLock<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let p = cyclotomic_polynomial(n);
    let modulus: Vec<i64> = p
        .coeffs()
        .iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits in i64"))
        .collect();
    let f = Arc::new(Field {
        n,
        phi: modulus.len() - 1,
        modulus,
    });
    cache
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(f)
        .clone()
}

impl Field {
    // Reduce an integer coefficient vector of any length modulo Phi_n.
    fn reduce(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if c.len() > phi {
            for top in (phi..c.len()).rev() {
                if c[top].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut c[top]);
                for i in 0..phi {
                    let m = self.modulus[i];
                    if m != 0 {
                        c[top - phi + i] -= &lead * m;
                    }
                }
            }
            c.truncate(phi);
        }
        c.resize(phi, BigInt::zero());
        c
    }
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(field: Arc<Field>, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), field.phi);
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return CycNum {
                field,
                num,
                den: BigInt::one(),
            };
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        CycNum { field, num, den }
    }

    /// Build from power-basis coordinates; `coeffs.len()` must equal `phi(n)`.
    pub fn from_coeffs(conductor: u64, coeffs: &[Rational]) -> Result<CycNum> {
        if conductor == 0 {
            return Err(Error::InvalidParameter("conductor must be positive".into()));
        }
        let f = field(conductor);
        if coeffs.len() != f.phi {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients for conductor {conductor}, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(CycNum::from_parts(f, num, den))
    }

    pub fn rational(q: Rational) -> CycNum {
        CycNum::from_parts(field(1), vec![q.numer().clone()], q.denom().clone())
    }

    pub fn integer(i: i64) -> CycNum {
        CycNum::from_parts(field(1), vec![BigInt::from(i)], BigInt::one())
    }

    pub fn zero() -> CycNum {
        CycNum::integer(0)
    }

    pub fn one() -> CycNum {
        CycNum::integer(1)
    }

    /// `zeta_n^k = e^{2 pi i k / n}`, with `k` taken modulo `n`.
    pub fn root_of_unity(k: i64, n: u64) -> CycNum {
        assert!(n >= 1, "root_of_unity requires n >= 1");
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        let mut c = vec![BigInt::zero(); (k + 1).max(f.phi)];
        c[k] = BigInt::one();
        let num = f.reduce(c);
        CycNum::from_parts(f, num, BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    /// Power-basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Common-denominator form: `(numerators, denominator)`.
    pub fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The same element expressed in `Q(zeta_m)`; requires `conductor | m`.
    pub fn promote(&self, m: u64) -> Result<CycNum> {
        let n = self.field.n;
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::ConductorMismatch { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as usize;
        let f = field(m);
        let len = (step * (self.num.len() - 1) + 1).max(f.phi);
        let mut c = vec![BigInt::zero(); len];
        for (k, v) in self.num.iter().enumerate() {
            c[k * step] = v.clone();
        }
        let num = f.reduce(c);
        Ok(CycNum::from_parts(f, num, self.den.clone()))
    }

    fn unify<'a>(a: &'a CycNum, b: &'a CycNum) -> (Cow<'a, CycNum>, Cow<'a, CycNum>) {
        if a.field.n == b.field.n {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let m = poly::lcm_u64(a.field.n, b.field.n);
        let pa = if a.field.n == m {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.promote(m).expect("lcm is a multiple"))
        };
        let pb = if b.field.n == m {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.promote(m).expect("lcm is a multiple"))
        };
        (pa, pb)
    }

    fn add_ref(&self, other: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, other);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        CycNum::from_parts(a.field.clone(), num, den)
    }

    fn mul_ref(&self, other: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, other);
        let phi = a.field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = a.field.reduce(prod);
        CycNum::from_parts(a.field.clone(), num, &a.den * &b.den)
    }

    /// Multiplicative inverse via extended Euclid against `Phi_n`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let a: Vec<Rational> = self.coeffs();
        let m: Vec<Rational> = f
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let s = qpoly::inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        let mut coeffs = s;
        coeffs.resize(f.phi, Rational::zero());
        CycNum::from_coeffs(f.n, &coeffs)
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one().promote(self.conductor())?;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Applies the automorphism `zeta_n -> zeta_n^a`; requires `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Result<CycNum> {
        let n = self.field.n;
        if (a.rem_euclid(n as i64) as u64).gcd(&n) != 1 {
            return Err(Error::InvalidParameter(format!(
                "{a} is not a unit modulo {n}"
            )));
        }
        let mut c = vec![BigInt::zero(); (n as usize).max(self.field.phi)];
        for (k, v) in self.num.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = (a * k as i64).rem_euclid(n as i64) as usize;
            c[idx] += v;
        }
        let num = self.field.reduce(c);
        Ok(CycNum::from_parts(
            self.field.clone(),
            num,
            self.den.clone(),
        ))
    }

    /// Complex conjugation, `zeta_n -> zeta_n^{-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1).expect("-1 is always a unit")
    }

    // Multiply by zeta_n (a shift followed by one reduction step).
    fn mul_by_zeta(&self) -> CycNum {
        let mut c = Vec::with_capacity(self.num.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.num.iter().cloned());
        let num = self.field.reduce(c);
        CycNum::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// `Some(k/n)` with `self = e^{2 pi i k/n}` when `self` is a root of unity.
    ///
    /// Roots of unity in `Q(zeta_n)` are exactly `+-zeta_n^j`, so the search
    /// covers orders dividing `lcm(2, n)`.
    pub fn as_root_of_unity(&self) -> Option<RootFraction> {
        if self.is_zero() || !self.den.is_one() {
            return None;
        }
        let n = self.field.n;
        let neg = -self;
        let mut z = CycNum::root_of_unity(0, n);
        for j in 0..n {
            if z.num == self.num {
                return Some(RootFraction::new(j as i64, n).expect("n > 0"));
            }
            if z.num == neg.num {
                return Some(RootFraction::new(2 * j as i64 + n as i64, 2 * n).expect("n > 0"));
            }
            z = z.mul_by_zeta();
        }
        None
    }

    /// Power-basis rendering, e.g. `1/2*zeta(8)^1 + 1/2*zeta(8)^3`.
    pub fn to_sum_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let n = self.field.n;
        let mut out = String::new();
        for (k, q) in self.coeffs().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&format!("zeta({n})^{k}"));
            } else {
                out.push_str(&format!("{mag}*zeta({n})^{k}"));
            }
        }
        out
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = CycNum::unify(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[n={}]({})", self.field.n, self.to_sum_string())
    }
}

/// Roots of unity render as `e(k/n)` (meaning `e^{2 pi i k/n}`), `1` as `1`,
/// everything else in power-basis form.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        match self.as_root_of_unity() {
            Some(r) => write!(f, "e({r})"),
            None => write!(f, "{}", self.to_sum_string()),
        }
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        self.add_ref(rhs)
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        self.add_ref(&rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.mul_ref(rhs)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        self.mul_ref(&rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self.add_ref(&-rhs)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

// Dense univariate polynomials over Q, used only for inversion.
mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead = &b[db];
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let c = &rem[top] / lead;
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                rem[top - db + i] -= t;
            }
            quot[top - db] = c;
        }
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// `s` with `s * a = 1 (mod m)`, or `None` if `gcd(a, m)` is not constant.
    pub(super) fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::from_integer(1.into())];
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let (_, mut s) = divmod(&s0.iter().map(|x| x / &c).collect::<Vec<_>>(), m);
        trim(&mut s);
        Some(s)
    }
}
