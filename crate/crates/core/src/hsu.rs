//! Hsu's finite generating sets for the normal closure of `T^N` in the
//! modular group. The kernel of a representation with `rho(T)` of order `N`
//! is a congruence subgroup exactly when every word here maps to the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{GroupWord, WordExpr};

/// Inverse of `a` modulo `m`, as a residue in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidParameter(format!(
            "modulus {m} must be positive"
        )));
    }
    if m == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m) as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible(a, m));
    }
    Ok(s0.rem_euclid(m as i128) as i64)
}

/// The unique `x` in `[0, m1*m2)` with `x = r1 mod m1` and `x = r2 mod m2`.
pub fn crt_pair(r1: i64, m1: i64, r2: i64, m2: i64) -> Result<i64> {
    if m1 < 1 || m2 < 1 {
        return Err(Error::InvalidParameter("moduli must be positive".into()));
    }
    if num_integer::gcd(m1, m2) != 1 {
        return Err(Error::NotCoprime(m1, m2));
    }
    let m = m1 as i128 * m2 as i128;
    let inv = mod_inverse(m1, m2)? as i128;
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let t = ((r2 as i128 - r1 as i128) * inv).rem_euclid(m2 as i128);
    Ok((r1 as i128 + m1 as i128 * t).rem_euclid(m) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HsuBranch {
    /// `N = 1`: the kernel is the whole group; nothing to check.
    Trivial,
    Odd,
    PowerOfTwo,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsuWord {
    /// Name in the abbreviated notation (`x = T^c`, `w = U^d`, `P_N`, ...).
    pub label: String,
    pub expr: WordExpr,
    pub word: GroupWord,
}

impl HsuWord {
    fn new(label: &str, expr: WordExpr) -> HsuWord {
        let word = expr.to_word();
        HsuWord {
            label: label.to_string(),
            expr,
            word,
        }
    }
}

/// Generating set and the auxiliary constants used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsuData {
    pub n: u64,
    pub branch: HsuBranch,
    /// 2-part of `N`.
    pub e: u64,
    /// Odd part of `N`.
    pub k: u64,
    pub c: Option<i64>,
    pub d: Option<i64>,
    /// Inverse of 2 modulo the odd part.
    pub t: Option<i64>,
    /// Inverse of 5 modulo the 2-part.
    pub f: Option<i64>,
    pub words: Vec<HsuWord>,
}

fn t(e: i64) -> WordExpr {
    WordExpr::t(e)
}

fn u(e: i64) -> WordExpr {
    WordExpr::u(e)
}

fn prod(items: Vec<WordExpr>) -> WordExpr {
    WordExpr::product(items)
}

/// `p = a^20 b^f a^-4 b^-1` with `(a, b) = (T, U)` or their powers.
fn p_word(a: i64, b: i64, f: i64) -> WordExpr {
    prod(vec![t(20 * a), u(f * b), t(-4 * a), u(-b)])
}

pub fn hsu_generators(n: u64) -> Result<HsuData> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be positive".into()));
    }
    if n > i64::MAX as u64 / 64 {
        return Err(Error::InvalidParameter(format!("level {n} is too large")));
    }
    let e = 1u64 << n.trailing_zeros();
    let k = n / e;
    let ni = n as i64;
    let mut data = HsuData {
        n,
        branch: HsuBranch::Trivial,
        e,
        k,
        c: None,
        d: None,
        t: None,
        f: None,
        words: Vec::new(),
    };
    if n == 1 {
        return Ok(data);
    }
    if e == 1 {
        let tn = mod_inverse(2, ni)?;
        data.branch = HsuBranch::Odd;
        data.t = Some(tn);
        data.words = vec![
            HsuWord::new("T^N", t(ni)),
            HsuWord::new("(U^2 T^-t)^3", prod(vec![u(2), t(-tn)]).pow(3)),
        ];
        return Ok(data);
    }
    if k == 1 {
        let f = mod_inverse(5, ni)?;
        data.branch = HsuBranch::PowerOfTwo;
        data.f = Some(f);
        let p = p_word(1, 1, f);
        let s = prod(vec![t(1), u(-1), t(1)]);
        data.words = vec![
            HsuWord::new("T^N", t(ni)),
            HsuWord::new(
                "(P U^5 T U^-1 T)^3",
                prod(vec![p.clone(), u(5), t(1), u(-1), t(1)]).pow(3),
            ),
            HsuWord::new(
                "(T U^-1 T)^-1 P (T U^-1 T) P",
                prod(vec![s.clone().inv(), p.clone(), s, p]),
            ),
        ];
        return Ok(data);
    }
    let (ei, ki) = (e as i64, k as i64);
    let c = crt_pair(0, ei, 1, ki)?;
    let d = crt_pair(0, ki, 1, ei)?;
    let tn = mod_inverse(2, ki)?;
    let f = mod_inverse(5, ei)?;
    data.branch = HsuBranch::Mixed;
    data.c = Some(c);
    data.d = Some(d);
    data.t = Some(tn);
    data.f = Some(f);

    let (x, y, z, w) = (t(c), u(c), t(d), u(d));
    let p = p_word(d, d, f);
    let xyx = prod(vec![x.clone(), y.clone().inv(), x.clone()]);
    let zwz = prod(vec![z.clone(), w.clone().inv(), z.clone()]);
    data.words = vec![
        HsuWord::new("T^N", t(ni)),
        HsuWord::new("[x, w]", WordExpr::commutator(x.clone(), w.clone())),
        HsuWord::new("(x y^-1 x)^4", xyx.clone().pow(4)),
        HsuWord::new(
            "(x y^-1 x)^2 (x^-1 y)^3",
            prod(vec![
                xyx.clone().pow(2),
                prod(vec![x.clone().inv(), y.clone()]).pow(3),
            ]),
        ),
        HsuWord::new(
            "(x y^-1 x)^2 (x^t y^-2)^3",
            prod(vec![xyx.pow(2), prod(vec![x.pow(tn), y.pow(-2)]).pow(3)]),
        ),
        HsuWord::new(
            "(z w^-1 z)^2 (p w^5 z w^-1 z)^-3",
            prod(vec![
                zwz.clone().pow(2),
                prod(vec![
                    p.clone(),
                    w.clone().pow(5),
                    z.clone(),
                    w.clone().inv(),
                    z,
                ])
                .pow(-3),
            ]),
        ),
        HsuWord::new(
            "(z w^-1 z)^-1 p (z w^-1 z) p",
            prod(vec![zwz.clone().inv(), p.clone(), zwz, p.clone()]),
        ),
        HsuWord::new(
            "w^25 p w^-1 p^-1",
            prod(vec![w.clone().pow(25), p.clone(), w.inv(), p.inv()]),
        ),
    ];
    Ok(data)
}
