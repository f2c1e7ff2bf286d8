use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CycNum;
use crate::error::{Error, Result};

/// `e^{2 pi i k/n}` stored as a reduced fraction `k/n` with `0 <= k < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootFraction {
    k: u64,
    n: u64,
}

impl RootFraction {
    pub const ONE: RootFraction = RootFraction { k: 0, n: 1 };

    pub fn new(k: i64, n: u64) -> Result<RootFraction> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "root denominator must be positive".into(),
            ));
        }
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        Ok(RootFraction { k: k / g, n: n / g })
    }

    pub fn numer(&self) -> u64 {
        self.k
    }

    pub fn denom(&self) -> u64 {
        self.n
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Product of the two roots (sum of exponents).
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: RootFraction) -> RootFraction {
        let n = self.n.lcm(&other.n);
        let k = self.k * (n / self.n) + other.k * (n / other.n);
        RootFraction::new((k % n) as i64, n).expect("n > 0")
    }

    pub fn inv(self) -> RootFraction {
        RootFraction::new(-(self.k as i64), self.n).expect("n > 0")
    }

    pub fn pow(self, e: i64) -> RootFraction {
        let k = (self.k as i128 * e as i128).rem_euclid(self.n as i128);
        RootFraction::new(k as i64, self.n).expect("n > 0")
    }

    /// `-1` times this root.
    pub fn negate(self) -> RootFraction {
        self.mul(RootFraction { k: 1, n: 2 })
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::root_of_unity(self.k as i64, self.n)
    }

    /// `k/n` as a float in `[0, 1)`, for display ordering only.
    pub fn turns(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

impl fmt::Display for RootFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.n)
    }
}

impl FromStr for RootFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg} in root fraction {s:?} (expected k/n)"),
        };
        let (k, n) = s.trim().split_once('/').ok_or_else(|| bad("missing '/'"))?;
        let k: i64 = k.trim().parse().map_err(|_| bad("bad numerator"))?;
        let n: u64 = n.trim().parse().map_err(|_| bad("bad denominator"))?;
        if n == 0 {
            return Err(bad("zero denominator"));
        }
        RootFraction::new(k, n)
    }
}

impl Serialize for RootFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
