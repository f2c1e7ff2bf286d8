//! Words in the modular-group generators `T` and `U`.
//!
//! A [`GroupWord`] is a normalized flat sequence of generator powers. A
//! [`WordExpr`] keeps the structure a word was written with (powers,
//! commutators, the `S` abbreviation) so that reports can print words the
//! way they were built, e.g. `[T^10, U^9]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::CycMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    T,
    U,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T => write!(f, "T"),
            Gen::U => write!(f, "U"),
        }
    }
}

/// Free-group word over `{T, U}`; adjacent letters always have distinct
/// generators and nonzero exponents. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<(Gen, i64)>,
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord::default()
    }

    pub fn gen(g: Gen, e: i64) -> GroupWord {
        GroupWord::from_letters(vec![(g, e)])
    }

    pub fn from_letters(letters: Vec<(Gen, i64)>) -> GroupWord {
        let mut out: Vec<(Gen, i64)> = Vec::with_capacity(letters.len());
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut l = self.letters.clone();
        l.extend_from_slice(&other.letters);
        GroupWord::from_letters(l)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        GroupWord::from_letters(letters)
    }

    /// `[a, b] = a b a^{-1} b^{-1}`
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Structured word expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Identity,
    Gen(Gen, i64),
    /// `S = T U^{-1} T`
    S,
    Product(Vec<WordExpr>),
    Power(Box<WordExpr>, i64),
    Commutator(Box<WordExpr>, Box<WordExpr>),
}

impl WordExpr {
    pub fn t(e: i64) -> WordExpr {
        WordExpr::Gen(Gen::T, e)
    }

    pub fn u(e: i64) -> WordExpr {
        WordExpr::Gen(Gen::U, e)
    }

    /// Product that flattens nested products.
    pub fn product(items: Vec<WordExpr>) -> WordExpr {
        let mut flat = Vec::new();
        for it in items {
            match it {
                WordExpr::Product(inner) => flat.extend(inner),
                WordExpr::Identity => {}
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => WordExpr::Identity,
            1 => flat.pop().expect("one item"),
            _ => WordExpr::Product(flat),
        }
    }

    /// Power; powers of a single generator collapse to one letter.
    pub fn pow(self, k: i64) -> WordExpr {
        match self {
            _ if k == 1 => self,
            WordExpr::Gen(g, e) => WordExpr::Gen(g, e * k),
            WordExpr::Identity => WordExpr::Identity,
            other => WordExpr::Power(Box::new(other), k),
        }
    }

    pub fn inv(self) -> WordExpr {
        self.pow(-1)
    }

    pub fn commutator(a: WordExpr, b: WordExpr) -> WordExpr {
        WordExpr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn to_word(&self) -> GroupWord {
        match self {
            WordExpr::Identity => GroupWord::identity(),
            WordExpr::Gen(g, e) => GroupWord::gen(*g, *e),
            WordExpr::S => GroupWord::from_letters(vec![(Gen::T, 1), (Gen::U, -1), (Gen::T, 1)]),
            WordExpr::Product(items) => items
                .iter()
                .fold(GroupWord::identity(), |acc, w| acc.mul(&w.to_word())),
            WordExpr::Power(base, k) => base.to_word().pow(*k),
            WordExpr::Commutator(a, b) => GroupWord::commutator(&a.to_word(), &b.to_word()),
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self,
            WordExpr::Identity | WordExpr::S | WordExpr::Gen(_, 1) | WordExpr::Commutator(..)
        )
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Identity => write!(f, "1"),
            WordExpr::Gen(g, 1) => write!(f, "{g}"),
            WordExpr::Gen(g, e) => write!(f, "{g}^{e}"),
            WordExpr::S => write!(f, "S"),
            WordExpr::Product(items) => {
                let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
            WordExpr::Power(base, k) if base.is_atomic() => write!(f, "{base}^{k}"),
            WordExpr::Power(base, k) => write!(f, "({base})^{k}"),
            WordExpr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Parse word syntax such as `T^6`, `(U^2 T^-2)^3`, `[T^10, U^9]` or `S T`.
pub fn parse_word(input: &str) -> Result<WordExpr> {
    let mut p = Parser {
        chars: input.char_indices().collect(),
        pos: 0,
    };
    let expr = p.product(&[])?;
    p.skip_ws();
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(Error::Parse {
            pos: at,
            msg: format!("unexpected {c:?}"),
        });
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&(_, c)| c.is_whitespace() || c == '*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| {
                self.chars
                    .last()
                    .map(|&(i, c)| i + c.len_utf8())
                    .unwrap_or(0)
            })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn product(&mut self, stops: &[char]) -> Result<WordExpr> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if stops.contains(&c) => break,
                Some(')') | Some(']') | Some(',') => break,
                Some(_) => items.push(self.factor()?),
            }
        }
        if items.is_empty() {
            return self.err("expected a word");
        }
        Ok(WordExpr::product(items))
    }

    fn factor(&mut self) -> Result<WordExpr> {
        let mut base = self.primary()?;
        loop {
            self.skip_ws_only();
            if self.peek() != Some('^') {
                break;
            }
            self.pos += 1;
            let k = self.integer()?;
            base = base.pow(k);
        }
        Ok(base)
    }

    fn skip_ws_only(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws_only();
        let start = self.pos;
        let mut s = String::new();
        if let Some(c @ ('-' | '+')) = self.peek() {
            s.push(c);
            self.pos += 1;
        }
        if self.peek() == Some('{') {
            // tolerate T^{-4}
            self.pos += 1;
            let k = self.integer()?;
            self.skip_ws_only();
            if self.peek() != Some('}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
            return Ok(if s == "-" { -k } else { k });
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }

    fn primary(&mut self) -> Result<WordExpr> {
        match self.peek() {
            Some('T') => {
                self.pos += 1;
                Ok(WordExpr::t(1))
            }
            Some('U') => {
                self.pos += 1;
                Ok(WordExpr::u(1))
            }
            Some('S') => {
                self.pos += 1;
                Ok(WordExpr::S)
            }
            Some('1') => {
                self.pos += 1;
                Ok(WordExpr::Identity)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.product(&[')'])?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product(&[','])?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return self.err("expected ',' in commutator");
                }
                self.pos += 1;
                let b = self.product(&[']'])?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return self.err("expected ']'");
                }
                self.pos += 1;
                Ok(WordExpr::commutator(a, b))
            }
            Some(c) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Substitute `T -> x`, `U -> y` and multiply left to right.
pub fn evaluate_word(w: &GroupWord, x: &CycMatrix, y: &CycMatrix) -> Result<CycMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let mut x_inv = None;
    let mut y_inv = None;
    let mut acc = CycMatrix::identity(x.dim());
    for &(g, e) in w.letters() {
        let (base, inv_slot) = match g {
            Gen::T => (x, &mut x_inv),
            Gen::U => (y, &mut y_inv),
        };
        let factor = if e > 0 {
            base.pow(e)?
        } else {
            if inv_slot.is_none() {
                *inv_slot = Some(base.inverse()?);
            }
            inv_slot.as_ref().expect("just set").pow(-e)?
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// 2x2 integer matrix with entries reduced into `[0, N)`.
pub type IntMat2 = [[i64; 2]; 2];

fn mul_mod(a: &IntMat2, b: &IntMat2, n: i64) -> IntMat2 {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let s = a[i][0] as i128 * b[0][j] as i128 + a[i][1] as i128 * b[1][j] as i128;
            out[i][j] = s.rem_euclid(n as i128) as i64;
        }
    }
    out
}

/// Evaluate with `T = (1 1; 0 1)` and `U = (1 0; 1 1)` over `Z/N`.
pub fn evaluate_word_integer(w: &GroupWord, n: u64) -> IntMat2 {
    assert!(n >= 1, "modulus must be positive");
    let n = n as i64;
    let mut acc: IntMat2 = [[1 % n, 0], [0, 1 % n]];
    for &(g, e) in w.letters() {
        let k = e.rem_euclid(n);
        let m = match g {
            Gen::T => [[1 % n, k], [0, 1 % n]],
            Gen::U => [[1 % n, 0], [k, 1 % n]],
        };
        acc = mul_mod(&acc, &m, n);
    }
    acc
}

/// Whether an integer matrix is `+I` or `-I` modulo `N`.
pub fn is_plus_minus_identity(m: &IntMat2, n: u64) -> bool {
    let n = n as i64;
    let one = 1 % n;
    let minus_one = (n - 1) % n;
    m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1] && (m[0][0] == one || m[0][0] == minus_one)
}
