//! Sparse Laurent polynomials in `x_1..x_nx` with polynomial coefficients in
//! `y_1..y_ny` and integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exponent vectors. The derived order is lexicographic in `x` then `y`,
/// which is a monomial order on nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<i64>,
    pub y: Vec<u64>,
}

impl Monomial {
    pub fn one(nx: usize, ny: usize) -> Self {
        Self {
            x: vec![0; nx],
            y: vec![0; ny],
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` if the quotient has nonnegative exponents throughout.
    fn div_poly(&self, other: &Self) -> Option<Self> {
        let x: Vec<i64> = self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect();
        if x.iter().any(|&e| e < 0) {
            return None;
        }
        let y = self
            .y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u64>>>()?;
        Some(Self { x, y })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nx: usize, ny: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Monomial::one(nx, ny))
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::constant(nx, ny, 1)
    }

    /// The variable `x_{i+1}`.
    pub fn x(nx: usize, ny: usize, i: usize) -> Self {
        let mut m = Monomial::one(nx, ny);
        m.x[i] = 1;
        Self::monomial(1, m)
    }

    /// The variable `y_{i+1}`.
    pub fn y(nx: usize, ny: usize, i: usize) -> Self {
        let mut m = Monomial::one(nx, ny);
        m.y[i] = 1;
        Self::monomial(1, m)
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let (nx, ny) = (m.x.len(), m.y.len());
        let mut p = Self::zero(nx, ny);
        p.add_term(m, c.into());
        p
    }

    /// Builds from terms; duplicates are summed and zeros dropped.
    pub fn from_terms(
        nx: usize,
        ny: usize,
        terms: impl IntoIterator<Item = (BigInt, Monomial)>,
    ) -> Self {
        let mut p = Self::zero(nx, ny);
        for (c, m) in terms {
            assert!(m.x.len() == nx && m.y.len() == ny, "monomial has the wrong shape");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_one() && m == &Monomial::one(self.nx, self.ny))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.nx == other.nx && self.ny == other.ny,
            "Laurent polynomials over different variable sets"
        );
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nx, self.ny);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `x^e` for an arbitrary integer exponent vector.
    pub fn x_power(nx: usize, ny: usize, exps: &[i64]) -> Self {
        let mut m = Monomial::one(nx, ny);
        m.x.copy_from_slice(exps);
        Self::monomial(1, m)
    }

    /// Coefficientwise minimum of the x-exponents, or `None` for zero.
    fn x_floor(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let mut floor = it.next()?.x.clone();
        for m in it {
            for (f, &e) in floor.iter_mut().zip(&m.x) {
                *f = (*f).min(e);
            }
        }
        Some(floor)
    }

    fn shift_x(&self, by: &[i64]) -> Self {
        Self {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    for (e, d) in m.x.iter_mut().zip(by) {
                        *e += d;
                    }
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient in `Z[y][x^±1]`, or `None` if `d` does not divide
    /// `self` there. Units are `±` x-monomials, so x-monomial content is
    /// split off first and the rest is polynomial long division.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_shape(d);
        let d_floor = d.x_floor()?;
        let Some(p_floor) = self.x_floor() else {
            return Some(Self::zero(self.nx, self.ny));
        };
        let neg = |v: &[i64]| v.iter().map(|e| -e).collect::<Vec<_>>();
        let dd = d.shift_x(&neg(&d_floor));
        let mut r = self.shift_x(&neg(&p_floor));
        let (lead_m, lead_c) = dd.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Self::zero(self.nx, self.ny);
        while let Some((rm, rc)) = r.terms.iter().next_back() {
            let m = rm.div_poly(&lead_m)?;
            let (c, rem) = rc.div_rem(&lead_c);
            if !rem.is_zero() {
                return None;
            }
            let step = Self::monomial(c, m);
            r = &r - &(&step * &dd);
            q = &q + &step;
        }
        let shift: Vec<i64> = p_floor.iter().zip(&d_floor).map(|(a, b)| a - b).collect();
        Some(q.shift_x(&shift))
    }

    /// Splits by the exponent of `x_{k+1}`: returns `j -> p_j` with
    /// `self = sum_j p_j x_{k+1}^j` and each `p_j` free of `x_{k+1}`.
    pub fn coefficients_in_x(&self, k: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let j = std::mem::replace(&mut m.x[k], 0);
            out.entry(j)
                .or_insert_with(|| Self::zero(self.nx, self.ny))
                .add_term(m, c.clone());
        }
        out
    }

    /// Substitutes values for every variable. `x` values must be invertible
    /// when negative exponents occur.
    pub fn evaluate<T>(&self, x: &[T], y: &[T]) -> T
    where
        T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + std::ops::Div<Output = T> + From<BigInt>,
    {
        let pow = |v: &T, e: u64| (0..e).fold(T::one(), |acc, _| acc * v.clone());
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from(c.clone());
            for (v, &e) in x.iter().zip(&m.x) {
                if e >= 0 {
                    t = t * pow(v, e as u64);
                } else {
                    t = t / pow(v, e.unsigned_abs());
                }
            }
            for (v, &e) in y.iter().zip(&m.y) {
                t = t * pow(v, e);
            }
            total = total + t;
        }
        total
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_shape(rhs);
        let mut out = LaurentPoly::zero(self.nx, self.ny);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Prints terms in decreasing monomial order, e.g. `y1*x2*x1^-1 + x1^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.y.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("y{}", i + 1)),
                    _ => factors.push(format!("y{}^{e}", i + 1)),
                }
            }
            for (i, &e) in m.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{e}", i + 1)),
                }
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs.is_one(), factors.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    nx: usize,
    ny: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    x: Vec<i64>,
    y: Vec<u64>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyDoc {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermDoc {
                    coeff: c.to_string(),
                    x: m.x.clone(),
                    y: m.y.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = PolyDoc::deserialize(d)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            if t.x.len() != doc.nx || t.y.len() != doc.ny {
                return Err(D::Error::custom("exponent vector length differs from nx/ny"));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((c, Monomial { x: t.x, y: t.y }));
        }
        Ok(Self::from_terms(doc.nx, doc.ny, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePolyError {
    #[error("unexpected input at byte {0}")]
    Unexpected(usize),
    #[error("unknown variable {0}")]
    Variable(String),
    #[error("division is not exact in the Laurent ring")]
    InexactDivision,
    #[error("negative power of a non-monomial")]
    NegativePower,
}

/// Parses an expression such as `(y2*y3*x2^2 + x3^2 + y2*x1)/(x1*x2)`.
/// Supports `+ - * / ^`, parentheses, integers and the variables
/// `x1..x{nx}`, `y1..y{ny}`. Division must be exact.
pub fn parse_laurent(text: &str, nx: usize, ny: usize) -> Result<LaurentPoly, ParsePolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nx,
        ny,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParsePolyError::Unexpected(p.pos));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nx: usize,
    ny: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div_exact(&d).ok_or(ParsePolyError::InexactDivision)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let at = self.pos;
        let e: u32 = self
            .digits()
            .and_then(|d| d.parse().ok())
            .ok_or(ParsePolyError::Unexpected(at))?;
        let p = base.pow(e);
        if !negative {
            return Ok(p);
        }
        LaurentPoly::one(self.nx, self.ny)
            .div_exact(&p)
            .ok_or(ParsePolyError::NegativePower)
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParsePolyError> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParsePolyError::Unexpected(self.pos));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("starts with a digit");
                let v: BigInt = d.parse().expect("digits parse");
                Ok(LaurentPoly::constant(self.nx, self.ny, v))
            }
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let idx = self.digits().and_then(|d| d.parse::<usize>().ok());
                let bound = if c == b'x' { self.nx } else { self.ny };
                match idx {
                    Some(i) if (1..=bound).contains(&i) => Ok(if c == b'x' {
                        LaurentPoly::x(self.nx, self.ny, i - 1)
                    } else {
                        LaurentPoly::y(self.nx, self.ny, i - 1)
                    }),
                    _ => Err(ParsePolyError::Variable(
                        String::from_utf8_lossy(&self.src[at..self.pos]).trim().to_string(),
                    )),
                }
            }
            _ => Err(ParsePolyError::Unexpected(self.pos)),
        }
    }
}
