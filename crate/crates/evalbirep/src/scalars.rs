//! Exact scalars in `q`: Laurent polynomials over Q and the fraction field Q(q).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Finite sum of `c * q^k`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(rat(1), 0)
    }

    pub fn q() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(rat(1), k)
    }

    /// `(-q)^k`
    pub fn neg_q_pow(k: i32) -> Self {
        let c = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(rat(c), k)
    }

    /// Quantum two, `q + q^-1`.
    pub fn quantum_two() -> Self {
        Self::q_pow(1) + Self::q_pow(-1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: Rat, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rat)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, k: i32) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// A single term `c q^k`, if that is what this is.
    pub fn as_monomial(&self) -> Option<(i32, &Rat)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut s = Rat::zero();
        for (k, c) in &self.coeffs {
            s += c * pow_rat(x, *k);
        }
        s
    }

    // dense ascending coefficients of q^{-min} * self
    fn to_dense(&self) -> (i32, Vec<Rat>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
                for (k, c) in &self.coeffs {
                    v[(k - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    fn from_dense(lo: i32, v: &[Rat]) -> Self {
        LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (lo + i as i32, c.clone())))
    }
}

fn pow_rat(x: &Rat, k: i32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= x;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: `c*q^k` monomials by descending exponent, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| format!("{}*q^{}", fmt_rat(c), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---- dense polynomial helpers over Q, ascending coefficients ----

fn trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r: Vec<Rat> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (quot, r)
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &l;
        }
    }
    x
}

/// Element of Q(q), kept as `num / den` with `den` a monic polynomial with
/// nonzero constant term, coprime to `num` (all powers of `q` live in `num`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    pub fn q_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    pub fn neg_q_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::neg_q_pow(k))
    }

    pub fn int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::int(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::from_laurent(LaurentPoly::zero());
        }
        if let Some((k, c)) = den.as_monomial() {
            let c = c.recip();
            return Self::from_laurent(num.shift(-k).scale(&c));
        }
        let (nlo, nd) = num.to_dense();
        let (dlo, dd) = den.to_dense();
        let g = poly_gcd(&nd, &dd);
        let (nq, _) = poly_divrem(&nd, &g);
        let (dq, _) = poly_divrem(&dd, &g);
        let lead = dq.last().unwrap().recip();
        let num = LaurentPoly::from_dense(nlo - dlo, &nq).scale(&lead);
        let den = LaurentPoly::from_dense(0, &dq).scale(&lead);
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn bar(&self) -> Self {
        Self::canonical(self.num.bar(), self.den.bar())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: if c.is_zero() { LaurentPoly::one() } else { self.den.clone() },
        }
    }

    /// Parse the textual scalar grammar (see [`parse_scalar`]).
    pub fn parse(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_laurent(&self.num * &rhs.num);
        }
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RationalFunction, Add add, Sub sub, Mul mul, Div div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_scalar(s)?;
        r.as_laurent().cloned().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "not a Laurent polynomial".into(),
        })
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---- parser ----
//
// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' ['-'] int)?
// atom   := int | 'q' | '(' expr ')'

/// Parse a scalar such as `1*q^1 + 1*q^-1`, `(-q)^4`, `q^2`, `1/2*q^0` or `(q-1)/(q+1)`.
pub fn parse_scalar(s: &str) -> Result<RationalFunction> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| Error::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let n = self.int()?;
            let n: i32 = n.try_into().map_err(|_| Error::Parse {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            let n = if neg { -n } else { n };
            return base.pow(n).map_err(|_| Error::Parse {
                pos: at,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RationalFunction::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(RationalFunction::from_rat(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Sign `(-1)^k`.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn abs_rat(c: &Rat) -> Rat {
    c.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn quantum_two_text() {
        let two = LaurentPoly::quantum_two();
        assert_eq!(two.to_string(), "1*q^1 + 1*q^-1");
        assert_eq!(rf("q + q^-1"), RationalFunction::from(two.clone()));
        assert_eq!(rf(&two.to_string()).as_laurent().unwrap(), &two);
    }

    #[test]
    fn square_of_quantum_two() {
        // hand expansion: q^2 + 2 + q^-2
        let two = LaurentPoly::quantum_two();
        let sq = &two * &two;
        assert_eq!(sq, LaurentPoly::from_terms([(2, rat(1)), (0, rat(2)), (-2, rat(1))]));
    }

    #[test]
    fn inverse_powers() {
        let a = RationalFunction::neg_q_pow(3);
        let b = RationalFunction::neg_q_pow(-3);
        assert!((&a * &b).is_one());
        assert!((&RationalFunction::q() * &RationalFunction::q_pow(-1)).is_one());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentPoly::q().bar(), LaurentPoly::q_pow(-1));
        let two = LaurentPoly::quantum_two();
        assert_eq!(two.bar(), two);
        for d in 3..7 {
            // bar((-q)^d) = (-q^-1)^d
            let lhs = LaurentPoly::neg_q_pow(d).bar();
            let rhs = LaurentPoly::neg_q_pow(-d);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn additive_inverse() {
        let x = rf("q - q^-1");
        let y = rf("q^-1 - q");
        assert!((&x + &y).is_zero());
        assert_eq!(&x + &RationalFunction::zero(), x);
    }

    #[test]
    fn canonical_fraction() {
        let a = rf("(q^2 - 1)/(q - 1)");
        assert_eq!(a, rf("q + 1"));
        let b = rf("(q^3 - q)/(2*q^2 + 2*q)");
        assert_eq!(b, rf("1/2*q - 1/2"));
        let c = rf("1/(q^-1 + q)");
        assert_eq!(c.denom(), &rf("q^2+1").as_laurent().unwrap().clone());
        assert_eq!(c.numer(), &LaurentPoly::q());
        assert_eq!(rf(&c.to_string()), c);
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_scalar("q + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(q").is_err());
    }

    #[test]
    fn division_roundtrip() {
        let x = rf("q^3 + 2*q - 5");
        let y = rf("q^2 - q^-1 + 3");
        let z = &(&x / &y) * &y;
        assert_eq!(z, x);
    }
}
