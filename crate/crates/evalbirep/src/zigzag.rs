//! Affine and finite type A zigzag algebras.
//!
//! Basis indices for rank `d`: `e_i = i`, `l_i = d + i`, `i|i+1 = 2d + i`,
//! `i|i-1 = 3d + i` (all vertex labels mod `d`). A path `i|j` runs from `j` to
//! `i` and `x * y` means "`x` after `y`". The finite algebra uses the vertices
//! `1..d-1` and keeps the same indices.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZigzagFlavor {
    Affine,
    Finite,
}

/// The algebra itself: only the rank and flavor are stored, products are
/// computed from the quiver relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZigzagAlgebra {
    d: usize,
    flavor: ZigzagFlavor,
}

/// Finite linear combination of basis elements.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigzagElement {
    terms: BTreeMap<usize, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Idem,
    Loop,
    Up,
    Down,
}

impl ZigzagAlgebra {
    pub fn new(d: usize, flavor: ZigzagFlavor) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidArgument("rank must be at least 3".into()));
        }
        Ok(ZigzagAlgebra { d, flavor })
    }

    pub fn affine(d: usize) -> Result<Self> {
        Self::new(d, ZigzagFlavor::Affine)
    }

    pub fn finite(d: usize) -> Result<Self> {
        Self::new(d, ZigzagFlavor::Finite)
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn flavor(&self) -> ZigzagFlavor {
        self.flavor
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self.flavor {
            ZigzagFlavor::Affine => (0..self.d).collect(),
            ZigzagFlavor::Finite => (1..self.d).collect(),
        }
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        v < self.d && (self.flavor == ZigzagFlavor::Affine || v != 0)
    }

    fn kind(&self, b: usize) -> (Kind, usize) {
        let d = self.d;
        match b / d {
            0 => (Kind::Idem, b % d),
            1 => (Kind::Loop, b % d),
            2 => (Kind::Up, b % d),
            _ => (Kind::Down, b % d),
        }
    }

    pub fn e(&self, i: usize) -> usize {
        i % self.d
    }

    pub fn l(&self, i: usize) -> usize {
        self.d + i % self.d
    }

    /// Index of the arrow `i|j` (from `j` to `i`), `j = i +- 1 mod d`.
    pub fn arrow(&self, i: usize, j: usize) -> Result<usize> {
        let d = self.d;
        let (i, j) = (i % d, j % d);
        if j == (i + 1) % d {
            Ok(2 * d + i)
        } else if (j + 1) % d == i {
            Ok(3 * d + i)
        } else {
            Err(Error::InvalidArgument(format!("{i}|{j} is not an arrow")))
        }
    }

    /// Source vertex of a basis element.
    pub fn source(&self, b: usize) -> usize {
        let d = self.d;
        match self.kind(b) {
            (Kind::Idem | Kind::Loop, i) => i,
            (Kind::Up, i) => (i + 1) % d,
            (Kind::Down, i) => (i + d - 1) % d,
        }
    }

    pub fn target(&self, b: usize) -> usize {
        self.kind(b).1
    }

    pub fn degree(&self, b: usize) -> i32 {
        match self.kind(b).0 {
            Kind::Idem => 0,
            Kind::Loop => 2,
            Kind::Up | Kind::Down => 1,
        }
    }

    pub fn contains(&self, b: usize) -> bool {
        b < 4 * self.d && self.has_vertex(self.source(b)) && self.has_vertex(self.target(b))
    }

    pub fn basis(&self) -> Vec<usize> {
        (0..4 * self.d).filter(|&b| self.contains(b)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Basis of `e_a Z e_b`: paths from `b` to `a`.
    pub fn paths(&self, a: usize, b: usize) -> Vec<usize> {
        if !self.has_vertex(a) || !self.has_vertex(b) {
            return vec![];
        }
        let d = self.d;
        let mut out = vec![];
        if a == b {
            out.push(a);
            out.push(d + a);
        } else if let Ok(x) = self.arrow(a, b) {
            out.push(x);
        }
        out
    }

    pub fn name(&self, b: usize) -> String {
        let d = self.d;
        match self.kind(b) {
            (Kind::Idem, i) => format!("e{i}"),
            (Kind::Loop, i) => format!("l{i}"),
            (Kind::Up, i) => format!("p{i}|{}", (i + 1) % d),
            (Kind::Down, i) => format!("p{i}|{}", (i + d - 1) % d),
        }
    }

    pub fn parse_name(&self, s: &str) -> Result<usize> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("not a basis element: {s:?}"),
        };
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let b = if let Some(r) = s.strip_prefix('e') {
            self.e(num(r)?)
        } else if let Some(r) = s.strip_prefix('l') {
            self.l(num(r)?)
        } else if let Some(r) = s.strip_prefix('p') {
            let (i, j) = r.split_once('|').ok_or_else(bad)?;
            let (i, j) = (num(i)?, num(j)?);
            if i >= self.d || j >= self.d {
                return Err(bad());
            }
            self.arrow(i, j).map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        if !self.contains(b) || self.name(b) != s {
            return Err(bad());
        }
        Ok(b)
    }

    /// Product of two basis elements: zero or a signed basis element.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<(usize, i64)> {
        if self.source(x) != self.target(y) {
            return None;
        }
        let d = self.d;
        let (kx, i) = self.kind(x);
        let (ky, _) = self.kind(y);
        match (kx, ky) {
            (Kind::Idem, _) => Some((y, 1)),
            (_, Kind::Idem) => Some((x, 1)),
            // i|i+1|i
            (Kind::Up, Kind::Down) => Some((d + i, 1)),
            // i|i-1|i; at vertex 0 this is (-1)^d 0|1|0
            (Kind::Down, Kind::Up) => {
                let s = if i == 0 && d % 2 == 1 { -1 } else { 1 };
                Some((d + i, s))
            }
            _ => None,
        }
    }

    pub fn mul(&self, x: &ZigzagElement, y: &ZigzagElement) -> ZigzagElement {
        let mut out = ZigzagElement::zero();
        for (&a, ca) in &x.terms {
            for (&b, cb) in &y.terms {
                if let Some((c, s)) = self.mul_basis(a, b) {
                    out.add_term(c, &(ca * cb * rat(s)));
                }
            }
        }
        out
    }

    /// `tr(l_i) = 1`, zero off degree 2.
    pub fn trace(&self, x: &ZigzagElement) -> Rat {
        x.terms
            .iter()
            .filter(|(&b, _)| self.kind(b).0 == Kind::Loop)
            .fold(Rat::zero(), |acc, (_, c)| acc + c)
    }

    /// Matrix of `<x, y> = tr(x y)` on the basis.
    pub fn trace_form(&self) -> Matrix<Rat> {
        let basis = self.basis();
        let n = basis.len();
        let mut g = Matrix::zeros(n, n);
        for (r, &x) in basis.iter().enumerate() {
            for (c, &y) in basis.iter().enumerate() {
                if let Some((p, s)) = self.mul_basis(x, y) {
                    if self.kind(p).0 == Kind::Loop {
                        g.set(r, c, rat(s));
                    }
                }
            }
        }
        g
    }

    /// Pairs `(a, a*)` with `tr(a b*) = [a = b]`.
    pub fn dual_basis(&self) -> Vec<(usize, ZigzagElement)> {
        let basis = self.basis();
        let inv = self.trace_form().inverse().expect("trace form is non-degenerate");
        // columns of G^{-1} give the dual vectors: G * G^{-1} = I
        basis
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let mut v = ZigzagElement::zero();
                for (r, &b) in basis.iter().enumerate() {
                    v.add_term(b, inv.get(r, k));
                }
                (a, v)
            })
            .collect()
    }

    fn require_affine(&self) -> Result<()> {
        if self.flavor != ZigzagFlavor::Affine {
            return Err(Error::FlavorMismatch("the rotation is only defined on the affine algebra".into()));
        }
        Ok(())
    }

    /// Image of a basis element under `tau^rot sigma^[flip]`, where `tau` is the
    /// rotation and `sigma` negates every arrow `k|k+1`.
    pub fn twist_basis(&self, rot: i64, flip: bool, b: usize) -> (usize, i64) {
        let (k, i) = self.kind(b);
        let mut sign = if flip && matches!(k, Kind::Up | Kind::Loop) { -1 } else { 1 };
        let mut cur = (k, i);
        for _ in 0..rot.unsigned_abs() {
            let (s, next) = if rot > 0 { self.tau_step(cur) } else { self.tau_inv_step(cur) };
            sign *= s;
            cur = next;
        }
        (self.index_of(cur), sign)
    }

    fn index_of(&self, (k, i): (Kind, usize)) -> usize {
        let d = self.d;
        match k {
            Kind::Idem => i,
            Kind::Loop => d + i,
            Kind::Up => 2 * d + i,
            Kind::Down => 3 * d + i,
        }
    }

    fn tau_step(&self, (k, i): (Kind, usize)) -> (i64, (Kind, usize)) {
        let d = self.d;
        let sd = if d % 2 == 1 { -1 } else { 1 };
        let j = (i + 1) % d;
        match k {
            // 0|d-1 -> (-1)^d 1|0
            Kind::Down if i == 0 => (sd, (Kind::Down, 1)),
            // l_{d-1} = (d-1|0)(0|d-1) -> (0|1)(-1)^d(1|0)
            Kind::Loop if i == d - 1 => (sd, (Kind::Loop, 0)),
            _ => (1, (k, j)),
        }
    }

    fn tau_inv_step(&self, (k, i): (Kind, usize)) -> (i64, (Kind, usize)) {
        let d = self.d;
        let sd = if d % 2 == 1 { -1 } else { 1 };
        let j = (i + d - 1) % d;
        match k {
            Kind::Down if i == 1 => (sd, (Kind::Down, 0)),
            Kind::Loop if i == 0 => (sd, (Kind::Loop, d - 1)),
            _ => (1, (k, j)),
        }
    }

    pub fn twist(&self, rot: i64, flip: bool, x: &ZigzagElement) -> Result<ZigzagElement> {
        if rot != 0 {
            self.require_affine()?;
        }
        let mut out = ZigzagElement::zero();
        for (&b, c) in &x.terms {
            let (t, s) = self.twist_basis(rot, flip, b);
            out.add_term(t, &(c * rat(s)));
        }
        Ok(out)
    }

    /// The rotation automorphism `tau`.
    pub fn tau(&self, x: &ZigzagElement) -> Result<ZigzagElement> {
        self.twist(1, false, x)
    }

    pub fn tau_inv(&self, x: &ZigzagElement) -> Result<ZigzagElement> {
        self.twist(-1, false, x)
    }

    pub fn basis_element(&self, b: usize) -> ZigzagElement {
        ZigzagElement::basis(b)
    }

    pub fn format(&self, x: &ZigzagElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(&b, c)| format!("{c}*{}", self.name(b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Inverse of [`format`](Self::format): terms `c*name` or `name` joined by `+`.
    pub fn parse(&self, s: &str) -> Result<ZigzagElement> {
        let s = s.trim();
        let mut out = ZigzagElement::zero();
        if s == "0" {
            return Ok(out);
        }
        for t in s.split(" + ") {
            let (c, n) = t.trim().split_once('*').unwrap_or(("1", t.trim()));
            let c: Rat = c.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad coefficient {c:?}"),
            })?;
            out.add_term(self.parse_name(n)?, &c);
        }
        Ok(out)
    }
}

impl ZigzagElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: usize) -> Self {
        Self::term(b, Rat::one())
    }

    pub fn term(b: usize, c: Rat) -> Self {
        let mut x = Self::zero();
        x.add_term(b, &c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: usize) -> Rat {
        self.terms.get(&b).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.terms.iter().map(|(&b, c)| (b, c))
    }

    pub fn add_term(&mut self, b: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (&b, c) in &o.terms {
            x.add_term(b, c);
        }
        x
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZigzagElement {
            terms: self.terms.iter().map(|(&b, x)| (b, x * c)).collect(),
        }
    }

    /// `Some(c)` if this is `c` times a single basis element `b`.
    pub fn as_multiple_of(&self, b: usize) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&b).cloned(),
            _ => None,
        }
    }

    pub fn max_abs_coeff(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Debug for ZigzagElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("{c}*[{b}]")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz(d: usize) -> ZigzagAlgebra {
        ZigzagAlgebra::affine(d).unwrap()
    }

    fn el(b: usize) -> ZigzagElement {
        ZigzagElement::basis(b)
    }

    #[test]
    fn dimensions() {
        for d in 3..7 {
            assert_eq!(zz(d).dim(), 4 * d);
            assert_eq!(ZigzagAlgebra::finite(d).unwrap().dim(), 4 * (d - 1) - 2);
        }
    }

    #[test]
    fn product_examples() {
        for d in 3..7 {
            let a = zz(d);
            let p = |i, j| el(a.arrow(i, j).unwrap());
            assert_eq!(a.mul(&p(1, 2), &p(2, 1)), el(a.l(1)));
            assert!(a.mul(&p(1, 2), &p(2, 3)).is_zero());
            assert_eq!(a.mul(&p(0, 1), &p(1, 0)), el(a.l(0)));
            let s = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(a.mul(&p(0, d - 1), &p(d - 1, 0)), el(a.l(0)).scale(&rat(s)));
            assert_eq!(a.trace(&a.mul(&p(1, 2), &p(2, 1))), rat(1));
        }
    }

    #[test]
    fn names_round_trip() {
        let a = zz(4);
        for b in a.basis() {
            assert_eq!(a.parse_name(&a.name(b)).unwrap(), b);
        }
        assert_eq!(a.name(a.arrow(2, 3).unwrap()), "p2|3");
        let x = el(a.l(0)).add(&el(a.arrow(0, 3).unwrap()).scale(&rat(-2)));
        assert_eq!(a.parse(&a.format(&x)).unwrap(), x);
        assert!(a.parse_name("p0|2").is_err());
    }

    #[test]
    fn dual_basis_formula() {
        for d in 3..7 {
            let a = zz(d);
            let dual: BTreeMap<usize, ZigzagElement> = a.dual_basis().into_iter().collect();
            for i in 0..d {
                assert_eq!(dual[&a.e(i)], el(a.l(i)));
                assert_eq!(dual[&a.l(i)], el(a.e(i)));
            }
            let s = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(dual[&a.arrow(0, d - 1).unwrap()], el(a.arrow(d - 1, 0).unwrap()).scale(&rat(s)));
            for i in 1..d {
                for j in [i + 1, i - 1] {
                    assert_eq!(dual[&a.arrow(i, j).unwrap()], el(a.arrow(j, i).unwrap()));
                }
            }
        }
    }

    #[test]
    fn tau_examples() {
        for d in 3..7 {
            let a = zz(d);
            for i in 0..d {
                assert_eq!(a.tau(&el(a.e(i))).unwrap(), el(a.e(i + 1)));
            }
            let s = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                a.tau(&el(a.arrow(0, d - 1).unwrap())).unwrap(),
                el(a.arrow(1, 0).unwrap()).scale(&rat(s))
            );
        }
        assert!(ZigzagAlgebra::finite(4).unwrap().tau(&el(1)).is_err());
    }
}
