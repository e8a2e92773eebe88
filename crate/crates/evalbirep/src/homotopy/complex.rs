use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projcat::{FunctorWord, ModMorphism, ProjObject, Summand};
use crate::scalars::{LaurentPoly, Rat};
use crate::zigzag::ZigzagAlgebra;

/// Bounded cochain complex of graded projective modules; `d^k : C^k -> C^{k+1}`.
///
/// `C<t>[n]` moves the term in degree `k` to degree `k - n`, so `X[j]` starts in
/// degree `-j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub alg: ZigzagAlgebra,
    terms: BTreeMap<i32, ProjObject>,
    diffs: BTreeMap<i32, ModMorphism>,
}

impl Complex {
    pub fn zero(alg: ZigzagAlgebra) -> Self {
        Complex {
            alg,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Object concentrated in one degree.
    pub fn single(obj: ProjObject, degree: i32) -> Self {
        let mut c = Self::zero(obj.alg);
        if !obj.is_empty() {
            c.terms.insert(degree, obj);
        }
        c
    }

    pub fn indecomposable(alg: ZigzagAlgebra, vertex: usize) -> Result<Self> {
        Ok(Self::single(ProjObject::indecomposable(alg, vertex, 0)?, 0))
    }

    /// Assembles a complex and checks shapes, degrees and `d^2 = 0`.
    pub fn from_parts(
        alg: ZigzagAlgebra,
        terms: BTreeMap<i32, ProjObject>,
        diffs: BTreeMap<i32, ModMorphism>,
    ) -> Result<Self> {
        let mut c = Complex { alg, terms, diffs };
        c.terms.retain(|_, o| !o.is_empty());
        c.diffs.retain(|_, m| !m.is_zero());
        c.validate()?;
        Ok(c)
    }

    /// Builds without checking `d^2 = 0` (shapes are still trusted).
    pub(crate) fn from_parts_unchecked(
        alg: ZigzagAlgebra,
        mut terms: BTreeMap<i32, ProjObject>,
        mut diffs: BTreeMap<i32, ModMorphism>,
    ) -> Self {
        terms.retain(|_, o| !o.is_empty());
        diffs.retain(|_, m| !m.is_zero());
        Complex { alg, terms, diffs }
    }

    pub fn validate(&self) -> Result<()> {
        for (k, d) in &self.diffs {
            if d.src != self.term(*k) || d.tgt != self.term(k + 1) {
                return Err(Error::Inconsistent(format!("differential in degree {k} has the wrong shape")));
            }
            if !d.check_degrees(0) {
                return Err(Error::Inconsistent(format!("differential in degree {k} is not homogeneous")));
            }
        }
        for (k, d) in &self.diffs {
            if let Some(d2) = self.diffs.get(&(k + 1)) {
                if !d2.after(d).is_zero() {
                    return Err(Error::Inconsistent(format!("d^2 != 0 at degree {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, k: i32) -> ProjObject {
        self.terms.get(&k).cloned().unwrap_or_else(|| ProjObject::zero(self.alg))
    }

    pub fn term_ref(&self, k: i32) -> Option<&ProjObject> {
        self.terms.get(&k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &ProjObject)> {
        self.terms.iter().map(|(k, o)| (*k, o))
    }

    pub fn term_len(&self, k: i32) -> usize {
        self.terms.get(&k).map_or(0, |o| o.len())
    }

    pub fn diff(&self, k: i32) -> ModMorphism {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ModMorphism::zero(self.term(k), self.term(k + 1)))
    }

    pub fn diff_ref(&self, k: i32) -> Option<&ModMorphism> {
        self.diffs.get(&k)
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn total_rank(&self) -> usize {
        self.terms.values().map(|o| o.len()).sum()
    }

    /// `C<t>[n]`; differentials keep their matrices.
    pub fn shifted(&self, t: i32, n: i32) -> Self {
        Complex {
            alg: self.alg,
            terms: self.terms.iter().map(|(k, o)| (k - n, o.shifted(t, 0))).collect(),
            diffs: self.diffs.iter().map(|(k, m)| (k - n, m.shifted(t, 0))).collect(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, t) in &o.terms {
            let e = terms.entry(*k).or_insert_with(|| ProjObject::zero(self.alg));
            *e = e.direct_sum(t);
        }
        let mut diffs = BTreeMap::new();
        let keys: std::collections::BTreeSet<i32> = self.diffs.keys().chain(o.diffs.keys()).copied().collect();
        for k in keys {
            let m = ModMorphism::block_diag(&[self.diff(k), o.diff(k)], self.alg);
            diffs.insert(k, m);
        }
        Self::from_parts_unchecked(self.alg, terms, diffs)
    }

    /// Termwise application of an additive functor word.
    pub fn apply_word(&self, w: &FunctorWord) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, o) in &self.terms {
            terms.insert(*k, w.apply_obj(o)?);
        }
        let mut diffs = BTreeMap::new();
        for (k, m) in &self.diffs {
            diffs.insert(*k, w.apply_mor(m)?);
        }
        Ok(Self::from_parts_unchecked(self.alg, terms, diffs))
    }

    /// No differential entry is a nonzero multiple of an idempotent.
    pub fn is_minimal(&self) -> bool {
        self.first_pivot().is_none()
    }

    /// First invertible entry, scanning degrees then columns then rows.
    pub(crate) fn first_pivot(&self) -> Option<(i32, usize, usize, Rat)> {
        for (k, d) in &self.diffs {
            for c in 0..d.ncols() {
                for (r, x) in d.col(c) {
                    let v = d.src.summands[c].vertex;
                    let coef = x.coeff(self.alg.e(v));
                    if !coef.is_zero() && d.tgt.summands[*r].vertex == v {
                        return Some((*k, *r, c, coef));
                    }
                }
            }
        }
        None
    }

    /// Graded Euler characteristic `sum (-1)^k q^t [vertex]`.
    pub fn decat(&self) -> BTreeMap<usize, LaurentPoly> {
        let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (k, o) in &self.terms {
            let sgn = if k.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
            for s in &o.summands {
                let e = out.entry(s.vertex).or_insert_with(LaurentPoly::zero);
                *e = &*e + &LaurentPoly::monomial(sgn.clone(), s.shift);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// `(degree, summand)` pairs, sorted.
    pub fn summand_multiset(&self) -> Vec<(i32, Summand)> {
        let mut v: Vec<(i32, Summand)> = self
            .terms
            .iter()
            .flat_map(|(k, o)| o.summands.iter().map(move |s| (*k, *s)))
            .collect();
        v.sort();
        v
    }

    pub fn to_serial(&self) -> SerialComplex {
        SerialComplex {
            terms: self.terms.iter().map(|(k, o)| (*k, o.to_string())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(k, m)| (*k, m.to_strings()))
                .collect(),
        }
    }

    pub fn from_serial(alg: ZigzagAlgebra, s: &SerialComplex) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, o) in &s.terms {
            terms.insert(*k, ProjObject::parse(alg, o)?);
        }
        let mut diffs = BTreeMap::new();
        for (k, rows) in &s.diffs {
            let src = terms.get(k).cloned().unwrap_or_else(|| ProjObject::zero(alg));
            let tgt = terms.get(&(k + 1)).cloned().unwrap_or_else(|| ProjObject::zero(alg));
            if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("differential in degree {k} has the wrong shape"),
                });
            }
            let mut m = ModMorphism::zero(src, tgt);
            for (r, row) in rows.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    m.add_entry(r, c, &alg.parse(x)?);
                }
            }
            diffs.insert(*k, m);
        }
        Self::from_parts(alg, terms, diffs)
    }
}

/// Text form of a complex: term strings and row-major entry strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialComplex {
    pub terms: BTreeMap<i32, String>,
    pub diffs: BTreeMap<i32, Vec<Vec<String>>>,
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, o)| format!("{k}: {o}")).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Chain map of bidegree `(t, n)`: components `C^k -> D^{k+n}<t>` with
/// `f d_C = (-1)^n d_D f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub t: i32,
    pub n: i32,
    pub comps: BTreeMap<i32, ModMorphism>,
}

impl ChainMap {
    pub fn zero(c: &Complex, d: &Complex, t: i32, n: i32) -> Self {
        let comps = c
            .terms()
            .map(|(k, o)| (k, ModMorphism::zero(o.clone(), d.term(k + n).shifted(t, 0))))
            .collect();
        ChainMap { t, n, comps }
    }

    pub fn identity(c: &Complex) -> Self {
        ChainMap {
            t: 0,
            n: 0,
            comps: c.terms().map(|(k, o)| (k, ModMorphism::identity(o))).collect(),
        }
    }

    pub fn comp(&self, k: i32) -> Option<&ModMorphism> {
        self.comps.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &o.comps {
            match out.comps.get_mut(k) {
                Some(x) => *x = x.add(m),
                None => {
                    out.comps.insert(*k, m.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ChainMap {
            t: self.t,
            n: self.n,
            comps: self.comps.iter().map(|(k, m)| (*k, m.scale(s))).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    /// `self o f`.
    pub fn after(&self, f: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for (k, fk) in &f.comps {
            if let Some(g) = self.comps.get(&(k + f.n)) {
                let m = g.after(fk);
                let tgt = g.tgt.shifted(f.t, 0);
                comps.insert(*k, m.with_objects(fk.src.clone(), tgt));
            }
        }
        ChainMap {
            t: self.t + f.t,
            n: self.n + f.n,
            comps,
        }
    }

    /// Checks `f d_C = (-1)^n d_D f` as matrices.
    pub fn is_chain_map(&self, c: &Complex, d: &Complex) -> bool {
        let sign = if self.n.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
        let mut degs: Vec<i32> = c.terms().map(|(k, _)| k).collect();
        if let Some(&first) = degs.first() {
            degs.insert(0, first - 1);
        }
        for k in degs {
            // C^k -> D^{k+n+1}
            let lhs = match (c.diff_ref(k), self.comps.get(&(k + 1))) {
                (Some(dc), Some(f1)) => Some(f1.after(dc)),
                _ => None,
            };
            let rhs = match (self.comps.get(&k), d.diff_ref(k + self.n)) {
                (Some(f0), Some(dd)) => Some(dd.after(f0).scale(&sign)),
                _ => None,
            };
            let ok = match (lhs, rhs) {
                (Some(a), Some(b)) => same_entries(&a, &b),
                (Some(a), None) | (None, Some(a)) => a.is_zero(),
                (None, None) => true,
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Entrywise equality, ignoring the recorded objects.
pub fn same_entries(a: &ModMorphism, b: &ModMorphism) -> bool {
    a.rows() == b.rows()
        && a.ncols() == b.ncols()
        && a.entries().count() == b.entries().count()
        && a.entries().all(|(r, c, x)| b.entry(r, c) == *x)
}

/// Degree `-1` maps `h^k : C^k -> D^{k-1}` (in bidegree `(t, n - 1)` for
/// maps of bidegree `(t, n)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub comps: BTreeMap<i32, ModMorphism>,
}

impl Homotopy {
    /// `d_D h + (-1)^n h d_C`, as a chain map of bidegree `(t, n)`.
    pub fn boundary(&self, c: &Complex, d: &Complex, t: i32, n: i32) -> ChainMap {
        let sign = if n.rem_euclid(2) == 0 { Rat::one() } else { -Rat::one() };
        let mut out = ChainMap::zero(c, d, t, n);
        for (k, fk) in out.comps.iter_mut() {
            if let (Some(h), Some(dd)) = (self.comps.get(k), d.diff_ref(k + n - 1)) {
                *fk = fk.add(&dd.after(h).with_objects(fk.src.clone(), fk.tgt.clone()));
            }
            if let (Some(dc), Some(h)) = (c.diff_ref(*k), self.comps.get(&(k + 1))) {
                let m = h.after(dc).scale(&sign);
                *fk = fk.add(&m.with_objects(fk.src.clone(), fk.tgt.clone()));
            }
        }
        out
    }
}
