//! Graded projective modules over a zigzag algebra, morphism matrices, and the
//! elementary functors acting on them.
//!
//! A morphism `Ze_a<s> -> Ze_b<t>` is right multiplication by an element of
//! `e_a Z e_b` of path degree `t - s`. Matrices are indexed `(target row,
//! source column)` and `(g o f)_{r,c} = sum_k f_{k,c} * g_{r,k}` (algebra
//! product, `f`'s entry first).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{rat, Rat};
use crate::zigzag::{ZigzagAlgebra, ZigzagElement, ZigzagFlavor};

/// `Ze_vertex<shift>[tag]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub vertex: usize,
    pub shift: i32,
    #[serde(default)]
    pub tag: i32,
}

impl Summand {
    pub fn new(vertex: usize, shift: i32) -> Self {
        Summand { vertex, shift, tag: 0 }
    }

    pub fn shifted(self, t: i32, h: i32) -> Self {
        Summand {
            vertex: self.vertex,
            shift: self.shift + t,
            tag: self.tag + h,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ze_{}<{}>[{}]", self.vertex, self.shift, self.tag)
    }
}

/// Ordered direct sum of shifted indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjObject {
    pub alg: ZigzagAlgebra,
    pub summands: Vec<Summand>,
}

impl ProjObject {
    pub fn zero(alg: ZigzagAlgebra) -> Self {
        ProjObject { alg, summands: vec![] }
    }

    pub fn new(alg: ZigzagAlgebra, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if !alg.has_vertex(s.vertex) {
                return Err(Error::IndexOutOfRange {
                    index: s.vertex as i64,
                    what: "vertices of the zigzag algebra".into(),
                });
            }
        }
        Ok(ProjObject { alg, summands })
    }

    pub fn indecomposable(alg: ZigzagAlgebra, vertex: usize, shift: i32) -> Result<Self> {
        Self::new(alg, vec![Summand::new(vertex, shift)])
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shifted(&self, t: i32, h: i32) -> Self {
        ProjObject {
            alg: self.alg,
            summands: self.summands.iter().map(|s| s.shifted(t, h)).collect(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut s = self.summands.clone();
        s.extend_from_slice(&o.summands);
        ProjObject { alg: self.alg, summands: s }
    }

    /// Summands sorted, for comparisons up to reordering.
    pub fn multiset(&self) -> Vec<Summand> {
        let mut s = self.summands.clone();
        s.sort();
        s
    }

    /// Parses `"Ze_1<1>[0] + Ze_1<-1>[0]"`; `"0"` is the zero object.
    pub fn parse(alg: ZigzagAlgebra, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero(alg));
        }
        let bad = |t: &str| Error::Parse {
            pos: 0,
            msg: format!("bad summand {t:?}"),
        };
        let mut out = vec![];
        for t in s.split('+') {
            let t = t.trim();
            let rest = t.strip_prefix("Ze_").ok_or_else(|| bad(t))?;
            let (v, rest) = rest.split_once('<').ok_or_else(|| bad(t))?;
            let (sh, rest) = rest.split_once('>').ok_or_else(|| bad(t))?;
            let tag = match rest.strip_prefix('[') {
                Some(r) => r.strip_suffix(']').ok_or_else(|| bad(t))?.parse().map_err(|_| bad(t))?,
                None if rest.is_empty() => 0,
                None => return Err(bad(t)),
            };
            out.push(Summand {
                vertex: v.parse().map_err(|_| bad(t))?,
                shift: sh.parse().map_err(|_| bad(t))?,
                tag,
            });
        }
        Self::new(alg, out)
    }
}

impl fmt::Display for ProjObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree-zero morphism of graded projective modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMorphism {
    pub src: ProjObject,
    pub tgt: ProjObject,
    /// `cols[c]` lists `(row, entry)` with nonzero entries, sorted by row.
    cols: Vec<Vec<(usize, ZigzagElement)>>,
}

impl ModMorphism {
    pub fn zero(src: ProjObject, tgt: ProjObject) -> Self {
        let n = src.len();
        ModMorphism {
            src,
            tgt,
            cols: vec![vec![]; n],
        }
    }

    pub fn identity(obj: &ProjObject) -> Self {
        let mut m = Self::zero(obj.clone(), obj.clone());
        for (k, s) in obj.summands.iter().enumerate() {
            m.cols[k].push((k, ZigzagElement::basis(s.vertex)));
        }
        m
    }

    pub fn alg(&self) -> ZigzagAlgebra {
        self.src.alg
    }

    pub fn rows(&self) -> usize {
        self.tgt.len()
    }

    pub fn ncols(&self) -> usize {
        self.src.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> ZigzagElement {
        self.cols[c]
            .iter()
            .find(|(rr, _)| *rr == r)
            .map(|(_, x)| x.clone())
            .unwrap_or_default()
    }

    pub fn col(&self, c: usize) -> &[(usize, ZigzagElement)] {
        &self.cols[c]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ZigzagElement)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, x)| (*r, c, x)))
    }

    /// Adds `x` to entry `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, x: &ZigzagElement) {
        if x.is_zero() {
            return;
        }
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |(rr, _)| *rr) {
            Ok(p) => {
                let y = col[p].1.add(x);
                if y.is_zero() {
                    col.remove(p);
                } else {
                    col[p].1 = y;
                }
            }
            Err(p) => col.insert(p, (r, x.clone())),
        }
    }

    pub fn set_entry(&mut self, r: usize, c: usize, x: ZigzagElement) {
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |(rr, _)| *rr) {
            Ok(p) => {
                if x.is_zero() {
                    col.remove(p);
                } else {
                    col[p].1 = x;
                }
            }
            Err(p) => {
                if !x.is_zero() {
                    col.insert(p, (r, x))
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `self o f`.
    pub fn after(&self, f: &ModMorphism) -> ModMorphism {
        debug_assert_eq!(f.tgt.len(), self.src.len());
        let alg = self.alg();
        let mut out = ModMorphism::zero(f.src.clone(), self.tgt.clone());
        for (c, col) in f.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, ZigzagElement> = BTreeMap::new();
            for (k, x) in col {
                for (r, y) in &self.cols[*k] {
                    let p = alg.mul(x, y);
                    if !p.is_zero() {
                        let e = acc.entry(*r).or_default();
                        *e = e.add(&p);
                    }
                }
            }
            out.cols[c] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    pub fn add(&self, o: &ModMorphism) -> ModMorphism {
        let mut out = self.clone();
        for (r, c, x) in o.entries() {
            out.add_entry(r, c, x);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> ModMorphism {
        let mut out = ModMorphism::zero(self.src.clone(), self.tgt.clone());
        if s.is_zero() {
            return out;
        }
        for (c, col) in self.cols.iter().enumerate() {
            out.cols[c] = col.iter().map(|(r, x)| (*r, x.scale(s))).collect();
        }
        out
    }

    pub fn neg(&self) -> ModMorphism {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, o: &ModMorphism) -> ModMorphism {
        self.add(&o.neg())
    }

    /// Same matrix between shifted objects.
    pub fn shifted(&self, t: i32, h: i32) -> ModMorphism {
        ModMorphism {
            src: self.src.shifted(t, h),
            tgt: self.tgt.shifted(t, h),
            cols: self.cols.clone(),
        }
    }

    /// Same matrix with new source and target of the same lengths.
    pub fn with_objects(&self, src: ProjObject, tgt: ProjObject) -> ModMorphism {
        assert_eq!(src.len(), self.src.len());
        assert_eq!(tgt.len(), self.tgt.len());
        ModMorphism {
            src,
            tgt,
            cols: self.cols.clone(),
        }
    }

    /// Adds `m` into the block starting at `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, m: &ModMorphism) {
        for (r, c, x) in m.entries() {
            self.add_entry(row0 + r, col0 + c, x);
        }
    }

    pub fn block_diag(parts: &[ModMorphism], alg: ZigzagAlgebra) -> ModMorphism {
        let mut src = ProjObject::zero(alg);
        let mut tgt = ProjObject::zero(alg);
        for p in parts {
            src = src.direct_sum(&p.src);
            tgt = tgt.direct_sum(&p.tgt);
        }
        let mut out = ModMorphism::zero(src, tgt);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.add_block(r0, c0, p);
            r0 += p.rows();
            c0 += p.ncols();
        }
        out
    }

    /// Restriction to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ModMorphism {
        let src = ProjObject {
            alg: self.src.alg,
            summands: cols.iter().map(|&c| self.src.summands[c]).collect(),
        };
        let tgt = ProjObject {
            alg: self.tgt.alg,
            summands: rows.iter().map(|&r| self.tgt.summands[r]).collect(),
        };
        let mut pos = vec![usize::MAX; self.rows()];
        for (i, &r) in rows.iter().enumerate() {
            pos[r] = i;
        }
        let mut out = ModMorphism::zero(src, tgt);
        for (j, &c) in cols.iter().enumerate() {
            for (r, x) in &self.cols[c] {
                if pos[*r] != usize::MAX {
                    out.add_entry(pos[*r], j, x);
                }
            }
        }
        out
    }

    /// Every entry is homogeneous of degree `(t_r + t) - t_c` and lies in
    /// `e_{v_c} Z e_{v_r}`.
    pub fn check_degrees(&self, t: i32) -> bool {
        let alg = self.alg();
        self.entries().all(|(r, c, x)| {
            let (sr, sc) = (self.tgt.summands[r], self.src.summands[c]);
            x.terms().all(|(b, _)| {
                alg.target(b) == sc.vertex
                    && alg.source(b) == sr.vertex
                    && alg.degree(b) == sr.shift + t - sc.shift
            })
        })
    }

    /// Row-major list of entry strings, for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let alg = self.alg();
        (0..self.rows())
            .map(|r| (0..self.ncols()).map(|c| alg.format(&self.entry(r, c))).collect())
            .collect()
    }
}

/// Elementary exact functors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// Tensoring with `Ze_a (x) e_b Z`.
    Proj { a: usize, b: usize },
    /// `<t>[h]`.
    Shift { t: i32, h: i32 },
    /// Twist by `tau^rot sigma^[flip]`, with `sigma` negating the arrows `k|k+1`.
    Twist { rot: i64, flip: bool },
}

/// Composite of atoms, applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FunctorWord {
    pub atoms: Vec<Atom>,
}

impl FunctorWord {
    pub fn id() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        FunctorWord { atoms: vec![a] }.canonical()
    }

    /// `B_i = Ze_i (x) e_i Z <1>`.
    pub fn b(i: usize) -> Self {
        FunctorWord {
            atoms: vec![Atom::Shift { t: 1, h: 0 }, Atom::Proj { a: i, b: i }],
        }
    }

    /// `Ze_a (x) e_b Z <t>`.
    pub fn p(a: usize, b: usize, t: i32) -> Self {
        FunctorWord {
            atoms: vec![Atom::Shift { t, h: 0 }, Atom::Proj { a, b }],
        }
        .canonical()
    }

    pub fn shift(t: i32) -> Self {
        Self::atom(Atom::Shift { t, h: 0 })
    }

    pub fn twist(rot: i64, flip: bool) -> Self {
        Self::atom(Atom::Twist { rot, flip })
    }

    /// `self o g`.
    pub fn then_after(&self, g: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&g.atoms);
        FunctorWord { atoms }.canonical()
    }

    /// Shifts merged in front, adjacent twists merged, trivial atoms dropped.
    /// Every step is an equality of functors, not just an isomorphism.
    pub fn canonical(&self) -> Self {
        let (mut t, mut h) = (0, 0);
        let mut rest: Vec<Atom> = vec![];
        for a in &self.atoms {
            match *a {
                Atom::Shift { t: tt, h: hh } => {
                    t += tt;
                    h += hh;
                }
                Atom::Twist { rot, flip } => {
                    if let Some(Atom::Twist { rot: r0, flip: f0 }) = rest.last().copied() {
                        rest.pop();
                        rest.push(Atom::Twist {
                            rot: r0 + rot,
                            flip: f0 ^ flip,
                        });
                    } else {
                        rest.push(*a);
                    }
                    if let Some(Atom::Twist { rot: 0, flip: false }) = rest.last() {
                        rest.pop();
                    }
                }
                Atom::Proj { .. } => rest.push(*a),
            }
        }
        let mut atoms = vec![];
        if t != 0 || h != 0 {
            atoms.push(Atom::Shift { t, h });
        }
        atoms.extend(rest);
        FunctorWord { atoms }
    }

    pub fn total_shift(&self) -> (i32, i32) {
        self.atoms.iter().fold((0, 0), |(t, h), a| match a {
            Atom::Shift { t: tt, h: hh } => (t + tt, h + hh),
            _ => (t, h),
        })
    }

    pub fn uses_twist(&self) -> bool {
        self.atoms.iter().any(|a| matches!(a, Atom::Twist { .. }))
    }

    /// Moves every twist to the far left, re-indexing the projective atoms it
    /// crosses. The result is isomorphic (not equal) to `self`.
    pub fn normalize(&self, d: usize) -> Self {
        let c = self.canonical();
        let (t, h) = c.total_shift();
        let mut rot = 0i64;
        let mut flip = false;
        let mut projs = vec![];
        // scan right to left: atoms to the right of a twist are applied first
        for a in c.atoms.iter().rev() {
            match *a {
                Atom::Twist { rot: r, flip: f } => {
                    rot += r;
                    flip ^= f;
                }
                Atom::Proj { a, b } => {
                    // P(a,b) o Tau^rot = Tau^rot o P(a - rot, b - rot)
                    let m = |x: usize| (x as i64 - rot).rem_euclid(d as i64) as usize;
                    projs.push(Atom::Proj { a: m(a), b: m(b) });
                }
                Atom::Shift { .. } => {}
            }
        }
        projs.reverse();
        let mut atoms = vec![Atom::Shift { t, h }, Atom::Twist { rot, flip }];
        atoms.extend(projs);
        FunctorWord { atoms }.canonical()
    }

    pub fn apply_obj(&self, m: &ProjObject) -> Result<ProjObject> {
        let mut cur = m.clone();
        for a in self.atoms.iter().rev() {
            cur = apply_atom_obj(*a, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_mor(&self, f: &ModMorphism) -> Result<ModMorphism> {
        let mut cur = f.clone();
        for a in self.atoms.iter().rev() {
            cur = apply_atom_mor(*a, &cur)?;
        }
        Ok(cur)
    }

    /// Parses words such as `"B1 B2"`, `"P(1,2)<3> T^-1 <1>[2]"`, `"S T"` (`S`
    /// the sign automorphism, `T` the rotation); `"id"` is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse {
            pos: 0,
            msg: format!("bad functor atom {t:?}"),
        };
        let mut atoms = vec![];
        for tok in s.split_whitespace() {
            if tok == "id" {
                continue;
            }
            let (head, dec) = match tok.find(['<', '[']) {
                Some(p) => (&tok[..p], &tok[p..]),
                None => (tok, ""),
            };
            match head {
                "" => {}
                "S" => atoms.push(Atom::Twist { rot: 0, flip: true }),
                "T" => atoms.push(Atom::Twist { rot: 1, flip: false }),
                _ if head.starts_with("T^") => {
                    let r: i64 = head[2..].parse().map_err(|_| bad(tok))?;
                    atoms.push(Atom::Twist { rot: r, flip: false });
                }
                _ if head.starts_with('B') => {
                    let i: usize = head[1..].parse().map_err(|_| bad(tok))?;
                    atoms.extend(FunctorWord::b(i).atoms);
                }
                _ if head.starts_with("P(") && head.ends_with(')') => {
                    let (a, b) = head[2..head.len() - 1].split_once(',').ok_or_else(|| bad(tok))?;
                    atoms.push(Atom::Proj {
                        a: a.trim().parse().map_err(|_| bad(tok))?,
                        b: b.trim().parse().map_err(|_| bad(tok))?,
                    });
                }
                _ => return Err(bad(tok)),
            }
            let mut dec = dec;
            while !dec.is_empty() {
                if let Some(r) = dec.strip_prefix('<') {
                    let (n, rest) = r.split_once('>').ok_or_else(|| bad(tok))?;
                    atoms.push(Atom::Shift { t: n.parse().map_err(|_| bad(tok))?, h: 0 });
                    dec = rest;
                } else if let Some(r) = dec.strip_prefix('[') {
                    let (n, rest) = r.split_once(']').ok_or_else(|| bad(tok))?;
                    atoms.push(Atom::Shift { t: 0, h: n.parse().map_err(|_| bad(tok))? });
                    dec = rest;
                } else {
                    return Err(bad(tok));
                }
            }
        }
        Ok(FunctorWord { atoms }.canonical())
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| match *a {
                Atom::Proj { a, b } => format!("P({a},{b})"),
                Atom::Shift { t, h } => format!("<{t}>[{h}]"),
                Atom::Twist { rot, flip } => match (rot, flip) {
                    (0, true) => "S".into(),
                    (r, false) => format!("T^{r}"),
                    (r, true) => format!("T^{r} S"),
                },
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn twist_vertex(d: usize, v: usize, rot: i64) -> usize {
    (v as i64 + rot).rem_euclid(d as i64) as usize
}

fn require_twistable(alg: ZigzagAlgebra, rot: i64) -> Result<()> {
    if rot != 0 && alg.flavor() == ZigzagFlavor::Finite {
        return Err(Error::FlavorMismatch("twists need the affine algebra".into()));
    }
    Ok(())
}

fn apply_atom_obj(a: Atom, m: &ProjObject) -> Result<ProjObject> {
    let alg = m.alg;
    let mut out = vec![];
    match a {
        Atom::Shift { t, h } => return Ok(m.shifted(t, h)),
        Atom::Twist { rot, .. } => {
            require_twistable(alg, rot)?;
            for s in &m.summands {
                out.push(Summand {
                    vertex: twist_vertex(alg.rank(), s.vertex, rot),
                    ..*s
                });
            }
        }
        Atom::Proj { a, b } => {
            check_vertex(alg, a)?;
            check_vertex(alg, b)?;
            for s in &m.summands {
                for y in alg.paths(b, s.vertex) {
                    out.push(Summand {
                        vertex: a,
                        shift: s.shift - alg.degree(y),
                        tag: s.tag,
                    });
                }
            }
        }
    }
    Ok(ProjObject { alg, summands: out })
}

fn check_vertex(alg: ZigzagAlgebra, v: usize) -> Result<()> {
    if !alg.has_vertex(v) {
        return Err(Error::IndexOutOfRange {
            index: v as i64,
            what: "vertices of the zigzag algebra".into(),
        });
    }
    Ok(())
}

fn apply_atom_mor(a: Atom, f: &ModMorphism) -> Result<ModMorphism> {
    let alg = f.alg();
    let src = apply_atom_obj(a, &f.src)?;
    let tgt = apply_atom_obj(a, &f.tgt)?;
    let mut out = ModMorphism::zero(src, tgt);
    match a {
        Atom::Shift { .. } => {
            out.cols = f.cols.clone();
        }
        Atom::Twist { rot, flip } => {
            for (r, c, x) in f.entries() {
                out.add_entry(r, c, &alg.twist(rot, flip, x)?);
            }
        }
        Atom::Proj { a, b } => {
            let offs = |obj: &ProjObject| {
                let mut v = vec![];
                let mut o = 0;
                for s in &obj.summands {
                    v.push(o);
                    o += alg.paths(b, s.vertex).len();
                }
                v
            };
            let (so, to) = (offs(&f.src), offs(&f.tgt));
            let ea = ZigzagElement::basis(alg.e(a));
            for (c, col) in f.cols.iter().enumerate() {
                let ys = alg.paths(b, f.src.summands[c].vertex);
                for (yi, &y) in ys.iter().enumerate() {
                    let ye = ZigzagElement::basis(y);
                    for (r, x) in col {
                        let zs = alg.paths(b, f.tgt.summands[*r].vertex);
                        let p = alg.mul(&ye, x);
                        for (zi, &z) in zs.iter().enumerate() {
                            let k = p.coeff(z);
                            if !k.is_zero() {
                                out.add_entry(to[*r] + zi, so[c] + yi, &ea.scale(&k));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Natural transformation between functor words, given by its components on
/// the indecomposable projectives `Ze_k` (one per vertex). Components are
/// degree-zero maps `F(Ze_k) -> G(Ze_k)`; degrees are absorbed into shifts of
/// the target word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub alg: ZigzagAlgebra,
    pub src: FunctorWord,
    pub tgt: FunctorWord,
    pub comps: BTreeMap<usize, ModMorphism>,
}

impl NatTrans {
    /// Builds a transformation from a component function; the closure gets the
    /// vertex and the two objects and returns the matrix.
    pub fn from_fn(
        alg: ZigzagAlgebra,
        src: FunctorWord,
        tgt: FunctorWord,
        mut f: impl FnMut(usize, &ProjObject, &ProjObject) -> ModMorphism,
    ) -> Result<Self> {
        let (src, tgt) = (src.canonical(), tgt.canonical());
        let mut comps = BTreeMap::new();
        for k in alg.vertices() {
            let obj = ProjObject::indecomposable(alg, k, 0)?;
            let s = src.apply_obj(&obj)?;
            let t = tgt.apply_obj(&obj)?;
            let m = f(k, &s, &t);
            debug_assert_eq!(m.src, s);
            debug_assert_eq!(m.tgt, t);
            comps.insert(k, m);
        }
        Ok(NatTrans { alg, src, tgt, comps })
    }

    pub fn identity(alg: ZigzagAlgebra, w: &FunctorWord) -> Result<Self> {
        Self::from_fn(alg, w.clone(), w.clone(), |_, s, _| ModMorphism::identity(s))
    }

    pub fn zero(alg: ZigzagAlgebra, src: &FunctorWord, tgt: &FunctorWord) -> Result<Self> {
        Self::from_fn(alg, src.clone(), tgt.clone(), |_, s, t| ModMorphism::zero(s.clone(), t.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    fn check_same_ends(&self, o: &Self) -> Result<()> {
        if self.src != o.src || self.tgt != o.tgt {
            return Err(Error::Inconsistent(format!(
                "natural transformations {} -> {} and {} -> {} are not parallel",
                self.src, self.tgt, o.src, o.tgt
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_ends(o)?;
        let mut out = self.clone();
        for (k, m) in out.comps.iter_mut() {
            *m = m.add(&o.comps[k]);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = self.clone();
        for m in out.comps.values_mut() {
            *m = m.scale(s);
        }
        out
    }

    /// Vertical composite `self o f`.
    pub fn after(&self, f: &Self) -> Result<Self> {
        if f.tgt != self.src {
            return Err(Error::Inconsistent(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.tgt, f.src, f.tgt
            )));
        }
        let comps = f
            .comps
            .iter()
            .map(|(k, m)| (*k, self.comps[k].after(m)))
            .collect();
        Ok(NatTrans {
            alg: self.alg,
            src: f.src.clone(),
            tgt: self.tgt.clone(),
            comps,
        })
    }

    /// Component at an arbitrary object: block diagonal over its summands.
    pub fn at(&self, obj: &ProjObject) -> Result<ModMorphism> {
        let parts: Vec<ModMorphism> = obj
            .summands
            .iter()
            .map(|s| self.comps[&s.vertex].shifted(s.shift, s.tag))
            .collect();
        let mut m = ModMorphism::block_diag(&parts, self.alg);
        // objects of the blocks already agree with F(obj), G(obj)
        m.src = self.src.apply_obj(obj)?;
        m.tgt = self.tgt.apply_obj(obj)?;
        Ok(m)
    }

    /// Horizontal composite `self (x) beta : F o G -> F' o G'`, with `self`
    /// acting on the outer functor.
    pub fn hcomp(&self, beta: &Self) -> Result<Self> {
        let src = self.src.then_after(&beta.src);
        let tgt = self.tgt.then_after(&beta.tgt);
        let mut comps = BTreeMap::new();
        for (k, b) in &beta.comps {
            let fb = self.src.apply_mor(b)?;
            let a = self.at(&b.tgt)?;
            comps.insert(*k, a.after(&fb));
        }
        Ok(NatTrans {
            alg: self.alg,
            src,
            tgt,
            comps,
        })
    }

    /// `id_w (x) self`.
    pub fn whisker_left(&self, w: &FunctorWord) -> Result<Self> {
        NatTrans::identity(self.alg, w)?.hcomp(self)
    }

    /// `self (x) id_w`.
    pub fn whisker_right(&self, w: &FunctorWord) -> Result<Self> {
        self.hcomp(&NatTrans::identity(self.alg, w)?)
    }

    /// Same components, both words shifted by `<t>[h]`.
    pub fn shifted(&self, t: i32, h: i32) -> Self {
        let sh = FunctorWord::atom(Atom::Shift { t, h });
        NatTrans {
            alg: self.alg,
            src: sh.then_after(&self.src),
            tgt: sh.then_after(&self.tgt),
            comps: self
                .comps
                .iter()
                .map(|(k, m)| (*k, m.shifted(t, h)))
                .collect(),
        }
    }

    /// Replaces the target word by `<t>` of it (same components), turning a
    /// transformation of degree `t` into a degree-zero one.
    pub fn regraded_target(&self, t: i32) -> Self {
        let sh = FunctorWord::shift(t);
        NatTrans {
            alg: self.alg,
            src: self.src.clone(),
            tgt: sh.then_after(&self.tgt),
            comps: self
                .comps
                .iter()
                .map(|(k, m)| (*k, m.with_objects(m.src.clone(), m.tgt.shifted(t, 0))))
                .collect(),
        }
    }

    /// Naturality against right multiplication by every arrow.
    pub fn is_natural(&self) -> Result<bool> {
        let alg = self.alg;
        for a in alg.vertices() {
            for b in alg.vertices() {
                for x in alg.paths(a, b) {
                    if alg.degree(x) != 1 {
                        continue;
                    }
                    let f = arrow_map(alg, x)?;
                    let lhs = self.at(&f.tgt)?.after(&self.src.apply_mor(&f)?);
                    let rhs = self.tgt.apply_mor(&f)?.after(&self.comps[&a]);
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn check_degrees(&self) -> bool {
        self.comps.values().all(|m| m.check_degrees(0))
    }
}

/// Right multiplication `Ze_a -> Ze_b <deg x>` by a basis path `x` in `e_a Z e_b`.
pub fn arrow_map(alg: ZigzagAlgebra, x: usize) -> Result<ModMorphism> {
    let a = alg.target(x);
    let b = alg.source(x);
    let src = ProjObject::indecomposable(alg, a, 0)?;
    let tgt = ProjObject::indecomposable(alg, b, alg.degree(x))?;
    let mut m = ModMorphism::zero(src, tgt);
    m.add_entry(0, 0, &ZigzagElement::basis(x));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(d: usize) -> ZigzagAlgebra {
        ZigzagAlgebra::finite(d).unwrap()
    }

    fn aff(d: usize) -> ZigzagAlgebra {
        ZigzagAlgebra::affine(d).unwrap()
    }

    fn ze(alg: ZigzagAlgebra, v: usize) -> ProjObject {
        ProjObject::indecomposable(alg, v, 0).unwrap()
    }

    #[test]
    fn b_on_objects() {
        let z = fin(4);
        let b1 = FunctorWord::b(1);
        assert_eq!(b1.apply_obj(&ze(z, 1)).unwrap().to_string(), "Ze_1<1>[0] + Ze_1<-1>[0]");
        assert_eq!(b1.apply_obj(&ze(z, 2)).unwrap().to_string(), "Ze_1<0>[0]");
        assert!(b1.apply_obj(&ze(z, 3)).unwrap().is_empty());
    }

    #[test]
    fn object_text_round_trip() {
        let z = fin(4);
        let o = ProjObject::parse(z, "Ze_1<1>[0] + Ze_3<-2>[1]").unwrap();
        assert_eq!(ProjObject::parse(z, &o.to_string()).unwrap(), o);
        assert!(ProjObject::parse(z, "Ze_0<0>").is_err());
    }

    #[test]
    fn twist_on_arrow_maps() {
        let z = aff(4);
        let f = arrow_map(z, z.arrow(1, 2).unwrap()).unwrap();
        let g = FunctorWord::twist(1, false).apply_mor(&f).unwrap();
        assert_eq!(g, arrow_map(z, z.arrow(2, 3).unwrap()).unwrap());
    }

    #[test]
    fn functoriality() {
        let z = fin(4);
        // Ze_2 -> Ze_1<1> -> Ze_2<2>
        let f = arrow_map(z, z.arrow(2, 1).unwrap()).unwrap();
        let g = arrow_map(z, z.arrow(1, 2).unwrap()).unwrap().shifted(1, 0);
        let gf = g.after(&f);
        for w in ["B1", "B2", "B1 B2", "B2 B1 B2"] {
            let w = FunctorWord::parse(w).unwrap();
            let lhs = w.apply_mor(&gf).unwrap();
            let rhs = w.apply_mor(&g).unwrap().after(&w.apply_mor(&f).unwrap());
            assert_eq!(lhs, rhs);
            assert!(lhs.check_degrees(0));
            let id = ModMorphism::identity(&ze(z, 2));
            assert_eq!(w.apply_mor(&id).unwrap(), ModMorphism::identity(&w.apply_obj(&ze(z, 2)).unwrap()));
        }
    }

    #[test]
    fn normalize_examples() {
        let d = 4;
        let t = FunctorWord::twist(1, false);
        let lhs = t.then_after(&FunctorWord::b(1)).normalize(d);
        let rhs = FunctorWord::b(2).then_after(&t).normalize(d);
        assert_eq!(lhs, rhs);
        let tt = t.then_after(&FunctorWord::twist(-1, false));
        assert_eq!(tt, FunctorWord::id());
        let w = FunctorWord::b(1).then_after(&FunctorWord::shift(3));
        assert_eq!(w, FunctorWord::shift(3).then_after(&FunctorWord::b(1)));
    }

    #[test]
    fn parse_words() {
        let w = FunctorWord::parse("B1 T^-1 <2>[1]").unwrap();
        assert_eq!(
            w.atoms,
            vec![
                Atom::Shift { t: 3, h: 1 },
                Atom::Proj { a: 1, b: 1 },
                Atom::Twist { rot: -1, flip: false }
            ]
        );
        assert!(FunctorWord::parse("Q3").is_err());
    }
}
