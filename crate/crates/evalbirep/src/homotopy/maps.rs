//! Linear algebra on spaces of maps between complexes: chain maps, homotopies,
//! naturality constraints and Hom classes in the homotopy category.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homotopy::complex::{ChainMap, Complex, Homotopy};
use crate::linalg::{Matrix, SparseEchelon, SparseVec};
use crate::projcat::ModMorphism;
use crate::scalars::{rat, Rat};
use crate::zigzag::{ZigzagAlgebra, ZigzagElement};

/// One scalar unknown: basis path `b` in entry `(row, col)` of the component
/// out of degree `k` of block `blk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub blk: usize,
    pub k: i32,
    pub row: usize,
    pub col: usize,
    pub b: usize,
}

/// All graded maps of bidegree `(t, n)` from `src[i]` to `tgt[i]`, for a
/// family of pairs of complexes (one pair per block).
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub alg: ZigzagAlgebra,
    pub t: i32,
    pub n: i32,
    pub blocks: Vec<(Complex, Complex)>,
    slots: Vec<Slot>,
    index: HashMap<Slot, usize>,
}

fn sign_of(n: i32) -> Rat {
    if n.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Rows of a matrix: `rows[r]` lists `(col, entry)`.
fn row_lists(m: &ModMorphism) -> Vec<Vec<(usize, ZigzagElement)>> {
    let mut rows = vec![vec![]; m.rows()];
    for (r, c, x) in m.entries() {
        rows[r].push((c, x.clone()));
    }
    rows
}

/// Sparse row builder keyed by equation labels.
#[derive(Default)]
struct Equations<K: std::hash::Hash + Eq> {
    rows: HashMap<K, BTreeMap<usize, Rat>>,
}

impl<K: std::hash::Hash + Eq + Ord + Clone> Equations<K> {
    fn add(&mut self, key: K, var: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let row = self.rows.entry(key).or_default();
        let e = row.entry(var).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            row.remove(&var);
        }
    }

    fn into_rows(self) -> Vec<SparseVec<Rat>> {
        let mut keyed: Vec<(K, BTreeMap<usize, Rat>)> = self.rows.into_iter().collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed
            .into_iter()
            .map(|(_, r)| r.into_iter().collect::<Vec<_>>())
            .filter(|r: &SparseVec<Rat>| !r.is_empty())
            .collect()
    }
}

impl MapSpace {
    pub fn new(alg: ZigzagAlgebra, blocks: Vec<(Complex, Complex)>, t: i32, n: i32) -> Self {
        let mut slots = vec![];
        for (blk, (c, d)) in blocks.iter().enumerate() {
            for (k, src) in c.terms() {
                let Some(tgt) = d.term_ref(k + n) else { continue };
                for (col, sc) in src.summands.iter().enumerate() {
                    for (row, sr) in tgt.summands.iter().enumerate() {
                        let deg = sr.shift + t - sc.shift;
                        for b in alg.paths(sc.vertex, sr.vertex) {
                            if alg.degree(b) == deg {
                                slots.push(Slot { blk, k, row, col, b });
                            }
                        }
                    }
                }
            }
        }
        let index = slots.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        MapSpace {
            alg,
            t,
            n,
            blocks,
            slots,
            index,
        }
    }

    pub fn single(c: &Complex, d: &Complex, t: i32, n: i32) -> Self {
        Self::new(c.alg, vec![(c.clone(), d.clone())], t, n)
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Same blocks, bidegree `(t, n - 1)`: the homotopies for this space.
    pub fn homotopy_space(&self) -> Self {
        Self::new(self.alg, self.blocks.clone(), self.t, self.n - 1)
    }

    fn zero_comps(&self, blk: usize) -> BTreeMap<i32, ModMorphism> {
        let (c, d) = &self.blocks[blk];
        c.terms()
            .filter_map(|(k, o)| {
                d.term_ref(k + self.n)
                    .map(|t| (k, ModMorphism::zero(o.clone(), t.shifted(self.t, 0))))
            })
            .collect()
    }

    /// Components for every block from a coordinate vector.
    pub fn to_comps(&self, v: &SparseVec<Rat>) -> Vec<BTreeMap<i32, ModMorphism>> {
        let mut out: Vec<_> = (0..self.blocks.len()).map(|b| self.zero_comps(b)).collect();
        for (i, c) in v {
            let s = self.slots[*i];
            let m = out[s.blk].get_mut(&s.k).expect("slot degree");
            m.add_entry(s.row, s.col, &ZigzagElement::term(s.b, c.clone()));
        }
        out
    }

    pub fn to_chain_maps(&self, v: &SparseVec<Rat>) -> Vec<ChainMap> {
        self.to_comps(v)
            .into_iter()
            .map(|comps| ChainMap { t: self.t, n: self.n, comps })
            .collect()
    }

    pub fn to_homotopies(&self, v: &SparseVec<Rat>) -> Vec<Homotopy> {
        self.to_comps(v).into_iter().map(|comps| Homotopy { comps }).collect()
    }

    /// Coordinates of per-block components; `None` if some entry has no slot.
    pub fn coords(&self, comps: &[&BTreeMap<i32, ModMorphism>]) -> Option<SparseVec<Rat>> {
        let mut out = BTreeMap::new();
        for (blk, cm) in comps.iter().enumerate() {
            for (k, m) in cm.iter() {
                for (r, c, x) in m.entries() {
                    for (b, coef) in x.terms() {
                        let i = *self.index.get(&Slot { blk, k: *k, row: r, col: c, b })?;
                        out.insert(i, coef.clone());
                    }
                }
            }
        }
        Some(out.into_iter().filter(|(_, c): &(usize, Rat)| !c.is_zero()).collect())
    }

    /// Rows of `(-1)^n d_D f - f d_C = 0` over all blocks.
    pub fn chain_equations(&self) -> Vec<SparseVec<Rat>> {
        let alg = self.alg;
        let sgn = sign_of(self.n);
        let mut eqs: Equations<(usize, i32, usize, usize, usize)> = Equations::default();
        let dc_rows: Vec<BTreeMap<i32, Vec<Vec<(usize, ZigzagElement)>>>> = self
            .blocks
            .iter()
            .map(|(c, _)| c.terms().filter_map(|(k, _)| c.diff_ref(k).map(|m| (k, row_lists(m)))).collect())
            .collect();
        for (i, s) in self.slots.iter().enumerate() {
            let (_, d) = &self.blocks[s.blk];
            let be = ZigzagElement::basis(s.b);
            if let Some(dd) = d.diff_ref(s.k + self.n) {
                for (r2, y) in dd.col(s.row) {
                    for (b2, c2) in alg.mul(&be, y).terms() {
                        eqs.add((s.blk, s.k, *r2, s.col, b2), i, c2 * &sgn);
                    }
                }
            }
            if let Some(rows) = dc_rows[s.blk].get(&(s.k - 1)) {
                for (c0, x) in &rows[s.col] {
                    for (b2, c2) in alg.mul(x, &be).terms() {
                        eqs.add((s.blk, s.k - 1, s.row, *c0, b2), i, -c2.clone());
                    }
                }
            }
        }
        eqs.into_rows()
    }

    /// Rows of the naturality constraints `f_b o F(x) = G(x) o f_a` for each
    /// given arrow: `(block a, block b, F(x) per degree, G(x) per degree)`.
    pub fn naturality_equations(&self, arrows: &[ArrowAction]) -> Vec<SparseVec<Rat>> {
        let alg = self.alg;
        let mut eqs: Equations<(usize, i32, usize, usize, usize)> = Equations::default();
        for (ai, ar) in arrows.iter().enumerate() {
            let src_rows: BTreeMap<i32, Vec<Vec<(usize, ZigzagElement)>>> =
                ar.on_src.iter().map(|(k, m)| (*k, row_lists(m))).collect();
            for (i, s) in self.slots.iter().enumerate() {
                let be = ZigzagElement::basis(s.b);
                if s.blk == ar.to {
                    // f_b^k o F(x)^k : rows of F(x) at row s.col
                    if let Some(rows) = src_rows.get(&s.k) {
                        for (c0, x) in &rows[s.col] {
                            for (b2, c2) in alg.mul(x, &be).terms() {
                                eqs.add((ai, s.k, s.row, *c0, b2), i, c2.clone());
                            }
                        }
                    }
                }
                if s.blk == ar.from {
                    if let Some(g) = ar.on_tgt.get(&(s.k + self.n)) {
                        for (r2, y) in g.col(s.row) {
                            for (b2, c2) in alg.mul(&be, y).terms() {
                                eqs.add((ai, s.k, *r2, s.col, b2), i, -c2.clone());
                            }
                        }
                    }
                }
            }
        }
        eqs.into_rows()
    }

    /// For every slot of `hs` (a homotopy space over the same blocks, bidegree
    /// `(t, n - 1)`), the coordinates of `d h + (-1)^n h d` in `self`.
    pub fn boundary_images(&self, hs: &MapSpace) -> Vec<SparseVec<Rat>> {
        assert_eq!(hs.n, self.n - 1);
        let alg = self.alg;
        let sgn = sign_of(self.n);
        let dc_rows: Vec<BTreeMap<i32, Vec<Vec<(usize, ZigzagElement)>>>> = self
            .blocks
            .iter()
            .map(|(c, _)| c.terms().filter_map(|(k, _)| c.diff_ref(k).map(|m| (k, row_lists(m)))).collect())
            .collect();
        let mut out = vec![];
        for s in &hs.slots {
            let (_, d) = &self.blocks[s.blk];
            let be = ZigzagElement::basis(s.b);
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            let mut put = |slot: Slot, c: Rat| {
                let i = *self.index.get(&slot).expect("boundary lands in a slot");
                let e = acc.entry(i).or_insert_with(Rat::zero);
                *e += c;
            };
            if let Some(dd) = d.diff_ref(s.k + hs.n) {
                for (r2, y) in dd.col(s.row) {
                    for (b2, c2) in alg.mul(&be, y).terms() {
                        put(Slot { blk: s.blk, k: s.k, row: *r2, col: s.col, b: b2 }, c2.clone());
                    }
                }
            }
            if let Some(rows) = dc_rows[s.blk].get(&(s.k - 1)) {
                for (c0, x) in &rows[s.col] {
                    for (b2, c2) in alg.mul(x, &be).terms() {
                        put(Slot { blk: s.blk, k: s.k - 1, row: s.row, col: *c0, b: b2 }, c2 * &sgn);
                    }
                }
            }
            out.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        out
    }
}

/// Action of right multiplication by one arrow on the two families of a
/// [`MapSpace`]: chain maps `C_from -> C_to` and `D_from -> D_to`.
#[derive(Clone, Debug)]
pub struct ArrowAction {
    pub from: usize,
    pub to: usize,
    pub on_src: BTreeMap<i32, ModMorphism>,
    pub on_tgt: BTreeMap<i32, ModMorphism>,
}

/// Linear combination of sparse vectors.
pub fn combine(vs: &[SparseVec<Rat>], coeffs: &[Rat]) -> SparseVec<Rat> {
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (v, c) in vs.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v {
            let e = acc.entry(*i).or_insert_with(Rat::zero);
            *e += x * c;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Basis of the solution space of homogeneous equations in `n` unknowns.
pub fn solve_homogeneous(eqs: &[SparseVec<Rat>], n: usize) -> Vec<SparseVec<Rat>> {
    let mut e = SparseEchelon::new();
    for r in eqs {
        e.insert(r);
    }
    e.nullspace(n)
}

/// Coefficients `c` with `target = sum c_i vs[i]` modulo `modulo`, if any.
pub fn express(vs: &[SparseVec<Rat>], modulo: &SparseEchelon<Rat>, target: &SparseVec<Rat>) -> Option<Vec<Rat>> {
    let m = vs.len();
    let red: Vec<SparseVec<Rat>> = vs.iter().map(|v| modulo.reduce(v)).collect();
    let t = modulo.reduce(target);
    let mut rows: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
    for (i, v) in red.iter().enumerate() {
        for (j, x) in v {
            rows.entry(*j).or_default().push((i, x.clone()));
        }
    }
    for (j, x) in &t {
        rows.entry(*j).or_default().push((m, -x.clone()));
    }
    let mut e = SparseEchelon::new();
    for (_, r) in rows {
        e.insert(&r);
    }
    e.solve_augmented(m)
}

/// Basis of `Hom_K(C, D<t>[n])` (homotopy classes of chain maps).
#[derive(Clone, Debug)]
pub struct HomClasses {
    pub space: MapSpace,
    pub reps: Vec<SparseVec<Rat>>,
    boundaries: SparseEchelon<Rat>,
}

impl HomClasses {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> ChainMap {
        self.space.to_chain_maps(&self.reps[i]).remove(0)
    }

    pub fn reps(&self) -> Vec<ChainMap> {
        (0..self.dim()).map(|i| self.rep(i)).collect()
    }

    pub fn vector(&self, f: &ChainMap) -> Result<SparseVec<Rat>> {
        self.space
            .coords(&[&f.comps])
            .ok_or_else(|| Error::Inconsistent("map has entries outside the Hom space".into()))
    }

    /// Coordinates of the class of `f` in the basis of representatives.
    pub fn class_of(&self, f: &ChainMap) -> Result<Vec<Rat>> {
        let v = self.vector(f)?;
        express(&self.reps, &self.boundaries, &v)
            .ok_or_else(|| Error::Inconsistent("map is not a cycle in this Hom space".into()))
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        let v = self.vector(f)?;
        Ok(self.boundaries.reduce(&v).is_empty())
    }
}

/// Homotopy classes of chain maps `C -> D<t>[n]`.
pub fn hom_classes(c: &Complex, d: &Complex, t: i32, n: i32) -> HomClasses {
    let space = MapSpace::single(c, d, t, n);
    let cycles = solve_homogeneous(&space.chain_equations(), space.dim());
    let hs = space.homotopy_space();
    let mut boundaries = SparseEchelon::new();
    for b in space.boundary_images(&hs) {
        boundaries.insert(&b);
    }
    let mut span = boundaries.clone();
    let mut reps = vec![];
    for z in cycles {
        if span.insert(&z).is_some() {
            reps.push(z);
        }
    }
    HomClasses { space, reps, boundaries }
}

/// Outcome of an isomorphism test in the homotopy category.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(ChainMap),
    NotIsomorphic(String),
    Undetermined,
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoOutcome::Isomorphic(_) => "isomorphic",
            IsoOutcome::NotIsomorphic(_) => "not-isomorphic",
            IsoOutcome::Undetermined => "undetermined",
        }
    }
}

/// Whether a degree-zero chain map between minimal complexes is invertible:
/// its idempotent part must be invertible on each `(vertex, shift)` block.
pub fn is_invertible(f: &ChainMap, c: &Complex, d: &Complex) -> bool {
    let alg = c.alg;
    for (k, src) in c.terms() {
        let Some(tgt) = d.term_ref(k) else { return false };
        let mut groups: BTreeMap<(usize, i32), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, s) in src.summands.iter().enumerate() {
            groups.entry((s.vertex, s.shift)).or_default().1.push(i);
        }
        for (i, s) in tgt.summands.iter().enumerate() {
            groups.entry((s.vertex, s.shift)).or_default().0.push(i);
        }
        let Some(m) = f.comps.get(&k) else { return false };
        for ((v, _), (rows, cols)) in groups {
            if rows.len() != cols.len() {
                return false;
            }
            let mut q = Matrix::zeros(rows.len(), cols.len());
            for (a, &r) in rows.iter().enumerate() {
                for (b, &cc) in cols.iter().enumerate() {
                    q.set(a, b, m.entry(r, cc).coeff(alg.e(v)));
                }
            }
            if q.rank() != rows.len() {
                return false;
            }
        }
    }
    d.terms().all(|(k, _)| c.term_ref(k).is_some())
}

const ISO_SEED: u64 = 0x5eed_1505;
const ISO_TRIES: usize = 8;

/// Isomorphism test for minimal complexes via a random degree-zero chain map.
pub fn iso_test(c: &Complex, d: &Complex) -> Result<IsoOutcome> {
    if !c.is_minimal() || !d.is_minimal() {
        return Err(Error::NonMinimal);
    }
    if c.summand_multiset() != d.summand_multiset() {
        return Ok(IsoOutcome::NotIsomorphic("different summands".into()));
    }
    if c.is_zero() {
        return Ok(IsoOutcome::Isomorphic(ChainMap::zero(c, d, 0, 0)));
    }
    let hc = hom_classes(c, d, 0, 0);
    if hc.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("no degree-zero maps".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..ISO_TRIES {
        let coeffs: Vec<Rat> = (0..hc.dim()).map(|_| rat(rng.gen_range(-9..=9))).collect();
        let f = hc.space.to_chain_maps(&combine(&hc.reps, &coeffs)).remove(0);
        if is_invertible(&f, c, d) {
            return Ok(IsoOutcome::Isomorphic(f));
        }
    }
    Ok(IsoOutcome::Undetermined)
}
