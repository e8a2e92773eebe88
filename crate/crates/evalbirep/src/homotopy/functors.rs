//! Complexes of functor words (Rouquier complexes and their tensor products),
//! their evaluation on complexes of projectives, and natural chain maps.

use std::collections::BTreeMap;
use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::homotopy::complex::{ChainMap, Complex};
use crate::homotopy::maps::{solve_homogeneous, ArrowAction, MapSpace};
use crate::linalg::SparseEchelon;
use crate::projcat::{arrow_map, FunctorWord, ModMorphism, NatTrans, ProjObject};
use crate::scalars::Rat;
use crate::twocells::{dot_down, dot_up};
use crate::zigzag::ZigzagAlgebra;

/// One term of a functor complex; labels record where a term of a tensor
/// product comes from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FTerm {
    pub label: Vec<(i32, usize)>,
    pub word: FunctorWord,
}

/// Complex of functor words; `diffs[(k, r, c)]` maps term `c` of degree `k`
/// to term `r` of degree `k + 1`.
#[derive(Clone, Debug)]
pub struct FunctorComplex {
    pub alg: ZigzagAlgebra,
    pub terms: BTreeMap<i32, Vec<FTerm>>,
    pub diffs: BTreeMap<(i32, usize, usize), NatTrans>,
}

impl FunctorComplex {
    pub fn identity(alg: ZigzagAlgebra) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            0,
            vec![FTerm {
                label: vec![],
                word: FunctorWord::id(),
            }],
        );
        FunctorComplex {
            alg,
            terms,
            diffs: BTreeMap::new(),
        }
    }

    /// A single word in degree 0.
    pub fn word(alg: ZigzagAlgebra, w: FunctorWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, vec![FTerm { label: vec![(0, 0)], word: w }]);
        FunctorComplex {
            alg,
            terms,
            diffs: BTreeMap::new(),
        }
    }

    /// Two-term complex `src -> tgt` with `src` in degree `k`.
    pub fn cone(alg: ZigzagAlgebra, k: i32, d: NatTrans) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(k, vec![FTerm { label: vec![(k, 0)], word: d.src.clone() }]);
        terms.insert(k + 1, vec![FTerm { label: vec![(k + 1, 0)], word: d.tgt.clone() }]);
        let mut diffs = BTreeMap::new();
        diffs.insert((k, 0, 0), d);
        FunctorComplex { alg, terms, diffs }
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(|v| v.len()).sum()
    }

    pub fn terms_at(&self, k: i32) -> &[FTerm] {
        self.terms.get(&k).map_or(&[], |v| v.as_slice())
    }

    /// Internal shift `<t>` of every word, homological shift `[n]`.
    pub fn shifted(&self, t: i32, n: i32) -> Self {
        let sh = FunctorWord::shift(t);
        FunctorComplex {
            alg: self.alg,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let v = v
                        .iter()
                        .map(|ft| FTerm {
                            label: ft.label.clone(),
                            word: sh.then_after(&ft.word),
                        })
                        .collect();
                    (k - n, v)
                })
                .collect(),
            diffs: self
                .diffs
                .iter()
                .map(|((k, r, c), m)| ((k - n, *r, *c), m.shifted(t, 0)))
                .collect(),
        }
    }

    /// `self (x) o` (apply `o` first). Terms of each degree are sorted by label.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        let alg = self.alg;
        let mut raw: BTreeMap<i32, Vec<(FTerm, (i32, usize), (i32, usize))>> = BTreeMap::new();
        for (p, fs) in &self.terms {
            for (a, fa) in fs.iter().enumerate() {
                for (q, gs) in &o.terms {
                    for (b, gb) in gs.iter().enumerate() {
                        let mut label = fa.label.clone();
                        label.extend_from_slice(&gb.label);
                        let word = fa.word.then_after(&gb.word);
                        raw.entry(p + q).or_default().push((FTerm { label, word }, (*p, a), (*q, b)));
                    }
                }
            }
        }
        let mut pos: BTreeMap<((i32, usize), (i32, usize)), usize> = BTreeMap::new();
        let mut terms = BTreeMap::new();
        for (n, mut v) in raw {
            v.sort_by(|x, y| x.0.label.cmp(&y.0.label));
            for (i, (_, fa, gb)) in v.iter().enumerate() {
                pos.insert((*fa, *gb), i);
            }
            terms.insert(n, v.into_iter().map(|x| x.0).collect::<Vec<_>>());
        }
        let mut diffs: BTreeMap<(i32, usize, usize), NatTrans> = BTreeMap::new();
        for (&((p, a), (q, b)), &col) in &pos {
            let fa = &self.terms[&p][a];
            let gb = &o.terms[&q][b];
            for ((kk, r, c), m) in &self.diffs {
                if *kk == p && *c == a {
                    let row = pos[&((p + 1, *r), (q, b))];
                    let nt = m.whisker_right(&gb.word)?;
                    add_diff(&mut diffs, (p + q, row, col), nt)?;
                }
            }
            for ((kk, r, c), m) in &o.diffs {
                if *kk == q && *c == b {
                    let row = pos[&((p, a), (q + 1, *r))];
                    let mut nt = m.whisker_left(&fa.word)?;
                    if p.rem_euclid(2) == 1 {
                        nt = nt.scale(&-Rat::one());
                    }
                    add_diff(&mut diffs, (p + q, row, col), nt)?;
                }
            }
        }
        Ok(FunctorComplex { alg, terms, diffs })
    }

    /// Total complex of `F(C)`: terms `F^p(C^q)` in degree `p + q`, ordered by
    /// `(p, term, q)`.
    pub fn apply(&self, c: &Complex) -> Result<Complex> {
        let alg = self.alg;
        // position of (p, a, q) block: (degree, offset)
        let mut blocks: BTreeMap<(i32, usize, i32), (i32, usize)> = BTreeMap::new();
        let mut terms: BTreeMap<i32, ProjObject> = BTreeMap::new();
        for (p, fs) in &self.terms {
            for (a, fa) in fs.iter().enumerate() {
                for (q, obj) in c.terms() {
                    let img = fa.word.apply_obj(obj)?;
                    let e = terms.entry(p + q).or_insert_with(|| ProjObject::zero(alg));
                    blocks.insert((*p, a, q), (p + q, e.len()));
                    *e = e.direct_sum(&img);
                }
            }
        }
        let mut diffs: BTreeMap<i32, ModMorphism> = BTreeMap::new();
        for (k, o) in &terms {
            if let Some(t) = terms.get(&(k + 1)) {
                diffs.insert(*k, ModMorphism::zero(o.clone(), t.clone()));
            }
        }
        for (&(p, a, q), &(n, off)) in &blocks {
            let obj = c.term(q);
            for ((kk, r, cc), m) in &self.diffs {
                if *kk == p && *cc == a {
                    let (_, roff) = blocks[&(p + 1, *r, q)];
                    let blk = m.at(&obj)?;
                    diffs.get_mut(&n).expect("target term").add_block(roff, off, &blk);
                }
            }
            if let Some(dc) = c.diff_ref(q) {
                let (_, roff) = blocks[&(p, a, q + 1)];
                let mut blk = self.terms[&p][a].word.apply_mor(dc)?;
                if p.rem_euclid(2) == 1 {
                    blk = blk.scale(&-Rat::one());
                }
                diffs.get_mut(&n).expect("target term").add_block(roff, off, &blk);
            }
        }
        Ok(Complex::from_parts_unchecked(alg, terms, diffs))
    }

    /// `F(Ze_k)`.
    pub fn at_vertex(&self, k: usize) -> Result<Complex> {
        self.apply(&Complex::indecomposable(self.alg, k)?)
    }

    /// `d^2 = 0` and naturality of every differential component.
    pub fn validate(&self) -> Result<()> {
        for m in self.diffs.values() {
            if !m.is_natural()? {
                return Err(Error::Inconsistent("differential is not natural".into()));
            }
        }
        for k in self.alg.vertices() {
            self.at_vertex(k)?.validate()?;
        }
        Ok(())
    }

    /// Per-degree action of right multiplication by a path `x` in `e_a Z e_b`,
    /// as a map `F(Ze_a) -> F(Ze_b)<deg x>`.
    pub fn arrow_action(&self, x: usize) -> Result<BTreeMap<i32, ModMorphism>> {
        let f = arrow_map(self.alg, x)?;
        let mut out: BTreeMap<i32, Vec<ModMorphism>> = BTreeMap::new();
        for (p, fs) in &self.terms {
            for fa in fs {
                out.entry(*p).or_default().push(fa.word.apply_mor(&f)?);
            }
        }
        Ok(out
            .into_iter()
            .map(|(k, v)| (k, ModMorphism::block_diag(&v, self.alg)))
            .filter(|(_, m)| m.rows() + m.ncols() > 0)
            .collect())
    }
}

fn add_diff(diffs: &mut BTreeMap<(i32, usize, usize), NatTrans>, key: (i32, usize, usize), nt: NatTrans) -> Result<()> {
    match diffs.get_mut(&key) {
        Some(m) => *m = m.add(&nt)?,
        None => {
            diffs.insert(key, nt);
        }
    }
    Ok(())
}

impl fmt::Display for FunctorComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let ws: Vec<String> = v.iter().map(|t| t.word.to_string()).collect();
                format!("{k}: {}", ws.join(" + "))
            })
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Rouquier complex `T_i = (B_i -> <1>)` with `B_i` in degree 0, or its
/// inverse `(<-1> -> B_i)` with `B_i` in degree 0.
pub fn rouquier(alg: ZigzagAlgebra, i: usize, inverse: bool) -> Result<FunctorComplex> {
    if inverse {
        Ok(FunctorComplex::cone(alg, -1, dot_up(alg, i)?))
    } else {
        Ok(FunctorComplex::cone(alg, 0, dot_down(alg, i)?))
    }
}

/// Tensor product of a list of functor complexes, leftmost outermost.
pub fn tensor_all(alg: ZigzagAlgebra, fs: &[FunctorComplex]) -> Result<FunctorComplex> {
    let mut acc = FunctorComplex::identity(alg);
    for f in fs {
        acc = acc.tensor(f)?;
    }
    Ok(acc)
}

/// Degree-zero natural chain map between functor complexes; `comps[(k, r, c)]`
/// maps term `c` of `F^k` to term `r` of `G^k`.
#[derive(Clone, Debug)]
pub struct NatChainMap {
    pub comps: BTreeMap<(i32, usize, usize), NatTrans>,
}

impl NatChainMap {
    /// Component at a vertex, as a chain map `F(Ze_v) -> G(Ze_v)`.
    pub fn at_vertex(&self, f: &FunctorComplex, g: &FunctorComplex, v: usize) -> Result<ChainMap> {
        let fc = f.at_vertex(v)?;
        let gc = g.at_vertex(v)?;
        let mut out = ChainMap::zero(&fc, &gc, 0, 0);
        let offsets = |cx: &FunctorComplex, k: i32| -> Result<Vec<usize>> {
            let mut o = vec![];
            let mut acc = 0;
            for t in cx.terms_at(k) {
                o.push(acc);
                acc += t.word.apply_obj(&ProjObject::indecomposable(cx.alg, v, 0)?)?.len();
            }
            Ok(o)
        };
        for ((k, r, c), m) in &self.comps {
            let (fo, go) = (offsets(f, *k)?, offsets(g, *k)?);
            let blk = &m.comps[&v];
            if let Some(comp) = out.comps.get_mut(k) {
                comp.add_block(go[*r], fo[*c], blk);
            }
        }
        Ok(out)
    }

    /// `self o f`.
    pub fn after(&self, f: &NatChainMap) -> Result<NatChainMap> {
        let mut comps: BTreeMap<(i32, usize, usize), NatTrans> = BTreeMap::new();
        for ((k, m, c), a) in &f.comps {
            for ((k2, r, m2), b) in &self.comps {
                if k2 == k && m2 == m {
                    add_diff(&mut comps, (*k, *r, *c), b.after(a)?)?;
                }
            }
        }
        Ok(NatChainMap { comps })
    }

    pub fn identity(f: &FunctorComplex) -> Result<NatChainMap> {
        let mut comps = BTreeMap::new();
        for (k, ts) in &f.terms {
            for (i, t) in ts.iter().enumerate() {
                comps.insert((*k, i, i), NatTrans::identity(f.alg, &t.word)?);
            }
        }
        Ok(NatChainMap { comps })
    }

    /// `self (x) id_H : F H -> G H`, positions matched through labels.
    pub fn whisker_right(&self, f: &FunctorComplex, g: &FunctorComplex, h: &FunctorComplex) -> Result<NatChainMap> {
        let fh = f.tensor(h)?;
        let gh = g.tensor(h)?;
        let mut comps = BTreeMap::new();
        for ((k, r, c), a) in &self.comps {
            for (q, hs) in &h.terms {
                for hb in hs {
                    let mut lc = f.terms[k][*c].label.clone();
                    lc.extend_from_slice(&hb.label);
                    let mut lr = g.terms[k][*r].label.clone();
                    lr.extend_from_slice(&hb.label);
                    let col = find_label(&fh, k + q, &lc)?;
                    let row = find_label(&gh, k + q, &lr)?;
                    add_diff(&mut comps, (k + q, row, col), a.whisker_right(&hb.word)?)?;
                }
            }
        }
        Ok(NatChainMap { comps })
    }

    /// `id_H (x) self : H F -> H G`.
    pub fn whisker_left(&self, h: &FunctorComplex, f: &FunctorComplex, g: &FunctorComplex) -> Result<NatChainMap> {
        let hf = h.tensor(f)?;
        let hg = h.tensor(g)?;
        let mut comps = BTreeMap::new();
        for ((k, r, c), a) in &self.comps {
            for (p, hs) in &h.terms {
                for ha in hs {
                    let mut lc = ha.label.clone();
                    lc.extend_from_slice(&f.terms[k][*c].label);
                    let mut lr = ha.label.clone();
                    lr.extend_from_slice(&g.terms[k][*r].label);
                    let col = find_label(&hf, k + p, &lc)?;
                    let row = find_label(&hg, k + p, &lr)?;
                    add_diff(&mut comps, (k + p, row, col), a.whisker_left(&ha.word)?)?;
                }
            }
        }
        Ok(NatChainMap { comps })
    }

    /// Chain map condition at every vertex.
    pub fn is_chain_map(&self, f: &FunctorComplex, g: &FunctorComplex) -> Result<bool> {
        for v in f.alg.vertices() {
            let m = self.at_vertex(f, g, v)?;
            if !m.is_chain_map(&f.at_vertex(v)?, &g.at_vertex(v)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn find_label(f: &FunctorComplex, k: i32, label: &[(i32, usize)]) -> Result<usize> {
    f.terms_at(k)
        .iter()
        .position(|t| t.label == label)
        .ok_or_else(|| Error::Inconsistent(format!("no term labelled {label:?} in degree {k}")))
}

/// Blocks and arrow actions for natural maps `F -> G`.
fn natural_setup(f: &FunctorComplex, g: &FunctorComplex) -> Result<(Vec<usize>, Vec<(Complex, Complex)>, Vec<ArrowAction>)> {
    let alg = f.alg;
    let verts = alg.vertices();
    let mut blocks = vec![];
    for &v in &verts {
        blocks.push((f.at_vertex(v)?, g.at_vertex(v)?));
    }
    let mut arrows = vec![];
    for (ia, &a) in verts.iter().enumerate() {
        for (ib, &b) in verts.iter().enumerate() {
            for x in alg.paths(a, b) {
                if alg.degree(x) == 1 {
                    arrows.push(ArrowAction {
                        from: ia,
                        to: ib,
                        on_src: f.arrow_action(x)?,
                        on_tgt: g.arrow_action(x)?,
                    });
                }
            }
        }
    }
    Ok((verts, blocks, arrows))
}

/// Whether `phi - psi` is null-homotopic through a natural homotopy.
pub fn naturally_homotopic(
    f: &FunctorComplex,
    g: &FunctorComplex,
    phi: &NatChainMap,
    psi: &NatChainMap,
) -> Result<bool> {
    let (verts, blocks, arrows) = natural_setup(f, g)?;
    let space = MapSpace::new(f.alg, blocks, 0, 0);
    let hs = space.homotopy_space();
    let mut diff_comps = vec![];
    for &v in &verts {
        let a = phi.at_vertex(f, g, v)?;
        let b = psi.at_vertex(f, g, v)?;
        diff_comps.push(a.sub(&b).comps);
    }
    let refs: Vec<&BTreeMap<i32, ModMorphism>> = diff_comps.iter().collect();
    let target = space
        .coords(&refs)
        .ok_or_else(|| Error::Inconsistent("map outside the Hom space".into()))?;
    // unknowns: homotopy slots; natural constraints and d h + h d = target
    let m = hs.dim();
    let mut e = SparseEchelon::new();
    for r in hs.naturality_equations(&arrows) {
        e.insert(&r);
    }
    let imgs = space.boundary_images(&hs);
    let mut rows: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
    for (i, v) in imgs.iter().enumerate() {
        for (j, x) in v {
            rows.entry(*j).or_default().push((i, x.clone()));
        }
    }
    for (j, x) in &target {
        rows.entry(*j).or_default().push((m, -x.clone()));
    }
    for (_, r) in rows {
        e.insert(&r);
    }
    Ok(e.solve_augmented(m).is_some())
}

/// Dimension of the space of natural chain maps `F -> G` of degree zero.
pub fn natural_chain_map_dim(f: &FunctorComplex, g: &FunctorComplex) -> Result<usize> {
    let (_, blocks, arrows) = natural_setup(f, g)?;
    let space = MapSpace::new(f.alg, blocks, 0, 0);
    let mut eqs = space.chain_equations();
    eqs.extend(space.naturality_equations(&arrows));
    Ok(solve_homogeneous(&eqs, space.dim()).len())
}
