//! Homotopy classes of maps between the objects `X_0, ..., X_{d-1}` and the
//! comparison of their endomorphism algebra with the affine zigzag algebra.
//!
//! Generators: `p_{d-1}: X_0 -> X_{d-1}` (projection in degree 0),
//! `j_{d-1}: X_{d-1} -> X_0` (the loop `l_{d-1}`), `j_1: X_1[2-d] -> X_0`
//! (inclusion in degree `d-2`), `p_1: X_0 -> X_1[2-d]` (the loop `l_1`) and the
//! arrows `r_{i|i+-1}` between the `X_i = Ze_i`. They correspond to `d-1|0`,
//! `0|d-1`, `0|1`, `1|0` and `i+-1|i`.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::homotopy::{hom_classes, ChainMap, Complex, HomClasses};
use crate::linalg::SparseEchelon;
use crate::projcat::ModMorphism;
use crate::report::Report;
use crate::scalars::Rat;
use crate::zigzag::{ZigzagAlgebra, ZigzagElement};

use super::evaluation::x_objects;

/// Bidegrees `(t, n)` that can carry maps between the `X_j` of rank `d`.
pub fn bidegree_window(d: usize) -> Vec<(i32, i32)> {
    let d = d as i32;
    let mut out = vec![];
    for n in -d..=d {
        for t in -(d + 2)..=(d + 2) {
            out.push((t, n));
        }
    }
    out
}

/// `dim Hom(X_a, X_b<t>[n])` over the window, nonzero entries only.
pub fn hom_table(xs: &[Complex]) -> BTreeMap<(usize, usize, i32, i32), usize> {
    let d = xs.len();
    let mut out = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            for (t, n) in bidegree_window(d) {
                let h = hom_classes(&xs[a], &xs[b], t, n);
                if h.dim() > 0 {
                    out.insert((a, b, t, n), h.dim());
                }
            }
        }
    }
    out
}

/// Dimension of the classes with an invertible (degree-zero) component.
/// Differentials of minimal complexes are radical, so this is a homotopy
/// invariant.
pub fn nonradical_rank(h: &HomClasses) -> usize {
    let alg = h.space.alg;
    let idem: Vec<usize> = h
        .space
        .slots()
        .iter()
        .enumerate()
        .filter(|(_, s)| alg.degree(s.b) == 0)
        .map(|(i, _)| i)
        .collect();
    let mut ech = SparseEchelon::new();
    for r in &h.reps {
        let v: Vec<(usize, Rat)> = r.iter().filter(|(i, _)| idem.contains(i)).cloned().collect();
        if !v.is_empty() {
            ech.insert(&v);
        }
    }
    ech.rank()
}

/// A homotopy class with its source, target and bidegree.
#[derive(Clone, Debug)]
pub struct XMap {
    pub src: usize,
    pub tgt: usize,
    pub map: ChainMap,
}

impl XMap {
    pub fn after(&self, f: &XMap) -> XMap {
        XMap {
            src: f.src,
            tgt: self.tgt,
            map: self.map.after(&f.map),
        }
    }
}

fn single_entry(xs: &[Complex], a: usize, b: usize, k: i32, t: i32, n: i32, x: ZigzagElement) -> XMap {
    let mut map = ChainMap::zero(&xs[a], &xs[b], t, n);
    let m: &mut ModMorphism = map.comps.get_mut(&k).expect("component");
    m.set_entry(0, 0, x);
    XMap { src: a, tgt: b, map }
}

/// The generator maps keyed by the zigzag basis element they correspond to.
pub fn generators(alg: ZigzagAlgebra, xs: &[Complex]) -> Result<BTreeMap<usize, XMap>> {
    let d = alg.rank();
    let di = d as i32;
    let el = |b: usize| ZigzagElement::basis(b);
    let mut out = BTreeMap::new();
    out.insert(alg.arrow(d - 1, 0)?, single_entry(xs, 0, d - 1, 0, 1, 0, el(alg.e(d - 1))));
    out.insert(alg.arrow(0, d - 1)?, single_entry(xs, d - 1, 0, 0, 1, 0, el(alg.l(d - 1))));
    out.insert(alg.arrow(0, 1)?, single_entry(xs, 1, 0, 0, 1 - di, di - 2, el(alg.e(1))));
    out.insert(alg.arrow(1, 0)?, single_entry(xs, 0, 1, di - 2, di + 1, 2 - di, el(alg.l(1))));
    for i in 1..d {
        for j in [i.wrapping_sub(1), i + 1] {
            if (1..d).contains(&j) {
                out.insert(alg.arrow(j, i)?, single_entry(xs, i, j, 0, 1, 0, el(alg.arrow(i, j)?)));
            }
        }
    }
    Ok(out)
}

/// Images of the whole basis: idempotents go to identities, loops to a
/// product of two arrows rescaled by the sign of that product.
pub fn basis_images(alg: ZigzagAlgebra, xs: &[Complex]) -> Result<BTreeMap<usize, XMap>> {
    let d = alg.rank();
    let mut out = generators(alg, xs)?;
    for i in 0..d {
        out.insert(
            alg.e(i),
            XMap {
                src: i,
                tgt: i,
                map: ChainMap::identity(&xs[i]),
            },
        );
        let j = (i + 1) % d;
        let (x, y) = (alg.arrow(i, j)?, alg.arrow(j, i)?);
        let (b, s) = alg
            .mul_basis(x, y)
            .ok_or_else(|| Error::Inconsistent("loop is not a product of arrows".into()))?;
        debug_assert_eq!(b, alg.l(i));
        let mut m = out[&x].after(&out[&y]);
        m.map = m.map.scale(&Rat::from_integer(s.into()));
        out.insert(alg.l(i), m);
    }
    Ok(out)
}

fn classes_for(xs: &[Complex], f: &XMap, cache: &mut BTreeMap<(usize, usize, i32, i32), HomClasses>) -> HomClasses {
    let key = (f.src, f.tgt, f.map.t, f.map.n);
    cache
        .entry(key)
        .or_insert_with(|| hom_classes(&xs[f.src], &xs[f.tgt], f.map.t, f.map.n))
        .clone()
}

/// Endomorphism algebra against the affine zigzag algebra of rank `d`.
pub fn end_algebra_suite(d: usize, seed: u64) -> Result<Report> {
    let fin = ZigzagAlgebra::finite(d)?;
    let aff = ZigzagAlgebra::affine(d)?;
    let xs = x_objects(fin)?;
    let di = d as i32;
    let mut rep = Report::new("end-algebra", d, di - 2, 2 - di, seed);

    let table = hom_table(&xs);
    let total: usize = table.values().sum();
    rep.record("total-dimension", "", Ok((total == 4 * d, format!("{total} (expected {})", 4 * d))));
    for a in 0..d {
        for b in 0..d {
            let dim: usize = table.iter().filter(|(k, _)| k.0 == a && k.1 == b).map(|(_, v)| v).sum();
            let adjacent = a == b || (a + 1) % d == b || (b + 1) % d == a;
            let want = if a == b { 2 } else if adjacent { 1 } else { 0 };
            let degs: Vec<String> = table
                .iter()
                .filter(|(k, _)| k.0 == a && k.1 == b)
                .map(|(k, v)| format!("<{}>[{}]:{v}", k.2, k.3))
                .collect();
            rep.record(
                "quiver-support",
                &format!("a={a} b={b}"),
                Ok((dim == want, format!("dim {dim} {}", degs.join(" ")))),
            );
        }
    }

    let images = basis_images(aff, &xs)?;
    let mut cache = BTreeMap::new();
    let gens = generators(aff, &xs)?;
    for (b, f) in &gens {
        let name = aff.name(*b);
        let ok = f.map.is_chain_map(&xs[f.src], &xs[f.tgt]);
        let h = classes_for(&xs, f, &mut cache);
        let nonzero = ok && !h.is_null_homotopic(&f.map)?;
        rep.record(
            "generator",
            &name,
            Ok((nonzero, format!("<{}>[{}] chain map: {ok}", f.map.t, f.map.n))),
        );
    }

    // the images of the basis are independent classes
    let mut per_space: BTreeMap<(usize, usize, i32, i32), Vec<usize>> = BTreeMap::new();
    for (b, f) in &images {
        per_space.entry((f.src, f.tgt, f.map.t, f.map.n)).or_default().push(*b);
    }
    let mut independent = true;
    for (key, bs) in &per_space {
        let h = cache
            .entry(*key)
            .or_insert_with(|| hom_classes(&xs[key.0], &xs[key.1], key.2, key.3))
            .clone();
        let mut ech = SparseEchelon::new();
        for b in bs {
            let c = h.class_of(&images[b].map)?;
            let v: Vec<(usize, Rat)> = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            if ech.insert(&v).is_none() {
                independent = false;
            }
        }
    }
    rep.record(
        "basis-independent",
        "",
        Ok((independent && images.len() == 4 * d, format!("{} images", images.len()))),
    );

    // multiplication table: phi(x) phi(y) = phi(xy) up to homotopy
    let basis = aff.basis();
    let mut bad = vec![];
    let mut products = 0;
    for &x in &basis {
        for &y in &basis {
            let (fx, fy) = (&images[&x], &images[&y]);
            if fx.src != fy.tgt {
                continue;
            }
            products += 1;
            let comp = fx.after(fy);
            let h = classes_for(&xs, &comp, &mut cache);
            let diff = match aff.mul_basis(x, y) {
                None => comp.map.clone(),
                Some((z, s)) => {
                    let fz = &images[&z];
                    if (fz.map.t, fz.map.n) != (comp.map.t, comp.map.n) {
                        bad.push(format!("{}*{}: bidegree", aff.name(x), aff.name(y)));
                        continue;
                    }
                    comp.map.sub(&fz.map.scale(&Rat::from_integer(s.into())))
                }
            };
            if !h.is_null_homotopic(&diff)? {
                bad.push(format!("{}*{}", aff.name(x), aff.name(y)));
            }
        }
    }
    rep.record(
        "multiplication-table",
        "",
        Ok((bad.is_empty(), if bad.is_empty() { format!("{products} products") } else { bad.join(", ") })),
    );

    // the sign at the zero vertex
    let sign = if d % 2 == 0 { Rat::one() } else { -Rat::one() };
    let j1p1 = gens[&aff.arrow(0, 1)?].after(&gens[&aff.arrow(1, 0)?]);
    let jdpd = gens[&aff.arrow(0, d - 1)?].after(&gens[&aff.arrow(d - 1, 0)?]);
    let h = classes_for(&xs, &j1p1, &mut cache);
    let combo = j1p1.map.sub(&jdpd.map.scale(&sign));
    let null = h.is_null_homotopic(&combo)?;
    let alone = !h.is_null_homotopic(&j1p1.map)?;
    let wrong = !h.is_null_homotopic(&j1p1.map.add(&jdpd.map.scale(&sign)))?;
    rep.record(
        "zero-vertex-sign",
        &format!("(-1)^{d}"),
        Ok((null && alone && wrong, format!("difference null: {null}, composite nonzero: {alone}, opposite sign fails: {wrong}"))),
    );
    Ok(rep.finish())
}

/// Non-radical maps between `X_0` and the other `X_i`.
pub fn hom_evidence_suite(d: usize, seed: u64) -> Result<Report> {
    let fin = ZigzagAlgebra::finite(d)?;
    let xs = x_objects(fin)?;
    let di = d as i32;
    let mut rep = Report::new("hom-evidence", d, di - 2, 2 - di, seed);
    for i in 1..d {
        for (from_x0, a, b) in [(true, 0, i), (false, i, 0)] {
            let mut found = vec![];
            let mut all = vec![];
            for (t, n) in bidegree_window(d) {
                let h = hom_classes(&xs[a], &xs[b], t, n);
                if h.dim() == 0 {
                    continue;
                }
                all.push(format!("<{t}>[{n}]:{}", h.dim()));
                let nr = nonradical_rank(&h);
                if nr > 0 {
                    found.push((t, n, nr));
                }
            }
            let want: Vec<(i32, i32, usize)> = match (from_x0, i) {
                (true, i) if i == d - 1 => vec![(1, 0, 1)],
                (false, 1) => vec![(1 - di, di - 2, 1)],
                _ => vec![],
            };
            let id = if from_x0 { "nonradical-from-x0" } else { "nonradical-to-x0" };
            rep.record(id, &format!("i={i}"), Ok((found == want, format!("nonradical {found:?}; classes {}", all.join(" ")))));
        }
    }
    let probes: Vec<(&str, usize, usize, i32, i32, usize)> = {
        let mut v = vec![("projection-to-last", 0, d - 1, 1, 0, 1), ("inclusion-from-first", 1, 0, 1 - di, di - 2, 1)];
        if d >= 4 {
            v.push(("x0-to-middle", 0, 2, 0, 0, 0));
        }
        v
    };
    for (id, a, b, t, n, want) in probes {
        let dim = hom_classes(&xs[a], &xs[b], t, n).dim();
        rep.record(id, &format!("<{t}>[{n}]"), Ok((dim == want, format!("dim {dim}"))));
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_algebra_small() {
        for d in 3..=4 {
            let r = end_algebra_suite(d, 0).unwrap();
            let bad: Vec<_> = r.failures().map(|c| format!("{} {} {}", c.id, c.params, c.detail)).collect();
            assert!(bad.is_empty(), "d={d}: {bad:#?}");
            let r = hom_evidence_suite(d, 0).unwrap();
            let bad: Vec<_> = r.failures().map(|c| format!("{} {} {}", c.id, c.params, c.detail)).collect();
            assert!(bad.is_empty(), "d={d}: {bad:#?}");
        }
    }
}
