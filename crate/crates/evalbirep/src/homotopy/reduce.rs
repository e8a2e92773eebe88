//! Gaussian elimination of invertible differential entries.
//!
//! For `d^k = [[a, delta], [gamma, eps]]` with `a = lambda e_v` invertible, the
//! reduced differential is `eps - gamma a^{-1} delta`, and
//! `f = ([0, 1], [-gamma a^{-1}, 1])`, `g = ([-a^{-1} delta; 1], [0; 1])`,
//! `h = -a^{-1}` satisfy `f g = 1` and `g f - 1 = d h + h d`.

use std::collections::BTreeMap;

use num::One;

use crate::homotopy::complex::{ChainMap, Complex, Homotopy};
use crate::projcat::{ModMorphism, ProjObject};
use crate::scalars::Rat;
use crate::zigzag::ZigzagElement;

/// Minimal complex together with mutually inverse homotopy equivalences.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub minimal: Complex,
    /// `C -> minimal`
    pub to_min: ChainMap,
    /// `minimal -> C`
    pub from_min: ChainMap,
    /// `from_min o to_min - 1 = d h + h d`
    pub homotopy: Homotopy,
}

struct Pivot {
    k: i32,
    row: usize,
    col: usize,
    inv: Rat,
    /// column `col` of `d^k` without `row`
    gamma: Vec<(usize, ZigzagElement)>,
    /// row `row` of `d^k` without `col`
    delta: Vec<(usize, ZigzagElement)>,
}

fn keep(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&i| i != skip).collect()
}

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Removes one pivot from `c` in place.
fn eliminate(c: &mut Complex) -> Option<Pivot> {
    let (k, row, col, lam) = c.first_pivot()?;
    let inv = Rat::one() / lam;
    let alg = c.alg;
    let dk = c.diff(k);
    let gamma: Vec<(usize, ZigzagElement)> = dk.col(col).iter().filter(|(r, _)| *r != row).cloned().collect();
    let delta: Vec<(usize, ZigzagElement)> = (0..dk.ncols())
        .filter(|&cc| cc != col)
        .map(|cc| (cc, dk.entry(row, cc)))
        .filter(|(_, x)| !x.is_zero())
        .collect();

    let (nk, nk1) = (c.term_len(k), c.term_len(k + 1));
    let mut terms: BTreeMap<i32, ProjObject> = c.terms().map(|(j, o)| (j, o.clone())).collect();
    let mut diffs: BTreeMap<i32, ModMorphism> = BTreeMap::new();
    for (j, _) in c.terms() {
        if let Some(m) = c.diff_ref(j) {
            diffs.insert(j, m.clone());
        }
    }
    // new d^k
    let rows_k1 = keep(nk1, row);
    let cols_k = keep(nk, col);
    let mut nd = dk.submatrix(&rows_k1, &cols_k);
    let pos = |v: &[usize], i: usize| v.iter().position(|&x| x == i).unwrap();
    for (r, g) in &gamma {
        for (cc, dl) in &delta {
            let p = alg.mul(dl, g).scale(&-inv.clone());
            nd.add_entry(pos(&rows_k1, *r), pos(&cols_k, *cc), &p);
        }
    }
    diffs.insert(k, nd);
    if let Some(m) = diffs.get(&(k - 1)).cloned() {
        diffs.insert(k - 1, m.submatrix(&cols_k, &all(m.ncols())));
    }
    if let Some(m) = diffs.get(&(k + 1)).cloned() {
        diffs.insert(k + 1, m.submatrix(&all(m.rows()), &rows_k1));
    }
    let sub = |o: &ProjObject, skip: usize| ProjObject {
        alg,
        summands: o
            .summands
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, s)| *s)
            .collect(),
    };
    let tk = sub(&terms[&k], col);
    let tk1 = sub(&terms[&(k + 1)], row);
    terms.insert(k, tk);
    terms.insert(k + 1, tk1);
    *c = Complex::from_parts_unchecked(alg, terms, diffs);
    Some(Pivot {
        k,
        row,
        col,
        inv,
        gamma,
        delta,
    })
}

/// Minimal complex homotopy equivalent to `c` (no maps recorded).
pub fn minimal_model(c: &Complex) -> Complex {
    let mut cur = c.clone();
    while eliminate(&mut cur).is_some() {}
    cur
}

/// Minimal complex with the comparison maps and homotopy.
pub fn reduce(c: &Complex) -> Reduction {
    let alg = c.alg;
    let mut cur = c.clone();
    let mut f = ChainMap::identity(c);
    let mut g = ChainMap::identity(c);
    let mut h: BTreeMap<i32, ModMorphism> = c
        .terms()
        .map(|(k, o)| (k, ModMorphism::zero(o.clone(), c.term(k - 1))))
        .collect();
    loop {
        let Some(p) = eliminate(&mut cur) else { break };
        let k = p.k;
        let neg_inv = -p.inv.clone();
        let fk1_old = f.comps[&(k + 1)].clone();
        let gk_old = g.comps[&k].clone();

        // homotopy correction on C^{k+1} -> C^k
        let hk1 = h.get_mut(&(k + 1)).expect("term");
        for c0 in 0..fk1_old.ncols() {
            let fx = fk1_old.entry(p.row, c0);
            if fx.is_zero() {
                continue;
            }
            for r0 in 0..gk_old.rows() {
                let gx = gk_old.entry(r0, p.col);
                if gx.is_zero() {
                    continue;
                }
                hk1.add_entry(r0, c0, &alg.mul(&fx, &gx).scale(&neg_inv));
            }
        }

        // f at k: drop row; at k+1: row ops then drop row
        let fk = &f.comps[&k];
        let fk_new = fk.submatrix(&keep(fk.rows(), p.col), &all(fk.ncols()));
        let mut fk1 = fk1_old.clone();
        for c0 in 0..fk1_old.ncols() {
            let fx = fk1_old.entry(p.row, c0);
            if fx.is_zero() {
                continue;
            }
            for (r, gm) in &p.gamma {
                fk1.add_entry(*r, c0, &alg.mul(&fx, gm).scale(&neg_inv));
            }
        }
        let fk1_new = fk1.submatrix(&keep(fk1.rows(), p.row), &all(fk1.ncols()));

        // g at k: column ops then drop column; at k+1: drop column
        let mut gk = gk_old.clone();
        for (cc, dl) in &p.delta {
            for r0 in 0..gk_old.rows() {
                let gx = gk_old.entry(r0, p.col);
                if !gx.is_zero() {
                    gk.add_entry(r0, *cc, &alg.mul(dl, &gx).scale(&neg_inv));
                }
            }
        }
        let gk_new = gk.submatrix(&all(gk.rows()), &keep(gk.ncols(), p.col));
        let gk1 = &g.comps[&(k + 1)];
        let gk1_new = gk1.submatrix(&all(gk1.rows()), &keep(gk1.ncols(), p.row));

        f.comps.insert(k, fk_new);
        f.comps.insert(k + 1, fk1_new);
        g.comps.insert(k, gk_new);
        g.comps.insert(k + 1, gk1_new);
    }
    g.comps.retain(|_, m| m.ncols() > 0);
    Reduction {
        minimal: cur,
        to_min: f,
        from_min: g,
        homotopy: Homotopy { comps: h },
    }
}
