//! Images of the generating 2-morphisms as natural transformations between
//! functor words on graded projective modules.
//!
//! `B_i = Ze_i (x) e_i Z <1>`; on `Ze_k` its summands are indexed by the paths
//! `x` in `e_i Z e_k`, and `B_i B_i (Ze_k)` by pairs `(x, y)` (inner path `x`
//! major, outer loop-or-idempotent `y` minor). The rotation `B_rho` is the twist
//! by `tau sigma`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::projcat::{FunctorWord, ModMorphism, NatTrans};
use crate::scalars::{rat, Rat};
use crate::zigzag::{ZigzagAlgebra, ZigzagElement, ZigzagFlavor};

/// Sign attached to the colour `i`.
pub fn colour_sign(alg: ZigzagAlgebra, i: usize) -> Rat {
    if alg.flavor() == ZigzagFlavor::Affine && i == 0 {
        return Rat::one();
    }
    if i % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn check_colour(alg: ZigzagAlgebra, i: usize) -> Result<()> {
    if !alg.has_vertex(i) {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            what: "colours".into(),
        });
    }
    Ok(())
}

fn elem(b: usize, c: Rat) -> ZigzagElement {
    ZigzagElement::term(b, c)
}

/// Rotation word `B_rho`.
pub fn rho_word() -> FunctorWord {
    FunctorWord::twist(1, true)
}

pub fn rho_inv_word() -> FunctorWord {
    FunctorWord::twist(-1, true)
}

/// `B_i -> <1>`: the counit dot.
pub fn dot_down(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    check_colour(alg, i)?;
    NatTrans::from_fn(alg, FunctorWord::b(i), FunctorWord::shift(1), |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        for (c, &y) in alg.paths(i, k).iter().enumerate() {
            m.add_entry(0, c, &ZigzagElement::basis(y));
        }
        m
    })
}

/// `<-1> -> B_i`: the unit dot.
pub fn dot_up(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    check_colour(alg, i)?;
    let eps = colour_sign(alg, i);
    let d = alg.rank();
    NatTrans::from_fn(alg, FunctorWord::shift(-1), FunctorWord::b(i), |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        if k == i {
            m.add_entry(0, 0, &elem(alg.l(i), eps.clone()));
            m.add_entry(1, 0, &elem(alg.e(i), eps.clone()));
        } else if !alg.paths(i, k).is_empty() {
            let back = alg.arrow(k, i).expect("adjacent");
            // the wrap-around arrow into colour 0 carries (-1)^d
            let wrap = alg.flavor() == ZigzagFlavor::Affine && i == 0 && k == d - 1 && d % 2 == 1;
            let sgn = if wrap { -eps.clone() } else { eps.clone() };
            m.add_entry(0, 0, &elem(back, sgn));
        }
        m
    })
}

/// `B_i B_i -> <-1> B_i`: multiplication.
pub fn merge(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    check_colour(alg, i)?;
    let eps = colour_sign(alg, i);
    let bb = FunctorWord::b(i).then_after(&FunctorWord::b(i));
    let tgt = FunctorWord::shift(-1).then_after(&FunctorWord::b(i));
    NatTrans::from_fn(alg, bb, tgt, |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        for xi in 0..alg.paths(i, k).len() {
            // summand (x, l_i)
            m.add_entry(xi, 2 * xi + 1, &elem(alg.e(i), eps.clone()));
        }
        m
    })
}

/// `B_i -> <-1> B_i B_i`: comultiplication.
pub fn split(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    check_colour(alg, i)?;
    let bb = FunctorWord::b(i).then_after(&FunctorWord::b(i));
    let tgt = FunctorWord::shift(-1).then_after(&bb);
    NatTrans::from_fn(alg, FunctorWord::b(i), tgt, |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        for xi in 0..alg.paths(i, k).len() {
            m.add_entry(2 * xi, xi, &ZigzagElement::basis(alg.e(i)));
        }
        m
    })
}

/// `B_i B_i -> id`.
pub fn cap(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    dot_down(alg, i)?.shifted(-1, 0).after(&merge(alg, i)?)
}

/// `id -> B_i B_i`.
pub fn cup(alg: ZigzagAlgebra, i: usize) -> Result<NatTrans> {
    split(alg, i)?.shifted(1, 0).after(&dot_up(alg, i)?.shifted(1, 0))
}

/// The four crossings of a rotation strand with a coloured strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    /// `B_rho B_{i-1} -> B_i B_rho`
    RhoOver,
    /// `B_i B_rho -> B_rho B_{i-1}`
    RhoOverInv,
    /// `B_rho^{-1} B_i -> B_{i-1} B_rho^{-1}`
    RhoInvOver,
    /// `B_{i-1} B_rho^{-1} -> B_rho^{-1} B_i`
    RhoInvOverInv,
}

/// Crossing with colour `i` (indices mod `d`); signed permutation matrices
/// matching summands through the twist.
pub fn crossing(alg: ZigzagAlgebra, kind: Crossing, i: usize) -> Result<NatTrans> {
    if alg.flavor() != ZigzagFlavor::Affine {
        return Err(Error::FlavorMismatch("crossings need the affine algebra".into()));
    }
    check_colour(alg, i)?;
    let d = alg.rank();
    let im1 = (i + d - 1) % d;
    let (r, ri) = (rho_word(), rho_inv_word());
    let (src, tgt, rot) = match kind {
        Crossing::RhoOver | Crossing::RhoOverInv => (
            r.then_after(&FunctorWord::b(im1)),
            FunctorWord::b(i).then_after(&r),
            1i64,
        ),
        Crossing::RhoInvOver | Crossing::RhoInvOverInv => (
            ri.then_after(&FunctorWord::b(i)),
            FunctorWord::b(im1).then_after(&ri),
            -1i64,
        ),
    };
    let (inner_from, inner_to) = if rot == 1 { (im1, i) } else { (i, im1) };
    let forward = NatTrans::from_fn(alg, src, tgt, |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        let k2 = (k as i64 + rot).rem_euclid(d as i64) as usize;
        let ys = alg.paths(inner_from, k);
        let zs = alg.paths(inner_to, k2);
        for (c, &y) in ys.iter().enumerate() {
            let (z, sg) = alg.twist_basis(rot, true, y);
            let rr = zs.iter().position(|&w| w == z).expect("twisted path");
            m.add_entry(rr, c, &elem(alg.e(t.summands[rr].vertex), rat(sg)));
        }
        m
    })?;
    match kind {
        Crossing::RhoOver | Crossing::RhoInvOver => Ok(forward),
        _ => invert_signed_permutation(&forward),
    }
}

fn invert_signed_permutation(f: &NatTrans) -> Result<NatTrans> {
    NatTrans::from_fn(f.alg, f.tgt.clone(), f.src.clone(), |k, s, t| {
        let mut m = ModMorphism::zero(s.clone(), t.clone());
        for (r, c, x) in f.comps[&k].entries() {
            // entries are +-e_v, self-inverse up to transpose
            m.add_entry(c, r, x);
        }
        m
    })
}

/// `B_rho B_rho^{-1} -> id` and friends are identities once the twists cancel.
pub fn rho_cap(alg: ZigzagAlgebra, inverse_first: bool) -> Result<NatTrans> {
    let w = if inverse_first {
        rho_inv_word().then_after(&rho_word())
    } else {
        rho_word().then_after(&rho_inv_word())
    };
    debug_assert_eq!(w, FunctorWord::id());
    NatTrans::identity(alg, &w)
}

/// The 4-valent and 6-valent vertices act by zero.
pub fn vanishing_vertex(alg: ZigzagAlgebra, src: &FunctorWord, tgt: &FunctorWord) -> Result<NatTrans> {
    NatTrans::zero(alg, src, tgt)
}

/// Any coefficient of a natural transformation that is not in `{0, 1, -1}`.
pub fn has_unit_coefficients(f: &NatTrans) -> bool {
    f.comps.values().all(|m| {
        m.entries()
            .all(|(_, _, x)| x.terms().all(|(_, c)| c.is_zero() || *c == Rat::one() || *c == -Rat::one()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algs() -> Vec<ZigzagAlgebra> {
        let mut v = vec![];
        for d in 3..7 {
            v.push(ZigzagAlgebra::finite(d).unwrap());
            v.push(ZigzagAlgebra::affine(d).unwrap());
        }
        v
    }

    #[test]
    fn generators_are_natural() {
        for z in algs() {
            for i in z.vertices() {
                for f in [dot_down(z, i), dot_up(z, i), merge(z, i), split(z, i)] {
                    let f = f.unwrap();
                    assert!(f.check_degrees(), "{z:?} {i} {} -> {}", f.src, f.tgt);
                    assert!(f.is_natural().unwrap(), "{z:?} {i} {} -> {}", f.src, f.tgt);
                }
                if z.flavor() == ZigzagFlavor::Affine {
                    for k in [
                        Crossing::RhoOver,
                        Crossing::RhoOverInv,
                        Crossing::RhoInvOver,
                        Crossing::RhoInvOverInv,
                    ] {
                        let f = crossing(z, k, i).unwrap();
                        assert!(f.check_degrees());
                        assert!(f.is_natural().unwrap(), "{z:?} {i} {k:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn unit_and_counit() {
        for z in algs() {
            for i in z.vertices() {
                let b = FunctorWord::b(i);
                let id = NatTrans::identity(z, &FunctorWord::shift(-1).then_after(&b)).unwrap();
                let u = dot_up(z, i).unwrap().whisker_right(&b).unwrap();
                let m = merge(z, i).unwrap();
                assert_eq!(m.after(&u).unwrap().comps, id.comps);
                let s = split(z, i).unwrap();
                let dd = dot_down(z, i).unwrap().whisker_right(&b).unwrap().shifted(-1, 0);
                let id = NatTrans::identity(z, &b).unwrap();
                assert_eq!(dd.after(&s).unwrap().comps, id.comps);
            }
        }
    }
}
