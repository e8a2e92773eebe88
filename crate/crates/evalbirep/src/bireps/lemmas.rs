//! Object-level consequences of the Rouquier complex identities, and the
//! snake relations for the adjunction maps between `T_i` and `T_i^{-1}`.

use std::collections::BTreeMap;

use num::One;

use crate::error::{Error, Result};
use crate::homotopy::{iso_test, minimal_model, naturally_homotopic, rouquier, Complex, FunctorComplex, NatChainMap};
use crate::projcat::{FunctorWord, NatTrans};
use crate::report::Report;
use crate::scalars::Rat;
use crate::twocells::{cap, cup};
use crate::zigzag::ZigzagAlgebra;

use super::evaluation::{EvalAction, Generator};

/// One tensor factor; words are read left to right, rightmost applied first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    T(usize),
    TInv(usize),
    B(usize),
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::T(i) => write!(f, "T{i}"),
            Factor::TInv(i) => write!(f, "T{i}'"),
            Factor::B(i) => write!(f, "B{i}"),
        }
    }
}

fn word_name(w: &[Factor]) -> String {
    w.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

/// Minimal model of `w(c)`, eliminating after every factor.
pub fn apply_word(alg: ZigzagAlgebra, w: &[Factor], c: &Complex) -> Result<Complex> {
    let mut cur = minimal_model(c);
    for f in w.iter().rev() {
        let fc = match *f {
            Factor::T(i) => rouquier(alg, i, false)?,
            Factor::TInv(i) => rouquier(alg, i, true)?,
            Factor::B(i) => FunctorComplex::word(alg, FunctorWord::b(i)),
        };
        cur = minimal_model(&fc.apply(&cur)?);
    }
    Ok(cur)
}

/// A word factor for [`apply_steps`]: a Rouquier complex, a bimodule or a
/// rotation of the evaluation action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Factor(Factor),
    Gen(Generator),
}

/// Parse `T1 T2' B1 rho rho'`; factors are separated by spaces or `*`, and a
/// trailing `'` or `^-1` marks an inverse.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    let bad = |tok: &str| Error::InvalidArgument(format!("unknown factor {tok:?}"));
    s.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (body, inv) = match tok.strip_suffix('\'').or_else(|| tok.strip_suffix("^-1")) {
                Some(b) => (b, true),
                None => (tok, false),
            };
            if body == "rho" {
                return Ok(Step::Gen(if inv { Generator::RhoInv } else { Generator::Rho }));
            }
            let idx = |rest: &str| rest.parse::<usize>().map_err(|_| bad(tok));
            match (body.get(..1), body.get(1..), inv) {
                (Some("T"), Some(rest), false) => Ok(Step::Factor(Factor::T(idx(rest)?))),
                (Some("T"), Some(rest), true) => Ok(Step::Factor(Factor::TInv(idx(rest)?))),
                (Some("B"), Some(rest), false) => Ok(Step::Factor(Factor::B(idx(rest)?))),
                _ => Err(bad(tok)),
            }
        })
        .collect()
}

/// Minimal model of `steps(c)`. Rotations need `ev`.
pub fn apply_steps(alg: ZigzagAlgebra, ev: Option<&EvalAction>, steps: &[Step], c: &Complex) -> Result<Complex> {
    let mut cur = minimal_model(c);
    for step in steps.iter().rev() {
        cur = match step {
            Step::Factor(f) => apply_word(alg, &[*f], &cur)?,
            Step::Gen(g) => ev
                .ok_or_else(|| Error::InvalidArgument("rotations need the affine evaluation action".into()))?
                .apply(*g, &cur)?,
        };
    }
    Ok(cur)
}

fn compare_on_vertices(alg: ZigzagAlgebra, lhs: &[Factor], rhs: &[Factor]) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = vec![];
    for j in alg.vertices() {
        let x = Complex::indecomposable(alg, j)?;
        let a = apply_word(alg, lhs, &x)?;
        let b = if rhs.is_empty() { x } else { apply_word(alg, rhs, &x)? };
        let out = iso_test(&a, &b)?;
        if !out.is_iso() {
            ok = false;
            notes.push(format!("e{j}: {}", out.label()));
        }
    }
    Ok((ok, if ok { "isomorphic on every vertex".into() } else { notes.join(", ") }))
}

/// Position of the identity term and of the `B_i B_i` term in degree 0 of
/// `T_i^{-1} T_i` or `T_i T_i^{-1}`.
fn degree_zero_split(fc: &FunctorComplex) -> Result<(usize, usize)> {
    let ts = fc.terms_at(0);
    let id = ts.iter().position(|t| t.word.canonical() == FunctorWord::id());
    match (id, ts.len()) {
        (Some(r), 2) => Ok((r, 1 - r)),
        _ => Err(Error::Inconsistent("unexpected degree-zero terms".into())),
    }
}

/// The four adjunction maps for colour `i`.
pub struct Adjunction {
    pub t: FunctorComplex,
    pub t_inv: FunctorComplex,
    pub one: FunctorComplex,
    /// `T^{-1} T`
    pub inv_t: FunctorComplex,
    /// `T T^{-1}`
    pub t_inv_t: FunctorComplex,
    /// `T^{-1} T -> 1`
    pub phi: NatChainMap,
    pub phi_inv: NatChainMap,
    /// `T T^{-1} -> 1`
    pub psi: NatChainMap,
    pub psi_inv: NatChainMap,
}

fn counit(alg: ZigzagAlgebra, i: usize, fc: &FunctorComplex, c: Rat) -> Result<NatChainMap> {
    let (r, b) = degree_zero_split(fc)?;
    let mut comps = BTreeMap::new();
    comps.insert((0, 0, r), NatTrans::identity(alg, &FunctorWord::id())?);
    comps.insert((0, 0, b), cap(alg, i)?.scale(&c));
    Ok(NatChainMap { comps })
}

fn unit(alg: ZigzagAlgebra, i: usize, fc: &FunctorComplex, c: Rat) -> Result<NatChainMap> {
    let (r, b) = degree_zero_split(fc)?;
    let mut comps = BTreeMap::new();
    comps.insert((0, r, 0), NatTrans::identity(alg, &FunctorWord::id())?);
    comps.insert((0, b, 0), cup(alg, i)?.scale(&c));
    Ok(NatChainMap { comps })
}

impl Adjunction {
    /// `phi = (cap, 1)`, `phi^{-1} = (-cup, 1)`, `psi = (-cap, 1)`,
    /// `psi^{-1} = (cup, 1)` on `(B_i B_i, 1)`.
    pub fn new(alg: ZigzagAlgebra, i: usize) -> Result<Self> {
        let t = rouquier(alg, i, false)?;
        let t_inv = rouquier(alg, i, true)?;
        let one = FunctorComplex::identity(alg);
        let inv_t = t_inv.tensor(&t)?;
        let t_inv_t = t.tensor(&t_inv)?;
        let m1 = -Rat::one();
        Ok(Adjunction {
            phi: counit(alg, i, &inv_t, Rat::one())?,
            phi_inv: unit(alg, i, &inv_t, m1.clone())?,
            psi: counit(alg, i, &t_inv_t, m1)?,
            psi_inv: unit(alg, i, &t_inv_t, Rat::one())?,
            t,
            t_inv,
            one,
            inv_t,
            t_inv_t,
        })
    }

    /// Chain map conditions and the four round trips.
    pub fn equivalences(&self) -> Result<Vec<(&'static str, bool)>> {
        let id_one = NatChainMap::identity(&self.one)?;
        Ok(vec![
            (
                "chain-maps",
                self.phi.is_chain_map(&self.inv_t, &self.one)?
                    && self.phi_inv.is_chain_map(&self.one, &self.inv_t)?
                    && self.psi.is_chain_map(&self.t_inv_t, &self.one)?
                    && self.psi_inv.is_chain_map(&self.one, &self.t_inv_t)?,
            ),
            (
                "counit-after-unit",
                naturally_homotopic(&self.one, &self.one, &self.phi.after(&self.phi_inv)?, &id_one)?
                    && naturally_homotopic(&self.one, &self.one, &self.psi.after(&self.psi_inv)?, &id_one)?,
            ),
            (
                "unit-after-counit",
                naturally_homotopic(
                    &self.inv_t,
                    &self.inv_t,
                    &self.phi_inv.after(&self.phi)?,
                    &NatChainMap::identity(&self.inv_t)?,
                )? && naturally_homotopic(
                    &self.t_inv_t,
                    &self.t_inv_t,
                    &self.psi_inv.after(&self.psi)?,
                    &NatChainMap::identity(&self.t_inv_t)?,
                )?,
            ),
        ])
    }

    /// The four snake composites, each compared with the identity.
    pub fn snakes(&self) -> Result<Vec<(&'static str, bool)>> {
        let (t, ti, one) = (&self.t, &self.t_inv, &self.one);
        let id_t = NatChainMap::identity(t)?;
        let id_ti = NatChainMap::identity(ti)?;
        // T -> (T T^{-1}) T -> T (T^{-1} T) -> T
        let s1 = self
            .phi
            .whisker_left(t, &self.inv_t, one)?
            .after(&self.psi_inv.whisker_right(one, &self.t_inv_t, t)?)?;
        // T -> T (T^{-1} T) -> (T T^{-1}) T -> T
        let s2 = self
            .psi
            .whisker_right(&self.t_inv_t, one, t)?
            .after(&self.phi_inv.whisker_left(t, one, &self.inv_t)?)?;
        // T^{-1} -> (T^{-1} T) T^{-1} -> T^{-1} (T T^{-1}) -> T^{-1}
        let s3 = self
            .psi
            .whisker_left(ti, &self.t_inv_t, one)?
            .after(&self.phi_inv.whisker_right(one, &self.inv_t, ti)?)?;
        // T^{-1} -> T^{-1} (T T^{-1}) -> (T^{-1} T) T^{-1} -> T^{-1}
        let s4 = self
            .phi
            .whisker_right(&self.inv_t, one, ti)?
            .after(&self.psi_inv.whisker_left(ti, one, &self.t_inv_t)?)?;
        Ok(vec![
            ("unit-then-counit-right", naturally_homotopic(t, t, &s1, &id_t)?),
            ("unit-then-counit-left", naturally_homotopic(t, t, &s2, &id_t)?),
            ("inverse-unit-then-counit-left", naturally_homotopic(ti, ti, &s3, &id_ti)?),
            ("inverse-unit-then-counit-right", naturally_homotopic(ti, ti, &s4, &id_ti)?),
        ])
    }
}

/// The object-level identities for colours `1..d-1` of the finite algebra.
pub fn rouquier_lemmas_suite(d: usize, seed: u64) -> Result<Report> {
    use Factor::{TInv, B, T};
    let alg = ZigzagAlgebra::finite(d)?;
    let di = d as i32;
    let mut rep = Report::new("rouquier-lemmas", d, di - 2, 2 - di, seed);
    let mut words: Vec<(&str, Vec<Factor>, Vec<Factor>)> = vec![];
    for i in 1..d {
        words.push(("inverse", vec![T(i), TInv(i)], vec![]));
        words.push(("inverse", vec![TInv(i), T(i)], vec![]));
    }
    for i in 1..(d - 1) {
        let k = i + 1;
        words.push(("braid", vec![T(i), T(k), T(i)], vec![T(k), T(i), T(k)]));
        words.push(("braid", vec![TInv(i), TInv(k), TInv(i)], vec![TInv(k), TInv(i), TInv(k)]));
        words.push(("conjugate-bimodule", vec![T(k), B(i), TInv(k)], vec![TInv(i), B(k), T(i)]));
        words.push(("conjugate-bimodule", vec![TInv(k), B(i), T(k)], vec![T(i), B(k), TInv(i)]));
    }
    for i in 1..d {
        for k in (i + 2)..d {
            words.push(("distant-commute", vec![T(i), T(k)], vec![T(k), T(i)]));
        }
    }
    for i in 2..d {
        words.push(("double-rouquier-slide", vec![TInv(i), TInv(i - 1), B(i)], vec![B(i - 1), TInv(i), TInv(i - 1)]));
        words.push(("double-rouquier-slide", vec![T(i - 1), T(i), B(i - 1)], vec![B(i), T(i - 1), T(i)]));
        for j in 1..d {
            if j + 2 < i || j > i + 1 {
                words.push(("double-rouquier-distant", vec![T(i), T(i - 1), B(j)], vec![B(j), T(i), T(i - 1)]));
                words.push(("double-rouquier-distant", vec![TInv(i), TInv(i - 1), B(j)], vec![B(j), TInv(i), TInv(i - 1)]));
            }
        }
    }
    for (id, lhs, rhs) in &words {
        let params = if rhs.is_empty() {
            word_name(lhs)
        } else {
            format!("{} = {}", word_name(lhs), word_name(rhs))
        };
        rep.record(id, &params, compare_on_vertices(alg, lhs, rhs));
    }

    let ev = EvalAction::balanced(d)?;
    for j in alg.vertices() {
        rep.record(
            "closed-rotation",
            &format!("j={j}"),
            (|| {
                let x = Complex::indecomposable(alg, j)?;
                let out = iso_test(&ev.rotate(&x)?, &ev.rotate_closed(&x)?)?;
                Ok((out.is_iso(), out.label().to_string()))
            })(),
        );
    }

    for i in 1..d {
        match Adjunction::new(alg, i) {
            Ok(adj) => {
                let params = format!("i={i}");
                match adj.equivalences() {
                    Ok(rows) => {
                        for (id, ok) in rows {
                            rep.record(&format!("adjunction-{id}"), &params, Ok((ok, String::new())));
                        }
                    }
                    Err(e) => rep.record("adjunction", &params, Err(e)),
                }
                match adj.snakes() {
                    Ok(rows) => {
                        for (id, ok) in rows {
                            let detail = if ok { "natural homotopy found" } else { "no natural homotopy" };
                            rep.record(&format!("snake-{id}"), &params, Ok((ok, detail.to_string())));
                        }
                    }
                    Err(e) => rep.record("snake", &params, Err(e)),
                }
            }
            Err(e) => rep.record("adjunction", &format!("i={i}"), Err(e)),
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_small() {
        for d in 3..=4 {
            let r = rouquier_lemmas_suite(d, 0).unwrap();
            let bad: Vec<_> = r.failures().map(|c| format!("{} {} {}", c.id, c.params, c.detail)).collect();
            assert!(bad.is_empty(), "d={d}: {bad:#?}");
        }
    }
}
