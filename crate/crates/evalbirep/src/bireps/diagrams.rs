//! A small language of string diagrams: a boundary word and a list of local
//! moves, evaluated to a natural transformation through the generator images.

use std::fmt;

use num::One;

use crate::error::{Error, Result};
use crate::homotopy::same_entries;
use crate::projcat::{FunctorWord, NatTrans};
use crate::scalars::Rat;
use crate::twocells::{self, Crossing};
use crate::zigzag::{ZigzagAlgebra, ZigzagFlavor};

/// One letter of a boundary word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Colour(usize),
    /// upward oriented strand
    Rho,
    /// downward oriented strand
    RhoInv,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Colour(i) => write!(f, "B{i}"),
            Letter::Rho => write!(f, "R"),
            Letter::RhoInv => write!(f, "R'"),
        }
    }
}

/// Local moves; `usize` is the position of the leftmost affected letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `aba -> bab`, adjacent colours
    Six(usize),
    /// `ab -> ba`, distant colours
    Cross(usize),
    Merge(usize),
    Split(usize),
    /// insert a colour ending in a dot
    Up(usize, usize),
    /// remove a colour ending in a dot
    Down(usize),
    Cap(usize),
    Cup(usize, usize),
    /// dumbbell of a colour at a position
    Dumbbell(usize, usize),
    /// `R B_{i-1} -> B_i R`
    RhoOver(usize),
    /// `B_i R -> R B_{i-1}`
    RhoOverInv(usize),
    /// `R' B_i -> B_{i-1} R'`
    RhoInvOver(usize),
    /// `B_{i-1} R' -> R' B_i`
    RhoInvOverInv(usize),
    /// insert `R R'` (`true`) or `R' R`
    RhoCup(usize, bool),
    /// remove `R R'` or `R' R`
    RhoCap(usize),
}

/// Boundary word together with a stack of moves, read bottom to top.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub start: Vec<Letter>,
    pub moves: Vec<Move>,
}

impl Diagram {
    pub fn new(start: Vec<Letter>, moves: Vec<Move>) -> Self {
        Diagram { start, moves }
    }
}

pub fn word_of(letters: &[Letter]) -> FunctorWord {
    letters.iter().fold(FunctorWord::id(), |acc, l| {
        let w = match l {
            Letter::Colour(i) => FunctorWord::b(*i),
            Letter::Rho => twocells::rho_word(),
            Letter::RhoInv => twocells::rho_inv_word(),
        };
        acc.then_after(&w)
    })
}

/// `f` with both words shifted so that its source is `src`.
pub fn fit_source(f: &NatTrans, src: &FunctorWord) -> Result<NatTrans> {
    let (t0, h0) = f.src.total_shift();
    let (t1, h1) = src.total_shift();
    let g = f.shifted(t1 - t0, h1 - h0);
    if g.src != src.canonical() {
        return Err(Error::Inconsistent(format!("cannot fit {} to {}", f.src, src)));
    }
    Ok(g)
}

/// `g o f`, shifting `g` as needed.
pub fn compose(g: &NatTrans, f: &NatTrans) -> Result<NatTrans> {
    fit_source(g, &f.tgt)?.after(f)
}

/// Same source and target words and equal components.
pub fn nat_equal(a: &NatTrans, b: &NatTrans) -> bool {
    a.src == b.src && a.tgt == b.tgt && a.comps.iter().all(|(k, m)| same_entries(m, &b.comps[k]))
}

/// Evaluates diagrams through the generator images of a birepresentation.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator {
    pub alg: ZigzagAlgebra,
}

impl Evaluator {
    pub fn new(alg: ZigzagAlgebra) -> Self {
        Evaluator { alg }
    }

    fn d(&self) -> usize {
        self.alg.rank()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.d() - 1) % self.d()
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.d()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && !self.alg.paths(a, b).is_empty()
    }

    pub fn distant(&self, a: usize, b: usize) -> bool {
        a != b && self.alg.paths(a, b).is_empty()
    }

    fn colour(&self, letters: &[Letter], p: usize) -> Result<usize> {
        match letters.get(p) {
            Some(Letter::Colour(i)) => Ok(*i),
            other => Err(Error::Inconsistent(format!("expected a colour at {p}, found {other:?}"))),
        }
    }

    fn expect(&self, letters: &[Letter], p: usize, l: Letter) -> Result<()> {
        if letters.get(p) != Some(&l) {
            return Err(Error::Inconsistent(format!("expected {l} at {p}")));
        }
        Ok(())
    }

    fn need_affine(&self) -> Result<()> {
        if self.alg.flavor() != ZigzagFlavor::Affine {
            return Err(Error::FlavorMismatch("oriented strands need the affine algebra".into()));
        }
        Ok(())
    }

    /// The local map of a move, the number of letters it consumes and the
    /// letters it produces.
    fn local(&self, letters: &[Letter], mv: Move) -> Result<(usize, NatTrans, usize, Vec<Letter>)> {
        use Letter::*;
        let alg = self.alg;
        let w = word_of;
        Ok(match mv {
            Move::Six(p) => {
                let (a, b) = (self.colour(letters, p)?, self.colour(letters, p + 1)?);
                self.expect(letters, p + 2, Colour(a))?;
                if !self.adjacent(a, b) {
                    return Err(Error::Inconsistent(format!("six-valent vertex needs adjacent colours, got {a}, {b}")));
                }
                let (s, t) = ([Colour(a), Colour(b), Colour(a)], [Colour(b), Colour(a), Colour(b)]);
                (p, twocells::vanishing_vertex(alg, &w(&s), &w(&t))?, 3, t.to_vec())
            }
            Move::Cross(p) => {
                let (a, b) = (self.colour(letters, p)?, self.colour(letters, p + 1)?);
                if !self.distant(a, b) {
                    return Err(Error::Inconsistent(format!("four-valent vertex needs distant colours, got {a}, {b}")));
                }
                let (s, t) = ([Colour(a), Colour(b)], [Colour(b), Colour(a)]);
                (p, twocells::vanishing_vertex(alg, &w(&s), &w(&t))?, 2, t.to_vec())
            }
            Move::Merge(p) => {
                let a = self.colour(letters, p)?;
                self.expect(letters, p + 1, Colour(a))?;
                (p, twocells::merge(alg, a)?, 2, vec![Colour(a)])
            }
            Move::Split(p) => {
                let a = self.colour(letters, p)?;
                (p, twocells::split(alg, a)?, 1, vec![Colour(a), Colour(a)])
            }
            Move::Up(p, a) => (p, twocells::dot_up(alg, a)?, 0, vec![Colour(a)]),
            Move::Down(p) => {
                let a = self.colour(letters, p)?;
                (p, twocells::dot_down(alg, a)?, 1, vec![])
            }
            Move::Cap(p) => {
                let a = self.colour(letters, p)?;
                self.expect(letters, p + 1, Colour(a))?;
                (p, twocells::cap(alg, a)?, 2, vec![])
            }
            Move::Cup(p, a) => (p, twocells::cup(alg, a)?, 0, vec![Colour(a), Colour(a)]),
            Move::Dumbbell(p, a) => {
                let db = twocells::dot_down(alg, a)?.after(&twocells::dot_up(alg, a)?)?;
                (p, db, 0, vec![])
            }
            Move::RhoOver(p) => {
                self.need_affine()?;
                self.expect(letters, p, Rho)?;
                let c = self.colour(letters, p + 1)?;
                let i = self.next(c);
                (p, twocells::crossing(alg, Crossing::RhoOver, i)?, 2, vec![Colour(i), Rho])
            }
            Move::RhoOverInv(p) => {
                self.need_affine()?;
                let i = self.colour(letters, p)?;
                self.expect(letters, p + 1, Rho)?;
                let c = self.prev(i);
                (p, twocells::crossing(alg, Crossing::RhoOverInv, i)?, 2, vec![Rho, Colour(c)])
            }
            Move::RhoInvOver(p) => {
                self.need_affine()?;
                self.expect(letters, p, RhoInv)?;
                let i = self.colour(letters, p + 1)?;
                let c = self.prev(i);
                (p, twocells::crossing(alg, Crossing::RhoInvOver, i)?, 2, vec![Colour(c), RhoInv])
            }
            Move::RhoInvOverInv(p) => {
                self.need_affine()?;
                let c = self.colour(letters, p)?;
                self.expect(letters, p + 1, RhoInv)?;
                let i = self.next(c);
                (p, twocells::crossing(alg, Crossing::RhoInvOverInv, i)?, 2, vec![RhoInv, Colour(i)])
            }
            Move::RhoCup(p, rho_first) => {
                self.need_affine()?;
                let pair = if rho_first { vec![Rho, RhoInv] } else { vec![RhoInv, Rho] };
                (p, twocells::rho_cap(alg, !rho_first)?, 0, pair)
            }
            Move::RhoCap(p) => {
                self.need_affine()?;
                let pair = (letters.get(p).copied(), letters.get(p + 1).copied());
                let rho_first = match pair {
                    (Some(Rho), Some(RhoInv)) => true,
                    (Some(RhoInv), Some(Rho)) => false,
                    _ => return Err(Error::Inconsistent(format!("no oriented cap at {p}"))),
                };
                (p, twocells::rho_cap(alg, !rho_first)?, 2, vec![])
            }
        })
    }

    /// The natural transformation of a diagram.
    pub fn eval(&self, dg: &Diagram) -> Result<NatTrans> {
        let mut letters = dg.start.clone();
        for l in &letters {
            if let Letter::Colour(i) = l {
                if !self.alg.has_vertex(*i) {
                    return Err(Error::IndexOutOfRange {
                        index: *i as i64,
                        what: "colours".into(),
                    });
                }
            }
        }
        let mut acc = NatTrans::identity(self.alg, &word_of(&letters))?;
        for mv in &dg.moves {
            let (p, loc, used, made) = self.local(&letters, *mv)?;
            if p + used > letters.len() {
                return Err(Error::Inconsistent(format!("move {mv:?} runs past the word")));
            }
            let whiskered = loc
                .whisker_left(&word_of(&letters[..p]))?
                .whisker_right(&word_of(&letters[p + used..]))?;
            acc = compose(&whiskered, &acc)?;
            letters.splice(p..p + used, made);
        }
        Ok(acc)
    }

    /// Linear combination of diagrams, aligned to the source of the first.
    pub fn eval_sum(&self, terms: &[(Rat, Diagram)]) -> Result<NatTrans> {
        let mut acc: Option<NatTrans> = None;
        for (c, dg) in terms {
            let f = self.eval(dg)?.scale(c);
            acc = Some(match acc {
                None => f,
                Some(a) => a.add(&fit_source(&f, &a.src)?)?,
            });
        }
        acc.ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))
    }
}

/// A single diagram with coefficient one.
pub fn one(dg: Diagram) -> Vec<(Rat, Diagram)> {
    vec![(Rat::one(), dg)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn identity_and_unit() {
        let z = ZigzagAlgebra::finite(4).unwrap();
        let ev = Evaluator::new(z);
        let id = ev.eval(&Diagram::new(vec![Colour(2)], vec![])).unwrap();
        let unit = ev
            .eval(&Diagram::new(vec![Colour(2)], vec![Move::Up(0, 2), Move::Merge(0)]))
            .unwrap();
        assert!(nat_equal(&fit_source(&unit, &id.src).unwrap(), &id));
    }

    #[test]
    fn moves_check_their_input() {
        let z = ZigzagAlgebra::finite(4).unwrap();
        let ev = Evaluator::new(z);
        assert!(ev.eval(&Diagram::new(vec![Colour(1), Colour(2)], vec![Move::Cross(0)])).is_err());
        assert!(ev.eval(&Diagram::new(vec![Colour(1)], vec![Move::RhoCap(0)])).is_err());
    }
}
