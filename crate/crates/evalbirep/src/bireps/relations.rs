//! Defining relations of the diagrammatic Soergel category (and its oriented
//! extension), written as diagram scripts and checked on the generator images.

use num::One;

use crate::bireps::diagrams::{fit_source, nat_equal, one, Diagram, Evaluator, Letter, Move};
use crate::error::Result;
use crate::report::Report;
use crate::scalars::{rat, Rat};
use crate::zigzag::{ZigzagAlgebra, ZigzagFlavor};

use Letter::{Colour as C, Rho, RhoInv};
use Move::*;

type Combo = Vec<(Rat, Diagram)>;

/// `lhs = rhs`; an empty `rhs` means zero.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: &'static str,
    pub params: String,
    pub lhs: Combo,
    pub rhs: Combo,
}

fn rel(id: &'static str, params: String, lhs: Combo, rhs: Combo) -> Relation {
    Relation { id, params, lhs, rhs }
}

fn dg(start: Vec<Letter>, moves: Vec<Move>) -> Diagram {
    Diagram::new(start, moves)
}

fn plus(a: Combo, b: Combo) -> Combo {
    a.into_iter().chain(b).collect()
}

fn times(c: Rat, a: Combo) -> Combo {
    a.into_iter().map(|(x, d)| (x * c.clone(), d)).collect()
}

/// Relations in one colour.
pub fn one_colour(a: usize) -> Vec<Relation> {
    let p = |v: &str| format!("i={a} {v}");
    let id = || one(dg(vec![C(a)], vec![]));
    vec![
        rel("unit", p("merge-left"), one(dg(vec![C(a)], vec![Up(0, a), Merge(0)])), id()),
        rel("unit", p("merge-right"), one(dg(vec![C(a)], vec![Up(1, a), Merge(0)])), id()),
        rel("unit", p("split-left"), one(dg(vec![C(a)], vec![Split(0), Down(0)])), id()),
        rel("unit", p("split-right"), one(dg(vec![C(a)], vec![Split(0), Down(1)])), id()),
        rel(
            "associativity",
            p("merge"),
            one(dg(vec![C(a); 3], vec![Merge(0), Merge(0)])),
            one(dg(vec![C(a); 3], vec![Merge(1), Merge(0)])),
        ),
        rel(
            "associativity",
            p("split"),
            one(dg(vec![C(a)], vec![Split(0), Split(0)])),
            one(dg(vec![C(a)], vec![Split(0), Split(1)])),
        ),
        rel(
            "associativity",
            p("frobenius-left"),
            one(dg(vec![C(a); 2], vec![Merge(0), Split(0)])),
            one(dg(vec![C(a); 2], vec![Split(0), Merge(1)])),
        ),
        rel(
            "associativity",
            p("frobenius-right"),
            one(dg(vec![C(a); 2], vec![Merge(0), Split(0)])),
            one(dg(vec![C(a); 2], vec![Split(1), Merge(0)])),
        ),
        rel("lollipop", p("cap"), one(dg(vec![C(a)], vec![Split(0), Cap(0)])), vec![]),
        rel("lollipop", p("cup"), one(dg(vec![], vec![Cup(0, a), Merge(0)])), vec![]),
        rel(
            "two-dumbbell",
            p(""),
            plus(
                one(dg(vec![C(a)], vec![Dumbbell(0, a)])),
                one(dg(vec![C(a)], vec![Dumbbell(1, a)])),
            ),
            times(rat(2), one(dg(vec![C(a)], vec![Down(0), Up(0, a)]))),
        ),
    ]
}

/// Relations in two distant colours `a`, `k`.
pub fn distant_pair(a: usize, k: usize) -> Vec<Relation> {
    let p = |v: &str| format!("i={a} k={k} {v}");
    vec![
        rel(
            "reidemeister-two",
            p(""),
            one(dg(vec![C(a), C(k)], vec![Cross(0), Cross(0)])),
            one(dg(vec![C(a), C(k)], vec![])),
        ),
        rel(
            "dot-slide",
            p("up"),
            one(dg(vec![C(k)], vec![Up(0, a), Cross(0)])),
            one(dg(vec![C(k)], vec![Up(1, a)])),
        ),
        rel(
            "dot-slide",
            p("down"),
            one(dg(vec![C(a), C(k)], vec![Cross(0), Down(1)])),
            one(dg(vec![C(a), C(k)], vec![Down(0)])),
        ),
        rel(
            "trivalent-slide",
            p(""),
            one(dg(vec![C(a), C(a), C(k)], vec![Merge(0), Cross(0)])),
            one(dg(vec![C(a), C(a), C(k)], vec![Cross(1), Cross(0), Merge(1)])),
        ),
        rel(
            "distant-dumbbells",
            p(""),
            plus(
                one(dg(vec![C(a)], vec![Dumbbell(0, k)])),
                times(-Rat::one(), one(dg(vec![C(a)], vec![Dumbbell(1, k)]))),
            ),
            vec![],
        ),
    ]
}

/// Relations in two adjacent colours; `a` carries the trivalent vertex.
pub fn adjacent_pair(a: usize, b: usize) -> Vec<Relation> {
    let p = |v: &str| format!("i={a} j={b} {v}");
    let half = Rat::new(1.into(), 2.into());
    vec![
        rel(
            "sixvalent-dot",
            p(""),
            one(dg(vec![C(a), C(a)], vec![Up(1, b), Six(0)])),
            plus(
                one(dg(vec![C(a), C(a)], vec![Merge(0), Up(0, b), Up(2, b)])),
                one(dg(vec![C(a), C(a)], vec![Cap(0), Cup(0, b), Up(1, a)])),
            ),
        ),
        rel(
            "braid-move",
            p(""),
            one(dg(vec![C(b), C(a), C(b)], vec![])),
            plus(
                one(dg(vec![C(b), C(a), C(b)], vec![Six(0), Six(0)])),
                times(
                    -Rat::one(),
                    one(dg(vec![C(b), C(a), C(b)], vec![Down(1), Merge(0), Split(0), Up(1, a)])),
                ),
            ),
        ),
        rel(
            "stroman",
            p(""),
            one(dg(vec![C(a), C(b), C(a), C(b)], vec![Six(1), Merge(0), Split(2), Six(0)])),
            one(dg(vec![C(a), C(b), C(a), C(b)], vec![Split(2), Six(0), Six(2), Merge(1)])),
        ),
        rel(
            "forcing-dumbbell",
            p(""),
            plus(
                one(dg(vec![C(a)], vec![Dumbbell(0, b)])),
                times(-Rat::one(), one(dg(vec![C(a)], vec![Dumbbell(1, b)]))),
            ),
            times(
                half,
                plus(
                    one(dg(vec![C(a)], vec![Dumbbell(1, a)])),
                    times(-Rat::one(), one(dg(vec![C(a)], vec![Dumbbell(0, a)]))),
                ),
            ),
        ),
    ]
}

/// `a`, `b` adjacent, `k` distant from both.
pub fn sixvalent_distant(a: usize, b: usize, k: usize) -> Relation {
    let s = vec![C(k), C(a), C(b), C(a)];
    rel(
        "sixvalent-distant",
        format!("i={a} j={b} k={k}"),
        one(dg(s.clone(), vec![Cross(0), Cross(1), Cross(2), Six(0)])),
        one(dg(s, vec![Six(1), Cross(0), Cross(1), Cross(2)])),
    )
}

/// Three pairwise distant colours.
pub fn three_distant(a: usize, b: usize, c: usize) -> Relation {
    let s = vec![C(c), C(a), C(b)];
    rel(
        "three-distant",
        format!("i={a} j={b} k={c}"),
        one(dg(s.clone(), vec![Cross(1), Cross(0), Cross(1)])),
        one(dg(s, vec![Cross(0), Cross(1), Cross(0)])),
    )
}

/// `r`, `g` distant, both adjacent to `b`: the two ways around the cycle of
/// reduced expressions of the longest element.
pub fn three_adjacent(r: usize, b: usize, g: usize) -> Relation {
    let s = vec![C(r), C(b), C(r), C(g), C(b), C(r)];
    rel(
        "three-adjacent",
        format!("i={r} j={b} k={g}"),
        one(dg(s.clone(), vec![Six(0), Six(2), Cross(1), Cross(4), Six(2), Six(0)])),
        one(dg(
            s,
            vec![Cross(2), Six(3), Six(1), Cross(0), Cross(3), Six(1), Six(3), Cross(2)],
        )),
    )
}

/// Relations with oriented strands, for colour `i` (and `c = i - 1`).
pub fn oriented(ev: &Evaluator, i: usize) -> Vec<Relation> {
    let c = ev.prev(i);
    let p = |v: &str| format!("i={i} {v}");
    let mut out = vec![
        rel(
            "oriented-reidemeister-two",
            p("up-left"),
            one(dg(vec![Rho, C(c)], vec![RhoOver(0), RhoOverInv(0)])),
            one(dg(vec![Rho, C(c)], vec![])),
        ),
        rel(
            "oriented-reidemeister-two",
            p("up-right"),
            one(dg(vec![C(i), Rho], vec![RhoOverInv(0), RhoOver(0)])),
            one(dg(vec![C(i), Rho], vec![])),
        ),
        rel(
            "oriented-reidemeister-two",
            p("down-left"),
            one(dg(vec![RhoInv, C(i)], vec![RhoInvOver(0), RhoInvOverInv(0)])),
            one(dg(vec![RhoInv, C(i)], vec![])),
        ),
        rel(
            "oriented-reidemeister-two",
            p("down-right"),
            one(dg(vec![C(c), RhoInv], vec![RhoInvOverInv(0), RhoInvOver(0)])),
            one(dg(vec![C(c), RhoInv], vec![])),
        ),
        rel(
            "oriented-dot-slide",
            p("down-unit"),
            one(dg(vec![RhoInv], vec![Up(1, i), RhoInvOver(0)])),
            one(dg(vec![RhoInv], vec![Up(0, c)])),
        ),
        rel(
            "oriented-dot-slide",
            p("down-counit"),
            one(dg(vec![RhoInv, C(i)], vec![RhoInvOver(0), Down(0)])),
            one(dg(vec![RhoInv, C(i)], vec![Down(1)])),
        ),
        rel(
            "oriented-dot-slide",
            p("up-unit"),
            one(dg(vec![Rho], vec![Up(1, c), RhoOver(0)])),
            one(dg(vec![Rho], vec![Up(0, i)])),
        ),
        rel(
            "oriented-dot-slide",
            p("up-counit"),
            one(dg(vec![Rho, C(c)], vec![RhoOver(0), Down(0)])),
            one(dg(vec![Rho, C(c)], vec![Down(1)])),
        ),
        rel(
            "oriented-pitchfork",
            p("up-split"),
            one(dg(vec![Rho, C(c)], vec![RhoOver(0), Split(0)])),
            one(dg(vec![Rho, C(c)], vec![Split(1), RhoOver(0), RhoOver(1)])),
        ),
        rel(
            "oriented-pitchfork",
            p("up-merge"),
            one(dg(vec![Rho, C(c), C(c)], vec![Merge(1), RhoOver(0)])),
            one(dg(vec![Rho, C(c), C(c)], vec![RhoOver(0), RhoOver(1), Merge(0)])),
        ),
        rel(
            "oriented-pitchfork",
            p("down-split"),
            one(dg(vec![RhoInv, C(i)], vec![RhoInvOver(0), Split(0)])),
            one(dg(vec![RhoInv, C(i)], vec![Split(1), RhoInvOver(0), RhoInvOver(1)])),
        ),
        rel(
            "oriented-pitchfork",
            p("down-merge"),
            one(dg(vec![RhoInv, C(i), C(i)], vec![Merge(1), RhoInvOver(0)])),
            one(dg(vec![RhoInv, C(i), C(i)], vec![RhoInvOver(0), RhoInvOver(1), Merge(0)])),
        ),
    ];
    let b = ev.next(i);
    out.push(rel(
        "oriented-six-valent",
        format!("i={i} j={b} down"),
        one(dg(
            vec![RhoInv, C(b), C(i), C(b)],
            vec![Six(1), RhoInvOver(0), RhoInvOver(1), RhoInvOver(2)],
        )),
        one(dg(
            vec![RhoInv, C(b), C(i), C(b)],
            vec![RhoInvOver(0), RhoInvOver(1), RhoInvOver(2), Six(0)],
        )),
    ));
    let (cb, ci) = (ev.prev(b), ev.prev(i));
    out.push(rel(
        "oriented-six-valent",
        format!("i={i} j={b} up"),
        one(dg(
            vec![Rho, C(cb), C(ci), C(cb)],
            vec![Six(1), RhoOver(0), RhoOver(1), RhoOver(2)],
        )),
        one(dg(
            vec![Rho, C(cb), C(ci), C(cb)],
            vec![RhoOver(0), RhoOver(1), RhoOver(2), Six(0)],
        )),
    ));
    out
}

/// Loops and zigzags of oriented strands alone.
pub fn oriented_only() -> Vec<Relation> {
    let mut out = vec![];
    for (v, first) in [("clockwise", true), ("anticlockwise", false)] {
        out.push(rel(
            "oriented-loop",
            v.into(),
            one(dg(vec![], vec![RhoCup(0, first), RhoCap(0)])),
            one(dg(vec![], vec![])),
        ));
    }
    for (v, s) in [("up-down", vec![Rho, RhoInv]), ("down-up", vec![RhoInv, Rho])] {
        let first = s[0] == Rho;
        out.push(rel(
            "oriented-inverse",
            v.into(),
            one(dg(s.clone(), vec![RhoCap(0), RhoCup(0, first)])),
            one(dg(s, vec![])),
        ));
    }
    out
}

/// Oriented strand passing a four-valent vertex of distant colours.
pub fn oriented_four_valent(ev: &Evaluator, i: usize, j: usize) -> Vec<Relation> {
    let (ci, cj) = (ev.prev(i), ev.prev(j));
    vec![
        rel(
            "oriented-four-valent",
            format!("i={i} j={j} down"),
            one(dg(vec![RhoInv, C(i), C(j)], vec![Cross(1), RhoInvOver(0), RhoInvOver(1)])),
            one(dg(vec![RhoInv, C(i), C(j)], vec![RhoInvOver(0), RhoInvOver(1), Cross(0)])),
        ),
        rel(
            "oriented-four-valent",
            format!("i={i} j={j} up"),
            one(dg(vec![Rho, C(ci), C(cj)], vec![Cross(1), RhoOver(0), RhoOver(1)])),
            one(dg(vec![Rho, C(ci), C(cj)], vec![RhoOver(0), RhoOver(1), Cross(0)])),
        ),
    ]
}

/// Every relation that makes sense for the colours of `alg`; oriented ones
/// only for the affine algebra.
pub fn all_relations(alg: ZigzagAlgebra) -> Vec<Relation> {
    let ev = Evaluator::new(alg);
    let cols = alg.vertices();
    let mut out = vec![];
    for &a in &cols {
        out.extend(one_colour(a));
        for &b in &cols {
            if ev.distant(a, b) {
                out.extend(distant_pair(a, b));
            }
            if ev.adjacent(a, b) {
                out.extend(adjacent_pair(a, b));
                for &k in &cols {
                    if ev.distant(a, k) && ev.distant(b, k) {
                        out.push(sixvalent_distant(a, b, k));
                    }
                    if ev.adjacent(b, k) && ev.distant(a, k) {
                        out.push(three_adjacent(a, b, k));
                    }
                }
            }
            for &k in &cols {
                if ev.distant(a, b) && ev.distant(a, k) && ev.distant(b, k) {
                    out.push(three_distant(a, b, k));
                }
            }
        }
    }
    if alg.flavor() == ZigzagFlavor::Affine {
        out.extend(oriented_only());
        for &i in &cols {
            out.extend(oriented(&ev, i));
            for &j in &cols {
                if ev.distant(i, j) && ev.distant(ev.prev(i), ev.prev(j)) {
                    out.extend(oriented_four_valent(&ev, i, j));
                }
            }
        }
    }
    out
}

/// Evaluates both sides; the detail says whether the common value is zero.
pub fn check(ev: &Evaluator, r: &Relation) -> Result<(bool, String)> {
    let lhs = ev.eval_sum(&r.lhs)?;
    if r.rhs.is_empty() {
        let z = lhs.is_zero();
        return Ok((z, if z { "lhs = 0".into() } else { "lhs is nonzero".into() }));
    }
    let rhs = fit_source(&ev.eval_sum(&r.rhs)?, &lhs.src)?;
    if lhs.tgt != rhs.tgt {
        return Ok((false, format!("targets differ: {} vs {}", lhs.tgt, rhs.tgt)));
    }
    let eq = nat_equal(&lhs, &rhs);
    let detail = match (eq, lhs.is_zero()) {
        (true, true) => "both sides 0".to_string(),
        (true, false) => "equal, nonzero".to_string(),
        (false, _) => {
            let diff = lhs.sub(&rhs)?;
            let n: usize = diff.comps.values().map(|m| m.entries().count()).sum();
            format!("{n} differing entries")
        }
    };
    Ok((eq, detail))
}

/// The relation suite on the finite (`M_d`) or affine (cover) algebra.
pub fn relation_suite(alg: ZigzagAlgebra, seed: u64) -> Report {
    let name = match alg.flavor() {
        ZigzagFlavor::Finite => "relations-Md",
        ZigzagFlavor::Affine => "relations-Mhat",
    };
    let ev = Evaluator::new(alg);
    let mut rep = Report::new(name, alg.rank(), 0, 0, seed);
    for r in all_relations(alg) {
        rep.record(r.id, &r.params, check(&ev, &r));
    }
    rep.finish()
}

/// Relations whose two sides are not both zero.
pub fn nontrivial_count(rep: &Report) -> usize {
    rep.checks.iter().filter(|c| c.detail == "equal, nonzero").count()
}
