//! Named verification suites, each producing a [`Report`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bireps::endalg::{end_algebra_suite, hom_evidence_suite};
use crate::bireps::evaluation::{decat_suite, prop_invariant_suite};
use crate::bireps::lemmas::rouquier_lemmas_suite;
use crate::bireps::relations::relation_suite;
use crate::cellmods::{gram_matrix, iso_to_simple_quotient, n_vector, radical, CellModule};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalars::RationalFunction;
use crate::zigzag::ZigzagAlgebra;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    RelationsMd,
    RelationsMhat,
    PropInvariant,
    EndAlgebra,
    Decat,
    CellRadical,
    RouquierLemmas,
    HomEvidence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::RelationsMd,
        Suite::RelationsMhat,
        Suite::PropInvariant,
        Suite::EndAlgebra,
        Suite::Decat,
        Suite::CellRadical,
        Suite::RouquierLemmas,
        Suite::HomEvidence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RelationsMd => "relations-Md",
            Suite::RelationsMhat => "relations-Mhat",
            Suite::PropInvariant => "prop-invariant",
            Suite::EndAlgebra => "end-algebra",
            Suite::Decat => "decat",
            Suite::CellRadical => "cell-radical",
            Suite::RouquierLemmas => "rouquier-lemmas",
            Suite::HomEvidence => "hom-evidence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::ALL.map(|x| x.name()).join(", ")
                ))
            })
    }
}

/// Parameters shared by the suites. `r` and `s` default to `(d-2, 2-d)`.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub d: usize,
    pub r: Option<i32>,
    pub s: Option<i32>,
    pub seed: u64,
    pub z: Option<RationalFunction>,
    pub lambda: Option<RationalFunction>,
}

impl SuiteConfig {
    pub fn new(d: usize) -> Self {
        SuiteConfig {
            d,
            r: None,
            s: None,
            seed: DEFAULT_SEED,
            z: None,
            lambda: None,
        }
    }

    pub fn rs(&self) -> (i32, i32) {
        let d = self.d as i32;
        (self.r.unwrap_or(d - 2), self.s.unwrap_or(2 - d))
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Report> {
    let d = cfg.d;
    let (r, s) = cfg.rs();
    let seed = cfg.seed;
    let mut rep = match suite {
        Suite::RelationsMd => relation_suite(ZigzagAlgebra::finite(d)?, seed),
        Suite::RelationsMhat => relation_suite(ZigzagAlgebra::affine(d)?, seed),
        Suite::PropInvariant => prop_invariant_suite(d, r, s, seed)?,
        Suite::EndAlgebra => end_algebra_suite(d, seed)?,
        Suite::Decat => decat_suite(d, r, s, seed)?,
        Suite::CellRadical => cell_radical_suite(d, cfg.z.as_ref(), cfg.lambda.as_ref(), seed)?,
        Suite::RouquierLemmas => rouquier_lemmas_suite(d, seed)?,
        Suite::HomEvidence => hom_evidence_suite(d, seed)?,
    };
    rep.r = r;
    rep.s = s;
    Ok(rep)
}

fn critical(d: usize, z: &RationalFunction) -> bool {
    let e = d as i32;
    *z == RationalFunction::neg_q_pow(e) || *z == RationalFunction::neg_q_pow(-e)
}

/// Radical of the cell module form, the null vectors `n_+-` and the simple
/// quotients. Without `z` the radical is probed at `(-q)^{+-d}`, `q`, `q^2`
/// and `1`; without `lambda` the quotients are compared at `1` and `q`.
pub fn cell_radical_suite(
    d: usize,
    z: Option<&RationalFunction>,
    lambda: Option<&RationalFunction>,
    seed: u64,
) -> Result<Report> {
    let di = d as i32;
    let mut rep = Report::new("cell-radical", d, di - 2, 2 - di, seed);
    let zs: Vec<RationalFunction> = match z {
        Some(z) => vec![z.clone()],
        None => vec![
            RationalFunction::neg_q_pow(di),
            RationalFunction::neg_q_pow(-di),
            RationalFunction::q(),
            RationalFunction::q_pow(2),
            RationalFunction::one(),
        ],
    };
    for z in &zs {
        rep.record(
            "radical-dimension",
            &format!("z={z}"),
            (|| {
                let dim = radical(d, z)?.len();
                let rank = gram_matrix(d, z)?.rank();
                let want = usize::from(critical(d, z));
                Ok((dim == want && rank + dim == d, format!("radical dimension {dim}, form rank {rank}")))
            })(),
        );
    }
    let lambdas: Vec<RationalFunction> = match lambda {
        Some(l) => vec![l.clone()],
        None => vec![RationalFunction::one(), RationalFunction::q()],
    };
    for plus in [true, false] {
        let sign = if plus { "+" } else { "-" };
        let z = RationalFunction::neg_q_pow(if plus { di } else { -di });
        let n = n_vector(d, plus);
        rep.record(
            "null-vector-spans-radical",
            sign,
            (|| {
                let rad = radical(d, &z)?;
                let ok = matches!(rad.as_slice(), [v] if v.ratio_to(&n).is_some());
                Ok((ok, format!("radical dimension {}", rad.len())))
            })(),
        );
        for l in &lambdas {
            let params = format!("{sign} lambda={l}");
            rep.record(
                "null-vector-annihilated",
                &params,
                (|| {
                    let cell = CellModule::new(d, z.clone(), l.clone())?;
                    for i in 0..d {
                        if !cell.act_b(i, &n)?.is_zero() {
                            return Ok((false, format!("b{i} n != 0")));
                        }
                    }
                    Ok((true, "b_i n = 0 for all i".into()))
                })(),
            );
            rep.record(
                "null-vector-rotation",
                &params,
                (|| {
                    let cell = CellModule::new(d, z.clone(), l.clone())?;
                    let want = l * &RationalFunction::neg_q_pow(if plus { 1 } else { -1 });
                    let got = cell.act_rho(&n).ratio_to(&n);
                    let ok = got.as_ref() == Some(&want);
                    Ok((ok, format!("eigenvalue {}", got.map_or("none".into(), |g| g.to_string()))))
                })(),
            );
            rep.record(
                "simple-quotient",
                &params,
                iso_to_simple_quotient(d, l, plus).map(|c| (c.all_agree(), format!("{:?}", c.agree))),
            );
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cell_radical_given_z() {
        let z = RationalFunction::neg_q_pow(4);
        let r = cell_radical_suite(4, Some(&z), None, 0).unwrap();
        assert!(r.all_pass(), "{}", r.summary());
        let c = r.checks.iter().find(|c| c.id == "radical-dimension").unwrap();
        assert!(c.detail.starts_with("radical dimension 1"));
    }

    #[test]
    fn cell_radical_sweep() {
        for d in 3..=6 {
            let r = cell_radical_suite(d, None, None, 0).unwrap();
            assert!(r.all_pass(), "{}", r.summary());
        }
    }
}
