//! The evaluation homomorphisms from the extended affine Hecke algebra to the
//! finite one, and the Bernstein elements `y_i`, `y_i^*`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{Flavor, HeckeElement};
use crate::scalars::RationalFunction;

/// Nonzero evaluation parameter `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalParam {
    a: RationalFunction,
}

impl EvalParam {
    pub fn new(a: RationalFunction) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("evaluation parameter must be nonzero".into()));
        }
        Ok(EvalParam { a })
    }

    pub fn value(&self) -> &RationalFunction {
        &self.a
    }

    pub fn bar(&self) -> Self {
        EvalParam { a: self.a.bar() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalKind {
    /// `rho -> a T_1^{-1} ... T_{d-1}^{-1}`
    Plain,
    /// `rho -> a T_1 ... T_{d-1}`
    Prime,
}

fn fin_t(d: usize, i: usize) -> HeckeElement {
    HeckeElement::t(d, Flavor::Finite, i).unwrap()
}

fn fin_t_inv(d: usize, i: usize) -> HeckeElement {
    HeckeElement::t_inverse(d, Flavor::Finite, i).unwrap()
}

fn product(d: usize, factors: impl IntoIterator<Item = HeckeElement>) -> HeckeElement {
    factors
        .into_iter()
        .fold(HeckeElement::one(d, Flavor::Finite), |acc, x| &acc * &x)
}

/// Images of `rho`, `rho^{-1}` and `T_0..T_{d-1}` under one evaluation map.
struct GeneratorImages {
    rho: HeckeElement,
    rho_inv: HeckeElement,
    t: Vec<HeckeElement>,
}

impl GeneratorImages {
    fn new(kind: EvalKind, a: &EvalParam, d: usize) -> Result<Self> {
        let a_inv = a.a.recip()?;
        let (rho, rho_inv) = match kind {
            EvalKind::Plain => (
                product(d, (1..d).map(|i| fin_t_inv(d, i))).scale(&a.a),
                product(d, (1..d).rev().map(|i| fin_t(d, i))).scale(&a_inv),
            ),
            EvalKind::Prime => (
                product(d, (1..d).map(|i| fin_t(d, i))).scale(&a.a),
                product(d, (1..d).rev().map(|i| fin_t_inv(d, i))).scale(&a_inv),
            ),
        };
        // T_0 = rho^{-1} T_1 rho
        let t0 = &(&rho_inv * &fin_t(d, 1)) * &rho;
        let mut t = vec![t0];
        t.extend((1..d).map(|i| fin_t(d, i)));
        Ok(GeneratorImages { rho, rho_inv, t })
    }

    fn image(&self, x: &HeckeElement) -> HeckeElement {
        let d = x.rank();
        let mut out = HeckeElement::zero(d, Flavor::Finite);
        for (w, c) in x.terms() {
            let (m, word) = w.reduced_word();
            let r = if m >= 0 { &self.rho } else { &self.rho_inv };
            let mut img = HeckeElement::one(d, Flavor::Finite);
            for _ in 0..m.unsigned_abs() {
                img = &img * r;
            }
            for &i in &word {
                img = &img * &self.t[i];
            }
            out = out + img.scale(c);
        }
        out
    }
}

fn evaluate(kind: EvalKind, a: &EvalParam, x: &HeckeElement) -> Result<HeckeElement> {
    let d = x.rank();
    if d < 3 {
        return Err(Error::InvalidArgument("rank must be at least 3".into()));
    }
    Ok(GeneratorImages::new(kind, a, d)?.image(x))
}

/// `ev_a(x)`, fixing `T_1..T_{d-1}` and sending `rho` to `a T_1^{-1} ... T_{d-1}^{-1}`.
pub fn ev(a: &EvalParam, x: &HeckeElement) -> Result<HeckeElement> {
    evaluate(EvalKind::Plain, a, x)
}

/// `ev'_a(x)`, fixing `T_1..T_{d-1}` and sending `rho` to `a T_1 ... T_{d-1}`.
pub fn ev_prime(a: &EvalParam, x: &HeckeElement) -> Result<HeckeElement> {
    evaluate(EvalKind::Prime, a, x)
}

pub fn ev_kind(kind: EvalKind, a: &EvalParam, x: &HeckeElement) -> Result<HeckeElement> {
    evaluate(kind, a, x)
}

/// Bernstein element `y_i` (or `y_i^*` when `star`), `1 <= i <= d-1`.
pub fn bernstein_y(d: usize, i: usize, star: bool) -> Result<HeckeElement> {
    if i < 1 || i >= d {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            what: format!("Bernstein elements of rank {d} (1..={})", d - 1),
        });
    }
    let e = Flavor::Extended;
    let t = |j| HeckeElement::t(d, e, j).unwrap();
    let ti = |j| HeckeElement::t_inverse(d, e, j).unwrap();
    let mut acc = HeckeElement::one(d, e);
    // left part: T_{i-1}^{-1} ... T_1^{-1}  (resp. T_{i-1} ... T_1)
    for j in (1..i).rev() {
        acc = &acc * &if star { t(j) } else { ti(j) };
    }
    acc = &acc * &HeckeElement::rho_pow(d, 1);
    // right part: T_{d-1} ... T_i  (resp. inverses)
    for j in (i..d).rev() {
        acc = &acc * &if star { ti(j) } else { t(j) };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> EvalParam {
        EvalParam::new(RationalFunction::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn fixes_finite_generators() {
        for d in 3..5 {
            for i in 1..d {
                let x = HeckeElement::t(d, Flavor::Extended, i).unwrap();
                assert_eq!(ev(&a("q"), &x).unwrap(), fin_t(d, i));
                assert_eq!(ev_prime(&a("q"), &x).unwrap(), fin_t(d, i));
            }
        }
    }

    #[test]
    fn image_of_t0() {
        for d in 3..6 {
            // T_{d-1} ... T_2 T_1 T_2^{-1} ... T_{d-1}^{-1}
            let mut f: Vec<HeckeElement> = (1..d).rev().map(|i| fin_t(d, i)).collect();
            f.extend((2..d).map(|i| fin_t_inv(d, i)));
            let expect = product(d, f);
            let t0 = HeckeElement::t(d, Flavor::Affine, 0).unwrap();
            assert_eq!(ev(&a("q^2"), &t0).unwrap(), expect);
            assert_eq!(ev(&a("1"), &t0).unwrap(), expect);
        }
    }

    #[test]
    fn y1_goes_to_a() {
        for d in 3..5 {
            for s in ["1", "q", "-q", "q^2"] {
                let p = a(s);
                let one = HeckeElement::one(d, Flavor::Finite).scale(p.value());
                assert_eq!(ev(&p, &bernstein_y(d, 1, false).unwrap()).unwrap(), one);
                assert_eq!(ev_prime(&p, &bernstein_y(d, 1, true).unwrap()).unwrap(), one);
            }
        }
    }

    #[test]
    fn bernstein_recursions() {
        let d = 5;
        for i in 1..d - 1 {
            let ti = HeckeElement::t_inverse(d, Flavor::Extended, i).unwrap();
            let t = HeckeElement::t(d, Flavor::Extended, i).unwrap();
            let y = bernstein_y(d, i, false).unwrap();
            assert_eq!(&(&ti * &y) * &ti, bernstein_y(d, i + 1, false).unwrap());
            let ys = bernstein_y(d, i, true).unwrap();
            assert_eq!(&(&t * &ys) * &t, bernstein_y(d, i + 1, true).unwrap());
        }
        assert!(bernstein_y(d, d, false).is_err());
    }

    #[test]
    fn zero_parameter_rejected() {
        assert!(EvalParam::new(RationalFunction::zero()).is_err());
    }
}
