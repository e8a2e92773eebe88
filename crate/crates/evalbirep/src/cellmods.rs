//! Graham–Lehrer cell modules of the extended affine Hecke algebra, their
//! bilinear form and radical, and the `(d-1)`-dimensional evaluation modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evalmaps::{ev_kind, EvalKind, EvalParam};
use crate::hecke::{Flavor, HeckeElement};
use crate::linalg::{Field, Matrix};
use crate::scalars::{LaurentPoly, RationalFunction};

type Rf = RationalFunction;
type Mat = Matrix<Rf>;

/// Coordinates with respect to `m_0, ..., m_{d-1}` (or `m_1, ..., m_{d-1}` for
/// evaluation modules).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleVector {
    pub coords: Vec<Rf>,
}

impl ModuleVector {
    pub fn zero(n: usize) -> Self {
        ModuleVector {
            coords: vec![Rf::zero(); n],
        }
    }

    pub fn basis(n: usize, j: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[j] = Rf::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Rf) -> Self {
        ModuleVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// `Some(c)` with `self = c * other`, if the two are proportional and `other != 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rf> {
        let k = other.coords.iter().position(|c| !c.is_zero())?;
        let c = &self.coords[k] / &other.coords[k];
        (other.scale(&c) == *self).then_some(c)
    }
}

fn apply(m: &Mat, v: &ModuleVector) -> ModuleVector {
    ModuleVector {
        coords: m.apply(&v.coords),
    }
}

fn q() -> Rf {
    Rf::q()
}

fn two() -> Rf {
    Rf::from_laurent(LaurentPoly::quantum_two())
}

fn check_rank(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidArgument("rank must be at least 3".into()));
    }
    Ok(())
}

fn nonzero(x: &Rf, what: &str) -> Result<()> {
    if x.is_zero() {
        return Err(Error::InvalidArgument(format!("{what} must be nonzero")));
    }
    Ok(())
}

/// The cell module `M_{z, lambda}` with basis `m_0, ..., m_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellModule {
    d: usize,
    z: Rf,
    lambda: Rf,
}

impl CellModule {
    pub fn new(d: usize, z: Rf, lambda: Rf) -> Result<Self> {
        check_rank(d)?;
        nonzero(&z, "z")?;
        nonzero(&lambda, "lambda")?;
        Ok(CellModule { d, z, lambda })
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn z(&self) -> &Rf {
        &self.z
    }

    pub fn lambda(&self) -> &Rf {
        &self.lambda
    }

    /// `b_i m_j`.
    fn b_on_basis(&self, i: usize, j: usize) -> ModuleVector {
        let d = self.d;
        let mut out = ModuleVector::zero(d);
        if i == j {
            out.coords[i] = two();
        } else if i == 1 && j == 0 {
            out.coords[1] = self.z.clone();
        } else if i == 0 && j == 1 {
            out.coords[0] = self.z.recip().unwrap();
        } else if (i + 1) % d == j || (j + 1) % d == i {
            out.coords[i] = Rf::one();
        }
        out
    }

    /// Matrix of `b_i`, column `j` holding `b_i m_j`.
    pub fn b_matrix(&self, i: usize) -> Result<Mat> {
        if i >= self.d {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                what: format!("generators of rank {}", self.d),
            });
        }
        let cols = (0..self.d).map(|j| self.b_on_basis(i, j).coords).collect();
        Ok(Mat::from_cols(cols))
    }

    /// Matrix of `rho`: `rho m_j = lambda z^{[j = 0]} m_{j+1}`.
    pub fn rho_matrix(&self) -> Mat {
        let d = self.d;
        let mut m = Mat::zeros(d, d);
        for j in 0..d {
            let c = if j == 0 {
                &self.lambda * &self.z
            } else {
                self.lambda.clone()
            };
            m.set((j + 1) % d, j, c);
        }
        m
    }

    pub fn act_b(&self, i: usize, v: &ModuleVector) -> Result<ModuleVector> {
        Ok(apply(&self.b_matrix(i)?, v))
    }

    pub fn act_rho(&self, v: &ModuleVector) -> ModuleVector {
        apply(&self.rho_matrix(), v)
    }

    /// Matrix of an arbitrary extended affine Hecke element.
    pub fn act_matrix(&self, x: &HeckeElement) -> Result<Mat> {
        check_same_rank(self.d, x)?;
        let rho = self.rho_matrix();
        let rho_inv = rho.inverse().expect("rho acts invertibly");
        let t: Vec<Mat> = (0..self.d)
            .map(|i| t_from_b(&self.b_matrix(i).unwrap()))
            .collect();
        Ok(expand(x, &rho, &rho_inv, &t))
    }

    pub fn act(&self, x: &HeckeElement, v: &ModuleVector) -> Result<ModuleVector> {
        Ok(apply(&self.act_matrix(x)?, v))
    }
}

fn check_same_rank(d: usize, x: &HeckeElement) -> Result<()> {
    if x.rank() != d {
        return Err(Error::RankMismatch(d, x.rank()));
    }
    Ok(())
}

/// `T_i = b_i - q`.
fn t_from_b(b: &Mat) -> Mat {
    b.sub(&Mat::identity(b.rows()).scale(&q()))
}

/// Sum over terms `c rho^m T_{s_1} ... T_{s_k}` of the corresponding matrix products.
fn expand(x: &HeckeElement, rho: &Mat, rho_inv: &Mat, t: &[Mat]) -> Mat {
    let dim = rho.rows();
    let mut out = Mat::zeros(dim, dim);
    for (w, c) in x.terms() {
        let (m, word) = w.reduced_word();
        let r = if m >= 0 { rho } else { rho_inv };
        let mut acc = Mat::identity(dim);
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(r);
        }
        for &i in &word {
            acc = acc.mul(&t[i]);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Gram matrix `G[i][j] = <m_i, m_j>` of the pairing `M_z x M_{z^{-1}} -> k`.
pub fn gram_matrix(d: usize, z: &Rf) -> Result<Mat> {
    check_rank(d)?;
    nonzero(z, "z")?;
    let mut g = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let v = if i == j {
                two()
            } else if i == 0 && j == 1 {
                z.clone()
            } else if i == 1 && j == 0 {
                z.recip()?
            } else if (i + 1) % d == j || (j + 1) % d == i {
                Rf::one()
            } else {
                continue;
            };
            g.set(i, j, v);
        }
    }
    Ok(g)
}

/// `<u, v>` for `u` in `M_z` and `v` in `M_{z^{-1}}`.
pub fn pairing(d: usize, z: &Rf, u: &ModuleVector, v: &ModuleVector) -> Result<Rf> {
    let g = gram_matrix(d, z)?;
    let gv = g.apply(&v.coords);
    Ok(u.coords
        .iter()
        .zip(&gv)
        .fold(Rf::zero(), |acc, (a, b)| &acc + &(a * b)))
}

/// Basis of `{m in M_z : <m, -> = 0}`. The module structure does not depend on
/// `lambda` here: the radical is the same subspace for every `lambda`.
pub fn radical(d: usize, z: &Rf) -> Result<Vec<ModuleVector>> {
    let g = gram_matrix(d, z)?;
    Ok(g.transpose()
        .nullspace()
        .into_iter()
        .map(|coords| ModuleVector { coords })
        .collect())
}

/// `n_+ = sum_{k=1}^d (-q)^{-k} m_k` (`plus`) or `n_- = sum_k (-q)^k m_k`, with `m_d = m_0`.
pub fn n_vector(d: usize, plus: bool) -> ModuleVector {
    let mut v = ModuleVector::zero(d);
    for k in 1..=d {
        let e = if plus { -(k as i32) } else { k as i32 };
        v.coords[k % d] = Rf::neg_q_pow(e);
    }
    v
}

/// The `(d-1)`-dimensional module `M_d` pulled back along an evaluation map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalModule {
    d: usize,
    a: EvalParam,
    kind: EvalKind,
}

impl EvalModule {
    pub fn new(d: usize, a: EvalParam, kind: EvalKind) -> Result<Self> {
        check_rank(d)?;
        Ok(EvalModule { d, a, kind })
    }

    pub fn dim(&self) -> usize {
        self.d - 1
    }

    /// Matrix of `b_i`, `1 <= i <= d-1`, in the basis `m_1, ..., m_{d-1}`.
    pub fn b_matrix(&self, i: usize) -> Result<Mat> {
        finite_b_matrix(self.d, i)
    }

    /// Matrix of `ev_a(x)` (or `ev'_a(x)`) for an extended affine element `x`.
    pub fn act_matrix(&self, x: &HeckeElement) -> Result<Mat> {
        check_same_rank(self.d, x)?;
        let y = ev_kind(self.kind, &self.a, &x.clone().promote(Flavor::Extended)?)?;
        finite_act_matrix(self.d, &y)
    }

    pub fn act(&self, x: &HeckeElement, v: &ModuleVector) -> Result<ModuleVector> {
        Ok(apply(&self.act_matrix(x)?, v))
    }
}

/// `b_i` on `M_d`: `[2] m_i` if `j = i`, `m_i` if `|i - j| = 1`, else `0`.
pub fn finite_b_matrix(d: usize, i: usize) -> Result<Mat> {
    if i < 1 || i >= d {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            what: format!("finite generators of rank {d}"),
        });
    }
    let n = d - 1;
    let mut m = Mat::zeros(n, n);
    for j in 1..d {
        if j == i {
            m.set(i - 1, j - 1, two());
        } else if j + 1 == i || i + 1 == j {
            m.set(i - 1, j - 1, Rf::one());
        }
    }
    Ok(m)
}

/// Matrix of a finite Hecke element acting on `M_d`.
pub fn finite_act_matrix(d: usize, x: &HeckeElement) -> Result<Mat> {
    if x.terms().any(|(w, _)| !w.is_finite()) {
        return Err(Error::FlavorMismatch("M_d only carries the finite Hecke action".into()));
    }
    let mut t = vec![Mat::zeros(d - 1, d - 1)];
    t.extend((1..d).map(|i| t_from_b(&finite_b_matrix(d, i).unwrap())));
    let id = Mat::identity(d - 1);
    Ok(expand(x, &id, &id, &t))
}

/// Action matrices of `b_0, ..., b_{d-1}` and `rho` on a `(d-1)`-dimensional module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorMatrices {
    pub b: Vec<Mat>,
    pub rho: Mat,
}

impl GeneratorMatrices {
    fn of_eval(m: &EvalModule) -> Result<Self> {
        let d = m.d;
        let b = (0..d)
            .map(|i| m.act_matrix(&HeckeElement::kl_generator(d, Flavor::Extended, i)?))
            .collect::<Result<Vec<_>>>()?;
        let rho = m.act_matrix(&HeckeElement::rho_pow(d, 1))?;
        Ok(GeneratorMatrices { b, rho })
    }
}

/// The simple quotient `M_{z, lambda} / rad` in the basis of images of
/// `m_1, ..., m_{d-1}`; `None` when the radical is zero or contains no vector
/// with nonzero `m_0`-coordinate.
pub fn simple_quotient(cell: &CellModule) -> Result<Option<GeneratorMatrices>> {
    let d = cell.d;
    let rad = radical(d, &cell.z)?;
    let [n] = rad.as_slice() else {
        return Ok(None);
    };
    if n.coords[0].is_zero() {
        return Ok(None);
    }
    // projection onto span(m_1..m_{d-1}) along n
    let mut proj = Mat::zeros(d - 1, d);
    for j in 1..d {
        proj.set(j - 1, j, Rf::one());
        proj.set(j - 1, 0, (&n.coords[j] / &n.coords[0]).neg());
    }
    let mut lift = Mat::zeros(d, d - 1);
    for j in 1..d {
        lift.set(j, j - 1, Rf::one());
    }
    let induced = |m: &Mat| proj.mul(m).mul(&lift);
    let b = (0..d)
        .map(|i| Ok(induced(&cell.b_matrix(i)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(GeneratorMatrices {
        b,
        rho: induced(&cell.rho_matrix()),
    }))
}

/// Outcome of comparing a simple quotient of a cell module with an evaluation module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientComparison {
    pub d: usize,
    pub plus: bool,
    pub lambda: Rf,
    pub a: Rf,
    pub z: Rf,
    /// Agreement per generator `b_0, ..., b_{d-1}`, then `rho`.
    pub agree: Vec<bool>,
}

impl QuotientComparison {
    pub fn all_agree(&self) -> bool {
        !self.agree.is_empty() && self.agree.iter().all(|&x| x)
    }
}

/// Compares `L^+_{d,lambda}` with `M_d^{ev_a}`, `a = lambda (-q)^{d-2}` (`plus`),
/// or `L^-_{d,lambda}` with `M_d^{ev'_a}`, `a = lambda^{-1} (-q)^{2-d}`.
pub fn iso_to_simple_quotient(d: usize, lambda: &Rf, plus: bool) -> Result<QuotientComparison> {
    check_rank(d)?;
    nonzero(lambda, "lambda")?;
    let dd = d as i32;
    let (z, lam, a, kind) = if plus {
        (Rf::neg_q_pow(dd), lambda.clone(), lambda * &Rf::neg_q_pow(dd - 2), EvalKind::Plain)
    } else {
        let li = lambda.recip()?;
        (Rf::neg_q_pow(-dd), li.clone(), &li * &Rf::neg_q_pow(2 - dd), EvalKind::Prime)
    };
    let cell = CellModule::new(d, z.clone(), lam)?;
    let quotient = simple_quotient(&cell)?;
    let eval = GeneratorMatrices::of_eval(&EvalModule::new(d, EvalParam::new(a.clone())?, kind)?)?;
    let agree = match quotient {
        None => vec![],
        Some(l) => {
            let mut v: Vec<bool> = l.b.iter().zip(&eval.b).map(|(x, y)| x == y).collect();
            v.push(l.rho == eval.rho);
            v
        }
    };
    Ok(QuotientComparison {
        d,
        plus,
        lambda: lambda.clone(),
        a,
        z,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Rf {
        Rf::parse(x).unwrap()
    }

    fn m(d: usize, j: usize) -> ModuleVector {
        ModuleVector::basis(d, j)
    }

    #[test]
    fn cell_action_examples() {
        let c = CellModule::new(4, s("q^3"), s("q")).unwrap();
        assert_eq!(c.act_b(1, &m(4, 0)).unwrap(), m(4, 1).scale(&s("q^3")));
        assert_eq!(c.act_b(0, &m(4, 1)).unwrap(), m(4, 0).scale(&s("q^-3")));
        assert_eq!(c.act_b(2, &m(4, 2)).unwrap(), m(4, 2).scale(&two()));
        assert_eq!(c.act_b(2, &m(4, 3)).unwrap(), m(4, 2));
        assert!(c.act_b(0, &m(4, 2)).unwrap().is_zero());
        assert_eq!(c.act_rho(&m(4, 0)), m(4, 1).scale(&s("q^4")));
        assert_eq!(c.act_rho(&m(4, 1)), m(4, 2).scale(&s("q")));
        let rho4 = HeckeElement::rho_pow(4, 4);
        assert_eq!(c.act(&rho4, &m(4, 1)).unwrap(), m(4, 1).scale(&s("q^7")));
        assert!(c.act_b(4, &m(4, 1)).is_err());
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(3, &s("q")).unwrap();
        assert_eq!(g.get(0, 1), &s("q"));
        assert_eq!(g.get(1, 1), &two());
        assert_eq!(g.rank(), 3);
    }

    #[test]
    fn radical_examples() {
        let r = radical(3, &s("(-q)^3")).unwrap();
        assert_eq!(r.len(), 1);
        assert!(n_vector(3, true).ratio_to(&r[0]).is_some());
        assert!(radical(3, &s("q^2")).unwrap().is_empty());
        let c = CellModule::new(3, s("(-q)^3"), s("1")).unwrap();
        for i in 0..3 {
            assert!(c.act_b(i, &n_vector(3, true)).unwrap().is_zero());
        }
    }

    #[test]
    fn eval_rho_action() {
        for d in 3..6 {
            let a = s("q^2");
            let e = EvalModule::new(d, EvalParam::new(a.clone()).unwrap(), EvalKind::Plain).unwrap();
            let rho = HeckeElement::rho_pow(d, 1);
            let n = d - 1;
            for j in 1..d - 1 {
                let want = ModuleVector::basis(n, j).scale(&(&a * &Rf::neg_q_pow(2 - d as i32)));
                assert_eq!(e.act(&rho, &ModuleVector::basis(n, j - 1)).unwrap(), want);
            }
            let mut want = ModuleVector::zero(n);
            for k in 1..d {
                want.coords[k - 1] = &(&a * &q()) * &Rf::neg_q_pow(1 - k as i32);
            }
            assert_eq!(e.act(&rho, &ModuleVector::basis(n, n - 1)).unwrap(), want);
        }
    }

    #[test]
    fn eval_b_far_apart() {
        let b = finite_b_matrix(5, 1).unwrap();
        assert!(b.get(0, 2).is_zero());
        assert!(b.get(0, 3).is_zero());
    }

    #[test]
    fn quotient_matches_eval() {
        for d in 3..6 {
            for lam in ["1", "q"] {
                for plus in [true, false] {
                    let r = iso_to_simple_quotient(d, &s(lam), plus).unwrap();
                    assert!(r.all_agree(), "d={d} lambda={lam} plus={plus}: {:?}", r.agree);
                }
            }
        }
    }

    #[test]
    fn quotient_rho_formula() {
        let d = 4;
        let lam = s("q");
        let cell = CellModule::new(d, Rf::neg_q_pow(d as i32), lam.clone()).unwrap();
        let l = simple_quotient(&cell).unwrap().unwrap();
        let col = l.rho.col(d - 2);
        for k in 1..d {
            // -lambda (-q)^k at m_{d-k}
            assert_eq!(col[d - k - 1], (&lam * &Rf::neg_q_pow(k as i32)).neg());
        }
    }
}
