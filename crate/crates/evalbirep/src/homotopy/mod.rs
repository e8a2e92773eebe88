//! Bounded homotopy category of graded projective modules over a zigzag
//! algebra: complexes, Gaussian elimination, Hom classes, isomorphism tests and
//! complexes of functors.

pub mod complex;
pub mod functors;
pub mod maps;
pub mod reduce;

pub use complex::{same_entries, ChainMap, Complex, Homotopy, SerialComplex};
pub use functors::{naturally_homotopic, rouquier, tensor_all, FTerm, FunctorComplex, NatChainMap};
pub use maps::{hom_classes, iso_test, HomClasses, IsoOutcome, MapSpace};
pub use reduce::{minimal_model, reduce, Reduction};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, LaurentPoly};
    use crate::zigzag::ZigzagAlgebra;

    fn fin(d: usize) -> ZigzagAlgebra {
        ZigzagAlgebra::finite(d).unwrap()
    }

    fn check_reduction(c: &Complex) -> Reduction {
        let r = reduce(c);
        let m = &r.minimal;
        assert!(m.is_minimal());
        m.validate().unwrap();
        assert!(r.to_min.is_chain_map(c, m));
        assert!(r.from_min.is_chain_map(m, c));
        let fg = r.to_min.after(&r.from_min);
        assert!(fg.sub(&ChainMap::identity(m)).is_zero());
        let gf = r.from_min.after(&r.to_min).sub(&ChainMap::identity(c));
        let b = r.homotopy.boundary(c, c, 0, 0);
        for (k, x) in &gf.comps {
            assert!(same_entries(x, &b.comps[k]), "degree {k}");
        }
        r
    }

    #[test]
    fn rouquier_on_its_own_vertex() {
        let z = fin(4);
        let t = rouquier(z, 1, false).unwrap();
        let c = t.at_vertex(1).unwrap();
        assert_eq!(c.to_string(), "0: Ze_1<1>[0] + Ze_1<-1>[0] | 1: Ze_1<1>[0]");
        let r = check_reduction(&c);
        assert_eq!(r.minimal.to_string(), "0: Ze_1<-1>[0]");
        let ti = rouquier(z, 1, true).unwrap();
        assert_eq!(minimal_model(&ti.at_vertex(1).unwrap()).to_string(), "0: Ze_1<1>[0]");
    }

    #[test]
    fn inverse_and_braid_relations() {
        let z = fin(4);
        let t = |i, inv| rouquier(z, i, inv).unwrap();
        let tt = tensor_all(z, &[t(2, false), t(2, true)]).unwrap();
        tt.validate().unwrap();
        let a = tensor_all(z, &[t(1, false), t(2, false), t(1, false)]).unwrap();
        let b = tensor_all(z, &[t(2, false), t(1, false), t(2, false)]).unwrap();
        for k in z.vertices() {
            let e = Complex::indecomposable(z, k).unwrap();
            let m = minimal_model(&tt.at_vertex(k).unwrap());
            assert!(iso_test(&m, &e).unwrap().is_iso());
            let ma = check_reduction(&a.at_vertex(k).unwrap()).minimal;
            let mb = minimal_model(&b.at_vertex(k).unwrap());
            assert!(iso_test(&ma, &mb).unwrap().is_iso(), "vertex {k}");
        }
    }

    #[test]
    fn endomorphisms_of_a_projective() {
        let z = fin(4);
        let e = Complex::indecomposable(z, 2).unwrap();
        assert_eq!(hom_classes(&e, &e, 0, 0).dim(), 1);
        assert_eq!(hom_classes(&e, &e, 2, 0).dim(), 1);
        assert_eq!(hom_classes(&e, &e, 1, 0).dim(), 0);
        let e1 = Complex::indecomposable(z, 1).unwrap();
        assert_eq!(hom_classes(&e, &e1, 1, 0).dim(), 1);
        assert!(matches!(iso_test(&e, &e1).unwrap(), IsoOutcome::NotIsomorphic(_)));
    }

    #[test]
    fn decategorification_and_text() {
        let z = fin(4);
        let c = rouquier(z, 1, false).unwrap().at_vertex(2).unwrap();
        // T_1 (Ze_2) = (Ze_1 -> Ze_2<1>)
        let dc = c.decat();
        assert_eq!(dc[&1], LaurentPoly::one());
        assert_eq!(dc[&2], LaurentPoly::monomial(rat(-1), 1));
        let back = Complex::from_serial(z, &c.to_serial()).unwrap();
        assert_eq!(back, c);
        assert_eq!(minimal_model(&c), c);
    }
}
