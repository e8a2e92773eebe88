use proptest::prelude::*;

use evalbirep::bireps::lemmas::{apply_word, Factor};
use evalbirep::hecke::{Flavor, HeckeElement as H};
use evalbirep::homotopy::{iso_test, minimal_model, Complex};
use evalbirep::scalars::{parse_scalar, rat, LaurentPoly, RationalFunction as Rf};
use evalbirep::zigzag::{ZigzagAlgebra, ZigzagElement};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i32..5, -5i64..6), 0..4)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(k, c)| (k, rat(c)))))
}

fn scalar() -> impl Strategy<Value = Rf> {
    (laurent(), laurent()).prop_filter_map("zero denominator", |(n, d)| Rf::new(n, d).ok())
}

#[derive(Clone, Debug)]
enum Gen {
    T(usize, bool),
    Rho(bool),
}

fn hecke_word(d: usize) -> impl Strategy<Value = Vec<Gen>> {
    let g = prop_oneof![
        (0..d, any::<bool>()).prop_map(|(i, inv)| Gen::T(i, inv)),
        any::<bool>().prop_map(Gen::Rho),
    ];
    prop::collection::vec(g, 0..5)
}

fn gen_element(d: usize, g: &Gen) -> H {
    match *g {
        Gen::T(i, false) => H::t(d, Flavor::Extended, i).unwrap(),
        Gen::T(i, true) => H::t_inverse(d, Flavor::Extended, i).unwrap(),
        Gen::Rho(inv) => H::rho_pow(d, if inv { -1 } else { 1 }),
    }
}

fn word_element(d: usize, w: &[Gen]) -> H {
    w.iter().fold(H::one(d, Flavor::Extended), |acc, g| &acc * &gen_element(d, g))
}

fn inverse_word(w: &[Gen]) -> Vec<Gen> {
    w.iter()
        .rev()
        .map(|g| match *g {
            Gen::T(i, inv) => Gen::T(i, !inv),
            Gen::Rho(inv) => Gen::Rho(!inv),
        })
        .collect()
}

fn same(a: &H, b: &H) -> bool {
    a.try_add(&b.scale(&Rf::int(-1))).unwrap().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_text_round_trip(x in scalar()) {
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn scalar_field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert!((&x * &x.recip().unwrap()).is_one());
        }
        prop_assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn hecke_words_are_invertible(d in 3usize..5, w in hecke_word(4)) {
        let w: Vec<Gen> = w.into_iter().map(|g| match g {
            Gen::T(i, inv) => Gen::T(i % d, inv),
            g => g,
        }).collect();
        let x = word_element(d, &w);
        let y = word_element(d, &inverse_word(&w));
        prop_assert!(same(&(&x * &y), &H::one(d, Flavor::Extended)));
    }

    #[test]
    fn hecke_associative_and_bar_multiplicative(u in hecke_word(3), v in hecke_word(3), w in hecke_word(3)) {
        let d = 3;
        let (x, y, z) = (word_element(d, &u), word_element(d, &v), word_element(d, &w));
        let x = x.try_add(&y.scale(&Rf::q())).unwrap();
        prop_assert!(same(&(&(&x * &y) * &z), &(&x * &(&y * &z))));
        prop_assert!(same(&(&x * &y).bar(), &(&x.bar() * &y.bar())));
        prop_assert!(same(&x.bar().bar(), &x));
    }

    #[test]
    fn zigzag_associative(d in 3usize..7, affine in any::<bool>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let a = if affine { ZigzagAlgebra::affine(d) } else { ZigzagAlgebra::finite(d) }.unwrap();
        let basis = a.basis();
        let [x, y, z] = [0, 1, 2].map(|k| ZigzagElement::basis(basis[picks[k].index(basis.len())]));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }
}

fn factor(d: usize) -> impl Strategy<Value = Factor> {
    (1..d, 0..3u8).prop_map(|(i, k)| match k {
        0 => Factor::T(i),
        1 => Factor::TInv(i),
        _ => Factor::B(i),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimal_models_keep_classes(w in prop::collection::vec(factor(4), 1..4), j in 1usize..4) {
        let alg = ZigzagAlgebra::finite(4).unwrap();
        let x = Complex::indecomposable(alg, j).unwrap();
        let mut full = x.clone();
        for f in w.iter().rev() {
            full = match *f {
                Factor::T(i) => evalbirep::homotopy::rouquier(alg, i, false).unwrap().apply(&full).unwrap(),
                Factor::TInv(i) => evalbirep::homotopy::rouquier(alg, i, true).unwrap().apply(&full).unwrap(),
                Factor::B(i) => full.apply_word(&evalbirep::projcat::FunctorWord::b(i)).unwrap(),
            };
        }
        let m = apply_word(alg, &w, &x).unwrap();
        prop_assert!(m.is_minimal());
        prop_assert_eq!(m.decat(), full.decat());
        prop_assert_eq!(minimal_model(&full).decat(), m.decat());
        prop_assert!(iso_test(&minimal_model(&full), &m).unwrap().is_iso());
    }

    #[test]
    fn shifts_act_on_classes(w in prop::collection::vec(factor(3), 1..3), t in -3i32..4, n in -2i32..3) {
        let alg = ZigzagAlgebra::finite(3).unwrap();
        let m = apply_word(alg, &w, &Complex::indecomposable(alg, 1).unwrap()).unwrap();
        let s = m.shifted(t, n);
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        for (v, p) in m.decat() {
            prop_assert_eq!(s.decat()[&v].clone(), p.shift(t).scale(&rat(sign)));
        }
        prop_assert!(iso_test(&s.shifted(-t, -n), &m).unwrap().is_iso());
        if !m.is_zero() && (t, n) != (0, 0) {
            prop_assert!(!iso_test(&s, &m).unwrap().is_iso());
        }
    }
}
