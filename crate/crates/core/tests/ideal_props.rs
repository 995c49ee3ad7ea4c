use std::sync::Arc;

use fanocheck::exactalg::{Ambient, Mono, MultiPoly, Scalar};
use fanocheck::Ideal;
use proptest::prelude::*;

fn amb() -> Arc<Ambient> {
    Ambient::parse("A(a,b,c)").unwrap()
}

/// Up to four terms of degree ≤ 2 in three affine variables.
fn poly_strategy() -> impl Strategy<Value = Vec<([u16; 3], i64)>> {
    let mono = prop::array::uniform3(0u16..3).prop_filter("degree <= 2", |e| e.iter().sum::<u16>() <= 2);
    prop::collection::vec((mono, -4i64..=4), 1..5)
}

fn build(a: &Arc<Ambient>, terms: &[([u16; 3], i64)]) -> MultiPoly {
    MultiPoly::from_terms(a, terms.iter().map(|(e, n)| (Mono::from_exps(e), Scalar::int(*n))))
}

fn ideal_strategy() -> impl Strategy<Value = Vec<Vec<([u16; 3], i64)>>> {
    prop::collection::vec(poly_strategy(), 1..3)
}

fn build_ideal(a: &Arc<Ambient>, gens: &[Vec<([u16; 3], i64)>]) -> Ideal {
    Ideal::new(a, gens.iter().map(|g| build(a, g)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(gens in ideal_strategy(), f in poly_strategy()) {
        let a = amb();
        let i = build_ideal(&a, &gens);
        let r = i.normal_form(&build(&a, &f)).unwrap();
        prop_assert_eq!(i.normal_form(&r).unwrap(), r);
    }

    #[test]
    fn generators_are_members(gens in ideal_strategy(), f in poly_strategy()) {
        let a = amb();
        let i = build_ideal(&a, &gens);
        for g in i.generators() {
            prop_assert!(i.contains(g).unwrap());
            prop_assert!(i.contains(&(g * &build(&a, &f))).unwrap());
        }
    }

    #[test]
    fn elimination_is_a_subideal(gens in ideal_strategy()) {
        let a = amb();
        let i = build_ideal(&a, &gens);
        let e = i.eliminate(&[0]).unwrap();
        for g in e.generators() {
            prop_assert!(!g.involves(0));
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn saturation_grows_and_stabilizes(gens in ideal_strategy(), v in 0usize..3) {
        let a = amb();
        let i = build_ideal(&a, &gens);
        let x = MultiPoly::var(&a, v);
        let s = i.saturate(&x).unwrap();
        prop_assert!(s.contains_ideal(&i).unwrap());
        prop_assert!(s.saturate(&x).unwrap().equals(&s).unwrap());
    }

    #[test]
    fn intersection_lies_in_both(g1 in ideal_strategy(), g2 in ideal_strategy()) {
        let a = amb();
        let (i, j) = (build_ideal(&a, &g1), build_ideal(&a, &g2));
        let k = i.intersect(&j).unwrap();
        prop_assert!(i.contains_ideal(&k).unwrap() && j.contains_ideal(&k).unwrap());
        prop_assert!(k.contains_ideal(&i.product(&j).unwrap()).unwrap());
    }

    /// Linear forms are irreducible, so `⟨ℓ⟩` has dimension `n − 1`.
    #[test]
    fn principal_linear_dimension(c in prop::array::uniform3(-3i64..=3), d in -3i64..=3) {
        prop_assume!(c.iter().any(|&x| x != 0));
        let a = amb();
        let mut f = MultiPoly::int(&a, d);
        for (v, &k) in c.iter().enumerate() {
            f = &f + &MultiPoly::var(&a, v).scale(&Scalar::int(k));
        }
        prop_assert_eq!(Ideal::new(&a, vec![f]).unwrap().dimension().unwrap(), Some(2));
    }

    #[test]
    fn groebner_basis_is_deterministic(gens in ideal_strategy()) {
        let a = amb();
        let b1 = build_ideal(&a, &gens).groebner_basis().unwrap().elements();
        let b2 = build_ideal(&a, &gens).groebner_basis().unwrap().elements();
        prop_assert_eq!(b1, b2);
    }
}

#[test]
fn irreducible_quadric_cone_dimension() {
    let a = Ambient::parse("A(a,b,c,d)").unwrap();
    let i = Ideal::parse(&a, &["a*d - b*c"]).unwrap();
    assert_eq!(i.dimension().unwrap(), Some(3));
}
