use std::sync::Arc;

use fanocheck::exactalg::forms::pullback;
use fanocheck::exactalg::{jacobian, vanishing_forms, Ambient, Mono, MultiPoly, Multidegree, Scalar};
use proptest::prelude::*;

fn amb() -> Arc<Ambient> {
    Ambient::parse("P1(x0,x1) * P1(y0,y1) * A(t)").unwrap()
}

/// Up to five terms, exponents ≤ 2, coefficients in `[−5, 5]/[1, 3]`.
fn poly_strategy() -> impl Strategy<Value = Vec<([u16; 5], i64, i64)>> {
    prop::collection::vec((prop::array::uniform5(0u16..3), -5i64..=5, 1i64..=3), 0..5)
}

fn build(a: &Arc<Ambient>, terms: &[([u16; 5], i64, i64)]) -> MultiPoly {
    MultiPoly::from_terms(a, terms.iter().map(|(e, n, d)| (Mono::from_exps(e), Scalar::frac(*n, *d))))
}

/// Homogeneous of bidegree `(d1, d2)`, no auxiliary variable.
fn homogeneous(a: &Arc<Ambient>, d: (u16, u16), coeffs: &[i64]) -> MultiPoly {
    let mut terms = Vec::new();
    let mut k = 0;
    for i in 0..=d.0 {
        for j in 0..=d.1 {
            let c = coeffs[k % coeffs.len()];
            k += 1;
            terms.push((Mono::from_exps(&[i, d.0 - i, j, d.1 - j, 0]), Scalar::int(c)));
        }
    }
    MultiPoly::from_terms(a, terms)
}

/// Squarefree monomials, so that iterated substitution stays small.
fn small_strategy() -> impl Strategy<Value = Vec<([u16; 5], i64, i64)>> {
    prop::collection::vec((prop::array::uniform5(0u16..2), -3i64..=3, 1i64..=2), 0..4)
}

/// Affine-linear: `(variable or constant, coefficient)` pairs.
fn linear_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..6, -3i64..=3), 0..4)
}

fn build_linear(a: &Arc<Ambient>, terms: &[(usize, i64)]) -> MultiPoly {
    terms.iter().fold(MultiPoly::zero(a), |acc, &(v, c)| {
        let m = if v < 5 { MultiPoly::var(a, v) } else { MultiPoly::one(a) };
        &acc + &m.scale(&Scalar::int(c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let a = amb();
        let (f, g, h) = (build(&a, &f), build(&a, &g), build(&a, &h));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(&a), f.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_composes(f in small_strategy(), s in prop::collection::vec(small_strategy(), 5), t in prop::collection::vec(linear_strategy(), 5)) {
        let a = amb();
        let f = build(&a, &f);
        let sigma: Vec<MultiPoly> = s.iter().map(|x| build(&a, x)).collect();
        let tau: Vec<MultiPoly> = t.iter().map(|x| build_linear(&a, x)).collect();
        let tau_opt: Vec<Option<MultiPoly>> = tau.iter().cloned().map(Some).collect();
        let lhs = f
            .substitute(&sigma.iter().cloned().map(Some).collect::<Vec<_>>(), &a)
            .unwrap()
            .substitute(&tau_opt, &a)
            .unwrap();
        // τ∘σ: substitute τ into each component of σ
        let composed: Vec<Option<MultiPoly>> = sigma.iter().map(|p| Some(p.substitute(&tau_opt, &a).unwrap())).collect();
        prop_assert_eq!(lhs, f.substitute(&composed, &a).unwrap());
    }

    #[test]
    fn jacobian_is_linear(f in poly_strategy(), g in poly_strategy(), p in -4i64..=4, q in 1i64..=4) {
        let a = amb();
        let (f, g) = (build(&a, &f), build(&a, &g));
        let (s, t) = (Scalar::frac(p, q), Scalar::int(q));
        let vars: Vec<usize> = (0..a.nvars()).collect();
        let lhs = jacobian(&[&f.scale(&s) + &g.scale(&t)], &vars);
        let jf = jacobian(&[f], &vars);
        let jg = jacobian(&[g], &vars);
        for v in 0..vars.len() {
            prop_assert_eq!(&lhs[0][v], &(&jf[0][v].scale(&s) + &jg[0][v].scale(&t)));
        }
    }

    #[test]
    fn multidegree_adds(d1 in (0u16..3, 0u16..3), d2 in (0u16..3, 0u16..3), c1 in prop::collection::vec(1i64..5, 1..6), c2 in prop::collection::vec(1i64..5, 1..6)) {
        let a = amb();
        let (f, g) = (homogeneous(&a, d1, &c1), homogeneous(&a, d2, &c2));
        let fg = &f * &g;
        prop_assert_eq!(fg.multidegree(), Multidegree::Homogeneous(vec![(d1.0 + d2.0) as u32, (d1.1 + d2.1) as u32]));
    }

    #[test]
    fn vanishing_forms_vanish(m in prop::collection::vec(-3i64..=3, 9)) {
        let p1 = Ambient::parse("P1(u,v)").unwrap();
        let p2 = Ambient::parse("P2(z0,z1,z2)").unwrap();
        let basis = [
            MultiPoly::parse(&p1, "u^2").unwrap(),
            MultiPoly::parse(&p1, "u*v").unwrap(),
            MultiPoly::parse(&p1, "v^2").unwrap(),
        ];
        // a linear image of the conic; may degenerate, which is fine
        let comps: Vec<MultiPoly> = (0..3)
            .map(|i| (0..3).fold(MultiPoly::zero(&p1), |acc, j| &acc + &basis[j].scale(&Scalar::int(m[3 * i + j]))))
            .collect();
        prop_assume!(comps.iter().any(|c| !c.is_zero()));
        let param = vec![comps];
        let forms = vanishing_forms(&p2, &[2], &param).unwrap();
        for f in &forms {
            prop_assert!(pullback(f, &param).unwrap().is_zero());
        }
    }
}
