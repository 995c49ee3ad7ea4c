use std::sync::Arc;

use fanocheck::exactalg::{linalg, Ambient, MultiPoly, Scalar};
use fanocheck::geometry::Subvariety;
use fanocheck::groups::{random_pgl, sym_power_rep, ProjLinearElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p2() -> Arc<Ambient> {
    Ambient::parse("P2(x,y,z)").unwrap()
}

fn p4() -> Arc<Ambient> {
    Ambient::parse("P4(x0,x1,x2,x3,x4)").unwrap()
}

fn random_cubic(a: &Arc<Ambient>, rng: &mut ChaCha8Rng) -> MultiPoly {
    let monos = ["x^3", "x^2*y", "x*y*z", "y^2*z", "z^3", "x*z^2", "y^3"];
    monos.iter().fold(MultiPoly::zero(a), |acc, m| {
        &acc + &MultiPoly::parse(a, m).unwrap().scale(&Scalar::int(rng.gen_range(-3..=3)))
    })
}

/// `f = c·g` for some nonzero scalar `c`.
fn proportional(f: &MultiPoly, g: &MultiPoly) -> bool {
    let Some((m, c)) = g.terms().iter().next() else { return f.is_zero() };
    let r = &f.coeff(m) / c;
    !r.is_zero() && *f == g.scale(&r)
}

/// Rational normal quartic: 2×2 minors of the Hankel matrix.
fn veronese_quartic() -> Subvariety {
    Subvariety::parse(
        &p4(),
        &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x2^2", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
    )
    .unwrap()
}

fn lift(g: &linalg::Matrix) -> ProjLinearElement {
    ProjLinearElement::new(&p4(), vec![sym_power_rep(g, 4).unwrap()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_a_right_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = p2();
        let g = ProjLinearElement::new(&a, vec![random_pgl(3, &mut rng)]).unwrap();
        let h = ProjLinearElement::new(&a, vec![random_pgl(3, &mut rng)]).unwrap();
        let f = random_cubic(&a, &mut rng);
        let lhs = h.act_on_poly(&g.act_on_poly(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.mul(&h).act_on_poly(&f).unwrap());
        prop_assert_eq!(g.push_poly(&g.act_on_poly(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn sym_power_is_multiplicative(seed in any::<u64>(), d in 1u32..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random_pgl(2, &mut rng), random_pgl(2, &mut rng));
        let lhs = sym_power_rep(&linalg::mat_mul(&g, &h), d).unwrap();
        let rhs = linalg::mat_mul(&sym_power_rep(&g, d).unwrap(), &sym_power_rep(&h, d).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(sym_power_rep(&linalg::identity(2), d).unwrap(), linalg::identity(d as usize + 1));
    }

    /// Lifts of `PGL₂` preserve the quartic curve and, being a group,
    /// so do their products.
    #[test]
    fn sym4_lifts_preserve_the_quartic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = veronese_quartic();
        let g = lift(&random_pgl(2, &mut rng));
        let h = lift(&random_pgl(2, &mut rng));
        prop_assert!(g.preserves(&c).unwrap());
        prop_assert!(h.preserves(&c).unwrap());
        prop_assert!(g.mul(&h).preserves(&c).unwrap());
        prop_assert!(g.inverse().preserves(&c).unwrap());
    }

    /// The invariant quadric through the quartic curve is semi-invariant.
    #[test]
    fn invariant_quadric_is_semi_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f0 = MultiPoly::parse(&p4(), "x0*x4 - 4*x1*x3 + 3*x2^2").unwrap();
        let g = lift(&random_pgl(2, &mut rng));
        prop_assert!(proportional(&g.act_on_poly(&f0).unwrap(), &f0));
    }
}

#[test]
fn generic_quadric_is_not_semi_invariant() {
    let f = MultiPoly::parse(&p4(), "x0*x4 + x2^2").unwrap();
    let g = lift(&linalg::from_ints(&[&[1, 1], &[0, 1]]));
    assert!(!proportional(&g.act_on_poly(&f).unwrap(), &f));
}
