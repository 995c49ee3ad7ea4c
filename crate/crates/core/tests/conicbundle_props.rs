use fanocheck::conicbundle::{base_plane, ConicBundle, FiberType, Shape};
use fanocheck::exactalg::{MultiPoly, Scalar};
use fanocheck::geometry::poly_det;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn origin() -> (BigRational, BigRational) {
    (BigRational::zero(), BigRational::zero())
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![Just(Shape::Symmetric), Just(Shape::Bilinear)]
}

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let b = base_plane();
    ["1", "u", "v", "u*v", "u^2"].iter().fold(MultiPoly::zero(&b), |acc, m| {
        &acc + &MultiPoly::parse(&b, m).unwrap().scale(&Scalar::int(rng.gen_range(-2..=2)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Where the total space is smooth, the corank of `M` predicts the
    /// multiplicity of `Δ`: 0 ↦ 0, 1 ↦ 1, 2 ↦ ordinary node.
    #[test]
    fn corank_matches_multiplicity(s in shape(), rank in 0usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = ConicBundle::random(s, rank, 2, &mut rng);
        prop_assume!(!b.discriminant().is_zero());
        let mut pts = b.slice_points(1);
        pts.push(origin());
        for p in pts.iter().take(6) {
            let p = (&p.0, &p.1);
            if !b.smooth_over(p).unwrap() {
                continue;
            }
            let r = b.check_rank_multiplicity(p).unwrap();
            prop_assert!(r.consistent, "{:?}", r);
            let expected = match r.corank {
                0 => FiberType::Smooth,
                1 => FiberType::TwoLines,
                _ => FiberType::DoubleLine,
            };
            prop_assert_eq!(r.fiber, expected);
        }
    }

    /// A bilinear bundle vanishing at a point is singular over it, so
    /// corank 2 never appears on a smooth total space.
    #[test]
    fn bilinear_corank_two_is_singular(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = ConicBundle::random(Shape::Bilinear, 0, 2, &mut rng);
        let o = origin();
        prop_assert_eq!(b.corank_at((&o.0, &o.1)), 2);
        prop_assert!(!b.smooth_over((&o.0, &o.1)).unwrap());
        prop_assert!(b.fiber_type_at((&o.0, &o.1)).is_err());
    }

    #[test]
    fn block_diagonal_determinant_factors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = base_plane();
        let a: Vec<Vec<MultiPoly>> = (0..2).map(|_| (0..2).map(|_| random_poly(&mut rng)).collect()).collect();
        let c = random_poly(&mut rng);
        let z = MultiPoly::zero(&base);
        let m = vec![
            vec![a[0][0].clone(), a[0][1].clone(), z.clone()],
            vec![a[1][0].clone(), a[1][1].clone(), z.clone()],
            vec![z.clone(), z, c.clone()],
        ];
        prop_assert_eq!(poly_det(&m), &poly_det(&a) * &c);
        prop_assert_eq!(poly_det(&a), &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]));
    }
}
