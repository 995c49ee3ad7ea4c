//! Points, subvarieties, smoothness and rational maps of multi-projective ambients.

mod blowup;
mod map;
mod point;
mod variety;

pub use blowup::{blowup_chart, BlowupChart};
pub use map::{ContractionReport, RationalMap};
pub use point::ProjPoint;
pub use variety::{all_minors, poly_det, Smoothness, Subvariety};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Ambient, MultiPoly};
    use crate::ideals::Ideal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn amb(s: &str) -> Arc<Ambient> {
        Ambient::parse(s).unwrap()
    }

    fn ptp2_tau() -> (RationalMap, RationalMap, Ideal, Ideal) {
        let s = amb("P2(x0,x1,x2) * P2(y0,y1,y2)");
        let t = amb("P4(z0,z1,z2,z3,z4)");
        let f = Ideal::parse(&s, &["x0*y0 + x1*y1 + x2*y2"]).unwrap();
        let q = Ideal::parse(&t, &["z0^2 + z1*z2 + z3*z4"]).unwrap();
        let tau = RationalMap::parse(&s, &t, &["x0*y0", "x0*y1", "x1*y0", "x0*y2", "x2*y0"]).unwrap().restricted(&f).unwrap();
        let inv = RationalMap::parse(&t, &s, &["z0", "z2", "z4", "z0", "z1", "z3"]).unwrap().restricted(&q).unwrap();
        (tau, inv, f, q)
    }

    #[test]
    fn point_equality_is_projective() {
        let a = amb("P1(x0,x1) * P1(y0,y1)");
        let p = ProjPoint::from_ints(&a, &[2, 4, 0, 3]).unwrap();
        let q = ProjPoint::from_ints(&a, &[1, 2, 0, 1]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.normalized().to_string(), "([1:2],[0:1])");
        assert!(ProjPoint::from_ints(&a, &[0, 0, 1, 1]).is_err());
    }

    #[test]
    fn contains_points() {
        let a = amb("P4(x0,x1,x2,x3,x4)");
        let v = Subvariety::parse(&a, &["x0*x4 - 4*x1*x3 + 3*x2^2"]).unwrap();
        assert!(v.contains_point(&ProjPoint::from_ints(&a, &[1, 1, 1, 1, 1]).unwrap()));
        assert!(!v.contains_point(&ProjPoint::from_ints(&a, &[0, 0, 1, 0, 0]).unwrap()));
        assert!(Subvariety::parse(&a, &["x0 + x1^2"]).is_err());
    }

    #[test]
    fn smoothness_of_quadrics() {
        let a = amb("P4(x0,x1,x2,x3,x4)");
        let q = Subvariety::parse(&a, &["x0*x4 - 4*x1*x3 + 3*x2^2"]).unwrap();
        assert!(q.is_smooth(1).unwrap().smooth);
        let f1 = Subvariety::parse(&a, &["x0*x2 - x1^2"]).unwrap();
        let s = f1.is_smooth(1).unwrap();
        assert!(!s.smooth);
        // the vertex line x0 = x1 = x2 = 0 is singular
        assert!(s.singular_locus.radical_contains(&MultiPoly::parse(&a, "x0").unwrap()).unwrap());
        assert!(q.is_smooth(2).is_err());
    }

    #[test]
    fn compose_round_trip_and_image() {
        let (tau, inv, f, q) = ptp2_tau();
        let id_src = inv.compose(&tau).unwrap();
        assert!(id_src.equal_mod_ideal(&RationalMap::identity(tau.source()), &f).unwrap());
        let id_tgt = tau.compose(&inv).unwrap();
        assert!(id_tgt.equal_mod_ideal(&RationalMap::identity(inv.source()), &q).unwrap());
        let img = tau.image_ideal(&Subvariety::whole(tau.source())).unwrap();
        assert!(img.equals(&q).unwrap());
    }

    #[test]
    fn apply_and_base_locus() {
        let (tau, _, _, _) = ptp2_tau();
        let s = tau.source().clone();
        let p = ProjPoint::from_ints(&s, &[1, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(tau.apply(&p).unwrap().to_string(), "[0:1:0:0:0]");
        let c = ProjPoint::from_ints(&s, &[0, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(tau.apply(&c), Err(crate::Error::BaseLocus));
        let bl = tau.base_locus().unwrap();
        assert_eq!(bl.dimension().unwrap(), Some(1));
        assert!(bl.contains_point(&c));
        let id = RationalMap::identity(&s);
        assert!(id.base_locus().unwrap().ideal().is_unit().unwrap());
    }

    #[test]
    fn blowup_charts() {
        let a = amb("A(r,s,t)");
        let line = blowup_chart(&Ideal::parse(&a, &["s", "t"]).unwrap(), &["u", "v"]).unwrap();
        let want = Ideal::parse(&line.ambient, &["s*v - t*u"]).unwrap();
        assert!(line.ideal.equals(&want).unwrap());
        let pt = blowup_chart(&Ideal::parse(&a, &["r", "s", "t"]).unwrap(), &["u", "v", "w"]).unwrap();
        let want = Ideal::parse(&pt.ambient, &["s*u - r*v", "s*w - t*v", "r*w - t*u"]).unwrap();
        assert!(pt.ideal.equals(&want).unwrap());
        let none = blowup_chart(&Ideal::unit(&a), &[]).unwrap();
        assert!(none.ideal.is_zero() && none.exceptional.is_unit().unwrap());
        assert!(blowup_chart(&Ideal::parse(&a, &["s - t", "r"]).unwrap(), &["u", "v"]).is_err());
    }

    #[test]
    fn random_points_lie_on_variety() {
        let a = amb("P2(x0,x1,x2) * P2(y0,y1,y2)");
        let f = Subvariety::parse(&a, &["x0*y0 + x1*y1 + x2*y2"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pts = f.random_points(20, 1, &mut rng, 200);
        assert_eq!(pts.len(), 20);
        for p in &pts {
            assert!(f.contains_point(p));
            assert_eq!(f.jacobian_rank_at(p), 1);
        }
    }
}
