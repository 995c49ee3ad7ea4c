//! Gröbner bases, membership, elimination, saturation and dimension.

mod groebner;
mod ideal;
mod order;

pub use groebner::GroebnerBasis;
pub use ideal::{default_budget, with_default_budget, Ideal, DEFAULT_BUDGET};
pub use order::MonomialOrder;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Ambient, MultiPoly};

    fn amb(s: &str) -> std::sync::Arc<Ambient> {
        Ambient::parse(s).unwrap()
    }

    #[test]
    fn hand_computed_basis() {
        // S(wz - xy, w) = -xy after one reduction; basis {w, xy}
        let a = amb("P3(w,x,y,z)");
        let i = Ideal::parse(&a, &["w*z - x*y", "w"]).unwrap();
        let gb = i.groebner_basis().unwrap().elements();
        let mut want = vec![MultiPoly::parse(&a, "w").unwrap(), MultiPoly::parse(&a, "x*y").unwrap()];
        want.sort_by_key(|p| p.to_string());
        let mut got = gb.clone();
        got.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }

    #[test]
    fn membership_and_normal_form() {
        let a = amb("A(r,s,t) * P1(u,v)");
        let i = Ideal::parse(&a, &["s*v - t*u"]).unwrap();
        assert!(i.contains(&MultiPoly::parse(&a, "s*(t*u - s*v)").unwrap()).unwrap());
        let f = MultiPoly::parse(&a, "s*v + 1/2*r").unwrap();
        let nf = i.normal_form(&f).unwrap();
        assert!(i.contains(&(&f - &nf)).unwrap());
        assert_eq!(i.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn saturation_and_dimension() {
        let a = amb("P2(x0,x1,x2)");
        let i = Ideal::parse(&a, &["x0*x1"]).unwrap();
        let s = i.saturate(&MultiPoly::parse(&a, "x0").unwrap()).unwrap();
        assert!(s.equals(&Ideal::parse(&a, &["x1"]).unwrap()).unwrap());
        let s2 = i.saturate_by_var(0).unwrap();
        assert!(s2.equals(&s).unwrap());
        assert_eq!(Ideal::parse(&a, &["x0"]).unwrap().dimension().unwrap(), Some(2));
        assert_eq!(Ideal::unit(&a).dimension().unwrap(), None);
    }

    #[test]
    fn intersection_of_lines() {
        let a = amb("P2(x,y,z)");
        let i = Ideal::parse(&a, &["x"]).unwrap().intersect(&Ideal::parse(&a, &["y"]).unwrap()).unwrap();
        assert!(i.equals(&Ideal::parse(&a, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let a = amb("P3(w,x,y,z)");
        let i = Ideal::parse(&a, &["w^3 - x*y*z", "x^3 - w*y*z", "y^3 - w*x*z + z^3", "w*x - y*z"]).unwrap().with_budget(2);
        assert!(matches!(i.groebner_basis(), Err(crate::Error::BudgetExceeded(2))));
    }

    #[test]
    fn projective_emptiness() {
        let a = amb("P1(x0,x1)");
        assert!(Ideal::parse(&a, &["x0", "x1"]).unwrap().is_empty_projective().unwrap());
        assert!(!Ideal::parse(&a, &["x0"]).unwrap().is_empty_projective().unwrap());
    }
}
