//! Projective linear group elements acting on multi-projective ambients.
//!
//! Convention: `g` acts on points by matrix-times-column, and on polynomials
//! by pullback, `(g ⋆ f)(x) = f(g·x)`. This is a right action:
//! `h ⋆ (g ⋆ f) = (g·h) ⋆ f`.

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::{Ambient, MultiPoly, Scalar};
use crate::geometry::{RationalMap, Subvariety};
use crate::ideals::Ideal;

/// One invertible matrix per factor of an ambient; auxiliary variables are fixed.
#[derive(Clone, Debug)]
pub struct ProjLinearElement {
    amb: Arc<Ambient>,
    mats: Vec<Matrix>,
}

impl ProjLinearElement {
    pub fn new(amb: &Arc<Ambient>, mats: Vec<Matrix>) -> Result<ProjLinearElement> {
        if mats.len() != amb.nfactors() {
            return Err(Error::Shape(format!("{} matrices for {} factors", mats.len(), amb.nfactors())));
        }
        for (k, m) in mats.iter().enumerate() {
            let n = amb.factor_vars(k).len();
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Shape(format!("factor {k} needs a {n}×{n} matrix")));
            }
            if linalg::det(m).is_zero() {
                return Err(Error::Degenerate(format!("matrix of factor {k} is singular")));
            }
        }
        Ok(ProjLinearElement { amb: amb.clone(), mats })
    }

    /// The same matrix on every factor (all factors must have equal size).
    pub fn diagonal(amb: &Arc<Ambient>, m: &Matrix) -> Result<ProjLinearElement> {
        ProjLinearElement::new(amb, vec![m.clone(); amb.nfactors()])
    }

    pub fn identity(amb: &Arc<Ambient>) -> ProjLinearElement {
        let mats = (0..amb.nfactors()).map(|k| linalg::identity(amb.factor_vars(k).len())).collect();
        ProjLinearElement { amb: amb.clone(), mats }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// Factorwise product `self · other` (apply `other` first on points).
    pub fn mul(&self, other: &ProjLinearElement) -> ProjLinearElement {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| linalg::mat_mul(a, b)).collect();
        ProjLinearElement { amb: self.amb.clone(), mats }
    }

    pub fn inverse(&self) -> ProjLinearElement {
        let mats = self.mats.iter().map(|m| linalg::inverse(m).expect("invertible by construction")).collect();
        ProjLinearElement { amb: self.amb.clone(), mats }
    }

    /// Equality up to one nonzero scalar per factor.
    pub fn projectively_equal(&self, other: &ProjLinearElement) -> bool {
        self.mats.iter().zip(&other.mats).all(|(a, b)| proportional(a, b))
    }

    /// Linear substitution images `x ↦ g·x`, identity on auxiliary variables.
    fn images(&self) -> Vec<Option<MultiPoly>> {
        let amb = &self.amb;
        let mut out = vec![None; amb.nvars()];
        for (k, m) in self.mats.iter().enumerate() {
            let vars: Vec<usize> = amb.factor_vars(k).collect();
            for (i, &v) in vars.iter().enumerate() {
                let terms = vars.iter().enumerate().map(|(j, &w)| (crate::exactalg::Mono::var(w), m[i][j].clone()));
                out[v] = Some(MultiPoly::from_terms(amb, terms));
            }
        }
        out
    }

    /// The element as a linear automorphism of its ambient.
    pub fn as_map(&self) -> RationalMap {
        let img = self.images();
        let comps = (0..self.amb.nfactors())
            .map(|k| self.amb.factor_vars(k).map(|v| img[v].clone().unwrap()).collect())
            .collect();
        let aux = self.amb.aux_vars().map(|v| MultiPoly::var(&self.amb, v)).collect();
        RationalMap::new(&self.amb, &self.amb, comps, aux).expect("linear components are homogeneous")
    }

    /// Pullback `f ↦ f(g·x)`.
    pub fn act_on_poly(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if **f.ambient() != *self.amb {
            return Err(Error::Shape(format!("polynomial in {} acted on by an element of {}", f.ambient(), self.amb)));
        }
        f.substitute(&self.images(), &self.amb)
    }

    /// Pushforward `f ↦ f(g⁻¹·x)`, so that `(g·f)(g·p) = f(p)`.
    pub fn push_poly(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.inverse().act_on_poly(f)
    }

    /// Whether `g` maps `V` into itself: every pulled-back generator lies in `I(V)`.
    pub fn preserves(&self, v: &Subvariety) -> Result<bool> {
        for g in v.ideal().generators() {
            if !v.ideal().contains(&self.act_on_poly(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn proportional(a: &Matrix, b: &Matrix) -> bool {
    let flat_a: Vec<&Scalar> = a.iter().flatten().collect();
    let flat_b: Vec<&Scalar> = b.iter().flatten().collect();
    let Some(p) = flat_a.iter().position(|x| !x.is_zero()) else { return false };
    if flat_b[p].is_zero() {
        return false;
    }
    let r = flat_b[p] / flat_a[p];
    flat_a.iter().zip(&flat_b).all(|(x, y)| &(*x * &r) == *y)
}

/// `ᵗM·M` is a nonzero multiple of the identity.
pub fn is_orthogonal_projective(m: &Matrix) -> bool {
    let p = linalg::mat_mul(&linalg::transpose(m), m);
    let c = &p[0][0];
    if c.is_zero() {
        return false;
    }
    p.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x == c } else { x.is_zero() }))
}

/// Lift of `g = [[a,b],[c,d]]` through the degree-`d` Veronese embedding:
/// row `k` holds the coefficients of `(a u + b v)^{d−k} (c u + d v)^k` on
/// `u^{d−j} v^j`, so `v(g·p) = M·v(p)`.
pub fn sym_power_rep(g: &Matrix, d: u32) -> Result<Matrix> {
    if g.len() != 2 || g.iter().any(|r| r.len() != 2) {
        return Err(Error::Shape("sym_power_rep needs a 2×2 matrix".into()));
    }
    if linalg::det(g).is_zero() {
        return Err(Error::Degenerate("singular matrix".into()));
    }
    let n = d as usize;
    // binary forms as coefficient vectors on u^{n−j} v^j
    let mul = |p: &[Scalar], q: &[Scalar]| -> Vec<Scalar> {
        let mut r = vec![Scalar::zero(); p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                r[i + j] = &r[i + j] + &(x * y);
            }
        }
        r
    };
    let lu = g[0].clone();
    let lv = g[1].clone();
    let mut m = vec![vec![Scalar::zero(); n + 1]; n + 1];
    for k in 0..=n {
        let mut p = vec![Scalar::one()];
        for _ in 0..n - k {
            p = mul(&p, &lu);
        }
        for _ in 0..k {
            p = mul(&p, &lv);
        }
        for (j, c) in p.into_iter().enumerate() {
            m[k][j] = c;
        }
    }
    Ok(m)
}

/// Whether `φ ∘ g` and `g′ ∘ φ` are proportional modulo the source ideal of `φ`.
pub fn equivariance_check(phi: &RationalMap, g: &ProjLinearElement, g2: &ProjLinearElement) -> Result<bool> {
    let left = phi.compose(&g.as_map())?;
    let right = g2.as_map().compose(phi)?;
    let ideal = phi.source_ideal().cloned().unwrap_or_else(|| Ideal::zero(phi.source()));
    left.equal_mod_ideal(&right, &ideal)
}

/// Fixed locus of a projective linear map of a single `ℙⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedLocus {
    /// One projective linear subspace per rational eigenvalue, given by a
    /// kernel basis of `M − λI`; the fixed locus is their union.
    Subspaces(Vec<(BigRational, Vec<Vec<Scalar>>)>),
    /// The characteristic polynomial does not split over ℚ.
    Indeterminate,
}

impl FixedLocus {
    /// Whether the fixed locus is a finite set of points, returned if so.
    pub fn points(&self) -> Option<Vec<Vec<Scalar>>> {
        match self {
            FixedLocus::Subspaces(s) if s.iter().all(|(_, b)| b.len() == 1) => {
                Some(s.iter().map(|(_, b)| b[0].clone()).collect())
            }
            _ => None,
        }
    }
}

pub fn projective_fixed_points(m: &Matrix) -> FixedLocus {
    let n = m.len();
    let cp = linalg::charpoly(m);
    let Some(coeffs) = cp.iter().map(|c| c.as_rational().cloned()).collect::<Option<Vec<_>>>() else {
        return FixedLocus::Indeterminate;
    };
    let Some(mut roots) = linalg::rational_roots(&coeffs) else { return FixedLocus::Indeterminate };
    if roots.len() != n {
        return FixedLocus::Indeterminate;
    }
    roots.sort();
    roots.dedup();
    let out = roots
        .into_iter()
        .map(|r| {
            let l = Scalar::Rat(r.clone());
            let a: Matrix = m
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { x - &l } else { x.clone() }).collect())
                .collect();
            (r, linalg::kernel(&a, n))
        })
        .collect();
    FixedLocus::Subspaces(out)
}

/// Random invertible integer matrix with entries in `[−3, 3]`.
pub fn random_pgl<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let m: Matrix = (0..n).map(|_| (0..n).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect()).collect();
        if !linalg::det(&m).is_zero() {
            return m;
        }
    }
}

const PYTHAGOREAN: [(i64, i64, i64); 6] = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];

fn signed_permutation<R: Rng>(rng: &mut R) -> Matrix {
    let mut perm = [0usize, 1, 2];
    perm.shuffle(rng);
    let mut m = vec![vec![Scalar::zero(); 3]; 3];
    for (i, &p) in perm.iter().enumerate() {
        m[i][p] = Scalar::int(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    m
}

/// Random rational orthogonal 3×3 matrix: signed permutations around a
/// rotation `[[c,s,0],[−s,c,0],[0,0,1]]` with `c² + s² = 1`.
pub fn random_po3<R: Rng>(rng: &mut R) -> Matrix {
    let (a, b, h) = *PYTHAGOREAN.choose(rng).unwrap();
    let (c, s) = (Scalar::frac(a, h), Scalar::frac(b, h));
    let rot = vec![
        vec![c.clone(), s.clone(), Scalar::zero()],
        vec![-&s, c, Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
    ];
    let p1 = signed_permutation(rng);
    let p2 = signed_permutation(rng);
    linalg::mat_mul(&linalg::mat_mul(&p1, &rot), &p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(rows: &[&[i64]]) -> Matrix {
        linalg::from_ints(rows)
    }

    #[test]
    fn sym4_of_unipotent_is_nu() {
        let m = sym_power_rep(&ints(&[&[1, 0], &[1, 1]]), 4).unwrap();
        assert_eq!(m[4], ints(&[&[1, 4, 6, 4, 1]])[0]);
        assert_eq!(m[0], ints(&[&[1, 0, 0, 0, 0]])[0]);
        assert_eq!(sym_power_rep(&linalg::identity(2), 4).unwrap(), linalg::identity(5));
    }

    #[test]
    fn sym_power_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_pgl(2, &mut rng);
            let h = random_pgl(2, &mut rng);
            let lhs = sym_power_rep(&linalg::mat_mul(&g, &h), 3).unwrap();
            let rhs = linalg::mat_mul(&sym_power_rep(&g, 3).unwrap(), &sym_power_rep(&h, 3).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orthogonality() {
        assert!(is_orthogonal_projective(&ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]])));
        assert!(!is_orthogonal_projective(&ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]])));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            assert!(is_orthogonal_projective(&random_po3(&mut rng)));
        }
    }

    #[test]
    fn fixed_points() {
        let d = ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]);
        assert_eq!(projective_fixed_points(&d).points().unwrap().len(), 3);
        let rot = ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(projective_fixed_points(&rot), FixedLocus::Indeterminate);
        match projective_fixed_points(&linalg::identity(3)) {
            FixedLocus::Subspaces(s) => assert_eq!(s[0].1.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn right_action() {
        let a = Ambient::parse("P1(x0,x1) * P1(y0,y1)").unwrap();
        let f = MultiPoly::parse(&a, "x0^2*y1 - 3*x1*x0*y0").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = ProjLinearElement::new(&a, vec![random_pgl(2, &mut rng), random_pgl(2, &mut rng)]).unwrap();
        let h = ProjLinearElement::new(&a, vec![random_pgl(2, &mut rng), random_pgl(2, &mut rng)]).unwrap();
        let lhs = h.act_on_poly(&g.act_on_poly(&f).unwrap()).unwrap();
        assert_eq!(lhs, g.mul(&h).act_on_poly(&f).unwrap());
        assert_eq!(g.push_poly(&g.act_on_poly(&f).unwrap()).unwrap(), f);
    }
}
