//! Numerical intersection calculus: Chow rings of products of projective
//! spaces, anticanonical-degree formulas, and blow-up class lattices.

mod lattice;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use lattice::{CertificateReport, ClassLattice, TableEntry, TableReport};

/// `ℤ[h₁,…,h_m]/(h_i^{n_i+1})`, the Chow ring of `ℙ^{n₁}×⋯×ℙ^{n_m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowRing {
    dims: Vec<u32>,
}

/// Element of a [`ChowRing`]; exponent vectors respect the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    dims: Vec<u32>,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl ChowRing {
    pub fn new(dims: &[u32]) -> ChowRing {
        ChowRing { dims: dims.to_vec() }
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dimension(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn zero(&self) -> ChowClass {
        ChowClass { dims: self.dims.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: i64) -> ChowClass {
        let mut z = self.zero();
        z.add_term(vec![0; self.dims.len()], c);
        z
    }

    /// The hyperplane class of factor `i`.
    pub fn h(&self, i: usize) -> ChowClass {
        let mut e = vec![0; self.dims.len()];
        e[i] = 1;
        let mut z = self.zero();
        z.add_term(e, 1);
        z
    }

    /// `Σ a_i h_i`, the class of a hypersurface of multidegree `a`.
    pub fn divisor(&self, a: &[i64]) -> ChowClass {
        a.iter().enumerate().fold(self.zero(), |acc, (i, &c)| &acc + &self.h(i).scale(c))
    }

    /// `−K = Σ (n_i + 1) h_i`.
    pub fn anticanonical(&self) -> ChowClass {
        let a: Vec<i64> = self.dims.iter().map(|&n| n as i64 + 1).collect();
        self.divisor(&a)
    }
}

impl ChowClass {
    fn add_term(&mut self, e: Vec<u32>, c: i64) {
        if c == 0 || e.iter().zip(&self.dims).any(|(x, n)| x > n) {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: i64) -> ChowClass {
        let mut z = ChowClass { dims: self.dims.clone(), terms: BTreeMap::new() };
        for (e, v) in &self.terms {
            z.add_term(e.clone(), v * c);
        }
        z
    }

    pub fn pow(&self, k: u32) -> ChowClass {
        let mut acc = ChowRing::new(&self.dims).constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of the top monomial `∏ h_i^{n_i}`.
    pub fn degree(&self) -> i64 {
        self.terms.get(&self.dims).copied().unwrap_or(0)
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, o: &ChowClass) -> ChowClass {
        let mut z = self.clone();
        for (e, v) in &o.terms {
            z.add_term(e.clone(), *v);
        }
        z
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, o: &ChowClass) -> ChowClass {
        self + &(-o)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(-1)
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, o: &ChowClass) -> ChowClass {
        let mut z = ChowClass { dims: self.dims.clone(), terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                z.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        z
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("h{}", i + 1) } else { format!("h{}^{x}", i + 1) })
                    .collect();
                if m.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", m.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn chow_degree(c: &ChowClass) -> i64 {
    c.degree()
}

/// `(−K_F)^{dim F}` for a hypersurface `F` of the given class, by adjunction
/// `−K_F = (−K_amb − F)|_F`.
pub fn hypersurface_anticanonical_cube(ring: &ChowRing, f: &ChowClass) -> i64 {
    let d = ring.dimension() - 1;
    (&(&ring.anticanonical() - f).pow(d) * f).degree()
}

/// Data of a blow-up `X → Y` of a smooth curve `C` in a threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupCurveData {
    pub base_cube: i64,
    pub minus_k_dot_c: i64,
    pub genus: i64,
}

/// `(−K_X)³ = (−K_Y)³ − 2(−K_Y·C) + 2g − 2`.
pub fn blowup_anticanonical_cube(d: &BlowupCurveData) -> Result<i64> {
    if d.genus < 0 {
        return Err(Error::Invalid("negative genus".into()));
    }
    Ok(d.base_cube - 2 * d.minus_k_dot_c + 2 * d.genus - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Branched along a member of `|−K_W|`, so `−K_F = φ*(−½K_W)`.
    Anticanonical,
    /// Étale.
    None,
}

pub fn double_cover_anticanonical_cube(base_cube: i64, branch: Branch) -> Result<i64> {
    match branch {
        Branch::Anticanonical if base_cube % 4 != 0 => {
            Err(Error::NonIntegral(format!("{base_cube}/4 for a double cover branched in |−K|")))
        }
        Branch::Anticanonical => Ok(base_cube / 4),
        Branch::None => Ok(2 * base_cube),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Curve,
    Divisor,
}

/// Curves: all degrees equal and positive. Divisors: nonzero and
/// proportional over ℚ to the canonical vector.
pub fn is_balanced_class(c: &[i64], kind: ClassKind, canonical: &[i64]) -> bool {
    match kind {
        ClassKind::Curve => !c.is_empty() && c.iter().all(|&x| x > 0 && x == c[0]),
        ClassKind::Divisor => {
            c.len() == canonical.len()
                && c.iter().any(|&x| x != 0)
                && (0..c.len()).all(|i| (0..c.len()).all(|j| c[i] * canonical[j] == c[j] * canonical[i]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_on_products() {
        let r = ChowRing::new(&[1, 1, 1]);
        assert_eq!(chow_degree(&r.anticanonical().pow(3)), 48);
        let r22 = ChowRing::new(&[2, 2]);
        assert_eq!(chow_degree(&(&r22.h(0).pow(2) * &r22.h(1).pow(2))), 1);
        let r4 = ChowRing::new(&[1, 1, 1, 1]);
        assert_eq!(chow_degree(&r4.divisor(&[1, 1, 1, 1]).pow(4)), 24);
        assert_eq!(r.h(0).pow(2), r.zero());
    }

    #[test]
    fn anticanonical_formulas() {
        let r22 = ChowRing::new(&[2, 2]);
        assert_eq!(hypersurface_anticanonical_cube(&r22, &r22.divisor(&[1, 1])), 48);
        assert_eq!(hypersurface_anticanonical_cube(&r22, &r22.divisor(&[2, 2])), 12);
        let r4 = ChowRing::new(&[1, 1, 1, 1]);
        assert_eq!(hypersurface_anticanonical_cube(&r4, &r4.divisor(&[1, 1, 1, 1])), 24);
        let p3 = BlowupCurveData { base_cube: 64, minus_k_dot_c: 24, genus: 3 };
        assert_eq!(blowup_anticanonical_cube(&p3).unwrap(), 20);
        assert_eq!(double_cover_anticanonical_cube(48, Branch::Anticanonical).unwrap(), 12);
        assert_eq!(double_cover_anticanonical_cube(10, Branch::None).unwrap(), 20);
        assert!(double_cover_anticanonical_cube(10, Branch::Anticanonical).is_err());
    }

    #[test]
    fn balanced() {
        assert!(is_balanced_class(&[1, 1, 1], ClassKind::Curve, &[]));
        assert!(!is_balanced_class(&[1, 0, 0], ClassKind::Curve, &[]));
        assert!(is_balanced_class(&[2, 2], ClassKind::Divisor, &[-2, -2]));
        assert!(!is_balanced_class(&[1, 2], ClassKind::Divisor, &[-2, -2]));
    }

    #[test]
    fn builtin_lattice_tables_and_certificates() {
        for name in ClassLattice::builtin_names() {
            let lat = ClassLattice::builtin(name).unwrap();
            for t in lat.table_names() {
                let (level, entries) = lat.table(t).unwrap();
                let rep = lat.verify_table(&level, &entries);
                assert!(rep.passed(), "{name}/{t}: {:?}", rep.failures());
            }
            for c in lat.certificate_names() {
                let rep = lat.certificate(c).unwrap();
                assert!(rep.nef() && rep.matches_expected() && rep.identities_hold(), "{name}/{c}: {rep:?}");
            }
        }
    }

    #[test]
    fn lattice_table_expansion_sizes() {
        let lat = ClassLattice::builtin("p1cubed-point").unwrap();
        let (level, entries) = lat.table("second-blowup").unwrap();
        assert_eq!(level, "F2");
        // e_ij: 6 ordered pairs × 5 columns; s_i, f_i: 3 × 7 distinct columns each
        assert_eq!(entries.len(), 30 + 21 + 21);
        assert_eq!(lat.pair_int("F2", "H1", "e12").unwrap(), 0);
    }

    #[test]
    fn lattice_errors() {
        let lat = ClassLattice::builtin("ptp2-point").unwrap();
        assert!(matches!(lat.pair("F2", "Ecal3", "s1"), Err(Error::MissingRule(_))));
        assert!(matches!(lat.pair("F9", "H1", "s1"), Err(Error::MissingRule(_))));
        assert!(matches!(lat.pair_int("F2", "1/2*H1", "s1"), Err(Error::NonIntegral(_))));
        let odd = include_str!("../../data/ptp2_point.toml").replace("self_intersection = 0 }", "self_intersection = 1 }");
        assert!(matches!(ClassLattice::from_toml(&odd), Err(Error::NonIntegral(_))));
        assert!(ClassLattice::from_toml("name = 3").is_err());
    }
}
