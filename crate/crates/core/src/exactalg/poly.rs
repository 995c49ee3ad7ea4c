use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ambient::Ambient;
use super::mono::Mono;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Per-factor degree of a polynomial; auxiliary variables are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multidegree {
    Homogeneous(Vec<u32>),
    NotHomogeneous,
    Zero,
}

/// Exact polynomial over ℚ or ℚ(i) in the variables of an [`Ambient`].
///
/// Invariant: `terms` never stores a zero coefficient.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    amb: Arc<Ambient>,
    terms: BTreeMap<Mono, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        same_ambient(&self.amb, &o.amb) && self.terms == o.terms
    }
}

impl Eq for MultiPoly {}

pub(crate) fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
    Arc::ptr_eq(a, b) || a.names() == b.names() && a.factors() == b.factors()
}

impl MultiPoly {
    pub fn zero(amb: &Arc<Ambient>) -> MultiPoly {
        MultiPoly { amb: amb.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(amb: &Arc<Ambient>, c: Scalar) -> MultiPoly {
        MultiPoly::monomial(amb, Mono::one(), c)
    }

    pub fn one(amb: &Arc<Ambient>) -> MultiPoly {
        MultiPoly::constant(amb, Scalar::one())
    }

    pub fn int(amb: &Arc<Ambient>, n: i64) -> MultiPoly {
        MultiPoly::constant(amb, Scalar::int(n))
    }

    pub fn monomial(amb: &Arc<Ambient>, m: Mono, c: Scalar) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { amb: amb.clone(), terms }
    }

    pub fn var(amb: &Arc<Ambient>, v: usize) -> MultiPoly {
        MultiPoly::monomial(amb, Mono::var(v), Scalar::one())
    }

    pub fn named(amb: &Arc<Ambient>, name: &str) -> Result<MultiPoly> {
        Ok(MultiPoly::var(amb, amb.var_index(name)?))
    }

    pub fn from_terms(amb: &Arc<Ambient>, it: impl IntoIterator<Item = (Mono, Scalar)>) -> MultiPoly {
        let mut p = MultiPoly::zero(amb);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn parse(amb: &Arc<Ambient>, text: &str) -> Result<MultiPoly> {
        super::parse::parse_poly(amb, text)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if same_ambient(&self.amb, &o.amb) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!("{} vs {}", self.amb, o.amb)))
        }
    }

    pub fn checked_add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, &-c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut r = MultiPoly::zero(&self.amb);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.amb);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.amb);
        }
        MultiPoly { amb: self.amb.clone(), terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> MultiPoly {
        MultiPoly { amb: self.amb.clone(), terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::deg).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v] as u32).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// Bitmask of variables occurring in the polynomial.
    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |a, m| a | m.support())
    }

    fn factor_degrees(&self, m: &Mono) -> Vec<u32> {
        (0..self.amb.nfactors()).map(|k| m.deg_in(self.amb.factor_vars(k))).collect()
    }

    pub fn multidegree(&self) -> Multidegree {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Multidegree::Zero };
        let d = self.factor_degrees(first);
        if it.all(|m| self.factor_degrees(m) == d) {
            Multidegree::Homogeneous(d)
        } else {
            Multidegree::NotHomogeneous
        }
    }

    /// Multidegree of a homogeneous polynomial, `None` otherwise (including zero).
    pub fn homogeneous_degree(&self) -> Option<Vec<u32>> {
        match self.multidegree() {
            Multidegree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    /// Homogeneous for the standard grading in which every variable has degree 1.
    pub fn is_standard_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Mono::deg);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn derivative(&self, v: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.amb);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut m2 = *m;
                m2.0[v] -= 1;
                r.add_term(m2, &(c * &Scalar::int(e as i64)));
            }
        }
        r
    }

    /// Evaluates at a full assignment of all variables.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate().take(self.amb.nvars()) {
                if e > 0 {
                    t = &t * &values[v].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces variable `v` by `images[v]` when present; other variables
    /// pass through by name into `target`.
    pub fn substitute(&self, images: &[Option<MultiPoly>], target: &Arc<Ambient>) -> Result<MultiPoly> {
        let n = self.amb.nvars();
        let mut img: Vec<MultiPoly> = Vec::with_capacity(n);
        for v in 0..n {
            match images.get(v).and_then(|x| x.as_ref()) {
                Some(p) => {
                    if !same_ambient(p.ambient(), target) {
                        return Err(Error::AmbientMismatch(format!(
                            "substitution image for {} lives in {}",
                            self.amb.name(v),
                            p.ambient()
                        )));
                    }
                    img.push(p.clone())
                }
                None => {
                    if !self.involves(v) {
                        img.push(MultiPoly::zero(target));
                        continue;
                    }
                    let t = target.index(self.amb.name(v)).ok_or_else(|| {
                        Error::AmbientMismatch(format!("variable {} missing in {}", self.amb.name(v), target))
                    })?;
                    img.push(MultiPoly::var(target, t));
                }
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); n];
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for v in 0..n {
                let e = m.0[v] as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[v];
                if pw.is_empty() {
                    pw.push(MultiPoly::one(target));
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &img[v];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            for (mm, cc) in t.terms {
                r.add_term(mm, &cc);
            }
        }
        Ok(r)
    }

    /// Substitution given by variable names, within the same ambient.
    pub fn substitute_named(&self, subs: &[(&str, MultiPoly)]) -> Result<MultiPoly> {
        let mut images = vec![None; self.amb.nvars()];
        for (n, p) in subs {
            images[self.amb.var_index(n)?] = Some(p.clone());
        }
        self.substitute(&images, &self.amb)
    }

    /// Re-expresses the polynomial in another ambient by variable names.
    pub fn embed(&self, target: &Arc<Ambient>) -> Result<MultiPoly> {
        if same_ambient(&self.amb, target) {
            return Ok(MultiPoly { amb: target.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = (0..self.amb.nvars()).map(|v| target.index(self.amb.name(v))).collect();
        let mut r = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut mm = Mono::one();
            for v in 0..self.amb.nvars() {
                if m.0[v] > 0 {
                    let t = map[v].ok_or_else(|| {
                        Error::AmbientMismatch(format!("variable {} missing in {}", self.amb.name(v), target))
                    })?;
                    mm.0[t] = m.0[v];
                }
            }
            r.add_term(mm, c);
        }
        Ok(r)
    }

    /// Leading term for the graded-lexicographic order (display and canonical forms).
    pub fn grlex_leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Rational scaling making coefficients coprime integers with positive
    /// grlex-leading coefficient. Gaussian polynomials are made monic instead.
    pub fn primitive(&self) -> MultiPoly {
        let Some((_, lc)) = self.grlex_leading() else { return self.clone() };
        if !self.is_rational() {
            return self.scale(&lc.inv().unwrap());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            let r = c.as_rational().unwrap();
            den = den.lcm(r.denom());
            num = num.gcd(r.numer());
        }
        let mut f = BigRational::new(den, num);
        if lc.is_negative_rational() {
            f = -f;
        }
        self.scale(&Scalar::Rat(f))
    }

    /// Terms in display order (grlex descending).
    pub fn sorted_terms(&self) -> Vec<(Mono, Scalar)> {
        let mut v: Vec<(Mono, Scalar)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        v
    }
}

/// Graded lexicographic comparison (variable 0 most significant).
pub fn grlex_cmp(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.cmp(b))
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics on ambient mismatch; use `checked_add` for fallible code paths.
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("ambient mismatch")
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("ambient mismatch")
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("ambient mismatch")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::int(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
            let mono: Vec<String> = (0..self.amb.nvars())
                .filter(|&v| m.0[v] > 0)
                .map(|v| {
                    if m.0[v] == 1 {
                        self.amb.name(v).to_string()
                    } else {
                        format!("{}^{}", self.amb.name(v), m.0[v])
                    }
                })
                .collect();
            let neg = c.is_negative_rational();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        write!(f, "{out}")
    }
}

/// Matrix of partial derivatives `∂fᵢ/∂varⱼ`.
pub fn jacobian(fs: &[MultiPoly], vars: &[usize]) -> Vec<Vec<MultiPoly>> {
    fs.iter().map(|f| vars.iter().map(|&v| f.derivative(v)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb() -> Arc<Ambient> {
        Ambient::parse("P2(x0,x1,x2) * P2(y0,y1,y2)").unwrap()
    }

    #[test]
    fn pow_binomial() {
        let a = amb();
        let p = MultiPoly::parse(&a, "x0+x1").unwrap().pow(2);
        assert_eq!(p, MultiPoly::parse(&a, "x0^2+2*x0*x1+x1^2").unwrap());
    }

    #[test]
    fn multidegree_cases() {
        let a = amb();
        let f = MultiPoly::parse(&a, "x0*y0+x1*y1+x2*y2").unwrap();
        assert_eq!(f.multidegree(), Multidegree::Homogeneous(vec![1, 1]));
        let g = MultiPoly::parse(&a, "x0+y0").unwrap();
        assert_eq!(g.multidegree(), Multidegree::NotHomogeneous);
    }

    #[test]
    fn display_roundtrip() {
        let a = amb();
        let f = MultiPoly::parse(&a, "-x0*y1 + 3/2*x2^2 - 1").unwrap();
        let g = MultiPoly::parse(&a, &f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn primitive_form() {
        let a = amb();
        let f = MultiPoly::parse(&a, "-2/3*x0 + 4/3*x1").unwrap();
        assert_eq!(f.primitive(), MultiPoly::parse(&a, "x0 - 2*x1").unwrap());
    }
}
