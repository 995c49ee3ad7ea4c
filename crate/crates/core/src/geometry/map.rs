use std::fmt;
use std::sync::Arc;

use super::point::ProjPoint;
use super::variety::Subvariety;
use crate::error::{Error, Result};
use crate::exactalg::gcd::cancel_common;
use crate::exactalg::{Ambient, Multidegree, MultiPoly};
use crate::ideals::Ideal;

/// A rational map between multi-projective ambients, given by one tuple of
/// components per target factor plus one component per target auxiliary
/// variable. Optionally restricted to a subvariety of the source.
///
/// Invariants: the components of one target factor share a multidegree and
/// are not all zero; auxiliary components have multidegree zero.
#[derive(Clone, Debug)]
pub struct RationalMap {
    src: Arc<Ambient>,
    src_ideal: Option<Ideal>,
    tgt: Arc<Ambient>,
    comps: Vec<Vec<MultiPoly>>,
    aux: Vec<MultiPoly>,
}

/// Outcome of a contraction check.
#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub image: Ideal,
    pub matches_expected: bool,
    pub source_dim: Option<usize>,
    pub image_dim: Option<usize>,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        let drops = match (self.source_dim, self.image_dim) {
            (Some(s), Some(i)) => i < s,
            (Some(_), None) => true,
            _ => false,
        };
        self.matches_expected && drops
    }
}

fn same(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RationalMap {
    pub fn new(
        src: &Arc<Ambient>,
        tgt: &Arc<Ambient>,
        comps: Vec<Vec<MultiPoly>>,
        aux: Vec<MultiPoly>,
    ) -> Result<RationalMap> {
        if comps.len() != tgt.nfactors() || aux.len() != tgt.aux_names().len() {
            return Err(Error::Shape("component count does not match the target".into()));
        }
        let comps = comps
            .into_iter()
            .map(|c| c.iter().map(|p| p.embed(src)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let aux = aux.iter().map(|p| p.embed(src)).collect::<Result<Vec<_>>>()?;
        for (k, c) in comps.iter().enumerate() {
            if c.len() != tgt.factor_vars(k).len() {
                return Err(Error::Shape(format!("factor {k} needs {} components", tgt.factor_vars(k).len())));
            }
            if c.iter().all(MultiPoly::is_zero) {
                return Err(Error::Degenerate(format!("all components of factor {k} vanish")));
            }
            let mut deg: Option<Vec<u32>> = None;
            for p in c.iter().filter(|p| !p.is_zero()) {
                let d = p.homogeneous_degree().ok_or_else(|| Error::Invalid(format!("component {p} is not multihomogeneous")))?;
                if deg.as_ref().is_some_and(|e| *e != d) {
                    return Err(Error::Invalid(format!("components of factor {k} have different multidegrees")));
                }
                deg = Some(d);
            }
        }
        for p in &aux {
            match p.multidegree() {
                Multidegree::Zero => {}
                Multidegree::Homogeneous(d) if d.iter().all(|&x| x == 0) => {}
                _ => return Err(Error::Invalid(format!("affine component {p} must have degree zero"))),
            }
        }
        Ok(RationalMap { src: src.clone(), src_ideal: None, tgt: tgt.clone(), comps, aux })
    }

    /// Components given as strings in target variable order.
    pub fn parse(src: &Arc<Ambient>, tgt: &Arc<Ambient>, comps: &[&str]) -> Result<RationalMap> {
        if comps.len() != tgt.nvars() {
            return Err(Error::Shape(format!("{} components given for {} target variables", comps.len(), tgt.nvars())));
        }
        let polys = comps.iter().map(|s| MultiPoly::parse(src, s)).collect::<Result<Vec<_>>>()?;
        let per = (0..tgt.nfactors()).map(|k| tgt.factor_vars(k).map(|v| polys[v].clone()).collect()).collect();
        let aux = tgt.aux_vars().map(|v| polys[v].clone()).collect();
        RationalMap::new(src, tgt, per, aux)
    }

    pub fn identity(amb: &Arc<Ambient>) -> RationalMap {
        let comps = (0..amb.nfactors()).map(|k| amb.factor_vars(k).map(|v| MultiPoly::var(amb, v)).collect()).collect();
        let aux = amb.aux_vars().map(|v| MultiPoly::var(amb, v)).collect();
        RationalMap { src: amb.clone(), src_ideal: None, tgt: amb.clone(), comps, aux }
    }

    /// The same map restricted to the zero set of `ideal`.
    pub fn restricted(mut self, ideal: &Ideal) -> Result<RationalMap> {
        self.src_ideal = Some(ideal.embed(&self.src)?);
        Ok(self)
    }

    pub fn source(&self) -> &Arc<Ambient> {
        &self.src
    }

    pub fn target(&self) -> &Arc<Ambient> {
        &self.tgt
    }

    pub fn source_ideal(&self) -> Option<&Ideal> {
        self.src_ideal.as_ref()
    }

    pub fn components(&self) -> &[Vec<MultiPoly>] {
        &self.comps
    }

    pub fn aux_components(&self) -> &[MultiPoly] {
        &self.aux
    }

    /// All components in target variable order.
    pub fn flat_components(&self) -> Vec<MultiPoly> {
        self.comps.iter().flatten().chain(self.aux.iter()).cloned().collect()
    }

    fn src_ideal_or_zero(&self) -> Ideal {
        self.src_ideal.clone().unwrap_or_else(|| Ideal::zero(&self.src))
    }

    /// Pullback of a target polynomial along the components.
    pub fn pullback(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let f = f.embed(&self.tgt)?;
        let images: Vec<Option<MultiPoly>> = self.flat_components().into_iter().map(Some).collect();
        f.substitute(&images, &self.src)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if !same(p.ambient(), &self.src) {
            return Err(Error::AmbientMismatch(format!("point of {} given to a map from {}", p.ambient(), self.src)));
        }
        if let Some(i) = &self.src_ideal {
            if !i.generators().iter().all(|g| g.eval(p.values()).is_zero()) {
                return Err(Error::Invalid(format!("{p} is not on the source subvariety")));
            }
        }
        let mut vals = Vec::with_capacity(self.tgt.nvars());
        for c in &self.comps {
            let v: Vec<_> = c.iter().map(|f| f.eval(p.values())).collect();
            if v.iter().all(|x| x.is_zero()) {
                return Err(Error::BaseLocus);
            }
            vals.extend(v);
        }
        vals.extend(self.aux.iter().map(|f| f.eval(p.values())));
        ProjPoint::new(&self.tgt, vals)
    }

    /// `self ∘ inner`: substitutes the components of `inner`, cancels common
    /// factors per target factor and reduces modulo the source ideal of `inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        if !same(&inner.tgt, &self.src) {
            return Err(Error::AmbientMismatch(format!("cannot compose: {} vs {}", inner.tgt, self.src)));
        }
        let reduce = |f: MultiPoly| -> Result<MultiPoly> {
            match &inner.src_ideal {
                Some(i) => i.normal_form(&f),
                None => Ok(f),
            }
        };
        let mut comps = Vec::new();
        for (k, c) in self.comps.iter().enumerate() {
            let sub = c.iter().map(|f| inner.pullback(f)).collect::<Result<Vec<_>>>()?;
            let sub = cancel_common(&sub).into_iter().map(reduce).collect::<Result<Vec<_>>>()?;
            if sub.iter().all(MultiPoly::is_zero) {
                return Err(Error::Collapse(k));
            }
            comps.push(cancel_common(&sub));
        }
        let aux = self.aux.iter().map(|f| inner.pullback(f).and_then(reduce)).collect::<Result<Vec<_>>>()?;
        let mut m = RationalMap::new(&inner.src, &self.tgt, comps, aux)?;
        m.src_ideal = inner.src_ideal.clone();
        Ok(m)
    }

    /// Projective proportionality modulo `ideal`: every cross-determinant
    /// `φ_i ψ_j − φ_j ψ_i` of each target factor, and every difference of
    /// affine components, lies in `ideal`.
    pub fn equal_mod_ideal(&self, other: &RationalMap, ideal: &Ideal) -> Result<bool> {
        if !same(&self.tgt, &other.tgt) || self.comps.len() != other.comps.len() {
            return Ok(false);
        }
        let amb = ideal.ambient();
        for (a, b) in self.comps.iter().zip(&other.comps) {
            let a = a.iter().map(|f| f.embed(amb)).collect::<Result<Vec<_>>>()?;
            let b = b.iter().map(|f| f.embed(amb)).collect::<Result<Vec<_>>>()?;
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    let d = (&a[i] * &b[j]).checked_sub(&(&a[j] * &b[i]))?;
                    if !ideal.contains(&d)? {
                        return Ok(false);
                    }
                }
            }
        }
        for (a, b) in self.aux.iter().zip(&other.aux) {
            if !ideal.contains(&a.embed(amb)?.checked_sub(&b.embed(amb)?)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Points where some target factor has all components vanishing.
    pub fn base_locus(&self) -> Result<Subvariety> {
        let base = self.src_ideal_or_zero();
        let mut acc: Option<Ideal> = None;
        for c in &self.comps {
            let j = base.add(c)?;
            acc = Some(match acc {
                None => j,
                Some(a) => a.intersect(&j)?,
            });
        }
        let acc = match acc {
            Some(a) => a,
            None => Ideal::unit(&self.src),
        };
        Subvariety::new(acc.saturate_irrelevant()?)
    }

    /// Ideal of the closure of the image of `v`, by elimination from the
    /// parametrized graph `z_{k,i} = s_k φ_{k,i}`, `w_a = φ_a`.
    pub fn image_ideal(&self, v: &Subvariety) -> Result<Ideal> {
        let mut vi = v.ideal().embed(&self.src)?;
        if let Some(i) = &self.src_ideal {
            vi = vi.sum(i)?;
        }
        let vi = vi.saturate_irrelevant()?;
        if vi.is_unit()? {
            return Ok(Ideal::unit(&self.tgt));
        }
        let mut extra: Vec<String> = Vec::new();
        let fresh = |base: &str, taken: &[String]| {
            let mut k = 0;
            loop {
                let n = format!("{base}{k}");
                if self.src.index(&n).is_none() && !taken.contains(&n) {
                    return n;
                }
                k += 1;
            }
        };
        for _ in 0..self.tgt.nvars() {
            let n = fresh("zz", &extra);
            extra.push(n);
        }
        for _ in 0..self.tgt.nfactors() {
            let n = fresh("ss", &extra);
            extra.push(n);
        }
        let refs: Vec<&str> = extra.iter().map(String::as_str).collect();
        let big = self.src.with_aux(&refs)?;
        let n0 = self.src.nvars();
        let z = |t: usize| MultiPoly::var(&big, n0 + t);
        let s = |k: usize| MultiPoly::var(&big, n0 + self.tgt.nvars() + k);
        let mut gens = vi.generators().iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        for (k, c) in self.comps.iter().enumerate() {
            for (i, t) in self.tgt.factor_vars(k).enumerate() {
                gens.push(z(t).checked_sub(&(&s(k) * &c[i].embed(&big)?))?);
            }
        }
        for (a, t) in self.tgt.aux_vars().enumerate() {
            gens.push(z(t).checked_sub(&self.aux[a].embed(&big)?)?);
        }
        let mut block: Vec<usize> = (0..n0).collect();
        block.extend(n0 + self.tgt.nvars()..big.nvars());
        let elim = Ideal::new(&big, gens)?.with_budget(vi.budget()).eliminate(&block)?;
        let mut images: Vec<Option<MultiPoly>> = vec![Some(MultiPoly::zero(&self.tgt)); big.nvars()];
        for t in 0..self.tgt.nvars() {
            images[n0 + t] = Some(MultiPoly::var(&self.tgt, t));
        }
        let gens = elim.generators().iter().map(|g| g.substitute(&images, &self.tgt)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.tgt, gens)?.with_budget(vi.budget()).saturate_irrelevant()
    }

    /// Whether the image of `d` is exactly `expected` and of smaller dimension.
    pub fn check_contraction(&self, d: &Subvariety, expected: &Subvariety) -> Result<ContractionReport> {
        let image = self.image_ideal(d)?;
        let want = expected.ideal().embed(&self.tgt)?.saturate_irrelevant()?;
        let matches_expected = image.equals(&want)?;
        let mut di = d.ideal().embed(&self.src)?;
        if let Some(i) = &self.src_ideal {
            di = di.sum(i)?;
        }
        Ok(ContractionReport {
            source_dim: di.projective_dimension()?,
            image_dim: image.projective_dimension()?,
            image,
            matches_expected,
        })
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" : ")))
            .collect();
        write!(f, "{}", parts.join(", "))?;
        if !self.aux.is_empty() {
            write!(f, " ({})", self.aux.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))?;
        }
        Ok(())
    }
}
