use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::groebner::GroebnerBasis;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exactalg::{Ambient, Mono, MultiPoly, Scalar};

/// Default cap on S-pair reductions per Gröbner basis computation.
pub const DEFAULT_BUDGET: usize = 100_000;

thread_local! {
    static SCOPED_BUDGET: Cell<usize> = const { Cell::new(DEFAULT_BUDGET) };
}

/// Budget given to ideals created on this thread without an explicit one.
pub fn default_budget() -> usize {
    SCOPED_BUDGET.with(Cell::get)
}

/// Runs `f` with [`default_budget`] set to `budget`; restored afterwards, also on unwind.
pub fn with_default_budget<T>(budget: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            SCOPED_BUDGET.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(SCOPED_BUDGET.with(|c| c.replace(budget)));
    f()
}

/// Finitely generated ideal with a write-once Gröbner basis cache per order.
pub struct Ideal {
    amb: Arc<Ambient>,
    gens: Vec<MultiPoly>,
    budget: usize,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Ideal {
        Ideal {
            amb: self.amb.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(amb: &Arc<Ambient>, gens: Vec<MultiPoly>) -> Result<Ideal> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            out.push(g.embed(amb)?);
        }
        out.retain(|g| !g.is_zero());
        Ok(Ideal { amb: amb.clone(), gens: out, budget: default_budget(), cache: Mutex::new(HashMap::new()) })
    }

    pub fn parse(amb: &Arc<Ambient>, gens: &[&str]) -> Result<Ideal> {
        let ps = gens.iter().map(|s| MultiPoly::parse(amb, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(amb, ps)
    }

    pub fn zero(amb: &Arc<Ambient>) -> Ideal {
        Ideal::new(amb, vec![]).unwrap()
    }

    pub fn unit(amb: &Arc<Ambient>) -> Ideal {
        Ideal::new(amb, vec![MultiPoly::one(amb)]).unwrap()
    }

    /// Ideal of the variables with the given indices.
    pub fn of_vars(amb: &Arc<Ambient>, vars: impl IntoIterator<Item = usize>) -> Ideal {
        Ideal::new(amb, vars.into_iter().map(|v| MultiPoly::var(amb, v)).collect()).unwrap()
    }

    pub fn with_budget(mut self, budget: usize) -> Ideal {
        self.budget = budget;
        self.cache.lock().unwrap().clear();
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn derive(&self, amb: &Arc<Ambient>, gens: Vec<MultiPoly>) -> Result<Ideal> {
        Ok(Ideal::new(amb, gens)?.with_budget(self.budget))
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().unwrap().get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.gens, &self.amb, order, self.budget)?);
        Ok(self.cache.lock().unwrap().entry(order.clone()).or_insert(gb).clone())
    }

    /// Reduced graded-reverse-lex basis.
    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(&MonomialOrder::GrevLex)
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.groebner_basis()?.normal_form(&f.embed(&self.amb)?)
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.groebner_basis()?.reduces_to_zero(&f.embed(&self.amb)?)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.as_constant().is_some()) {
            return Ok(true);
        }
        Ok(self.groebner_basis()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Equality as ideals, via reduced grevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        let o = if Arc::ptr_eq(&self.amb, &other.amb) || *self.amb == *other.amb {
            other.clone()
        } else {
            self.derive(&self.amb, other.gens.clone())?
        };
        Ok(self.groebner_basis()?.elements() == o.groebner_basis()?.elements())
    }

    /// Generators re-expressed in another ambient (variables matched by name).
    pub fn embed(&self, amb: &Arc<Ambient>) -> Result<Ideal> {
        self.derive(amb, self.gens.clone())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = self.gens.clone();
        for h in &other.gens {
            g.push(h.embed(&self.amb)?);
        }
        self.derive(&self.amb, g)
    }

    pub fn add(&self, extra: &[MultiPoly]) -> Result<Ideal> {
        let mut g = self.gens.clone();
        for h in extra {
            g.push(h.embed(&self.amb)?);
        }
        self.derive(&self.amb, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.checked_mul(&b.embed(&self.amb)?)?);
            }
        }
        self.derive(&self.amb, g)
    }

    /// `I ∩ k[remaining variables]`, kept in the same ambient.
    pub fn eliminate(&self, block: &[usize]) -> Result<Ideal> {
        if block.is_empty() {
            return Ok(self.clone());
        }
        let gb = self.groebner(&MonomialOrder::Block(block.to_vec()))?;
        let keep: Vec<MultiPoly> =
            gb.elements().into_iter().filter(|g| block.iter().all(|&v| !g.involves(v))).collect();
        self.derive(&self.amb, keep)
    }

    pub fn eliminate_named(&self, names: &[&str]) -> Result<Ideal> {
        let vars = names.iter().map(|n| self.amb.var_index(n)).collect::<Result<Vec<_>>>()?;
        self.eliminate(&vars)
    }

    /// `(I : f^∞)` by adjoining `t` and eliminating it from `I + ⟨1 − t·f⟩`.
    pub fn saturate(&self, f: &MultiPoly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Invalid("cannot saturate by zero".into()));
        }
        if f.as_constant().is_some() || self.gens.is_empty() {
            return Ok(self.clone());
        }
        let t = self.amb.fresh_name("t");
        let big = self.amb.with_aux(&[&t])?;
        let tv = big.var_index(&t)?;
        let mut g = self.gens.iter().map(|h| h.embed(&big)).collect::<Result<Vec<_>>>()?;
        let tf = MultiPoly::var(&big, tv).checked_mul(&f.embed(&big)?)?;
        g.push(MultiPoly::one(&big).checked_sub(&tf)?);
        let j = self.derive(&big, g)?.eliminate(&[tv])?;
        j.embed(&self.amb)
    }

    /// `(I : x_v^∞)`; homogeneous ideals use a grevlex basis with `x_v` last.
    pub fn saturate_by_var(&self, v: usize) -> Result<Ideal> {
        if self.gens.is_empty() {
            return Ok(self.clone());
        }
        if !self.gens.iter().all(MultiPoly::is_standard_homogeneous) {
            return self.saturate(&MultiPoly::var(&self.amb, v));
        }
        let gb = self.groebner(&MonomialOrder::GrevLexLast(v))?;
        let gens: Vec<MultiPoly> = gb
            .elements()
            .into_iter()
            .map(|g| {
                let k = g.terms().keys().map(|m| m.0[v]).min().unwrap_or(0);
                let mut m = Mono::one();
                m.0[v] = k;
                let terms: Vec<(Mono, Scalar)> =
                    g.terms().iter().map(|(mm, c)| (m.quotient_of(mm), c.clone())).collect();
                MultiPoly::from_terms(&self.amb, terms)
            })
            .collect();
        self.derive(&self.amb, gens)
    }

    /// `(I : m^∞)` for the ideal `m` of the given variables.
    pub fn saturate_by_vars(&self, vars: &[usize]) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for &v in vars {
            let s = self.saturate_by_var(v)?;
            if s.equals(self)? {
                return Ok(self.clone());
            }
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.clone()))
    }

    /// Saturation by the irrelevant ideal, one factor at a time.
    pub fn saturate_irrelevant(&self) -> Result<Ideal> {
        let mut cur = self.clone();
        for k in 0..self.amb.nfactors() {
            let vars: Vec<usize> = self.amb.factor_vars(k).collect();
            cur = cur.saturate_by_vars(&vars)?;
            if cur.is_unit()? {
                break;
            }
        }
        Ok(cur)
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_unit()? {
            return other.embed(&self.amb);
        }
        if other.is_unit()? || self.gens.is_empty() {
            return Ok(self.clone());
        }
        if other.gens.is_empty() {
            return Ok(other.clone());
        }
        let t = self.amb.fresh_name("t");
        let big = self.amb.with_aux(&[&t])?;
        let tv = big.var_index(&t)?;
        let tp = MultiPoly::var(&big, tv);
        let omt = MultiPoly::one(&big).checked_sub(&tp)?;
        let mut g = Vec::new();
        for h in &self.gens {
            g.push(tp.checked_mul(&h.embed(&big)?)?);
        }
        for h in &other.gens {
            g.push(omt.checked_mul(&h.embed(&big)?)?);
        }
        self.derive(&big, g)?.eliminate(&[tv])?.embed(&self.amb)
    }

    /// Whether `f` vanishes on the zero set of `I` (Rabinowitsch trick).
    pub fn radical_contains(&self, f: &MultiPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let t = self.amb.fresh_name("t");
        let big = self.amb.with_aux(&[&t])?;
        let tv = big.var_index(&t)?;
        let mut g = self.gens.iter().map(|h| h.embed(&big)).collect::<Result<Vec<_>>>()?;
        let tf = MultiPoly::var(&big, tv).checked_mul(&f.embed(&big)?)?;
        g.push(MultiPoly::one(&big).checked_sub(&tf)?);
        self.derive(&big, g)?.is_unit()
    }

    /// Krull dimension of the quotient by the maximal independent set of
    /// variables modulo the leading-term ideal. `None` for the unit ideal.
    pub fn dimension(&self) -> Result<Option<usize>> {
        let n = self.amb.nvars();
        if self.gens.is_empty() {
            return Ok(Some(n));
        }
        let gb = self.groebner_basis()?;
        if gb.is_unit() {
            return Ok(None);
        }
        let sups: Vec<u32> = gb.leading_monomials().iter().map(Mono::support).collect();
        let mut best = 0;
        max_independent(&sups, n, 0, 0, 0, &mut best);
        Ok(Some(best))
    }

    /// Dimension of the multi-projective zero set: cone dimension minus the
    /// number of factors. `None` when empty.
    pub fn projective_dimension(&self) -> Result<Option<usize>> {
        let sat = self.saturate_irrelevant()?;
        Ok(sat.dimension()?.and_then(|d| d.checked_sub(self.amb.nfactors())))
    }

    /// Whether the multi-projective zero set is empty, checked on the
    /// stratified coordinate charts `x_i = 1, x_j = 0 (j < i)` of each factor.
    pub fn is_empty_projective(&self) -> Result<bool> {
        let mut subs: Vec<Option<MultiPoly>> = vec![None; self.amb.nvars()];
        self.charts_empty(0, &mut subs)
    }

    fn charts_empty(&self, k: usize, subs: &mut Vec<Option<MultiPoly>>) -> Result<bool> {
        if k == self.amb.nfactors() {
            let gens = self.gens.iter().map(|g| g.substitute(subs, &self.amb)).collect::<Result<Vec<_>>>()?;
            return self.derive(&self.amb, gens)?.is_unit();
        }
        let vars: Vec<usize> = self.amb.factor_vars(k).collect();
        for (i, &v) in vars.iter().enumerate() {
            for &w in &vars[..i] {
                subs[w] = Some(MultiPoly::zero(&self.amb));
            }
            subs[v] = Some(MultiPoly::one(&self.amb));
            let empty = self.charts_empty(k + 1, subs)?;
            for &w in &vars {
                subs[w] = None;
            }
            if !empty {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn max_independent(sups: &[u32], n: usize, v: usize, set: u32, size: usize, best: &mut usize) {
    if size + (n - v) <= *best {
        return;
    }
    if v == n {
        *best = size;
        return;
    }
    let with = set | (1 << v);
    if sups.iter().all(|&s| s & !with != 0) {
        max_independent(sups, n, v + 1, with, size + 1, best);
    }
    max_independent(sups, n, v + 1, set, size, best);
}
