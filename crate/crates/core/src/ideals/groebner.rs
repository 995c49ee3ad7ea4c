//! Fraction-free Buchberger algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::order::{MonomialOrder, OrderCmp};
use crate::error::{Error, Result};
use crate::exactalg::{Ambient, Mono, MultiPoly, Scalar};

/// Integer polynomial with terms sorted in decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GPoly {
    pub terms: Vec<(Mono, BigInt)>,
}

impl GPoly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Divides by the content and makes the leading coefficient positive.
    fn make_primitive(&mut self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return BigInt::one();
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
        g
    }
}

pub(crate) fn to_gpoly(f: &MultiPoly, ord: &OrderCmp) -> Result<GPoly> {
    Ok(to_gpoly_scaled(f, ord)?.0)
}

/// Primitive integer form `g = k·f` together with `k`.
fn to_gpoly_scaled(f: &MultiPoly, ord: &OrderCmp) -> Result<(GPoly, BigRational)> {
    let mut den = BigInt::one();
    for c in f.terms().values() {
        let r = c.as_rational().ok_or_else(|| Error::NonRational(f.to_string()))?;
        den = den.lcm(r.denom());
    }
    let mut terms: Vec<(Mono, BigInt)> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let r = c.as_rational().unwrap();
            (*m, (r * BigRational::from_integer(den.clone())).to_integer())
        })
        .collect();
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    let mut g = GPoly { terms };
    let mut k = BigRational::from_integer(den);
    if !g.is_zero() {
        k /= BigRational::from_integer(g.make_primitive());
    }
    Ok((g, k))
}

pub(crate) fn from_gpoly(g: &GPoly, amb: &Arc<Ambient>) -> MultiPoly {
    MultiPoly::from_terms(amb, g.terms.iter().map(|(m, c)| (*m, Scalar::from_bigint(c.clone()))))
}

/// `a·f − b·m·g` restricted to the tails (the leading terms are assumed to cancel).
fn cancel_step(a: &BigInt, f: &[(Mono, BigInt)], b: &BigInt, m: &Mono, g: &[(Mono, BigInt)], ord: &OrderCmp) -> Vec<(Mono, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (1, 1);
    while i < f.len() || j < g.len() {
        if j >= g.len() {
            out.push((f[i].0, a * &f[i].1));
            i += 1;
            continue;
        }
        let gm = m.mul(&g[j].0);
        if i >= f.len() {
            out.push((gm, -(b * &g[j].1)));
            j += 1;
            continue;
        }
        match ord.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push((f[i].0, a * &f[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &f[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fully reduces `h` by `basis`. Returns the primitive remainder and the
/// rational factor `s` with `remainder = s · (exact normal form)`.
pub(crate) fn reduce(h: &GPoly, basis: &[&GPoly], ord: &OrderCmp) -> (GPoly, BigRational) {
    let mut done: Vec<(Mono, BigInt)> = Vec::new();
    let mut cur: Vec<(Mono, BigInt)> = h.terms.clone();
    let mut pos = 0;
    let mut scale = BigRational::one();
    let mut since = 0;
    while pos < cur.len() {
        let lm = cur[pos].0;
        let Some(g) = basis.iter().find(|g| g.lm().divides(&lm)) else {
            done.push(cur[pos].clone());
            pos += 1;
            continue;
        };
        let lc = &cur[pos].1;
        let d = lc.gcd(g.lc());
        let mut a = g.lc() / &d;
        let mut b = lc / &d;
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        let m = g.lm().quotient_of(&lm);
        if !a.is_one() {
            for (_, c) in done.iter_mut() {
                *c = &*c * &a;
            }
            scale *= BigRational::from_integer(a.clone());
        }
        cur = cancel_step(&a, &cur[pos..], &b, &m, &g.terms, ord);
        pos = 0;
        since += 1;
        if since >= 8 {
            since = 0;
            let c = done.iter().chain(cur.iter()).fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
            if !c.is_zero() && !c.is_one() {
                for (_, x) in done.iter_mut().chain(cur.iter_mut()) {
                    *x = &*x / &c;
                }
                scale /= BigRational::from_integer(c);
            }
        }
    }
    let mut r = GPoly { terms: done };
    if !r.is_zero() {
        let c = r.make_primitive();
        scale /= BigRational::from_integer(c);
    }
    (r, scale)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    deg: u32,
}

struct Buchberger<'a> {
    ord: &'a OrderCmp,
    polys: Vec<GPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Buchberger<'_> {
    fn lm(&self, i: usize) -> &Mono {
        self.polys[i].lm()
    }

    fn update(&mut self, h: usize) {
        let lh = *self.lm(h);
        let c: Vec<(usize, Mono)> = self.active.iter().map(|&g| (g, lh.lcm(self.lm(g)))).collect();
        let mut d: Vec<(usize, Mono)> = Vec::new();
        for (idx, (g, l)) in c.iter().enumerate() {
            let keep = lh.coprime(self.lm(*g))
                || !(c[idx + 1..].iter().any(|(_, l2)| l2.divides(l)) || d.iter().any(|(_, l2)| l2.divides(l)));
            if keep {
                d.push((*g, *l));
            }
        }
        let new_pairs: Vec<Pair> = d
            .into_iter()
            .filter(|(g, _)| !lh.coprime(self.lm(*g)))
            .map(|(g, l)| Pair { i: g.min(h), j: g.max(h), deg: l.deg(), lcm: l })
            .collect();
        let lms: Vec<Mono> = self.polys.iter().map(|p| *p.lm()).collect();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lh.lcm(&lms[p.i]) != p.lcm && lh.lcm(&lms[p.j]) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !lh.divides(&lms[g]));
        self.active.push(h);
    }

    fn select(&self) -> usize {
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (p, q) = (&self.pairs[k], &self.pairs[best]);
            let o = p
                .deg
                .cmp(&q.deg)
                .then_with(|| self.ord.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)));
            if o == Ordering::Less {
                best = k;
            }
        }
        best
    }

    fn spoly(&self, p: &Pair) -> GPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        let mf = f.lm().quotient_of(&p.lcm);
        let mg = g.lm().quotient_of(&p.lcm);
        let fs: Vec<(Mono, BigInt)> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        let mut s = GPoly { terms: cancel_step(&a, &fs, &b, &mg, &g.terms, self.ord) };
        if !s.is_zero() {
            s.make_primitive();
        }
        s
    }

    fn basis_refs(&self) -> Vec<&GPoly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    /// Adds a reduced nonzero polynomial; returns true if it is a unit.
    fn add(&mut self, h: GPoly) -> bool {
        let unit = h.lm().is_one();
        self.polys.push(h);
        let idx = self.polys.len() - 1;
        self.update(idx);
        unit
    }
}

/// Reduced Gröbner basis with integer-primitive elements, sorted by leading
/// monomial in increasing order.
pub(crate) fn buchberger(input: Vec<GPoly>, ord: &OrderCmp, budget: usize) -> Result<Vec<GPoly>> {
    let one = || vec![GPoly { terms: vec![(Mono::one(), BigInt::one())] }];
    let mut input: Vec<GPoly> = input.into_iter().filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    let mut bb = Buchberger { ord, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for f in input {
        let (h, _) = reduce(&f, &bb.basis_refs(), ord);
        if !h.is_zero() && bb.add(h) {
            return Ok(one());
        }
    }
    let mut steps = 0usize;
    while !bb.pairs.is_empty() {
        let k = bb.select();
        let p = bb.pairs.swap_remove(k);
        let s = bb.spoly(&p);
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if s.is_zero() {
            continue;
        }
        let (h, _) = reduce(&s, &bb.basis_refs(), ord);
        if !h.is_zero() && bb.add(h) {
            return Ok(one());
        }
    }
    let act: Vec<GPoly> = bb.active.iter().map(|&i| bb.polys[i].clone()).collect();
    let mut out = Vec::with_capacity(act.len());
    for (k, g) in act.iter().enumerate() {
        let others: Vec<&GPoly> = act.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let (r, _) = reduce(g, &others, ord);
        out.push(r);
    }
    out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    Ok(out)
}

/// A reduced Gröbner basis together with its order and ambient.
#[derive(Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    cmp: OrderCmp,
    amb: Arc<Ambient>,
    polys: Vec<GPoly>,
}

impl GroebnerBasis {
    pub(crate) fn compute(gens: &[MultiPoly], amb: &Arc<Ambient>, order: &MonomialOrder, budget: usize) -> Result<GroebnerBasis> {
        let cmp = OrderCmp::new(order, amb.nvars());
        let input = gens.iter().map(|g| to_gpoly(g, &cmp)).collect::<Result<Vec<_>>>()?;
        let polys = buchberger(input, &cmp, budget)?;
        Ok(GroebnerBasis { order: order.clone(), cmp, amb: amb.clone(), polys })
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Basis elements as polynomials (primitive, positive leading coefficient).
    pub fn elements(&self) -> Vec<MultiPoly> {
        self.polys.iter().map(|g| from_gpoly(g, &self.amb)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(|g| *g.lm()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm().is_one()
    }

    /// Exact normal form over ℚ.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let (g, k) = to_gpoly_scaled(f, &self.cmp)?;
        if g.is_zero() {
            return Ok(MultiPoly::zero(&self.amb));
        }
        let refs: Vec<&GPoly> = self.polys.iter().collect();
        let (r, s) = reduce(&g, &refs, &self.cmp);
        Ok(from_gpoly(&r, &self.amb).scale(&Scalar::Rat((s * k).recip())))
    }

    pub fn reduces_to_zero(&self, f: &MultiPoly) -> Result<bool> {
        let g = to_gpoly(f, &self.cmp)?;
        let refs: Vec<&GPoly> = self.polys.iter().collect();
        Ok(reduce(&g, &refs, &self.cmp).0.is_zero())
    }
}
