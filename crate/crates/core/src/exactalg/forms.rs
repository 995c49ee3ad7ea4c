use std::sync::Arc;

use super::ambient::Ambient;
use super::linalg;
use super::mono::Mono;
use super::poly::{grlex_cmp, Multidegree, MultiPoly};
use crate::error::{Error, Result};

/// All monomials of the given per-factor degree, in grlex-descending order.
pub fn monomials_of_degree(amb: &Arc<Ambient>, deg: &[u32]) -> Vec<Mono> {
    let mut acc = vec![Mono::one()];
    for (k, &d) in deg.iter().enumerate() {
        let vars: Vec<usize> = amb.factor_vars(k).collect();
        let mut next = Vec::new();
        for m in &acc {
            for e in compositions(d, vars.len()) {
                let mut mm = *m;
                for (i, &v) in vars.iter().enumerate() {
                    mm.0[v] = e[i] as u16;
                }
                next.push(mm);
            }
        }
        acc = next;
    }
    acc.sort_by(|a, b| grlex_cmp(b, a));
    acc
}

fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Canonical basis of the span of `polys`: reduced echelon form with columns in
/// grlex-descending order, each row scaled to a primitive integer polynomial
/// with positive leading coefficient.
pub fn canonical_span(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let Some(first) = polys.first() else { return vec![] };
    let amb = first.ambient().clone();
    let mut monos: Vec<Mono> = polys.iter().flat_map(|p| p.terms().keys().copied()).collect();
    monos.sort_by(|a, b| grlex_cmp(b, a));
    monos.dedup();
    let mut rows: linalg::Matrix = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    let piv = linalg::rref(&mut rows);
    rows.truncate(piv.len());
    rows.iter()
        .map(|r| MultiPoly::from_terms(&amb, monos.iter().copied().zip(r.iter().cloned())).primitive())
        .collect()
}

/// Basis of the multihomogeneous forms of degree `deg` on `target` vanishing
/// along the parametrized curve; `param[k]` lists the components for factor `k`.
pub fn vanishing_forms(target: &Arc<Ambient>, deg: &[u32], param: &[Vec<MultiPoly>]) -> Result<Vec<MultiPoly>> {
    if param.len() != target.nfactors() || deg.len() != target.nfactors() {
        return Err(Error::Shape("parametrization must give one tuple per factor".into()));
    }
    for (k, comps) in param.iter().enumerate() {
        if comps.len() != target.factor_vars(k).len() {
            return Err(Error::Shape(format!("factor {k} needs {} components", target.factor_vars(k).len())));
        }
        if comps.iter().all(MultiPoly::is_zero) {
            return Err(Error::Degenerate(format!("all components of factor {k} vanish")));
        }
        let degs: Vec<Multidegree> =
            comps.iter().filter(|c| !c.is_zero()).map(|c| c.multidegree()).collect();
        if degs.iter().any(|d| *d == Multidegree::NotHomogeneous || *d != degs[0]) {
            return Err(Error::Invalid(format!("components of factor {k} are not homogeneous of one degree")));
        }
    }
    let flat: Vec<&MultiPoly> = param.iter().flatten().collect();
    let src = flat[0].ambient().clone();
    let monos = monomials_of_degree(target, deg);
    let pulled: Vec<MultiPoly> = monos
        .iter()
        .map(|m| {
            let mut t = MultiPoly::one(&src);
            for (v, c) in flat.iter().enumerate() {
                for _ in 0..m.0[v] {
                    t = &t * c;
                }
            }
            t
        })
        .collect();
    let mut rows_m: Vec<Mono> = pulled.iter().flat_map(|p| p.terms().keys().copied()).collect();
    rows_m.sort();
    rows_m.dedup();
    let mat: linalg::Matrix = rows_m.iter().map(|r| pulled.iter().map(|p| p.coeff(r)).collect()).collect();
    let ker = linalg::kernel(&mat, monos.len());
    let polys: Vec<MultiPoly> = ker
        .into_iter()
        .map(|v| MultiPoly::from_terms(target, monos.iter().copied().zip(v)))
        .collect();
    Ok(canonical_span(&polys))
}

/// Pullback of `f` along the parametrization (used to confirm vanishing).
pub fn pullback(f: &MultiPoly, param: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let flat: Vec<Option<MultiPoly>> = param.iter().flatten().cloned().map(Some).collect();
    let src = flat[0].as_ref().unwrap().ambient().clone();
    f.substitute(&flat, &src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_in_plane() {
        let t = Ambient::parse("P2(x0,x1,x2)").unwrap();
        let s = Ambient::parse("P1(u,v)").unwrap();
        let p = |x: &str| MultiPoly::parse(&s, x).unwrap();
        let basis = vanishing_forms(&t, &[1], &[vec![p("u"), p("v"), p("0")]]).unwrap();
        assert_eq!(basis, vec![MultiPoly::parse(&t, "x2").unwrap()]);
    }

    #[test]
    fn degenerate_parametrization() {
        let t = Ambient::parse("P1(x0,x1)").unwrap();
        let s = Ambient::parse("P1(u,v)").unwrap();
        let z = MultiPoly::zero(&s);
        assert!(matches!(vanishing_forms(&t, &[1], &[vec![z.clone(), z]]), Err(Error::Degenerate(_))));
    }

    #[test]
    fn monomial_count() {
        let t = Ambient::parse("P4(x0,x1,x2,x3,x4)").unwrap();
        assert_eq!(monomials_of_degree(&t, &[2]).len(), 15);
    }
}
