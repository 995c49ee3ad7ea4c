use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::exactalg::{jacobian, linalg, Ambient, Multidegree, MultiPoly, Scalar};
use crate::ideals::{Ideal, MonomialOrder};

/// Closed subset of a multi-projective ambient given by multihomogeneous
/// generators (auxiliary variables are ungraded).
#[derive(Clone, Debug)]
pub struct Subvariety {
    ideal: Ideal,
}

/// Outcome of the Jacobian criterion.
#[derive(Clone, Debug)]
pub struct Smoothness {
    pub smooth: bool,
    /// `I(V)` plus the maximal minors; empty in the multi-projective sense iff smooth.
    pub singular_locus: Ideal,
}

impl Subvariety {
    pub fn new(ideal: Ideal) -> Result<Subvariety> {
        for g in ideal.generators() {
            if g.multidegree() == Multidegree::NotHomogeneous {
                return Err(Error::Invalid(format!("generator {g} is not multihomogeneous")));
            }
        }
        Ok(Subvariety { ideal })
    }

    pub fn parse(amb: &Arc<Ambient>, gens: &[&str]) -> Result<Subvariety> {
        Subvariety::new(Ideal::parse(amb, gens)?)
    }

    pub fn whole(amb: &Arc<Ambient>) -> Subvariety {
        Subvariety { ideal: Ideal::zero(amb) }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        self.ideal.ambient()
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.ideal.generators().iter().all(|g| g.eval(p.values()).is_zero())
    }

    /// Equality of subvarieties as equality of saturated ideals.
    pub fn same_as(&self, other: &Subvariety) -> Result<bool> {
        self.ideal.saturate_irrelevant()?.equals(&other.ideal.saturate_irrelevant()?)
    }

    /// Multi-projective dimension, `None` when empty.
    pub fn dimension(&self) -> Result<Option<usize>> {
        self.ideal.projective_dimension()
    }

    /// Jacobian criterion for a subvariety of the declared codimension: the
    /// generators together with all `codim × codim` Jacobian minors cut out
    /// the empty set.
    pub fn is_smooth(&self, codim: usize) -> Result<Smoothness> {
        let amb = self.ambient();
        let dim = self.dimension()?;
        if dim.map(|d| d + codim) != Some(amb.projective_dim()) {
            return Err(Error::Invalid(format!(
                "declared codimension {codim} but dimension is {dim:?} in an ambient of dimension {}",
                amb.projective_dim()
            )));
        }
        let vars: Vec<usize> = (0..amb.nvars()).collect();
        let jac = jacobian(self.ideal.generators(), &vars);
        let minors = all_minors(&jac, codim);
        let sing = self.ideal.add(&minors)?;
        let smooth = sing.is_empty_projective()?;
        Ok(Smoothness { smooth, singular_locus: sing })
    }

    /// Rank of the Jacobian of the generators at a point.
    pub fn jacobian_rank_at(&self, p: &ProjPoint) -> usize {
        let vars: Vec<usize> = (0..self.ambient().nvars()).collect();
        let jac = jacobian(self.ideal.generators(), &vars);
        let m: linalg::Matrix = jac.iter().map(|r| r.iter().map(|f| f.eval(p.values())).collect()).collect();
        linalg::rank(&m)
    }

    /// Random rational points: per factor a random chart coordinate is set to
    /// 1, all but `codim` of the remaining coordinates get small random
    /// integers, and the resulting zero-dimensional system is solved over ℚ.
    /// Attempts with irrational or no solutions are discarded.
    pub fn random_points<R: Rng>(&self, n: usize, codim: usize, rng: &mut R, max_attempts: usize) -> Vec<ProjPoint> {
        let amb = self.ambient().clone();
        let mut out = Vec::new();
        for _ in 0..max_attempts {
            if out.len() >= n {
                break;
            }
            let mut fixed: Vec<Option<Scalar>> = vec![None; amb.nvars()];
            let mut open: Vec<usize> = Vec::new();
            for k in 0..amb.nfactors() {
                let vars: Vec<usize> = amb.factor_vars(k).collect();
                let c = *vars.choose(rng).unwrap();
                fixed[c] = Some(Scalar::one());
                open.extend(vars.into_iter().filter(|&v| v != c));
            }
            open.extend(amb.aux_vars());
            open.shuffle(rng);
            let free: Vec<usize> = open.iter().take(codim).copied().collect();
            for &v in open.iter().skip(codim) {
                fixed[v] = Some(Scalar::int(rng.gen_range(-4..=4)));
            }
            if let Ok(sols) = solve_rational(self.ideal.generators(), &fixed, &free) {
                for s in sols {
                    if let Ok(p) = ProjPoint::new(&amb, s) {
                        if self.contains_point(&p) && !out.contains(&p) {
                            out.push(p);
                            break;
                        }
                    }
                }
            }
        }
        out
    }
}

/// All `k × k` minors of a polynomial matrix (zero minors dropped).
pub fn all_minors(m: &[Vec<MultiPoly>], k: usize) -> Vec<MultiPoly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if k == 0 || k > rows || k > cols {
        return vec![];
    }
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<MultiPoly>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = poly_det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let amb = m[0][0].ambient().clone();
    let mut acc = MultiPoly::zero(&amb);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Rational solutions of `gens` after fixing the variables in `fixed`;
/// the unknowns are `free`. Errors on positive-dimensional systems.
pub(crate) fn solve_rational(gens: &[MultiPoly], fixed: &[Option<Scalar>], free: &[usize]) -> Result<Vec<Vec<Scalar>>> {
    let Some(first) = gens.first() else {
        return if free.is_empty() { Ok(vec![fixed.iter().map(|x| x.clone().unwrap()).collect()]) } else {
            Err(Error::Degenerate("underdetermined system".into()))
        };
    };
    let amb = first.ambient().clone();
    let subs: Vec<Option<MultiPoly>> =
        fixed.iter().map(|x| x.as_ref().map(|c| MultiPoly::constant(&amb, c.clone()))).collect();
    let eqs = gens.iter().map(|g| g.substitute(&subs, &amb)).collect::<Result<Vec<_>>>()?;
    let mut sols = Vec::new();
    solve_rec(&eqs, fixed.to_vec(), free, &mut sols)?;
    Ok(sols)
}

fn solve_rec(eqs: &[MultiPoly], vals: Vec<Option<Scalar>>, free: &[usize], out: &mut Vec<Vec<Scalar>>) -> Result<()> {
    let nonzero: Vec<MultiPoly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    if nonzero.iter().any(|e| e.as_constant().is_some()) {
        return Ok(());
    }
    let Some((&v, rest)) = free.split_last() else {
        if nonzero.is_empty() {
            out.push(vals.into_iter().map(|x| x.unwrap()).collect());
        }
        return Ok(());
    };
    if nonzero.is_empty() {
        return Err(Error::Degenerate("positive-dimensional fibre".into()));
    }
    let amb = nonzero[0].ambient().clone();
    let ideal = Ideal::new(&amb, nonzero.clone())?.with_budget(5_000);
    let gb = ideal.groebner(&MonomialOrder::Lex)?;
    if gb.is_unit() {
        return Ok(());
    }
    let elems = gb.elements();
    let uni = elems.iter().find(|g| g.support() == 1u32 << v).ok_or_else(|| Error::Degenerate("no univariate".into()))?;
    let coeffs: Vec<num_rational::BigRational> = (0..=uni.degree_in(v))
        .map(|e| {
            let mut m = crate::exactalg::Mono::one();
            m.0[v] = e as u16;
            uni.coeff(&m).as_rational().cloned().unwrap_or_default()
        })
        .collect();
    let mut roots = linalg::rational_roots(&coeffs).ok_or_else(|| Error::Degenerate("coefficients too large".into()))?;
    roots.dedup();
    for r in roots {
        let c = Scalar::Rat(r);
        let mut subs: Vec<Option<MultiPoly>> = vec![None; amb.nvars()];
        subs[v] = Some(MultiPoly::constant(&amb, c.clone()));
        let next = elems.iter().map(|g| g.substitute(&subs, &amb)).collect::<Result<Vec<_>>>()?;
        let mut vals2 = vals.clone();
        vals2[v] = Some(c);
        solve_rec(&next, vals2, rest, out)?;
    }
    Ok(())
}
