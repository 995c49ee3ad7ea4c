//! Shorthands shared by scenario bodies.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::exactalg::{Ambient, MultiPoly};
use crate::geometry::{ProjPoint, RationalMap, Subvariety};
use crate::ideals::Ideal;

pub type Outcome = Result<(bool, String)>;

pub fn amb(s: &str) -> Result<Arc<Ambient>> {
    Ambient::parse(s)
}

pub fn poly(a: &Arc<Ambient>, s: &str) -> Result<MultiPoly> {
    MultiPoly::parse(a, s)
}

pub fn polys(a: &Arc<Ambient>, ss: &[&str]) -> Result<Vec<MultiPoly>> {
    ss.iter().map(|s| MultiPoly::parse(a, s)).collect()
}

pub fn ideal(a: &Arc<Ambient>, ss: &[&str]) -> Result<Ideal> {
    Ideal::parse(a, ss)
}

pub fn variety(a: &Arc<Ambient>, ss: &[&str]) -> Result<Subvariety> {
    Subvariety::parse(a, ss)
}

pub fn map(src: &Arc<Ambient>, tgt: &Arc<Ambient>, comps: &[&str]) -> Result<RationalMap> {
    RationalMap::parse(src, tgt, comps)
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// `(verdict, detail)` in the shape a check returns.
pub fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((ok, detail.into()))
}

/// Integer point with coordinates in `[−r, r]`, no factor identically zero.
pub fn random_point<R: Rng>(a: &Arc<Ambient>, r: i64, rng: &mut R) -> ProjPoint {
    loop {
        let vals: Vec<i64> = (0..a.nvars()).map(|_| rng.gen_range(-r..=r)).collect();
        if let Ok(p) = ProjPoint::from_ints(a, &vals) {
            return p;
        }
    }
}

/// `f` and `g` differ by a nonzero constant factor.
pub fn proportional(f: &MultiPoly, g: &MultiPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return f.is_zero() && g.is_zero();
    }
    let (m, c) = f.terms().iter().next().expect("nonzero");
    let d = g.coeff(m);
    if d.is_zero() {
        return false;
    }
    f.scale(&d) == g.scale(c)
}
