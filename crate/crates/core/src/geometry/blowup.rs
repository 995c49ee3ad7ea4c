use std::sync::Arc;

use super::map::RationalMap;
use crate::error::{Error, Result};
use crate::exactalg::{Ambient, Factor, MultiPoly};
use crate::ideals::Ideal;

/// One chart of the blow-up of a coordinate-defined center.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    /// Source factors, then the new `ℙ^{k−1}`, then the source auxiliary variables.
    pub ambient: Arc<Ambient>,
    /// Incidence relations `x_i v_j − x_j v_i`.
    pub ideal: Ideal,
    /// Projection back to the source, restricted to `ideal`.
    pub projection: RationalMap,
    /// Incidence plus the pulled-back center.
    pub exceptional: Ideal,
}

/// Blow-up of `{x_{i_1} = ⋯ = x_{i_k} = 0}` where the `x` are auxiliary
/// (chart) coordinates of the source. `new_vars` names the coordinates of the
/// new `ℙ^{k−1}` factor.
pub fn blowup_chart(center: &Ideal, new_vars: &[&str]) -> Result<BlowupChart> {
    let src = center.ambient().clone();
    if center.is_unit()? {
        return Ok(BlowupChart {
            ambient: src.clone(),
            ideal: Ideal::zero(&src),
            projection: RationalMap::identity(&src),
            exceptional: Ideal::unit(&src),
        });
    }
    let mut cvars = Vec::new();
    for g in center.groebner_basis()?.elements() {
        let s = g.support();
        let single = g.nterms() == 1 && s.count_ones() == 1 && g.total_degree() == Some(1);
        if !single {
            return Err(Error::Invalid(format!("center is not coordinate-defined: {g}")));
        }
        let v = s.trailing_zeros() as usize;
        if src.owner(v).is_some() {
            return Err(Error::Invalid(format!("center coordinate {} is not a chart coordinate", src.name(v))));
        }
        cvars.push(v);
    }
    cvars.sort_unstable();
    if cvars.len() < 2 {
        return Err(Error::Invalid("blowing up a divisor does nothing; center needs codimension ≥ 2".into()));
    }
    if new_vars.len() != cvars.len() {
        return Err(Error::Shape(format!("{} new coordinates for a center of codimension {}", new_vars.len(), cvars.len())));
    }
    let mut factors: Vec<Factor> = src.factors().to_vec();
    factors.push(Factor {
        name: format!("P{}", cvars.len() - 1),
        vars: new_vars.iter().map(|s| s.to_string()).collect(),
    });
    let amb = Ambient::new(factors, src.aux_names().to_vec())?;
    let amb = if src.is_gaussian() { amb.gaussian() } else { amb };
    let xs: Vec<MultiPoly> = cvars.iter().map(|&v| MultiPoly::var(&amb, amb.var_index(src.name(v)).unwrap())).collect();
    let vs: Vec<MultiPoly> = new_vars.iter().map(|n| MultiPoly::named(&amb, n)).collect::<Result<_>>()?;
    let mut inc = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            inc.push((&xs[i] * &vs[j]).checked_sub(&(&xs[j] * &vs[i]))?);
        }
    }
    let ideal = Ideal::new(&amb, inc)?.with_budget(center.budget());
    let comps = (0..src.nfactors())
        .map(|k| src.factor_vars(k).map(|v| MultiPoly::named(&amb, src.name(v))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let aux = src.aux_vars().map(|v| MultiPoly::named(&amb, src.name(v))).collect::<Result<Vec<_>>>()?;
    let projection = RationalMap::new(&amb, &src, comps, aux)?.restricted(&ideal)?;
    let exceptional = ideal.sum(&center.embed(&amb)?)?;
    Ok(BlowupChart { ambient: amb, ideal, projection, exceptional })
}
