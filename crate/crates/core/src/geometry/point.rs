use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Ambient, Scalar};

/// A point of a multi-projective ambient, stored as one value per variable.
///
/// Each factor tuple is nonzero; equality is per-factor proportionality and
/// exact equality of auxiliary coordinates.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    amb: Arc<Ambient>,
    values: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(amb: &Arc<Ambient>, values: Vec<Scalar>) -> Result<ProjPoint> {
        if values.len() != amb.nvars() {
            return Err(Error::Shape(format!("{} coordinates given for {} variables", values.len(), amb.nvars())));
        }
        for k in 0..amb.nfactors() {
            if amb.factor_vars(k).all(|v| values[v].is_zero()) {
                return Err(Error::Degenerate(format!("factor {k} tuple is zero")));
            }
        }
        Ok(ProjPoint { amb: amb.clone(), values })
    }

    pub fn from_ints(amb: &Arc<Ambient>, values: &[i64]) -> Result<ProjPoint> {
        ProjPoint::new(amb, values.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn factor(&self, k: usize) -> &[Scalar] {
        &self.values[self.amb.factor_vars(k)]
    }

    pub fn aux(&self) -> &[Scalar] {
        &self.values[self.amb.aux_vars()]
    }

    /// Each factor scaled so that its first nonzero coordinate is 1.
    pub fn normalized(&self) -> ProjPoint {
        let mut v = self.values.clone();
        for k in 0..self.amb.nfactors() {
            let r = self.amb.factor_vars(k);
            let lead = r.clone().map(|i| &self.values[i]).find(|x| !x.is_zero()).unwrap().inv().unwrap();
            for i in r {
                v[i] = &v[i] * &lead;
            }
        }
        ProjPoint { amb: self.amb.clone(), values: v }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &ProjPoint) -> bool {
        if *self.amb != *o.amb {
            return false;
        }
        let prop = (0..self.amb.nfactors()).all(|k| {
            let (a, b) = (self.factor(k), o.factor(k));
            (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
        });
        prop && self.aux() == o.aux()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        let mut parts: Vec<String> = (0..self.amb.nfactors())
            .map(|k| format!("[{}]", n.factor(k).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":")))
            .collect();
        if !self.aux().is_empty() {
            parts.push(format!("({})", self.aux().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
        }
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}
