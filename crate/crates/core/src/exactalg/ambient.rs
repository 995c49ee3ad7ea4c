use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Maximum number of variables (factor variables plus auxiliary ones).
pub const MAX_VARS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub name: String,
    pub vars: Vec<String>,
}

/// A product of projective spaces together with auxiliary affine variables.
///
/// Variables are indexed factor by factor, followed by the auxiliary ones.
/// The grading only sees factor variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    factors: Vec<Factor>,
    aux: Vec<String>,
    gaussian: bool,
    names: Vec<String>,
    /// factor index of each variable, `None` for auxiliary ones
    owner: Vec<Option<usize>>,
    offsets: Vec<usize>,
}

impl Ambient {
    pub fn new(factors: Vec<Factor>, aux: Vec<String>) -> Result<Arc<Ambient>> {
        let mut names = Vec::new();
        let mut owner = Vec::new();
        let mut offsets = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            if f.vars.len() < 2 {
                return Err(Error::Invalid(format!(
                    "factor {} needs at least two variables",
                    f.name
                )));
            }
            offsets.push(names.len());
            for v in &f.vars {
                names.push(v.clone());
                owner.push(Some(k));
            }
        }
        for v in &aux {
            names.push(v.clone());
            owner.push(None);
        }
        if names.len() > MAX_VARS {
            return Err(Error::Invalid(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) || n == "i" {
                return Err(Error::Invalid(format!("bad variable name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Arc::new(Ambient { factors, aux, gaussian: false, names, owner, offsets }))
    }

    /// Product of projective spaces given as `(factor name, variable names)`.
    pub fn product(factors: &[(&str, &[&str])]) -> Result<Arc<Ambient>> {
        Ambient::new(
            factors
                .iter()
                .map(|(n, vs)| Factor { name: n.to_string(), vars: vs.iter().map(|s| s.to_string()).collect() })
                .collect(),
            vec![],
        )
    }

    /// Parses `P2(x0,x1,x2) * P2(y0,y1,y2) * A(u,v)`; `A` blocks are auxiliary.
    pub fn parse(text: &str) -> Result<Arc<Ambient>> {
        let mut factors = Vec::new();
        let mut aux = Vec::new();
        for part in text.split('*') {
            let part = part.trim();
            let open = part.find('(').ok_or_else(|| Error::Parse(format!("missing '(' in '{part}'")))?;
            if !part.ends_with(')') {
                return Err(Error::Parse(format!("missing ')' in '{part}'")));
            }
            let head = part[..open].trim();
            let vars: Vec<String> = part[open + 1..part.len() - 1]
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if let Some(n) = head.strip_prefix('P') {
                let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad factor '{head}'")))?;
                if vars.len() != n + 1 {
                    return Err(Error::Parse(format!("{head} needs {} variables", n + 1)));
                }
                factors.push(Factor { name: head.to_string(), vars });
            } else if head.starts_with('A') {
                aux.extend(vars);
            } else {
                return Err(Error::Parse(format!("unknown factor kind '{head}'")));
            }
        }
        Ambient::new(factors, aux)
    }

    /// Same ambient with the imaginary unit enabled in parsing.
    pub fn gaussian(self: &Arc<Self>) -> Arc<Ambient> {
        let mut a = (**self).clone();
        a.gaussian = true;
        Arc::new(a)
    }

    pub fn is_gaussian(&self) -> bool {
        self.gaussian
    }

    /// Same ambient with extra auxiliary variables appended.
    pub fn with_aux(&self, extra: &[&str]) -> Result<Arc<Ambient>> {
        let mut aux = self.aux.clone();
        aux.extend(extra.iter().map(|s| s.to_string()));
        let a = Ambient::new(self.factors.clone(), aux)?;
        Ok(if self.gaussian { a.gaussian() } else { a })
    }

    /// A variable name not used in this ambient, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut k = 0;
        loop {
            let n = if k == 0 { base.to_string() } else { format!("{base}{k}") };
            if !self.names.contains(&n) {
                return n;
            }
            k += 1;
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn nfactors(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn aux_names(&self) -> &[String] {
        &self.aux
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::Invalid(format!("unknown variable '{name}'")))
    }

    /// Variable indices of factor `k`.
    pub fn factor_vars(&self, k: usize) -> std::ops::Range<usize> {
        let o = self.offsets[k];
        o..o + self.factors[k].vars.len()
    }

    /// Indices of auxiliary variables.
    pub fn aux_vars(&self) -> std::ops::Range<usize> {
        let n = self.names.len();
        n - self.aux.len()..n
    }

    pub fn owner(&self, v: usize) -> Option<usize> {
        self.owner[v]
    }

    /// Sum of projective dimensions.
    pub fn projective_dim(&self) -> usize {
        self.factors.iter().map(|f| f.vars.len() - 1).sum::<usize>() + self.aux.len()
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.factors.iter().map(|x| format!("{}({})", x.name, x.vars.join(","))).collect();
        if !self.aux.is_empty() {
            parts.push(format!("A({})", self.aux.join(",")));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

pub(crate) fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_product() {
        let a = Ambient::parse("P2(x0,x1,x2) * P2(y0,y1,y2)").unwrap();
        assert_eq!(a.nvars(), 6);
        assert_eq!(a.factor_vars(1), 3..6);
        assert_eq!(a.to_string(), "P2(x0,x1,x2) * P2(y0,y1,y2)");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Ambient::parse("P1(x,y) * P1(x,z)").is_err());
    }

    #[test]
    fn aux_block() {
        let a = Ambient::parse("P1(u,v) * A(r,s,t)").unwrap();
        assert_eq!(a.aux_vars(), 2..5);
        assert_eq!(a.owner(3), None);
    }
}
