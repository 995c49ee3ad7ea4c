//! Table of the nine symmetric smooth Fano threefolds of Picard rank ≥ 2,
//! with constructions detailed enough to recompute `−K³`.

use serde::{Deserialize, Serialize};

use crate::chow::{
    blowup_anticanonical_cube, double_cover_anticanonical_cube, hypersurface_anticanonical_cube, BlowupCurveData, Branch,
    ChowRing,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    /// `ℙ^{d₁}×⋯×ℙ^{d_m}`.
    Product { dims: Vec<u32> },
    /// A smooth hypersurface of multidegree `class` in a product of projective spaces.
    Hypersurface { dims: Vec<u32>, class: Vec<i64> },
    /// Blow-up of `base` along a smooth curve with the given degrees against
    /// the hyperplane classes of the base's ambient.
    BlowUp { base: Box<Construction>, curve_degrees: Vec<i64>, genus: i64 },
    /// Double cover of `base` branched along a member of `|−K_base|`.
    DoubleCover { base: Box<Construction> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AutClass {
    Trivial,
    TorusOrAdditivePossible,
    #[serde(rename = "PGL2-possible")]
    Pgl2Possible,
    #[serde(rename = "PGL3")]
    Pgl3,
    #[serde(rename = "PGL2^3")]
    Pgl2Cubed,
}

impl AutClass {
    pub fn is_trivial(self) -> bool {
        self == AutClass::Trivial
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanoEntry {
    pub id: String,
    pub mori_mukai: String,
    pub rho: u32,
    pub minus_k_cubed: i64,
    pub description: String,
    pub construction: Construction,
    /// Stored conclusion; not recomputed.
    pub aut_class: AutClass,
}

impl Construction {
    /// `−K` of a product or hypersurface as coefficients on the ambient hyperplane classes.
    fn anticanonical_coeffs(&self) -> Result<Vec<i64>> {
        match self {
            Construction::Product { dims } => Ok(dims.iter().map(|&d| d as i64 + 1).collect()),
            Construction::Hypersurface { dims, class } => {
                if class.len() != dims.len() {
                    return Err(Error::Shape(format!("class {class:?} for ambient {dims:?}")));
                }
                Ok(dims.iter().zip(class).map(|(&d, c)| d as i64 + 1 - c).collect())
            }
            _ => Err(Error::Invalid("curve degrees are only defined on a product or hypersurface base".into())),
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Construction::Product { dims } => dims.iter().sum(),
            Construction::Hypersurface { dims, .. } => dims.iter().sum::<u32>() - 1,
            Construction::BlowUp { base, .. } | Construction::DoubleCover { base } => base.dimension(),
        }
    }

    /// `(−K)^{dim}` through the Chow ring of the ambient and the blow-up and
    /// double-cover formulas.
    pub fn anticanonical_cube(&self) -> Result<i64> {
        match self {
            Construction::Product { dims } => {
                let r = ChowRing::new(dims);
                Ok(r.anticanonical().pow(r.dimension()).degree())
            }
            Construction::Hypersurface { dims, class } => {
                self.anticanonical_coeffs()?;
                let r = ChowRing::new(dims);
                Ok(hypersurface_anticanonical_cube(&r, &r.divisor(class)))
            }
            Construction::BlowUp { base, curve_degrees, genus } => {
                if base.dimension() != 3 {
                    return Err(Error::Invalid("curve blow-up formula needs a threefold".into()));
                }
                let k = base.anticanonical_coeffs()?;
                if k.len() != curve_degrees.len() {
                    return Err(Error::Shape(format!("{} curve degrees for {} hyperplane classes", curve_degrees.len(), k.len())));
                }
                let minus_k_dot_c = k.iter().zip(curve_degrees).map(|(a, b)| a * b).sum();
                blowup_anticanonical_cube(&BlowupCurveData { base_cube: base.anticanonical_cube()?, minus_k_dot_c, genus: *genus })
            }
            Construction::DoubleCover { base } => double_cover_anticanonical_cube(base.anticanonical_cube()?, Branch::Anticanonical),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub expected: i64,
    pub recomputed: i64,
}

impl EntryReport {
    pub fn matches(&self) -> bool {
        self.expected == self.recomputed
    }
}

pub fn verify_entry(e: &FanoEntry) -> Result<EntryReport> {
    Ok(EntryReport { id: e.id.clone(), expected: e.minus_k_cubed, recomputed: e.construction.anticanonical_cube()? })
}

/// Conjunction of optional field constraints; the default matches everything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Filter {
    pub id: Option<String>,
    pub rho: Option<u32>,
    pub minus_k_cubed: Option<i64>,
    pub aut_class: Option<AutClass>,
    pub nontrivial_aut: Option<bool>,
}

impl Filter {
    pub fn matches(&self, e: &FanoEntry) -> bool {
        self.id.as_ref().is_none_or(|x| *x == e.id)
            && self.rho.is_none_or(|x| x == e.rho)
            && self.minus_k_cubed.is_none_or(|x| x == e.minus_k_cubed)
            && self.aut_class.is_none_or(|x| x == e.aut_class)
            && self.nontrivial_aut.is_none_or(|x| x != e.aut_class.is_trivial())
    }
}

fn product(dims: &[u32]) -> Construction {
    Construction::Product { dims: dims.to_vec() }
}

fn hypersurface(dims: &[u32], class: &[i64]) -> Construction {
    Construction::Hypersurface { dims: dims.to_vec(), class: class.to_vec() }
}

fn entry(id: &str, mm: &str, rho: u32, k3: i64, description: &str, construction: Construction, aut_class: AutClass) -> FanoEntry {
    FanoEntry {
        id: id.into(),
        mori_mukai: mm.into(),
        rho,
        minus_k_cubed: k3,
        description: description.into(),
        construction,
        aut_class,
    }
}

/// The nine rows in table order.
pub fn entries() -> Vec<FanoEntry> {
    use AutClass::*;
    let w = || hypersurface(&[2, 2], &[1, 1]);
    vec![
        entry("1a", "6a", 2, 12, "(2,2) divisor in P2 x P2", hypersurface(&[2, 2], &[2, 2]), Trivial),
        entry(
            "1b",
            "6b",
            2,
            12,
            "double cover of a smooth (1,1) divisor W in P2 x P2 branched in |-K_W|",
            Construction::DoubleCover { base: Box::new(w()) },
            Trivial,
        ),
        entry(
            "2",
            "12",
            2,
            20,
            "blow-up of P3 along a degree 6 genus 3 curve cut out by cubics",
            Construction::BlowUp { base: Box::new(product(&[3])), curve_degrees: vec![6], genus: 3 },
            Trivial,
        ),
        entry(
            "3",
            "28",
            2,
            28,
            "blow-up of a smooth quadric in P4 along a rational normal quartic",
            Construction::BlowUp { base: Box::new(hypersurface(&[4], &[2])), curve_degrees: vec![4], genus: 0 },
            Pgl2Possible,
        ),
        entry("4", "32", 2, 48, "(1,1) divisor in P2 x P2", w(), Pgl3),
        entry(
            "5",
            "1",
            3,
            12,
            "double cover of P1 x P1 x P1 branched in |-K|",
            Construction::DoubleCover { base: Box::new(product(&[1, 1, 1])) },
            Trivial,
        ),
        entry(
            "6",
            "13",
            3,
            30,
            "blow-up of a smooth (1,1) divisor W in P2 x P2 along a (2,2) curve embedded by both projections",
            Construction::BlowUp { base: Box::new(w()), curve_degrees: vec![2, 2], genus: 0 },
            Pgl2Possible,
        ),
        entry("7", "27", 3, 48, "P1 x P1 x P1", product(&[1, 1, 1]), Pgl2Cubed),
        entry("8", "1", 4, 24, "smooth (1,1,1,1) divisor in (P1)^4", hypersurface(&[1, 1, 1, 1], &[1, 1, 1, 1]), Trivial),
    ]
}

/// Matching entries in table order.
pub fn query(filter: &Filter) -> Vec<FanoEntry> {
    entries().into_iter().filter(|e| filter.matches(e)).collect()
}

#[derive(Serialize)]
struct Export<'a> {
    entry: &'a [FanoEntry],
}

/// TOML rendering, one `[[entry]]` table per row.
pub fn export_toml(entries: &[FanoEntry]) -> String {
    toml::to_string(&Export { entry: entries }).expect("catalog entries serialize")
}

pub fn export_json(entries: &[FanoEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("catalog entries serialize")
}

#[derive(Deserialize)]
struct Import {
    entry: Vec<FanoEntry>,
}

pub fn import_toml(text: &str) -> Result<Vec<FanoEntry>> {
    toml::from_str::<Import>(text).map(|i| i.entry).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_recomputes() {
        for e in entries() {
            let r = verify_entry(&e).unwrap();
            assert!(r.matches(), "{r:?}");
        }
    }

    #[test]
    fn filters() {
        let ids = |f: Filter| query(&f).into_iter().map(|e| e.id).collect::<Vec<_>>();
        assert_eq!(ids(Filter { aut_class: Some(AutClass::Pgl2Possible), ..Default::default() }), ["3", "6"]);
        assert_eq!(ids(Filter { rho: Some(4), ..Default::default() }), ["8"]);
        assert_eq!(ids(Filter::default()).len(), 9);
        assert_eq!(ids(Filter { nontrivial_aut: Some(true), ..Default::default() }), ["3", "4", "6", "7"]);
    }

    #[test]
    fn export_round_trip() {
        let all = entries();
        assert_eq!(import_toml(&export_toml(&all)).unwrap(), all);
    }

    #[test]
    fn insufficient_data() {
        let bad = Construction::BlowUp {
            base: Box::new(Construction::DoubleCover { base: Box::new(product(&[1, 1, 1])) }),
            curve_degrees: vec![1],
            genus: 0,
        };
        assert!(bad.anticanonical_cube().is_err());
        let short = Construction::BlowUp { base: Box::new(product(&[1, 1, 1])), curve_degrees: vec![1], genus: 0 };
        assert!(matches!(short.anticanonical_cube(), Err(Error::Shape(_))));
    }
}
