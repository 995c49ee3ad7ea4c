use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};

type Vector = Vec<BigRational>;

/// Numerical divisor and curve classes on a tower of blow-ups of a smooth
/// threefold.
///
/// Classes are vectors in the basis of total transforms: the base divisors
/// and every exceptional divisor (pulled back), against the base curves and
/// every exceptional fibre (lifted with zero intersection against later
/// exceptional divisors). The pairing is then block diagonal: the declared
/// base table, and `E·f = −1` for each exceptional divisor and its fibre.
/// Named classes (strict transforms, sections, aliases) are derived from
/// declared multiplicities, incidences and the canonical class.
#[derive(Clone, Debug)]
pub struct ClassLattice {
    name: String,
    description: String,
    ndiv: usize,
    ncurve: usize,
    /// `(divisor index, curve index) → value`
    pairing: BTreeMap<(usize, usize), BigRational>,
    declared: Vec<(String, String)>,
    levels: Vec<Level>,
    tables: Vec<TableSpec>,
    certificates: Vec<CertSpec>,
}

#[derive(Clone, Debug)]
struct Level {
    name: String,
    divisors: BTreeMap<String, Vector>,
    curves: BTreeMap<String, Vector>,
    canonical: Vector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Spec {
    name: String,
    #[serde(default)]
    description: String,
    base: BaseSpec,
    #[serde(default)]
    blowup: Vec<BlowupSpec>,
    #[serde(default)]
    table: Vec<TableSpec>,
    #[serde(default)]
    certificate: Vec<CertSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseSpec {
    name: String,
    divisors: Vec<String>,
    curves: Vec<String>,
    canonical: String,
    pairing: Vec<PairSpec>,
    #[serde(default)]
    aliases: Vec<AliasSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairSpec {
    divisor: String,
    curve: String,
    value: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlowupSpec {
    name: String,
    center: Vec<CenterSpec>,
    #[serde(default)]
    divisors: Vec<StrictSpec>,
    #[serde(default)]
    curves: Vec<StrictSpec>,
    #[serde(default)]
    sections: Vec<SectionSpec>,
    #[serde(default)]
    aliases: Vec<AliasSpec>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CenterSpec {
    Point { divisor: String, fibre: String },
    Curve { curve: String, genus: i64, divisor: String, fibre: String },
}

/// Strict transform of `of`: for divisors, subtract `mult · E` for each
/// exceptional `E` whose center it contains with that multiplicity; for
/// curves, subtract `m · f` for each exceptional `E` it meets in `m` points.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StrictSpec {
    name: String,
    of: String,
    #[serde(default, alias = "meets")]
    through: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionSpec {
    name: String,
    over: String,
    self_intersection: i64,
}

#[derive(Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct AliasSpec {
    name: String,
    kind: String,
    expr: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableSpec {
    name: String,
    level: String,
    #[serde(default)]
    indices: Vec<String>,
    rows_are: String,
    rows: Vec<String>,
    columns: Vec<String>,
    values: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertSpec {
    name: String,
    level: String,
    divisor: String,
    cone: Vec<String>,
    expected: Vec<i64>,
    #[serde(default)]
    identities: Vec<[String; 2]>,
    #[serde(default)]
    effective: Vec<String>,
}

/// One expected intersection number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub divisor: String,
    pub curve: String,
    pub expected: i64,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub entries: Vec<(TableEntry, Result<i64>)>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(e, r)| r.as_ref().is_ok_and(|v| *v == e.expected))
    }

    pub fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|(e, r)| !r.as_ref().is_ok_and(|v| *v == e.expected))
            .map(|(e, r)| format!("{}·{}: expected {}, got {:?}", e.divisor, e.curve, e.expected, r))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub name: String,
    /// `D·c` for each cone generator.
    pub values: Vec<(String, i64)>,
    pub expected: Vec<i64>,
    /// Each identity `lhs = rhs` and whether it holds in the lattice.
    pub identities: Vec<(String, String, bool)>,
    /// Each claimed effective class and whether it is a nonnegative
    /// combination of named divisors.
    pub effective: Vec<(String, bool)>,
}

impl CertificateReport {
    pub fn nef(&self) -> bool {
        self.values.iter().all(|(_, v)| *v >= 0)
    }

    pub fn matches_expected(&self) -> bool {
        self.values.iter().map(|(_, v)| *v).eq(self.expected.iter().copied())
    }

    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|x| x.2) && self.effective.iter().all(|x| x.1)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn zero_vec(n: usize) -> Vector {
    vec![BigRational::zero(); n]
}

fn axpy(acc: &mut Vector, a: &BigRational, x: &Vector) {
    for (y, v) in acc.iter_mut().zip(x) {
        *y += a * v;
    }
}

fn parse_coeff(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n.parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Splits `3/2*H1 - E1@F + x` into `(coefficient, name)` terms.
fn parse_terms(expr: &str) -> Result<Vec<(BigRational, String)>> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty class expression".into()));
    }
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            let t = &s[start..i];
            start = i;
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, &t[1..]),
                b'+' => (false, &t[1..]),
                _ => (false, t),
            };
            let (c, name) = match body.split_once('*') {
                Some((c, n)) => (parse_coeff(c)?, n),
                None => (BigRational::one(), body),
            };
            if name.is_empty() || !name.chars().all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '@') {
                return Err(Error::Parse(format!("bad term '{t}' in '{expr}'")));
            }
            out.push((if neg { -c } else { c }, name.to_string()));
        }
    }
    Ok(out)
}

fn substitute_indices(template: &str, names: &[String], values: &[usize]) -> String {
    let mut s = template.to_string();
    for (n, v) in names.iter().zip(values) {
        s = s.replace(&format!("{{{n}}}"), &v.to_string());
    }
    s
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl ClassLattice {
    pub fn from_toml(text: &str) -> Result<ClassLattice> {
        let spec: Spec = toml::from_str(text).map_err(|e| Error::Parse(format!("lattice declaration: {e}")))?;
        ClassLattice::build(spec)
    }

    /// Lattices shipped with the crate: `p1cubed-point`, `ptp2-point`.
    pub fn builtin(name: &str) -> Option<ClassLattice> {
        let text = match name {
            "p1cubed-point" => include_str!("../../data/p1cubed_point.toml"),
            "ptp2-point" => include_str!("../../data/ptp2_point.toml"),
            _ => return None,
        };
        Some(ClassLattice::from_toml(text).expect("shipped lattice declarations parse"))
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["p1cubed-point", "ptp2-point"]
    }

    fn build(spec: Spec) -> Result<ClassLattice> {
        let mut div_names = spec.base.divisors.clone();
        let mut curve_names = spec.base.curves.clone();
        for b in &spec.blowup {
            for c in &b.center {
                let (d, f) = match c {
                    CenterSpec::Point { divisor, fibre } | CenterSpec::Curve { divisor, fibre, .. } => (divisor, fibre),
                };
                div_names.push(d.clone());
                curve_names.push(f.clone());
            }
        }
        let (nd, nc) = (div_names.len(), curve_names.len());
        let unit = |i: usize, n: usize| {
            let mut v = zero_vec(n);
            v[i] = BigRational::one();
            v
        };
        let mut pairing = BTreeMap::new();
        let mut declared = Vec::new();
        for p in &spec.base.pairing {
            let d = spec.base.divisors.iter().position(|x| *x == p.divisor);
            let c = spec.base.curves.iter().position(|x| *x == p.curve);
            let (Some(d), Some(c)) = (d, c) else {
                return Err(Error::MissingRule(format!("base pairing {}·{}", p.divisor, p.curve)));
            };
            pairing.insert((d, c), rat(p.value));
            declared.push((p.divisor.clone(), p.curve.clone()));
        }
        let mut base = Level {
            name: spec.base.name.clone(),
            divisors: spec.base.divisors.iter().enumerate().map(|(i, n)| (n.clone(), unit(i, nd))).collect(),
            curves: spec.base.curves.iter().enumerate().map(|(i, n)| (n.clone(), unit(i, nc))).collect(),
            canonical: zero_vec(nd),
        };
        base.canonical = base.resolve(&spec.base.canonical, true, &[])?;
        let mut lat = ClassLattice {
            name: spec.name,
            description: spec.description,
            ndiv: nd,
            ncurve: nc,
            pairing,
            declared,
            levels: vec![],
            tables: spec.table,
            certificates: spec.certificate,
        };
        base.add_aliases(&spec.base.aliases, &[])?;
        lat.levels.push(base);
        let mut next_exc = spec.base.divisors.len();
        let mut next_fib = spec.base.curves.len();
        for b in &spec.blowup {
            let prev = lat.levels.last().unwrap().clone();
            let mut lvl = Level { name: b.name.clone(), ..prev.clone() };
            // fibre of each exceptional divisor, and its center curve if any
            let mut fibres: BTreeMap<String, (Vector, Option<(Vector, i64)>)> = BTreeMap::new();
            for c in &b.center {
                let e = unit(next_exc, nd);
                let f = unit(next_fib, nc);
                next_exc += 1;
                next_fib += 1;
                pairing_insert(&mut lat.pairing, &e, &f);
                let (codim, d, fname, curve) = match c {
                    CenterSpec::Point { divisor, fibre } => (3, divisor, fibre, None),
                    CenterSpec::Curve { curve, genus, divisor, fibre } => {
                        (2, divisor, fibre, Some((prev.curve(curve)?, *genus)))
                    }
                };
                axpy(&mut lvl.canonical, &rat(codim - 1), &e);
                lvl.divisors.insert(d.clone(), e);
                lvl.curves.insert(fname.clone(), f.clone());
                fibres.insert(d.clone(), (f, curve));
            }
            for s in &b.divisors {
                let mut v = prev.divisor(&s.of)?;
                for (e, m) in &s.through {
                    let ev = lvl.divisors.get(e).filter(|_| fibres.contains_key(e));
                    let ev = ev.ok_or_else(|| Error::MissingRule(format!("{e} is not exceptional for {}", b.name)))?;
                    axpy(&mut v, &rat(-m), &ev.clone());
                }
                lvl.divisors.insert(s.name.clone(), v);
            }
            for s in &b.curves {
                let mut v = prev.curve(&s.of)?;
                for (e, m) in &s.through {
                    let (f, _) = fibres.get(e).ok_or_else(|| Error::MissingRule(format!("{e} is not exceptional for {}", b.name)))?;
                    axpy(&mut v, &rat(-m), f);
                }
                lvl.curves.insert(s.name.clone(), v);
            }
            for s in &b.sections {
                let (f, center) = fibres.get(&s.over).ok_or_else(|| Error::MissingRule(format!("{} is not exceptional", s.over)))?;
                let (c, g) = center.as_ref().ok_or_else(|| Error::MissingRule(format!("{} lies over a point", s.over)))?;
                // deg N_C = −K·C + 2g − 2; a section of self-intersection σ has E·s = (deg N − σ)/2
                let deg_n = -lat.raw_pair(&prev.canonical, c) + rat(2 * g - 2);
                let a = (rat(s.self_intersection) - deg_n) / rat(2);
                if !a.is_integer() {
                    return Err(Error::NonIntegral(format!("section {} of {}", s.name, s.over)));
                }
                let mut v = c.clone();
                axpy(&mut v, &a, f);
                lvl.curves.insert(s.name.clone(), v);
            }
            let earlier: Vec<Level> = lat.levels.clone();
            lvl.add_aliases(&b.aliases, &earlier)?;
            lat.levels.push(lvl);
        }
        Ok(lat)
    }

    fn raw_pair(&self, d: &Vector, c: &Vector) -> BigRational {
        self.pairing.iter().fold(BigRational::zero(), |acc, ((i, j), v)| acc + &d[*i] * &c[*j] * v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn level_names(&self) -> Vec<&str> {
        self.levels.iter().map(|l| l.name.as_str()).collect()
    }

    /// Base intersection numbers taken as input.
    pub fn declared_pairings(&self) -> &[(String, String)] {
        &self.declared
    }

    pub fn rank(&self) -> (usize, usize) {
        (self.ndiv, self.ncurve)
    }

    fn level(&self, name: &str) -> Result<(usize, &Level)> {
        self.levels
            .iter()
            .enumerate()
            .find(|(_, l)| l.name == name)
            .ok_or_else(|| Error::MissingRule(format!("no level '{name}' in lattice {}", self.name)))
    }

    pub fn divisor(&self, level: &str, expr: &str) -> Result<Vec<BigRational>> {
        let (i, l) = self.level(level)?;
        l.resolve(expr, true, &self.levels[..i])
    }

    pub fn curve(&self, level: &str, expr: &str) -> Result<Vec<BigRational>> {
        let (i, l) = self.level(level)?;
        l.resolve(expr, false, &self.levels[..i])
    }

    /// `D·c` on the given level.
    pub fn pair(&self, level: &str, d: &str, c: &str) -> Result<BigRational> {
        Ok(self.raw_pair(&self.divisor(level, d)?, &self.curve(level, c)?))
    }

    /// Integral pairing; fails on a non-integer value.
    pub fn pair_int(&self, level: &str, d: &str, c: &str) -> Result<i64> {
        let v = self.pair(level, d, c)?;
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("{d}·{c} = {v}")));
        }
        i64::try_from(v.to_integer()).map_err(|_| Error::NonIntegral(format!("{d}·{c} overflows")))
    }

    /// Numerical equality of two divisor classes.
    pub fn divisors_equal(&self, level: &str, a: &str, b: &str) -> Result<bool> {
        Ok(self.divisor(level, a)? == self.divisor(level, b)?)
    }

    pub fn verify_table(&self, level: &str, entries: &[TableEntry]) -> TableReport {
        TableReport { entries: entries.iter().map(|e| (e.clone(), self.pair_int(level, &e.divisor, &e.curve))).collect() }
    }

    /// Names of the declared tables.
    pub fn table_names(&self) -> Vec<&str> {
        self.tables.iter().map(|t| t.name.as_str()).collect()
    }

    /// A declared table expanded over all assignments of distinct values to
    /// its indices. Returns the level and the entries.
    pub fn table(&self, name: &str) -> Result<(String, Vec<TableEntry>)> {
        let t = self.tables.iter().find(|t| t.name == name).ok_or_else(|| Error::MissingRule(format!("no table '{name}'")))?;
        if t.values.len() != t.rows.len() || t.values.iter().any(|r| r.len() != t.columns.len()) {
            return Err(Error::Shape(format!("table {name} has inconsistent dimensions")));
        }
        let by_curve = match t.rows_are.as_str() {
            "curves" => true,
            "divisors" => false,
            other => return Err(Error::Parse(format!("rows_are must be curves or divisors, got {other}"))),
        };
        let mut out = Vec::new();
        for perm in permutations(t.indices.len()) {
            for (r, row) in t.rows.iter().enumerate() {
                for (c, col) in t.columns.iter().enumerate() {
                    let (rn, cn) = (substitute_indices(row, &t.indices, &perm), substitute_indices(col, &t.indices, &perm));
                    let (divisor, curve) = if by_curve { (cn, rn) } else { (rn, cn) };
                    let e = TableEntry { divisor, curve, expected: t.values[r][c] };
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
        }
        Ok((t.level.clone(), out))
    }

    pub fn certificate_names(&self) -> Vec<&str> {
        self.certificates.iter().map(|c| c.name.as_str()).collect()
    }

    /// Nef values against the cone generators plus the bigness identities.
    pub fn certificate(&self, name: &str) -> Result<CertificateReport> {
        let c = self
            .certificates
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::MissingRule(format!("no certificate '{name}'")))?;
        self.nef_big_certificate(&c.level, &c.name, &c.divisor, &c.cone, &c.expected, &c.identities, &c.effective)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn nef_big_certificate(
        &self,
        level: &str,
        name: &str,
        divisor: &str,
        cone: &[String],
        expected: &[i64],
        identities: &[[String; 2]],
        effective: &[String],
    ) -> Result<CertificateReport> {
        let values = cone.iter().map(|g| Ok((g.clone(), self.pair_int(level, divisor, g)?))).collect::<Result<Vec<_>>>()?;
        let (li, l) = self.level(level)?;
        let mut ids = Vec::new();
        for [a, b] in identities {
            let same = self.divisor_with_d(level, a, divisor)? == self.divisor_with_d(level, b, divisor)?;
            ids.push((a.clone(), b.clone(), same));
        }
        let mut eff = Vec::new();
        for e in effective {
            let terms = parse_terms(e)?;
            let ok = terms.iter().all(|(c, n)| !c.is_negative() && !n.contains('@') && n != "K" && l.divisors.contains_key(n));
            l.resolve(e, true, &self.levels[..li])?;
            eff.push((e.clone(), ok));
        }
        Ok(CertificateReport { name: name.to_string(), values, expected: expected.to_vec(), identities: ids, effective: eff })
    }

    /// Divisor expression in which the bare name `D` stands for `divisor`.
    fn divisor_with_d(&self, level: &str, expr: &str, divisor: &str) -> Result<Vector> {
        let (li, l) = self.level(level)?;
        let mut acc = zero_vec(self.ndiv);
        for (c, n) in parse_terms(expr)? {
            let v = if n == "D" { self.divisor(level, divisor)? } else { l.resolve(&n, true, &self.levels[..li])? };
            axpy(&mut acc, &c, &v);
        }
        Ok(acc)
    }
}

fn pairing_insert(p: &mut BTreeMap<(usize, usize), BigRational>, e: &Vector, f: &Vector) {
    let i = e.iter().position(|x| !x.is_zero()).unwrap();
    let j = f.iter().position(|x| !x.is_zero()).unwrap();
    p.insert((i, j), rat(-1));
}

impl Level {
    fn divisor(&self, n: &str) -> Result<Vector> {
        if n == "K" {
            return Ok(self.canonical.clone());
        }
        self.divisors.get(n).cloned().ok_or_else(|| Error::MissingRule(format!("no divisor '{n}' on {}", self.name)))
    }

    fn curve(&self, n: &str) -> Result<Vector> {
        self.curves.get(n).cloned().ok_or_else(|| Error::MissingRule(format!("no curve '{n}' on {}", self.name)))
    }

    /// Evaluates a linear combination; `X@L` is the total transform (or lift)
    /// of `X` from the earlier level `L`.
    fn resolve(&self, expr: &str, divisor: bool, earlier: &[Level]) -> Result<Vector> {
        let mut acc: Option<Vector> = None;
        for (c, n) in parse_terms(expr)? {
            let v = match n.split_once('@') {
                Some((x, lv)) => {
                    let l = earlier
                        .iter()
                        .chain(std::iter::once(self))
                        .find(|l| l.name == lv)
                        .ok_or_else(|| Error::MissingRule(format!("no earlier level '{lv}'")))?;
                    if divisor { l.divisor(x)? } else { l.curve(x)? }
                }
                None => {
                    if divisor {
                        self.divisor(&n)?
                    } else {
                        self.curve(&n)?
                    }
                }
            };
            match acc.as_mut() {
                None => {
                    let mut z = vec![BigRational::zero(); v.len()];
                    axpy(&mut z, &c, &v);
                    acc = Some(z);
                }
                Some(a) => axpy(a, &c, &v),
            }
        }
        Ok(acc.unwrap())
    }

    fn add_aliases(&mut self, aliases: &[AliasSpec], earlier: &[Level]) -> Result<()> {
        for a in aliases {
            match a.kind.as_str() {
                "divisor" => {
                    let v = self.resolve(&a.expr, true, earlier)?;
                    self.divisors.insert(a.name.clone(), v);
                }
                "curve" => {
                    let v = self.resolve(&a.expr, false, earlier)?;
                    self.curves.insert(a.name.clone(), v);
                }
                other => return Err(Error::Parse(format!("alias kind must be divisor or curve, got {other}"))),
            }
        }
        Ok(())
    }
}
