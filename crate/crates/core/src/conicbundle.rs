//! Conic bundles over the affine plane given by a matrix of polynomials in
//! `(u, v)`, and the discriminant curve `Δ = {det M = 0}`.
//!
//! Two shapes: a symmetric 3×3 matrix, fibres `ᵗx·M·x = 0` in ℙ², and a 2×2
//! matrix, fibres `ᵗx·M·y = 0` in ℙ¹×ℙ¹.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{gcd, linalg, Ambient, Mono, MultiPoly, Scalar};
use crate::geometry::{poly_det, Subvariety};
use crate::ideals::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Symmetric 3×3, fibres are plane conics.
    Symmetric,
    /// 2×2, fibres are (1,1)-curves in ℙ¹×ℙ¹.
    Bilinear,
}

impl Shape {
    pub fn size(self) -> usize {
        match self {
            Shape::Symmetric => 3,
            Shape::Bilinear => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberType {
    Smooth,
    TwoLines,
    DoubleLine,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberType::Smooth => "smooth",
            FiberType::TwoLines => "two-lines",
            FiberType::DoubleLine => "double-line",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConicBundle {
    shape: Shape,
    base: Arc<Ambient>,
    matrix: Vec<Vec<MultiPoly>>,
}

/// Outcome of comparing the corank of `M(p)` with the singularity of `Δ` at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankMultiplicity {
    pub point: (String, String),
    pub corank: usize,
    pub fiber: FiberType,
    /// Order of vanishing of `Δ` at `p`.
    pub multiplicity: u32,
    /// For multiplicity 2: whether the quadratic part has nonzero discriminant.
    pub ordinary_node: Option<bool>,
    pub consistent: bool,
}

/// The base `A(u,v)`.
pub fn base_plane() -> Arc<Ambient> {
    Ambient::parse("A(u,v)").expect("static ambient")
}

fn rat_scalar(q: &BigRational) -> Scalar {
    Scalar::new(q.clone(), BigRational::zero())
}

impl ConicBundle {
    pub fn new(shape: Shape, matrix: Vec<Vec<MultiPoly>>) -> Result<ConicBundle> {
        let n = shape.size();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected a {n}×{n} matrix")));
        }
        let base = matrix[0][0].ambient().clone();
        if base.nfactors() != 0 || base.nvars() != 2 {
            return Err(Error::Invalid("entries must be polynomials in two affine variables".into()));
        }
        if matrix.iter().flatten().any(|f| !Arc::ptr_eq(f.ambient(), &base) && **f.ambient() != *base) {
            return Err(Error::AmbientMismatch("matrix entries live in different rings".into()));
        }
        if shape == Shape::Symmetric && (0..n).any(|i| (0..i).any(|j| matrix[i][j] != matrix[j][i])) {
            return Err(Error::Invalid("symmetric shape needs M = ᵗM".into()));
        }
        Ok(ConicBundle { shape, base, matrix })
    }

    /// Entries as polynomial strings in `u, v`.
    pub fn parse(shape: Shape, rows: &[Vec<String>]) -> Result<ConicBundle> {
        let base = base_plane();
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| MultiPoly::parse(&base, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ConicBundle::new(shape, m)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn base(&self) -> &Arc<Ambient> {
        &self.base
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    pub fn discriminant(&self) -> MultiPoly {
        poly_det(&self.matrix)
    }

    /// Total space as a hypersurface in `ℙ²×A²` or `ℙ¹×ℙ¹×A²`.
    pub fn total_space(&self) -> Result<Subvariety> {
        let (u, v) = (self.base.name(0), self.base.name(1));
        let (amb, xs, ys) = match self.shape {
            Shape::Symmetric => (Ambient::parse(&format!("P2(x0,x1,x2) * A({u},{v})"))?, vec![0, 1, 2], vec![0, 1, 2]),
            Shape::Bilinear => (Ambient::parse(&format!("P1(x0,x1) * P1(y0,y1) * A({u},{v})"))?, vec![0, 1], vec![2, 3]),
        };
        let mut f = MultiPoly::zero(&amb);
        for (i, &xi) in xs.iter().enumerate() {
            for (j, &yj) in ys.iter().enumerate() {
                let term = self.matrix[i][j].embed(&amb)?.checked_mul(&MultiPoly::var(&amb, xi))?.checked_mul(&MultiPoly::var(&amb, yj))?;
                f = f.checked_add(&term)?;
            }
        }
        Subvariety::new(Ideal::new(&amb, vec![f])?)
    }

    pub fn total_space_smooth(&self) -> Result<bool> {
        Ok(self.total_space()?.is_smooth(1)?.smooth)
    }

    /// Whether the total space is smooth along the fibre over `p`.
    pub fn smooth_over(&self, p: (&BigRational, &BigRational)) -> Result<bool> {
        let s = self.total_space()?;
        let amb = s.ambient().clone();
        let f = &s.ideal().generators()[0];
        let vars: Vec<usize> = (0..amb.nvars()).collect();
        let mut gens: Vec<MultiPoly> = vec![f.clone()];
        gens.extend(vars.iter().map(|&v| f.derivative(v)));
        let aux: Vec<usize> = amb.aux_vars().collect();
        for (k, c) in [p.0, p.1].into_iter().enumerate() {
            gens.push(MultiPoly::var(&amb, aux[k]).checked_sub(&MultiPoly::constant(&amb, rat_scalar(c)))?);
        }
        Ideal::new(&amb, gens)?.is_empty_projective()
    }

    fn eval_matrix(&self, p: (&BigRational, &BigRational)) -> linalg::Matrix {
        let vals = [rat_scalar(p.0), rat_scalar(p.1)];
        self.matrix.iter().map(|r| r.iter().map(|f| f.eval(&vals)).collect()).collect()
    }

    pub fn corank_at(&self, p: (&BigRational, &BigRational)) -> usize {
        self.shape.size() - linalg::rank(&self.eval_matrix(p))
    }

    pub fn fiber_type_at(&self, p: (&BigRational, &BigRational)) -> Result<FiberType> {
        match (self.shape, self.corank_at(p)) {
            (_, 0) => Ok(FiberType::Smooth),
            (_, 1) => Ok(FiberType::TwoLines),
            (Shape::Symmetric, 2) => Ok(FiberType::DoubleLine),
            _ => Err(Error::Degenerate(format!("M vanishes at ({}, {})", p.0, p.1))),
        }
    }

    /// Checks the rank/multiplicity correspondence at `p`: corank 1 gives a
    /// smooth point of `Δ`, corank 2 an ordinary node, and corank 2 never
    /// occurs for 2×2 matrices. Requires smoothness along the fibre.
    pub fn check_rank_multiplicity(&self, p: (&BigRational, &BigRational)) -> Result<RankMultiplicity> {
        if !self.smooth_over(p)? {
            return Err(Error::Invalid(format!("total space is singular over ({}, {})", p.0, p.1)));
        }
        let fiber = self.fiber_type_at(p)?;
        let corank = self.corank_at(p);
        let delta = self.discriminant();
        let (multiplicity, quad) = local_expansion(&delta, p)?;
        let ordinary_node = (multiplicity == 2).then(|| quadratic_nondegenerate(&quad));
        let consistent = match corank {
            0 => multiplicity == 0,
            1 => multiplicity == 1,
            2 => self.shape == Shape::Symmetric && multiplicity == 2 && ordinary_node == Some(true),
            _ => false,
        };
        Ok(RankMultiplicity { point: (p.0.to_string(), p.1.to_string()), corank, fiber, multiplicity, ordinary_node, consistent })
    }

    /// `Δ` squarefree: `gcd(Δ, ∂Δ/∂u, ∂Δ/∂v)` is constant.
    pub fn is_reduced_discriminant(&self) -> Result<bool> {
        is_squarefree(&self.discriminant())
    }

    /// Rational points of `Δ` on the lines `v = m·u + c` and `u = c` for
    /// `m, c` in `[-range, range]`, deduplicated and sorted.
    pub fn slice_points(&self, range: i64) -> Vec<(BigRational, BigRational)> {
        slice_points(&self.discriminant(), range)
    }

    /// Seeded random bundle: nonconstant terms of total degree ≤ `max_degree`
    /// with coefficients in `[-2, 2]`, and `M(0,0)` forced to a diagonal
    /// matrix of the given rank.
    pub fn random<R: Rng>(shape: Shape, rank_at_origin: usize, max_degree: u16, rng: &mut R) -> ConicBundle {
        let base = base_plane();
        let monos: Vec<Mono> = (1..=max_degree).flat_map(|d| (0..=d).rev().map(move |a| Mono::from_exps(&[a, d - a]))).collect();
        let n = shape.size();
        let rank = rank_at_origin.min(n);
        let mut m = vec![vec![MultiPoly::zero(&base); n]; n];
        for i in 0..n {
            for j in 0..n {
                if shape == Shape::Symmetric && j < i {
                    m[i][j] = m[j][i].clone();
                    continue;
                }
                let mut f = MultiPoly::from_terms(&base, monos.iter().map(|mm| (*mm, Scalar::int(rng.gen_range(-2..=2)))));
                // constant part: the last `rank` diagonal entries are 1
                if i == j && i >= n - rank {
                    f = &f + &MultiPoly::one(&base);
                }
                m[i][j] = f;
            }
        }
        ConicBundle::new(shape, m).expect("random bundle is well formed")
    }
}

/// Order of vanishing of `f` at `p` and its homogeneous part of degree 2
/// after translating `p` to the origin.
pub fn local_expansion(f: &MultiPoly, p: (&BigRational, &BigRational)) -> Result<(u32, MultiPoly)> {
    let amb = f.ambient().clone();
    if f.is_zero() {
        return Err(Error::Degenerate("identically zero polynomial has no multiplicity".into()));
    }
    let shift: Vec<Option<MultiPoly>> = [p.0, p.1]
        .iter()
        .enumerate()
        .map(|(k, c)| Some(&MultiPoly::var(&amb, k) + &MultiPoly::constant(&amb, rat_scalar(c))))
        .collect();
    let g = f.substitute(&shift, &amb)?;
    let mult = g.terms().keys().map(Mono::deg).min().unwrap_or(0);
    let quad = MultiPoly::from_terms(&amb, g.terms().iter().filter(|(m, _)| m.deg() == 2).map(|(m, c)| (*m, c.clone())));
    Ok((mult, quad))
}

/// `a u² + b uv + c v²` with `b² − 4ac ≠ 0`.
pub fn quadratic_nondegenerate(q: &MultiPoly) -> bool {
    let c = |e: [u16; 2]| q.coeff(&Mono::from_exps(&e));
    let (a, b, cc) = (c([2, 0]), c([1, 1]), c([0, 2]));
    !(&(&b * &b) - &(&Scalar::int(4) * &(&a * &cc))).is_zero()
}

/// In characteristic zero `f` is squarefree iff its singular locus has
/// codimension at least 2 in the ambient, i.e. `dim (f, ∇f) ≤ n − 2`. This
/// agrees with `gcd(f, ∂f) = 1` and is much cheaper than the gcd chain.
pub fn is_squarefree(f: &MultiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Degenerate("discriminant is identically zero".into()));
    }
    let n = f.ambient().nvars();
    let mut gens = vec![f.clone()];
    gens.extend((0..n).map(|v| f.derivative(v)));
    Ok(match Ideal::new(f.ambient(), gens)?.dimension()? {
        None => true,
        Some(d) => d + 2 <= n,
    })
}

/// The gcd form of the same test, kept as an independent oracle.
pub fn is_squarefree_by_gcd(f: &MultiPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Degenerate("discriminant is identically zero".into()));
    }
    let mut g = f.clone();
    for v in 0..f.ambient().nvars() {
        g = gcd::gcd(&g, &f.derivative(v));
    }
    Ok(g.total_degree() == Some(0))
}

/// Singularities of the affine plane curve `f = 0` through its Jacobian
/// ideal `J = (f, f_u, f_v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneCurveSingularities {
    pub smooth: bool,
    /// `J` zero-dimensional and radical, so every singular point has Tjurina
    /// number 1, which for a plane curve means an ordinary node.
    pub only_ordinary_nodes: bool,
    /// Number of singular points over the algebraic closure.
    pub nodes: usize,
}

pub fn plane_curve_singularities(f: &MultiPoly) -> Result<PlaneCurveSingularities> {
    let amb = f.ambient().clone();
    if amb.nvars() != 2 || amb.nfactors() != 0 {
        return Err(Error::Invalid("expected a polynomial in two affine variables".into()));
    }
    let j = Ideal::new(&amb, vec![f.clone(), f.derivative(0), f.derivative(1)])?;
    if j.is_unit()? {
        return Ok(PlaneCurveSingularities { smooth: true, only_ordinary_nodes: true, nodes: 0 });
    }
    if j.dimension()? != Some(0) {
        return Ok(PlaneCurveSingularities { smooth: false, only_ordinary_nodes: false, nodes: 0 });
    }
    // Seidenberg: a zero-dimensional ideal is radical iff its univariate
    // eliminants are squarefree.
    let mut radical = true;
    for v in 0..2 {
        let e = j.eliminate(&[1 - v])?;
        let p = e.generators().iter().find(|g| !g.is_zero()).cloned().ok_or_else(|| Error::Degenerate("empty eliminant".into()))?;
        radical &= is_squarefree(&p)?;
    }
    let nodes = if radical { quotient_dimension(&j)? } else { 0 };
    Ok(PlaneCurveSingularities { smooth: false, only_ordinary_nodes: radical, nodes })
}

/// `dim_ℚ ℚ[u,v]/J` for a zero-dimensional `J`, by counting standard monomials.
fn quotient_dimension(j: &Ideal) -> Result<usize> {
    let gb = j.groebner_basis()?;
    let lead = gb.leading_monomials();
    let bound = lead.iter().map(|m| m.deg()).max().unwrap_or(0) as u16;
    let mut count = 0;
    for a in 0..=bound {
        for b in 0..=bound {
            let m = Mono::from_exps(&[a, b]);
            if !lead.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn univariate_roots(coeffs: Vec<BigRational>) -> Vec<BigRational> {
    if coeffs.iter().all(Zero::is_zero) {
        return vec![];
    }
    let mut r = linalg::rational_roots(&coeffs).unwrap_or_default();
    r.sort();
    r.dedup();
    r
}

/// Coefficients `c₀..c_d` of `f(u, m·u + c)` or `f(c, v)` as a polynomial in one variable.
fn restrict_to_line(f: &MultiPoly, line: Line) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    let add = |out: &mut Vec<BigRational>, k: usize, x: BigRational| {
        if out.len() <= k {
            out.resize(k + 1, BigRational::zero());
        }
        out[k] += x;
    };
    for (mono, c) in f.terms() {
        let c = c.re();
        let (a, b) = (mono.0[0] as u32, mono.0[1] as u32);
        match &line {
            Line::Vertical(x) => add(&mut out, b as usize, c * pow(x, a)),
            Line::Graph(m, c0) => {
                // u^a (m u + c0)^b
                for k in 0..=b {
                    let coeff = binom(b, k) * pow(m, k) * pow(c0, b - k);
                    add(&mut out, (a + k) as usize, &c * coeff);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
enum Line {
    Vertical(BigRational),
    Graph(BigRational, BigRational),
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::from_integer(1.into()), |acc, _| acc * x)
}

fn binom(n: u32, k: u32) -> BigRational {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    BigRational::from_integer(r)
}

pub fn slice_points(f: &MultiPoly, range: i64) -> Vec<(BigRational, BigRational)> {
    let q = |n: i64| BigRational::from_integer(n.into());
    let mut pts = Vec::new();
    for c in -range..=range {
        for r in univariate_roots(restrict_to_line(f, Line::Vertical(q(c)))) {
            pts.push((q(c), r));
        }
        for m in -range..=range {
            for r in univariate_roots(restrict_to_line(f, Line::Graph(q(m), q(c)))) {
                let v = &q(m) * &r + q(c);
                pts.push((r, v));
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Summary of the randomized check of the rank/multiplicity correspondence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub samples: usize,
    pub rejected_singular: usize,
    pub points_checked: usize,
    pub corank_counts: [usize; 3],
    pub inconsistent: Vec<String>,
    pub non_reduced_symmetric: usize,
    pub singular_bilinear: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.inconsistent.is_empty() && self.non_reduced_symmetric == 0 && self.singular_bilinear == 0
    }
}

/// Sampling parameters for [`random_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Smooth samples per shape.
    pub samples: usize,
    pub symmetric_degree: u16,
    pub bilinear_degree: u16,
}

impl Default for SuiteConfig {
    /// Quadratic symmetric entries make the exact smoothness test roughly
    /// 300 times slower, so the bulk run uses linear ones.
    fn default() -> Self {
        SuiteConfig { samples: 200, symmetric_degree: 1, bilinear_degree: 2 }
    }
}

/// Runs `samples` random smooth bundles of each shape, cycling the rank of
/// `M(0,0)`, and checks every rational point of `Δ` found by slicing.
/// Samples with a singular total space are rejected and redrawn.
pub fn random_suite<R: Rng>(cfg: SuiteConfig, rng: &mut R) -> Result<SuiteReport> {
    let mut rep = SuiteReport::default();
    for shape in [Shape::Symmetric, Shape::Bilinear] {
        let n = shape.size();
        let degree = if shape == Shape::Symmetric { cfg.symmetric_degree } else { cfg.bilinear_degree };
        let samples = cfg.samples;
        let mut done = 0;
        let mut k = 0usize;
        while done < samples {
            let rank = 1 + k % n;
            k += 1;
            let b = ConicBundle::random(shape, rank, degree, rng);
            if !b.total_space_smooth()? {
                rep.rejected_singular += 1;
                continue;
            }
            done += 1;
            rep.samples += 1;
            let delta = b.discriminant();
            match shape {
                Shape::Symmetric => {
                    if !is_squarefree(&delta)? {
                        rep.non_reduced_symmetric += 1;
                    }
                }
                Shape::Bilinear => {
                    if !plane_curve_singularities(&delta)?.smooth {
                        rep.singular_bilinear += 1;
                    }
                }
            }
            for p in slice_points(&delta, 1) {
                let r = b.check_rank_multiplicity((&p.0, &p.1))?;
                rep.points_checked += 1;
                rep.corank_counts[r.corank] += 1;
                if !r.consistent {
                    rep.inconsistent.push(format!("{shape:?} {:?}", r));
                }
            }
        }
    }
    Ok(rep)
}

/// A smooth `(2,2)` divisor `ᵗy·M(x)·y = 0` of `ℙ²×ℙ²` viewed as a conic
/// bundle over the first factor, with `M` symmetric of quadratic forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveConicReport {
    pub total_space_smooth: bool,
    /// `deg Δ` (or its bidegree).
    pub degree: Vec<u32>,
    pub reduced: bool,
    /// Singularities per affine chart of the base, charts in coordinate order.
    pub charts: Vec<PlaneCurveSingularities>,
}

impl ProjectiveConicReport {
    pub fn only_ordinary_nodes(&self) -> bool {
        self.charts.iter().all(|c| c.only_ordinary_nodes)
    }

    pub fn smooth_discriminant(&self) -> bool {
        self.charts.iter().all(|c| c.smooth)
    }
}

/// `M` over a projective base: symmetric 3×3 of forms on `ℙ²`, or 2×2 of
/// `(1,1)`-forms on `ℙ¹×ℙ¹`. Fibre coordinates are fresh.
pub fn analyze_projective(shape: Shape, base: &Arc<Ambient>, matrix: &[Vec<MultiPoly>]) -> Result<ProjectiveConicReport> {
    let n = shape.size();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("expected a {n}×{n} matrix")));
    }
    if !base.aux_names().is_empty() {
        return Err(Error::Invalid("base must be projective".into()));
    }
    let fibre = match shape {
        Shape::Symmetric => "P2(fy0,fy1,fy2)",
        Shape::Bilinear => "P1(fx0,fx1) * P1(fy0,fy1)",
    };
    let base_factors: Vec<String> = base.factors().iter().map(|f| format!("{}({})", f.name, f.vars.join(","))).collect();
    let total = Ambient::parse(&format!("{} * {fibre}", base_factors.join(" * ")))?;
    let nb = base.nvars();
    let (xs, ys): (Vec<usize>, Vec<usize>) = match shape {
        Shape::Symmetric => ((nb..nb + 3).collect(), (nb..nb + 3).collect()),
        Shape::Bilinear => ((nb..nb + 2).collect(), (nb + 2..nb + 4).collect()),
    };
    let mut f = MultiPoly::zero(&total);
    for (i, &xi) in xs.iter().enumerate() {
        for (j, &yj) in ys.iter().enumerate() {
            let t = matrix[i][j].embed(&total)?.checked_mul(&MultiPoly::var(&total, xi))?.checked_mul(&MultiPoly::var(&total, yj))?;
            f = f.checked_add(&t)?;
        }
    }
    let total_space_smooth = Subvariety::new(Ideal::new(&total, vec![f])?)?.is_smooth(1)?.smooth;
    let delta = poly_det(matrix);
    let degree = delta.homogeneous_degree().ok_or_else(|| Error::Degenerate("discriminant is zero or not homogeneous".into()))?;
    // affine charts: one coordinate per factor set to 1, the others renamed u, v
    let plane = base_plane();
    let factor_vars: Vec<Vec<usize>> = (0..base.nfactors()).map(|k| base.factor_vars(k).collect()).collect();
    let mut charts = Vec::new();
    let mut reduced = true;
    for choice in chart_choices(&factor_vars) {
        let mut free: Vec<usize> = (0..nb).filter(|v| !choice.contains(v)).collect();
        free.sort();
        if free.len() != 2 {
            return Err(Error::Invalid("base must be a surface".into()));
        }
        let images: Vec<Option<MultiPoly>> = (0..nb)
            .map(|v| {
                Some(match free.iter().position(|&w| w == v) {
                    Some(k) => MultiPoly::var(&plane, k),
                    None => MultiPoly::one(&plane),
                })
            })
            .collect();
        let local = delta.substitute(&images, &plane)?;
        reduced &= is_squarefree(&local)?;
        charts.push(plane_curve_singularities(&local)?);
    }
    Ok(ProjectiveConicReport { total_space_smooth, degree, reduced, charts })
}

/// Seeded sparse model over a projective base: symmetric 3×3 quadratic forms
/// on `ℙ²(x0,x1,x2)`, or 2×2 `(1,1)`-forms on `ℙ¹(u0,u1)×ℙ¹(v0,v1)`, with
/// coefficients in `[-1, 1]`. Draws until the total space is smooth.
pub fn random_projective<R: Rng>(shape: Shape, rng: &mut R, max_attempts: usize) -> Result<(Arc<Ambient>, Vec<Vec<MultiPoly>>, ProjectiveConicReport)> {
    let (base, monos): (Arc<Ambient>, Vec<&str>) = match shape {
        Shape::Symmetric => (Ambient::parse("P2(x0,x1,x2)")?, vec!["x0^2", "x1^2", "x2^2", "x0*x1", "x0*x2", "x1*x2"]),
        Shape::Bilinear => (Ambient::parse("P1(u0,u1) * P1(v0,v1)")?, vec!["u0*v0", "u0*v1", "u1*v0", "u1*v1"]),
    };
    let monos: Vec<MultiPoly> = monos.iter().map(|m| MultiPoly::parse(&base, m)).collect::<Result<_>>()?;
    let n = shape.size();
    for _ in 0..max_attempts {
        let mut m = vec![vec![MultiPoly::zero(&base); n]; n];
        for i in 0..n {
            for j in 0..n {
                if shape == Shape::Symmetric && j < i {
                    m[i][j] = m[j][i].clone();
                    continue;
                }
                for mono in &monos {
                    m[i][j] = &m[i][j] + &mono.scale(&Scalar::int(rng.gen_range(-1..=1)));
                }
            }
        }
        if m.iter().flatten().any(MultiPoly::is_zero) || poly_det(&m).is_zero() {
            continue;
        }
        let rep = analyze_projective(shape, &base, &m)?;
        if rep.total_space_smooth {
            return Ok((base, m, rep));
        }
    }
    Err(Error::Degenerate(format!("no smooth sample in {max_attempts} attempts")))
}

fn chart_choices(factor_vars: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for vars in factor_vars {
        out = out.into_iter().flat_map(|c| vars.iter().map(move |&v| [c.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Bundle declaration in the structured input format.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub name: String,
    pub shape: Shape,
    pub matrix: Vec<Vec<String>>,
    /// Points `[u, v]` as rational strings; defaults to slicing.
    #[serde(default)]
    pub points: Vec<[String; 2]>,
}

impl BundleSpec {
    pub fn build(&self) -> Result<ConicBundle> {
        ConicBundle::parse(self.shape, &self.matrix)
    }

    pub fn parsed_points(&self) -> Result<Vec<(BigRational, BigRational)>> {
        let p = |s: &str| -> Result<BigRational> {
            let s = s.trim();
            let neg = s.starts_with('-');
            let body = s.trim_start_matches('-');
            let q = match body.split_once('/') {
                Some((n, d)) => {
                    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
                    if d.is_zero() {
                        return Err(Error::Parse(format!("bad rational '{s}'")));
                    }
                    BigRational::new(n.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?, d)
                }
                None => BigRational::from_integer(body.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?),
            };
            Ok(if neg { -q } else { q })
        };
        self.points.iter().map(|[a, b]| Ok((p(a)?, p(b)?))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bundle(shape: Shape, rows: &[&[&str]]) -> ConicBundle {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        ConicBundle::parse(shape, &rows).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn discriminants() {
        let b = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(b.discriminant().to_string(), "u");
        let b = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "v", "0"], &["0", "0", "1"]]);
        assert_eq!(b.discriminant().to_string(), "u*v");
        let b = bundle(Shape::Bilinear, &[&["u", "0"], &["0", "1"]]);
        assert_eq!(b.discriminant().to_string(), "u");
        assert!(ConicBundle::parse(Shape::Symmetric, &[vec!["u".into(), "1".into(), "0".into()], vec!["0".into(), "1".into(), "0".into()], vec!["0".into(), "0".into(), "1".into()]]).is_err());
    }

    #[test]
    fn fibre_types_and_correspondence() {
        let o = (&q(0), &q(0));
        let a = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(a.fiber_type_at(o).unwrap(), FiberType::TwoLines);
        let r = a.check_rank_multiplicity(o).unwrap();
        assert!(r.consistent && r.corank == 1 && r.multiplicity == 1);

        let b = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "v", "0"], &["0", "0", "1"]]);
        assert_eq!(b.fiber_type_at(o).unwrap(), FiberType::DoubleLine);
        let r = b.check_rank_multiplicity(o).unwrap();
        assert_eq!((r.corank, r.multiplicity, r.ordinary_node, r.consistent), (2, 2, Some(true), true));

        let c = bundle(Shape::Bilinear, &[&["u", "0"], &["0", "1"]]);
        let r = c.check_rank_multiplicity(o).unwrap();
        assert!(r.consistent && r.corank == 1);

        let id = bundle(Shape::Symmetric, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(id.fiber_type_at((&q(3), &q(-7))).unwrap(), FiberType::Smooth);

        let zero = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "v", "0"], &["0", "0", "u"]]);
        assert!(matches!(zero.fiber_type_at(o), Err(Error::Degenerate(_))));
        // u x0² + u x1² + v x2²: singular along the double cone over the origin
        let sing = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "u", "0"], &["0", "0", "v"]]);
        assert!(!sing.total_space_smooth().unwrap());
        assert!(sing.check_rank_multiplicity(o).is_err());
    }

    #[test]
    fn reducedness() {
        let base = base_plane();
        let p = |s: &str| MultiPoly::parse(&base, s).unwrap();
        assert!(is_squarefree(&p("u*v")).unwrap());
        assert!(!is_squarefree(&p("u^2")).unwrap());
        assert!(!is_squarefree(&p("u^2*v + u^3")).unwrap());
        assert!(is_squarefree(&p("u")).unwrap());
        assert!(is_squarefree(&MultiPoly::zero(&base)).is_err());
        for t in ["u*v", "u^2", "u^2*v + u^3", "(u - v)*(u + v)^2", "u^3 - v^2 + 1", "3"] {
            assert_eq!(is_squarefree(&p(t)).unwrap(), is_squarefree_by_gcd(&p(t)).unwrap(), "{t}");
        }
    }

    #[test]
    fn plane_curve_nodes() {
        let base = base_plane();
        let p = |s: &str| MultiPoly::parse(&base, s).unwrap();
        let nodal = plane_curve_singularities(&p("u*v*(u+v-1)")).unwrap();
        assert_eq!(nodal, PlaneCurveSingularities { smooth: false, only_ordinary_nodes: true, nodes: 3 });
        let cusp = plane_curve_singularities(&p("u^2 - v^3")).unwrap();
        assert!(!cusp.smooth && !cusp.only_ordinary_nodes);
        assert!(plane_curve_singularities(&p("u^2 + v^2 - 1")).unwrap().smooth);
        assert!(!plane_curve_singularities(&p("u^2")).unwrap().only_ordinary_nodes);
    }

    #[test]
    fn slicing_finds_rational_points() {
        let base = base_plane();
        let f = MultiPoly::parse(&base, "u*v - 1").unwrap();
        let pts = slice_points(&f, 1);
        assert!(pts.contains(&(q(1), q(1))) && pts.contains(&(q(-1), q(-1))));
        for (a, b) in &pts {
            assert!(f.eval(&[rat_scalar(a), rat_scalar(b)]).is_zero());
        }
    }

    #[test]
    fn small_random_suite() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rep = random_suite(SuiteConfig { samples: 12, symmetric_degree: 1, bilinear_degree: 2 }, &mut rng).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.samples, 24);
        assert!(rep.corank_counts[1] > 0 && rep.corank_counts[2] > 0);
    }
}
