use num_rational::BigRational;
use num_traits::Zero;

use super::super::util::{join, verdict};
use super::super::{Anchor, Checks, Scenario};
use crate::conicbundle::{random_projective, random_suite, ConicBundle, FiberType, Shape, SuiteConfig};
use crate::error::Result;

pub fn scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "lem-discriminant",
            anchor: Anchor { label: "Lem:Discriminant", quote: r"$\Delta$ is a reduced curve of $\mathbb{A}^2$" },
            run: lem_discriminant,
        },
        Scenario {
            name: "autfinite-1a-discriminant",
            anchor: Anchor { label: "prop:AutFiniteTable", quote: "is reduced and has only ordinary double points" },
            run: autfinite_1a,
        },
        Scenario {
            name: "autfinite-8-discriminant",
            anchor: Anchor { label: "prop:AutFiniteTable", quote: "which is of bidegree $(2,2)$ and is thus of genus $1$" },
            run: autfinite_8,
        },
    ]
}

fn bundle(shape: Shape, rows: &[&[&str]]) -> Result<ConicBundle> {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    ConicBundle::parse(shape, &rows)
}

fn origin() -> (BigRational, BigRational) {
    (BigRational::zero(), BigRational::zero())
}

/// Fibre type and node test at the origin of a normal form from the proof.
fn normal_form(shape: Shape, rows: &[&[&str]], corank: usize, fiber: FiberType) -> Result<(bool, String)> {
    let b = bundle(shape, rows)?;
    let o = origin();
    let r = b.check_rank_multiplicity((&o.0, &o.1))?;
    let ok = r.consistent && r.corank == corank && r.fiber == fiber;
    Ok((ok, format!("corank {}, fibre {}, multiplicity {}, node {:?}", r.corank, r.fiber, r.multiplicity, r.ordinary_node)))
}

fn lem_discriminant(ck: &mut Checks) {
    let cfg = ck.config().overrides.discriminant.unwrap_or_default();
    let mut rng = ck.rng("suite");
    ck.check("random-smooth-bundles", || {
        let rep = random_suite(cfg, &mut rng)?;
        let ok = rep.passed() && rep.samples == 2 * cfg.samples;
        let mut d = format!(
            "{} smooth samples ({} singular redrawn), {} points of Δ checked, coranks 0/1/2 = {:?}",
            rep.samples, rep.rejected_singular, rep.points_checked, rep.corank_counts
        );
        if !rep.inconsistent.is_empty() {
            d += &format!("; inconsistent: {}", rep.inconsistent.join("; "));
        }
        d += &format!("; non-reduced symmetric {}, singular 2x2 {}", rep.non_reduced_symmetric, rep.singular_bilinear);
        Ok((ok, d))
    });
    let mut rng = ck.rng("quadratic");
    ck.check("quadratic-entries-spot-check", || {
        let cfg = SuiteConfig { samples: 3, symmetric_degree: 2, bilinear_degree: 2 };
        let rep = random_suite(cfg, &mut rng)?;
        Ok((rep.passed(), format!("{} samples, {} points, coranks {:?}", rep.samples, rep.points_checked, rep.corank_counts)))
    });
    ck.check("corank-1-normal-form", || {
        normal_form(Shape::Symmetric, &[&["u", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], 1, FiberType::TwoLines)
    });
    ck.check("corank-2-normal-form", || {
        normal_form(Shape::Symmetric, &[&["u", "0", "0"], &["0", "v", "0"], &["0", "0", "1"]], 2, FiberType::DoubleLine)
    });
    ck.check("bilinear-corank-1-normal-form", || normal_form(Shape::Bilinear, &[&["u", "0"], &["0", "1"]], 1, FiberType::TwoLines));
    ck.check("zero-matrix-forces-singular-total-space", || {
        let sym = bundle(Shape::Symmetric, &[&["u", "0", "0"], &["0", "u", "0"], &["0", "0", "v"]])?;
        let bil = bundle(Shape::Bilinear, &[&["u", "0"], &["0", "v"]])?;
        let (a, b) = (sym.total_space_smooth()?, bil.total_space_smooth()?);
        verdict(!a && !b, format!("M(0,0) = 0: symmetric total space smooth = {a}, 2x2 total space smooth = {b}"))
    });
    let specs = ck.config().overrides.bundle.clone();
    for spec in specs {
        ck.check(&format!("input-bundle/{}", spec.name), || {
            let b = spec.build()?;
            if !b.total_space_smooth()? {
                return verdict(false, "total space is singular, lemma does not apply");
            }
            let pts = match spec.parsed_points()? {
                p if p.is_empty() => b.slice_points(2),
                p => p,
            };
            let mut bad = Vec::new();
            for p in &pts {
                let r = b.check_rank_multiplicity((&p.0, &p.1))?;
                if !r.consistent {
                    bad.push(format!("({}, {}) corank {} multiplicity {}", p.0, p.1, r.corank, r.multiplicity));
                }
            }
            let delta_ok = match b.shape() {
                Shape::Symmetric => b.is_reduced_discriminant()?,
                Shape::Bilinear => crate::conicbundle::plane_curve_singularities(&b.discriminant())?.smooth,
            };
            let d = format!("Δ = {}, {} points checked, discriminant condition {}", b.discriminant(), pts.len(), delta_ok);
            Ok((bad.is_empty() && delta_ok, if bad.is_empty() { d } else { format!("{d}; inconsistent at {}", join(&bad)) }))
        });
    }
}

const PROJECTIVE_SAMPLES: usize = 3;

fn autfinite_1a(ck: &mut Checks) {
    let mut rng = ck.rng("samples");
    let samples: Result<Vec<_>> = (0..PROJECTIVE_SAMPLES).map(|_| random_projective(Shape::Symmetric, &mut rng, 100)).collect();
    ck.check("smooth-22-divisors", || {
        let s = samples.clone()?;
        verdict(s.iter().all(|x| x.2.total_space_smooth), format!("{} smooth (2,2) divisors of P2 x P2 drawn", s.len()))
    });
    ck.check("discriminant-sextic", || {
        let s = samples.clone()?;
        let degs: Vec<String> = s.iter().map(|x| format!("{:?}", x.2.degree)).collect();
        verdict(s.iter().all(|x| x.2.degree == [6]), format!("degrees {}", degs.join(" ")))
    });
    ck.check("discriminant-reduced", || {
        let s = samples.clone()?;
        verdict(s.iter().all(|x| x.2.reduced), "det M squarefree on every affine chart")
    });
    ck.check("only-ordinary-double-points", || {
        let s = samples.clone()?;
        let nodes: Vec<String> = s.iter().map(|x| format!("{:?}", x.2.charts.iter().map(|c| c.nodes).collect::<Vec<_>>())).collect();
        verdict(s.iter().all(|x| x.2.only_ordinary_nodes()), format!("singular points per chart {}", nodes.join(" ")))
    });
}

fn autfinite_8(ck: &mut Checks) {
    let mut rng = ck.rng("samples");
    let samples: Result<Vec<_>> = (0..PROJECTIVE_SAMPLES).map(|_| random_projective(Shape::Bilinear, &mut rng, 100)).collect();
    ck.check("smooth-1111-divisors", || {
        let s = samples.clone()?;
        let symmetric = s.iter().filter(|x| x.1[0][1] == x.1[1][0]).count();
        verdict(
            s.iter().all(|x| x.2.total_space_smooth),
            format!("{} smooth (1,1,1,1) divisors drawn, {symmetric} with symmetric M; the lemma needs no symmetry", s.len()),
        )
    });
    ck.check("discriminant-bidegree-22", || {
        let s = samples.clone()?;
        verdict(s.iter().all(|x| x.2.degree == [2, 2]), "det M has bidegree (2,2) on P1 x P1, not a curve of P2")
    });
    ck.check("discriminant-smooth", || {
        let s = samples.clone()?;
        verdict(s.iter().all(|x| x.2.reduced && x.2.smooth_discriminant()), "Δ smooth on all four affine charts")
    });
    ck.check("genus-one", || {
        let s = samples.clone()?;
        let g: Vec<i64> = s.iter().map(|x| (x.2.degree[0] as i64 - 1) * (x.2.degree[1] as i64 - 1)).collect();
        verdict(g.iter().all(|&g| g == 1), format!("adjunction genus (a-1)(b-1) = {}", join(&g)))
    });
}
