use std::sync::Arc;

use super::super::util::{amb, ideal, join, map, poly, polys, proportional, variety, verdict};
use super::super::{Anchor, Checks, Scenario};
use crate::error::{Error, Result};
use crate::exactalg::forms::pullback;
use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::{canonical_span, vanishing_forms, Ambient, MultiPoly, Scalar};
use crate::geometry::{RationalMap, Subvariety};
use crate::groups::{
    equivariance_check, is_orthogonal_projective, projective_fixed_points, random_pgl, random_po3, sym_power_rep,
    ProjLinearElement,
};
use crate::ideals::Ideal;

pub fn scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "t3aut-veronese-forms",
            anchor: Anchor {
                label: "T3Aut",
                quote: "We then choose the following basis of the vector space of polynomials of degree $2$ vanishing on $C$",
            },
            run: t3_veronese_forms,
        },
        Scenario {
            name: "t3aut-torus-weights",
            anchor: Anchor { label: "T3Aut", quote: r"Replacing $x_i$ with $\xi^i x_i$ in $f_0,\ldots,f_5$ yields" },
            run: t3_torus_weights,
        },
        Scenario {
            name: "t3aut-nu-transforms",
            anchor: Anchor { label: "T3Aut", quote: "$f_0,f_1,2f_1+f_2,f_1+f_2+f_3,f_0+2f_1+3f_2+6f_3+f_4,f_0+f_1+2f_2+6f_3+2f_4+f_5$" },
            run: t3_nu_transforms,
        },
        Scenario {
            name: "t3aut-sigma",
            anchor: Anchor { label: "T3Aut", quote: r"where $\sigma$ is the involution" },
            run: t3_sigma,
        },
        Scenario {
            name: "t3aut-ga-fixed-point",
            anchor: Anchor { label: "T3Aut", quote: r"is the only point of $\mathbb{P}^4$ fixed by $\nu$" },
            run: t3_ga_fixed_point,
        },
        Scenario {
            name: "t3aut-quadric-smooth",
            anchor: Anchor { label: "T3Aut", quote: "$Q$ is given by $x_0x_4 - 4x_1x_3 + 3x_2^2=0$" },
            run: t3_quadric_smooth,
        },
        Scenario {
            name: "t4aut-normal-form-action",
            anchor: Anchor { label: "T4Aut", quote: "As $F$ is smooth, this implies that $M$ is the identity matrix" },
            run: t4_normal_form,
        },
        Scenario {
            name: "iso26-vanishing-forms",
            anchor: Anchor {
                label: "Lemm:Iso26",
                quote: "The vector space of polynomials of  bidegree $(1,1)$ vanishing along $C$ is of dimension $4$",
            },
            run: iso26_vanishing_forms,
        },
        Scenario {
            name: "iso26-theta-blowup",
            anchor: Anchor { label: "Lemm:Iso26", quote: "is the blow-up of the diagonal" },
            run: iso26_theta_blowup,
        },
        Scenario {
            name: "t6aut-po3-action",
            anchor: Anchor { label: "T6Aut", quote: r"For each matrix $M\in \PGL_3(\mathbb{C})$ such that $\tr{M}\cdot M=\mathrm{id}$" },
            run: t6_po3_action,
        },
        Scenario {
            name: "t6aut-tau-parametrization",
            anchor: Anchor {
                label: "T6Aut",
                quote: r"Moreover, the isomorphism $\tau$ sends the diagonal of $\mathbb{P}^1\times \mathbb{P}^1$ onto $\Gamma$",
            },
            run: t6_tau_parametrization,
        },
        Scenario {
            name: "t6aut-crossproduct-equivariance",
            anchor: Anchor { label: "T6Aut", quote: r"(follows from the fact that $\tau$ corresponds to the cross-product)" },
            run: t6_crossproduct,
        },
    ]
}

const SAMPLES: usize = 50;

const F: [&str; 6] = [
    "x0*x4 - 4*x1*x3 + 3*x2^2",
    "x0*x2 - x1^2",
    "x0*x3 - x1*x2",
    "x1*x3 - x2^2",
    "x1*x4 - x2*x3",
    "x2*x4 - x3^2",
];

const VERONESE: [&str; 5] = ["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^4"];

fn p4() -> Result<Arc<Ambient>> {
    amb("P4(x0,x1,x2,x3,x4)")
}

fn fs(a: &Arc<Ambient>) -> Result<Vec<MultiPoly>> {
    polys(a, &F)
}

/// `Σ c_i f_i`.
fn comb(f: &[MultiPoly], c: &[i64]) -> MultiPoly {
    f.iter().zip(c).fold(MultiPoly::zero(f[0].ambient()), |acc, (g, &k)| &acc + &g.scale(&Scalar::int(k)))
}

fn nu_matrix() -> Matrix {
    linalg::from_ints(&[&[1, 0, 0, 0, 0], &[1, 1, 0, 0, 0], &[1, 2, 1, 0, 0], &[1, 3, 3, 1, 0], &[1, 4, 6, 4, 1]])
}

fn nu(a: &Arc<Ambient>) -> Result<ProjLinearElement> {
    ProjLinearElement::new(a, vec![nu_matrix()])
}

/// Coefficients of `f_k ∘ ν` in the basis `f_0, …, f_5`, as printed.
const NU_IMAGES: [[i64; 6]; 6] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 2, 1, 0, 0, 0],
    [0, 1, 1, 1, 0, 0],
    [1, 2, 3, 6, 1, 0],
    [1, 1, 2, 6, 2, 1],
];

fn veronese_param() -> Result<Vec<Vec<MultiPoly>>> {
    let p1 = amb("P1(u,v)")?;
    Ok(vec![polys(&p1, &VERONESE)?])
}

fn smooth(a: &Arc<Ambient>, f: &str) -> Result<bool> {
    Ok(variety(a, &[f])?.is_smooth(1)?.smooth)
}

fn gradient_at(f: &MultiPoly, p: &[Scalar]) -> Vec<Scalar> {
    (0..f.ambient().nvars()).map(|v| f.derivative(v).eval(p)).collect()
}

fn t3_veronese_forms(ck: &mut Checks) {
    ck.check("quadrics-through-C-dimension-6", || {
        let forms = vanishing_forms(&p4()?, &[2], &veronese_param()?)?;
        verdict(forms.len() == 6, format!("dimension {}", forms.len()))
    });
    ck.check("span-equals-f0-to-f5", || {
        let a = p4()?;
        let forms = vanishing_forms(&a, &[2], &veronese_param()?)?;
        let printed = fs(&a)?;
        let vanish = printed.iter().map(|f| pullback(f, &veronese_param()?)).collect::<Result<Vec<_>>>()?;
        let ok = canonical_span(&printed) == forms && vanish.iter().all(MultiPoly::is_zero);
        verdict(ok, "each f_i pulls back to 0 and the canonical bases of the two spans coincide")
    });
    ck.check("printed-parametrization-misprint", || {
        // the last coordinate is printed as v^3
        let p1 = amb("P1(u,v)")?;
        let printed = vec![polys(&p1, &["u^4", "u^3*v", "u^2*v^2", "u*v^3", "v^3"])?];
        let rejected = matches!(vanishing_forms(&p4()?, &[2], &printed), Err(Error::Invalid(_)));
        verdict(rejected, "[u^4:u^3v:u^2v^2:uv^3:v^3] is not homogeneous; the quartic Veronese v^4 is used")
    });
    let mut rng = ck.rng("sym4");
    ck.check("f0-invariant-under-sym4-lifts", || {
        let a = p4()?;
        let f = fs(&a)?;
        let (mut inv, mut f1_moved) = (0, 0);
        for _ in 0..SAMPLES {
            let g = ProjLinearElement::new(&a, vec![sym_power_rep(&random_pgl(2, &mut rng), 4)?])?;
            if proportional(&g.act_on_poly(&f[0])?, &f[0]) {
                inv += 1;
            }
            if !proportional(&g.act_on_poly(&f[1])?, &f[1]) {
                f1_moved += 1;
            }
        }
        verdict(inv == SAMPLES, format!("{inv}/{SAMPLES} lifts fix f0 up to scalar; control f1 moved by {f1_moved}"))
    });
    let mut rng = ck.rng("preserve");
    ck.check("sym4-lifts-preserve-C", || {
        let a = p4()?;
        let c = variety(&a, &F)?;
        let mut ok = 0;
        for _ in 0..10 {
            let g = ProjLinearElement::new(&a, vec![sym_power_rep(&random_pgl(2, &mut rng), 4)?])?;
            ok += g.preserves(&c)? as usize;
        }
        verdict(ok == 10, format!("{ok}/10 lifts map the ideal of C into itself"))
    });
}

fn t3_torus_weights(ck: &mut Checks) {
    ck.check("weights-4-2-3-4-5-6", || {
        let a = amb("P4(x0,x1,x2,x3,x4) * A(xi)")?;
        let subs: Vec<(String, MultiPoly)> =
            (0..5).map(|i| Ok((format!("x{i}"), poly(&a, &format!("xi^{i}*x{i}"))?))).collect::<Result<_>>()?;
        let subs: Vec<(&str, MultiPoly)> = subs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
        let f = fs(&a)?;
        let mut weights = Vec::new();
        for g in &f {
            let h = g.substitute_named(&subs)?;
            let w = (0..=8).find(|&w| h == g.checked_mul(&poly(&a, &format!("xi^{w}")).unwrap()).unwrap());
            weights.push(w.map_or(-1, |w| w as i64));
        }
        verdict(
            weights == [4, 2, 3, 4, 5, 6],
            format!("f_k -> xi^w f_k with w = {}; the weight-6 form is f5 (printed as f6)", join(&weights)),
        )
    });
    ck.check("f0-plus-kappa-f3-eigenvector", || {
        let a = amb("P4(x0,x1,x2,x3,x4) * A(xi,kappa)")?;
        let q = poly(&a, &format!("{} + kappa*({})", F[0], F[3]))?;
        let subs: Vec<(String, MultiPoly)> =
            (0..5).map(|i| Ok((format!("x{i}"), poly(&a, &format!("xi^{i}*x{i}"))?))).collect::<Result<_>>()?;
        let subs: Vec<(&str, MultiPoly)> = subs.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
        let ok = q.substitute_named(&subs)? == q.checked_mul(&poly(&a, "xi^4")?)?;
        verdict(ok, "(f0 + kappa f3)(xi^i x_i) = xi^4 (f0 + kappa f3) identically in kappa")
    });
    ck.check("other-eigenvectors-singular", || {
        let a = p4()?;
        let s: Vec<bool> = [1, 2, 4, 5].iter().map(|&i| smooth(&a, F[i])).collect::<Result<_>>()?;
        verdict(s.iter().all(|x| !x), "f1, f2, f4, f5 each define a singular quadric")
    });
}

fn t3_nu_transforms(ck: &mut Checks) {
    ck.check("printed-nu-is-sym4-lift", || {
        let lift = sym_power_rep(&linalg::from_ints(&[&[1, 0], &[1, 1]]), 4)?;
        verdict(lift == nu_matrix(), "[u:v] -> [u:v+u] lifts to the printed substitution")
    });
    ck.check("nu-transform-list", || {
        let a = p4()?;
        let f = fs(&a)?;
        let g = nu(&a)?;
        let mut bad = Vec::new();
        for (k, want) in NU_IMAGES.iter().enumerate() {
            if g.act_on_poly(&f[k])? != comb(&f, want) {
                bad.push(k);
            }
        }
        verdict(bad.is_empty(), if bad.is_empty() { "all six f_k∘ν match exactly".into() } else { format!("mismatch at f_{}", join(&bad)) })
    });
    ck.check("nu-invariant-quadrics-span-f0-f1", || {
        // c is ν-invariant iff Σ c_k (f_k∘ν) = Σ c_k f_k, i.e. (Nᵀ − I) c = 0
        let m: Matrix = (0..6)
            .map(|j| (0..6).map(|k| Scalar::int(NU_IMAGES[k][j] - (j == k) as i64)).collect())
            .collect();
        let ker = linalg::kernel(&m, 6);
        let supported = ker.iter().all(|v| v[2..].iter().all(Scalar::is_zero));
        verdict(ker.len() == 2 && supported, format!("invariant combinations: dimension {}, supported on f0, f1", ker.len()))
    });
    ck.check("kappa-nonzero-not-nu-invariant", || {
        let a = p4()?;
        let f = fs(&a)?;
        let g = nu(&a)?;
        let moved: Vec<i64> = [1, 2, -1]
            .into_iter()
            .filter(|&k| {
                let q = comb(&f, &[1, 0, 0, k, 0, 0]);
                !proportional(&g.act_on_poly(&q).unwrap(), &q)
            })
            .collect();
        let fixed0 = proportional(&g.act_on_poly(&f[0])?, &f[0]);
        verdict(moved.len() == 3 && fixed0, format!("f0 + k f3 moved for k = {}; k = 0 fixed", join(&moved)))
    });
    ck.check("f0-plus-f1-nu-invariant", || {
        let a = p4()?;
        let f = fs(&a)?;
        let q = comb(&f, &[1, 1, 0, 0, 0, 0]);
        verdict(nu(&a)?.act_on_poly(&q)? == q, "(f0 + f1)∘ν = f0 + f1")
    });
    ck.check("f0-plus-f1-not-torus-invariant", || {
        let a = p4()?;
        let f = fs(&a)?;
        let q = comb(&f, &[1, 1, 0, 0, 0, 0]);
        let t = ProjLinearElement::new(&a, vec![diag(&[1, 2, 4, 8, 16])])?;
        verdict(!proportional(&t.act_on_poly(&q)?, &q), "xi = 2 sends f0 + f1 to 16 f0 + 4 f1")
    });
}

fn diag(d: &[i64]) -> Matrix {
    (0..d.len()).map(|i| (0..d.len()).map(|j| Scalar::int(if i == j { d[i] } else { 0 })).collect()).collect()
}

fn reversal(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| Scalar::int((i + j == n - 1) as i64)).collect()).collect()
}

fn t3_sigma(ck: &mut Checks) {
    ck.check("sigma-preserves-f0-plus-kappa-f3", || {
        let a = amb("P4(x0,x1,x2,x3,x4) * A(kappa)")?;
        let q = poly(&a, &format!("{} + kappa*({})", F[0], F[3]))?;
        let s = ProjLinearElement::new(&a, vec![reversal(5)])?;
        verdict(
            s.act_on_poly(&q)? == q,
            "reversal of x0..x4 fixes f0 + kappa f3 identically (printed with six coordinates x0..x5)",
        )
    });
    ck.check("sigma-is-sym4-of-swap", || {
        let a = p4()?;
        let lift = ProjLinearElement::new(&a, vec![sym_power_rep(&linalg::from_ints(&[&[0, 1], &[1, 0]]), 4)?])?;
        let s = ProjLinearElement::new(&a, vec![reversal(5)])?;
        verdict(lift.projectively_equal(&s), "σ lifts [u:v] -> [v:u]")
    });
    ck.check("sigma-is-an-involution", || {
        let a = p4()?;
        let s = ProjLinearElement::new(&a, vec![reversal(5)])?;
        verdict(s.mul(&s).projectively_equal(&ProjLinearElement::identity(&a)), "σ² = id")
    });
    ck.check("sigma-inverts-the-torus", || {
        let a = p4()?;
        let s = ProjLinearElement::new(&a, vec![reversal(5)])?;
        let t = ProjLinearElement::new(&a, vec![diag(&[1, 2, 4, 8, 16])])?;
        verdict(s.mul(&t).mul(&s).projectively_equal(&t.inverse()), "σ t σ = t⁻¹ for t = diag(1,2,4,8,16)")
    });
}

fn t3_ga_fixed_point(ck: &mut Checks) {
    let q: Vec<Scalar> = [0, 0, 0, 0, 1].iter().map(|&v| Scalar::int(v)).collect();
    ck.check("nu-fixes-only-q", || {
        let pts = projective_fixed_points(&nu_matrix()).points();
        let ok = matches!(&pts, Some(p) if p.len() == 1 && p[0][..4].iter().all(Scalar::is_zero) && !p[0][4].is_zero());
        verdict(ok, format!("fixed points {:?}", pts.map(|p| p.iter().map(|v| join(v)).collect::<Vec<_>>())))
    });
    let q2 = q.clone();
    ck.check("tangent-hyperplane-x0", || {
        let a = p4()?;
        let qf = comb(&fs(&a)?, &[1, 1, 0, 0, 0, 0]);
        let g = gradient_at(&qf, &q2);
        let ok = qf.eval(&q2).is_zero() && !g[0].is_zero() && g[1..].iter().all(Scalar::is_zero);
        verdict(ok, format!("grad(f0 + f1)(q) = ({})", join(&g)))
    });
    ck.check("tangent-line-of-C", || {
        let p1 = amb("P1(u,v)")?;
        let at = [Scalar::zero(), Scalar::one()];
        let param = polys(&p1, &VERONESE)?;
        let point: Vec<Scalar> = param.iter().map(|c| c.eval(&at)).collect();
        let tangent: Vec<Scalar> = param.iter().map(|c| c.derivative(0).eval(&at)).collect();
        let m: Matrix = vec![point.clone(), tangent.clone()];
        let ok = linalg::rank(&m) == 2 && point[..3].iter().chain(&tangent[..3]).all(Scalar::is_zero);
        verdict(ok, format!("C(0,1) = ({}), dC/du = ({}); the line is x0 = x1 = x2 = 0", join(&point), join(&tangent)))
    });
    let q3 = q.clone();
    ck.check("f1-f2-f3-singular-at-q", || {
        let f = fs(&p4()?)?;
        let ok = [1, 2, 3].iter().all(|&k| gradient_at(&f[k], &q3).iter().all(Scalar::is_zero));
        verdict(ok, "∇f1, ∇f2, ∇f3 vanish at q")
    });
    let q4 = q.clone();
    ck.check("conormal-generators", || {
        let f = fs(&p4()?)?;
        let m: Matrix = [0, 4, 5].iter().map(|&k| gradient_at(&f[k], &q4)).collect();
        verdict(linalg::rank(&m) == 3, "∇f0, ∇f4, ∇f5 independent at q")
    });
    ck.check("nu-acts-nontrivially-on-e", || {
        let a = p4()?;
        let f = fs(&a)?;
        let g = nu(&a)?;
        // conormal coordinates: ∇f0, ∇f4, ∇f5 at q are e0, e1, e2
        let mut rows = Vec::new();
        for k in [0, 4, 5] {
            let gr = gradient_at(&g.act_on_poly(&f[k])?, &q);
            if !gr[3..].iter().all(Scalar::is_zero) {
                return verdict(false, "gradient leaves the conormal span");
            }
            rows.push(gr[..3].to_vec());
        }
        let scalar = (0..3).all(|i| (0..3).all(|j| if i == j { rows[i][i] == rows[0][0] } else { rows[i][j].is_zero() }));
        let shown: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
        verdict(
            !scalar,
            format!(
                "ν* on the conormal fibre (rows f0, f4, f5) = {}; not scalar. The first printed identity f4∘ν = f0 should read f0∘ν = f0",
                shown.join(" ")
            ),
        )
    });
}

fn t3_quadric_smooth(ck: &mut Checks) {
    let cases: [(&str, &[i64], bool); 4] = [
        ("f0-smooth", &[1, 0, 0, 0, 0, 0], true),
        ("f1-singular", &[0, 1, 0, 0, 0, 0], false),
        ("f0-plus-f1-smooth", &[1, 1, 0, 0, 0, 0], true),
        ("f0-plus-f3-smooth", &[1, 0, 0, 1, 0, 0], true),
    ];
    for (name, c, want) in cases {
        ck.check(name, move || {
            let a = p4()?;
            let q = comb(&fs(&a)?, c);
            let s = Subvariety::new(Ideal::new(&a, vec![q.clone()])?)?.is_smooth(1)?.smooth;
            verdict(s == want, format!("{q} = 0 smooth: {s}"))
        });
    }
    ck.check("ga-quadric-contains-C", || {
        let q = comb(&fs(&p4()?)?, &[1, 1, 0, 0, 0, 0]);
        verdict(pullback(&q, &veronese_param()?)?.is_zero(), "f0 + f1 vanishes on the Veronese quartic")
    });
}

const P2P2: &str = "P2(x0,x1,x2) * P2(y0,y1,y2)";
const P2P2P2: &str = "P2(x0,x1,x2) * P2(y0,y1,y2) * P2(z0,z1,z2)";
const THETA: [&str; 3] = ["x1*y2 - x2*y1", "x2*y0 - x0*y2", "x0*y1 - x1*y0"];
const DOT: &str = "x0*y0 + x1*y1 + x2*y2";

/// `xᵀ M y` on `P2 × P2`.
fn bilinear(a: &Arc<Ambient>, m: &Matrix) -> MultiPoly {
    let mut f = MultiPoly::zero(a);
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            f = &f + &(&MultiPoly::var(a, i) * &MultiPoly::var(a, 3 + j)).scale(c);
        }
    }
    f
}

fn t4_normal_form(ck: &mut Checks) {
    ck.check("standard-form-smooth", || verdict(smooth(&amb(P2P2)?, DOT)?, "Σ x_i y_i = 0 is smooth"));
    let mut rng = ck.rng("action");
    ck.check("A-transpose-inverse-preserves-F", || {
        let a = amb(P2P2)?;
        let f = poly(&a, DOT)?;
        let mut ok = 0;
        for _ in 0..SAMPLES {
            let m = random_pgl(3, &mut rng);
            let g = ProjLinearElement::new(&a, vec![m.clone(), linalg::inverse(&linalg::transpose(&m)).unwrap()])?;
            ok += proportional(&g.act_on_poly(&f)?, &f) as usize;
        }
        verdict(ok == SAMPLES, format!("{ok}/{SAMPLES} samples"))
    });
    let mut rng = ck.rng("change");
    ck.check("coordinate-change-formula", || {
        let a = amb(P2P2)?;
        let mut ok = 0;
        for _ in 0..20 {
            let m: Matrix = (0..3).map(|_| (0..3).map(|_| Scalar::int(rand::Rng::gen_range(&mut rng, -3..=3))).collect()).collect();
            let (am, bm) = (random_pgl(3, &mut rng), random_pgl(3, &mut rng));
            let g = ProjLinearElement::new(&a, vec![am.clone(), bm.clone()])?;
            let ai = linalg::inverse(&am).unwrap();
            let bi = linalg::inverse(&bm).unwrap();
            let want = bilinear(&a, &linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&ai), &m), &bi));
            ok += (g.push_poly(&bilinear(&a, &m))? == want) as usize;
        }
        verdict(ok == 20, format!("{ok}/20: under (A, B) the matrix becomes ᵗA⁻¹ M B⁻¹"))
    });
    let mut rng = ck.rng("faithful");
    ck.check("A-with-identity-is-not-an-automorphism", || {
        let a = amb(P2P2)?;
        let f = poly(&a, DOT)?;
        let mut moved = 0;
        let mut tried = 0;
        while tried < 20 {
            let m = random_pgl(3, &mut rng);
            if linalg::transpose(&m) == m && is_orthogonal_projective(&m) {
                continue;
            }
            tried += 1;
            let g = ProjLinearElement::new(&a, vec![m, linalg::identity(3)])?;
            moved += !proportional(&g.act_on_poly(&f)?, &f) as usize;
        }
        verdict(moved == 20, format!("{moved}/20 non-scalar (A, id) move F"))
    });
    ck.check("degenerate-normal-forms-singular", || {
        let a = amb(P2P2)?;
        let s1 = smooth(&a, "x0*y0 + x1*y1")?;
        let s2 = smooth(&a, "x0*y0")?;
        verdict(!s1 && !s2, "diag(1,1,0) and diag(1,0,0) give singular hypersurfaces")
    });
}

fn conic_param() -> Result<Vec<Vec<MultiPoly>>> {
    let p1 = amb("P1(u,v)")?;
    let c = polys(&p1, &["u^2", "u*v", "v^2"])?;
    Ok(vec![c.clone(), c])
}

const ISO26_FORMS: [&str; 4] = ["x1*y2 - x2*y1", "x2*y0 - x0*y2", "x0*y1 - x1*y0", "x1*y1 - x2*y0"];
const ISO26_T: &str = "x1*y1 + x2*y0 - 2*x0*y2";

fn ideal_of_param(tgt: &Arc<Ambient>, src: &str, comps: &[&str]) -> Result<Ideal> {
    let s = amb(src)?;
    map(&s, tgt, comps)?.image_ideal(&Subvariety::whole(&s))
}

fn iso26_vanishing_forms(ck: &mut Checks) {
    ck.check("dimension-4", || {
        let forms = vanishing_forms(&amb(P2P2)?, &[1, 1], &conic_param()?)?;
        verdict(forms.len() == 4, format!("dimension {}", forms.len()))
    });
    ck.check("span-equals-printed-generators", || {
        let a = amb(P2P2)?;
        let forms = vanishing_forms(&a, &[1, 1], &conic_param()?)?;
        verdict(canonical_span(&polys(&a, &ISO26_FORMS)?) == forms, "span matches the four printed forms")
    });
    let mut rng = ck.rng("antisym");
    ck.check("antisymmetric-combinations-singular-on-diagonal", || {
        let a = amb(P2P2)?;
        let th = polys(&a, &THETA)?;
        let mut ok = 0;
        for _ in 0..20 {
            let c: Vec<i64> = loop {
                let c: Vec<i64> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, -4..=4)).collect();
                if c.iter().any(|&x| x != 0) {
                    break c;
                }
            };
            let g = th.iter().zip(&c).fold(MultiPoly::zero(&a), |acc, (t, &k)| &acc + &t.scale(&Scalar::int(k)));
            let pt: Vec<Scalar> = c.iter().chain(&c).map(|&v| Scalar::int(v)).collect();
            ok += (g.eval(&pt).is_zero() && gradient_at(&g, &pt).iter().all(Scalar::is_zero)) as usize;
        }
        verdict(ok == 20, format!("{ok}/20 combinations singular at (a, a)"))
    });
    ck.check("T-smooth-and-through-C", || {
        let a = amb(P2P2)?;
        let t = poly(&a, ISO26_T)?;
        verdict(smooth(&a, ISO26_T)? && pullback(&t, &conic_param()?)?.is_zero(), format!("T = {ISO26_T}"))
    });
    ck.check("T-meets-diagonal-in-C", || {
        let a = amb(P2P2)?;
        let cut = ideal(&a, &[ISO26_T, THETA[0], THETA[1], THETA[2]])?.saturate_irrelevant()?;
        let c = ideal_of_param(&a, "P1(u,v)", &["u^2", "u*v", "v^2", "u^2", "u*v", "v^2"])?;
        verdict(cut.equals(&c)?, "saturated T + I(Δ) equals the ideal of the image of [u:v] -> ([u²:uv:v²], [u²:uv:v²])")
    });
}

fn theta_section(a2: &Arc<Ambient>, a3: &Arc<Ambient>) -> Result<RationalMap> {
    let mut comps = vec!["x0", "x1", "x2", "y0", "y1", "y2"];
    comps.extend(THETA);
    map(a2, a3, &comps)
}

fn iso26_theta_blowup(ck: &mut Checks) {
    ck.check("theta-base-locus-is-diagonal", || {
        let a = amb(P2P2)?;
        let theta = map(&a, &amb("P2(z0,z1,z2)")?, &THETA)?;
        let diag = ideal_of_param(&a, "P2(t0,t1,t2)", &["t0", "t1", "t2", "t0", "t1", "t2"])?;
        verdict(theta.base_locus()?.ideal().equals(&diag)?, "base locus of θ equals the image of x -> (x, x)")
    });
    ck.check("graph-satisfies-W", || {
        let a2 = amb(P2P2)?;
        let a3 = amb(P2P2P2)?;
        let s = theta_section(&a2, &a3)?;
        let w = polys(&a3, &["x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"])?;
        let printed = polys(&a3, &["x0*z2 + x1*z1 + x2*z0", "y1*z2 + y1*z1 + y2*z0"])?;
        let ok = w.iter().map(|f| s.pullback(f)).collect::<Result<Vec<_>>>()?.iter().all(MultiPoly::is_zero);
        let printed_fails = printed.iter().map(|f| s.pullback(f)).collect::<Result<Vec<_>>>()?.iter().all(|p| !p.is_zero());
        verdict(
            ok && printed_fails,
            "(x, y, x×y) satisfies Σx_i z_i = Σy_i z_i = 0; the printed equations of W do not vanish on it",
        )
    });
    ck.check("W-smooth", || {
        let a3 = amb(P2P2P2)?;
        let w = variety(&a3, &["x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"])?;
        verdict(w.is_smooth(2)?.smooth, "W is a smooth complete intersection")
    });
    ck.check("epsilon-contracts-exceptional-divisor", || {
        let a2 = amb(P2P2)?;
        let a3 = amb(P2P2P2)?;
        let wi = ideal(&a3, &["x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"])?;
        let eps = map(&a3, &a2, &["x0", "x1", "x2", "y0", "y1", "y2"])?.restricted(&wi)?;
        let mut e = vec!["x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"];
        e.extend(THETA);
        let rep = eps.check_contraction(&variety(&a3, &e)?, &variety(&a2, &THETA)?)?;
        verdict(rep.holds(), format!("ε(ε⁻¹(Δ)) = Δ, dimension {:?} -> {:?}", rep.source_dim, rep.image_dim))
    });
    ck.check("section-inverts-epsilon", || {
        let a2 = amb(P2P2)?;
        let a3 = amb(P2P2P2)?;
        let wi = ideal(&a3, &["x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"])?;
        let eps = map(&a3, &a2, &["x0", "x1", "x2", "y0", "y1", "y2"])?.restricted(&wi)?;
        let s = theta_section(&a2, &a3)?;
        let on_w = s.compose(&eps)?.equal_mod_ideal(&RationalMap::identity(&a3), &wi)?;
        let on_base = eps.compose(&s)?.equal_mod_ideal(&RationalMap::identity(&a2), &Ideal::zero(&a2))?;
        verdict(on_w && on_base, "s∘ε ≡ id mod I(W) and ε∘s = id")
    });
}

fn f0_variety(a3: &Arc<Ambient>) -> Result<Subvariety> {
    variety(a3, &["x0*y0 + x1*y1 + x2*y2", "x0*z0 + x1*z1 + x2*z2", "y0*z0 + y1*z1 + y2*z2"])
}

fn gamma(a2: &Arc<Ambient>) -> Result<Subvariety> {
    let mut g = THETA.to_vec();
    g.push("x0^2 + x1^2 + x2^2");
    variety(a2, &g)
}

fn t6_po3_action(ck: &mut Checks) {
    let mut rng = ck.rng("po3");
    let samples: Vec<Matrix> = (0..SAMPLES).map(|_| random_po3(&mut rng)).collect();
    let s1 = samples.clone();
    ck.check("samples-orthogonal", move || {
        let ok = s1.iter().filter(|m| is_orthogonal_projective(m)).count();
        verdict(ok == SAMPLES, format!("{ok}/{SAMPLES} satisfy ᵗM·M ∝ id"))
    });
    let s2 = samples.clone();
    ck.check("MMM-preserves-F0", move || {
        let a3 = amb(P2P2P2)?;
        let f0 = f0_variety(&a3)?;
        let mut ok = 0;
        for m in &s2 {
            ok += ProjLinearElement::diagonal(&a3, m)?.preserves(&f0)? as usize;
        }
        verdict(ok == SAMPLES, format!("{ok}/{SAMPLES}"))
    });
    let s3 = samples;
    ck.check("MM-preserves-T-and-Gamma", move || {
        let a2 = amb(P2P2)?;
        let t = variety(&a2, &[DOT])?;
        let g = gamma(&a2)?;
        let mut ok = 0;
        for m in &s3 {
            let e = ProjLinearElement::diagonal(&a2, m)?;
            ok += (e.preserves(&t)? && e.preserves(&g)?) as usize;
        }
        verdict(ok == SAMPLES, format!("{ok}/{SAMPLES}"))
    });
    let mut rng = ck.rng("control");
    ck.check("non-orthogonal-controls-fail", || {
        let a3 = amb(P2P2P2)?;
        let f0 = f0_variety(&a3)?;
        let (mut tried, mut moved) = (0, 0);
        while tried < 20 {
            let m = random_pgl(3, &mut rng);
            if is_orthogonal_projective(&m) {
                continue;
            }
            tried += 1;
            moved += !ProjLinearElement::diagonal(&a3, &m)?.preserves(&f0)? as usize;
        }
        verdict(moved == 20, format!("{moved}/20 non-orthogonal (A, A, A) move F0"))
    });
    ck.check("symmetric-is-not-orthogonal", || {
        let a2 = amb(P2P2)?;
        let m = linalg::from_ints(&[&[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        let moved = !ProjLinearElement::diagonal(&a2, &m)?.preserves(&gamma(&a2)?)?;
        verdict(
            moved && linalg::transpose(&m) == m,
            "a symmetric M need not preserve Γ; PO3 is ᵗM·M = id, not M = ᵗM as printed",
        )
    });
}

fn tau_t6() -> Result<(Arc<Ambient>, Arc<Ambient>, RationalMap)> {
    let src = amb("P1(a,b) * P1(c,d)")?.gaussian();
    let tgt = amb(P2P2)?.gaussian();
    let tau = map(
        &src,
        &tgt,
        &["a^2 - b^2", "i*(a^2 + b^2)", "2*a*b", "a*c - b*d", "i*(a*c + b*d)", "a*d + b*c"],
    )?;
    Ok((src, tgt, tau))
}

fn t6_tau_parametrization(ck: &mut Checks) {
    ck.check("image-in-T", || {
        let (_, tgt, tau) = tau_t6()?;
        verdict(tau.pullback(&poly(&tgt, DOT)?)?.is_zero(), "Σ x_i y_i ∘ τ = 0")
    });
    ck.check("image-over-C1", || {
        let (_, tgt, tau) = tau_t6()?;
        verdict(tau.pullback(&poly(&tgt, "x0^2 + x1^2 + x2^2")?)?.is_zero(), "Σ x_i² ∘ τ = 0")
    });
    ck.check("diagonal-onto-Gamma", || {
        let (src, _, tau) = tau_t6()?;
        let line = amb("P1(a,b)")?.gaussian();
        let diag = map(&line, &src, &["a", "b", "a", "b"])?;
        let g = tau.compose(&diag)?;
        let (x, y) = (&g.components()[0], &g.components()[1]);
        let prop = (0..3).all(|i| (0..3).all(|j| (&x[i] * &y[j]) == (&x[j] * &y[i])));
        verdict(prop, "τ(p, p) has x ∝ y, so lies on Γ")
    });
    ck.check("ga-curve-formula", || {
        let (src, tgt, tau) = tau_t6()?;
        let line = amb("P1(a,b)")?.gaussian();
        let c = tau.compose(&map(&line, &src, &["a", "b", "a", "b - a"])?)?;
        let printed = map(
            &line,
            &tgt,
            &["a^2 - b^2", "i*(a^2 + b^2)", "2*a*b", "a^2 + a*b - b^2", "i*(a^2 + b^2 - a*b)", "2*a*b - a^2"],
        )?;
        verdict(c.equal_mod_ideal(&printed, &Ideal::zero(&line))?, "τ([a:b],[a:b-a]) matches the printed parametrization")
    });
}

fn t6_crossproduct(ck: &mut Checks) {
    let build = || -> Result<(Arc<Ambient>, Arc<Ambient>, RationalMap)> {
        let a2 = amb(P2P2)?;
        let a3 = amb(P2P2P2)?;
        let tau = theta_section(&a2, &a3)?.restricted(&ideal(&a2, &[DOT])?)?;
        Ok((a2, a3, tau))
    };
    ck.check("image-in-F0", || {
        let (a2, a3, tau) = build()?;
        let t = ideal(&a2, &[DOT])?;
        let mut ok = true;
        for g in f0_variety(&a3)?.ideal().generators() {
            ok &= t.contains(&tau.pullback(g)?)?;
        }
        verdict(ok, "each equation of F0 pulls back into (Σ x_i y_i)")
    });
    let mut rng = ck.rng("equivariance");
    ck.check("po3-equivariance", || {
        let (a2, a3, tau) = build()?;
        let mut ok = 0;
        for _ in 0..SAMPLES {
            let m = random_po3(&mut rng);
            ok += equivariance_check(&tau, &ProjLinearElement::diagonal(&a2, &m)?, &ProjLinearElement::diagonal(&a3, &m)?)? as usize;
        }
        verdict(ok == SAMPLES, format!("{ok}/{SAMPLES}: (Mx) × (My) ∝ M(x × y)"))
    });
    let mut rng = ck.rng("control");
    ck.check("non-orthogonal-controls-fail", || {
        let (a2, a3, tau) = build()?;
        let (mut tried, mut failed) = (0, 0);
        while tried < 20 {
            let m = random_pgl(3, &mut rng);
            if is_orthogonal_projective(&m) {
                continue;
            }
            tried += 1;
            failed += !equivariance_check(&tau, &ProjLinearElement::diagonal(&a2, &m)?, &ProjLinearElement::diagonal(&a3, &m)?)? as usize;
        }
        verdict(failed == 20, format!("{failed}/20 non-orthogonal samples break equivariance"))
    });
    ck.check("base-locus-is-Gamma", || {
        let (a2, _, tau) = build()?;
        verdict(tau.base_locus()?.same_as(&gamma(&a2)?)?, "τ is undefined exactly on Γ")
    });
    ck.check("image-is-F0", || {
        let (_, a3, tau) = build()?;
        let img = tau.image_ideal(&Subvariety::whole(tau.source()))?;
        verdict(img.equals(f0_variety(&a3)?.ideal())?, "closure of τ(T) is F0")
    });
}
