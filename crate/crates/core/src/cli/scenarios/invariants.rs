use std::collections::BTreeSet;

use super::super::util::{amb, join, polys, verdict};
use super::super::{Anchor, Checks, Scenario};
use crate::catalog::{entries, export_json, export_toml, import_toml, query, verify_entry, AutClass, Filter};
use crate::chow::{is_balanced_class, ClassKind};
use crate::error::{Error, Result};
use crate::exactalg::forms::pullback;

pub fn scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "table1-invariants",
            anchor: Anchor { label: "3folds.MFS", quote: "Smooth Fano varieties being general fibres of klt Mori fibre spaces" },
            run: table1,
        },
        Scenario {
            name: "balanced-classes",
            anchor: Anchor { label: "Lemm:Balanced", quote: "of tridegree $(a,a,a)$" },
            run: balanced,
        },
    ]
}

fn ids(f: &Filter) -> BTreeSet<String> {
    query(f).into_iter().map(|e| e.id).collect()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn table1(ck: &mut Checks) {
    for e in entries() {
        ck.check(&format!("row/{}", e.id), || {
            let r = verify_entry(&e)?;
            verdict(r.matches(), format!("MM {}-{}: -K^3 = {} recomputed as {}", e.rho, e.mori_mukai, r.expected, r.recomputed))
        });
    }
    ck.check("nontrivial-automorphisms", || {
        let got = ids(&Filter { nontrivial_aut: Some(true), ..Filter::default() });
        verdict(got == set(&["3", "4", "6", "7"]), format!("rows {}", join(&got.into_iter().collect::<Vec<_>>())))
    });
    ck.check("pgl2-candidates", || {
        let got = ids(&Filter { aut_class: Some(AutClass::Pgl2Possible), ..Filter::default() });
        verdict(got == set(&["3", "6"]), format!("rows {}", join(&got.into_iter().collect::<Vec<_>>())))
    });
    ck.check("picard-rank-4", || {
        let got = ids(&Filter { rho: Some(4), ..Filter::default() });
        verdict(got == set(&["8"]), format!("rows {}", join(&got.into_iter().collect::<Vec<_>>())))
    });
    ck.check("export-round-trip", || {
        let all = entries();
        let back = import_toml(&export_toml(&all))?;
        let json: Vec<crate::catalog::FanoEntry> =
            serde_json::from_str(&export_json(&all)).map_err(|e| Error::Parse(e.to_string()))?;
        verdict(back == all && json == all, format!("{} rows survive TOML and JSON", all.len()))
    });
}

/// Degree on each factor of a curve given by a parametrization from `ℙ¹`.
fn curve_degrees(tgt: &str, comps: &[&[&str]]) -> Result<Vec<i64>> {
    let p1 = amb("P1(u,v)")?;
    let _ = amb(tgt)?;
    comps
        .iter()
        .map(|c| {
            let ps = polys(&p1, c)?;
            let nz = ps.iter().find(|p| !p.is_zero()).ok_or_else(|| Error::Invalid("zero component".into()))?;
            nz.total_degree().map(|d| d as i64).ok_or_else(|| Error::Invalid("zero component".into()))
        })
        .collect()
}

fn balanced(ck: &mut Checks) {
    let curves: [(&str, &str, &[&[&str]]); 3] = [
        ("diagonal-of-p1-cubed", "P1(x0,x1) * P1(y0,y1) * P1(z0,z1)", &[&["u", "v"], &["u", "v"], &["u", "v"]]),
        ("line-in-ptp2", "P2(x0,x1,x2) * P2(y0,y1,y2)", &[&["0", "u", "v"], &["0", "-v", "u"]]),
        ("conic-in-w", "P2(x0,x1,x2) * P2(y0,y1,y2)", &[&["u^2", "u*v", "v^2"], &["u^2", "u*v", "v^2"]]),
    ];
    for (name, tgt, comps) in curves {
        ck.check(&format!("curve/{name}"), move || {
            let d = curve_degrees(tgt, comps)?;
            verdict(is_balanced_class(&d, ClassKind::Curve, &[]), format!("degrees ({})", join(&d)))
        });
    }
    ck.check("line-in-ptp2-on-F", || {
        let p1 = amb("P1(u,v)")?;
        let f = polys(&amb("P2(x0,x1,x2) * P2(y0,y1,y2)")?, &["x0*y0 + x1*y1 + x2*y2"])?;
        let param = vec![polys(&p1, &["0", "u", "v"])?, polys(&p1, &["0", "-v", "u"])?];
        verdict(pullback(&f[0], &param)?.is_zero(), "([0:u:v], [0:-v:u]) lies on Σ x_i y_i = 0")
    });
    ck.check("anticanonical-divisors", || {
        let a = is_balanced_class(&[2, 2, 2], ClassKind::Divisor, &[-2, -2, -2]);
        let b = is_balanced_class(&[2, 2], ClassKind::Divisor, &[-2, -2]);
        verdict(a && b, "-K of (P1)^3 and of W are balanced")
    });
    ck.check("unbalanced-controls", || {
        let d = is_balanced_class(&[1, 0, 0], ClassKind::Divisor, &[-2, -2, -2]);
        let c = is_balanced_class(&[1, 0, 0], ClassKind::Curve, &[-2, -2, -2]);
        let c2 = is_balanced_class(&[1, 2], ClassKind::Curve, &[-2, -2]);
        verdict(!d && !c && !c2, "(1,0,0) is neither a balanced divisor nor a balanced curve; (1,2) is not balanced")
    });
    ck.check("cyclic-orbit-sums", || {
        let mut ok = true;
        for v in [[1i64, 0, 0], [2, 1, 0], [3, 1, 4], [0, 0, 5]] {
            let s: Vec<i64> = (0..3).map(|i| v[i] + v[(i + 1) % 3] + v[(i + 2) % 3]).collect();
            ok &= is_balanced_class(&s, ClassKind::Curve, &[]) && is_balanced_class(&s, ClassKind::Divisor, &[-2, -2, -2]);
        }
        verdict(ok, "summing a class over the cyclic permutation orbit of the factors gives (a,a,a)")
    });
}
