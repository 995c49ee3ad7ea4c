//! Multivariate gcd over ℚ by recursive primitive remainder sequences.

use super::mono::Mono;
use super::poly::MultiPoly;

/// Coefficients of `f` viewed as a polynomial in variable `v`.
fn coeffs_in(f: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let d = f.degree_in(v) as usize;
    let mut out = vec![MultiPoly::zero(f.ambient()); d + 1];
    for (m, c) in f.terms() {
        let mut mm = *m;
        let e = mm.0[v] as usize;
        mm.0[v] = 0;
        out[e].add_term(mm, c);
    }
    out
}

/// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
pub fn exact_div(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    let (gm, gc) = g.terms().iter().next_back()?;
    let mut r = f.clone();
    let mut q = MultiPoly::zero(f.ambient());
    while let Some((m, c)) = r.terms().iter().next_back() {
        if !gm.divides(m) {
            return None;
        }
        let t = gm.quotient_of(m);
        let k = c / gc;
        q.add_term(t, &k);
        r = &r - &g.mul_mono(&t).scale(&k);
    }
    Some(q)
}

fn normalize(f: MultiPoly) -> MultiPoly {
    f.primitive()
}

fn content_in(f: &MultiPoly, v: usize) -> MultiPoly {
    coeffs_in(f, v).iter().filter(|c| !c.is_zero()).fold(MultiPoly::zero(f.ambient()), |acc, c| gcd(&acc, c))
}

fn lowest_var(f: &MultiPoly) -> Option<usize> {
    let s = f.support();
    (s != 0).then(|| s.trailing_zeros() as usize)
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = coeffs_in(b, v).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coeffs_in(&r, v).pop().unwrap();
        let shift = Mono::var(v);
        let mut sh = Mono::one();
        for _ in 0..dr - db {
            sh = sh.mul(&shift);
        }
        r = &(&lb * &r) - &(&lr * &b.mul_mono(&sh));
    }
    r
}

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive leading coefficient. Polynomials with non-rational coefficients
/// are treated as coprime.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return normalize(g.clone());
    }
    if g.is_zero() {
        return normalize(f.clone());
    }
    let one = MultiPoly::one(f.ambient());
    if !f.is_rational() || !g.is_rational() || f.as_constant().is_some() || g.as_constant().is_some() {
        return one;
    }
    let v = lowest_var(f).min(lowest_var(g)).unwrap();
    let (inf, ing) = (f.involves(v), g.involves(v));
    if !inf {
        return gcd(f, &content_in(g, v));
    }
    if !ing {
        return gcd(&content_in(f, v), g);
    }
    let (cf, cg) = (content_in(f, v), content_in(g, v));
    let c = gcd(&cf, &cg);
    // integer content is stripped too; the polynomial contents are primitive
    let mut a = exact_div(f, &cf).unwrap().primitive();
    let mut b = exact_div(g, &cg).unwrap().primitive();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            b = one.clone();
            break;
        }
        a = b;
        let cr = content_in(&r, v);
        b = exact_div(&r, &cr).unwrap().primitive();
    }
    let cb = content_in(&b, v);
    let pb = if cb.is_zero() { b } else { exact_div(&b, &cb).unwrap() };
    normalize(&c * &pb)
}

/// Gcd of a list; zero for an empty list.
pub fn gcd_all(fs: &[MultiPoly]) -> Option<MultiPoly> {
    let first = fs.first()?;
    Some(fs.iter().fold(MultiPoly::zero(first.ambient()), |acc, f| gcd(&acc, f)))
}

/// Divides every entry by their common gcd (no-op when the gcd is constant).
pub fn cancel_common(fs: &[MultiPoly]) -> Vec<MultiPoly> {
    match gcd_all(fs) {
        Some(g) if !g.is_zero() && g.as_constant().is_none() => {
            fs.iter().map(|f| exact_div(f, &g).expect("gcd divides")).collect()
        }
        _ => fs.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ambient;

    #[test]
    fn gcd_of_products() {
        let a = Ambient::parse("P1(x0,x1) * P1(y0,y1)").unwrap();
        let p = |s: &str| MultiPoly::parse(&a, s).unwrap();
        let h = p("x0*y1 - x1*y0");
        let f = &h * &p("x0 + 2*y0");
        let g = &h * &p("x1*y1 - y0^2");
        assert_eq!(gcd(&f, &g), h.primitive());
    }

    #[test]
    fn coprime_gives_one() {
        let a = Ambient::parse("P2(x,y,z)").unwrap();
        let p = |s: &str| MultiPoly::parse(&a, s).unwrap();
        assert_eq!(gcd(&p("x^2+y"), &p("x+z")), p("1"));
    }

    #[test]
    fn exact_division() {
        let a = Ambient::parse("P2(x,y,z)").unwrap();
        let p = |s: &str| MultiPoly::parse(&a, s).unwrap();
        assert_eq!(exact_div(&p("x^2 - y^2"), &p("x+y")), Some(p("x-y")));
        assert_eq!(exact_div(&p("x^2 + y^2"), &p("x+y")), None);
    }
}
