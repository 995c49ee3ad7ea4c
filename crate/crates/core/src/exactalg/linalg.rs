//! Dense exact linear algebra over [`Scalar`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

pub fn from_ints(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b.iter()).fold(Scalar::zero(), |acc, (x, brow)| &acc + &(x * &brow[j])))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|r| r.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))).collect()
}

pub fn scale(a: &Matrix, c: &Scalar) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right kernel `{x : m·x = 0}`.
pub fn kernel(m: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -&a[r][f];
            }
            v
        })
        .collect()
}

pub fn det(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Scalar::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial coefficients `c₀..cₙ` of `det(λI − m)` (Faddeev–LeVerrier).
pub fn charpoly(m: &Matrix) -> Vec<Scalar> {
    let n = m.len();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut mk = vec![vec![Scalar::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr = (0..n).fold(Scalar::zero(), |acc, i| &acc + &am[i][i]);
        c[n - k] = -&(&tr / &Scalar::int(k as i64));
    }
    c
}

/// Positive divisors of `n` by trial division; `None` when `n` is too large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small: u64 = (&n).try_into().ok().filter(|&x: &u64| x <= 1_000_000_000_000)?;
    let mut ds = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small.is_multiple_of(d) {
            ds.push(BigInt::from(d));
            if d * d != small {
                ds.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    ds.sort();
    Some(ds)
}

/// Rational roots (with multiplicity) of a univariate rational polynomial
/// given by coefficients `c₀..cₙ`. `None` if coefficients are too large to
/// enumerate candidates.
pub fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(vec![]);
    }
    let den = c.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let mut ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        roots.push(BigRational::zero());
        ints.remove(0);
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().unwrap())?;
    let mut cands: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [p.clone(), -p.clone()] {
                let r = BigRational::new(s, q.clone());
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        loop {
            let (q, rem) = synthetic_div(&ints_to_rat(&ints), &r);
            if !rem.is_zero() {
                break;
            }
            roots.push(r.clone());
            let d = q.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
            ints = q.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect();
            if ints.len() <= 1 {
                break;
            }
        }
    }
    Some(roots)
}

fn ints_to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Divides `c₀..cₙ` by `(x − r)`; returns quotient coefficients and remainder.
fn synthetic_div(c: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = c.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut acc = BigRational::zero();
    for i in (0..=n).rev() {
        acc = &acc * r + &c[i];
        if i > 0 {
            q[i - 1] = acc.clone();
        }
    }
    (q, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn det_and_inverse() {
        let m = from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&m), Scalar::int(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
    }

    #[test]
    fn kernel_dimension() {
        let m = from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn charpoly_of_unipotent() {
        let m = from_ints(&[&[1, 0], &[1, 1]]);
        assert_eq!(charpoly(&m), vec![Scalar::int(1), Scalar::int(-2), Scalar::int(1)]);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x-1)^2 (2x+3)
        let r = rational_roots(&[q(3), q(-4), q(-1), q(2)]).unwrap();
        assert_eq!(r, vec![BigRational::new((-3).into(), 2.into()), q(1), q(1)]);
    }
}
