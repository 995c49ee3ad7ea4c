use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element of ℚ or ℚ(i).
///
/// Invariant: the `Gauss` variant always has a nonzero imaginary part, so a
/// Gaussian value with zero imaginary part is stored (and compares) as `Rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Scalar {
        if im.is_zero() {
            Scalar::Rat(re)
        } else {
            Scalar::Gauss(re, im)
        }
    }

    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::Rat(BigRational::from_integer(n))
    }

    pub fn i() -> Scalar {
        Scalar::Gauss(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> BigRational {
        match self {
            Scalar::Rat(r) => r.clone(),
            Scalar::Gauss(r, _) => r.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Rat(_) => BigRational::zero(),
            Scalar::Gauss(_, i) => i.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Gauss(..) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Gauss(r, i) => Scalar::Gauss(r.clone(), -i),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => None,
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Gauss(a, b) => {
                let n = a * a + b * b;
                Some(Scalar::new(a / &n, -(b / &n)))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer value when the scalar is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => Scalar::new(self.re() + o.re(), self.im() + o.im()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => Scalar::new(self.re() - o.re(), self.im() - o.im()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => {
                let (a, b, c, d) = (self.re(), self.im(), o.re(), o.im());
                Scalar::new(&a * &c - &b * &d, &a * &d + &b * &c)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Gauss(a, b) => {
                let im = if b.is_one() {
                    "i".to_string()
                } else if (-b).is_one() {
                    "-i".to_string()
                } else {
                    format!("{}*i", fmt_rat(b))
                };
                if a.is_zero() {
                    write!(f, "{im}")
                } else if b.is_negative() {
                    write!(f, "({}{})", fmt_rat(a), im)
                } else {
                    write!(f, "({}+{})", fmt_rat(a), im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_with_zero_imaginary_is_rational() {
        let z = &Scalar::i() * &Scalar::i();
        assert_eq!(z, Scalar::int(-1));
        assert!(z.is_rational());
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = Scalar::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(Scalar::frac(2, -4), Scalar::frac(-1, 2));
        assert_eq!(Scalar::frac(2, -4).to_string(), "-1/2");
    }
}
