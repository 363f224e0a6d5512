use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// An element of the localized Grothendieck ring, as a reduced fraction of
/// integer polynomials in `L`.
///
/// Canonical form: numerator and denominator are coprime over `Q`, their
/// coefficients share no common integer factor, and the denominator has a
/// positive leading coefficient. Zero is `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LRat {
    num: Poly,
    den: Poly,
}

impl LRat {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::normalize_scalars(num, den))
    }

    /// Builds from parts already known to be coprime over `Q` with a monic
    /// denominator.
    pub(crate) fn from_coprime_monic(num: Poly, den: Poly) -> Self {
        debug_assert!(den.leading_coeff().is_some_and(One::is_one));
        if num.is_zero() {
            return Self::zero();
        }
        Self { num, den }
    }

    fn normalize_scalars(num: Poly, den: Poly) -> Self {
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if c.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num.divide_by_scalar(&c),
                den: den.divide_by_scalar(&c),
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(c)))
    }

    pub fn from_poly(num: Poly) -> Self {
        Self { num, den: Poly::one() }
    }

    /// The Lefschetz class `L`.
    pub fn l() -> Self {
        Self::l_power(1)
    }

    /// `L^k` for any integer `k`; negative powers go to the denominator.
    pub fn l_power(k: i64) -> Self {
        let mono = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            Self {
                num: Poly::one(),
                den: mono,
            }
        }
    }

    /// Class of `GL_n`: `Π_{j=0}^{n-1} (L^n - L^j)`.
    pub fn gl_class(n: u32) -> Self {
        let n = n as usize;
        let top = Poly::monomial(BigInt::one(), n);
        let mut acc = Poly::one();
        for j in 0..n {
            acc = &acc * &(&top - &Poly::monomial(BigInt::one(), j));
        }
        Self::from_poly(acc)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_scalars(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &LRat) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = LRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Coefficients low-to-high when the value is a polynomial, i.e. the
    /// reduced denominator is the constant `1`.
    pub fn as_polynomial(&self) -> Option<Vec<BigInt>> {
        if self.den.is_one() {
            Some(self.num.coeffs().to_vec())
        } else {
            None
        }
    }

    /// Exact value at `L = q`.
    pub fn eval_at(&self, q: i64) -> Result<BigRational> {
        let x = BigInt::from(q);
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(Error::VanishingDenominator { root: q });
        }
        Ok(BigRational::new(self.num.eval(&x), d))
    }
}

impl Add for &LRat {
    type Output = LRat;

    fn add(self, rhs: &LRat) -> LRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return LRat::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        LRat::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &LRat {
    type Output = LRat;

    fn sub(self, rhs: &LRat) -> LRat {
        self + &(-rhs)
    }
}

impl Mul for &LRat {
    type Output = LRat;

    fn mul(self, rhs: &LRat) -> LRat {
        if self.is_zero() || rhs.is_zero() {
            return LRat::zero();
        }
        // cross-cancel first to keep the products small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.degree() == Some(0) {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        LRat::normalize_scalars(num, den)
    }
}

impl Neg for &LRat {
    type Output = LRat;

    fn neg(self) -> LRat {
        LRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LRat {
            type Output = LRat;
            fn $m(self, rhs: LRat) -> LRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LRat> for LRat {
            type Output = LRat;
            fn $m(self, rhs: &LRat) -> LRat {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LRat {
    type Output = LRat;

    fn neg(self) -> LRat {
        -&self
    }
}

impl From<Poly> for LRat {
    fn from(p: Poly) -> Self {
        LRat::from_poly(p)
    }
}

impl fmt::Display for LRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn r(n: &[i64], d: &[i64]) -> LRat {
        LRat::new(p(n), p(d)).unwrap()
    }

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&LRat::l() + &LRat::one(), LRat::from_poly(p(&[1, 1])));
        let lm1 = LRat::from_poly(p(&[-1, 1]));
        assert!((&lm1 * &lm1.inverse().unwrap()).is_one());
        assert!((&LRat::l_power(-1) * &LRat::l()).is_one());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(LRat::l().inverse().unwrap(), LRat::l_power(-1));
        let a = LRat::from_poly(p(&[0, -1, 1]));
        assert_eq!(a.inverse().unwrap(), r(&[1], &[0, -1, 1]));
        assert_eq!(LRat::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn l_power_examples() {
        assert!(LRat::l_power(0).is_one());
        assert_eq!(LRat::l_power(3), LRat::from_poly(p(&[0, 0, 0, 1])));
        assert_eq!(LRat::l_power(-2), r(&[1], &[0, 0, 1]));
    }

    #[test]
    fn polynomial_detection() {
        assert_eq!(r(&[-1, 0, 1], &[-1, 1]).as_polynomial(), Some(ints(&[1, 1])));
        assert_eq!(r(&[1], &[-1, 1]).as_polynomial(), None);
        assert_eq!(LRat::from_poly(p(&[0, 1, 1])).as_polynomial(), Some(ints(&[0, 1, 1])));
        assert_eq!(r(&[2, 2], &[-2]).as_polynomial(), Some(ints(&[-1, -1])));
    }

    #[test]
    fn evaluation() {
        assert_eq!(LRat::l_power(2).eval_at(2).unwrap(), BigRational::from_integer(4.into()));
        let gl2 = LRat::from_poly(&p(&[-1, 0, 1]) * &p(&[0, -1, 1]));
        assert_eq!(gl2.eval_at(2).unwrap(), BigRational::from_integer(6.into()));
        assert_eq!(
            r(&[1], &[-1, 1]).eval_at(1),
            Err(Error::VanishingDenominator { root: 1 })
        );
        assert_eq!(
            r(&[1], &[-1, 1]).eval_at(3).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn gl_class_examples() {
        assert!(LRat::gl_class(0).is_one());
        assert_eq!(LRat::gl_class(1), LRat::from_poly(p(&[-1, 1])));
        assert_eq!(
            LRat::gl_class(2),
            LRat::from_poly(&p(&[-1, 0, 1]) * &p(&[0, -1, 1]))
        );
    }

    #[test]
    fn canonical_sign_and_content() {
        assert_eq!(r(&[2], &[-2, -2]), r(&[-1], &[1, 1]));
        assert_eq!(r(&[0, 2], &[0, 4]), r(&[1], &[2]));
        assert_eq!(r(&[0], &[5, 1]), LRat::zero());
    }
}
