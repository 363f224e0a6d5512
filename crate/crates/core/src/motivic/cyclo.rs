//! Fractions whose denominators are products of `L` and cyclotomic
//! polynomials. Every term of the quiver generating function lives here, and
//! reduction needs only exact division by monic polynomials, never a gcd.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::lrat::LRat;
use super::poly::Poly;

const CACHE_SIZE: usize = 256;

static CYCLOTOMIC: [OnceLock<Poly>; CACHE_SIZE] = [const { OnceLock::new() }; CACHE_SIZE];

/// The `d`-th cyclotomic polynomial `Φ_d(L)`, `d >= 1`.
pub fn cyclotomic(d: u32) -> Poly {
    assert!(d >= 1, "cyclotomic index starts at 1");
    if (d as usize) < CACHE_SIZE {
        CYCLOTOMIC[d as usize]
            .get_or_init(|| compute_cyclotomic(d))
            .clone()
    } else {
        compute_cyclotomic(d)
    }
}

fn compute_cyclotomic(d: u32) -> Poly {
    let mut acc = Poly::l_pow_minus_one(d as usize);
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        acc = acc
            .div_exact(&cyclotomic(e))
            .expect("Φ_e divides L^d - 1 for e | d");
    }
    acc
}

/// Divisors of `j`, ascending.
pub fn divisors(j: u32) -> impl Iterator<Item = u32> {
    (1..=j).filter(move |d| j.is_multiple_of(*d))
}

/// `num * L^shift / Π_d Φ_d^{e_d}` in lowest terms: `num(0) != 0` unless
/// `num = 0`, and no `Φ_d` with positive exponent divides `num`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRat {
    num: Poly,
    shift: i64,
    den: BTreeMap<u32, u32>,
}

impl CycloRat {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            shift: 0,
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::l_power(0)
    }

    pub fn l_power(k: i64) -> Self {
        Self {
            num: Poly::one(),
            shift: k,
            den: BTreeMap::new(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(c)))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::reduced(p, 0, BTreeMap::new())
    }

    /// `L^shift / Π_j (L^j - 1)` for the given `j`s (repeats allowed).
    pub fn l_power_over_l_minus_one_products(shift: i64, js: impl IntoIterator<Item = u32>) -> Self {
        let mut den = BTreeMap::new();
        for j in js {
            for d in divisors(j) {
                *den.entry(d).or_insert(0) += 1;
            }
        }
        Self {
            num: Poly::one(),
            shift,
            den,
        }
    }

    fn reduced(mut num: Poly, mut shift: i64, mut den: BTreeMap<u32, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let v = num.valuation();
        if v > 0 {
            num = num.shift_down(v);
            shift += v as i64;
        }
        for (&d, e) in den.iter_mut() {
            if num.degree() == Some(0) {
                break;
            }
            let phi = cyclotomic(d);
            while *e > 0 {
                match num.div_exact(&phi) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        Self { num, shift, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (&d, &e) in &rhs.den {
            let slot = den.entry(d).or_insert(0);
            *slot = (*slot).max(e);
        }
        let shift = self.shift.min(rhs.shift);
        let lift = |x: &Self| {
            let mut n = x.num.shift_up((x.shift - shift) as usize);
            for (&d, &e) in &den {
                let missing = e - x.den.get(&d).copied().unwrap_or(0);
                if missing > 0 {
                    n = &n * &cyclotomic(d).pow(missing);
                }
            }
            n
        };
        let num = &lift(self) + &lift(rhs);
        Self::reduced(num, shift, den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            shift: self.shift,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (&d, &e) in &rhs.den {
            *den.entry(d).or_insert(0) += e;
        }
        // only factors of one side's denominator can cancel against the
        // other side's numerator
        let num = &self.num * &rhs.num;
        Self::reduced(num, self.shift + rhs.shift, den)
    }

    /// Inverse when the numerator is `±1`, the only case the engine needs.
    pub fn try_inverse(&self) -> Option<Self> {
        let unit = self.num.degree() == Some(0) && self.num.coeff(0).magnitude().is_one();
        if !unit {
            return None;
        }
        let mut num = self.num.clone();
        for (&d, &e) in &self.den {
            num = &num * &cyclotomic(d).pow(e);
        }
        Some(Self {
            num,
            shift: -self.shift,
            den: BTreeMap::new(),
        })
    }

    /// Multiplies by `L^k`.
    pub fn times_l_power(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            shift: self.shift + k,
            ..self.clone()
        }
    }

    /// Polynomial coefficients when the value lies in `Z[L]`.
    pub fn as_polynomial(&self) -> Option<Vec<BigInt>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if !self.den.is_empty() || self.shift < 0 {
            return None;
        }
        Some(self.num.shift_up(self.shift as usize).into_coeffs())
    }

    pub fn to_lrat(&self) -> LRat {
        if self.is_zero() {
            return LRat::zero();
        }
        let mut den = Poly::one();
        for (&d, &e) in &self.den {
            den = &den * &cyclotomic(d).pow(e);
        }
        let num = if self.shift >= 0 {
            self.num.shift_up(self.shift as usize)
        } else {
            den = den.shift_up(self.shift.unsigned_abs() as usize);
            self.num.clone()
        };
        LRat::from_coprime_monic(num, den)
    }
}

impl fmt::Display for CycloRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_lrat())
    }
}

impl From<&CycloRat> for LRat {
    fn from(c: &CycloRat) -> LRat {
        c.to_lrat()
    }
}

impl Default for CycloRat {
    fn default() -> Self {
        Self::zero()
    }
}
