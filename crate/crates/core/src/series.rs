//! Multivariate formal power series in `T_1..T_n`, truncated at a total
//! degree bound `N`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::motivic::{CycloRat, LRat};

/// Coefficient ring for [`MSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse, if it exists in this representation.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coeff for LRat {
    fn zero() -> Self {
        LRat::zero()
    }
    fn one() -> Self {
        LRat::one()
    }
    fn is_zero(&self) -> bool {
        LRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl Coeff for CycloRat {
    fn zero() -> Self {
        CycloRat::zero()
    }
    fn one() -> Self {
        CycloRat::one()
    }
    fn is_zero(&self) -> bool {
        CycloRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        CycloRat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        CycloRat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        CycloRat::mul(self, rhs)
    }
    fn try_inverse(&self) -> Option<Self> {
        CycloRat::try_inverse(self)
    }
}

/// All exponent vectors in `n` variables with total degree `<= bound`,
/// ordered by total degree, then lexicographically.
pub fn exponents_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    (0..=bound).flat_map(|d| exponents_of_degree(n, d)).collect()
}

/// Exponent vectors of total degree exactly `d`, lexicographic.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=d {
            cur.push(first);
            go(n, d - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Truncated power series with a sparse coefficient map. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct MSeries<C: Coeff = LRat> {
    vars: usize,
    bound: u32,
    coeffs: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MSeries<C> {
    pub fn zero(vars: usize, bound: u32) -> Self {
        Self {
            vars,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize, bound: u32) -> Self {
        Self::constant(vars, bound, C::one())
    }

    pub fn constant(vars: usize, bound: u32, c: C) -> Self {
        let mut s = Self::zero(vars, bound);
        s.set(vec![0; vars], c).expect("constant term is within any bound");
        s
    }

    /// Builds from `(exponent, coefficient)` pairs; terms above the bound
    /// are dropped, repeated exponents are summed.
    pub fn from_terms(vars: usize, bound: u32, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut s = Self::zero(vars, bound);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent length");
            if total(&e) <= bound {
                let cur = s.coefficient(&e).expect("checked bound");
                s.set(e, cur.add(&c)).expect("checked bound");
            }
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Nonzero terms in map order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.coeffs.iter()
    }

    fn check_exponent(&self, e: &[u32]) -> Result<()> {
        if e.len() != self.vars || total(e) > self.bound {
            return Err(Error::ExponentOutOfBound {
                exponent: e.to_vec(),
                bound: self.bound,
            });
        }
        Ok(())
    }

    pub fn set(&mut self, e: Vec<u32>, c: C) -> Result<()> {
        self.check_exponent(&e)?;
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
        Ok(())
    }

    /// Coefficient of `T^e`; zero if absent.
    pub fn coefficient(&self, e: &[u32]) -> Result<C> {
        self.check_exponent(e)?;
        Ok(self.coeffs.get(e).cloned().unwrap_or_else(C::zero))
    }

    fn check_shape(&self, rhs: &Self) -> Result<()> {
        if self.vars != rhs.vars || self.bound != rhs.bound {
            return Err(Error::SeriesMismatch {
                lhs_vars: self.vars,
                lhs_bound: self.bound,
                rhs_vars: rhs.vars,
                rhs_bound: rhs.bound,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            let sum = out.coeffs.get(e).map_or_else(|| c.clone(), |a| a.add(c));
            out.set(e.clone(), sum)?;
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_shape(rhs)?;
        let lhs_terms: Vec<_> = self.coeffs.iter().collect();
        let targets = exponents_up_to(self.vars, self.bound);
        let values: Vec<C> = targets
            .par_iter()
            .map(|target| {
                let mut acc = C::zero();
                for (e, a) in &lhs_terms {
                    if !dominated(e, target) {
                        continue;
                    }
                    let rest: Vec<u32> = target.iter().zip(e.iter()).map(|(t, x)| t - x).collect();
                    if let Some(b) = rhs.coeffs.get(&rest) {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        Ok(Self::collect(self.vars, self.bound, targets, values))
    }

    fn collect(vars: usize, bound: u32, targets: Vec<Vec<u32>>, values: Vec<C>) -> Self {
        let coeffs = targets
            .into_iter()
            .zip(values)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { vars, bound, coeffs }
    }

    /// `self / divisor`, solved degree by degree:
    /// `Q_e = (A_e - Σ_{0 < f <= e} B_f Q_{e-f}) / B_0`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_shape(divisor)?;
        let b0_inv = divisor
            .coeffs
            .get(&vec![0; self.vars])
            .and_then(Coeff::try_inverse)
            .ok_or(Error::SeriesNotInvertible)?;
        let divisor_terms: Vec<(&Vec<u32>, &C)> = divisor
            .coeffs
            .iter()
            .filter(|(e, _)| total(e) > 0)
            .collect();
        let mut quotient: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for d in 0..=self.bound {
            let level = exponents_of_degree(self.vars, d);
            let values: Vec<C> = level
                .par_iter()
                .map(|target| {
                    let mut acc = self.coeffs.get(target).cloned().unwrap_or_else(C::zero);
                    for (f, b) in &divisor_terms {
                        if !dominated(f, target) {
                            continue;
                        }
                        let rest: Vec<u32> = target.iter().zip(f.iter()).map(|(t, x)| t - x).collect();
                        if let Some(q) = quotient.get(&rest) {
                            acc = acc.sub(&b.mul(q));
                        }
                    }
                    acc.mul(&b0_inv)
                })
                .collect();
            for (e, c) in level.into_iter().zip(values) {
                if !c.is_zero() {
                    quotient.insert(e, c);
                }
            }
        }
        Ok(Self {
            vars: self.vars,
            bound: self.bound,
            coeffs: quotient,
        })
    }

    /// Multiplicative inverse up to the truncation bound.
    pub fn invert(&self) -> Result<Self> {
        Self::one(self.vars, self.bound).div(self)
    }

    /// The same series truncated at a smaller bound.
    pub fn restrict(&self, bound: u32) -> Self {
        assert!(bound <= self.bound, "restrict can only lower the bound");
        Self {
            vars: self.vars,
            bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| total(e) <= bound)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping any that become zero.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MSeries<D> {
        MSeries {
            vars: self.vars,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

fn dominated(small: &[u32], big: &[u32]) -> bool {
    small.iter().zip(big).all(|(a, b)| a <= b)
}

impl<C: Coeff> fmt::Debug for MSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MSeries")
            .field("vars", &self.vars)
            .field("bound", &self.bound)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
