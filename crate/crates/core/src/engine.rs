//! The partition-sum generating function for the classes `[M(v, w)]`.
//!
//! For a framing `w` the nilpotent series is
//!
//! ```text
//! Φ_n(w) = Σ_{λ ∈ P^I} L^{κ_w(λ)} / [Z(λ)] · T^{|λ|}
//! κ_w(λ) = Σ_{e} <λ_{s(e)}, λ_{t(e)}> + Σ_i <1^{w_i}, λ_i>
//! [Z(λ)] = Π_i L^{<λ_i, λ_i>} Π_k Π_{j=1}^{m_k(λ_i)} (1 - L^{-j})
//! ```
//!
//! and `Σ_v [M(v, w)] L^{d_{v,w}} T^v = Φ_n(w) / Φ_n(0)` with
//! `d_{v,w} = dim g_v - dim V_{v,w}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::motivic::{CycloRat, LRat, Poly};
use crate::partition::{pairing, tuples_with_sizes, Partition, PartitionTuple};
use crate::quiver::{d_shift, DimVector, Quiver};
use crate::series::{exponents_up_to, MSeries};

/// The class of `M(v, w)` together with the raw series coefficient it was
/// read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotiveResult {
    pub quiver: Quiver,
    pub v: DimVector,
    pub w: DimVector,
    pub d_shift: i64,
    /// Coefficients of `[M(v, w)]` in ascending powers of `L`; empty for the
    /// empty variety.
    pub class_polynomial: Vec<BigInt>,
    /// The `T^v` coefficient of `Φ(w)`, i.e. `[M(v, w)] · L^{d_{v,w}}`.
    pub coefficient_raw: LRat,
}

impl MotiveResult {
    pub fn class(&self) -> Poly {
        Poly::new(self.class_polynomial.clone())
    }

    pub fn class_lrat(&self) -> LRat {
        LRat::from_poly(self.class())
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.class_polynomial.iter().any(Signed::is_negative)
    }
}

fn check_tuple(q: &Quiver, tuple: &PartitionTuple) -> Result<()> {
    if tuple.len() != q.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: q.vertex_count(),
            got: tuple.len(),
        });
    }
    Ok(())
}

/// `[Z(λ)]`, the class of the centralizer in `G_v` of a nilpotent element of
/// Jordan type `λ`.
pub fn centralizer_class(tuple: &PartitionTuple) -> LRat {
    let mut acc = LRat::one();
    for lambda in tuple.entries() {
        acc = &acc * &LRat::l_power(pairing(lambda, lambda) as i64);
        for (_, m) in lambda.multiplicities() {
            for j in 1..=m {
                acc = &acc * &(&LRat::one() - &LRat::l_power(-i64::from(j)));
            }
        }
    }
    acc
}

/// `κ_w(λ)`, the rank of the kernel bundle `ker ϱ(X)` over the nilpotent
/// orbit of type `λ`.
pub fn kappa(q: &Quiver, w: &DimVector, tuple: &PartitionTuple) -> Result<u64> {
    check_tuple(q, tuple)?;
    q.check(w)?;
    let arrows: u64 = q
        .arrows()
        .iter()
        .map(|&(s, t)| pairing(&tuple[s], &tuple[t]))
        .sum();
    let framing: u64 = tuple
        .entries()
        .iter()
        .zip(w.entries())
        .map(|(lambda, &wi)| pairing(&Partition::ones(wi), lambda))
        .sum();
    Ok(arrows + framing)
}

/// `L^κ / [Z(λ)]` with the `(1 - L^{-j}) = (L^j - 1) L^{-j}` factors kept
/// apart.
pub(crate) fn hua_term_factored(q: &Quiver, w: &DimVector, tuple: &PartitionTuple) -> Result<CycloRat> {
    let kappa = kappa(q, w, tuple)? as i64;
    let mut shift = kappa;
    let mut js = Vec::new();
    for lambda in tuple.entries() {
        shift -= pairing(lambda, lambda) as i64;
        for (_, m) in lambda.multiplicities() {
            for j in 1..=m {
                shift += i64::from(j);
                js.push(j);
            }
        }
    }
    Ok(CycloRat::l_power_over_l_minus_one_products(shift, js))
}

/// The summand of the partition-sum numerator attached to `λ`.
pub fn hua_term(q: &Quiver, w: &DimVector, tuple: &PartitionTuple) -> Result<LRat> {
    Ok(hua_term_factored(q, w, tuple)?.to_lrat())
}

pub(crate) fn nilpotent_series_factored(q: &Quiver, w: &DimVector, bound: u32) -> Result<MSeries<CycloRat>> {
    q.check(w)?;
    let exps = exponents_up_to(q.vertex_count(), bound);
    // fixed summation order per coefficient keeps results independent of
    // the thread count
    let values = exps
        .par_iter()
        .map(|e| {
            tuples_with_sizes(e).try_fold(CycloRat::zero(), |acc, tuple| {
                Ok(acc.add(&hua_term_factored(q, w, &tuple)?))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MSeries::from_terms(q.vertex_count(), bound, exps.into_iter().zip(values)))
}

/// `Φ_n(w) = Σ_λ hua_term(λ) T^{|λ|}` truncated at total degree `bound`.
pub fn nilpotent_series(q: &Quiver, w: &DimVector, bound: u32) -> Result<MSeries> {
    Ok(nilpotent_series_factored(q, w, bound)?.map_coeffs(CycloRat::to_lrat))
}

pub(crate) fn motive_series_factored(q: &Quiver, w: &DimVector, bound: u32) -> Result<MSeries<CycloRat>> {
    let numerator = nilpotent_series_factored(q, w, bound)?;
    let denominator = nilpotent_series_factored(q, &DimVector::zeros(q.vertex_count()), bound)?;
    numerator.div(&denominator)
}

/// `Φ(w) = Φ_n(w) / Φ_n(0) = Σ_v [M(v, w)] L^{d_{v,w}} T^v`.
pub fn motive_series(q: &Quiver, w: &DimVector, bound: u32) -> Result<MSeries> {
    Ok(motive_series_factored(q, w, bound)?.map_coeffs(CycloRat::to_lrat))
}

fn extract(q: &Quiver, v: &DimVector, w: &DimVector, series: &MSeries<CycloRat>) -> Result<MotiveResult> {
    q.check(v)?;
    let d = d_shift(q, v, w)?;
    let raw = series.coefficient(v.entries())?;
    let class = raw.times_l_power(-d);
    let class_polynomial = class.as_polynomial().ok_or_else(|| Error::PolynomialityViolated {
        v: v.entries().to_vec(),
        value: class.to_string(),
    })?;
    Ok(MotiveResult {
        quiver: q.clone(),
        v: v.clone(),
        w: w.clone(),
        d_shift: d,
        class_polynomial,
        coefficient_raw: raw.to_lrat(),
    })
}

/// `[M(v, w)]` as a polynomial in `L`, read off `Φ(w)` truncated at `|v|`.
pub fn motive_class(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<MotiveResult> {
    q.check(v)?;
    let series = motive_series_factored(q, w, v.total())?;
    extract(q, v, w, &series)
}

/// Classes for every `v` with `|v| <= bound`, in the order of
/// [`exponents_up_to`], from a single series expansion.
pub fn motive_table(q: &Quiver, w: &DimVector, bound: u32) -> Result<Vec<MotiveResult>> {
    let series = motive_series_factored(q, w, bound)?;
    exponents_up_to(q.vertex_count(), bound)
        .into_iter()
        .map(|v| extract(q, &DimVector(v), w, &series))
        .collect()
}

/// Nonzero `(power of L, coefficient)` pairs in ascending power.
pub fn betti_report(r: &MotiveResult) -> Vec<(u32, BigInt)> {
    r.class_polynomial
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c.clone()))
        .collect()
}
