//! Exact additive character sums over `F_p` and the identities they satisfy.
//!
//! With `ψ(t) = ζ_p^t`, a sum `Σ_x ψ(f(x))` is stored as the vector of counts
//! `c[t] = #{x : f(x) = t}`; two count vectors name the same element of
//! `Z[ζ_p]` exactly when they differ by a multiple of the all-ones vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::count::{count_moment_fiber, CountMethod};
use super::field::{check_budget, checked_power, Fp, Odometer};
use super::rep::RepSpace;
use crate::error::Result;

#[derive(Debug, Clone, Eq)]
pub struct CycloCount {
    counts: Vec<i64>,
}

impl CycloCount {
    pub fn zero(p: u32) -> Self {
        Self {
            counts: vec![0; p as usize],
        }
    }

    /// The rational integer `n`.
    pub fn integer(p: u32, n: i64) -> Self {
        let mut c = Self::zero(p);
        c.counts[0] = n;
        c
    }

    /// `ζ_p^t`.
    pub fn root(p: u32, t: u32) -> Self {
        let mut c = Self::zero(p);
        c.counts[(t % p) as usize] = 1;
        c
    }

    pub fn from_counts(counts: Vec<i64>) -> Self {
        assert!(!counts.is_empty(), "count vector needs p entries");
        Self { counts }
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn p(&self) -> u32 {
        self.counts.len() as u32
    }

    /// Adds `ζ^t` in place; the unit of accumulation for character sums.
    pub fn add_root(&mut self, t: u32) {
        let p = self.counts.len();
        self.counts[t as usize % p] += 1;
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p(), rhs.p(), "mixed characteristics");
        Self {
            counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            counts: self.counts.iter().map(|a| a * k).collect(),
        }
    }

    /// Multiplication by `ζ^k`.
    pub fn rotate(&self, k: u32) -> Self {
        let p = self.counts.len();
        let mut out = vec![0; p];
        for (t, &c) in self.counts.iter().enumerate() {
            out[(t + k as usize) % p] = c;
        }
        Self { counts: out }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p(), rhs.p(), "mixed characteristics");
        let p = self.counts.len();
        let mut out = vec![0; p];
        for (i, &a) in self.counts.iter().enumerate() {
            for (j, &b) in rhs.counts.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Self { counts: out }
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.counts[1..].first().copied().unwrap_or(0);
        self.counts[1..].iter().all(|&x| x == c).then(|| self.counts[0] - c)
    }
}

/// Equality in `Z[ζ_p]`: the difference is a multiple of all-ones.
impl PartialEq for CycloCount {
    fn eq(&self, other: &Self) -> bool {
        if self.counts.len() != other.counts.len() {
            return false;
        }
        let d0 = self.counts[0] - other.counts[0];
        self.counts.iter().zip(&other.counts).all(|(a, b)| a - b == d0)
    }
}

/// A family of affine data over the base `F_p^m`:
/// `g1(x) = A x + a ∈ F_p^n` and `g2(x) = b·x + c ∈ F_p`.
#[derive(Debug, Clone)]
pub struct AffineFamily {
    pub n: usize,
    pub m: usize,
    /// `n` rows of `m + 1` entries; the last column is the constant term.
    pub g1: Vec<Vec<u32>>,
    /// `m + 1` entries; the last is the constant term.
    pub g2: Vec<u32>,
}

impl AffineFamily {
    pub fn random(n: usize, m: usize, p: u32, rng: &mut impl Rng) -> Self {
        Self {
            n,
            m,
            g1: (0..n).map(|_| (0..=m).map(|_| rng.gen_range(0..p)).collect()).collect(),
            g2: (0..=m).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    fn affine(row: &[u32], x: &[u32], f: Fp) -> u32 {
        let m = x.len();
        x.iter().zip(row).fold(row[m], |acc, (&xi, &r)| f.add(acc, f.mul(xi, r)))
    }

    pub fn g1_at(&self, x: &[u32], f: Fp) -> Vec<u32> {
        self.g1.iter().map(|row| Self::affine(row, x, f)).collect()
    }

    pub fn g2_at(&self, x: &[u32], f: Fp) -> u32 {
        Self::affine(&self.g2, x, f)
    }
}

fn dot(a: &[u32], b: &[u32], f: Fp) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Checks `Σ_{u ∈ F_p^n} ψ(<g1(x), u> + g2(x)) = p^n ψ(g2(x))` when
/// `g1(x) = 0` and `0` otherwise, for every `x` in the base.
pub fn charsum_linear_lemma(family: &AffineFamily, f: Fp) -> bool {
    let p = f.p();
    let qn = checked_power(p, family.n as u64).expect("small space") as i64;
    let mut base = Odometer::new(p, family.m);
    while let Some(x) = base.current() {
        let g1 = family.g1_at(x, f);
        let g2 = family.g2_at(x, f);
        let mut lhs = CycloCount::zero(p);
        let mut fiber = Odometer::new(p, family.n);
        while let Some(u) = fiber.current() {
            lhs.add_root(f.add(dot(&g1, u, f), g2));
            fiber.advance();
        }
        let rhs = if g1.iter().all(|&c| c == 0) {
            CycloCount::root(p, g2).scale(qn)
        } else {
            CycloCount::zero(p)
        };
        if lhs != rhs {
            return false;
        }
        base.advance();
    }
    true
}

/// All points of `F_p^n` in odometer order.
fn points(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut odo = Odometer::new(p, n);
    while let Some(x) = odo.current() {
        out.push(x.to_vec());
        odo.advance();
    }
    out
}

/// Unnormalized transform `F(g)(w) = Σ_u g(u) ψ(<u, w>)`, with `g` listed
/// over the points of `F_p^n` in odometer order.
pub fn fourier_transform(g: &[CycloCount], n: usize, f: Fp) -> Vec<CycloCount> {
    let pts = points(f.p(), n);
    assert_eq!(g.len(), pts.len(), "function must be given on every point");
    pts.iter()
        .map(|w| {
            pts.iter()
                .zip(g)
                .fold(CycloCount::zero(f.p()), |acc, (u, gu)| acc.add(&gu.rotate(dot(u, w, f))))
        })
        .collect()
}

/// Checks `F(F(g))(u) = p^n g(-u)` for `trials` random `Z[ζ_p]`-valued `g`.
pub fn fourier_inversion_check(n: usize, f: Fp, trials: usize, seed: u64) -> bool {
    let p = f.p();
    let pts = points(p, n);
    let index = |u: &[u32]| pts.iter().position(|x| x == u).expect("point of the space");
    let qn = pts.len() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        let g: Vec<CycloCount> = pts
            .iter()
            .map(|_| CycloCount::from_counts((0..p).map(|_| rng.gen_range(-3..=3)).collect()))
            .collect();
        let twice = fourier_transform(&fourier_transform(&g, n, f), n, f);
        pts.iter().zip(&twice).all(|(u, val)| {
            let neg: Vec<u32> = u.iter().map(|&c| f.neg(c)).collect();
            *val == g[index(&neg)].scale(qn)
        })
    })
}

/// Both sides of the fiber identity for `ξ = α·1_v`:
/// `|μ^{-1}(ξ)| · q^{dim g}` and `q^{dim V} · Σ_{ϱ(X)φ = 0} ψ(-α Σ tr X_i)`.
pub fn charsum_fiber_sides(space: &RepSpace, alpha: u32, budget: u128) -> Result<(CycloCount, CycloCount)> {
    let f = space.field;
    let p = f.p();
    let (n, g) = (space.dim(), space.dim_group());
    check_budget(p, (n + g) as u64, budget)?;
    let fiber = count_moment_fiber(space, alpha, CountMethod::Exhaustive, budget)?;
    let qg = checked_power(p, g as u64).expect("within budget");
    let lhs = CycloCount::integer(p, (fiber * qg) as i64);

    let mut sum = CycloCount::zero(p);
    let mut odo = Odometer::new(p, n + g);
    while let Some(c) = odo.current() {
        let phi = space.rep_from_coords(&c[..n]);
        let x = space.gl_from_coords(&c[n..]);
        let image = space.apply_rho_derivative(&x, &phi)?;
        if image.blocks.iter().all(|m| m.is_zero()) {
            let tr = x.iter().fold(0, |acc, m| f.add(acc, m.trace(f)));
            sum.add_root(f.neg(f.mul(alpha % p, tr)));
        }
        odo.advance();
    }
    let qn = checked_power(p, n as u64).expect("within budget") as i64;
    Ok((lhs, sum.scale(qn)))
}

/// True when both sides of [`charsum_fiber_sides`] agree and the character
/// sum is a rational integer.
pub fn charsum_fiber_identity(space: &RepSpace, alpha: u32, budget: u128) -> Result<bool> {
    let (lhs, rhs) = charsum_fiber_sides(space, alpha, budget)?;
    Ok(rhs.as_integer().is_some() && lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};
    use proptest::prelude::*;

    #[test]
    fn linear_lemma_examples() {
        let f = Fp::new(5).unwrap();
        // g1(x) = x, g2 = 0: nonzero x sums to zero, x = 0 gives q
        let fam = AffineFamily {
            n: 1,
            m: 1,
            g1: vec![vec![1, 0]],
            g2: vec![0, 0],
        };
        assert!(charsum_linear_lemma(&fam, f));
        let mut s = CycloCount::zero(5);
        for u in 0..5 {
            s.add_root(f.mul(2, u));
        }
        assert_eq!(s.as_integer(), Some(0));
        let trivial = AffineFamily {
            n: 1,
            m: 0,
            g1: vec![vec![0]],
            g2: vec![0],
        };
        assert!(charsum_linear_lemma(&trivial, f));
        let f3 = Fp::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(charsum_linear_lemma(&AffineFamily::random(2, 2, 3, &mut rng), f3));
        }
    }

    #[test]
    fn wrong_scaling_is_detected() {
        // the identity fails if the q^n factor is replaced by q^n + 1
        let mut lhs = CycloCount::zero(3);
        for _ in 0..3 {
            lhs.add_root(1);
        }
        assert_eq!(lhs, CycloCount::root(3, 1).scale(3));
        assert_ne!(lhs, CycloCount::root(3, 1).scale(4));
    }

    #[test]
    fn fourier_examples() {
        let f = Fp::new(3).unwrap();
        let n = 2;
        let mut delta = vec![CycloCount::zero(3); 9];
        delta[0] = CycloCount::integer(3, 1);
        let once = fourier_transform(&delta, n, f);
        assert!(once.iter().all(|c| c.as_integer() == Some(1)));
        let twice = fourier_transform(&once, n, f);
        assert_eq!(twice[0].as_integer(), Some(9));
        assert!(twice[1..].iter().all(|c| c.as_integer() == Some(0)));
        let ones = vec![CycloCount::integer(3, 1); 9];
        let t = fourier_transform(&ones, n, f);
        assert_eq!(t[0].as_integer(), Some(9));
        assert!(t[1..].iter().all(|c| c.as_integer() == Some(0)));
        assert!(fourier_inversion_check(2, f, 100, 7));
    }

    #[test]
    fn fiber_identity_examples() {
        let budget = super::super::count::DEFAULT_BUDGET;
        for p in [2, 3] {
            let s = RepSpace::new(&Quiver::jordan(), &DimVector(vec![1]), &DimVector(vec![1]), Fp::new(p).unwrap())
                .unwrap();
            assert!(charsum_fiber_identity(&s, 1, budget).unwrap());
        }
        let f2 = Fp::new(2).unwrap();
        let s = RepSpace::new(&Quiver::single_vertex(), &DimVector(vec![1]), &DimVector(vec![1]), f2).unwrap();
        assert!(charsum_fiber_identity(&s, 1, budget).unwrap());
        let s = RepSpace::new(&Quiver::jordan(), &DimVector(vec![1]), &DimVector(vec![0]), f2).unwrap();
        assert!(charsum_fiber_identity(&s, 0, budget).unwrap());
    }

    fn cyclo(p: u32) -> impl Strategy<Value = CycloCount> {
        prop::collection::vec(-5i64..=5, p as usize).prop_map(CycloCount::from_counts)
    }

    proptest! {
        #[test]
        fn equality_ignores_all_ones(a in cyclo(5), k in -4i64..=4) {
            let shifted = CycloCount::from_counts(a.counts().iter().map(|x| x + k).collect());
            prop_assert_eq!(&a, &shifted);
            prop_assert_eq!(&shifted, &a);
        }

        #[test]
        fn equality_is_transitive(a in cyclo(3), k1 in -4i64..=4, k2 in -4i64..=4, other in cyclo(3)) {
            let b = a.add(&CycloCount::from_counts(vec![k1; 3]));
            let c = b.add(&CycloCount::from_counts(vec![k2; 3]));
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&b, &c);
            prop_assert_eq!(&a, &c);
            prop_assert_eq!(a == other, c == other);
        }

        #[test]
        fn multiplication_respects_equality(a in cyclo(5), b in cyclo(5), k in -3i64..=3) {
            let a2 = CycloCount::from_counts(a.counts().iter().map(|x| x + k).collect());
            prop_assert_eq!(a.mul(&b), a2.mul(&b));
        }
    }
}
