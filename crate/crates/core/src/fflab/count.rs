//! Point counts of moment-map fibers `{(φ, ψ) : μ(φ, ψ) = α·1_v}` and of
//! their quotients by `G_v`.

use rayon::prelude::*;

use super::field::{affine_solution_rank, check_budget, checked_power, det, Fp, Mat, Odometer};
use super::rep::{FpPoint, RepSpace};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated points.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

/// Number of contiguous chunks the point space is split into. Fixed so the
/// work split does not depend on the thread count.
const CHUNKS: u128 = 64;

/// How the fiber is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Every `(φ, ψ)` is tested against the moment condition; costs
    /// `q^(2 dim V)` pairings.
    Exhaustive,
    /// For each `φ` the condition is linear in `ψ`, so the `ψ`-solutions are
    /// counted by rank; costs `q^(dim V)` eliminations.
    Fiberwise,
}

/// Sum of `f(point)` over `F_p^n`, split into fixed chunks run in parallel.
pub(crate) fn sum_over_space<F>(p: u32, n: usize, f: F) -> u128
where
    F: Fn(&[u32]) -> u128 + Sync,
{
    let total = checked_power(p, n as u64).expect("enumeration size checked by caller");
    let chunk = total.div_ceil(CHUNKS).max(1);
    let starts: Vec<u128> = (0..CHUNKS).map(|c| c * chunk).filter(|&s| s < total).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let end = (start + chunk).min(total);
            let mut odo = Odometer::starting_at(p, n, start);
            let mut acc = 0u128;
            for _ in start..end {
                acc += f(odo.current().expect("inside range"));
                odo.advance();
            }
            acc
        })
        .sum()
}

/// The moment condition as a list of `(trace of E_k, B_k)` where
/// `B_k[r][c] = <μ(e_r, e_c), E_k>` on unit vectors of `V` and `V*`.
fn moment_tensor(space: &RepSpace) -> Result<Vec<(u32, Vec<Vec<u32>>)>> {
    let n = space.dim();
    let units: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    space
        .gl_basis()
        .into_iter()
        .map(|(x, tr)| {
            let mut b = vec![vec![0; n]; n];
            for (r, ur) in units.iter().enumerate() {
                for (c, uc) in units.iter().enumerate() {
                    let pt = FpPoint {
                        phi: space.rep_from_coords(ur),
                        psi: space.dual_from_coords(uc),
                    };
                    b[r][c] = space.moment_pairing(&pt, &x)?;
                }
            }
            Ok((tr, b))
        })
        .collect()
}

/// `#{(φ, ψ) : <μ(φ, ψ), E> = α·tr E for every elementary E in g_v}`.
///
/// `budget` bounds the number of enumerated points: `q^(2 dim V)` for the
/// exhaustive method, `q^(dim V)` for the fiberwise one.
pub fn count_moment_fiber(space: &RepSpace, alpha: u32, method: CountMethod, budget: u128) -> Result<u128> {
    let f = space.field;
    let p = f.p();
    let n = space.dim();
    let alpha = alpha % p;
    match method {
        CountMethod::Exhaustive => {
            check_budget(p, 2 * n as u64, budget)?;
            let basis = space.gl_basis();
            Ok(sum_over_space(p, 2 * n, |coords| {
                let pt = FpPoint {
                    phi: space.rep_from_coords(&coords[..n]),
                    psi: space.dual_from_coords(&coords[n..]),
                };
                let ok = basis.iter().all(|(x, tr)| {
                    space.moment_pairing(&pt, x).expect("shapes come from the space") == f.mul(alpha, *tr)
                });
                u128::from(ok)
            }))
        }
        CountMethod::Fiberwise => {
            check_budget(p, n as u64, budget)?;
            let tensor = moment_tensor(space)?;
            let rhs: Vec<u32> = tensor.iter().map(|(tr, _)| f.mul(alpha, *tr)).collect();
            Ok(sum_over_space(p, n, |phi| {
                let mut a = Mat::zeros(tensor.len(), n);
                for (k, (_, b)) in tensor.iter().enumerate() {
                    for (r, &x) in phi.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for c in 0..n {
                            let cur = a.get(k, c);
                            a.set(k, c, f.add(cur, f.mul(x, b[r][c])));
                        }
                    }
                }
                let (solvable, rank) = affine_solution_rank(&a, &rhs, f);
                if solvable {
                    checked_power(p, (n - rank) as u64).expect("bounded by q^dim")
                } else {
                    0
                }
            }))
        }
    }
}

/// `|GL_n(F_p)| = Π_{i<n} (p^n - p^i)`.
pub fn gl_order(n: u32, p: u32) -> u128 {
    let pn = checked_power(p, u64::from(n)).expect("small group");
    (0..n).map(|i| pn - checked_power(p, u64::from(i)).expect("small group")).product()
}

/// `|GL_n(F_p)|` by testing every `n × n` matrix for invertibility.
pub fn gl_order_brute(n: usize, f: Fp, budget: u128) -> Result<u128> {
    check_budget(f.p(), (n * n) as u64, budget)?;
    Ok(sum_over_space(f.p(), n * n, |d| {
        let m = Mat {
            rows: n,
            cols: n,
            data: d.to_vec(),
        };
        u128::from(det(&m, f) != 0)
    }))
}

/// `|G_v(F_p)| = Π_i |GL_{v_i}(F_p)|`.
pub fn group_order(space: &RepSpace) -> u128 {
    space.v.entries().iter().map(|&n| gl_order(n, space.field.p())).product()
}

/// Point count of the quotient `μ^{-1}(α·1_v) / G_v`. The action is free
/// for `α ≠ 0` once the characteristic exceeds `|v|`; below that the fiber
/// can contain unstable points and the count need not match the class.
pub fn quotient_count(space: &RepSpace, alpha: u32, method: CountMethod, budget: u128) -> Result<u128> {
    if alpha.is_multiple_of(space.field.p()) {
        return Err(Error::ZeroMomentLevel);
    }
    let count = count_moment_fiber(space, alpha, method, budget)?;
    let group_order = group_order(space);
    if count % group_order != 0 {
        return Err(Error::NotDivisible { count, group_order });
    }
    Ok(count / group_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};

    fn space(q: &Quiver, v: &[u32], w: &[u32], p: u32) -> RepSpace {
        RepSpace::new(q, &DimVector(v.to_vec()), &DimVector(w.to_vec()), Fp::new(p).unwrap()).unwrap()
    }

    #[test]
    fn jordan_fiber_counts() {
        for (p, want) in [(2, 4), (3, 18)] {
            let s = space(&Quiver::jordan(), &[1], &[1], p);
            for m in [CountMethod::Exhaustive, CountMethod::Fiberwise] {
                assert_eq!(count_moment_fiber(&s, 1, m, DEFAULT_BUDGET).unwrap(), want);
            }
        }
    }

    #[test]
    fn single_vertex_two_framings() {
        // b1 d1 + b2 d2 = 1 over F_2: 6 solutions = eval(L^2 + L, 2) * |GL_1(F_2)|
        let s = space(&Quiver::single_vertex(), &[1], &[2], 2);
        assert_eq!(count_moment_fiber(&s, 1, CountMethod::Exhaustive, DEFAULT_BUDGET).unwrap(), 6);
        assert_eq!(count_moment_fiber(&s, 1, CountMethod::Fiberwise, DEFAULT_BUDGET).unwrap(), 6);
    }

    #[test]
    fn quotients() {
        let s = space(&Quiver::jordan(), &[1], &[1], 2);
        assert_eq!(quotient_count(&s, 1, CountMethod::Fiberwise, DEFAULT_BUDGET).unwrap(), 4);
        let s = space(&Quiver::jordan(), &[1], &[1], 3);
        assert_eq!(quotient_count(&s, 1, CountMethod::Fiberwise, DEFAULT_BUDGET).unwrap(), 9);
        assert_eq!(
            quotient_count(&s, 0, CountMethod::Fiberwise, DEFAULT_BUDGET),
            Err(Error::ZeroMomentLevel)
        );
    }

    #[test]
    fn methods_agree() {
        let cases: [(Quiver, &[u32], &[u32], u32); 6] = [
            (Quiver::jordan(), &[2], &[1], 2),
            (Quiver::single_vertex(), &[2], &[3], 2),
            (Quiver::a2(), &[1, 1], &[1, 0], 3),
            (Quiver::a2(), &[1, 2], &[1, 1], 2),
            (Quiver::kronecker(), &[1, 1], &[1, 0], 2),
            (Quiver::jordan(), &[1], &[0], 3),
        ];
        for (q, v, w, p) in cases {
            let s = space(&q, v, w, p);
            for alpha in [0, 1] {
                assert_eq!(
                    count_moment_fiber(&s, alpha, CountMethod::Exhaustive, DEFAULT_BUDGET).unwrap(),
                    count_moment_fiber(&s, alpha, CountMethod::Fiberwise, DEFAULT_BUDGET).unwrap(),
                    "{v:?} {w:?} p={p} alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = space(&Quiver::jordan(), &[2], &[1], 5);
        let err = count_moment_fiber(&s, 1, CountMethod::Exhaustive, DEFAULT_BUDGET).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 5u128.pow(12),
                budget: DEFAULT_BUDGET
            }
        );
    }

    #[test]
    fn gl_orders() {
        for (n, p) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            assert_eq!(
                gl_order_brute(n, Fp::new(p).unwrap(), DEFAULT_BUDGET).unwrap(),
                gl_order(n as u32, p)
            );
        }
        assert_eq!(gl_order(2, 2), 6);
    }
}
