//! Kernel dimension of `φ ↦ ϱ(X)φ` at a nilpotent `X` in Jordan form,
//! computed from the integer structure matrix.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::centralizer::jordan_nilpotent;
use super::field::{Fp, Mat};
use super::rep::RepSpace;
use crate::error::{Error, Result};
use crate::partition::PartitionTuple;
use crate::quiver::{DimVector, Quiver};

/// Largest total size accepted by [`kappa_oracle`].
pub const MAX_KAPPA_SIZE: u32 = 5;

/// Working prime for building the structure matrix; its entries are in
/// `{-1, 0, 1}` and are lifted back to the integers.
const LIFT_PRIME: u32 = 1_000_003;

/// Rank over `Q` by Gaussian elimination with exact rationals.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = BigRational::one() / &m[rank][col];
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..cols {
                let d = &factor * &m[rank][c];
                m[r][c] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// `dim ker (φ ↦ ϱ(X)φ)` on `V_{v,w}` where `v_i = |λ_i|` and `X_i` is the
/// Jordan nilpotent of type `λ_i`.
pub fn kappa_oracle(q: &Quiver, w: &DimVector, tuple: &PartitionTuple) -> Result<u64> {
    if tuple.len() != q.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: q.vertex_count(),
            got: tuple.len(),
        });
    }
    if tuple.total_size() > MAX_KAPPA_SIZE {
        return Err(Error::OracleRange(format!(
            "kappa oracle needs total size <= {MAX_KAPPA_SIZE}, got {}",
            tuple.total_size()
        )));
    }
    let f = Fp::new(LIFT_PRIME)?;
    let v = DimVector(tuple.sizes());
    let space = RepSpace::new(q, &v, w, f)?;
    let x: Vec<Mat> = tuple.entries().iter().map(jordan_nilpotent).collect();
    let n = space.dim();
    // column j of the structure matrix is ϱ(X) applied to the j-th unit vector
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let image = space.apply_rho_derivative(&x, &space.rep_from_coords(&e))?;
        let lifted: Vec<i64> = space
            .rep_coords(&image)
            .into_iter()
            .map(|c| if c > LIFT_PRIME / 2 { i64::from(c) - i64::from(LIFT_PRIME) } else { i64::from(c) })
            .collect();
        columns.push(lifted);
    }
    // rank of the transpose equals rank of the matrix
    Ok((n - rational_rank(&columns)) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn tuple(parts: &[&[u32]]) -> PartitionTuple {
        PartitionTuple::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    #[test]
    fn examples() {
        let j = Quiver::jordan();
        assert_eq!(kappa_oracle(&j, &DimVector(vec![0]), &tuple(&[&[2]])).unwrap(), 2);
        assert_eq!(
            kappa_oracle(&Quiver::single_vertex(), &DimVector(vec![1]), &tuple(&[&[1]])).unwrap(),
            1
        );
        assert_eq!(kappa_oracle(&j, &DimVector(vec![1]), &tuple(&[&[1, 1]])).unwrap(), 6);
        assert!(kappa_oracle(&j, &DimVector(vec![1]), &tuple(&[&[6]])).is_err());
    }

    #[test]
    fn rank_over_rationals() {
        // rank 1 over F_2 but 2 over Q
        assert_eq!(rational_rank(&[vec![1, 1], vec![1, -1]]), 2);
        assert_eq!(rational_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(rational_rank(&[]), 0);
    }
}
