//! Brute-force centralizer orders of nilpotent matrices in Jordan form.

use super::field::{nullspace, Fp, Mat, Odometer};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest partition size the centralizer oracle accepts.
pub const MAX_CENTRALIZER_SIZE: u32 = 4;

/// Nilpotent matrix with Jordan blocks of sizes `λ` (ones on the
/// superdiagonal inside each block).
pub fn jordan_nilpotent(lambda: &Partition) -> Mat {
    let n = lambda.size() as usize;
    let mut m = Mat::zeros(n, n);
    let mut start = 0;
    for &part in lambda.parts() {
        let part = part as usize;
        for i in start..start + part - 1 {
            m.set(i, i + 1, 1);
        }
        start += part;
    }
    m
}

/// Basis of `{Y : Y J = J Y}` as flattened row-major matrices.
pub fn commutant_basis(j: &Mat, f: Fp) -> Vec<Vec<u32>> {
    let n = j.rows;
    // Row (r, c) of the system is (Y J - J Y)[r][c], column (a, b) is Y[a][b].
    let mut sys = Mat::zeros(n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for k in 0..n {
                // (Y J)[r][c] = Σ_k Y[r][k] J[k][c]
                let y = r * n + k;
                sys.set(row, y, f.add(sys.get(row, y), j.get(k, c)));
                // (J Y)[r][c] = Σ_k J[r][k] Y[k][c]
                let y = k * n + c;
                sys.set(row, y, f.sub(sys.get(row, y), j.get(r, k)));
            }
        }
    }
    nullspace(&sys, f)
}

/// Determinant of an `n × n` matrix with `n ≤ 4`, on the stack.
fn small_det(src: &[u32], n: usize, f: Fp) -> u32 {
    let mut a = [0u32; 16];
    a[..n * n].copy_from_slice(&src[..n * n]);
    let mut d = 1;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pr != col {
            for j in 0..n {
                a.swap(pr * n + j, col * n + j);
            }
            d = f.neg(d);
        }
        let pivot = a[col * n + col];
        d = f.mul(d, pivot);
        let inv = f.inv(pivot);
        for r in col + 1..n {
            let factor = f.mul(a[r * n + col], inv);
            if factor != 0 {
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
    }
    d
}

/// `|Z(λ)(F_q)|`: the number of invertible matrices commuting with the
/// Jordan nilpotent of type `λ`, found by running through the commutant.
pub fn centralizer_order(lambda: &Partition, q: u32) -> Result<u128> {
    if lambda.size() > MAX_CENTRALIZER_SIZE || !(q == 2 || q == 3) {
        return Err(Error::OracleRange(format!(
            "centralizer oracle needs |λ| <= {MAX_CENTRALIZER_SIZE} and q in {{2, 3}}, got |λ| = {} and q = {q}",
            lambda.size()
        )));
    }
    let f = Fp::new(q)?;
    let n = lambda.size() as usize;
    if n == 0 {
        return Ok(1);
    }
    let basis = commutant_basis(&jordan_nilpotent(lambda), f);
    let k = basis.len();
    // suffix[i] = Σ_{j > i} basis[j], used to reset trailing digits in one step
    let mut suffix = vec![vec![0u32; n * n]; k];
    for i in (0..k.saturating_sub(1)).rev() {
        for e in 0..n * n {
            suffix[i][e] = f.add(suffix[i + 1][e], basis[i + 1][e]);
        }
    }
    let top = q - 1;
    let mut current = vec![0u32; n * n];
    let mut odo = Odometer::new(q, k);
    let mut count = 0u128;
    loop {
        if small_det(&current, n, f) != 0 {
            count += 1;
        }
        let Some(pos) = odo.advance() else { break };
        for e in 0..n * n {
            let bumped = f.add(current[e], basis[pos][e]);
            current[e] = f.sub(bumped, f.mul(top, suffix[pos][e]));
        }
    }
    Ok(count)
}
