//! Prime-field arithmetic and small dense matrices over `F_p`.

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The prime field `F_p`; elements are `u32` in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::OracleRange(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, u64::from(self.p - 2))
    }
}

/// Dense row-major matrix with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<u32> = rows.iter().flat_map(|x| x.iter().copied()).collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Self { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Mat, f: Fp) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                context: format!("{}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, rhs.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Mat, f: Fp) -> Result<Mat> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                context: format!("{:?} - {:?}", self.shape(), rhs.shape()),
            });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Mat, f: Fp) -> Result<Mat> {
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch {
                context: format!("{:?} + {:?}", self.shape(), rhs.shape()),
            });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: u32, f: Fp) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn trace(&self, f: Fp) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

/// Row-reduces `m` in place; returns the pivot columns.
pub fn row_reduce(m: &mut Mat, f: Fp) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, row * m.cols + j);
            }
        }
        let inv = f.inv(m.get(row, col));
        for j in 0..m.cols {
            let x = m.get(row, j);
            m.set(row, j, f.mul(x, inv));
        }
        for r in 0..m.rows {
            let factor = m.get(r, col);
            if r == row || factor == 0 {
                continue;
            }
            for j in 0..m.cols {
                let x = f.sub(m.get(r, j), f.mul(factor, m.get(row, j)));
                m.set(r, j, x);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Mat, f: Fp) -> usize {
    let mut work = m.clone();
    row_reduce(&mut work, f).len()
}

pub fn det(m: &Mat, f: Fp) -> u32 {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.data.clone();
    let mut d = 1u32;
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
            if factor == 0 {
                continue;
            }
            for j in col..n {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
            }
        }
    }
    d
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn nullspace(m: &Mat, f: Fp) -> Vec<Vec<u32>> {
    let mut work = m.clone();
    let pivots = row_reduce(&mut work, f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; m.cols];
            x[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(work.get(r, fc));
            }
            x
        })
        .collect()
}

/// Number of solutions of `a x = b` over `F_p`, as `(solvable, rank)`; the
/// solution count is `p^(cols - rank)` when solvable.
pub fn affine_solution_rank(a: &Mat, b: &[u32], f: Fp) -> (bool, usize) {
    let mut aug = Mat::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, a.cols, b[i]);
    }
    let pivots = row_reduce(&mut aug, f);
    let solvable = !pivots.contains(&a.cols);
    (solvable, pivots.len())
}

/// Mixed-radix counter over `F_p^n`, last coordinate fastest.
#[derive(Debug, Clone)]
pub struct Odometer {
    p: u32,
    digits: Vec<u32>,
    done: bool,
}

impl Odometer {
    pub fn new(p: u32, n: usize) -> Self {
        Self {
            p,
            digits: vec![0; n],
            done: false,
        }
    }

    /// Starts at the point whose base-`p` expansion is `index`.
    pub fn starting_at(p: u32, n: usize, mut index: u128) -> Self {
        let mut digits = vec![0; n];
        for d in digits.iter_mut().rev() {
            *d = (index % u128::from(p)) as u32;
            index /= u128::from(p);
        }
        Self {
            p,
            digits,
            done: index > 0,
        }
    }

    pub fn current(&self) -> Option<&[u32]> {
        (!self.done).then_some(self.digits.as_slice())
    }

    /// Advances; returns the lowest changed position, or `None` at the end.
    pub fn advance(&mut self) -> Option<usize> {
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                return None;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.p {
                return Some(pos);
            }
            self.digits[pos] = 0;
        }
    }
}

/// `p^n`, or `None` past `u128`.
pub fn checked_power(p: u32, n: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(u128::from(p))?;
    }
    Some(acc)
}

pub fn check_budget(p: u32, n: u64, budget: u128) -> Result<u128> {
    match checked_power(p, n) {
        Some(size) if size <= budget => Ok(size),
        Some(size) => Err(Error::BudgetExceeded { required: size, budget }),
        None => Err(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Fp::new(4).is_err());
    }

    #[test]
    fn field_ops() {
        let f = Fp::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.neg(0), 0);
    }

    #[test]
    fn determinant_and_rank() {
        let f = Fp::new(3).unwrap();
        let m = Mat::from_rows(&[&[1, 2], &[2, 1]]);
        // 1 - 4 = -3 = 0 mod 3
        assert_eq!(det(&m, f), 0);
        assert_eq!(rank(&m, f), 1);
        let m = Mat::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&m, f), 2);
        assert_eq!(nullspace(&Mat::from_rows(&[&[1, 1, 0]]), f).len(), 2);
    }

    #[test]
    fn gl2_f2_by_enumeration() {
        let f = Fp::new(2).unwrap();
        let mut odo = Odometer::new(2, 4);
        let mut count = 0;
        while let Some(d) = odo.current() {
            let m = Mat { rows: 2, cols: 2, data: d.to_vec() };
            if det(&m, f) != 0 {
                count += 1;
            }
            odo.advance();
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn affine_systems() {
        let f = Fp::new(3).unwrap();
        let a = Mat::from_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(affine_solution_rank(&a, &[1, 2], f), (true, 1));
        assert!(!affine_solution_rank(&a, &[1, 1], f).0);
    }

    #[test]
    fn odometer_offsets() {
        let mut o = Odometer::starting_at(3, 3, 5);
        assert_eq!(o.current(), Some(&[0, 1, 2][..]));
        o.advance();
        assert_eq!(o.current(), Some(&[0, 2, 0][..]));
        assert!(Odometer::starting_at(2, 2, 4).current().is_none());
    }
}
