//! Exact kernels: fraction-free elimination over ℤ and Gaussian elimination mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduced echelon form over ℤ: each pivot row has a positive pivot, all
/// other rows are zero in that pivot column, and every row is primitive.
#[derive(Debug, Clone)]
pub struct IntegerEchelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

pub fn integer_echelon(matrix: &[Vec<BigInt>], ncols: usize) -> IntegerEchelon {
    let mut rows: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -v.clone();
            }
        }
        make_primitive(&mut rows[r]);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            // row := pivot·row - row[c]·pivot_row, cancelling column c
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = &a * &*v - &b * pv;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    IntegerEchelon { rows, pivots, ncols }
}

impl IntegerEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Kernel vector with a non-zero entry at `free`, zero at the other free
    /// columns; coprime integers, first non-zero entry positive.
    pub fn kernel_vector(&self, free: usize) -> Vec<BigInt> {
        let l = self.rows.iter().zip(&self.pivots).fold(BigInt::one(), |acc, (row, &p)| acc.lcm(&row[p]));
        let mut v = vec![BigInt::zero(); self.ncols];
        v[free] = l.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            // row[p]·v_p + row[free]·v_free = 0
            v[p] = -(&row[free] * &l) / &row[p];
        }
        make_primitive(&mut v);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
        v
    }
}

/// Kernel of the first free column, or `None` for full column rank.
pub fn first_kernel_vector(matrix: &[Vec<BigInt>], ncols: usize) -> Option<Vec<BigInt>> {
    let ech = integer_echelon(matrix, ncols);
    ech.free_columns().first().map(|&c| ech.kernel_vector(c))
}

pub fn integer_rank(matrix: &[Vec<BigInt>], ncols: usize) -> usize {
    integer_echelon(matrix, ncols).rank()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

/// Basis of the right kernel of `matrix` over F_p (entries already in `0..p`).
pub fn kernel_mod_p(matrix: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = matrix.iter().map(|r| r.iter().map(|v| v % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pr) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn times(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn kernel_examples() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(first_kernel_vector(&m, 2), None);
        let single = mat(&[&[3, 3]]);
        assert_eq!(first_kernel_vector(&single, 2), Some(vec![BigInt::from(1), BigInt::from(-1)]));
        let zero = mat(&[&[0, 0, 0]]);
        assert_eq!(first_kernel_vector(&zero, 3), Some(vec![1.into(), 0.into(), 0.into()]));
        let m = mat(&[&[2, 4, -2], &[1, 3, 5]]);
        let v = first_kernel_vector(&m, 3).unwrap();
        assert!(times(&m, &v).iter().all(|x| x.is_zero()));
        assert_eq!(v, vec![BigInt::from(13), BigInt::from(-6), BigInt::from(1)]);
    }

    #[test]
    fn ranks() {
        assert_eq!(integer_rank(&mat(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(integer_rank(&mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]), 3), 2);
        assert_eq!(integer_rank(&mat(&[&[0, 0]]), 2), 0);
    }

    #[test]
    fn kernel_over_f3() {
        // x + y + z = 0 over F3
        let basis = kernel_mod_p(&[vec![1, 1, 1]], 3, 3);
        assert_eq!(basis, vec![vec![2, 1, 0], vec![2, 0, 1]]);
        let full = kernel_mod_p(&[vec![1, 0], vec![0, 1]], 2, 2);
        assert!(full.is_empty());
    }
}
