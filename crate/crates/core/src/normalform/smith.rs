//! Smith normal form of integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::PolyMatrix;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.len() == first.len()), "ragged rows");
        }
        IntMatrix { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    /// `None` unless every entry is a constant polynomial.
    pub fn try_from_poly(m: &PolyMatrix) -> Option<Self> {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(|p| p.as_constant()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, v)| i == j || v.is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.nrows().min(self.ncols())).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), other.nrows());
        let mut out = Self::zeros(self.nrows(), other.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant; exact divisions only.
    pub fn determinant(&self) -> BigInt {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    /// `row[target] += f * row[source]`
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        let src = self.rows[source].clone();
        for (t, s) in self.rows[target].iter_mut().zip(&src) {
            *t += f * s;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        for r in &mut self.rows {
            let s = r[source].clone();
            r[target] += f * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.rows[i] {
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `U · M · V = Δ(invariant_factors)` with `U`, `V` unimodular and each
/// factor dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let s = self.u.mul(m).mul(&self.v);
        s.is_diagonal()
            && s.diagonal() == self.invariant_factors
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
    }
}

/// Elementary-divisor elimination: the pivot is always the entry of smallest
/// absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for k in 0..rows.min(cols) {
        loop {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.rows[i][j].is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a.rows[i1][j1].abs().cmp(&a.rows[i2][j2].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                let (q, r) = a.rows[i][k].div_mod_floor(&a.rows[k][k]);
                if !q.is_zero() {
                    a.add_row(i, k, &-&q);
                    u.add_row(i, k, &-&q);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                let (q, r) = a.rows[k][j].div_mod_floor(&a.rows[k][k]);
                if !q.is_zero() {
                    a.add_col(j, k, &-&q);
                    v.add_col(j, k, &-&q);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a.rows[i][j].is_multiple_of(&a.rows[k][k])));
            match offender {
                Some(i) => {
                    a.add_row(k, i, &BigInt::one());
                    u.add_row(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.rows[k][k].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithForm { invariant_factors: a.diagonal(), u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_its_own_form() {
        let m = IntMatrix::identity(4);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[1, 1, 1, 1]));
        assert!(s.verify(&m));
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let m = IntMatrix::from_i64(&[vec![3, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[1, 2, 6]));
        assert!(s.verify(&m));
    }

    #[test]
    fn textbook_example() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[2, 6, 12]));
        assert!(s.verify(&m));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = IntMatrix::from_i64(&[vec![0, 2, 1], vec![3, 0, 4], vec![5, 6, 0]]);
        // 0(0-24) - 2(0-20) + 1(18-0)
        assert_eq!(m.determinant(), BigInt::from(58));
    }
}
