//! Elementary row/column operations with an operation log.
//!
//! A [`Reducer`] applies each operation to its working matrix and records
//! it. Replaying the row operations on the identity yields `P`, replaying the
//! column operations yields `Q`, so that `P · W · Q` equals the final working
//! matrix.

use serde::{Deserialize, Serialize};

use crate::matrix::PolyMatrix;
use crate::poly::LaurentPoly;

use super::NormalFormError;

/// One elementary operation. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    /// `row[target] += factor * row[source]`
    AddRow { target: usize, source: usize, factor: LaurentPoly },
    /// `col[target] += factor * col[source]`
    AddCol { target: usize, source: usize, factor: LaurentPoly },
    /// `row[index] *= unit`
    ScaleRow { index: usize, unit: LaurentPoly },
    /// `col[index] *= unit`
    ScaleCol { index: usize, unit: LaurentPoly },
    /// New row `k` is old row `perm[k]`.
    PermuteRows { perm: Vec<usize> },
    /// New column `k` is old column `perm[k]`.
    PermuteCols { perm: Vec<usize> },
}

impl Op {
    pub fn is_row_op(&self) -> bool {
        matches!(self, Op::AddRow { .. } | Op::ScaleRow { .. } | Op::PermuteRows { .. })
    }

    pub fn apply(&self, m: &mut PolyMatrix) {
        match self {
            Op::AddRow { target, source, factor } => m.add_row_multiple(*target, *source, factor),
            Op::AddCol { target, source, factor } => m.add_col_multiple(*target, *source, factor),
            Op::ScaleRow { index, unit } => m.scale_row(*index, unit),
            Op::ScaleCol { index, unit } => m.scale_col(*index, unit),
            Op::PermuteRows { perm } => m.permute_rows(perm),
            Op::PermuteCols { perm } => m.permute_cols(perm),
        }
    }

    /// Determinant of the elementary matrix, read off the operation itself.
    pub fn determinant(&self) -> LaurentPoly {
        match self {
            Op::AddRow { .. } | Op::AddCol { .. } => LaurentPoly::one(),
            Op::ScaleRow { unit, .. } | Op::ScaleCol { unit, .. } => unit.clone(),
            Op::PermuteRows { perm } | Op::PermuteCols { perm } => LaurentPoly::constant(permutation_sign(perm)),
        }
    }
}

pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Materialise `(P, Q)` from a log.
pub fn replay(log: &[Op], n: usize) -> (PolyMatrix, PolyMatrix) {
    let mut p = PolyMatrix::identity(n);
    let mut q = PolyMatrix::identity(n);
    for op in log {
        if op.is_row_op() {
            op.apply(&mut p);
        } else {
            op.apply(&mut q);
        }
    }
    (p, q)
}

/// Product of the determinants of the logged row (or column) operations.
pub fn logged_determinants(log: &[Op]) -> (LaurentPoly, LaurentPoly) {
    let mut det_p = LaurentPoly::one();
    let mut det_q = LaurentPoly::one();
    for op in log {
        let d = op.determinant();
        if op.is_row_op() {
            det_p = &det_p * &d;
        } else {
            det_q = &det_q * &d;
        }
    }
    (det_p, det_q)
}

#[derive(Debug, Clone)]
pub struct Reducer {
    work: PolyMatrix,
    log: Vec<Op>,
}

impl Reducer {
    pub fn new(w: PolyMatrix) -> Self {
        assert!(w.is_square());
        Reducer { work: w, log: Vec::new() }
    }

    pub fn work(&self) -> &PolyMatrix {
        &self.work
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.work[(i, j)]
    }

    pub fn log(&self) -> &[Op] {
        &self.log
    }

    pub fn into_parts(self) -> (PolyMatrix, Vec<Op>) {
        (self.work, self.log)
    }

    fn push(&mut self, op: Op) {
        op.apply(&mut self.work);
        self.log.push(op);
    }

    pub fn add_row(&mut self, target: usize, source: usize, factor: LaurentPoly) {
        if !factor.is_zero() {
            self.push(Op::AddRow { target, source, factor });
        }
    }

    pub fn add_col(&mut self, target: usize, source: usize, factor: LaurentPoly) {
        if !factor.is_zero() {
            self.push(Op::AddCol { target, source, factor });
        }
    }

    pub fn scale_row(&mut self, index: usize, unit: LaurentPoly) -> Result<(), NormalFormError> {
        require_unit(&unit)?;
        if !unit.is_one() {
            self.push(Op::ScaleRow { index, unit });
        }
        Ok(())
    }

    pub fn scale_col(&mut self, index: usize, unit: LaurentPoly) -> Result<(), NormalFormError> {
        require_unit(&unit)?;
        if !unit.is_one() {
            self.push(Op::ScaleCol { index, unit });
        }
        Ok(())
    }

    pub fn permute_rows(&mut self, perm: Vec<usize>) {
        if perm.iter().enumerate().any(|(k, &p)| k != p) {
            self.push(Op::PermuteRows { perm });
        }
    }

    pub fn permute_cols(&mut self, perm: Vec<usize>) {
        if perm.iter().enumerate().any(|(k, &p)| k != p) {
            self.push(Op::PermuteCols { perm });
        }
    }

    /// Clear `work[row][target_col]` using column `pivot_col`, whose entry in
    /// `row` must be a unit.
    pub fn clear_with_col(&mut self, row: usize, target_col: usize, pivot_col: usize) -> Result<(), NormalFormError> {
        let pivot_inv = unit_inverse(&self.work[(row, pivot_col)])?;
        let factor = -(&self.work[(row, target_col)] * &pivot_inv);
        self.add_col(target_col, pivot_col, factor);
        Ok(())
    }

    /// Clear `work[target_row][col]` using row `pivot_row`, whose entry in
    /// `col` must be a unit.
    pub fn clear_with_row(&mut self, col: usize, target_row: usize, pivot_row: usize) -> Result<(), NormalFormError> {
        let pivot_inv = unit_inverse(&self.work[(pivot_row, col)])?;
        let factor = -(&self.work[(target_row, col)] * &pivot_inv);
        self.add_row(target_row, pivot_row, factor);
        Ok(())
    }
}

pub(crate) fn unit_inverse(p: &LaurentPoly) -> Result<LaurentPoly, NormalFormError> {
    p.is_unit().ok_or_else(|| NormalFormError::NotAUnit(p.to_string()))
}

fn require_unit(p: &LaurentPoly) -> Result<(), NormalFormError> {
    unit_inverse(p).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }

    #[test]
    fn replay_reproduces_the_working_matrix() {
        let w = PolyMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as i64 + 1) + LaurentPoly::x(1).pow(i as u32));
        let mut r = Reducer::new(w.clone());
        r.add_row(2, 0, LaurentPoly::x(1));
        r.add_col(1, 2, c(-3));
        r.scale_row(1, -LaurentPoly::q(2)).unwrap();
        r.permute_cols(vec![2, 0, 1]);
        r.permute_rows(vec![1, 0, 2]);
        let (p, q) = replay(r.log(), 3);
        assert_eq!(&(&p * &w) * &q, *r.work());
        let (dp, dq) = logged_determinants(r.log());
        assert_eq!(dp, LaurentPoly::q(2));
        assert_eq!(dq, LaurentPoly::one());
        assert!(r.scale_col(0, c(2)).is_err());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[1, 2, 3, 0]), -1);
    }
}
