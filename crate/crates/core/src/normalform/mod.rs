//! Complementary symmetry, determinants and diagonal forms of walk matrices.

mod complement;
mod determinant;
mod diagonal;
mod lemmas;
pub mod reducer;
mod smith;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dissection::PieceId;
use crate::matrix::PolyMatrix;
use crate::poly::{LaurentPoly, PolyError};

pub use complement::{check_complementary_symmetry, ComplementContext, SymmetryCheck};
pub use determinant::{det_expand, det_formula, DET_EXPAND_MAX};
pub use diagonal::{arithmetic_diagonal_form, diagonalize, diagonalize_weighted, expected_diagonal, IntegerDiagonalForm};
pub use lemmas::{
    diagonalize_trivial, polygon_matrix, reduce_unit_block, toeplitz_det_formula, toeplitz_edge_weights,
    toeplitz_matrix, unit_block_matrix, TrivialForms,
};
pub use reducer::{Op, Reducer};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("term {0} is outside the complement caps")]
    OutOfCaps(String),
    #[error("matrix of size {n} exceeds the expansion guard {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0} is not a unit of the Laurent ring")]
    NotAUnit(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `P · W · Q = Δ(d)` with `P`, `Q` invertible over the Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalForm {
    pub p: PolyMatrix,
    pub d: Vec<LaurentPoly>,
    pub q: PolyMatrix,
    pub det_p: LaurentPoly,
    pub det_q: LaurentPoly,
    /// Piece responsible for each non-trivial diagonal entry.
    pub labels: Vec<Option<PieceId>>,
    pub log: Vec<Op>,
}

impl DiagonalForm {
    /// Materialise `P`, `Q` from the reducer's log and check the result:
    /// the working matrix must be diagonal, `P W Q` must reproduce it, and
    /// both determinants must be units agreeing with the logged operations.
    pub(crate) fn from_reducer(w: &PolyMatrix, r: Reducer, labels: Vec<Option<PieceId>>) -> Result<Self, NormalFormError> {
        let n = w.rows();
        let (work, log) = r.into_parts();
        if !work.is_diagonal() {
            return Err(NormalFormError::Invariant("reduction did not reach a diagonal matrix".into()));
        }
        let (p, q) = reducer::replay(&log, n);
        let (logged_p, logged_q) = reducer::logged_determinants(&log);
        let (det_p, det_q) = if n <= DET_EXPAND_MAX {
            (det_expand(&p)?, det_expand(&q)?)
        } else {
            (logged_p.clone(), logged_q.clone())
        };
        if det_p != logged_p || det_q != logged_q {
            return Err(NormalFormError::Invariant("determinants of P, Q disagree with the operation log".into()));
        }
        for det in [&det_p, &det_q] {
            if det.is_unit().is_none() {
                return Err(NormalFormError::NotAUnit(det.to_string()));
            }
        }
        let form = DiagonalForm {
            p,
            d: work.diagonal_entries(),
            q,
            det_p,
            det_q,
            labels,
            log,
        };
        if !form.verify(w) {
            return Err(NormalFormError::Invariant("P W Q differs from D".into()));
        }
        Ok(form)
    }

    pub fn d_matrix(&self) -> PolyMatrix {
        PolyMatrix::diagonal(&self.d)
    }

    /// Exact check of `P · W · Q = D`.
    pub fn verify(&self, w: &PolyMatrix) -> bool {
        &(&self.p * w) * &self.q == self.d_matrix()
    }

    pub fn size(&self) -> usize {
        self.d.len()
    }
}
