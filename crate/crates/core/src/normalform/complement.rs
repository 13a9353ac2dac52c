//! Complementing maps and the complementary symmetry check.

use serde::{Deserialize, Serialize};

use crate::dissection::Dissection;
use crate::poly::{LaurentPoly, Monomial, Var};
use crate::walks::{Flavor, WeightMatrix};

use super::NormalFormError;

/// Caps and full-weight monomials of a dissection:
/// `c = Π x_i^{d_i-2}` and `ε = Π q_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementContext {
    piece_caps: Vec<i32>,
    edges: usize,
}

impl ComplementContext {
    pub fn new(d: &Dissection) -> Self {
        ComplementContext {
            piece_caps: d.piece_type().iter().map(|&k| k as i32 - 2).collect(),
            edges: d.n(),
        }
    }

    pub fn c(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.c_monomial())
    }

    pub fn eps(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.eps_monomial())
    }

    fn c_monomial(&self) -> Monomial {
        Monomial::from_exponents(
            self.piece_caps
                .iter()
                .enumerate()
                .map(|(l, &cap)| (Var::x(l + 1), cap)),
        )
    }

    fn eps_monomial(&self) -> Monomial {
        Monomial::from_exponents((1..=self.edges).map(|j| (Var::q(j), 1)))
    }

    fn check_term(&self, m: &Monomial, allow_q: bool) -> Result<(), NormalFormError> {
        for (v, e) in m.iter() {
            let cap = match v {
                Var::X(l) => self.piece_caps.get(l as usize - 1).copied(),
                Var::Q(j) if allow_q && (j as usize) <= self.edges => Some(1),
                Var::Q(_) => None,
            };
            match cap {
                Some(cap) if (0..=cap).contains(&e) => {}
                _ => return Err(NormalFormError::OutOfCaps(format!("{m:?}"))),
            }
        }
        Ok(())
    }

    /// `φ_D`: sends `x^a` to `Π x_i^{d_i-2-a_i}`, extended linearly.
    pub fn phi(&self, f: &LaurentPoly) -> Result<LaurentPoly, NormalFormError> {
        let c = self.c_monomial();
        for (m, _) in f.terms() {
            self.check_term(m, false)?;
        }
        Ok(f.map_monomials(|m| c.mul(&m.inverse())))
    }

    /// `ψ_D`: complements the `x` part relative to `c` and the `q` part
    /// relative to `ε`, extended linearly.
    pub fn psi(&self, f: &LaurentPoly) -> Result<LaurentPoly, NormalFormError> {
        let full = self.c_monomial().mul(&self.eps_monomial());
        for (m, _) in f.terms() {
            self.check_term(m, true)?;
        }
        Ok(f.map_monomials(|m| full.mul(&m.inverse())))
    }
}

/// Outcome of a complementary symmetry check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryCheck {
    pub holds: bool,
    /// First `(i, j)` (1-based) where the complement of entry `(i,j)` differs
    /// from entry `(j,i)`, or where the diagonal is non-zero.
    pub violation: Option<(usize, usize)>,
}

/// Checks `bar(w_ij) = w_ji` with `φ` for `W_D(x)`, `ψ` for `W_D(x;q)` and
/// plain symmetry for `M_D`.
pub fn check_complementary_symmetry(w: &WeightMatrix) -> SymmetryCheck {
    let ctx = ComplementContext::new(w.dissection());
    let m = w.matrix();
    let n = w.n();
    for i in 0..n {
        if !m[(i, i)].is_zero() {
            return SymmetryCheck {
                holds: false,
                violation: Some((i + 1, i + 1)),
            };
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let image = match w.flavor() {
                Flavor::Arithmetic => Ok(m[(i, j)].clone()),
                Flavor::X => ctx.phi(&m[(i, j)]),
                Flavor::Xq => ctx.psi(&m[(i, j)]),
            };
            if image.as_ref() != Ok(&m[(j, i)]) {
                return SymmetryCheck {
                    holds: false,
                    violation: Some((i + 1, j + 1)),
                };
            }
        }
    }
    SymmetryCheck {
        holds: true,
        violation: None,
    }
}
