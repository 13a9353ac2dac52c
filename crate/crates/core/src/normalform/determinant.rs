//! Closed-form determinants and a division-free expansion used as oracle.

use rayon::prelude::*;

use crate::dissection::Dissection;
use crate::matrix::PolyMatrix;
use crate::poly::{geometric_sum, LaurentPoly};
use crate::walks::Flavor;

use super::{ComplementContext, NormalFormError};

/// Largest matrix accepted by [`det_expand`].
pub const DET_EXPAND_MAX: usize = 14;

/// Determinant by Laplace expansion along rows, memoised over column
/// subsets: `f(S)` is the minor on the first `|S|` rows and the columns in
/// `S`. Uses only ring operations, so it is valid over any commutative ring.
pub fn det_expand(m: &PolyMatrix) -> Result<LaurentPoly, NormalFormError> {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n > DET_EXPAND_MAX {
        return Err(NormalFormError::TooLarge { n, max: DET_EXPAND_MAX });
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut minors: Vec<LaurentPoly> = vec![LaurentPoly::zero(); 1 << n];
    minors[0] = LaurentPoly::one();
    for size in 1..=n {
        let row = size - 1;
        let masks: Vec<usize> = (0usize..1 << n).filter(|s| s.count_ones() as usize == size).collect();
        let values: Vec<LaurentPoly> = masks
            .par_iter()
            .map(|&mask| {
                let mut acc = LaurentPoly::zero();
                for col in 0..n {
                    if mask >> col & 1 == 0 {
                        continue;
                    }
                    let entry = &m[(row, col)];
                    let rest = &minors[mask & !(1 << col)];
                    if entry.is_zero() || rest.is_zero() {
                        continue;
                    }
                    let term = entry * rest;
                    // Sign: number of chosen columns to the right of `col`.
                    if (mask >> (col + 1)).count_ones() % 2 == 1 {
                        acc -= &term;
                    } else {
                        acc += &term;
                    }
                }
                acc
            })
            .collect();
        for (mask, v) in masks.into_iter().zip(values) {
            minors[mask] = v;
        }
    }
    Ok(std::mem::take(&mut minors[(1 << n) - 1]))
}

fn sign(n: usize) -> i64 {
    if (n - 1).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Closed-form determinant of the walk matrix of `d`:
/// `(-1)^{n-1} ε Π_i Σ_{j=0}^{d_i-2} (ε c x_i^2)^j`, with `ε = 1` for `W_D(x)`
/// and every variable set to 1 for `M_D`, where it reads
/// `(-1)^{n-1} Π (d_i - 1)`.
pub fn det_formula(d: &Dissection, flavor: Flavor) -> LaurentPoly {
    let n = d.n();
    if flavor == Flavor::Arithmetic {
        let prod: i64 = d.piece_type().iter().map(|&k| k as i64 - 1).product();
        return LaurentPoly::constant(sign(n) * prod);
    }
    let ctx = ComplementContext::new(d);
    let eps = if flavor == Flavor::Xq { ctx.eps() } else { LaurentPoly::one() };
    let ec = &eps * &ctx.c();
    let product: LaurentPoly = d
        .piece_ids()
        .map(|id| {
            let y = &ec * &id.poly().pow(2);
            geometric_sum(&y, d.degree(id) - 2)
        })
        .product();
    (&eps * &product).scale(sign(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarNames};
    use crate::walks::weight_matrix;

    fn abcd(s: &str) -> LaurentPoly {
        parse_poly(s, &VarNames::with_pieces(&["a", "b", "c", "d"])).unwrap()
    }

    #[test]
    fn diagonal_matrix_determinant() {
        let entries: Vec<LaurentPoly> = ["a+b", "c", "1-d", "2"].iter().map(|s| abcd(s)).collect();
        let expected: LaurentPoly = entries.iter().cloned().product();
        assert_eq!(det_expand(&PolyMatrix::diagonal(&entries)).unwrap(), expected);
    }

    #[test]
    fn small_integer_matrices_match_leibniz() {
        // Leibniz over all permutations as an independent check.
        let rows = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, -1], [3, 0, 2, 2]];
        let m = PolyMatrix::from_fn(4, 4, |i, j| LaurentPoly::constant(rows[i][j]));
        let mut leibniz = 0i64;
        for p in permutations(4) {
            let inversions = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            let s = if inversions % 2 == 0 { 1 } else { -1 };
            leibniz += s * (0..4).map(|i| rows[i][p[i]]).product::<i64>();
        }
        assert_eq!(det_expand(&m).unwrap(), LaurentPoly::constant(leibniz));
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn two_by_two_edge_minor() {
        // [[0, q_i], [ψ(q_i), 0]] has determinant -εc.
        let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
        let ctx = ComplementContext::new(&d);
        let q = LaurentPoly::q(2);
        let m = PolyMatrix::from_rows(vec![
            vec![LaurentPoly::zero(), q.clone()],
            vec![ctx.psi(&q).unwrap(), LaurentPoly::zero()],
        ]);
        assert_eq!(det_expand(&m).unwrap(), -(&ctx.eps() * &ctx.c()));
    }

    #[test]
    fn heptagon_determinants() {
        let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
        assert_eq!(det_formula(&d, Flavor::Arithmetic), LaurentPoly::constant(24));
        let factored = abcd("(1+a^3 b^2 c d)(1+a b^2 c^3 d)(1+a b^2 c d^3)(1+a b^4 c d+(a b^4 c d)^2)");
        assert_eq!(det_formula(&d, Flavor::X), factored);
        for flavor in Flavor::ALL {
            let w = weight_matrix(&d, flavor);
            assert_eq!(det_expand(w.matrix()).unwrap(), det_formula(&d, flavor), "{flavor:?}");
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(
            det_expand(&PolyMatrix::identity(15)),
            Err(NormalFormError::TooLarge { n: 15, .. })
        ));
    }
}
