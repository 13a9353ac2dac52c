//! Diagonal form of a weight matrix by peeling boundary pieces.
//!
//! Each step picks a boundary piece `α`, rotates labels so its diagonal is
//! `(1, n)` and `α = {1, n, n+1, ..., N}`, and splits the matrix into the
//! weight matrix of the remaining dissection (with the merged edge weight
//! `q_n ⋯ q_N x_α^{d_α-2}` on the new edge `(n, 1)`) and a unit block of size
//! `d_α - 2`. Rotations are realised by re-indexing, never by moving data, so
//! every logged operation refers to the caller's labels.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dissection::{wrap, Dissection, PieceId};
use crate::matrix::PolyMatrix;
use crate::poly::{geometric_sum, LaurentPoly};
use crate::walks::{weighted_matrix, Flavor};

use super::lemmas::{product_range, reduce_polygon, reduce_unit_block_in, unit_block_matrix};
use super::reducer::{unit_inverse, Reducer};
use super::smith::IntMatrix;
use super::{det_expand, ComplementContext, DiagonalForm, NormalFormError};

/// A sub-problem: the walk matrix of `dis` (local labels `1..=N`) with the
/// given weights occupies rows/columns `view` of the working matrix.
struct Frame<'a> {
    view: Vec<usize>,
    dis: Dissection,
    /// Global piece id of each local piece.
    ids: Vec<PieceId>,
    xs: Vec<LaurentPoly>,
    qs: Vec<LaurentPoly>,
    labels: &'a mut Vec<Option<PieceId>>,
}

/// The boundary piece peeled next: the one reaching the largest label,
/// ties broken by the smaller piece id.
fn peel_choice(dis: &Dissection) -> PieceId {
    let candidates = dis.boundary_pieces().expect("non-trivial dissection");
    *candidates
        .iter()
        .max_by_key(|&&id| (dis.piece(id).last().copied(), std::cmp::Reverse(id)))
        .unwrap()
}

fn reduce_frame(r: &mut Reducer, f: Frame<'_>) -> Result<(), NormalFormError> {
    let expected = weighted_matrix(&f.dis, &f.xs, &f.qs)?;
    if r.work().submatrix(&f.view, &f.view) != expected {
        return Err(NormalFormError::Invariant(format!(
            "block for {} is not its weight matrix",
            f.dis
        )));
    }
    let big_n = f.dis.n();
    if f.dis.num_pieces() == 1 {
        reduce_polygon(r, &f.view, &f.xs[0], &f.qs)?;
        for (k, q) in f.qs.iter().enumerate() {
            r.scale_row(f.view[k], unit_inverse(q)?)?;
        }
        f.labels[f.view[big_n - 1]] = Some(f.ids[0]);
        return Ok(());
    }

    // Rotate so the peeled piece is {1, n, n+1, ..., N}.
    let alpha = peel_choice(&f.dis);
    let verts = f.dis.piece(alpha);
    let (a, b) = f.dis.piece_diagonals(alpha)[0];
    let end = if verts.iter().all(|&v| (a..=b).contains(&v)) { b } else { a };
    let shift = end - 1;
    let old_label = |k: usize| wrap((k + shift) as i64, big_n);
    let rot = f.dis.rotate(shift);
    let view: Vec<usize> = (1..=big_n).map(|k| f.view[old_label(k) - 1]).collect();
    let qs: Vec<LaurentPoly> = (1..=big_n).map(|k| f.qs[old_label(k) - 1].clone()).collect();
    let local_of_rot: Vec<PieceId> = rot
        .piece_ids()
        .map(|id| {
            let orig: Vec<usize> = rot.piece(id).iter().map(|&v| old_label(v)).collect();
            f.dis.find_piece(&orig).expect("rotation maps pieces to pieces")
        })
        .collect();
    let xs: Vec<LaurentPoly> = local_of_rot.iter().map(|id| f.xs[id.0].clone()).collect();
    let ids: Vec<PieceId> = local_of_rot.iter().map(|id| f.ids[id.0]).collect();

    let deg = verts.len();
    let n = big_n - (deg - 2);
    let alpha_rot = rot
        .find_piece(&std::iter::once(1).chain(n..=big_n).collect::<Vec<_>>())
        .ok_or_else(|| NormalFormError::Invariant("peeled piece not at the end after rotation".into()))?;
    let x = xs[alpha_rot.0].clone();
    let x_inv = unit_inverse(&x)?;
    let g = |k: usize| view[k - 1];

    // Split off the peeled piece's vertices n+1..N.
    for j in n + 1..=big_n {
        let to_one = &product_range(&qs, j, big_n) * &x.pow((big_n + 1 - j) as u32);
        let to_n = &product_range(&qs, n, j - 1) * &x.pow((j - n) as u32);
        r.add_col(g(j), g(1), -unit_inverse(&to_one)?);
        r.add_col(g(j), g(n), -to_n);
    }
    for j in n + 1..=big_n {
        let to_one = &product_range(&qs, j, big_n) * &x.pow((big_n + 1 - j) as u32);
        let to_n = &product_range(&qs, n, j - 1) * &x.pow((j - n) as u32);
        r.add_row(g(j), g(1), -to_one);
        r.add_row(g(j), g(n), -unit_inverse(&to_n)?);
    }
    for i in 1..=n {
        for j in n + 1..=big_n {
            if !r.entry(g(i), g(j)).is_zero() || !r.entry(g(j), g(i)).is_zero() {
                return Err(NormalFormError::Invariant(format!("off-diagonal block not cleared at ({i}, {j})")));
            }
        }
    }

    // Unit block: -x times the lower-right block has the unit-block shape.
    let s = deg - 2;
    let block: Vec<usize> = view[n..].to_vec();
    for &k in &block {
        r.scale_row(k, -x.clone())?;
    }
    let eps: LaurentPoly = qs.iter().cloned().product();
    let c: LaurentPoly = rot
        .piece_ids()
        .map(|id| xs[id.0].pow(rot.degree(id) as u32 - 2))
        .product();
    let y = &(&eps * &c) * &x.pow(2);
    let units: Vec<LaurentPoly> = (1..s).map(|i| &qs[n + i - 1] * &x).collect();
    if r.work().submatrix(&block, &block) != unit_block_matrix(s, &y, &units)? {
        return Err(NormalFormError::Invariant("peeled block is not a unit block".into()));
    }
    reduce_unit_block_in(r, &block, &units)?;
    for (k, u) in units.iter().enumerate() {
        r.scale_row(block[k], -unit_inverse(u)?)?;
    }
    let delta: LaurentPoly = units.iter().cloned().product();
    r.scale_row(block[s - 1], delta)?;
    f.labels[block[s - 1]] = Some(ids[alpha_rot.0]);
    let _ = x_inv;

    // Recurse on the remaining n-gon.
    let child = Dissection::build(n, rot.diagonals().iter().copied().filter(|&d| d != (1, n)))
        .expect("removing a boundary piece leaves a valid dissection");
    let child_to_rot: Vec<PieceId> = child
        .piece_ids()
        .map(|id| rot.find_piece(child.piece(id)).expect("child pieces are pieces of the parent"))
        .collect();
    let mut child_qs = qs[..n - 1].to_vec();
    child_qs.push(&product_range(&qs, n, big_n) * &x.pow(s as u32));
    reduce_frame(
        r,
        Frame {
            view: view[..n].to_vec(),
            ids: child_to_rot.iter().map(|id| ids[id.0]).collect(),
            xs: child_to_rot.iter().map(|id| xs[id.0].clone()).collect(),
            qs: child_qs,
            dis: child,
            labels: f.labels,
        },
    )
}

/// Diagonal form for arbitrary unit piece and edge weights.
///
/// On return, `D` lists `Σ_{j=0}^{d_i-2} (ε c x_i^2)^j` for the pieces in
/// id order, followed by ones.
pub fn diagonalize_weighted(d: &Dissection, xs: &[LaurentPoly], qs: &[LaurentPoly]) -> Result<DiagonalForm, NormalFormError> {
    for w in xs.iter().chain(qs) {
        unit_inverse(w)?;
    }
    let w = weighted_matrix(d, xs, qs)?;
    let n = d.n();
    let mut r = Reducer::new(w.clone());
    let mut labels = vec![None; n];
    reduce_frame(
        &mut r,
        Frame {
            view: (0..n).collect(),
            dis: d.clone(),
            ids: d.piece_ids().collect(),
            xs: xs.to_vec(),
            qs: qs.to_vec(),
            labels: &mut labels,
        },
    )?;
    let mut labelled: Vec<(PieceId, usize)> = labels
        .iter()
        .enumerate()
        .filter_map(|(k, l)| l.map(|id| (id, k)))
        .collect();
    labelled.sort();
    let order: Vec<usize> = labelled
        .iter()
        .map(|&(_, k)| k)
        .chain((0..n).filter(|k| labels[*k].is_none()))
        .collect();
    let sorted_labels = order.iter().map(|&k| labels[k]).collect();
    r.permute_rows(order.clone());
    r.permute_cols(order);
    DiagonalForm::from_reducer(&w, r, sorted_labels)
}

pub fn diagonalize(d: &Dissection, flavor: Flavor) -> Result<DiagonalForm, NormalFormError> {
    diagonalize_weighted(d, &flavor.piece_weights(d), &flavor.edge_weights(d))
}

/// The diagonal `Δ(Σ_{j=0}^{d_1-2} (ε c x_1^2)^j, ..., 1, ..., 1)` for a flavor.
pub fn expected_diagonal(d: &Dissection, flavor: Flavor) -> Vec<LaurentPoly> {
    let ctx = ComplementContext::new(d);
    let (eps, c) = match flavor {
        Flavor::Xq => (ctx.eps(), ctx.c()),
        Flavor::X => (LaurentPoly::one(), ctx.c()),
        Flavor::Arithmetic => (LaurentPoly::one(), LaurentPoly::one()),
    };
    let ec = &eps * &c;
    let weights = flavor.piece_weights(d);
    let mut out: Vec<LaurentPoly> = d
        .piece_ids()
        .map(|id| geometric_sum(&(&ec * &weights[id.0].pow(2)), d.degree(id) - 2))
        .collect();
    out.resize(d.n(), LaurentPoly::one());
    out
}

/// `U M_D V = Δ(d_1 - 1, ..., d_m - 1, 1, ..., 1)` over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDiagonalForm {
    pub u: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub v: IntMatrix,
    pub det_u: BigInt,
    pub det_v: BigInt,
}

/// The arithmetic specialisation of [`diagonalize`]: every unit is `±1`, so
/// the transforming matrices are unimodular integer matrices.
pub fn arithmetic_diagonal_form(d: &Dissection) -> Result<IntegerDiagonalForm, NormalFormError> {
    let form = diagonalize(d, Flavor::Arithmetic)?;
    let to_int = |m: &PolyMatrix| -> Result<IntMatrix, NormalFormError> {
        IntMatrix::try_from_poly(m).ok_or_else(|| NormalFormError::Invariant("non-integer transform".into()))
    };
    let constant = |p: &LaurentPoly| -> Result<BigInt, NormalFormError> {
        p.as_constant().ok_or_else(|| NormalFormError::Invariant("non-integer entry".into()))
    };
    Ok(IntegerDiagonalForm {
        u: to_int(&form.p)?,
        diagonal: form.d.iter().map(constant).collect::<Result<_, _>>()?,
        v: to_int(&form.q)?,
        det_u: constant(&det_expand(&form.p)?)?,
        det_v: constant(&det_expand(&form.q)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissection::enumerate_dissections;
    use crate::poly::{parse_poly, VarNames};
    use crate::walks::weight_matrix;

    fn heptagon() -> Dissection {
        Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap()
    }

    #[test]
    fn heptagon_piece_weighted() {
        let d = heptagon();
        let form = diagonalize(&d, Flavor::X).unwrap();
        let names = VarNames::with_pieces(&["a", "b", "c", "d"]);
        let expected: Vec<LaurentPoly> = [
            "1 + a^3 b^2 c d",
            "1 + a b^4 c d + (a b^4 c d)^2",
            "1 + a b^2 c^3 d",
            "1 + a b^2 c d^3",
            "1",
            "1",
            "1",
        ]
        .iter()
        .map(|s| parse_poly(s, &names).unwrap())
        .collect();
        assert_eq!(form.d, expected);
        assert!(form.verify(weight_matrix(&d, Flavor::X).matrix()));
    }

    #[test]
    fn heptagon_edge_weighted() {
        let d = heptagon();
        let form = diagonalize(&d, Flavor::Xq).unwrap();
        assert_eq!(form.d, expected_diagonal(&d, Flavor::Xq));
        let w = weight_matrix(&d, Flavor::Xq);
        assert!(form.verify(w.matrix()));
        let product: LaurentPoly = form.d.iter().cloned().product();
        assert_eq!(&(&form.det_p * &form.det_q) * &det_expand(w.matrix()).unwrap(), product);
    }

    #[test]
    fn heptagon_integer_form() {
        let f = arithmetic_diagonal_form(&heptagon()).unwrap();
        let diag: Vec<i64> = f.diagonal.iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(diag, vec![2, 3, 2, 2, 1, 1, 1]);
        assert!(f.det_u == BigInt::from(1) || f.det_u == BigInt::from(-1));
        assert!(f.det_v == BigInt::from(1) || f.det_v == BigInt::from(-1));
    }

    #[test]
    fn all_small_dissections() {
        for n in 3..=6 {
            for d in enumerate_dissections(n).unwrap() {
                for flavor in Flavor::ALL {
                    let form = diagonalize(&d, flavor).unwrap_or_else(|e| panic!("{d} {flavor:?}: {e}"));
                    assert_eq!(form.d, expected_diagonal(&d, flavor), "{d} {flavor:?}");
                }
            }
        }
    }
}
