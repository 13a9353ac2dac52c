//! The two building blocks of the diagonal form: the undissected polygon
//! and the unit block, plus the Toeplitz matrices they specialise to.

use crate::dissection::Dissection;
use crate::matrix::PolyMatrix;
use crate::poly::{geometric_sum, LaurentPoly};
use crate::walks::weighted_matrix;

use super::reducer::{unit_inverse, Reducer};
use super::{DiagonalForm, NormalFormError};

/// Product `Π_{k in range} values[k-1]` for a 1-based inclusive range.
pub(crate) fn product_range(values: &[LaurentPoly], from: usize, to: usize) -> LaurentPoly {
    if from > to {
        return LaurentPoly::one();
    }
    values[from - 1..to].iter().cloned().product()
}

/// Move the first column of the view to its end.
fn cycle_view_columns(r: &mut Reducer, view: &[usize]) {
    let mut perm: Vec<usize> = (0..r.work().cols()).collect();
    let len = view.len();
    for k in 0..len {
        perm[view[k]] = view[(k + 1) % len];
    }
    r.permute_cols(perm);
}

/// Diagonalise the weight matrix of an undissected `d`-gon sitting at the
/// positions `view` of the working matrix.
///
/// Subtract `q_{i-1} x` times column `i-1` from column `i` (right to left),
/// clear the first column with columns `3..d`, clear below each `q_i` with
/// rows `1..d-1`, then move the first column to the end. The view ends up as
/// `Δ(q_1, ..., q_{d-1}, q_d Σ_{j=0}^{d-2} (ε x^d)^j)`.
pub(crate) fn reduce_polygon(
    r: &mut Reducer,
    view: &[usize],
    x: &LaurentPoly,
    qs: &[LaurentPoly],
) -> Result<(), NormalFormError> {
    let d = view.len();
    let g = |k: usize| view[k - 1];
    for i in (2..=d).rev() {
        r.add_col(g(i), g(i - 1), -(&qs[i - 2] * x));
    }
    for row in 2..d {
        r.clear_with_col(g(row), g(1), g(row + 1))?;
    }
    for row in 1..d {
        r.clear_with_row(g(row + 1), g(row + 1), g(row))?;
    }
    cycle_view_columns(r, view);
    Ok(())
}

/// Unit-block matrix `U`: `1+y` on the diagonal, `u_i ⋯ u_{j-1} y` above,
/// `(u_j ⋯ u_{i-1})^{-1}` below.
pub fn unit_block_matrix(s: usize, y: &LaurentPoly, units: &[LaurentPoly]) -> Result<PolyMatrix, NormalFormError> {
    if s == 0 || units.len() + 1 != s {
        return Err(NormalFormError::BadParameter(format!(
            "unit block of size {s} needs {} units, got {}",
            s.saturating_sub(1),
            units.len()
        )));
    }
    let inverses = units.iter().map(unit_inverse).collect::<Result<Vec<_>, _>>()?;
    let one_plus_y = &LaurentPoly::one() + y;
    Ok(PolyMatrix::from_fn(s, s, |i, j| {
        let (i, j) = (i + 1, j + 1);
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => one_plus_y.clone(),
            std::cmp::Ordering::Less => &product_range(units, i, j - 1) * y,
            std::cmp::Ordering::Greater => product_range(&inverses, j, i - 1),
        }
    }))
}

/// Reduce a unit block at `view` to `Δ(-u_1, ..., -u_{s-1}, δ^{-1} Σ_{j=0}^{s} y^j)`.
pub(crate) fn reduce_unit_block_in(r: &mut Reducer, view: &[usize], units: &[LaurentPoly]) -> Result<(), NormalFormError> {
    let s = view.len();
    let g = |k: usize| view[k - 1];
    for i in (2..=s).rev() {
        r.add_col(g(i), g(i - 1), -units[i - 2].clone());
    }
    for row in 1..s {
        r.clear_with_col(g(row), g(1), g(row + 1))?;
    }
    for k in 2..=s {
        r.clear_with_row(g(k), g(k), g(k - 1))?;
    }
    cycle_view_columns(r, view);
    Ok(())
}

/// Diagonal forms of the undissected polygon.
#[derive(Debug, Clone)]
pub struct TrivialForms {
    /// `P W Q = Δ(q_1, ..., q_{d-1}, q_d Σ_{j=0}^{d-2} (ε x^d)^j)`.
    pub raw: DiagonalForm,
    /// `P W Q = Δ(Σ_{j=0}^{d-2} (ε x^d)^j, 1, ..., 1)`.
    pub normalized: DiagonalForm,
}

/// `W_d(x; q)` for an undissected `d`-gon with piece weight `x` and edge
/// weights `qs` (all units).
pub fn polygon_matrix(x: &LaurentPoly, qs: &[LaurentPoly]) -> Result<PolyMatrix, NormalFormError> {
    let d = qs.len();
    if d < 3 {
        return Err(NormalFormError::BadParameter(format!("a polygon needs degree >= 3, got {d}")));
    }
    let dis = Dissection::trivial(d).expect("d >= 3");
    Ok(weighted_matrix(&dis, std::slice::from_ref(x), qs)?)
}

pub fn diagonalize_trivial(x: &LaurentPoly, qs: &[LaurentPoly]) -> Result<TrivialForms, NormalFormError> {
    let w = polygon_matrix(x, qs)?;
    unit_inverse(x)?;
    for q in qs {
        unit_inverse(q)?;
    }
    let d = qs.len();
    let view: Vec<usize> = (0..d).collect();
    let mut r = Reducer::new(w.clone());
    reduce_polygon(&mut r, &view, x, qs)?;
    let raw = DiagonalForm::from_reducer(&w, r.clone(), vec![None; d])?;

    for (k, q) in qs.iter().enumerate() {
        r.scale_row(k, unit_inverse(q)?)?;
    }
    let order: Vec<usize> = std::iter::once(d - 1).chain(0..d - 1).collect();
    r.permute_rows(order.clone());
    r.permute_cols(order);
    let mut labels = vec![None; d];
    labels[0] = Some(crate::dissection::PieceId(0));
    let normalized = DiagonalForm::from_reducer(&w, r, labels)?;
    Ok(TrivialForms { raw, normalized })
}

/// `P U Q = Δ(-u_1, ..., -u_{s-1}, δ^{-1} Σ_{j=0}^{s} y^j)` with `δ = Π u_i`.
pub fn reduce_unit_block(s: usize, y: &LaurentPoly, units: &[LaurentPoly]) -> Result<DiagonalForm, NormalFormError> {
    let u = unit_block_matrix(s, y, units)?;
    let mut r = Reducer::new(u.clone());
    let view: Vec<usize> = (0..s).collect();
    reduce_unit_block_in(&mut r, &view, units)?;
    DiagonalForm::from_reducer(&u, r, vec![None; s])
}

/// The `(d-m) × (d-m)` Toeplitz matrix with `x^{j-i-1}` above the diagonal,
/// zeros on it and `q x^{d-1-(i-j)}` below, in the variables `x = x1`,
/// `q = q1`. It equals the weight matrix of a `(d-m)`-gon with piece weight
/// `x` and edge weights [`toeplitz_edge_weights`].
pub fn toeplitz_matrix(d: usize, m: usize) -> Result<PolyMatrix, NormalFormError> {
    if d < 3 || m > d - 2 {
        return Err(NormalFormError::BadParameter(format!(
            "Toeplitz matrix needs d >= 3 and 0 <= m <= d-2, got d={d}, m={m}"
        )));
    }
    let size = d - m;
    let x = LaurentPoly::x(1);
    let q = LaurentPoly::q(1);
    Ok(PolyMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => x.pow((j - i - 1) as u32),
        std::cmp::Ordering::Equal => LaurentPoly::zero(),
        std::cmp::Ordering::Greater => &q * &x.pow((d - 1 - (i - j)) as u32),
    }))
}

/// Edge weights `(1, ..., 1, q x^m)` realising the Toeplitz matrix as the
/// weight matrix of a `(d-m)`-gon.
pub fn toeplitz_edge_weights(d: usize, m: usize) -> Vec<LaurentPoly> {
    let mut qs = vec![LaurentPoly::one(); d - m];
    qs[d - m - 1] = &LaurentPoly::q(1) * &LaurentPoly::x(1).pow(m as u32);
    qs
}

/// `(-1)^{d-m-1} q x^m Σ_{j=0}^{d-2-m} (q x^d)^j`.
pub fn toeplitz_det_formula(d: usize, m: usize) -> LaurentPoly {
    let x = LaurentPoly::x(1);
    let q = LaurentPoly::q(1);
    let y = &q * &x.pow(d as u32);
    let value = &(&q * &x.pow(m as u32)) * &geometric_sum(&y, d - 2 - m);
    if (d - m - 1).is_multiple_of(2) {
        value
    } else {
        -value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::det_expand;
    use crate::poly::{parse_poly, VarNames};

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, &VarNames::default()).unwrap()
    }

    #[test]
    fn triangle_normalizes() {
        let ones = vec![LaurentPoly::one(); 3];
        let forms = diagonalize_trivial(&LaurentPoly::x(1), &ones).unwrap();
        assert_eq!(forms.normalized.d, vec![p("1 + x1^3"), p("1"), p("1")]);
        let w = polygon_matrix(&LaurentPoly::x(1), &ones).unwrap();
        // 3×3 expansion: (-1)^2 (1 + x^3)
        assert_eq!(det_expand(&w).unwrap(), p("1 + x1^3"));
    }

    #[test]
    fn symbolic_polygon() {
        for d in 3..=6 {
            let qs: Vec<_> = (1..=d).map(LaurentPoly::q).collect();
            let x = LaurentPoly::x(1);
            let forms = diagonalize_trivial(&x, &qs).unwrap();
            let eps: LaurentPoly = qs.iter().cloned().product();
            let sum = geometric_sum(&(&eps * &x.pow(d as u32)), d - 2);
            let mut expected: Vec<_> = qs[..d - 1].to_vec();
            expected.push(&qs[d - 1] * &sum);
            assert_eq!(forms.raw.d, expected);
            let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(forms.raw.det_p, LaurentPoly::one());
            assert_eq!(forms.raw.det_q, LaurentPoly::constant(sign));
        }
    }

    #[test]
    fn circulant_determinant() {
        // d = 4, q = (q,1,1,1): det = -(q + q^2 x^4 + q^3 x^8)
        let mut qs = vec![LaurentPoly::one(); 4];
        qs[0] = LaurentPoly::q(1);
        let w = polygon_matrix(&LaurentPoly::x(1), &qs).unwrap();
        assert_eq!(det_expand(&w).unwrap(), p("-(q1 + q1^2 x1^4 + q1^3 x1^8)"));
    }

    #[test]
    fn unit_block_small_cases() {
        let y = p("x1");
        let one = reduce_unit_block(1, &y, &[]).unwrap();
        assert_eq!(one.d, vec![p("1 + x1")]);
        // s = 2: (1+y)^2 - y
        let u = unit_block_matrix(2, &y, &[p("q1")]).unwrap();
        assert_eq!(det_expand(&u).unwrap(), p("1 + x1 + x1^2"));
        let units = [p("q1*x2"), p("q2*x2")];
        let u3 = unit_block_matrix(3, &y, &units).unwrap();
        assert_eq!(det_expand(&u3).unwrap(), p("1 + x1 + x1^2 + x1^3"));
        let form = reduce_unit_block(3, &y, &units).unwrap();
        assert_eq!(form.d, vec![p("-q1*x2"), p("-q2*x2"), p("q1^-1 q2^-1 x2^-2 (1 + x1 + x1^2 + x1^3)")]);
        assert!(unit_block_matrix(2, &y, &[p("1 + q1")]).is_err());
        assert!(unit_block_matrix(3, &y, &[p("q1")]).is_err());
    }

    #[test]
    fn toeplitz_examples() {
        let t = toeplitz_matrix(5, 2).unwrap();
        assert_eq!(det_expand(&t).unwrap(), p("q1 x1^2 (1 + q1 x1^5)"));
        let t = toeplitz_matrix(3, 0).unwrap();
        assert_eq!(det_expand(&t).unwrap(), p("q1 + q1^2 x1^3"));
        assert_eq!(toeplitz_det_formula(3, 0), p("q1 + q1^2 x1^3"));
        assert!(toeplitz_matrix(4, 3).is_err());
        assert!(toeplitz_matrix(2, 0).is_err());
    }
}
