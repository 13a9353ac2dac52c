//! Counterclockwise walks around a dissected polygon and the matrices that
//! count or weigh them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dissection::{wrap, Dissection, PieceId};
use crate::matrix::PolyMatrix;
use crate::poly::{LaurentPoly, PolyError, Var};

/// Which weights a walk matrix records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Plain walk counts `M_D`.
    Arithmetic,
    /// Piece weights only, `W_D(x)`.
    X,
    /// Piece and edge weights, `W_D(x;q)`.
    Xq,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Arithmetic, Flavor::X, Flavor::Xq];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Arithmetic => "arithmetic",
            Flavor::X => "x",
            Flavor::Xq => "xq",
        }
    }

    /// Piece weights for this flavor: `x_l` or `1`.
    pub fn piece_weights(self, d: &Dissection) -> Vec<LaurentPoly> {
        d.piece_ids()
            .map(|id| match self {
                Flavor::Arithmetic => LaurentPoly::one(),
                Flavor::X | Flavor::Xq => id.poly(),
            })
            .collect()
    }

    /// Edge weights for this flavor: `q_i` or `1`.
    pub fn edge_weights(self, d: &Dissection) -> Vec<LaurentPoly> {
        (1..=d.n())
            .map(|i| match self {
                Flavor::Xq => LaurentPoly::q(i),
                Flavor::Arithmetic | Flavor::X => LaurentPoly::one(),
            })
            .collect()
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "arithmetic" => Ok(Flavor::Arithmetic),
            "x" => Ok(Flavor::X),
            "xq" => Ok(Flavor::Xq),
            other => Err(format!("unknown flavor {other:?} (expected arithmetic, x or xq)")),
        }
    }
}

/// A walk from `from` to `to`: `pieces[k]` is the piece chosen at vertex
/// `from + k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub from: usize,
    pub to: usize,
    pub pieces: Vec<PieceId>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Intermediate vertices, in walking order.
    pub fn vertices(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.pieces.len()).map(move |k| wrap((self.from + k) as i64, n))
    }
}

/// All walks from `i` to `j` in lexicographic order of piece ids.
pub fn enumerate_walks(d: &Dissection, i: usize, j: usize) -> Vec<Walk> {
    let n = d.n();
    let (i, j) = (wrap(i as i64, n), wrap(j as i64, n));
    if i == j {
        return Vec::new();
    }
    let len = crate::dissection::ccw_distance(i, j, n) - 1;
    let caps: Vec<usize> = d.piece_type().iter().map(|deg| deg - 2).collect();
    let fans: Vec<Vec<PieceId>> = (1..=len)
        .map(|k| {
            let mut ids = d.pieces_at_vertex(wrap((i + k) as i64, n)).unwrap();
            ids.sort();
            ids
        })
        .collect();
    let mut out = Vec::new();
    let mut used = vec![0usize; d.num_pieces()];
    let mut current = Vec::with_capacity(len);
    extend_walks(&fans, &caps, &mut used, &mut current, &mut |w| {
        out.push(Walk {
            from: i,
            to: j,
            pieces: w.to_vec(),
        })
    });
    out
}

fn extend_walks(
    fans: &[Vec<PieceId>],
    caps: &[usize],
    used: &mut [usize],
    current: &mut Vec<PieceId>,
    emit: &mut dyn FnMut(&[PieceId]),
) {
    let k = current.len();
    if k == fans.len() {
        emit(current);
        return;
    }
    for &p in &fans[k] {
        if used[p.0] < caps[p.0] {
            used[p.0] += 1;
            current.push(p);
            extend_walks(fans, caps, used, current, emit);
            current.pop();
            used[p.0] -= 1;
        }
    }
}

pub fn walk_weight(d: &Dissection, w: &Walk, flavor: Flavor) -> LaurentPoly {
    let pieces: LaurentPoly = match flavor {
        Flavor::Arithmetic => return LaurentPoly::one(),
        _ => w.pieces.iter().map(|p| p.poly()).product(),
    };
    if flavor == Flavor::Xq {
        &pieces * &edge_product(w.from, w.to, d.n(), LaurentPoly::q)
    } else {
        pieces
    }
}

/// `Π_{s=i}^{j-1} weight(s)` over the counterclockwise route from `i` to `j`.
pub fn edge_product<F: Fn(usize) -> LaurentPoly>(i: usize, j: usize, n: usize, weight: F) -> LaurentPoly {
    let steps = crate::dissection::ccw_distance(i, j, n);
    (0..steps).map(|k| weight(wrap((i + k) as i64, n))).product()
}

/// A walk matrix together with the dissection it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    dissection: Dissection,
    flavor: Flavor,
    matrix: PolyMatrix,
}

impl WeightMatrix {
    pub fn new(dissection: Dissection, flavor: Flavor, matrix: PolyMatrix) -> Self {
        assert_eq!(matrix.rows(), dissection.n());
        WeightMatrix {
            dissection,
            flavor,
            matrix,
        }
    }

    pub fn dissection(&self) -> &Dissection {
        &self.dissection
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn matrix_mut(&mut self) -> &mut PolyMatrix {
        &mut self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.dissection.n()
    }

    /// Entry for vertex labels `i`, `j` (reduced mod `n`).
    pub fn entry(&self, i: i64, j: i64) -> &LaurentPoly {
        let n = self.n();
        &self.matrix[(wrap(i, n) - 1, wrap(j, n) - 1)]
    }
}

/// The piece-weighted matrix `W_D(x)` computed row by row.
///
/// Along a row the accumulator holds the weighted sum of all partial walks.
/// Since the exponent of `x_l` in a walk weight is the number of times piece
/// `l` was used, the per-piece usage cap is enforced by discarding terms whose
/// exponent would exceed `d_l - 2`.
fn piece_weighted_rows(d: &Dissection) -> PolyMatrix {
    let n = d.n();
    let caps: Vec<i32> = d.piece_type().iter().map(|&deg| deg as i32 - 2).collect();
    let fans: Vec<Vec<PieceId>> = (1..=n).map(|v| d.pieces_at_vertex(v).unwrap()).collect();
    let rows: Vec<Vec<LaurentPoly>> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![LaurentPoly::zero(); n];
            let mut acc = LaurentPoly::one();
            row[wrap(i as i64 + 1, n) - 1] = acc.clone();
            for step in 2..n {
                let k = wrap((i + step - 1) as i64, n);
                acc = fans[k - 1]
                    .iter()
                    .map(|p| acc.mul_var_capped(p.var(), caps[p.0]))
                    .sum();
                row[wrap((i + step) as i64, n) - 1] = acc.clone();
            }
            row
        })
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Walk matrix with arbitrary piece and edge weights:
/// entry `(i,j)` is `Σ_walks Π piece_weight · Π_{s=i}^{j-1} edge_weight(s)`.
pub fn weighted_matrix(d: &Dissection, piece_weights: &[LaurentPoly], edge_weights: &[LaurentPoly]) -> Result<PolyMatrix, PolyError> {
    assert_eq!(piece_weights.len(), d.num_pieces());
    assert_eq!(edge_weights.len(), d.n());
    let n = d.n();
    let symbolic = piece_weighted_rows(d);
    let assignment: BTreeMap<Var, LaurentPoly> = d
        .piece_ids()
        .filter(|id| piece_weights[id.0] != id.poly())
        .map(|id| (id.var(), piece_weights[id.0].clone()))
        .collect();
    let mut m = PolyMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let w = &symbolic[(i, j)];
            if w.is_zero() {
                continue;
            }
            let w = if assignment.is_empty() { w.clone() } else { w.substitute(&assignment)? };
            let edges = edge_product(i + 1, j + 1, n, |s| edge_weights[s - 1].clone());
            m[(i, j)] = &w * &edges;
        }
    }
    Ok(m)
}

pub fn weight_matrix(d: &Dissection, flavor: Flavor) -> WeightMatrix {
    let matrix = match flavor {
        Flavor::X => piece_weighted_rows(d),
        _ => weighted_matrix(d, &flavor.piece_weights(d), &flavor.edge_weights(d))
            .expect("variables and constants substitute without inversion"),
    };
    WeightMatrix::new(d.clone(), flavor, matrix)
}

/// Entrywise substitution. The flavor tag is kept as-is.
pub fn specialize(w: &WeightMatrix, assignment: &BTreeMap<Var, LaurentPoly>) -> Result<WeightMatrix, PolyError> {
    let matrix = w.matrix().try_map(|p| p.substitute(assignment))?;
    Ok(WeightMatrix::new(w.dissection().clone(), w.flavor(), matrix))
}

/// Assignment sending every piece and edge variable of `d` to `1`.
pub fn all_ones(d: &Dissection) -> BTreeMap<Var, LaurentPoly> {
    d.var_set().vars().map(|v| (v, LaurentPoly::one())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarNames};

    fn heptagon() -> Dissection {
        Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap()
    }

    fn abcd(s: &str) -> LaurentPoly {
        parse_poly(s, &VarNames::with_pieces(&["a", "b", "c", "d"])).unwrap()
    }

    #[test]
    fn heptagon_walks_from_vertex_one() {
        let d = heptagon();
        let (a, b, c, dd) = (PieceId(0), PieceId(1), PieceId(2), PieceId(3));
        let to4: Vec<_> = enumerate_walks(&d, 1, 4).into_iter().map(|w| w.pieces).collect();
        assert_eq!(to4, vec![vec![a, b], vec![a, c], vec![b, b], vec![b, c]]);
        let to7: Vec<_> = enumerate_walks(&d, 1, 7).into_iter().map(|w| w.pieces).collect();
        assert_eq!(to7, vec![vec![a, b, c, dd, b]]);
        assert!(enumerate_walks(&d, 3, 3).is_empty());
        let adjacent = enumerate_walks(&d, 7, 1);
        assert_eq!(adjacent.len(), 1);
        assert!(adjacent[0].is_empty());
    }

    #[test]
    fn walk_weights() {
        let d = heptagon();
        let w = &enumerate_walks(&d, 1, 7)[0];
        assert_eq!(walk_weight(&d, w, Flavor::X), abcd("a*b^2*c*d"));
        assert_eq!(walk_weight(&d, w, Flavor::Arithmetic), LaurentPoly::one());
        let empty = &enumerate_walks(&d, 4, 5)[0];
        assert_eq!(walk_weight(&d, empty, Flavor::Xq), LaurentPoly::q(4));
        let c = abcd("a*b^2*c*d");
        for i in 1..=7 {
            let back = enumerate_walks(&d, i + 1, i);
            assert_eq!(back.len(), 1);
            assert_eq!(walk_weight(&d, &back[0], Flavor::X), c);
        }
    }

    #[test]
    fn heptagon_first_rows() {
        let d = heptagon();
        let m = weight_matrix(&d, Flavor::Arithmetic);
        let row: Vec<_> = (1..=7).map(|j| m.entry(1, j).as_constant().unwrap()).collect();
        assert_eq!(row, [0, 1, 2, 4, 6, 2, 1].map(num_bigint::BigInt::from));

        let w = weight_matrix(&d, Flavor::X);
        let expected = [
            "0",
            "1",
            "a+b",
            "(a+b)(b+c)",
            "(a+b)(b+c)d+(a+b)b c",
            "(a+b)b c d",
            "a b^2 c d",
        ];
        for (j, e) in expected.iter().enumerate() {
            assert_eq!(w.entry(1, j as i64 + 1), &abcd(e), "entry (1,{})", j + 1);
        }
    }

    #[test]
    fn pentagon_second_frieze_row() {
        let d = Dissection::build(5, [(2, 4), (2, 5)]).unwrap();
        let m = weight_matrix(&d, Flavor::Arithmetic);
        let row: Vec<i64> = (1..=5)
            .map(|i| i64::try_from(m.entry(i - 1, i + 1).as_constant().unwrap()).unwrap())
            .collect();
        assert_eq!(row, vec![1, 3, 1, 2, 2]);
    }

    #[test]
    fn edge_weighted_entries_factor() {
        let d = heptagon();
        let w = weight_matrix(&d, Flavor::X);
        let v = weight_matrix(&d, Flavor::Xq);
        for i in 1..=7i64 {
            assert_eq!(v.entry(i, i + 1), &LaurentPoly::q(i as usize));
            for j in 1..=7i64 {
                let qs = edge_product(i as usize, j as usize, 7, LaurentPoly::q);
                if i != j {
                    assert_eq!(v.entry(i, j), &(w.entry(i, j) * &qs));
                }
            }
        }
    }

    #[test]
    fn specialization_to_counts() {
        let d = heptagon();
        let w = weight_matrix(&d, Flavor::X);
        let m = weight_matrix(&d, Flavor::Arithmetic);
        let ones = all_ones(&d);
        assert_eq!(specialize(&w, &ones).unwrap().matrix(), m.matrix());
        let v = weight_matrix(&d, Flavor::Xq);
        assert_eq!(specialize(&v, &ones).unwrap().matrix(), m.matrix());
        assert_eq!(specialize(&w, &BTreeMap::new()).unwrap(), w);
    }
}
