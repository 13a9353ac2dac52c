//! Local 2×2 minors of a weight matrix and the zig-zag sequences that
//! predict them.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dissection::{ccw_distance, wrap, Dissection, EdgeRef, PieceId};
use crate::poly::LaurentPoly;
use crate::walks::{Flavor, WeightMatrix};

use super::FriezeError;

/// `d(e, f) = det [[v_{i,j}, v_{i,j+1}], [v_{i+1,j}, v_{i+1,j+1}]]` for
/// `e = e_i`, `f = e_j`, indices taken mod `n`.
pub fn minor(w: &WeightMatrix, e: EdgeRef, f: EdgeRef) -> LaurentPoly {
    let (i, j) = (e.0 as i64, f.0 as i64);
    let a = w.entry(i, j) * w.entry(i + 1, j + 1);
    let b = w.entry(i, j + 1) * w.entry(i + 1, j);
    &a - &b
}

/// A chain `e = z_0, z_1, ..., z_s = f` where `z_1..z_{s-1}` are diagonals,
/// consecutive members share a piece and a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZag {
    pub from: EdgeRef,
    pub to: EdgeRef,
    /// All members of the chain as vertex pairs, `e` and `f` included.
    pub sequence: Vec<(usize, usize)>,
    /// `p_k` contains `z_k` and `z_{k+1}`.
    pub pieces: Vec<PieceId>,
    pub zig_pieces: BTreeSet<PieceId>,
}

impl ZigZag {
    /// The diagonals `z_1, ..., z_{s-1}`.
    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.sequence[1..self.sequence.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn zag_pieces(&self, d: &Dissection) -> BTreeSet<PieceId> {
        d.piece_ids().filter(|id| !self.zig_pieces.contains(id)).collect()
    }
}

fn check_edge(d: &Dissection, e: EdgeRef) -> Result<(), FriezeError> {
    if (1..=d.n()).contains(&e.0) {
        Ok(())
    } else {
        Err(FriezeError::EdgeOutOfRange { edge: e.0, n: d.n() })
    }
}

fn check_pair(d: &Dissection, e: EdgeRef, f: EdgeRef) -> Result<(), FriezeError> {
    check_edge(d, e)?;
    check_edge(d, f)?;
    if e == f {
        return Err(FriezeError::SameEdge(e.0));
    }
    Ok(())
}

/// Path of pieces in the dual tree (pieces as nodes, diagonals as edges).
fn dual_path(d: &Dissection, from: PieceId, to: PieceId) -> Vec<PieceId> {
    let m = d.num_pieces();
    let mut adjacent = vec![Vec::new(); m];
    for &(a, b) in d.diagonals() {
        let (p, q) = d.diagonal_pieces(a, b).expect("a diagonal borders two pieces");
        adjacent[p.0].push(q);
        adjacent[q.0].push(p);
    }
    let mut parent: Vec<Option<PieceId>> = vec![None; m];
    let mut seen = vec![false; m];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(p) = queue.pop_front() {
        for &q in &adjacent[p.0] {
            if !seen[q.0] {
                seen[q.0] = true;
                parent[q.0] = Some(p);
                queue.push_back(q);
            }
        }
    }
    let mut path = vec![to];
    while let Some(p) = parent[path.last().unwrap().0] {
        path.push(p);
    }
    path.reverse();
    debug_assert_eq!(path[0], from);
    path
}

fn share_vertex(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Vertices `from, from+1, ..., to` (mod `n`).
fn ccw_route(from: usize, to: usize, n: usize) -> impl Iterator<Item = usize> {
    let len = ccw_distance(from, to, n) + 1;
    (0..len).map(move |k| wrap((from + k) as i64, n))
}

/// Pieces with at most one vertex on the counterclockwise route from `j+1`
/// to `i`.
pub fn zig_pieces(d: &Dissection, e: EdgeRef, f: EdgeRef) -> BTreeSet<PieceId> {
    let n = d.n();
    let route: Vec<usize> = ccw_route(wrap(f.0 as i64 + 1, n), e.0, n).collect();
    d.piece_ids()
        .filter(|&id| route.iter().filter(|&&v| d.contains_vertex(id, v)).count() <= 1)
        .collect()
}

/// The zig-zag sequence from `e` to `f`, if one exists. The only candidate
/// is the dual-tree path between the pieces of `e` and `f`, so only
/// consecutive incidence needs checking.
pub fn find_zigzag(d: &Dissection, e: EdgeRef, f: EdgeRef) -> Result<Option<ZigZag>, FriezeError> {
    check_pair(d, e, f)?;
    let n = d.n();
    let pieces = dual_path(d, d.edge_piece(e), d.edge_piece(f));
    let mut sequence = vec![e.endpoints(n)];
    for pair in pieces.windows(2) {
        let shared: Vec<usize> = d
            .piece(pair[0])
            .iter()
            .copied()
            .filter(|&v| d.contains_vertex(pair[1], v))
            .collect();
        sequence.push((shared[0], shared[1]));
    }
    sequence.push(f.endpoints(n));
    if !sequence.windows(2).all(|z| share_vertex(z[0], z[1])) {
        return Ok(None);
    }
    Ok(Some(ZigZag {
        from: e,
        to: f,
        sequence,
        pieces,
        zig_pieces: zig_pieces(d, e, f),
    }))
}

/// Predicted minor for arbitrary piece weights `xs` and edge weights `qs`:
/// zero without a zig-zag sequence, otherwise
/// `q_i q_j Π_{k=i+1}^{j-1} q_k^2 Π_{zig β} x_β^{2(d_β-2)}`.
pub fn minor_formula_weighted(
    d: &Dissection,
    e: EdgeRef,
    f: EdgeRef,
    xs: &[LaurentPoly],
    qs: &[LaurentPoly],
) -> Result<LaurentPoly, FriezeError> {
    let Some(z) = find_zigzag(d, e, f)? else {
        return Ok(LaurentPoly::zero());
    };
    let n = d.n();
    let (i, j) = (e.0, f.0);
    let mut out = &qs[i - 1] * &qs[j - 1];
    let inner = (j as i64 - i as i64 - 1).rem_euclid(n as i64) as usize;
    for k in (1..=inner).map(|s| wrap((i + s) as i64, n)) {
        out = &out * &qs[k - 1].pow(2);
    }
    for beta in &z.zig_pieces {
        out = &out * &xs[beta.0].pow(2 * (d.degree(*beta) as u32 - 2));
    }
    Ok(out)
}

/// The predicted minor in the fully weighted matrix.
pub fn minor_formula(d: &Dissection, e: EdgeRef, f: EdgeRef) -> Result<LaurentPoly, FriezeError> {
    minor_formula_for(d, e, f, Flavor::Xq)
}

pub fn minor_formula_for(d: &Dissection, e: EdgeRef, f: EdgeRef, flavor: Flavor) -> Result<LaurentPoly, FriezeError> {
    minor_formula_weighted(d, e, f, &flavor.piece_weights(d), &flavor.edge_weights(d))
}

/// One row of the full minor table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEntry {
    pub e: EdgeRef,
    pub f: EdgeRef,
    pub minor: LaurentPoly,
    pub formula: LaurentPoly,
    pub zigzag: Option<ZigZag>,
}

impl MinorEntry {
    pub fn agrees(&self) -> bool {
        self.minor == self.formula
    }
}

/// Every ordered pair of boundary edges. On the diagonal the formula column
/// holds `-εc` (specialised to the flavor).
pub fn minor_table(w: &WeightMatrix) -> Vec<MinorEntry> {
    let d = w.dissection();
    let n = d.n();
    let xs = w.flavor().piece_weights(d);
    let qs = w.flavor().edge_weights(d);
    let eps_c: LaurentPoly = qs
        .iter()
        .cloned()
        .chain(d.piece_ids().map(|id| xs[id.0].pow(d.degree(id) as u32 - 2)))
        .product();
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let (e, f) = (EdgeRef(i), EdgeRef(j));
            let (formula, zigzag) = if i == j {
                (-eps_c.clone(), None)
            } else {
                (
                    minor_formula_weighted(d, e, f, &xs, &qs).expect("valid edge pair"),
                    find_zigzag(d, e, f).expect("valid edge pair"),
                )
            };
            out.push(MinorEntry { e, f, minor: minor(w, e, f), formula, zigzag });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarNames};
    use crate::walks::weight_matrix;

    fn pentagon() -> Dissection {
        Dissection::build(5, [(2, 5), (2, 4)]).unwrap()
    }

    #[test]
    fn pentagon_sequence() {
        let d = pentagon();
        let z = find_zigzag(&d, EdgeRef(1), EdgeRef(3)).unwrap().unwrap();
        assert_eq!(z.sequence, vec![(1, 2), (2, 5), (2, 4), (3, 4)]);
        assert_eq!(z.diagonals(), &[(2, 5), (2, 4)]);
        let back = find_zigzag(&d, EdgeRef(3), EdgeRef(1)).unwrap().unwrap();
        assert_eq!(back.diagonals(), &[(2, 4), (2, 5)]);
        assert!(find_zigzag(&d, EdgeRef(1), EdgeRef(1)).is_err());
    }

    #[test]
    fn pentagon_minors() {
        let d = pentagon();
        let w = weight_matrix(&d, Flavor::Xq);
        // x2 is the triangle {2,3,4}.
        let ef = parse_poly("q1 q3 q2^2 x2^2", &VarNames::default()).unwrap();
        let fe = parse_poly("q1 q3 q4^2 q5^2 x1^2 x3^2", &VarNames::default()).unwrap();
        assert_eq!(minor(&w, EdgeRef(1), EdgeRef(3)), ef);
        assert_eq!(minor_formula(&d, EdgeRef(1), EdgeRef(3)).unwrap(), ef);
        assert_eq!(minor(&w, EdgeRef(3), EdgeRef(1)), fe);
        assert_eq!(minor_formula(&d, EdgeRef(3), EdgeRef(1)).unwrap(), fe);
    }

    #[test]
    fn single_piece_needs_incident_edges() {
        let d = Dissection::trivial(6).unwrap();
        assert!(find_zigzag(&d, EdgeRef(1), EdgeRef(2)).unwrap().is_some());
        assert!(find_zigzag(&d, EdgeRef(1), EdgeRef(3)).unwrap().is_none());
        let w = weight_matrix(&d, Flavor::Xq);
        assert!(minor(&w, EdgeRef(1), EdgeRef(3)).is_zero());
    }

    #[test]
    fn table_agrees_on_heptagon() {
        let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
        for flavor in Flavor::ALL {
            let table = minor_table(&weight_matrix(&d, flavor));
            assert_eq!(table.len(), 49);
            assert!(table.iter().all(MinorEntry::agrees), "{flavor:?}");
        }
    }
}
