//! Convex polygons cut by noncrossing diagonals.
//!
//! Everything here is combinatorial: vertices are labels `1..=n` in
//! counterclockwise order, and two diagonals cross iff exactly one endpoint
//! of one lies strictly inside the cyclic interval spanned by the other.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{LaurentPoly, Var, VarSet};

/// Largest polygon accepted by [`enumerate_dissections`] unless overridden.
pub const DEFAULT_ENUMERATION_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DissectionError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("({0}, {1}) is a boundary edge or degenerate, not a diagonal")]
    NotADiagonal(usize, usize),
    #[error("diagonal ({0}, {1}) is listed twice")]
    DuplicateDiagonal(usize, usize),
    #[error("diagonals ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("the trivial dissection has no boundary pieces")]
    TrivialDissection,
    #[error("supplied {0} do not match the ones derived from the diagonals")]
    Inconsistent(&'static str),
    #[error("enumeration is limited to 3 <= n <= {guard}, got {n}")]
    GuardExceeded { n: usize, guard: usize },
}

/// Index of a piece in canonical order (0-based). Piece `l` carries the
/// variable `x_{l+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PieceId(pub usize);

impl PieceId {
    pub fn var(self) -> Var {
        Var::x(self.0 + 1)
    }

    pub fn poly(self) -> LaurentPoly {
        LaurentPoly::var(self.var())
    }
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha{}", self.0 + 1)
    }
}

/// Boundary edge `e_i = (i, i+1 mod n)`, `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeRef(pub usize);

impl EdgeRef {
    pub fn endpoints(self, n: usize) -> (usize, usize) {
        (self.0, wrap(self.0 as i64 + 1, n))
    }
}

/// Reduce any integer label to its representative in `1..=n`.
pub fn wrap(v: i64, n: usize) -> usize {
    ((v - 1).rem_euclid(n as i64) + 1) as usize
}

/// Cyclic distance going counterclockwise from `a` to `b`, in `0..n`.
pub fn ccw_distance(a: usize, b: usize, n: usize) -> usize {
    (b as i64 - a as i64).rem_euclid(n as i64) as usize
}

fn normalize(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Whether two chords (given with endpoints on the same polygon) cross in
/// their interiors.
pub fn chords_cross(d1: (usize, usize), d2: (usize, usize)) -> bool {
    let (a, b) = normalize(d1.0, d1.1);
    let strictly_inside = |v: usize| a < v && v < b;
    let (c, d) = d2;
    if c == a || c == b || d == a || d == b {
        return false;
    }
    strictly_inside(c) != strictly_inside(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissection {
    n: usize,
    diagonals: Vec<(usize, usize)>,
    pieces: Vec<Vec<usize>>,
}

impl Dissection {
    pub fn build<I>(n: usize, diagonals: I) -> Result<Self, DissectionError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 3 {
            return Err(DissectionError::TooFewVertices(n));
        }
        let mut diags: Vec<(usize, usize)> = Vec::new();
        for (a, b) in diagonals {
            for v in [a, b] {
                if !(1..=n).contains(&v) {
                    return Err(DissectionError::VertexOutOfRange { vertex: v, n });
                }
            }
            let d = ccw_distance(a, b, n);
            if d <= 1 || d == n - 1 {
                return Err(DissectionError::NotADiagonal(a, b));
            }
            let nd = normalize(a, b);
            if diags.contains(&nd) {
                return Err(DissectionError::DuplicateDiagonal(nd.0, nd.1));
            }
            if let Some(&other) = diags.iter().find(|&&o| chords_cross(o, nd)) {
                return Err(DissectionError::Crossing(other.0, other.1, nd.0, nd.1));
            }
            diags.push(nd);
        }
        diags.sort_unstable();
        let mut pieces = Vec::with_capacity(diags.len() + 1);
        split_faces((1..=n).collect(), &diags, &mut pieces);
        for p in &mut pieces {
            p.sort_unstable();
        }
        pieces.sort();
        Ok(Dissection {
            n,
            diagonals: diags,
            pieces,
        })
    }

    pub fn trivial(n: usize) -> Result<Self, DissectionError> {
        Self::build(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diagonals as `(a, b)` with `a < b`, sorted.
    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn piece_ids(&self) -> impl Iterator<Item = PieceId> {
        (0..self.pieces.len()).map(PieceId)
    }

    /// Vertices of a piece, ascending (which is counterclockwise order).
    pub fn piece(&self, id: PieceId) -> &[usize] {
        &self.pieces[id.0]
    }

    pub fn pieces(&self) -> &[Vec<usize>] {
        &self.pieces
    }

    pub fn degree(&self, id: PieceId) -> usize {
        self.pieces[id.0].len()
    }

    /// Piece degrees in canonical piece order.
    pub fn piece_type(&self) -> Vec<usize> {
        self.pieces.iter().map(Vec::len).collect()
    }

    /// The type as a sorted multiset.
    pub fn type_multiset(&self) -> Vec<usize> {
        let mut t = self.piece_type();
        t.sort_unstable();
        t
    }

    pub fn var_set(&self) -> VarSet {
        VarSet::new(self.num_pieces(), self.n)
    }

    pub fn is_diagonal(&self, a: usize, b: usize) -> bool {
        self.diagonals.binary_search(&normalize(a, b)).is_ok()
    }

    pub fn contains_vertex(&self, id: PieceId, v: usize) -> bool {
        self.pieces[id.0].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<(), DissectionError> {
        if (1..=self.n).contains(&v) {
            Ok(())
        } else {
            Err(DissectionError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Pieces incident to `v`, in fan order from the piece containing the
    /// edge `(v-1, v)` to the piece containing the edge `(v, v+1)`.
    pub fn pieces_at_vertex(&self, v: usize) -> Result<Vec<PieceId>, DissectionError> {
        self.check_vertex(v)?;
        let mut ids: Vec<(usize, PieceId)> = self
            .piece_ids()
            .filter(|&id| self.contains_vertex(id, v))
            .map(|id| {
                // Position of the piece's other neighbour of v, measured clockwise from v.
                let p = self.piece(id);
                let k = p.binary_search(&v).unwrap();
                let prev = p[(k + p.len() - 1) % p.len()];
                (ccw_distance(prev, v, self.n), id)
            })
            .collect();
        ids.sort();
        Ok(ids.into_iter().map(|(_, id)| id).collect())
    }

    /// Pieces with exactly one diagonal among their sides.
    pub fn boundary_pieces(&self) -> Result<Vec<PieceId>, DissectionError> {
        if self.num_pieces() < 2 {
            return Err(DissectionError::TrivialDissection);
        }
        Ok(self
            .piece_ids()
            .filter(|&id| self.piece_diagonals(id).len() == 1)
            .collect())
    }

    /// Sides of the piece that are diagonals of the dissection.
    pub fn piece_diagonals(&self, id: PieceId) -> Vec<(usize, usize)> {
        self.piece_sides(id)
            .into_iter()
            .filter(|&(a, b)| self.is_diagonal(a, b))
            .map(|(a, b)| normalize(a, b))
            .collect()
    }

    /// All sides `(p_k, p_{k+1})` of the piece in counterclockwise order.
    pub fn piece_sides(&self, id: PieceId) -> Vec<(usize, usize)> {
        let p = self.piece(id);
        (0..p.len()).map(|k| (p[k], p[(k + 1) % p.len()])).collect()
    }

    /// The unique piece containing the boundary edge `e_i`.
    pub fn edge_piece(&self, e: EdgeRef) -> PieceId {
        let (a, b) = e.endpoints(self.n);
        self.piece_ids()
            .find(|&id| self.contains_vertex(id, a) && self.contains_vertex(id, b))
            .expect("every boundary edge lies in exactly one piece")
    }

    /// The two pieces sharing a diagonal.
    pub fn diagonal_pieces(&self, a: usize, b: usize) -> Option<(PieceId, PieceId)> {
        let mut it = self
            .piece_ids()
            .filter(|&id| self.contains_vertex(id, a) && self.contains_vertex(id, b));
        Some((it.next()?, it.next()?))
    }

    /// Relabel every vertex `v` as `v - shift (mod n)`.
    pub fn rotate(&self, shift: usize) -> Dissection {
        let n = self.n;
        let relabel = |v: usize| wrap(v as i64 - shift as i64, n);
        Dissection::build(n, self.diagonals.iter().map(|&(a, b)| (relabel(a), relabel(b))))
            .expect("rotation preserves validity")
    }

    /// Find the piece with exactly the given vertex set.
    pub fn find_piece(&self, vertices: &[usize]) -> Option<PieceId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.pieces.binary_search(&v).ok().map(PieceId)
    }

    pub fn to_json(&self) -> DissectionJson {
        DissectionJson {
            n: self.n,
            diagonals: self.diagonals.iter().map(|&(a, b)| [a, b]).collect(),
            pieces: Some(self.pieces.clone()),
            piece_type: Some(self.piece_type()),
        }
    }
}

impl fmt::Display for Dissection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{} {{", self.n)?;
        for (k, (a, b)) in self.diagonals.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

fn split_faces(poly: Vec<usize>, diags: &[(usize, usize)], out: &mut Vec<Vec<usize>>) {
    let len = poly.len();
    let pos = |v: usize| poly.iter().position(|&w| w == v);
    for &(a, b) in diags {
        if let (Some(i), Some(j)) = (pos(a), pos(b)) {
            let gap = (j + len - i) % len;
            if gap <= 1 || gap == len - 1 {
                continue;
            }
            let (i, j) = (i.min(j), i.max(j));
            let first = poly[i..=j].to_vec();
            let second: Vec<usize> = poly[j..].iter().chain(&poly[..=i]).copied().collect();
            split_faces(first, diags, out);
            split_faces(second, diags, out);
            return;
        }
    }
    out.push(poly);
}

/// JSON shape for dissections. Input needs `n` and `diagonals`; output also
/// carries the derived `pieces` and `type`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<Vec<usize>>>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub piece_type: Option<Vec<usize>>,
}

impl DissectionJson {
    /// Build the dissection; derived fields, when present, must agree.
    pub fn to_dissection(&self) -> Result<Dissection, DissectionError> {
        let d = Dissection::build(self.n, self.diagonals.iter().map(|d| (d[0], d[1])))?;
        if self.pieces.as_ref().is_some_and(|p| p.as_slice() != d.pieces()) {
            return Err(DissectionError::Inconsistent("pieces"));
        }
        if self.piece_type.as_ref().is_some_and(|t| *t != d.piece_type()) {
            return Err(DissectionError::Inconsistent("type"));
        }
        Ok(d)
    }
}

/// Enumerate every noncrossing set of diagonals of an `n`-gon, trivial
/// dissection first, in depth-first order over the sorted diagonal list.
pub fn enumerate_dissections(n: usize) -> Result<Dissections, DissectionError> {
    enumerate_dissections_with_guard(n, DEFAULT_ENUMERATION_GUARD)
}

pub fn enumerate_dissections_with_guard(n: usize, guard: usize) -> Result<Dissections, DissectionError> {
    if n < 3 || n > guard {
        return Err(DissectionError::GuardExceeded { n, guard });
    }
    let candidates: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 2..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 1 && b == n))
        .collect();
    let crossing = candidates
        .iter()
        .map(|&d| candidates.iter().map(|&e| chords_cross(d, e)).collect())
        .collect();
    Ok(Dissections {
        n,
        candidates,
        crossing,
        chosen: Vec::new(),
        started: false,
        done: false,
    })
}

/// Stream of dissections produced by [`enumerate_dissections`].
pub struct Dissections {
    n: usize,
    candidates: Vec<(usize, usize)>,
    crossing: Vec<Vec<bool>>,
    chosen: Vec<usize>,
    started: bool,
    done: bool,
}

impl Dissections {
    fn compatible(&self, k: usize) -> bool {
        self.chosen.iter().all(|&c| !self.crossing[c][k])
    }

    fn current(&self) -> Dissection {
        Dissection::build(self.n, self.chosen.iter().map(|&k| self.candidates[k]))
            .expect("enumerated diagonal sets are noncrossing")
    }
}

impl Iterator for Dissections {
    type Item = Dissection;

    fn next(&mut self) -> Option<Dissection> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let mut start = self.chosen.last().map_or(0, |&k| k + 1);
        loop {
            if let Some(k) = (start..self.candidates.len()).find(|&k| self.compatible(k)) {
                self.chosen.push(k);
                return Some(self.current());
            }
            match self.chosen.pop() {
                Some(last) => start = last + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// A pseudo-random dissection, deterministic in `(n, seed)`.
///
/// Sub-polygons are split recursively: each one is either kept as a piece or
/// cut by a uniformly chosen diagonal. The resulting distribution over
/// dissections is not uniform.
pub fn random_dissection(n: usize, seed: u64) -> Result<Dissection, DissectionError> {
    if n < 3 {
        return Err(DissectionError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 48));
    let mut diags = Vec::new();
    let mut stack = vec![(1..=n).collect::<Vec<usize>>()];
    while let Some(poly) = stack.pop() {
        let len = poly.len();
        if len <= 3 || rng.gen_bool(1.0 / (len as f64 - 1.0)) {
            continue;
        }
        let i = rng.gen_range(0..len);
        let gap = rng.gen_range(2..=len - 2);
        let j = (i + gap) % len;
        diags.push((poly[i], poly[j]));
        let (i, j) = (i.min(j), i.max(j));
        stack.push(poly[i..=j].to_vec());
        stack.push(poly[j..].iter().chain(&poly[..=i]).copied().collect());
    }
    Dissection::build(n, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn heptagon() -> Dissection {
        Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap()
    }

    #[test]
    fn heptagon_pieces() {
        let d = heptagon();
        assert_eq!(
            d.pieces(),
            &[vec![1, 2, 7], vec![2, 3, 6, 7], vec![3, 4, 6], vec![4, 5, 6]]
        );
        assert_eq!(d.piece_type(), vec![3, 4, 3, 3]);
    }

    #[test]
    fn trivial_and_invalid_inputs() {
        let d = Dissection::trivial(5).unwrap();
        assert_eq!(d.pieces(), &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(
            Dissection::build(4, [(1, 3), (2, 4)]),
            Err(DissectionError::Crossing(1, 3, 2, 4))
        );
        assert_eq!(Dissection::build(5, [(1, 2)]), Err(DissectionError::NotADiagonal(1, 2)));
        assert_eq!(Dissection::build(5, [(5, 1)]), Err(DissectionError::NotADiagonal(5, 1)));
        assert_eq!(
            Dissection::build(5, [(1, 3), (3, 1)]),
            Err(DissectionError::DuplicateDiagonal(1, 3))
        );
        assert_eq!(
            Dissection::build(5, [(1, 6)]),
            Err(DissectionError::VertexOutOfRange { vertex: 6, n: 5 })
        );
        assert_eq!(Dissection::build(2, []), Err(DissectionError::TooFewVertices(2)));
    }

    #[test]
    fn vertex_fans() {
        let d = heptagon();
        assert_eq!(d.pieces_at_vertex(2).unwrap(), vec![PieceId(0), PieceId(1)]);
        assert_eq!(d.pieces_at_vertex(5).unwrap(), vec![PieceId(3)]);
        assert_eq!(d.pieces_at_vertex(6).unwrap(), vec![PieceId(3), PieceId(2), PieceId(1)]);
        assert!(d.pieces_at_vertex(8).is_err());
        let t = Dissection::trivial(6).unwrap();
        for v in 1..=6 {
            assert_eq!(t.pieces_at_vertex(v).unwrap(), vec![PieceId(0)]);
        }
    }

    #[test]
    fn boundary_pieces() {
        assert_eq!(heptagon().boundary_pieces().unwrap(), vec![PieceId(0), PieceId(3)]);
        let d = Dissection::build(6, [(1, 4)]).unwrap();
        assert_eq!(d.boundary_pieces().unwrap(), vec![PieceId(0), PieceId(1)]);
        assert_eq!(
            Dissection::trivial(4).unwrap().boundary_pieces(),
            Err(DissectionError::TrivialDissection)
        );
        // Fan triangulation of a hexagon: ears are the two end triangles.
        let fan = Dissection::build(6, [(1, 3), (1, 4), (1, 5)]).unwrap();
        let ears: Vec<_> = fan.boundary_pieces().unwrap().iter().map(|&id| fan.piece(id).to_vec()).collect();
        assert_eq!(ears, vec![vec![1, 2, 3], vec![1, 5, 6]]);
    }

    #[test]
    fn enumeration_counts() {
        // Little Schroeder numbers s(n) for n = 3..=9, computed by brute force
        // over all diagonal subsets in `brute_force_count` below.
        for (n, expected) in [(3, 1), (4, 3), (5, 11), (6, 45), (7, 197)] {
            assert_eq!(enumerate_dissections(n).unwrap().count(), expected, "n={n}");
            assert_eq!(brute_force_count(n), expected, "n={n}");
        }
        assert!(enumerate_dissections(13).is_err());
        assert!(enumerate_dissections(2).is_err());
    }

    fn brute_force_count(n: usize) -> usize {
        let diags: Vec<(usize, usize)> = (1..=n)
            .flat_map(|a| (a + 2..=n).map(move |b| (a, b)))
            .filter(|&(a, b)| !(a == 1 && b == n))
            .collect();
        (0u32..1 << diags.len())
            .filter(|mask| {
                let set: Vec<_> = (0..diags.len()).filter(|k| mask >> k & 1 == 1).map(|k| diags[k]).collect();
                set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| !chords_cross(a, b)))
            })
            .count()
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let mut all: Vec<_> = enumerate_dissections(7).unwrap().map(|d| d.diagonals().to_vec()).collect();
        let len = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), len);
    }

    #[test]
    fn random_dissections_are_deterministic_and_valid() {
        assert_eq!(random_dissection(3, 17).unwrap().num_pieces(), 1);
        for seed in 0..50 {
            let d = random_dissection(10, seed).unwrap();
            assert_eq!(d, random_dissection(10, seed).unwrap());
            let rebuilt = Dissection::build(10, d.diagonals().iter().copied()).unwrap();
            assert_eq!(rebuilt, d);
        }
        let distinct: std::collections::BTreeSet<_> =
            (0..50).map(|s| random_dissection(9, s).unwrap().diagonals().to_vec()).collect();
        assert!(distinct.len() > 10);
    }

    #[test]
    fn json_round_trip() {
        let d = heptagon();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"n":7,"diagonals":[[2,7],[3,6],[4,6]],"pieces":[[1,2,7],[2,3,6,7],[3,4,6],[4,5,6]],"type":[3,4,3,3]}"#
        );
        let back: DissectionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_dissection().unwrap(), d);
        let input: DissectionJson = serde_json::from_str(r#"{"n": 7, "diagonals": [[2,7],[3,6],[4,6]]}"#).unwrap();
        assert_eq!(input.to_dissection().unwrap(), d);
    }

    #[test]
    fn rotation_relabels() {
        let d = heptagon().rotate(1);
        assert_eq!(d.diagonals(), &[(1, 6), (2, 5), (3, 5)]);
    }
}
