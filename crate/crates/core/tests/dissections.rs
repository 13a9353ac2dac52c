use frieze_core::dissection::{chords_cross, enumerate_dissections, random_dissection, DissectionJson};
use frieze_core::{Dissection, DissectionError, EdgeRef};

#[test]
fn counts_match_little_schroeder_numbers() {
    let counts: Vec<usize> = (3..=8).map(|n| enumerate_dissections(n).unwrap().count()).collect();
    assert_eq!(counts, [1, 3, 11, 45, 197, 903]);
}

#[test]
fn pieces_partition_the_polygon() {
    for n in 3..=8 {
        for d in enumerate_dissections(n).unwrap() {
            let k = d.diagonals().len();
            assert_eq!(d.num_pieces(), k + 1, "{d}");
            // Angles: Σ(d_i - 2) = n - 2.
            assert_eq!(d.piece_type().iter().map(|t| t - 2).sum::<usize>(), n - 2, "{d}");
            // Every side lies in exactly one piece; every diagonal in two.
            let sides: usize = d.piece_ids().map(|id| d.degree(id)).sum();
            assert_eq!(sides, n + 2 * k, "{d}");
            for (a, b) in d.diagonals() {
                assert!(d.diagonal_pieces(*a, *b).is_some());
            }
            for i in 1..=n {
                let (a, b) = EdgeRef(i).endpoints(n);
                let p = d.edge_piece(EdgeRef(i));
                assert!(d.contains_vertex(p, a) && d.contains_vertex(p, b));
            }
            let mut pieces = d.pieces().to_vec();
            pieces.sort();
            assert_eq!(pieces, d.pieces());
        }
    }
}

#[test]
fn rejects_bad_input() {
    use DissectionError::*;
    assert_eq!(Dissection::build(2, []), Err(TooFewVertices(2)));
    assert!(matches!(Dissection::build(6, [(1, 4), (2, 5)]), Err(Crossing(..))));
    assert!(matches!(Dissection::build(5, [(1, 2)]), Err(NotADiagonal(..))));
    assert!(matches!(Dissection::build(5, [(1, 3), (3, 1)]), Err(DuplicateDiagonal(..))));
    assert!(matches!(Dissection::build(5, [(1, 9)]), Err(VertexOutOfRange { vertex: 9, n: 5 })));
    assert!(chords_cross((1, 4), (2, 5)));
    assert!(!chords_cross((1, 4), (4, 6)));
}

#[test]
fn json_round_trip_and_consistency() {
    let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    let json = d.to_json();
    assert_eq!(json.piece_type.as_deref(), Some(&[3, 4, 3, 3][..]));
    let text = serde_json::to_string(&json).unwrap();
    let back: DissectionJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_dissection().unwrap(), d);
    let mut wrong = json.clone();
    wrong.piece_type = Some(vec![3, 3, 4, 3]);
    assert!(matches!(wrong.to_dissection(), Err(DissectionError::Inconsistent("type"))));
    let minimal: DissectionJson = serde_json::from_str(r#"{"n":5,"diagonals":[[2,4],[2,5]]}"#).unwrap();
    assert_eq!(minimal.to_dissection().unwrap().pieces(), [vec![1, 2, 5], vec![2, 3, 4], vec![2, 4, 5]]);
}

#[test]
fn random_is_seeded() {
    for n in 3..=14 {
        let a = random_dissection(n, 7).unwrap();
        assert_eq!(a, random_dissection(n, 7).unwrap());
        assert_eq!(a.n(), n);
    }
}

#[test]
fn rotation_preserves_type() {
    let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    for s in 0..7 {
        assert_eq!(d.rotate(s).type_multiset(), d.type_multiset());
    }
    assert_eq!(d.rotate(7), d);
}
