//! Closed-form determinants checked against cofactor expansion.
//!
//! ```text
//! cargo run --release --example determinants [N]
//! ```

use frieze_core::dissection::enumerate_dissections;
use frieze_core::normalform::{det_expand, det_formula};
use frieze_core::{weight_matrix, Dissection, Flavor, VarNames};

fn main() {
    let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    let names = VarNames::with_pieces(&["a", "b", "c", "d"]);
    for flavor in Flavor::ALL {
        let det = det_formula(&d, flavor);
        println!("{:>10}: {} terms  {}", flavor.name(), det.num_terms(), det.to_string_with(&names));
    }

    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut checked = 0;
    for d in enumerate_dissections(n).unwrap() {
        let w = weight_matrix(&d, Flavor::Xq);
        assert_eq!(det_expand(w.matrix()).unwrap(), det_formula(&d, Flavor::Xq), "{d}");
        checked += 1;
    }
    println!("\nall {checked} dissections of the {n}-gon: expansion equals the closed form");
}
