//! Toeplitz matrices T(d, m) and their determinants.
//!
//! ```text
//! cargo run --example toeplitz
//! ```

use frieze_core::normalform::{det_expand, toeplitz_det_formula, toeplitz_matrix};
use frieze_core::VarNames;

fn main() {
    let names = VarNames::default();
    println!("T(5, 1) =\n{}", toeplitz_matrix(5, 1).unwrap().render(&names));
    for d in 3..=6 {
        for m in 0..=d - 2 {
            let det = det_expand(&toeplitz_matrix(d, m).unwrap()).unwrap();
            assert_eq!(det, toeplitz_det_formula(d, m));
            println!("d={d} m={m}: {}", det.to_string_with(&names));
        }
    }
}
