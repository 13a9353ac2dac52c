//! Integer normal forms of the walk-counting matrix.
//!
//! ```text
//! cargo run --example smith_form
//! ```

use frieze_core::normalform::{arithmetic_diagonal_form, smith_normal_form, IntMatrix};
use frieze_core::{weight_matrix, Dissection, Flavor};

fn main() {
    let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    let m = IntMatrix::try_from_poly(weight_matrix(&d, Flavor::Arithmetic).matrix()).unwrap();

    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors.iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", factors.join(", "));
    println!("U M V = S verified: {}", snf.verify(&m));

    // One entry d_i - 1 per piece, padded with ones.
    let form = arithmetic_diagonal_form(&d).unwrap();
    let diag: Vec<String> = form.diagonal.iter().map(ToString::to_string).collect();
    println!("piece form:        {}  (det U = {}, det V = {})", diag.join(", "), form.det_u, form.det_v);
}
