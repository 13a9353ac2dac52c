//! The three walk matrices of the 7-gon dissected by (2,7), (3,6), (4,6).
//!
//! ```text
//! cargo run --example weight_matrices
//! ```

use frieze_core::{weight_matrix, Dissection, Flavor, VarNames};

fn main() {
    let d = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    println!("pieces: {:?}  type: {:?}\n", d.pieces(), d.piece_type());

    let names = VarNames::with_pieces(&["a", "b", "c", "d"]);
    for flavor in Flavor::ALL {
        let w = weight_matrix(&d, flavor);
        println!("{} weights:\n{}", flavor.name(), w.matrix().render(&names));
    }
}
