//! Explicit P, Q with P W(x;q) Q = D, built by peeling boundary pieces.
//!
//! ```text
//! cargo run --example diagonal_form
//! ```

use frieze_core::normalform::{det_expand, diagonalize};
use frieze_core::{weight_matrix, Dissection, Flavor, VarNames};

fn main() {
    let d = Dissection::build(5, [(2, 4), (2, 5)]).unwrap();
    let names = VarNames::default();
    let form = diagonalize(&d, Flavor::Xq).unwrap();
    let w = weight_matrix(&d, Flavor::Xq);

    println!("W =\n{}", w.matrix().render(&names));
    println!("P =\n{}", form.p.render(&names));
    println!("Q =\n{}", form.q.render(&names));
    for (k, (entry, label)) in form.d.iter().zip(&form.labels).enumerate() {
        let from = label.map(|id| format!("  <- piece {:?}", d.piece(id))).unwrap_or_default();
        println!("D[{k}] = {}{from}", entry.to_string_with(&names));
    }
    println!("\ndet P = {}, det Q = {}", det_expand(&form.p).unwrap(), det_expand(&form.q).unwrap());
    println!("P W Q = D: {}", form.verify(w.matrix()));
    println!("{} elementary operations", form.log.len());
}
