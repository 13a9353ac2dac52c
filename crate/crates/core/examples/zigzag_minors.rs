//! Every 2×2 minor d(e, f) next to its zig-zag prediction.
//!
//! ```text
//! cargo run --example zigzag_minors
//! ```

use frieze_core::frieze::minor_table;
use frieze_core::{weight_matrix, Dissection, Flavor, VarNames};

fn main() {
    let d = Dissection::build(5, [(2, 4), (2, 5)]).unwrap();
    let names = VarNames::default();
    for entry in minor_table(&weight_matrix(&d, Flavor::Xq)) {
        let chain = match &entry.zigzag {
            Some(z) => format!("{:?}", z.sequence),
            None if entry.e == entry.f => "(diagonal)".into(),
            None => "none".into(),
        };
        println!(
            "d(e{}, e{}) = {:<28} {} {}",
            entry.e.0,
            entry.f.0,
            entry.minor.to_string_with(&names),
            if entry.agrees() { "ok " } else { "BAD" },
            chain
        );
    }
}
