//! Frieze patterns in text and LaTeX.
//!
//! ```text
//! cargo run --example frieze_pattern
//! ```

use frieze_core::frieze::{build_frieze, RenderOptions};
use frieze_core::{weight_matrix, Dissection, Flavor, VarNames};

fn main() {
    let pentagon = Dissection::build(5, [(2, 4), (2, 5)]).unwrap();
    let classic = build_frieze(&weight_matrix(&pentagon, Flavor::Arithmetic));
    println!("{}", classic.render_text(&RenderOptions::default()));

    let names = VarNames::with_pieces(&["a", "c", "b"]);
    let poly = build_frieze(&weight_matrix(&pentagon, Flavor::X));
    let opts = RenderOptions { names, ..Default::default() };
    println!("{}", poly.render_text(&opts));

    let heptagon = Dissection::build(7, [(2, 7), (3, 6), (4, 6)]).unwrap();
    let big = build_frieze(&weight_matrix(&heptagon, Flavor::X));
    let opts = RenderOptions {
        max_width: Some(8),
        names: VarNames::with_pieces(&["a", "b", "c", "d"]),
        ..Default::default()
    };
    println!("{}", big.render_latex(&opts));
}
