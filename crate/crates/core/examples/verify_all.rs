//! Run the full check suite on every dissection of an n-gon.
//!
//! ```text
//! cargo run --release --example verify_all [N]
//! ```

use std::collections::BTreeMap;

use frieze_core::cli::{verify_dissection, Status, VerifyOptions};
use frieze_core::dissection::enumerate_dissections;
use rayon::prelude::*;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let all: Vec<_> = enumerate_dissections(n).unwrap().collect();
    let reports: Vec<_> = all.par_iter().map(|d| verify_dissection(d, &VerifyOptions::default())).collect();

    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for check in reports.iter().flat_map(|r| &r.checks) {
        let slot = match check.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skipped => 2,
        };
        tally.entry(check.name.as_str()).or_default()[slot] += 1;
    }
    println!("{} dissections of the {n}-gon", all.len());
    for (name, [pass, fail, skip]) in tally {
        println!("  {name:<26} pass {pass:>4}  fail {fail}  skipped {skip}");
    }
    let mut dets: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &reports {
        *dets.entry(r.det_arithmetic.as_str()).or_default() += 1;
    }
    println!("det M_D distribution: {dets:?}");
}
