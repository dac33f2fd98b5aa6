//! Quadratic and cubic invariants of the filiform algebras `L_n`.
//!
//! ```text
//! cargo run --example filiform_invariants -- 8
//! ```

use casimir::families::{builtin, builtin_realization};
use casimir::search::{run_search, SearchOptions};

fn main() -> casimir::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let spec = format!("filiform:{n}");
    let alg = builtin(&spec)?;
    let real = builtin_realization(&spec)?;

    let report = run_search(&alg, &real, &SearchOptions::new(3).all_weights())?;
    println!("{spec}: {} independent invariants up to degree 3", report.independent().len());
    for k in report.independent() {
        println!("  [deg {}] {}", k.degree(), k.format(alg.basis_names()));
    }
    println!("expected total: {}", alg.beltrametti_blasi_count(5));
    Ok(())
}
