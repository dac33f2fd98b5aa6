//! Spurious candidates and their recombination for the Schrödinger algebra.
//!
//! The realisation-only nullspace contains elements that commute with every
//! generator once realised but not in the enveloping algebra. The search
//! recombines them into genuine Casimir operators.

use casimir::families::{builtin, builtin_realization};
use casimir::grading::compute_grading;
use casimir::search::{run_search, SearchOptions};
use casimir::Uea;

fn main() -> casimir::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let spec = format!("schrodinger:{d}");
    let alg = builtin(&spec)?;
    let real = builtin_realization(&spec)?;
    let uea = Uea::new(&alg);
    let names = alg.basis_names();

    let grading = compute_grading(&alg);
    let mut m = vec![0u32; alg.dim()];
    m[0] = 1;
    let w = grading.monomial_weight(&m);

    let report = run_search(&alg, &real, &SearchOptions::new(3).only(vec![w.clone()]))?;
    let class = report.class(&w).expect("requested class");
    println!("{spec}, class of M = {w}: {} monomials, {} candidates", class.ansatz.len(), class.candidates.len());
    for c in &class.candidates {
        let tag = if uea.is_casimir(c)? { "central " } else { "spurious" };
        println!("  {tag} {}", c.format(names));
    }
    println!("genuine span:");
    for k in &class.genuine {
        println!("  {}", k.format(names));
    }
    Ok(())
}
