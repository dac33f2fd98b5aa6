//! Maximal grading of an algebra and the weight classes it induces.

use casimir::families::builtin;
use casimir::grading::compute_grading;

fn main() -> casimir::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "filiform:5".into());
    let alg = builtin(&spec)?;
    let g = compute_grading(&alg);
    println!("{spec}: grading rank {}", g.rank());
    for (name, w) in alg.basis_names().iter().zip(g.weights()) {
        println!("  {name:>6} {w}");
    }

    let classes = g.weight_classes(2);
    let largest = classes.values().map(Vec::len).max().unwrap_or(0);
    println!("{} classes up to degree 2, largest has {largest} monomials", classes.len());
    for (w, monos) in classes.iter().filter(|(_, v)| v.len() == largest) {
        let shown: Vec<String> = monos.iter().map(|m| m.format(alg.basis_names())).collect();
        println!("  {w}: {}", shown.join(", "));
    }
    Ok(())
}
