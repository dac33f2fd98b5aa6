//! Reads an algebra from its text format and searches it with the coadjoint
//! realisation.

use casimir::algebra_file::parse_algebra;
use casimir::search::{run_search, SearchOptions};
use casimir::weyl::coadjoint_realization;

const EUCLIDEAN: &str = "\
# rotations and translations of the plane
algebra e2
dim 3
basis j p1 p2
bracket j p1 = p2
bracket j p2 = -p1
";

fn main() -> casimir::Result<()> {
    let alg = parse_algebra(EUCLIDEAN)?;
    if let Err(v) = alg.jacobi_check() {
        eprintln!("not a Lie algebra: {v}");
        return Ok(());
    }
    let real = coadjoint_realization(&alg);
    let report = run_search(&alg, &real, &SearchOptions::new(3).all_weights())?;
    println!("{}: expecting {} invariants", alg.name(), alg.beltrametti_blasi_count(5));
    for k in report.independent() {
        println!("  {}", k.format(alg.basis_names()));
    }
    Ok(())
}
