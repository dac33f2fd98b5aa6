//! Number of functionally independent invariants, `dim g` minus the generic
//! rank of the structure matrix, for the built-in families.

use casimir::families::builtin;

fn main() -> casimir::Result<()> {
    let mut specs: Vec<String> = (3..=10).map(|n| format!("filiform:{n}")).collect();
    specs.extend((1..=4).map(|d| format!("schrodinger:{d}")));
    specs.extend(["heisenberg:2".into(), "sl2".into(), "abelian:3".into()]);
    for spec in specs {
        let alg = builtin(&spec)?;
        println!("{spec:<15} dim {:>2}  invariants {}", alg.dim(), alg.beltrametti_blasi_count(5));
    }
    Ok(())
}
