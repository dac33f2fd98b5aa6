//! Normal ordering and products in the PBW basis.

use casimir::families::heisenberg;
use casimir::Uea;

fn main() -> casimir::Result<()> {
    let alg = heisenberg(1);
    let uea = Uea::new(&alg);
    let names = alg.basis_names();
    println!("basis: {}", names.join(" "));

    let word: Vec<usize> = (0..alg.dim()).rev().collect();
    println!("reversed word -> {}", uea.normal_order(&word)?.format(names));

    let x = uea.generator(0)?;
    let y = uea.generator(1)?;
    let yx2 = uea.pow(&uea.multiply(&y, &x)?, 2)?;
    println!("(y1 x1)^2 = {}", yx2.format(names));
    println!("[y1, x1^3] = {}", uea.commutator(&y, &uea.pow(&x, 3)?)?.format(names));
    Ok(())
}
