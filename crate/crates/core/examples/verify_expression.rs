//! Certifies a hand-written element of the enveloping algebra.

use casimir::families::filiform;
use casimir::Uea;

fn main() -> casimir::Result<()> {
    let alg = filiform(4);
    let uea = Uea::new(&alg);
    for text in ["e2^2 - 2*e1*e3", "e2^2", "e1^3 + 5*e1"] {
        let k = uea.parse(text)?;
        match uea.first_noncommuting(&k)? {
            None => println!("{text}: Casimir"),
            Some((i, c)) => println!("{text}: [K, {}] = {}", alg.basis_name(i), c.format(alg.basis_names())),
        }
    }
    Ok(())
}
