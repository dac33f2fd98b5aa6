//! A realisation given as text: checked against the bracket and then used to
//! push enveloping-algebra elements to differential operators.

use casimir::families::sl2;
use casimir::weyl::parse_realization;
use casimir::Uea;

const LINE: &str = "\
realization line
vars x
map h = -2*x*d/dx
map e = d/dx
map f = -x^2*d/dx
";

fn main() -> casimir::Result<()> {
    let alg = sl2();
    let real = parse_realization(LINE, &alg)?;
    match real.check(&alg) {
        Ok(()) => println!("{} realises {}", real.name(), alg.name()),
        Err(f) => println!("not a homomorphism: {f}"),
    }
    let uea = Uea::new(&alg);
    for text in ["e*f", "h^2 + 2*e*f + 2*f*e", "h^2 + 2*e*f"] {
        let op = real.apply(&uea.parse(text)?);
        println!("{text:>20}  ->  {}", real.format_operator(&op));
    }
    Ok(())
}
