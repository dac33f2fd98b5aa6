//! Composition and commutators of polynomial differential operators.

use casimir::rational::int;
use casimir::DifferentialOperator as Op;

fn main() -> casimir::Result<()> {
    let vars = ["x".to_string(), "y".to_string()];
    let show = |op: &Op| op.format(&vars, &[]);
    let x = Op::variable(2, 0, 0);
    let dx = Op::derivative(2, 0, 0);
    let dy = Op::derivative(2, 0, 1);

    println!("[d/dx, x] = {}", show(&dx.commutator(&x)?));
    let euler = x.compose(&dx)?;
    println!("(x d/dx)^2 = {}", show(&euler.compose(&euler)?));
    let rot = x.compose(&dy)?.sub(&Op::variable(2, 0, 1).compose(&dx)?)?;
    println!("[x d/dy - y d/dx, x d/dx] = {}", show(&rot.commutator(&euler)?));
    println!("3 d/dx d/dy = {}", show(&dx.compose(&dy)?.scale(&int(3))));
    Ok(())
}
