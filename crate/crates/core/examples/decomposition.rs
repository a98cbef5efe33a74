//! A non-positive order-I operator written as the difference of two positive ones.

use durrmeyer::operators::{apply, decompose_m1, preset};
use durrmeyer::TargetFunction;

fn main() -> durrmeyer::Result<()> {
    let spec = preset("m1-example2", 10)?;
    let c = spec.linear_coeff().expect("order I");
    println!("a0 = {:.5}, a1 = {:.5}, positive: {}", c.a0, c.a1, spec.is_positive());

    let f = TargetFunction::example2();
    for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (d1, d2) = decompose_m1(&spec, &f, x)?;
        println!(
            "x = {x:<4}  D2 = {d2:>10.6}  D1 = {d1:>10.6}  D2 - D1 = {:>10.6}  D = {:>10.6}",
            d2 - d1,
            apply(&spec, &f, x)?
        );
    }
    Ok(())
}
