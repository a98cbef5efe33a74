//! Every preset operator applied to one target, plus a custom order-I family.

use durrmeyer::expr::Expr;
use durrmeyer::operators::{apply, preset, SequenceFamily, PRESETS};
use durrmeyer::TargetFunction;

fn main() -> durrmeyer::Result<()> {
    let f = TargetFunction::example1();
    let n = 20;
    let x = 0.4;
    println!("f({x}) = {:.10}", f.eval(x));
    for name in PRESETS {
        let spec = preset(name, n)?;
        let v = apply(&spec, &f, x)?;
        println!(
            "{name:<15} n={n}: {v:.10}  error {:.3e}  positive: {}",
            (v - f.eval(x)).abs(),
            spec.is_positive()
        );
    }

    let custom = SequenceFamily::linear(
        "half-and-half",
        Expr::parse("(n-1)/(2n)")?,
        Expr::parse("1/n")?,
        Some((0.5, 0.0)),
    );
    let spec = custom.at(n)?;
    println!("{:<15} n={n}: {:.10}", spec.label(), apply(&spec, &f, x)?);
    Ok(())
}
