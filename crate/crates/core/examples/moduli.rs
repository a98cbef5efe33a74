//! Moduli of smoothness and the direct estimate for order-I operators.

use durrmeyer::analysis::{direct_bound, modulus_first, modulus_second, DEFAULT_MODULUS_RESOLUTION};
use durrmeyer::operators::SequenceFamily;
use durrmeyer::TargetFunction;

fn main() -> durrmeyer::Result<()> {
    let f = TargetFunction::example2();
    for delta in [0.01, 0.05, 0.1, 0.3] {
        let w1 = modulus_first(|x| f.eval(x), delta, DEFAULT_MODULUS_RESOLUTION);
        let w2 = modulus_second(|x| f.eval(x), delta, DEFAULT_MODULUS_RESOLUTION);
        println!("delta {delta:<5} omega {w1:.5}  omega_2 {w2:.5}");
    }

    println!();
    for name in ["m1-example1", "m1-example2"] {
        let fam = SequenceFamily::named(name)?;
        for n in [10, 100, 1000] {
            let c = fam.linear_at(n).expect("order-I family");
            let b = direct_bound(c, n, &f)?;
            println!(
                "{name} n={n:<5} sup-error {:.4e} <= {:.4e}: {}",
                b.actual,
                b.bound,
                b.holds()
            );
        }
    }
    Ok(())
}
