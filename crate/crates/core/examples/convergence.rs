//! Log-log convergence slopes, first in the textbook window, then further out.

use durrmeyer::analysis::convergence_order;
use durrmeyer::operators::SequenceFamily;
use durrmeyer::{Grid, TargetFunction};

fn main() -> durrmeyer::Result<()> {
    let f = TargetFunction::example1();
    let grid = Grid::default();
    for ns in [[16, 32, 64, 128, 256], [128, 256, 512, 1024, 2048]] {
        println!("n in {ns:?}");
        for name in ["classical", "m1-reproducing", "m2-tilde", "m3-tilde"] {
            let fit = convergence_order(&SequenceFamily::named(name)?, &f, &ns, &grid)?;
            let local: Vec<String> = fit.local_slopes().iter().map(|s| format!("{s:.2}")).collect();
            println!(
                "  {name:<15} slope {:>7.3}  r^2 {:.5}  local [{}]",
                fit.slope,
                fit.r_squared,
                local.join(", ")
            );
        }
    }
    Ok(())
}
