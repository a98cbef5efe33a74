//! Asymptotic behaviour of n (D_n f - f) for order-I sequences.

use durrmeyer::analysis::{quantitative_voronovskaja_check, voronovskaja_residual};
use durrmeyer::operators::SequenceFamily;
use durrmeyer::{Grid, TargetFunction};

fn main() -> durrmeyer::Result<()> {
    let grid = Grid::uniform(101)?;
    let f = TargetFunction::sin2pi();
    for name in ["classical", "m1-example1", "m1-example2"] {
        let fam = SequenceFamily::named(name)?;
        print!("{name:<12}");
        for n in [64, 256, 1024, 4096] {
            let r = voronovskaja_residual(&fam, &f, n, &grid)?;
            print!("  n={n}: {:.3e}", r.iter().map(|p| p.1.abs()).fold(0.0, f64::max));
        }
        println!();
    }

    println!("\nquantitative form for a0 = 2, a1 = -3");
    for f in ["e2", "example1", "example3"] {
        let f = TargetFunction::named(f)?;
        for n in [16, 256] {
            let c = quantitative_voronovskaja_check(&f, n, &grid)?;
            println!(
                "  {:<9} n={n:<4} sup|lhs| {:.3e}  omega {:.3e}  ratio {:.4}",
                f.id(),
                c.sup_lhs,
                c.omega,
                c.ratio
            );
        }
    }
    Ok(())
}
