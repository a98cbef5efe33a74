//! Bernstein rows and the modified bases behind each operator family.

use durrmeyer::basis::{self, BasisIndex, LinearCoeff, QuadraticCoeffSet, QuarticCoeffSet};
use durrmeyer::compensated;

fn main() -> durrmeyer::Result<()> {
    let x = 0.3;

    // a full row is cheap and sums to one even at high degree
    for m in [10, 1000, 100_000] {
        let row = basis::bernstein_row(m, x);
        let mode = row.iter().cloned().fold(0.0, f64::max);
        println!(
            "m = {m:>6}: sum = {:.17}, largest entry {mode:.3e}",
            compensated::sum(row)
        );
    }

    let n = 12;
    let m1 = LinearCoeff::new(0.45, 0.1);
    let m2 = QuadraticCoeffSet::tilde(n);
    let m3 = QuarticCoeffSet::tilde(n);
    println!("\n k   p_(n,k)      order I      order II     order III");
    for k in 0..=n as i64 {
        let idx = BasisIndex::new(n, k);
        println!(
            "{k:>2}  {:>11.3e}  {:>11.3e}  {:>11.3e}  {:>11.3e}",
            basis::bernstein(idx, x)?,
            basis::modified_basis_m1(idx, x, &m1)?,
            basis::modified_basis_m2(idx, x, &m2)?,
            basis::modified_basis_m3(idx, x, &m3)?,
        );
    }
    Ok(())
}
