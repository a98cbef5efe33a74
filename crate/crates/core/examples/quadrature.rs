//! Gauss-Legendre rules on [0, 1] and the integrals the operators are built from.

use durrmeyer::quadrature::{basis_function_integral, basis_monomial_integral, make_rule, QuadratureRule};
use durrmeyer::TargetFunction;

fn main() -> durrmeyer::Result<()> {
    let rule = QuadratureRule::gauss_legendre(5);
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        println!("node {t:.15}  weight {w:.15}");
    }

    // int_0^1 p_{n,k}(t) t^m dt, closed form against a rule exact for degree n + m
    let (n, k, m) = (40, 13, 6);
    let closed = basis_monomial_integral(n, k, m)?;
    let quad = basis_function_integral(n, k, &TargetFunction::monomial(m), &make_rule(n + m));
    println!("\nint p_(40,13) t^6 = {closed:.17e} (closed), {quad:.17e} (quadrature)");

    // kinked targets get a composite rule split at the breakpoint
    let f = TargetFunction::abs_half();
    let composite = QuadratureRule::composite(&[0.0, 0.5, 1.0], 20);
    println!(
        "int |t - 1/2| = {:.16} with {} nodes",
        composite.integrate(|t| f.eval(t)),
        composite.len()
    );
    Ok(())
}
