//! Closed-form moments next to direct summation.

use durrmeyer::moments::{closed_form, moment_bruteforce, Accuracy, MomentQuery};
use durrmeyer::operators::preset;

fn main() -> durrmeyer::Result<()> {
    let x = 0.2;
    let queries = [
        ("classical", false, 2),
        ("m1-example1", true, 2),
        ("m1-reproducing", false, 4),
        ("m2-tilde", false, 3),
        ("m2-tilde", false, 4),
        ("m3-tilde", false, 2),
        ("m3-tilde", false, 6),
    ];
    for n in [10, 100, 1000] {
        println!("n = {n}");
        for (name, raw, r) in queries {
            let spec = preset(name, n)?;
            let q = if raw {
                MomentQuery::raw(spec, r, x)
            } else {
                MomentQuery::central(spec, r, x)
            };
            let closed = closed_form(&q)?;
            let brute = moment_bruteforce(&q)?;
            let note = match closed.accuracy {
                Accuracy::Exact => "exact".to_string(),
                Accuracy::Leading { remainder_order } => format!("leading term, remainder O(n^-{remainder_order})"),
            };
            let kind = if raw { "raw" } else { "central" };
            println!(
                "  {name:<15} {kind:<7} {r}: {:>12.5e} vs {brute:>12.5e}  ({note})",
                closed.value
            );
        }
    }

    // asking for a moment without a closed form lists what is available
    if let Err(e) = closed_form(&MomentQuery::raw(preset("m3-tilde", 10)?, 1, x)) {
        println!("\n{e}");
    }
    Ok(())
}
