//! Regenerates the three worked examples as CSV and SVG files.
//!
//! `cargo run --example reproduce -- <out dir>`; the default is a temporary directory.

use std::io;
use std::path::PathBuf;

use durrmeyer::cli::reproduce_example;

fn main() -> durrmeyer::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("durrmeyer-examples"));
    let mut out = io::stdout();
    for ex in 1..=3 {
        println!("== example {ex}");
        let r = reproduce_example(ex, dir.clone(), 201, &mut out)?;
        println!("{} files", r.files.len());
    }
    Ok(())
}
