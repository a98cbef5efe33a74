//! Drives the command-line front end in-process.

use std::io;

fn main() {
    let out_dir = std::env::temp_dir().join("durrmeyer-cli");
    let out = out_dir.to_str().expect("utf-8 temp dir");
    let runs: [&[&str]; 4] = [
        &[
            "errors",
            "--preset",
            "classical,m2-tilde,m3-tilde",
            "--f",
            "example3",
            "--n",
            "10",
            "--svg",
            "--out",
            out,
        ],
        &[
            "rate",
            "--preset",
            "m2-tilde",
            "--f",
            "e3",
            "--n",
            "64,128,256,512",
            "--out",
            out,
        ],
        &[
            "moments",
            "--preset",
            "m1-example2",
            "--central",
            "2",
            "--n",
            "10,100",
            "--x",
            "0.25",
        ],
        &["approximate", "--preset", "nope"],
    ];
    for args in runs {
        println!("$ durrmeyer {}", args.join(" "));
        let code = durrmeyer::cli::run(
            std::iter::once("durrmeyer").chain(args.iter().copied()),
            &mut io::stdout(),
            &mut io::stdout(),
        );
        println!("exit {code}\n");
    }
}
