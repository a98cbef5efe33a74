//! Bernstein-Durrmeyer operators and their modified families of orders I, II
//! and III on [0, 1].
//!
//! * [`basis`]: Bernstein basis and the modified bases.
//! * [`quadrature`]: closed-form and Gauss-Legendre integrals `∫ p_{n,k} f`.
//! * [`operators`]: operator evaluation, presets, the order-I split `D = D_2 - D_1`.
//! * [`moments`]: closed-form moment identities and a summation oracle.
//! * [`analysis`]: errors, convergence rates, Voronovskaja residuals, moduli
//!   of continuity and the direct estimate.
//! * [`cli`]: experiment runner behind the `durrmeyer` binary (CSV and SVG output).
//!
//! ```
//! use durrmeyer::operators::{apply, preset};
//! use durrmeyer::target::TargetFunction;
//!
//! let spec = preset("m2-tilde", 10)?;
//! let v = apply(&spec, &TargetFunction::monomial(1), 0.3)?;
//! assert!((v - 0.3).abs() < 1e-13);
//! # Ok::<(), durrmeyer::Error>(())
//! ```

pub mod analysis;
pub mod basis;
pub mod cli;
pub mod compensated;
pub mod error;
pub mod expr;
pub mod grid;
pub mod moments;
pub mod operators;
pub mod quadrature;
pub mod target;

pub use error::{Error, Result};
pub use grid::Grid;
pub use operators::{apply, apply_on_grid, preset, Family, OperatorSpec, SequenceFamily};
pub use target::TargetFunction;
