//! Multi-dimensional nonsystematic Reed-Solomon codes over GF(q).
//!
//! A code is named by `(q, n, d)`: a message is a polynomial in `n`
//! variables whose monomials lie in a staircase-shaped degree region, and
//! its codeword is the polynomial evaluated at all `q^n` points of
//! `GF(q)^n`. The region is chosen so that every nonzero codeword has weight
//! at least `d`.
//!
//! ```
//! use mdrs::{gf::Field, params::CodeSpec, encoder::Code};
//!
//! let spec = CodeSpec::new(Field::new(5, 1)?, 2, 3)?;
//! let code = Code::new(spec)?;
//! assert_eq!((code.length(), code.dimension()), (25, 22));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod analysis;
pub mod distance;
pub mod encoder;
pub mod erasure;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod params;

pub use encoder::{Code, Codeword, GeneratorMatrix, Message};
pub use gf::{Element, Field};
pub use params::{CodeSpec, DegreeRegion};
