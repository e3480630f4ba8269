//! Exact evaluation of Boolean, free, conditionally free and m-free product
//! states on free products of free *-algebras, together with the
//! `*`-bialgebra structure on the m-fold free product `A_m`.

pub mod algebra;
pub mod bialgebra;
pub mod error;
pub mod mfree;
pub mod noncrossing;
pub mod scalar;
pub mod states;

pub use algebra::{AlgebraId, Element, FpWord, Generator, LinComb, Symbol, TildeLetter, TildeWord, Word};
pub use error::{Error, Result};
pub use scalar::Scalar;
