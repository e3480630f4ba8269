//! Normal forms for free *-algebras, their free products and the
//! augmented algebra `A * C[t]`, plus exact linear combinations over them.

mod fpword;
mod lincomb;
mod symbol;
mod tilde;
mod word;

pub use fpword::FpWord;
pub use lincomb::{Element, LinComb, Monomial};
pub use symbol::Symbol;
pub use tilde::{TildeLetter, TildeWord};
pub use word::{AlgebraId, Generator, Word};
