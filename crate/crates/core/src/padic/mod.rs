//! Finite extensions `K / Q_p` realised as an unramified extension of degree
//! `f` followed by the Eisenstein extension `pi^e = p`.

mod digits;
mod element;
mod exponent;
mod residue;
mod spec;

pub use digits::DigitExpansion;
pub use element::PAdicElement;
pub use exponent::RationalExponent;
pub use residue::{ResidueElement, ResidueField};
pub use spec::{make_extension, ExtensionSpec, SpecRef};
