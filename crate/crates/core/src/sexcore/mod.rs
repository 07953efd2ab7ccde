//! Exact rational numbers in sexagesimal notation.

mod literal;
mod number;
pub mod smooth;

pub use literal::{canonical, parse_digits, SexaDigits};
pub use number::Sexa;

/// Parses a numeral; see [`Sexa::parse`].
pub fn parse(text: &str) -> crate::Result<Sexa> {
    Sexa::parse(text)
}

/// Renders a terminating value; see [`Sexa::render`].
pub fn render(x: &Sexa) -> crate::Result<String> {
    x.render()
}
