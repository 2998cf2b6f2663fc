//! JSON instance and drawing files, and SVG rendering.

mod json;
mod svg;

use thiserror::Error;

pub use json::{decimal, emit_drawing, emit_instance, parse_drawing, parse_drawing_with, parse_instance};
pub use svg::{render_svg, Overlay, SvgOptions};

#[derive(Debug, Error)]
pub enum FormatError {
    /// Malformed JSON, or JSON that does not match the schema.
    #[error("{path}: {message} (line {line}, column {column})")]
    Json { path: String, line: usize, column: usize, message: String },
    /// Well-formed JSON whose content is inconsistent.
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("instance `{reference}`: {message}")]
    Reference { reference: String, message: String },
}
