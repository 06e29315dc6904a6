//! Global Majority Logic: graded modal logic with a half-threshold modality
//! over neighbourhoods (`W`, dual `M`), counting modalities `<>n` and `E_n`,
//! and a global half-threshold modality (`GW`, dual `GM`).

mod ast;
mod eval;
mod parser;
mod presets;

pub use ast::{is_valid_atom, Formula};
pub use eval::{
    formula_possible, formula_possible_capped, model_check, GmjlError, Model, ModelError,
};
pub use parser::{parse_formula, ParseError, ParseErrorKind};
pub use presets::{illusion_formula, IllusionKind, UnknownKind};
