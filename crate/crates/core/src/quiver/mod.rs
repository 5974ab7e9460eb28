//! Quivers, paths, relations and the textual presentation format.

mod model;
mod parse;

pub use model::{compose, enumerate_paths, Arrow, Path, Presentation, Quiver, RelationExpr};
pub use parse::parse_presentation;
