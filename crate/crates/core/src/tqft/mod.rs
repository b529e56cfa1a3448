//! Words of elementary colored cobordisms, the linear maps they induce and
//! the abstract surfaces they sweep out.

mod compile;
mod eval;
mod linear_map;
mod word;

pub use compile::word_to_surface;
pub use eval::{apply_word, word_to_map, word_to_map_with};
pub use linear_map::LinearMap;
pub use word::{CobordismWord, Generator};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("level {level}: needs {needed} strands, found {found}")]
    Width { level: usize, needed: usize, found: usize },
    #[error("level {level}: color does not belong to the algebra")]
    Color { level: usize },
}
