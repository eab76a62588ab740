//! Graph file formats and the letter dataset.

pub mod gxl;
pub mod json;
pub mod letter;

pub use gxl::{read_class_file, read_gxl_letter};
pub use json::{read_json_graph, write_json_graph};
pub use letter::{letter_prototypes, load_letter_dataset, load_letter_dir, load_prototypes_dir, Distortion, Letter, LetterRecord};
