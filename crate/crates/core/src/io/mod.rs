//! File formats: binary field files, text scene files, and PGM exports.

mod field_file;
mod pgm;
mod scene;

pub use field_file::{
    decode_field, encode_field, read_field, write_field, HEADER_LEN, MAGIC, VERSION,
};
pub use pgm::{export_image, render_pgm, ImageKind};
pub use scene::{parse_scene, read_scene, render_scene, Scene};
