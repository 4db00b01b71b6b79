//! 8-bit binary PGM (P5) snapshots of a field.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Wavefield;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    Magnitude,
    Phase,
    Intensity,
}

impl fmt::Display for ImageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageKind::Magnitude => "magnitude",
            ImageKind::Phase => "phase",
            ImageKind::Intensity => "intensity",
        })
    }
}

impl FromStr for ImageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "magnitude" => Ok(ImageKind::Magnitude),
            "phase" => Ok(ImageKind::Phase),
            "intensity" => Ok(ImageKind::Intensity),
            other => Err(Error::InvalidArgument(format!(
                "unknown image kind {other:?}"
            ))),
        }
    }
}

fn normalized(values: impl Iterator<Item = f64> + Clone) -> Vec<u8> {
    let max = values.clone().fold(0.0, f64::max);
    if max <= 0.0 {
        return values.map(|_| 0).collect();
    }
    values
        .map(|v| (255.0 * v / max).round().clamp(0.0, 255.0) as u8)
        .collect()
}

/// Encodes the field as P5 bytes: one row per y index, x left to right.
///
/// Magnitude and intensity are scaled by the plane maximum (an all-zero plane
/// gives an all-zero image). Phase maps (-π, π] linearly onto 0..=255.
pub fn render_pgm(field: &Wavefield, kind: ImageKind) -> Vec<u8> {
    let g = field.grid();
    let data = field.data();
    let pixels = match kind {
        ImageKind::Magnitude => normalized(data.iter().map(|v| v.norm())),
        ImageKind::Intensity => normalized(data.iter().map(|v| v.norm_sqr())),
        ImageKind::Phase => data
            .iter()
            .map(|v| {
                let phase = v.arg();
                ((phase + PI) / (2.0 * PI) * 255.0)
                    .round()
                    .clamp(0.0, 255.0) as u8
            })
            .collect(),
    };
    let mut out = format!("P5\n{} {}\n255\n", g.nx(), g.ny()).into_bytes();
    out.extend_from_slice(&pixels);
    out
}

pub fn export_image(field: &Wavefield, kind: ImageKind, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_pgm(field, kind)).map_err(|e| Error::io(path, e))
}
