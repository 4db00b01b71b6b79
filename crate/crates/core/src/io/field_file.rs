//! Binary container for one [`Wavefield`].
//!
//! Little-endian layout:
//!
//! | offset | size | content                              |
//! |--------|------|--------------------------------------|
//! | 0      | 4    | magic `WFLD`                         |
//! | 4      | 4    | version `u32` = 1                    |
//! | 8      | 4    | nx `u32`                             |
//! | 12     | 4    | ny `u32`                             |
//! | 16     | 56   | dx, dy, origin_x, origin_y, z, wavelength, speed (`f64`) |
//! | 72     | 16·nx·ny | samples as (re, im) `f64` pairs, x fastest |

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{GridSpec, MediumParams, Wavefield};

pub const MAGIC: &[u8; 4] = b"WFLD";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 72;

const SAMPLE_LEN: usize = 16;

pub fn encode_field(field: &Wavefield) -> Vec<u8> {
    let g = field.grid();
    let m = field.medium();
    let mut out = Vec::with_capacity(HEADER_LEN + SAMPLE_LEN * g.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    // GridSpec counts fit u32 for any field this format can describe
    out.extend_from_slice(&(g.nx() as u32).to_le_bytes());
    out.extend_from_slice(&(g.ny() as u32).to_le_bytes());
    for v in [
        g.dx(),
        g.dy(),
        g.origin_x(),
        g.origin_y(),
        g.z(),
        m.wavelength(),
        m.speed(),
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in field.data() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        offset: offset as u64,
        message: message.into(),
    }
}

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap())
}

fn f64_at(bytes: &[u8], offset: usize) -> f64 {
    f64::from_le_bytes(bytes[offset..offset + 8].try_into().unwrap())
}

pub fn decode_field(bytes: &[u8]) -> Result<Wavefield> {
    if bytes.len() < 4 {
        return Err(Error::Truncated {
            expected: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    if &bytes[0..4] != MAGIC {
        return Err(format_err(
            0,
            format!(
                "bad magic {:?}, expected \"WFLD\"",
                String::from_utf8_lossy(&bytes[0..4])
            ),
        ));
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            expected: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    let version = u32_at(bytes, 4);
    if version != VERSION {
        return Err(format_err(4, format!("unsupported version {version}")));
    }
    let nx = u32_at(bytes, 8) as usize;
    let ny = u32_at(bytes, 12) as usize;
    if nx == 0 {
        return Err(format_err(8, "nx must be >= 1"));
    }
    if ny == 0 {
        return Err(format_err(12, "ny must be >= 1"));
    }
    let h: Vec<f64> = (0..7).map(|k| f64_at(bytes, 16 + 8 * k)).collect();
    let grid = GridSpec::new(nx, ny, h[0], h[1], h[2], h[3], h[4])
        .map_err(|e| format_err(16, e.to_string()))?;
    let medium = MediumParams::new(h[5], h[6]).map_err(|e| format_err(56, e.to_string()))?;

    let expected = (nx as u64)
        .checked_mul(ny as u64)
        .and_then(|n| n.checked_mul(SAMPLE_LEN as u64))
        .and_then(|n| n.checked_add(HEADER_LEN as u64))
        .ok_or_else(|| format_err(8, "sample count overflows"))?;
    let actual = bytes.len() as u64;
    if actual < expected {
        return Err(Error::Truncated { expected, actual });
    }
    if actual > expected {
        return Err(format_err(
            expected as usize,
            format!("{} trailing bytes after payload", actual - expected),
        ));
    }

    let data = bytes[HEADER_LEN..]
        .chunks_exact(SAMPLE_LEN)
        .map(|c| Complex64::new(f64_at(c, 0), f64_at(c, 8)))
        .collect();
    Wavefield::new(grid, medium, data)
}

pub fn write_field(field: &Wavefield, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if field.grid().nx() > u32::MAX as usize || field.grid().ny() > u32::MAX as usize {
        return Err(Error::InvalidArgument(
            "grid too large for the field file format".into(),
        ));
    }
    fs::write(path, encode_field(field)).map_err(|e| Error::io(path, e))
}

pub fn read_field(path: impl AsRef<Path>) -> Result<Wavefield> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_field(&bytes)
}
