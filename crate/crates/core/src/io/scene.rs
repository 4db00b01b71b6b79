//! Plain-text scene description:
//!
//! ```text
//! # comment
//! wavelength 1.0 speed 343.0
//! src 0.0 0.0 -50.0 1.0 0.0
//! screen 256 256 0.5 0.5 -64.0 -64.0 0.0
//! ```
//!
//! The `wavelength` line comes first, followed by any number of `src x y z re
//! im` lines and exactly one `screen nx ny dx dy ox oy z` line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{GridSpec, MediumParams};
use crate::sources::{PointSource, SourceSet};

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub sources: SourceSet,
    pub screen: GridSpec,
}

fn scene_err(line: usize, message: impl Into<String>) -> Error {
    Error::Scene {
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| scene_err(line, format!("{what}: cannot parse {tok:?} as a number")))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| scene_err(line, format!("{what}: cannot parse {tok:?} as a count")))
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let mut medium: Option<MediumParams> = None;
    let mut sources = Vec::new();
    let mut screen: Option<GridSpec> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "wavelength" => {
                if medium.is_some() {
                    return Err(scene_err(line_no, "duplicate wavelength line"));
                }
                if toks.len() != 4 || toks[2] != "speed" {
                    return Err(scene_err(
                        line_no,
                        "expected \"wavelength <m> speed <m/s>\"",
                    ));
                }
                let l = parse_f64(toks[1], line_no, "wavelength")?;
                let c = parse_f64(toks[3], line_no, "speed")?;
                medium =
                    Some(MediumParams::new(l, c).map_err(|e| scene_err(line_no, e.to_string()))?);
            }
            "src" => {
                if medium.is_none() {
                    return Err(scene_err(line_no, "src before wavelength line"));
                }
                if toks.len() != 6 {
                    return Err(scene_err(line_no, "expected \"src <x> <y> <z> <re> <im>\""));
                }
                let v: Vec<f64> = toks[1..]
                    .iter()
                    .map(|t| parse_f64(t, line_no, "src"))
                    .collect::<Result<_>>()?;
                let s = PointSource::new(v[0], v[1], v[2], Complex64::new(v[3], v[4]))
                    .map_err(|e| scene_err(line_no, e.to_string()))?;
                sources.push(s);
            }
            "screen" => {
                if medium.is_none() {
                    return Err(scene_err(line_no, "screen before wavelength line"));
                }
                if screen.is_some() {
                    return Err(scene_err(line_no, "duplicate screen line"));
                }
                if toks.len() != 8 {
                    return Err(scene_err(
                        line_no,
                        "expected \"screen <nx> <ny> <dx> <dy> <ox> <oy> <z>\"",
                    ));
                }
                let nx = parse_usize(toks[1], line_no, "nx")?;
                let ny = parse_usize(toks[2], line_no, "ny")?;
                let v: Vec<f64> = toks[3..]
                    .iter()
                    .map(|t| parse_f64(t, line_no, "screen"))
                    .collect::<Result<_>>()?;
                screen = Some(
                    GridSpec::new(nx, ny, v[0], v[1], v[2], v[3], v[4])
                        .map_err(|e| scene_err(line_no, e.to_string()))?,
                );
            }
            other => return Err(scene_err(line_no, format!("unknown directive {other:?}"))),
        }
    }

    let medium = medium.ok_or_else(|| scene_err(0, "missing wavelength line"))?;
    let screen = screen.ok_or_else(|| scene_err(0, "missing screen line"))?;
    Ok(Scene {
        sources: SourceSet::with_sources(medium, sources),
        screen,
    })
}

/// Text form accepted by [`parse_scene`]; numbers use the shortest exact
/// decimal representation.
pub fn render_scene(scene: &Scene) -> String {
    let m = &scene.sources.medium;
    let g = &scene.screen;
    let mut out = String::new();
    writeln!(out, "wavelength {:?} speed {:?}", m.wavelength(), m.speed()).unwrap();
    for s in &scene.sources.sources {
        writeln!(
            out,
            "src {:?} {:?} {:?} {:?} {:?}",
            s.x, s.y, s.z, s.amplitude.re, s.amplitude.im
        )
        .unwrap();
    }
    writeln!(
        out,
        "screen {} {} {:?} {:?} {:?} {:?} {:?}",
        g.nx(),
        g.ny(),
        g.dx(),
        g.dy(),
        g.origin_x(),
        g.origin_y(),
        g.z()
    )
    .unwrap();
    out
}

pub fn read_scene(path: impl AsRef<Path>) -> Result<Scene> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scene(&text)
}
