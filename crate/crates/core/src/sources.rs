//! Screen recordings synthesized from point sources and plane waves.
//!
//! [`direct_field`] sums the Green-Born propagator over every source at the
//! exact sample distances. It is slow (sources × samples) and independent of
//! the spectral path, which makes it the reference the propagator is checked
//! against.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{GridSpec, MediumParams, Wavefield};
use crate::kernel::green_born;

/// Minimum distance between a source and any screen sample, in wavelengths.
pub const MIN_STANDOFF_WAVELENGTHS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSource {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub amplitude: Complex64,
}

impl PointSource {
    pub fn new(x: f64, y: f64, z: f64, amplitude: Complex64) -> Result<Self> {
        let finite = [x, y, z, amplitude.re, amplitude.im]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidArgument(format!(
                "point source ({x}, {y}, {z}) amplitude {amplitude} is not finite"
            )));
        }
        Ok(PointSource { x, y, z, amplitude })
    }

    fn distance_to(&self, x: f64, y: f64, z: f64) -> f64 {
        let (ddx, ddy, ddz) = (x - self.x, y - self.y, z - self.z);
        (ddx * ddx + ddy * ddy + ddz * ddz).sqrt()
    }
}

/// Point sources radiating into one medium. May be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSet {
    pub sources: Vec<PointSource>,
    pub medium: MediumParams,
}

impl SourceSet {
    pub fn new(medium: MediumParams) -> Self {
        SourceSet {
            sources: Vec::new(),
            medium,
        }
    }

    pub fn with_sources(medium: MediumParams, sources: Vec<PointSource>) -> Self {
        SourceSet { sources, medium }
    }

    pub fn push(&mut self, source: PointSource) {
        self.sources.push(source);
    }
}

/// Far-field plane wave incident in the x-z plane at `theta` from the +x axis
/// convention used by the screens: transverse frequency `sin(theta) / L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    theta: f64,
    amplitude: Complex64,
    medium: MediumParams,
}

impl PlaneWave {
    pub fn new(theta: f64, amplitude: Complex64, medium: MediumParams) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "plane wave angle must lie in [0, pi/2], got {theta}"
            )));
        }
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "plane wave amplitude {amplitude} is not finite"
            )));
        }
        Ok(PlaneWave {
            theta,
            amplitude,
            medium,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn medium(&self) -> &MediumParams {
        &self.medium
    }

    /// `(fx, fz) = (sin θ, cos θ) / L`.
    pub fn frequencies(&self) -> (f64, f64) {
        let l = self.medium.wavelength();
        (self.theta.sin() / l, self.theta.cos() / l)
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier(self.sum.re, v.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, v.im, &mut self.carry.im);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn neumaier(sum: f64, v: f64, carry: &mut f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *carry += (sum - t) + v;
    } else {
        *carry += (v - t) + sum;
    }
    t
}

/// Superposition of Green-Born propagators from every source, evaluated at
/// each sample of `screen`.
pub fn direct_field(srcs: &SourceSet, screen: &GridSpec) -> Result<Wavefield> {
    let medium = srcs.medium;
    let min_distance = MIN_STANDOFF_WAVELENGTHS * medium.wavelength();
    let nx = screen.nx();

    let rows: Vec<Result<Vec<Complex64>>> = (0..screen.ny())
        .into_par_iter()
        .map(|j| {
            let y = screen.y(j);
            let z = screen.z();
            (0..nx)
                .map(|i| {
                    let x = screen.x(i);
                    let mut acc = CompensatedSum::default();
                    for s in &srcs.sources {
                        let r = s.distance_to(x, y, z);
                        if r < min_distance {
                            return Err(Error::SourceTooClose {
                                x: s.x,
                                y: s.y,
                                z: s.z,
                                distance: r,
                                minimum: min_distance,
                            });
                        }
                        acc.add(s.amplitude * green_born(r, &medium)?);
                    }
                    Ok(acc.total())
                })
                .collect()
        })
        .collect();

    let mut data = Vec::with_capacity(screen.len());
    for row in rows {
        data.extend(row?);
    }
    Wavefield::new(*screen, medium, data)
}

/// `amplitude * exp(j 2π x sin(theta) / L)` on every sample; constant along y.
pub fn plane_wave_field(pw: &PlaneWave, screen: &GridSpec) -> Result<Wavefield> {
    let (fx, _) = pw.frequencies();
    let amp = pw.amplitude;
    Wavefield::from_fn(*screen, pw.medium, |x, _| {
        amp * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x * fx)
    })
}

/// Period of the fringes along one screen axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FringeSpacing {
    Finite(f64),
    /// The screen is not modulated along this axis.
    Unbounded,
}

impl FringeSpacing {
    pub fn value(&self) -> Option<f64> {
        match self {
            FringeSpacing::Finite(v) => Some(*v),
            FringeSpacing::Unbounded => None,
        }
    }

    /// Spatial frequency `1 / spacing`, zero when unbounded.
    pub fn frequency(&self) -> f64 {
        match self {
            FringeSpacing::Finite(v) => 1.0 / v,
            FringeSpacing::Unbounded => 0.0,
        }
    }
}

/// `(L / sin θ, L / cos θ)` for a far-field wave at angle `theta`.
///
/// `theta = 0` leaves the x screen unmodulated and `theta = π/2` the y screen.
pub fn fringe_spacing(theta: f64, medium: &MediumParams) -> (FringeSpacing, FringeSpacing) {
    let l = medium.wavelength();
    let along_x = if theta == 0.0 {
        FringeSpacing::Unbounded
    } else {
        FringeSpacing::Finite(l / theta.sin())
    };
    // cos(FRAC_PI_2) is ~6e-17, not zero
    let along_y = if theta == FRAC_PI_2 {
        FringeSpacing::Unbounded
    } else {
        FringeSpacing::Finite(l / theta.cos())
    };
    (along_x, along_y)
}
