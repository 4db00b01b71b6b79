//! Helmholtz impulse response and the Green-Born propagators.
//!
//! The amplitude constants are `2 / (L r)` for the standing kernel and
//! `1 / (j L r)` for the outgoing propagator, so that
//! `green_born(r) + green_born(-r) == green_kernel(r)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::MediumParams;

/// One evaluated kernel value at signed radius `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub r: f64,
    pub value: Complex64,
}

/// `(2 / (L |r|)) sin(2π |r| / L)`. Real and even in `r`.
pub fn green_kernel(r: f64, medium: &MediumParams) -> Result<Complex64> {
    if r == 0.0 {
        return Err(Error::KernelSingularity);
    }
    let l = medium.wavelength();
    let a = r.abs();
    Ok(Complex64::new(
        2.0 / (l * a) * (2.0 * PI * a / l).sin(),
        0.0,
    ))
}

/// `exp(j 2π r / L) / (j L r)` with signed `r`; negative `r` gives the
/// backward propagator.
pub fn green_born(r: f64, medium: &MediumParams) -> Result<Complex64> {
    if r == 0.0 {
        return Err(Error::KernelSingularity);
    }
    let l = medium.wavelength();
    let (s, c) = (2.0 * PI * r / l).sin_cos();
    // e^{jθ} / (j L r) = (sin θ - j cos θ) / (L r)
    let scale = 1.0 / (l * r);
    Ok(Complex64::new(s * scale, -c * scale))
}

pub fn sample_green_born(r: f64, medium: &MediumParams) -> Result<KernelSample> {
    Ok(KernelSample {
        r,
        value: green_born(r, medium)?,
    })
}

pub fn sample_green_kernel(r: f64, medium: &MediumParams) -> Result<KernelSample> {
    Ok(KernelSample {
        r,
        value: green_kernel(r, medium)?,
    })
}

/// `fx² + fy² + fz² - 1/L²`; zero on the propagation shell.
pub fn dispersion_residual(fx: f64, fy: f64, fz: f64, medium: &MediumParams) -> f64 {
    fx * fx + fy * fy + fz * fz - medium.shell_radius_sq()
}
