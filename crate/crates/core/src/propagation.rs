//! Plane-to-plane propagation between parallel screens.
//!
//! Each spectral bin inside the disk `fx² + fy² <= 1/L²` is multiplied by
//! `exp(j 2π dz sqrt(1/L² - fx² - fy²))`. Backward propagation is the same
//! multiplier with `dz` negated, which is the bin-wise complex conjugate.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{
    forward_spectrum, frequency_grid, inverse_spectrum, AngularSpectrum, GridSpec, MediumParams,
    Wavefield,
};

/// Relative tolerance under which a bin is treated as lying on the rim.
pub const RIM_TOLERANCE: f64 = 1e-15;

/// Treatment of bins outside the propagating disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvanescentPolicy {
    /// Evanescent bins are set to zero.
    #[default]
    Truncate,
    /// Evanescent bins are attenuated by `exp(-2π |dz| sqrt(fx² + fy² - 1/L²))`
    /// in both directions; backward propagation never amplifies them.
    Decay,
}

impl fmt::Display for EvanescentPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvanescentPolicy::Truncate => f.write_str("truncate"),
            EvanescentPolicy::Decay => f.write_str("decay"),
        }
    }
}

impl FromStr for EvanescentPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "truncate" => Ok(EvanescentPolicy::Truncate),
            "decay" => Ok(EvanescentPolicy::Decay),
            other => Err(Error::InvalidArgument(format!(
                "unknown evanescent policy {other:?}"
            ))),
        }
    }
}

/// Which side of the band limit a bin falls on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum BinKind {
    /// `1/L² - fx² - fy²`, clamped at zero on the rim.
    Propagating(f64),
    /// `fx² + fy² - 1/L²`, strictly positive.
    Evanescent(f64),
}

fn classify(radial_sq: f64, medium: &MediumParams) -> BinKind {
    let shell = medium.shell_radius_sq();
    let arg = shell - radial_sq;
    if arg >= 0.0 {
        BinKind::Propagating(arg)
    } else if -arg <= RIM_TOLERANCE * shell {
        BinKind::Propagating(0.0)
    } else {
        BinKind::Evanescent(-arg)
    }
}

/// True when `(fx, fy)` lies inside the propagating disk (rim included).
pub fn is_propagating(fx: f64, fy: f64, medium: &MediumParams) -> bool {
    matches!(classify(fx * fx + fy * fy, medium), BinKind::Propagating(_))
}

fn transfer_value(
    radial_sq: f64,
    medium: &MediumParams,
    dz: f64,
    policy: EvanescentPolicy,
) -> Complex64 {
    match classify(radial_sq, medium) {
        BinKind::Propagating(arg) => Complex64::from_polar(1.0, 2.0 * PI * dz * arg.sqrt()),
        BinKind::Evanescent(excess) => match policy {
            EvanescentPolicy::Truncate => Complex64::new(0.0, 0.0),
            EvanescentPolicy::Decay => {
                Complex64::new((-2.0 * PI * dz.abs() * excess.sqrt()).exp(), 0.0)
            }
        },
    }
}

/// Transfer-function multipliers for one signed propagation distance.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationKernel {
    grid: GridSpec,
    medium: MediumParams,
    dz: f64,
    policy: EvanescentPolicy,
    values: Vec<Complex64>,
}

impl PropagationKernel {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn medium(&self) -> &MediumParams {
        &self.medium
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn policy(&self) -> EvanescentPolicy {
        self.policy
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.values[self.grid.index(k, l)]
    }

    /// Bin-wise product with a spectrum on the same lattice.
    pub fn apply(&self, spec: &AngularSpectrum) -> Result<AngularSpectrum> {
        if !self.grid.same_lattice(spec.grid()) {
            return Err(Error::InvalidArgument(
                "kernel and spectrum grids differ".to_string(),
            ));
        }
        let data = spec
            .data()
            .iter()
            .zip(&self.values)
            .map(|(s, h)| s * h)
            .collect();
        let grid = spec.grid().with_z(spec.grid().z() + self.dz)?;
        Ok(AngularSpectrum::from_parts_unchecked(
            grid,
            *spec.medium(),
            data,
        ))
    }
}

/// Builds the transfer function for signed distance `dz`.
///
/// Values depend on `(fx, fy)` only through `fx² + fy²`.
pub fn make_kernel(
    grid: &GridSpec,
    medium: &MediumParams,
    dz: f64,
    policy: EvanescentPolicy,
) -> Result<PropagationKernel> {
    if !dz.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dz must be finite, got {dz}"
        )));
    }
    let values = frequency_grid(grid)
        .into_iter()
        .map(|(fx, fy)| transfer_value(fx * fx + fy * fy, medium, dz, policy))
        .collect();
    Ok(PropagationKernel {
        grid: *grid,
        medium: *medium,
        dz,
        policy,
        values,
    })
}

/// Applies the transfer function to an angular spectrum; the result's grid
/// sits at `z + dz`.
pub fn propagate_spectrum(
    spec: &AngularSpectrum,
    dz: f64,
    policy: EvanescentPolicy,
) -> Result<AngularSpectrum> {
    make_kernel(spec.grid(), spec.medium(), dz, policy)?.apply(spec)
}

/// Moves `field` by signed distance `dz` along z. Negative `dz` propagates
/// backwards.
pub fn propagate(field: &Wavefield, dz: f64, policy: EvanescentPolicy) -> Result<Wavefield> {
    let spec = forward_spectrum(field);
    Ok(inverse_spectrum(&propagate_spectrum(&spec, dz, policy)?))
}

/// Backward propagation by a positive distance: `propagate(field, -dz)`.
pub fn backpropagate(field: &Wavefield, dz: f64, policy: EvanescentPolicy) -> Result<Wavefield> {
    if !(dz.is_finite() && dz > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "backpropagation distance must be > 0, got {dz}"
        )));
    }
    propagate(field, -dz, policy)
}

/// Zeroes every spectral bin strictly outside the disk of radius `1/L`.
pub fn band_limit(field: &Wavefield) -> Wavefield {
    let spec = forward_spectrum(field);
    let (grid, medium, mut data) = spec.into_parts();
    for (v, (fx, fy)) in data.iter_mut().zip(frequency_grid(&grid)) {
        if !is_propagating(fx, fy, &medium) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    inverse_spectrum(&AngularSpectrum::from_parts_unchecked(grid, medium, data))
}
