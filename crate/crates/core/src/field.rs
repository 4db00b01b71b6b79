//! Sampled fields, their angular spectra, and the grid geometry shared by
//! every other module.
//!
//! Storage is row-major with the x index fastest: sample `(i, j)` lives at
//! `data[j * nx + i]`. Spectral bins use the same layout with `(k, l)`.
//!
//! DFT convention: the forward transform uses the kernel
//! `exp(-j 2π (fx x + fy y))` and is unnormalized; the inverse carries the
//! `1 / (nx ny)` factor.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Wavelength and propagation speed of a monochromatic medium.
///
/// The temporal frequency is always derived as `speed / wavelength`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    wavelength: f64,
    speed: f64,
}

impl MediumParams {
    pub fn new(wavelength: f64, speed: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::InvalidMedium(format!(
                "wavelength must be finite and > 0, got {wavelength}"
            )));
        }
        if !(speed.is_finite() && speed > 0.0) {
            return Err(Error::InvalidMedium(format!(
                "speed must be finite and > 0, got {speed}"
            )));
        }
        let medium = MediumParams { wavelength, speed };
        if !medium.wavenumber().is_finite() || !medium.frequency().is_finite() {
            return Err(Error::InvalidMedium(
                "wavenumber or frequency overflows".to_string(),
            ));
        }
        Ok(medium)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// Temporal frequency `c / L` in hertz.
    pub fn frequency(&self) -> f64 {
        self.speed / self.wavelength
    }

    /// `2π / L`.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Squared radius `1 / L²` of the propagation shell in frequency space.
    pub fn shell_radius_sq(&self) -> f64 {
        1.0 / (self.wavelength * self.wavelength)
    }
}

/// Uniform sampling lattice on the plane `z = const`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
    origin_x: f64,
    origin_y: f64,
    z: f64,
}

impl GridSpec {
    pub fn new(
        nx: usize,
        ny: usize,
        dx: f64,
        dy: f64,
        origin_x: f64,
        origin_y: f64,
        z: f64,
    ) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidGrid(format!(
                "sample counts must be >= 1, got {nx}x{ny}"
            )));
        }
        if nx.checked_mul(ny).is_none() {
            return Err(Error::InvalidGrid(format!("{nx}x{ny} overflows")));
        }
        for (name, pitch) in [("dx", dx), ("dy", dy)] {
            if !(pitch.is_finite() && pitch > 0.0) {
                return Err(Error::InvalidGrid(format!(
                    "{name} must be finite and > 0, got {pitch}"
                )));
            }
        }
        for (name, v) in [("origin_x", origin_x), ("origin_y", origin_y), ("z", z)] {
            if !v.is_finite() {
                return Err(Error::InvalidGrid(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        Ok(GridSpec {
            nx,
            ny,
            dx,
            dy,
            origin_x,
            origin_y,
            z,
        })
    }

    /// Grid whose sample `(nx/2, ny/2)` sits at `x = y = 0`.
    pub fn centered(nx: usize, ny: usize, dx: f64, dy: f64, z: f64) -> Result<Self> {
        let origin_x = -((nx / 2) as f64) * dx;
        let origin_y = -((ny / 2) as f64) * dy;
        GridSpec::new(nx, ny, dx, dy, origin_x, origin_y, z)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn origin_x(&self) -> f64 {
        self.origin_x
    }

    pub fn origin_y(&self) -> f64 {
        self.origin_y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same lattice moved to another plane.
    pub fn with_z(&self, z: f64) -> Result<Self> {
        GridSpec::new(
            self.nx,
            self.ny,
            self.dx,
            self.dy,
            self.origin_x,
            self.origin_y,
            z,
        )
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin_x + i as f64 * self.dx
    }

    pub fn y(&self, j: usize) -> f64 {
        self.origin_y + j as f64 * self.dy
    }

    /// Physical position of sample `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> (f64, f64, f64) {
        (self.x(i), self.y(j), self.z)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// True when both grids share counts, pitches and origin (z may differ).
    pub fn same_lattice(&self, other: &GridSpec) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && self.dx == other.dx
            && self.dy == other.dy
            && self.origin_x == other.origin_x
            && self.origin_y == other.origin_y
    }
}

/// Signed DFT bin index: `k` for `k < ceil(n/2)`, `k - n` otherwise.
pub fn wrap_index(k: usize, n: usize) -> i64 {
    if k < n.div_ceil(2) {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Inverse of [`wrap_index`].
pub fn unwrap_index(m: i64, n: usize) -> usize {
    if m < 0 {
        (m + n as i64) as usize
    } else {
        m as usize
    }
}

/// Spatial frequency of bin `k` along an axis of `n` samples with pitch `d`.
pub fn bin_frequency(k: usize, n: usize, d: f64) -> f64 {
    wrap_index(k, n) as f64 / (n as f64 * d)
}

/// Spatial frequencies `(fx, fy)` for every bin, in storage order.
pub fn frequency_grid(grid: &GridSpec) -> Vec<(f64, f64)> {
    let fxs: Vec<f64> = (0..grid.nx)
        .map(|k| bin_frequency(k, grid.nx, grid.dx))
        .collect();
    let mut out = Vec::with_capacity(grid.len());
    for l in 0..grid.ny {
        let fy = bin_frequency(l, grid.ny, grid.dy);
        out.extend(fxs.iter().map(|&fx| (fx, fy)));
    }
    out
}

fn check_samples(grid: &GridSpec, data: &[Complex64], what: &str) -> Result<()> {
    if data.len() != grid.len() {
        return Err(Error::InvalidField(format!(
            "{what} has {} samples, grid {}x{} needs {}",
            data.len(),
            grid.nx,
            grid.ny,
            grid.len()
        )));
    }
    if let Some(pos) = data
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::InvalidField(format!(
            "{what} sample {pos} is not finite"
        )));
    }
    Ok(())
}

/// Complex amplitudes sampled on a plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefield {
    grid: GridSpec,
    medium: MediumParams,
    data: Vec<Complex64>,
}

impl Wavefield {
    pub fn new(grid: GridSpec, medium: MediumParams, data: Vec<Complex64>) -> Result<Self> {
        check_samples(&grid, &data, "field")?;
        Ok(Wavefield { grid, medium, data })
    }

    pub fn zeros(grid: GridSpec, medium: MediumParams) -> Self {
        Wavefield {
            grid,
            medium,
            data: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Builds a field by evaluating `f(x, y)` at every sample position.
    pub fn from_fn(
        grid: GridSpec,
        medium: MediumParams,
        mut f: impl FnMut(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            let y = grid.y(j);
            for i in 0..grid.nx {
                data.push(f(grid.x(i), y));
            }
        }
        Wavefield::new(grid, medium, data)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn medium(&self) -> &MediumParams {
        &self.medium
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[self.grid.index(i, j)]
    }

    /// Sum of squared magnitudes.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.data.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Multiplies every sample by `factor`, keeping the geometry.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Wavefield::new(
            self.grid,
            self.medium,
            self.data.iter().map(|v| v * factor).collect(),
        )
    }
}

/// DFT samples of a [`Wavefield`], indexed by bin `(k, l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSpectrum {
    grid: GridSpec,
    medium: MediumParams,
    data: Vec<Complex64>,
}

impl AngularSpectrum {
    pub fn new(grid: GridSpec, medium: MediumParams, data: Vec<Complex64>) -> Result<Self> {
        check_samples(&grid, &data, "spectrum")?;
        Ok(AngularSpectrum { grid, medium, data })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn medium(&self) -> &MediumParams {
        &self.medium
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.data[self.grid.index(k, l)]
    }

    pub fn frequencies(&self) -> Vec<(f64, f64)> {
        frequency_grid(&self.grid)
    }

    pub(crate) fn from_parts_unchecked(
        grid: GridSpec,
        medium: MediumParams,
        data: Vec<Complex64>,
    ) -> Self {
        AngularSpectrum { grid, medium, data }
    }

    pub(crate) fn into_parts(self) -> (GridSpec, MediumParams, Vec<Complex64>) {
        (self.grid, self.medium, self.data)
    }
}

/// In-place unnormalized 2D DFT of an `nx` by `ny` x-fastest buffer.
pub(crate) fn fft2_in_place(data: &mut [Complex64], nx: usize, ny: usize, direction: FftDirection) {
    debug_assert_eq!(data.len(), nx * ny);
    let mut planner = FftPlanner::<f64>::new();

    if nx > 1 {
        let fft = planner.plan_fft(nx, direction);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        // rows are contiguous
        fft.process_with_scratch(data, &mut scratch);
    }

    if ny > 1 {
        let fft = planner.plan_fft(ny, direction);
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let mut column = vec![Complex64::new(0.0, 0.0); ny];
        for i in 0..nx {
            for (j, c) in column.iter_mut().enumerate() {
                *c = data[j * nx + i];
            }
            fft.process_with_scratch(&mut column, &mut scratch);
            for (j, c) in column.iter().enumerate() {
                data[j * nx + i] = *c;
            }
        }
    }
}

/// Unnormalized forward DFT with kernel `exp(-j 2π (fx x + fy y))`.
pub fn forward_spectrum(field: &Wavefield) -> AngularSpectrum {
    let mut data = field.data.clone();
    fft2_in_place(
        &mut data,
        field.grid.nx,
        field.grid.ny,
        FftDirection::Forward,
    );
    AngularSpectrum::from_parts_unchecked(field.grid, field.medium, data)
}

/// Inverse of [`forward_spectrum`], including the `1 / (nx ny)` factor.
pub fn inverse_spectrum(spec: &AngularSpectrum) -> Wavefield {
    let mut data = spec.data.clone();
    let (nx, ny) = (spec.grid.nx, spec.grid.ny);
    fft2_in_place(&mut data, nx, ny, FftDirection::Inverse);
    let norm = 1.0 / (nx * ny) as f64;
    for v in &mut data {
        *v *= norm;
    }
    Wavefield {
        grid: spec.grid,
        medium: spec.medium,
        data,
    }
}
