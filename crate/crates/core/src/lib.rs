//! Monochromatic scalar wavefields on planar screens: synthesis from point
//! sources, plane-to-plane propagation in the angular-spectrum domain, and
//! reconstruction of source regions by backward propagation.
//!
//! All lengths are in meters. Fields carry an implicit `exp(-j 2π f t)` time
//! dependence, so `exp(+j 2π r / L)` is an outgoing wave.

pub mod error;
pub mod field;
pub mod io;
pub mod kernel;
pub mod propagation;
pub mod reconstruct;
pub mod sources;

pub use error::{Error, Result};
pub use field::{
    forward_spectrum, frequency_grid, inverse_spectrum, AngularSpectrum, GridSpec, MediumParams,
    Wavefield,
};
pub use kernel::{dispersion_residual, green_born, green_kernel, KernelSample};
pub use propagation::{
    backpropagate, band_limit, make_kernel, propagate, propagate_spectrum, EvanescentPolicy,
    PropagationKernel,
};
pub use reconstruct::{focus_metric, locate_sources, sweep, DepthStack, SourceEstimate};
pub use sources::{
    direct_field, fringe_spacing, plane_wave_field, FringeSpacing, PlaneWave, PointSource,
    SourceSet,
};

pub use num_complex::Complex64;
