//! Depth sweeps of a recorded field and point-source localization.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{forward_spectrum, inverse_spectrum, Wavefield};
use crate::propagation::{propagate_spectrum, EvanescentPolicy};

/// Planes reconstructed from one recording, ordered by increasing z.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthStack {
    planes: Vec<Wavefield>,
    source_recording_z: f64,
}

impl DepthStack {
    pub fn new(planes: Vec<Wavefield>, source_recording_z: f64) -> Result<Self> {
        for pair in planes.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if !a.grid().same_lattice(b.grid()) || a.medium() != b.medium() {
                return Err(Error::InvalidArgument(
                    "depth stack planes must share lattice and medium".to_string(),
                ));
            }
            if b.grid().z() <= a.grid().z() {
                return Err(Error::InvalidArgument(format!(
                    "depth stack z must increase strictly: {} then {}",
                    a.grid().z(),
                    b.grid().z()
                )));
            }
        }
        Ok(DepthStack {
            planes,
            source_recording_z,
        })
    }

    pub fn planes(&self) -> &[Wavefield] {
        &self.planes
    }

    pub fn source_recording_z(&self) -> f64 {
        self.source_recording_z
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn z_values(&self) -> Vec<f64> {
        self.planes.iter().map(|p| p.grid().z()).collect()
    }
}

/// A localized intensity maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceEstimate {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub peak_intensity: f64,
}

/// Propagates `recording` independently to every target plane.
///
/// Targets must be non-empty, strictly increasing, and all on one side of the
/// recording plane (the plane itself is allowed).
pub fn sweep(
    recording: &Wavefield,
    z_targets: &[f64],
    policy: EvanescentPolicy,
) -> Result<DepthStack> {
    if z_targets.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep needs at least one z target".into(),
        ));
    }
    if let Some(bad) = z_targets.iter().find(|z| !z.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "sweep target {bad} is not finite"
        )));
    }
    if z_targets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "sweep targets must be strictly increasing".into(),
        ));
    }
    let z0 = recording.grid().z();
    let (lo, hi) = (z_targets[0], z_targets[z_targets.len() - 1]);
    if lo < z0 && hi > z0 {
        return Err(Error::InvalidArgument(format!(
            "sweep targets [{lo}, {hi}] straddle the recording plane z = {z0}"
        )));
    }

    let spec = forward_spectrum(recording);
    let planes = z_targets
        .par_iter()
        .map(|&z| {
            let mut plane = inverse_spectrum(&propagate_spectrum(&spec, z - z0, policy)?);
            // pin the plane location to the requested target exactly
            plane = Wavefield::new(plane.grid().with_z(z)?, *plane.medium(), plane.into_data())?;
            Ok(plane)
        })
        .collect::<Result<Vec<_>>>()?;
    DepthStack::new(planes, z0)
}

/// Peak sample intensity `max |v|²`.
pub fn focus_metric(plane: &Wavefield) -> f64 {
    plane
        .data()
        .iter()
        .map(|v| v.norm_sqr())
        .fold(0.0, f64::max)
}

/// Index of the plane with the largest [`focus_metric`]; earliest wins ties.
pub fn best_focus(stack: &DepthStack) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, plane) in stack.planes.iter().enumerate() {
        let m = focus_metric(plane);
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((k, m));
        }
    }
    best.map(|(k, _)| k)
}

/// Local maxima of intensity over the 26-neighbourhood of the (x, y, z)
/// lattice that reach `threshold_fraction` of the global maximum.
///
/// Plateaus report their first cell in (z, y, x) order. Results are sorted by
/// descending intensity, ties broken by (z, y, x) index.
pub fn locate_sources(stack: &DepthStack, threshold_fraction: f64) -> Result<Vec<SourceEstimate>> {
    if !(threshold_fraction > 0.0 && threshold_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold fraction must lie in (0, 1], got {threshold_fraction}"
        )));
    }
    let Some(first) = stack.planes.first() else {
        return Ok(Vec::new());
    };
    let grid = *first.grid();
    let (nx, ny, nz) = (grid.nx(), grid.ny(), stack.planes.len());
    let volume: Vec<Vec<f64>> = stack.planes.iter().map(|p| p.intensity()).collect();
    let global_max = volume
        .iter()
        .flat_map(|p| p.iter().copied())
        .fold(0.0, f64::max);
    if global_max <= 0.0 {
        return Ok(Vec::new());
    }
    let cutoff = threshold_fraction * global_max;

    let at = |iz: usize, iy: usize, ix: usize| volume[iz][iy * nx + ix];
    let is_local_max = |iz: usize, iy: usize, ix: usize| {
        let v = at(iz, iy, ix);
        for dz in -1i64..=1 {
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    if (dz, dy, dx) == (0, 0, 0) {
                        continue;
                    }
                    let (z, y, x) = (iz as i64 + dz, iy as i64 + dy, ix as i64 + dx);
                    if z < 0 || y < 0 || x < 0 || z >= nz as i64 || y >= ny as i64 || x >= nx as i64
                    {
                        continue;
                    }
                    let w = at(z as usize, y as usize, x as usize);
                    let earlier = (dz, dy, dx) < (0, 0, 0);
                    if w > v || (earlier && w == v) {
                        return false;
                    }
                }
            }
        }
        true
    };

    let mut found: Vec<((usize, usize, usize), f64)> = Vec::new();
    for iz in 0..nz {
        for iy in 0..ny {
            for ix in 0..nx {
                let v = at(iz, iy, ix);
                if v >= cutoff && is_local_max(iz, iy, ix) {
                    found.push(((iz, iy, ix), v));
                }
            }
        }
    }
    // stable sort keeps (z, y, x) scan order for equal intensities
    found.sort_by(|a, b| b.1.total_cmp(&a.1));

    Ok(found
        .into_iter()
        .map(|((iz, iy, ix), v)| SourceEstimate {
            x: grid.x(ix),
            y: grid.y(iy),
            z: stack.planes[iz].grid().z(),
            peak_intensity: v,
        })
        .collect())
}
