use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::palette::Palette;
use super::profile::{geometric_phase, phase_profile, rotation_for_phase};
use super::supercell::{supercell_boundaries, SupercellRecord};
use super::{DesignKind, DesignSpec, GEOMETRIC_ROD_NM};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    /// Axis-aligned palette antenna.
    Resonant { palette_index: u32, lx_nm: f64, ly_nm: f64 },
    /// Fixed rod rotated in-plane by `rotation_rad ∈ [0, π)`.
    Geometric { rotation_rad: f64, lx_nm: f64, ly_nm: f64 },
}

impl Geometry {
    pub fn size_nm(&self) -> [f64; 2] {
        match *self {
            Geometry::Resonant { lx_nm, ly_nm, .. } | Geometry::Geometric { lx_nm, ly_nm, .. } => [lx_nm, ly_nm],
        }
    }

    pub fn rotation_rad(&self) -> f64 {
        match *self {
            Geometry::Resonant { .. } => 0.0,
            Geometry::Geometric { rotation_rad, .. } => rotation_rad,
        }
    }
}

/// One antenna placed at the centre of its unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaElement {
    pub center_nm: [f64; 2],
    /// Phase imprinted on the reflected wave, in `[0, 2π)`.
    pub encoded_phase: f64,
    pub geometry: Geometry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetasurfaceLayout {
    pub spec: DesignSpec,
    pub supercells: Vec<SupercellRecord>,
    /// Row-major: rows by ascending `y`, cells by ascending `x`.
    pub elements: Vec<AntennaElement>,
}

impl MetasurfaceLayout {
    /// Phase the element is meant to reproduce. The resonant design is a 1-D
    /// map along `x` extruded along `y`; the geometric design follows the full
    /// radial profile.
    pub fn target_phase(&self, e: &AntennaElement) -> f64 {
        match self.spec.kind {
            DesignKind::Resonant => phase_profile(&self.spec, e.center_nm[0], 0.0),
            DesignKind::Geometric => phase_profile(&self.spec, e.center_nm[0], e.center_nm[1]),
        }
    }

    /// Largest circular distance between encoded and target phase.
    pub fn max_phase_error(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| super::circular_distance(e.encoded_phase, self.target_phase(e)))
            .fold(0.0, f64::max)
    }

    /// True when any aperture truncation happened before a phase boundary.
    pub fn truncated(&self) -> bool {
        self.supercells.last().is_some_and(|c| c.truncated)
    }
}

/// Unit-cell centres inside the aperture, grouped by row. Cells tile the plane
/// starting at the origin, so centres sit at `((i + ½)Λx, (j + ½)Λy)`.
fn cell_rows(spec: &DesignSpec) -> Vec<Vec<[f64; 2]>> {
    let [px, py] = spec.unit_cell_nm;
    let r = spec.aperture_radius_nm;
    let nx = (r / px).ceil() as i64;
    let ny = (r / py).ceil() as i64;
    (-ny..ny)
        .map(|j| {
            let y = (j as f64 + 0.5) * py;
            (-nx..nx)
                .map(|i| [(i as f64 + 0.5) * px, y])
                .filter(|[x, y]| x * x + y * y < r * r)
                .collect::<Vec<_>>()
        })
        .filter(|row| !row.is_empty())
        .collect()
}

fn place<F>(spec: &DesignSpec, element_at: F) -> Vec<AntennaElement>
where
    F: Fn([f64; 2]) -> AntennaElement + Sync,
{
    cell_rows(spec)
        .into_par_iter()
        .map(|row| row.into_iter().map(&element_at).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Resonant-phase design: every cell holds the palette antenna nearest in
/// phase to the target at its `x` coordinate. All antennas stay parallel.
pub fn build_resonant_layout(spec: &DesignSpec, palette: &Palette) -> Result<MetasurfaceLayout> {
    spec.validate()?;
    if spec.kind != DesignKind::Resonant {
        return Err(Error::invalid("resonant layout requested for a non-resonant design"));
    }
    if palette.is_empty() {
        return Err(Error::invalid("palette is empty"));
    }
    let elements = place(spec, |c| {
        let entry = palette.nearest(phase_profile(spec, c[0], 0.0));
        AntennaElement {
            center_nm: c,
            encoded_phase: super::profile::wrap(entry.phase_rad),
            geometry: Geometry::Resonant {
                palette_index: entry.index,
                lx_nm: entry.lx_nm,
                ly_nm: entry.ly_nm,
            },
        }
    });
    Ok(MetasurfaceLayout {
        spec: *spec,
        supercells: supercell_boundaries(spec),
        elements,
    })
}

/// Geometric-phase design: identical rods rotated by half the target phase.
pub fn build_geometric_layout(spec: &DesignSpec) -> Result<MetasurfaceLayout> {
    spec.validate()?;
    if spec.kind != DesignKind::Geometric {
        return Err(Error::invalid("geometric layout requested for a non-geometric design"));
    }
    let [lx_nm, ly_nm] = GEOMETRIC_ROD_NM;
    let elements = place(spec, |c| {
        let rotation_rad = rotation_for_phase(phase_profile(spec, c[0], c[1]));
        AntennaElement {
            center_nm: c,
            encoded_phase: geometric_phase(rotation_rad),
            geometry: Geometry::Geometric {
                rotation_rad,
                lx_nm,
                ly_nm,
            },
        }
    });
    Ok(MetasurfaceLayout {
        spec: *spec,
        supercells: supercell_boundaries(spec),
        elements,
    })
}

/// Dispatches on the design kind; the palette is only used by resonant designs.
pub fn build_layout(spec: &DesignSpec, palette: &Palette) -> Result<MetasurfaceLayout> {
    match spec.kind {
        DesignKind::Resonant => build_resonant_layout(spec, palette),
        DesignKind::Geometric => build_geometric_layout(spec),
    }
}
