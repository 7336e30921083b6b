use serde::{Deserialize, Serialize};

use super::DesignSpec;

/// How many unit cells a supercell is assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellCountRule {
    /// Round the far-field zone width `√(nλ0d) − √((n−1)λ0d)` to whole cells.
    /// This is the count quoted for the reference design.
    #[default]
    FresnelZone,
    /// Round the exact boundary-to-boundary length to whole cells.
    ExactRound,
}

/// One `2π` wrap of the target phase, as an annulus `[r_start, r_end)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupercellRecord {
    pub index: usize,
    pub r_start_nm: f64,
    pub r_end_nm: f64,
    pub length_exact_nm: f64,
    pub n_unit_cells: usize,
    /// Incidence angle at the inner edge, `atan(r_start / d)`.
    pub theta_inner_deg: f64,
    /// The aperture cut this supercell before its phase boundary.
    pub truncated: bool,
}

impl SupercellRecord {
    /// Length rounded to whole unit cells.
    pub fn length_snapped_nm(&self, pitch_nm: f64) -> f64 {
        self.n_unit_cells as f64 * pitch_nm
    }
}

/// Exact radius at which the unwrapped phase has advanced by `2πn`:
/// `√(nλ0d + n²λ0²/4)`.
pub fn zone_radius(spec: &DesignSpec, n: usize) -> f64 {
    let n = n as f64;
    let l = spec.lambda0_nm;
    (n * l * spec.d_nm + n * n * l * l / 4.0).sqrt()
}

fn paraxial_zone_radius(spec: &DesignSpec, n: usize) -> f64 {
    (n as f64 * spec.lambda0_nm * spec.d_nm).sqrt()
}

/// Supercells tiling `[0, aperture)`; the last one is truncated at the aperture
/// edge unless a boundary falls exactly on it.
pub fn supercell_boundaries(spec: &DesignSpec) -> Vec<SupercellRecord> {
    let pitch = spec.unit_cell_nm[0];
    let aperture = spec.aperture_radius_nm;
    let mut out = Vec::new();
    let mut r_start = 0.0;
    let mut n = 1;
    while r_start < aperture {
        let boundary = zone_radius(spec, n);
        let truncated = boundary > aperture;
        let r_end = if truncated { aperture } else { boundary };
        let length = r_end - r_start;
        let cells = if truncated {
            length / pitch
        } else {
            match spec.cell_count {
                CellCountRule::FresnelZone => {
                    (paraxial_zone_radius(spec, n) - paraxial_zone_radius(spec, n - 1)) / pitch
                }
                CellCountRule::ExactRound => length / pitch,
            }
        };
        out.push(SupercellRecord {
            index: n,
            r_start_nm: r_start,
            r_end_nm: r_end,
            length_exact_nm: length,
            n_unit_cells: (cells.round() as usize).max(1),
            theta_inner_deg: (r_start / spec.d_nm).atan().to_degrees(),
            truncated,
        });
        r_start = r_end;
        n += 1;
    }
    out
}
