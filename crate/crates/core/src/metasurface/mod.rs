//! Reflectarray metasurfaces that act as a spherical mirror focusing back on
//! an emitter at height `d`.
//!
//! All lengths are in nanometres, angles in radians unless a name says `deg`.
//! The surface is the plane `z = 0`, the emitter sits at `(0, 0, d)`.

mod export;
mod layout;
mod palette;
mod profile;
mod supercell;

pub use export::{layout_csv, layout_json, layout_svg, supercell_table_csv, LAYOUT_CSV_HEADER, SUPERCELL_CSV_HEADER};
pub use layout::{
    build_geometric_layout, build_layout, build_resonant_layout, AntennaElement, Geometry, MetasurfaceLayout,
};
pub use palette::{Palette, PaletteEntry};
pub use profile::{
    circular_distance, geometric_phase, phase_gradient, phase_profile, rotation_for_phase, snell_reflection_angle,
    unwrapped_phase, SnellOutcome,
};
pub use supercell::{supercell_boundaries, zone_radius, CellCountRule, SupercellRecord};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Rod used by the geometric-phase design (half-wave plate in reflection).
pub const GEOMETRIC_ROD_NM: [f64; 2] = [200.0, 80.0];

/// Polar angle beyond which the resonant design has no efficiency data.
pub const DEFAULT_THETA_MAX_DEG: f64 = 70.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignKind {
    /// Antennas of varying length sample the phase (x polarisation only).
    Resonant,
    /// Identical rotated rods imprint a Pancharatnam–Berry phase `2φ`.
    Geometric,
}

impl DesignKind {
    /// Unit cell `(Λx, Λy)` of the reference gratings.
    pub fn default_unit_cell_nm(self) -> [f64; 2] {
        match self {
            DesignKind::Resonant => [300.0, 150.0],
            DesignKind::Geometric => [300.0, 300.0],
        }
    }
}

impl std::str::FromStr for DesignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resonant" => Ok(DesignKind::Resonant),
            "geometric" => Ok(DesignKind::Geometric),
            other => Err(Error::invalid(format!(
                "unknown design kind `{other}` (resonant|geometric)"
            ))),
        }
    }
}

impl std::fmt::Display for DesignKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DesignKind::Resonant => "resonant",
            DesignKind::Geometric => "geometric",
        })
    }
}

/// Parameters of one design; every design is specific to `{λ0, d}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    pub lambda0_nm: f64,
    /// Emitter height above the surface.
    pub d_nm: f64,
    /// `(Λx, Λy)`; supercell cell counts use `Λx`.
    pub unit_cell_nm: [f64; 2],
    pub kind: DesignKind,
    /// Radius of the (circular) metasurface.
    pub aperture_radius_nm: f64,
    #[serde(default)]
    pub cell_count: CellCountRule,
}

impl DesignSpec {
    pub fn new(
        lambda0_nm: f64,
        d_nm: f64,
        unit_cell_nm: [f64; 2],
        kind: DesignKind,
        aperture_radius_nm: f64,
    ) -> Result<Self> {
        let spec = Self {
            lambda0_nm,
            d_nm,
            unit_cell_nm,
            kind,
            aperture_radius_nm,
            cell_count: CellCountRule::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `λ0 = 852 nm`, `d = 10 λ0`, reference unit cell, aperture `d·tan 70°`.
    pub fn reference(kind: DesignKind) -> Self {
        Self::with_defaults(852.0, 10.0, kind).expect("reference design is valid")
    }

    /// Design with the reference unit cell and the default aperture.
    pub fn with_defaults(lambda0_nm: f64, d_over_lambda0: f64, kind: DesignKind) -> Result<Self> {
        let d_nm = lambda0_nm * d_over_lambda0;
        Self::new(
            lambda0_nm,
            d_nm,
            kind.default_unit_cell_nm(),
            kind,
            default_aperture_radius(d_nm),
        )
    }

    pub fn with_aperture(mut self, aperture_radius_nm: f64) -> Result<Self> {
        self.aperture_radius_nm = aperture_radius_nm;
        self.validate()?;
        Ok(self)
    }

    pub fn with_cell_count(mut self, rule: CellCountRule) -> Self {
        self.cell_count = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("lambda0", self.lambda0_nm),
            ("d", self.d_nm),
            ("unit cell x", self.unit_cell_nm[0]),
            ("unit cell y", self.unit_cell_nm[1]),
            ("aperture radius", self.aperture_radius_nm),
        ];
        for (name, v) in lengths {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be a positive length, got {v}")));
            }
        }
        let pitch = self.unit_cell_nm[0].max(self.unit_cell_nm[1]);
        if self.aperture_radius_nm < pitch {
            return Err(Error::invalid(format!(
                "aperture radius {} nm is smaller than one unit cell ({pitch} nm)",
                self.aperture_radius_nm
            )));
        }
        Ok(())
    }

    pub fn k0(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.lambda0_nm
    }
}

/// `d · tan θmax` with `θmax = 70°`.
pub fn default_aperture_radius(d_nm: f64) -> f64 {
    d_nm * DEFAULT_THETA_MAX_DEG.to_radians().tan()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(DesignSpec::new(852.0, 8520.0, [300.0, 150.0], DesignKind::Resonant, 1000.0).is_ok());
        assert!(DesignSpec::new(-1.0, 8520.0, [300.0, 150.0], DesignKind::Resonant, 1000.0).is_err());
        assert!(DesignSpec::new(852.0, 8520.0, [300.0, 150.0], DesignKind::Resonant, 200.0).is_err());
        let r = DesignSpec::reference(DesignKind::Geometric);
        assert_eq!(r.unit_cell_nm, [300.0, 300.0]);
        assert!((r.aperture_radius_nm - 8520.0 * 70f64.to_radians().tan()).abs() < 1e-9);
        assert_eq!("geometric".parse::<DesignKind>().unwrap(), DesignKind::Geometric);
        assert!("spiral".parse::<DesignKind>().is_err());
    }
}
