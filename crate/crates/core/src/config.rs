//! Experiment configuration: a TOML file whose keys can be overridden from the
//! command line. Every default reproduces the `{λ0 = 852 nm, d = 10 λ0}` design.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::farfield::{table2_profile, Quadrature, ReflectanceProfile, Taper};
use crate::metasurface::{default_aperture_radius, CellCountRule, DesignKind, DesignSpec, Palette};
use crate::{Error, Result};

pub const BUILTIN_TABLE2: &str = "builtin:table2";
pub const OUT_DIR_ENV: &str = "AQV_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub lambda0_nm: f64,
    pub d_over_lambda0: f64,
    pub design: DesignKind,
    /// Palette CSV for the resonant design; the five-rod palette when absent.
    pub palette: Option<PathBuf>,
    /// Reflectance CSV, or `builtin:table2`.
    pub reflectance: String,
    pub taper: Taper,
    /// Metasurface numerical aperture. Sets the design aperture `d·tan(asin NA)`
    /// and adds a single-NA line to the far-field report.
    pub na: Option<f64>,
    pub aperture_radius_nm: Option<f64>,
    pub unit_cell_nm: Option<[f64; 2]>,
    pub cell_count: CellCountRule,
    pub quadrature: Quadrature,
    pub svg: bool,
    pub out_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            lambda0_nm: 852.0,
            d_over_lambda0: 10.0,
            design: DesignKind::Resonant,
            palette: None,
            reflectance: BUILTIN_TABLE2.to_string(),
            taper: Taper::Linear,
            na: None,
            aperture_radius_nm: None,
            unit_cell_nm: None,
            cell_count: CellCountRule::default(),
            quadrature: Quadrature::default(),
            svg: false,
            out_dir: None,
        }
    }
}

impl ExperimentConfig {
    /// Reads a TOML file. Relative file references are resolved against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text).map_err(|e| Error::parse(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        if let Some(p) = cfg.palette.as_mut() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if cfg.reflectance != BUILTIN_TABLE2 && Path::new(&cfg.reflectance).is_relative() {
            cfg.reflectance = base.join(&cfg.reflectance).to_string_lossy().into_owned();
        }
        if let Some(p) = cfg.out_dir.as_mut() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::invalid(e.to_string()))
    }

    /// Checks numeric ranges and that referenced files exist and parse.
    pub fn validate(&self) -> Result<()> {
        Quadrature::new(self.quadrature.nodes_theta, self.quadrature.nodes_phi)?;
        if let Some(na) = self.na {
            if !(na > 0.0 && na <= 1.0) {
                return Err(Error::invalid(format!("na must lie in (0, 1], got {na}")));
            }
        }
        self.design_spec()?;
        self.palette()?;
        self.reflectance_profile()?;
        Ok(())
    }

    pub fn design_spec(&self) -> Result<DesignSpec> {
        let d_nm = self.lambda0_nm * self.d_over_lambda0;
        let aperture = match (self.aperture_radius_nm, self.na) {
            (Some(r), _) => r,
            (None, Some(na)) if na < 1.0 => d_nm * na / (1.0 - na * na).sqrt(),
            _ => default_aperture_radius(d_nm),
        };
        let cell = self.unit_cell_nm.unwrap_or_else(|| self.design.default_unit_cell_nm());
        Ok(DesignSpec::new(self.lambda0_nm, d_nm, cell, self.design, aperture)?.with_cell_count(self.cell_count))
    }

    pub fn palette(&self) -> Result<Palette> {
        match &self.palette {
            Some(path) => Palette::load_csv(path),
            None => Ok(Palette::five_rod()),
        }
    }

    pub fn reflectance_profile(&self) -> Result<ReflectanceProfile> {
        if self.reflectance == BUILTIN_TABLE2 {
            Ok(table2_profile(self.taper))
        } else {
            ReflectanceProfile::load_csv(Path::new(&self.reflectance), 1.0)
        }
    }

    /// `out_dir`, then `$AQV_OUT_DIR`, then the working directory.
    pub fn output_dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }
}
