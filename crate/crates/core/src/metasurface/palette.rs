use std::path::Path;

use serde::{Deserialize, Serialize};

use super::profile::circular_distance;
use crate::{Error, Result};

/// One antenna of a resonant-phase palette.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaletteEntry {
    pub index: u32,
    pub lx_nm: f64,
    pub ly_nm: f64,
    pub phase_rad: f64,
}

/// Discrete set of antennas sampling the `2π` phase range, sorted by index.
#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    entries: Vec<PaletteEntry>,
}

pub const PALETTE_CSV_HEADER: &str = "index,lx_nm,ly_nm,phase_rad";

impl Palette {
    pub fn new(mut entries: Vec<PaletteEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("palette is empty"));
        }
        entries.sort_by_key(|e| e.index);
        for w in entries.windows(2) {
            if w[0].index == w[1].index {
                return Err(Error::invalid(format!("duplicate palette index {}", w[0].index)));
            }
        }
        for e in &entries {
            if !(e.lx_nm > 0.0 && e.ly_nm > 0.0 && e.phase_rad.is_finite()) {
                return Err(Error::invalid(format!(
                    "palette entry {} has invalid geometry or phase",
                    e.index
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Five gold nanorods (`ly = 100 nm`) at phases `0, 2π/5, …, 8π/5`.
    pub fn five_rod() -> Self {
        const LX: [f64; 5] = [30.0, 105.0, 125.0, 145.0, 250.0];
        let entries = LX
            .iter()
            .enumerate()
            .map(|(k, &lx)| PaletteEntry {
                index: k as u32 + 1,
                lx_nm: lx,
                ly_nm: 100.0,
                phase_rad: 2.0 * std::f64::consts::PI * k as f64 / 5.0,
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[PaletteEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry whose phase is closest on the circle; ties go to the lower index.
    pub fn nearest(&self, phase: f64) -> &PaletteEntry {
        let mut best = &self.entries[0];
        let mut best_d = circular_distance(best.phase_rad, phase);
        for e in &self.entries[1..] {
            let d = circular_distance(e.phase_rad, phase);
            if d < best_d {
                best = e;
                best_d = d;
            }
        }
        best
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let entries = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<PaletteEntry>, _>>()
            .map_err(|e| Error::invalid(format!("palette CSV: {e}")))?;
        Self::new(entries)
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text).map_err(|e| Error::parse(path, e))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(PALETTE_CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{}\n", e.index, e.lx_nm, e.ly_nm, e.phase_rad));
        }
        out
    }
}
