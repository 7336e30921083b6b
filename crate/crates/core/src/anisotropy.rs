//! From Green-tensor samples to decay coefficients and ground-state coherence.
//!
//! Green components are dimensionless imaginary parts normalised to free
//! space: the isotropic vacuum is `Im Gxx = Im Gyy = 1`, `Im Gxy = 0`. With
//! that anchor and equal dipoles each circular transition decays at `γ0/2`.
//!
//! Sign convention: the dipoles are `d01 ε+` and `−d02 ε−`. The cross
//! coefficient is taken as
//! `κ12 = γ0 · d01 d02 / (d01² + d02²) · (Im Gxx − Im Gyy − 2i Im Gxy) / 2`,
//! so that `ρ12(∞) = R × A` holds with `A = +1` for a perfect σ± mixer and
//! `A = −1` when the x polarisation is fully suppressed.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::DecayCoefficients;
use crate::{Error, Result};

/// Basis in which a [`GreenSample`] is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Cartesian,
    Circular,
}

/// Imaginary Green-tensor components at the emitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum GreenSample {
    Cartesian {
        im_gxx: f64,
        im_gyy: f64,
        #[serde(default)]
        im_gxy: f64,
    },
    /// `Im G++` (= `Im G−−`) and `Im G+−`, for mirror-symmetric environments.
    Circular { im_gpp: f64, im_gpm: f64 },
}

impl GreenSample {
    pub fn cartesian(im_gxx: f64, im_gyy: f64, im_gxy: f64) -> Self {
        GreenSample::Cartesian { im_gxx, im_gyy, im_gxy }
    }

    pub fn circular(im_gpp: f64, im_gpm: f64) -> Self {
        GreenSample::Circular { im_gpp, im_gpm }
    }

    /// The isotropic vacuum.
    pub fn free_space() -> Self {
        Self::cartesian(1.0, 1.0, 0.0)
    }

    pub fn basis(&self) -> Basis {
        match self {
            GreenSample::Cartesian { .. } => Basis::Cartesian,
            GreenSample::Circular { .. } => Basis::Circular,
        }
    }

    /// Checks passivity: `Im G` must be positive semidefinite in the plane.
    pub fn validate(&self) -> Result<()> {
        match *self {
            GreenSample::Cartesian { im_gxx, im_gyy, im_gxy } => {
                if ![im_gxx, im_gyy, im_gxy].iter().all(|v| v.is_finite()) {
                    return Err(Error::invalid("Green components must be finite"));
                }
                if im_gxx < 0.0 || im_gyy < 0.0 {
                    return Err(Error::Unphysical(format!(
                        "Im Gxx = {im_gxx} and Im Gyy = {im_gyy} must be non-negative"
                    )));
                }
                if im_gxy * im_gxy > im_gxx * im_gyy * (1.0 + 1e-12) {
                    return Err(Error::Unphysical(format!(
                        "Im Gxy = {im_gxy} exceeds √(Im Gxx · Im Gyy)"
                    )));
                }
            }
            GreenSample::Circular { im_gpp, im_gpm } => {
                if !(im_gpp.is_finite() && im_gpm.is_finite()) {
                    return Err(Error::invalid("Green components must be finite"));
                }
                if im_gpp < 0.0 {
                    return Err(Error::Unphysical(format!("Im G++ = {im_gpp} must be non-negative")));
                }
                if im_gpm.abs() > im_gpp * (1.0 + 1e-14) {
                    return Err(Error::Unphysical(format!(
                        "|Im G+-| = {} exceeds Im G++ = {im_gpp}",
                        im_gpm.abs()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `(Im Gxx, Im Gyy, Im Gxy)` after validation.
    pub fn cartesian_components(&self) -> Result<(f64, f64, f64)> {
        self.validate()?;
        Ok(match *self {
            GreenSample::Cartesian { im_gxx, im_gyy, im_gxy } => (im_gxx, im_gyy, im_gxy),
            GreenSample::Circular { im_gpp, im_gpm } => (im_gpp + im_gpm, im_gpp - im_gpm, 0.0),
        })
    }

    /// Parses and validates one JSON record.
    pub fn from_json(text: &str) -> Result<Self> {
        let sample: GreenSample = serde_json::from_str(text)?;
        sample.validate()?;
        Ok(sample)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| Error::parse(path, e))
    }
}

/// Converts a Cartesian sample with `Im Gxy = 0` to the circular basis.
/// Circular input is returned unchanged.
pub fn to_circular(g: &GreenSample) -> Result<GreenSample> {
    g.validate()?;
    match *g {
        GreenSample::Cartesian { im_gxx, im_gyy, im_gxy } => {
            if im_gxy != 0.0 {
                return Err(Error::invalid(
                    "circular storage holds real Im G+-; samples with Im Gxy ≠ 0 stay Cartesian",
                ));
            }
            Ok(GreenSample::circular(0.5 * (im_gxx + im_gyy), 0.5 * (im_gxx - im_gyy)))
        }
        circular => Ok(circular),
    }
}

/// Converts to the Cartesian basis. Cartesian input is returned unchanged.
pub fn to_cartesian(g: &GreenSample) -> Result<GreenSample> {
    let (xx, yy, xy) = g.cartesian_components()?;
    Ok(GreenSample::cartesian(xx, yy, xy))
}

/// Transition dipole magnitudes of the two Λ legs. Only their ratio matters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipolePair {
    d01: f64,
    d02: f64,
}

impl DipolePair {
    pub fn new(d01: f64, d02: f64) -> Result<Self> {
        if !(d01 > 0.0 && d02 > 0.0 && d01.is_finite() && d02.is_finite()) {
            return Err(Error::invalid(format!(
                "dipole magnitudes must be positive and finite (d01 = {d01}, d02 = {d02})"
            )));
        }
        Ok(Self { d01, d02 })
    }

    pub fn equal() -> Self {
        Self { d01: 1.0, d02: 1.0 }
    }

    pub fn d01(&self) -> f64 {
        self.d01
    }

    pub fn d02(&self) -> f64 {
        self.d02
    }
}

/// Emitter factor `R = d01 d02 / (d01² + d02²)`, in `(0, 1/2]`.
pub fn coefficient_r(d: &DipolePair) -> f64 {
    d.d01 * d.d02 / (d.d01 * d.d01 + d.d02 * d.d02)
}

/// Real anisotropy `A = (Im Gxx − Im Gyy) / (Im Gxx + Im Gyy)` for
/// mirror-symmetric environments.
pub fn coefficient_a(g: &GreenSample) -> Result<f64> {
    g.validate()?;
    match *g {
        GreenSample::Cartesian { im_gxx, im_gyy, im_gxy } => {
            if im_gxy != 0.0 {
                return Err(Error::invalid("real anisotropy requires Im Gxy = 0; use `coherence`"));
            }
            let sum = im_gxx + im_gyy;
            if sum <= 0.0 {
                return Err(Error::invalid("anisotropy undefined for Im Gxx + Im Gyy = 0"));
            }
            Ok((im_gxx - im_gyy) / sum)
        }
        GreenSample::Circular { im_gpp, im_gpm } => {
            if im_gpp <= 0.0 {
                return Err(Error::invalid("anisotropy undefined for Im G++ = 0"));
            }
            Ok(im_gpm / im_gpp)
        }
    }
}

/// General complex anisotropy `(Im Gxx − Im Gyy − 2i Im Gxy) / (Im Gxx + Im Gyy)`.
///
/// The `Im Gxy ≠ 0` branch is implemented for completeness; no studied
/// structure realises it.
pub fn complex_anisotropy(g: &GreenSample) -> Result<Complex64> {
    if let GreenSample::Circular { .. } = g {
        return coefficient_a(g).map(|a| Complex64::new(a, 0.0));
    }
    let (xx, yy, xy) = g.cartesian_components()?;
    let sum = xx + yy;
    if sum <= 0.0 {
        return Err(Error::invalid("anisotropy undefined for Im Gxx + Im Gyy = 0"));
    }
    Ok(Complex64::new(xx - yy, -2.0 * xy) / sum)
}

/// Master-equation coefficients for the given environment and dipoles, with
/// rates in the same unit as `gamma0`.
pub fn decay_coefficients(g: &GreenSample, d: &DipolePair, gamma0: f64) -> Result<DecayCoefficients> {
    if !(gamma0 > 0.0) || !gamma0.is_finite() {
        return Err(Error::invalid(format!("γ0 must be positive, got {gamma0}")));
    }
    let (xx, yy, xy) = g.cartesian_components()?;
    let dsum = d.d01 * d.d01 + d.d02 * d.d02;
    let trace_half = 0.5 * (xx + yy);
    let gamma1 = gamma0 * d.d01 * d.d01 / dsum * trace_half;
    let gamma2 = gamma0 * d.d02 * d.d02 / dsum * trace_half;
    let kappa12 = Complex64::new(xx - yy, -2.0 * xy) * (0.5 * gamma0 * d.d01 * d.d02 / dsum);
    DecayCoefficients::new(gamma1, gamma2, kappa12)
}

/// Steady-state ground coherence `ρ12(∞) = R × A`.
pub fn coherence(g: &GreenSample, d: &DipolePair) -> Result<Complex64> {
    Ok(complex_anisotropy(g)? * coefficient_r(d))
}

/// [`coherence`] evaluated through the circular components `Im G+− / Im G++`.
pub fn coherence_circular(g: &GreenSample, d: &DipolePair) -> Result<f64> {
    let circ = to_circular(g)?;
    Ok(coefficient_r(d) * coefficient_a(&circ)?)
}
