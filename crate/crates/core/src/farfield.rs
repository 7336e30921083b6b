//! Decay-rate modification of an x-oriented dipole facing a finite,
//! partially reflecting spherical mirror, and the coherence it induces.
//!
//! `γx/γ0 = 3 ∫_{2π} dΩ/4π [1 − sin²θ cos²φ] (1 − Rx(θ))` over the hemisphere
//! facing the mirror, with `Rx = 0` wherever `sin θ > NA`. The y-polarised
//! rate is left at its free-space value.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::csv_row;
use crate::quadrature::{periodic_trapezoid, GaussLegendre};
use crate::{Error, Result};

/// How `Rx` varies on the interval that starts at a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    /// Hold the knot value up to the next knot.
    Constant,
    /// Ramp linearly (in θ) to the next knot's value.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub theta_deg: f64,
    pub rx: f64,
    pub interpolation: Interpolation,
}

impl Knot {
    pub fn constant(theta_deg: f64, rx: f64) -> Self {
        Self {
            theta_deg,
            rx,
            interpolation: Interpolation::Constant,
        }
    }

    pub fn linear(theta_deg: f64, rx: f64) -> Self {
        Self {
            theta_deg,
            rx,
            interpolation: Interpolation::Linear,
        }
    }
}

/// Extension of the tabulated reflectance beyond the last measured supercell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Taper {
    /// Linear ramp to zero at grazing incidence.
    #[default]
    Linear,
    /// Keep the last value until the aperture cutoff.
    Hold,
}

impl std::str::FromStr for Taper {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Taper::Linear),
            "hold" => Ok(Taper::Hold),
            other => Err(Error::invalid(format!("unknown taper `{other}` (linear|hold)"))),
        }
    }
}

/// Power reflectance `Rx(θ)` for x-polarised light as a function of polar angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectanceProfile {
    knots: Vec<Knot>,
    cutoff_na: f64,
}

pub const PROFILE_CSV_HEADER: &str = "theta_deg,rx,interpolation";

impl ReflectanceProfile {
    /// Knots must start at 0°, increase strictly up to at most 90°, carry
    /// `Rx ∈ [0, 1]`; the final knot's value holds to 90°.
    pub fn new(knots: Vec<Knot>, cutoff_na: f64) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::invalid("reflectance profile needs at least one knot"));
        }
        if knots[0].theta_deg != 0.0 {
            return Err(Error::invalid("reflectance profile must start at 0°"));
        }
        for k in &knots {
            if !(0.0..=1.0).contains(&k.rx) {
                return Err(Error::invalid(format!(
                    "reflectance {} at {}° outside [0, 1]",
                    k.rx, k.theta_deg
                )));
            }
            if !(0.0..=90.0).contains(&k.theta_deg) {
                return Err(Error::invalid(format!("knot angle {}° outside [0°, 90°]", k.theta_deg)));
            }
        }
        if knots.windows(2).any(|w| w[1].theta_deg <= w[0].theta_deg) {
            return Err(Error::invalid("knot angles must be strictly increasing"));
        }
        if knots.last().is_some_and(|k| k.interpolation == Interpolation::Linear) {
            return Err(Error::invalid("last knot cannot ramp: there is nothing to ramp to"));
        }
        if !(cutoff_na > 0.0 && cutoff_na <= 1.0) {
            return Err(Error::invalid(format!(
                "numerical aperture must lie in (0, 1], got {cutoff_na}"
            )));
        }
        Ok(Self { knots, cutoff_na })
    }

    /// Same `Rx` everywhere below the cutoff.
    pub fn uniform(rx: f64, cutoff_na: f64) -> Result<Self> {
        Self::new(vec![Knot::constant(0.0, rx)], cutoff_na)
    }

    /// Perfect x-polarised reflector of aperture `na`.
    pub fn ideal_mirror(na: f64) -> Result<Self> {
        Self::uniform(1.0, na)
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn cutoff_na(&self) -> f64 {
        self.cutoff_na
    }

    /// Cutoff angle `asin(NA)` in degrees.
    pub fn cutoff_deg(&self) -> f64 {
        self.cutoff_na.asin().to_degrees()
    }

    /// The profile seen by a smaller metasurface: `Rx = 0` for `sin θ > na`.
    pub fn truncated(&self, na: f64) -> Result<Self> {
        Self::new(self.knots.clone(), na.min(self.cutoff_na))
    }

    /// `Rx(θ)`, θ in degrees.
    pub fn rx(&self, theta_deg: f64) -> f64 {
        if theta_deg.to_radians().sin() > self.cutoff_na || !(0.0..=90.0).contains(&theta_deg) {
            return 0.0;
        }
        let k = self
            .knots
            .partition_point(|k| k.theta_deg <= theta_deg)
            .saturating_sub(1);
        let here = &self.knots[k];
        match (here.interpolation, self.knots.get(k + 1)) {
            (Interpolation::Linear, Some(next)) => {
                let t = (theta_deg - here.theta_deg) / (next.theta_deg - here.theta_deg);
                here.rx + t * (next.rx - here.rx)
            }
            _ => here.rx,
        }
    }

    /// Angles (degrees) at which `Rx` may be non-smooth, including the cutoff.
    fn breakpoints_deg(&self) -> Vec<f64> {
        let cutoff = self.cutoff_deg();
        let mut pts = vec![0.0];
        pts.extend(
            self.knots
                .iter()
                .map(|k| k.theta_deg)
                .filter(|t| *t > 0.0 && *t < cutoff),
        );
        if cutoff < 90.0 {
            pts.push(cutoff);
        }
        pts.push(90.0);
        pts.dedup();
        pts
    }

    pub fn from_csv_str(text: &str, cutoff_na: f64) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let knots = rdr
            .deserialize()
            .collect::<std::result::Result<Vec<Knot>, _>>()
            .map_err(|e| Error::invalid(format!("reflectance CSV: {e}")))?;
        Self::new(knots, cutoff_na)
    }

    pub fn load_csv(path: &Path, cutoff_na: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text, cutoff_na).map_err(|e| Error::parse(path, e))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(PROFILE_CSV_HEADER);
        out.push('\n');
        for k in &self.knots {
            let interp = match k.interpolation {
                Interpolation::Constant => "constant",
                Interpolation::Linear => "linear",
            };
            out.push_str(&format!("{},{},{}\n", k.theta_deg, k.rx, interp));
        }
        out
    }
}

/// Supercell reflectances of the resonant design in diffraction order −1,
/// each held over its annulus, extended past 33.3° by `taper`.
pub fn table2_profile(taper: Taper) -> ReflectanceProfile {
    let mut knots = vec![
        Knot::constant(0.0, 0.60),
        Knot::constant(17.6, 0.55),
        Knot::constant(24.6, 0.50),
        Knot::constant(29.4, 0.30),
    ];
    match taper {
        Taper::Linear => {
            knots.push(Knot::linear(33.3, 0.30));
            knots.push(Knot::constant(90.0, 0.0));
        }
        Taper::Hold => knots.push(Knot::constant(33.3, 0.30)),
    }
    ReflectanceProfile::new(knots, 1.0).expect("tabulated profile is valid")
}

/// Node counts of the product rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Quadrature {
    /// Gauss–Legendre nodes in `cos θ` per smooth panel of `Rx`.
    pub nodes_theta: usize,
    /// Trapezoid nodes in `φ`.
    pub nodes_phi: usize,
}

pub const MIN_NODES: usize = 16;

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            nodes_theta: 256,
            nodes_phi: 256,
        }
    }
}

impl Quadrature {
    pub fn new(nodes_theta: usize, nodes_phi: usize) -> Result<Self> {
        if nodes_theta < MIN_NODES || nodes_phi < MIN_NODES {
            return Err(Error::invalid(format!(
                "quadrature needs at least {MIN_NODES} nodes per angle (got {nodes_theta} × {nodes_phi})"
            )));
        }
        Ok(Self { nodes_theta, nodes_phi })
    }
}

/// `γx / γ0` for an x dipole facing the profile.
///
/// The hemisphere is split into panels at every knot and at the cutoff so
/// each Gauss–Legendre panel sees a smooth integrand.
pub fn gamma_x_ratio(profile: &ReflectanceProfile, quad: &Quadrature) -> f64 {
    let rule = GaussLegendre::new(quad.nodes_theta);
    let pts = profile.breakpoints_deg();
    let integral: f64 = pts
        .windows(2)
        .map(|w| {
            let (ta, tb) = (w[0], w[1]);
            let mid = 0.5 * (ta + tb);
            if mid.to_radians().sin() > profile.cutoff_na {
                // free-space panel: Rx = 0
                return rule.integrate(tb.to_radians().cos(), ta.to_radians().cos(), |u| {
                    azimuthal(u, quad.nodes_phi)
                });
            }
            rule.integrate(tb.to_radians().cos(), ta.to_radians().cos(), |u| {
                let theta = u.clamp(-1.0, 1.0).acos().to_degrees().clamp(ta, tb);
                (1.0 - profile.rx(theta)) * azimuthal(u, quad.nodes_phi)
            })
        })
        .sum();
    3.0 / (4.0 * std::f64::consts::PI) * integral
}

/// `∫ dφ [1 − (1 − u²) cos²φ]` at `u = cos θ`.
fn azimuthal(u: f64, nodes_phi: usize) -> f64 {
    let sin2 = 1.0 - u * u;
    periodic_trapezoid(nodes_phi, |phi| {
        let c = phi.cos();
        1.0 - sin2 * c * c
    })
}

/// Closed form for the perfect reflector: `√(1 − NA²)(1 − NA²/4)`.
pub fn gamma_x_ratio_ideal(na: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&na) {
        return Err(Error::invalid(format!(
            "numerical aperture must lie in [0, 1], got {na}"
        )));
    }
    Ok((1.0 - na * na).sqrt() * (1.0 - na * na / 4.0))
}

/// `ρ12(∞) = ½ (γx − γy)/(γx + γy)` for equal dipoles.
pub fn coherence_from_rates(gamma_x: f64, gamma_y: f64) -> Result<f64> {
    if !(gamma_x >= 0.0 && gamma_y >= 0.0) || !(gamma_x.is_finite() && gamma_y.is_finite()) {
        return Err(Error::invalid(format!(
            "rates must be finite and non-negative (γx = {gamma_x}, γy = {gamma_y})"
        )));
    }
    if gamma_x + gamma_y == 0.0 {
        return Err(Error::invalid("coherence undefined when both rates vanish"));
    }
    Ok(0.5 * (gamma_x - gamma_y) / (gamma_x + gamma_y))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub na: f64,
    pub gamma_x_ratio: f64,
    /// Always 1: the y polarisation sees a flat mirror.
    pub gamma_y_ratio: f64,
    /// Signed; negative whenever `γx < γy`.
    pub coherence: f64,
}

/// Estimate for one numerical aperture.
pub fn estimate(profile: &ReflectanceProfile, na: f64, quad: &Quadrature) -> Result<EstimateResult> {
    if !(na > 0.0 && na <= 1.0) {
        return Err(Error::invalid(format!(
            "numerical aperture must lie in (0, 1], got {na}"
        )));
    }
    let gx = gamma_x_ratio(&profile.truncated(na)?, quad);
    Ok(EstimateResult {
        na,
        gamma_x_ratio: gx,
        gamma_y_ratio: 1.0,
        coherence: coherence_from_rates(gx, 1.0)?,
    })
}

/// [`estimate`] over many apertures, in input order.
pub fn na_sweep(profile: &ReflectanceProfile, na_values: &[f64], quad: &Quadrature) -> Result<Vec<EstimateResult>> {
    na_values.par_iter().map(|&na| estimate(profile, na, quad)).collect()
}

/// `0.05, 0.10, …, 1.00`.
pub fn default_na_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 * 0.05).collect()
}

pub const SWEEP_CSV_HEADER: &str = "na,gamma_x_over_gamma0,gamma_x_ideal,coherence_signed,coherence_abs";

pub fn sweep_csv(rows: &[EstimateResult]) -> Result<String> {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ideal = gamma_x_ratio_ideal(r.na)?;
        out.push_str(&csv_row(&[
            r.na,
            r.gamma_x_ratio,
            ideal,
            r.coherence,
            r.coherence.abs(),
        ]));
        out.push('\n');
    }
    Ok(out)
}
