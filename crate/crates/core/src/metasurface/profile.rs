use std::f64::consts::{PI, TAU};

use super::DesignSpec;
use crate::{Error, Result};

/// Unwrapped target phase `π − 2 k0 |r − r0|` at the surface point `(x, y)`.
pub fn unwrapped_phase(spec: &DesignSpec, x_nm: f64, y_nm: f64) -> f64 {
    let dist = (x_nm * x_nm + y_nm * y_nm + spec.d_nm * spec.d_nm).sqrt();
    PI - 2.0 * spec.k0() * dist
}

/// Spherical-mirror phase profile wrapped into `[0, 2π)`.
pub fn phase_profile(spec: &DesignSpec, x_nm: f64, y_nm: f64) -> f64 {
    wrap(unwrapped_phase(spec, x_nm, y_nm))
}

/// Radial derivative of the target phase, `−2 k0 r / √(r² + d²)`, in rad/nm.
pub fn phase_gradient(spec: &DesignSpec, r_nm: f64) -> f64 {
    -2.0 * spec.k0() * r_nm / (r_nm * r_nm + spec.d_nm * spec.d_nm).sqrt()
}

pub(crate) fn wrap(phase: f64) -> f64 {
    let w = phase.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Distance between two phases on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Pancharatnam–Berry phase `2φ` of a half-wave rod rotated by `φ`.
pub fn geometric_phase(rotation: f64) -> f64 {
    wrap(2.0 * rotation)
}

/// Rod rotation in `[0, π)` that imprints `phase`.
pub fn rotation_for_phase(phase: f64) -> f64 {
    0.5 * wrap(phase)
}

/// Result of the generalised reflection law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SnellOutcome {
    /// Propagating order at this reflection angle (degrees).
    Reflected(f64),
    /// No propagating order; carries the would-be `sin θr`.
    Evanescent { sin_theta_r: f64 },
}

impl SnellOutcome {
    pub fn angle_deg(&self) -> Option<f64> {
        match self {
            SnellOutcome::Reflected(a) => Some(*a),
            SnellOutcome::Evanescent { .. } => None,
        }
    }
}

/// `sin θr = sin θi + (λ0 / 2π) ∂φ/∂y`.
pub fn snell_reflection_angle(theta_i_deg: f64, lambda0_nm: f64, phase_gradient: f64) -> Result<SnellOutcome> {
    if !(theta_i_deg.abs() <= 90.0) {
        return Err(Error::invalid(format!(
            "incidence angle must lie in [-90°, 90°], got {theta_i_deg}"
        )));
    }
    if !(lambda0_nm > 0.0) || !phase_gradient.is_finite() {
        return Err(Error::invalid("wavelength must be positive and gradient finite"));
    }
    let s = theta_i_deg.to_radians().sin() + lambda0_nm / TAU * phase_gradient;
    if s.abs() > 1.0 {
        Ok(SnellOutcome::Evanescent { sin_theta_r: s })
    } else {
        Ok(SnellOutcome::Reflected(s.asin().to_degrees()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metasurface::DesignKind;
    use approx::assert_abs_diff_eq;

    fn spec() -> DesignSpec {
        DesignSpec::reference(DesignKind::Resonant)
    }

    #[test]
    fn profile_at_center_is_pi() {
        assert_abs_diff_eq!(phase_profile(&spec(), 0.0, 0.0), PI, epsilon = 1e-12);
    }

    #[test]
    fn quarter_wave_path_wraps_to_zero() {
        let s = spec();
        let dist = s.d_nm + s.lambda0_nm / 4.0;
        let r = (dist * dist - s.d_nm * s.d_nm).sqrt();
        assert!(circular_distance(phase_profile(&s, r, 0.0), 0.0) < 1e-10);
    }

    #[test]
    fn unwrapped_is_decreasing() {
        let s = spec();
        let mut prev = unwrapped_phase(&s, 0.0, 0.0);
        for k in 1..2000 {
            let p = unwrapped_phase(&s, k as f64 * 10.0, 0.0);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let s = spec();
        for r in [100.0, 3000.0, 20000.0] {
            let h = 1e-3;
            let fd = (unwrapped_phase(&s, r + h, 0.0) - unwrapped_phase(&s, r - h, 0.0)) / (2.0 * h);
            assert_abs_diff_eq!(phase_gradient(&s, r), fd, epsilon = 1e-7);
        }
    }

    #[test]
    fn geometric_phase_examples() {
        assert_eq!(geometric_phase(0.0), 0.0);
        assert_abs_diff_eq!(geometric_phase(PI / 4.0), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(geometric_phase(PI / 2.0), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(rotation_for_phase(PI), PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn snell_examples() {
        let g = -TAU / 1500.0;
        let r = snell_reflection_angle(0.0, 852.0, g).unwrap().angle_deg().unwrap();
        assert_abs_diff_eq!(r, (-0.568f64).asin().to_degrees(), epsilon = 1e-2);
        assert_abs_diff_eq!(r, -34.61, epsilon = 0.01);
        assert_abs_diff_eq!(
            snell_reflection_angle(23.0, 852.0, 0.0).unwrap().angle_deg().unwrap(),
            23.0,
            epsilon = 1e-12
        );
        let r = snell_reflection_angle(60.0, 852.0, g).unwrap().angle_deg().unwrap();
        assert_abs_diff_eq!(
            r,
            (60f64.to_radians().sin() - 0.568).asin().to_degrees(),
            epsilon = 1e-2
        );
        assert_abs_diff_eq!(r, 17.3, epsilon = 0.05);
        let r = snell_reflection_angle(30.0, 852.0, g).unwrap().angle_deg().unwrap();
        assert_abs_diff_eq!(r, -3.9, epsilon = 0.05);
        assert!(matches!(
            snell_reflection_angle(-60.0, 852.0, g).unwrap(),
            SnellOutcome::Evanescent { .. }
        ));
        assert!(snell_reflection_angle(91.0, 852.0, g).is_err());
    }

    #[test]
    fn profile_retroreflects_toward_emitter() {
        let s = spec();
        for k in 0..=90 {
            let theta = 0.5 * k as f64;
            let r = s.d_nm * theta.to_radians().tan();
            let out = snell_reflection_angle(theta, s.lambda0_nm, phase_gradient(&s, r)).unwrap();
            assert_abs_diff_eq!(out.angle_deg().unwrap(), -theta, epsilon = 1e-9);
        }
    }

    #[test]
    fn circular_distance_wraps() {
        assert_abs_diff_eq!(circular_distance(0.1, TAU - 0.1), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(circular_distance(PI, 0.0), PI, epsilon = 1e-15);
    }
}
