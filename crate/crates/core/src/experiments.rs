//! Report writers behind the command-line subcommands. Each writes its files
//! into the output directory and returns a short text summary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::anisotropy::{coefficient_a, coefficient_r, decay_coefficients, DipolePair, GreenSample};
use crate::config::ExperimentConfig;
use crate::dynamics::{analytic_on_grid, evolve_numeric, steady_state, DecayCoefficients};
use crate::farfield::{default_na_grid, estimate, gamma_x_ratio_ideal, na_sweep, sweep_csv};
use crate::format::{csv_row, sig12};
use crate::metasurface::{
    build_layout, layout_csv, layout_json, layout_svg, snell_reflection_angle, supercell_boundaries,
    supercell_table_csv, SnellOutcome,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

impl Report {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.summary, "{key} = {value}");
    }
}

fn write_file(dir: &Path, name: &str, contents: &str, report: &mut Report) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    report.files.push(path);
    Ok(())
}

/// Stationary atomic state for one Green sample and dipole pair.
pub fn steady_state_report(green: &GreenSample, dipoles: &DipolePair, gamma0: f64, out_dir: &Path) -> Result<Report> {
    let coeffs = decay_coefficients(green, dipoles, gamma0)?;
    let rho = steady_state(&coeffs);
    let mut r = Report::default();
    r.line("gamma1", sig12(coeffs.gamma1()));
    r.line("gamma2", sig12(coeffs.gamma2()));
    r.line("re_kappa12", sig12(coeffs.kappa12().re));
    r.line("im_kappa12", sig12(coeffs.kappa12().im));
    r.line("R", sig12(coefficient_r(dipoles)));
    if let Ok(a) = coefficient_a(green) {
        r.line("A", sig12(a));
    }
    r.line("rho11", sig12(rho.rho11()));
    r.line("rho22", sig12(rho.rho22()));
    r.line("re_rho12", sig12(rho.rho12().re));
    r.line("im_rho12", sig12(rho.rho12().im));
    r.line("abs_rho12", sig12(rho.rho12().norm()));
    r.line("purity", sig12(rho.purity()));
    let text = r.summary.clone();
    write_file(out_dir, "steady_state.txt", &text, &mut r)?;
    Ok(r)
}

pub const EVOLVE_CSV_HEADER: &str = "t,rho00,rho11,rho22,re_rho12,im_rho12,\
rho00_exact,rho11_exact,rho22_exact,re_rho12_exact,im_rho12_exact,max_abs_diff";

/// RK4 trajectory next to the closed form on the same grid.
pub fn evolve_report(coeffs: &DecayCoefficients, t_end: f64, dt: f64, out_dir: &Path) -> Result<Report> {
    let numeric = evolve_numeric(coeffs, t_end, dt)?;
    let exact = analytic_on_grid(coeffs, numeric.snapshots.iter().map(|s| s.t))?;
    let mut csv = String::from(EVOLVE_CSV_HEADER);
    csv.push('\n');
    let mut max_gap = 0.0f64;
    for (n, a) in numeric.snapshots.iter().zip(&exact.snapshots) {
        let gap = n.rho.max_abs_diff(&a.rho);
        max_gap = max_gap.max(gap);
        let (rn, ra) = (&n.rho, &a.rho);
        csv.push_str(&csv_row(&[
            n.t,
            rn.rho00(),
            rn.rho11(),
            rn.rho22(),
            rn.rho12().re,
            rn.rho12().im,
            ra.rho00(),
            ra.rho11(),
            ra.rho22(),
            ra.rho12().re,
            ra.rho12().im,
            gap,
        ]));
        csv.push('\n');
    }
    let mut r = Report::default();
    let last = numeric.last().expect("trajectory has an initial sample");
    r.line("rows", numeric.len());
    r.line("max_abs_diff", sig12(max_gap));
    r.line(
        "final_distance_to_steady_state",
        sig12(last.rho.max_abs_diff(&steady_state(coeffs))),
    );
    write_file(out_dir, "evolve.csv", &csv, &mut r)?;
    Ok(r)
}

/// Antenna layout, supercell table and optional SVG preview.
pub fn design_report(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let spec = cfg.design_spec()?;
    let layout = build_layout(&spec, &cfg.palette()?)?;
    let profile = cfg.reflectance_profile()?;
    let mut r = Report::default();
    r.line("design", spec.kind);
    r.line("elements", layout.elements.len());
    r.line("supercells", layout.supercells.len());
    r.line("truncated", layout.truncated());
    r.line("max_phase_error_rad", sig12(layout.max_phase_error()));
    write_file(out_dir, "layout.json", &layout_json(&layout)?, &mut r)?;
    write_file(out_dir, "layout.csv", &layout_csv(&layout), &mut r)?;
    if cfg.svg {
        write_file(out_dir, "layout.svg", &layout_svg(&layout), &mut r)?;
    }
    let table = supercell_table_csv(&layout.supercells, spec.lambda0_nm, |t| profile.rx(t));
    write_file(out_dir, "supercells.csv", &table, &mut r)?;
    Ok(r)
}

/// Supercell table alone, printed as well as written.
pub fn table2_report(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let spec = cfg.design_spec()?;
    let profile = cfg.reflectance_profile()?;
    let table = supercell_table_csv(&supercell_boundaries(&spec), spec.lambda0_nm, |t| profile.rx(t));
    let mut r = Report {
        summary: table.clone(),
        ..Default::default()
    };
    write_file(out_dir, "supercells.csv", &table, &mut r)?;
    Ok(r)
}

/// `γx/γ0` and the stationary coherence against numerical aperture.
pub fn fig8_report(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Report> {
    let profile = cfg.reflectance_profile()?;
    let rows = na_sweep(&profile, &default_na_grid(), &cfg.quadrature)?;
    let mut r = Report::default();
    if let Some(na) = cfg.na {
        let e = estimate(&profile, na, &cfg.quadrature)?;
        r.line("na", sig12(na));
        r.line("gamma_x_over_gamma0", sig12(e.gamma_x_ratio));
        r.line("gamma_x_ideal", sig12(gamma_x_ratio_ideal(na)?));
        r.line("coherence", sig12(e.coherence));
    }
    r.line("rows", rows.len());
    write_file(out_dir, "fig8.csv", &sweep_csv(&rows)?, &mut r)?;
    Ok(r)
}

/// Reflection angle off a phase ramp falling by 2π over `period_nm`.
pub fn snell_report(cfg: &ExperimentConfig, theta_i_deg: f64, period_nm: f64, out_dir: &Path) -> Result<Report> {
    if !(period_nm > 0.0) || !period_nm.is_finite() {
        return Err(Error::invalid(format!(
            "gradient period must be positive, got {period_nm}"
        )));
    }
    let gradient = -std::f64::consts::TAU / period_nm;
    let outcome = snell_reflection_angle(theta_i_deg, cfg.lambda0_nm, gradient)?;
    let mut r = Report::default();
    r.line("theta_i_deg", sig12(theta_i_deg));
    r.line("period_nm", sig12(period_nm));
    match outcome {
        SnellOutcome::Reflected(a) => {
            r.line("theta_r_deg", sig12(a));
            r.line("evanescent", false);
        }
        SnellOutcome::Evanescent { sin_theta_r } => {
            r.line("sin_theta_r", sig12(sin_theta_r));
            r.line("evanescent", true);
        }
    }
    let text = r.summary.clone();
    write_file(out_dir, "snell.txt", &text, &mut r)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn evolve_csv_shape_and_convergence() {
        let dir = tempfile::tempdir().unwrap();
        let c = DecayCoefficients::new(0.5, 0.5, Complex64::new(0.3, 0.0)).unwrap();
        let rep = evolve_report(&c, 20.0, 1e-2, dir.path()).unwrap();
        let text = std::fs::read_to_string(&rep.files[0]).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], EVOLVE_CSV_HEADER);
        assert_eq!(lines.len(), 2002);
        assert!(lines[1].starts_with("0,1,0,0,0,0,1,0,0,0,0,0"));
    }

    #[test]
    fn steady_state_free_space() {
        let dir = tempfile::tempdir().unwrap();
        let rep = steady_state_report(&GreenSample::free_space(), &DipolePair::equal(), 1.0, dir.path()).unwrap();
        assert!(rep.summary.contains("abs_rho12 = 0\n"));
        assert!(rep.summary.contains("rho11 = 0.5\n"));
    }

    #[test]
    fn snell_default_period() {
        let dir = tempfile::tempdir().unwrap();
        let rep = snell_report(&ExperimentConfig::default(), 0.0, 1500.0, dir.path()).unwrap();
        let expected = (-852.0f64 / 1500.0).asin().to_degrees();
        assert!(rep.summary.contains(&format!("theta_r_deg = {}", sig12(expected))));
        let rep = snell_report(&ExperimentConfig::default(), -60.0, 1500.0, dir.path()).unwrap();
        assert!(rep.summary.contains("evanescent = true"));
    }

    #[test]
    fn table2_report_rows() {
        let dir = tempfile::tempdir().unwrap();
        let rep = table2_report(&ExperimentConfig::default(), dir.path()).unwrap();
        let ns: Vec<u64> = rep
            .summary
            .lines()
            .skip(1)
            .take(5)
            .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(ns, [9, 4, 3, 2, 2]);
    }
}
