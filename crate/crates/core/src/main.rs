use std::path::PathBuf;
use std::process::ExitCode;

use aqv::anisotropy::{DipolePair, GreenSample};
use aqv::config::ExperimentConfig;
use aqv::dynamics::DecayCoefficients;
use aqv::experiments::{self, Report};
use aqv::farfield::{Quadrature, Taper};
use aqv::metasurface::DesignKind;
use aqv::{Complex64, Error, Result};
use clap::{Args, Parser, Subcommand};

/// Anisotropic-vacuum coherence and metasurface design tools.
#[derive(Debug, Parser)]
#[command(name = "aqv", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config and $AQV_OUT_DIR).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    lambda0_nm: Option<f64>,
    #[arg(long, global = true)]
    d_over_lambda0: Option<f64>,
    #[arg(long, global = true)]
    design: Option<DesignKind>,
    /// Metasurface numerical aperture.
    #[arg(long, global = true)]
    na: Option<f64>,
    #[arg(long, global = true)]
    nodes_theta: Option<usize>,
    #[arg(long, global = true)]
    nodes_phi: Option<usize>,
    /// Reflectance beyond the last tabulated angle: linear | hold.
    #[arg(long, global = true)]
    taper: Option<Taper>,
    /// Reflectance CSV or `builtin:table2`.
    #[arg(long, global = true)]
    reflectance: Option<String>,
    /// Antenna palette CSV.
    #[arg(long, global = true)]
    palette: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stationary atomic state for a Green-tensor sample.
    SteadyState(SteadyArgs),
    /// RK4 trajectory from the excited state, with the closed form alongside.
    Evolve(EvolveArgs),
    /// Antenna layout and supercell table.
    Design(DesignArgs),
    /// Decay-rate and coherence sweep over numerical aperture.
    Fig8,
    /// Reflection angle off a phase ramp falling by 2π per period.
    Snell(SnellArgs),
    /// Supercell table only.
    Table2,
}

#[derive(Debug, Args)]
struct SteadyArgs {
    /// JSON Green sample (`{"basis": "cartesian", ...}`).
    #[arg(long, conflicts_with_all = ["gxx", "gpp"])]
    green: Option<PathBuf>,
    #[arg(long, requires = "gyy", conflicts_with = "gpp")]
    gxx: Option<f64>,
    #[arg(long)]
    gyy: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    gxy: f64,
    #[arg(long, requires = "gpm")]
    gpp: Option<f64>,
    #[arg(long)]
    gpm: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    d1: f64,
    #[arg(long, default_value_t = 1.0)]
    d2: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma0: f64,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long, default_value_t = 0.5)]
    gamma1: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kappa_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kappa_im: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    omega0: f64,
    #[arg(long, default_value_t = 20.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
}

#[derive(Debug, Args)]
struct DesignArgs {
    /// Also write an SVG preview.
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    aperture_nm: Option<f64>,
}

#[derive(Debug, Args)]
struct SnellArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta_i_deg: f64,
    /// Period of the 2π phase ramp.
    #[arg(long, default_value_t = 1500.0)]
    period_nm: f64,
}

fn resolve_config(g: &GlobalArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &g.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = g.lambda0_nm {
        cfg.lambda0_nm = v;
    }
    if let Some(v) = g.d_over_lambda0 {
        cfg.d_over_lambda0 = v;
    }
    if let Some(v) = g.design {
        cfg.design = v;
    }
    if g.na.is_some() {
        cfg.na = g.na;
    }
    if let Some(v) = g.taper {
        cfg.taper = v;
    }
    if let Some(v) = &g.reflectance {
        cfg.reflectance = v.clone();
    }
    if let Some(v) = &g.palette {
        cfg.palette = Some(v.clone());
    }
    cfg.quadrature = Quadrature {
        nodes_theta: g.nodes_theta.unwrap_or(cfg.quadrature.nodes_theta),
        nodes_phi: g.nodes_phi.unwrap_or(cfg.quadrature.nodes_phi),
    };
    if let Some(v) = &g.out {
        cfg.out_dir = Some(v.clone());
    }
    Ok(cfg)
}

fn green_sample(a: &SteadyArgs) -> Result<GreenSample> {
    match (&a.green, a.gxx, a.gyy, a.gpp, a.gpm) {
        (Some(path), ..) => GreenSample::load_json(path),
        (None, Some(xx), Some(yy), ..) => Ok(GreenSample::cartesian(xx, yy, a.gxy)),
        (None, None, None, Some(pp), Some(pm)) => Ok(GreenSample::circular(pp, pm)),
        _ => Ok(GreenSample::free_space()),
    }
}

fn run(cli: Cli) -> Result<Report> {
    let mut cfg = resolve_config(&cli.global)?;
    if let Command::Design(d) = &cli.command {
        cfg.svg |= d.svg;
        if d.aperture_nm.is_some() {
            cfg.aperture_radius_nm = d.aperture_nm;
        }
    }
    cfg.validate()?;
    let out = cfg.output_dir();
    match &cli.command {
        Command::SteadyState(a) => {
            let dipoles = DipolePair::new(a.d1, a.d2)?;
            experiments::steady_state_report(&green_sample(a)?, &dipoles, a.gamma0, &out)
        }
        Command::Evolve(a) => {
            let coeffs = DecayCoefficients::new(a.gamma1, a.gamma2, Complex64::new(a.kappa_re, a.kappa_im))?
                .with_omega0(a.omega0);
            experiments::evolve_report(&coeffs, a.t_end, a.dt, &out)
        }
        Command::Design(_) => experiments::design_report(&cfg, &out),
        Command::Fig8 => experiments::fig8_report(&cfg, &out),
        Command::Snell(a) => experiments::snell_report(&cfg, a.theta_i_deg, a.period_nm, &out),
        Command::Table2 => experiments::table2_report(&cfg, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.summary);
            for f in &report.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
