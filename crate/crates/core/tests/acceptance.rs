//! Acceptance gate. Runs every criterion, prints one line each and exits
//! non-zero if any fails.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use aqv::anisotropy::{coherence, coherence_circular, decay_coefficients, to_circular, DipolePair, GreenSample};
use aqv::dynamics::{dressed_state, evolve_analytic, evolve_numeric, steady_state, DecayCoefficients, Tolerance};
use aqv::farfield::{
    coherence_from_rates, estimate, gamma_x_ratio, gamma_x_ratio_ideal, table2_profile, Quadrature, ReflectanceProfile,
    Taper,
};
use aqv::metasurface::{
    build_geometric_layout, build_resonant_layout, phase_profile, snell_reflection_angle, supercell_boundaries,
    DesignKind, DesignSpec, Palette,
};
use aqv::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn supercell_table() -> Check {
    let start = Instant::now();
    let spec = DesignSpec::reference(DesignKind::Resonant);
    let cells = supercell_boundaries(&spec);
    let lengths = [3.17, 1.41, 1.06, 0.94, 0.82];
    let counts = [9, 4, 3, 2, 2];
    let angles = [0.0, 17.6, 24.6, 29.4, 33.3];
    ensure(cells.len() >= 5, || format!("only {} supercells", cells.len()))?;
    for (k, c) in cells.iter().take(5).enumerate() {
        let len = c.length_exact_nm / spec.lambda0_nm;
        ensure((len - lengths[k]).abs() <= 0.1, || {
            format!("n={} length {len:.3} λ0", k + 1)
        })?;
        ensure(c.n_unit_cells == counts[k], || {
            format!("n={} has {} cells", k + 1, c.n_unit_cells)
        })?;
        ensure((c.theta_inner_deg - angles[k]).abs() <= 0.5, || {
            format!("n={} angle {:.2}°", k + 1, c.theta_inner_deg)
        })?;
    }
    let took = within_time(start, Duration::from_secs(1))?;
    Ok(format!("N = {counts:?}, {took:.2?}"))
}

fn headline_estimate() -> Check {
    let start = Instant::now();
    let e = estimate(&table2_profile(Taper::Linear), 0.7, &Quadrature::default()).map_err(|e| e.to_string())?;
    ensure((e.gamma_x_ratio - 0.80).abs() <= 0.05, || {
        format!("γx/γ0 = {}", e.gamma_x_ratio)
    })?;
    ensure((e.coherence.abs() - 0.05).abs() <= 0.01, || {
        format!("|ρ12| = {}", e.coherence.abs())
    })?;
    let took = within_time(start, Duration::from_secs(5))?;
    Ok(format!(
        "γx/γ0 = {:.4}, |ρ12| = {:.4}, {took:.2?}",
        e.gamma_x_ratio,
        e.coherence.abs()
    ))
}

fn ideal_mirror() -> Check {
    let quad = Quadrature::default();
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let na = k as f64 / 10.0;
        let p = ReflectanceProfile::ideal_mirror(na).map_err(|e| e.to_string())?;
        let g = gamma_x_ratio(&p, &quad);
        let exact = gamma_x_ratio_ideal(na).unwrap();
        worst = worst.max((g - exact).abs());
    }
    ensure(worst <= 1e-6, || format!("max deviation {worst:e}"))?;
    let g1 = gamma_x_ratio(&ReflectanceProfile::ideal_mirror(1.0).unwrap(), &quad);
    let rho = coherence_from_rates(g1, 1.0).map_err(|e| e.to_string())?;
    ensure(rho.abs() == 0.5, || format!("|ρ12| at NA = 1 is {}", rho.abs()))?;
    Ok(format!("max deviation {worst:.1e}, |ρ12|(NA=1) = 0.5"))
}

fn random_coefficients(rng: &mut ChaCha8Rng) -> DecayCoefficients {
    let g1: f64 = rng.gen_range(0.05..2.0);
    let g2: f64 = rng.gen_range(0.05..2.0);
    let mag = (g1 * g2).sqrt() * rng.gen_range(0.0..=1.0);
    let k = Complex64::from_polar(mag, rng.gen_range(0.0..TAU));
    DecayCoefficients::new(g1, g2, k)
        .expect("bounded by construction")
        .with_omega0(rng.gen_range(-1.0..1.0))
}

fn master_equation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst_traj = 0.0f64;
    for _ in 0..40 {
        let c = random_coefficients(&mut rng);
        let g = c.total();
        let traj = evolve_numeric(&c, 12.0 / g, 1e-3 / g).map_err(|e| e.to_string())?;
        for s in &traj.snapshots {
            s.rho
                .check(Tolerance::STRICT)
                .map_err(|e| format!("t = {}: {e}", s.t))?;
            let exact = evolve_analytic(&c, s.t).unwrap();
            worst_traj = worst_traj.max(s.rho.max_abs_diff(&exact));
        }
    }
    ensure(worst_traj <= 1e-8, || format!("trajectory gap {worst_traj:e}"))?;

    let mut worst_ss = 0.0f64;
    for _ in 0..1000 {
        let c = random_coefficients(&mut rng);
        let g = c.total();
        let rho = steady_state(&c);
        rho.check(Tolerance::STRICT).map_err(|e| e.to_string())?;
        // stationary: every right-hand side vanishes
        let rhs = [
            -g * rho.rho00(),
            c.gamma1() * rho.rho00(),
            c.gamma2() * rho.rho00(),
            (c.kappa12() * rho.rho00()).norm(),
            (Complex64::new(-g / 2.0, c.omega0()) * rho.rho10()).norm(),
            (Complex64::new(-g / 2.0, c.omega0()) * rho.rho20()).norm(),
        ];
        let residual = rhs.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let subst = (rho.rho11() - c.gamma1() / g)
            .abs()
            .max((rho.rho22() - c.gamma2() / g).abs())
            .max((rho.rho12() - c.kappa12() / g).norm());
        let late = evolve_analytic(&c, 60.0 / g).unwrap().max_abs_diff(&rho);
        worst_ss = worst_ss.max(residual).max(subst).max(late);
    }
    ensure(worst_ss <= 1e-12, || format!("steady-state mismatch {worst_ss:e}"))?;
    Ok(format!("trajectory gap {worst_traj:.1e}, steady state {worst_ss:.1e}"))
}

fn random_green(rng: &mut ChaCha8Rng) -> (GreenSample, DipolePair) {
    let g = GreenSample::cartesian(rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0), 0.0);
    let d = DipolePair::new(rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0)).unwrap();
    (g, d)
}

fn anisotropy_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (g, d) = random_green(&mut rng);
        let cart = coherence(&g, &d).map_err(|e| e.to_string())?;
        let circ = coherence_circular(&to_circular(&g).unwrap(), &d).map_err(|e| e.to_string())?;
        worst = worst.max((cart - Complex64::new(circ, 0.0)).norm());
    }
    ensure(worst <= 1e-14, || format!("basis disagreement {worst:e}"))?;
    for _ in 0..100 {
        let v = rng.gen_range(0.01..3.0);
        let (_, d) = random_green(&mut rng);
        let rho = coherence(&GreenSample::cartesian(v, v, 0.0), &d).unwrap();
        ensure(rho.norm() == 0.0, || format!("isotropic sample gave {rho}"))?;
    }
    let rho = coherence(&GreenSample::cartesian(0.0, 1.3, 0.0), &DipolePair::equal()).unwrap();
    ensure(rho == Complex64::new(-0.5, 0.0), || format!("Gxx = 0 gave {rho}"))?;
    Ok(format!("basis disagreement {worst:.1e}"))
}

fn dressed_state_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst = 0.0f64;
    let compare = |g: &GreenSample, d: &DipolePair| -> Result<(f64, f64), String> {
        let psi = dressed_state(g, d).map_err(|e| e.to_string())?;
        let reduced = psi.atomic_state();
        let ss = steady_state(&decay_coefficients(g, d, 1.0).map_err(|e| e.to_string())?);
        Ok((reduced.max_abs_diff(&ss), reduced.purity()))
    };
    for _ in 0..1000 {
        let (g, d) = random_green(&mut rng);
        worst = worst.max(compare(&g, &d)?.0);
    }
    let (gap, pure) = compare(&GreenSample::cartesian(0.0, 1.0, 0.0), &DipolePair::equal())?;
    worst = worst.max(gap);
    let (gap, mixed) = compare(&GreenSample::free_space(), &DipolePair::equal())?;
    worst = worst.max(gap);
    ensure(worst <= 1e-12, || format!("partial trace gap {worst:e}"))?;
    ensure((pure - 1.0).abs() <= 1e-12, || format!("purity at Gxx = 0 is {pure}"))?;
    ensure((mixed - 0.5).abs() <= 1e-12, || {
        format!("purity at isotropy is {mixed}")
    })?;
    Ok(format!("partial trace gap {worst:.1e}"))
}

fn snell_check() -> Check {
    let out = snell_reflection_angle(0.0, 852.0, -TAU / 1500.0).map_err(|e| e.to_string())?;
    let theta = out.angle_deg().ok_or("evanescent")?;
    ensure((theta + 34.6).abs() <= 0.1, || format!("θr = {theta}°"))?;
    Ok(format!("θr = {theta:.3}°"))
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn design_fidelity() -> Check {
    let spec = DesignSpec::reference(DesignKind::Geometric);
    let geo = build_geometric_layout(&spec).map_err(|e| e.to_string())?;
    let geo_err = geo
        .elements
        .iter()
        .map(|e| circular_distance(e.encoded_phase, phase_profile(&spec, e.center_nm[0], e.center_nm[1])))
        .fold(0.0f64, f64::max);
    ensure(geo_err <= 1e-12, || format!("geometric phase error {geo_err:e}"))?;

    let rspec = DesignSpec::reference(DesignKind::Resonant);
    let res = build_resonant_layout(&rspec, &Palette::five_rod()).map_err(|e| e.to_string())?;
    let res_err = res
        .elements
        .iter()
        .map(|e| circular_distance(e.encoded_phase, phase_profile(&rspec, e.center_nm[0], 0.0)))
        .fold(0.0f64, f64::max);
    ensure(res_err <= PI / 5.0 + 1e-12, || {
        format!("resonant quantization error {res_err}")
    })?;

    let first = &geo.supercells[0];
    let pitch = spec.unit_cell_nm[0];
    ensure(first.n_unit_cells == 9, || {
        format!("first supercell has {} rods", first.n_unit_cells)
    })?;
    ensure(first.length_snapped_nm(pitch) == 2700.0, || {
        format!("first supercell {} nm", first.length_snapped_nm(pitch))
    })?;
    let rods_on_axis = geo
        .elements
        .iter()
        .filter(|e| e.center_nm[1] == pitch / 2.0 && e.center_nm[0] > 0.0 && e.center_nm[0] < first.r_end_nm)
        .count();
    ensure(rods_on_axis == 9, || {
        format!("{rods_on_axis} rods along the first supercell")
    })?;
    Ok(format!(
        "{} geometric elements (error {geo_err:.1e}), resonant error {res_err:.3} rad",
        geo.elements.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("supercell table", supercell_table),
        ("decay rate and coherence at NA 0.7", headline_estimate),
        ("ideal mirror closed form", ideal_mirror),
        ("master equation", master_equation),
        ("anisotropy identities", anisotropy_identities),
        ("dressed state", dressed_state_consistency),
        ("generalized reflection law", snell_check),
        ("design fidelity", design_fidelity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("AC{} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
