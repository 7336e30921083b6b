//! Master-equation dynamics of the Λ emitter.
//!
//! Basis order is fixed as `|0⟩` (excited), `|1⟩`, `|2⟩` (ground). Rates are in
//! units of the free-space two-level rate `γ0`, times in units of `1/γ0`. The
//! emitter always starts in the excited state; the ground-state coherence
//! `ρ12` is fed by `κ12 ρ00` and has no relaxation of its own.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::anisotropy::{DipolePair, GreenSample};
use crate::integrate::rk4_fixed;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerances used when checking density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub hermiticity: f64,
    pub trace: f64,
    /// Smallest eigenvalue allowed is `-eigenvalue`.
    pub eigenvalue: f64,
}

impl Tolerance {
    pub const STRICT: Tolerance = Tolerance {
        hermiticity: 1e-12,
        trace: 1e-10,
        eigenvalue: 1e-10,
    };

    pub const TRAJECTORY: Tolerance = Tolerance {
        hermiticity: 1e-8,
        trace: 1e-8,
        eigenvalue: 1e-8,
    };
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::STRICT
    }
}

/// Emitter density matrix over `{|0⟩, |1⟩, |2⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix3 {
    entries: [[Complex64; 3]; 3],
}

impl DensityMatrix3 {
    /// Validates Hermiticity, unit trace and positivity with [`Tolerance::STRICT`].
    pub fn new(entries: [[Complex64; 3]; 3]) -> Result<Self> {
        let rho = Self { entries };
        rho.check(Tolerance::STRICT)?;
        Ok(rho)
    }

    /// Wraps the entries without checking any invariant.
    pub fn from_entries_unchecked(entries: [[Complex64; 3]; 3]) -> Self {
        Self { entries }
    }

    /// Standard preparation: all population in `|0⟩`.
    pub fn excited() -> Self {
        let mut entries = [[ZERO; 3]; 3];
        entries[0][0] = ONE;
        Self { entries }
    }

    /// Builds the matrix from the independent elements of the Λ problem.
    /// `rho10`, `rho20` and `rho12` are the lower/upper elements as named;
    /// the Hermitian partners are filled in.
    pub fn from_elements(
        rho00: f64,
        rho11: f64,
        rho22: f64,
        rho12: Complex64,
        rho10: Complex64,
        rho20: Complex64,
    ) -> Self {
        let entries = [
            [Complex64::new(rho00, 0.0), rho10.conj(), rho20.conj()],
            [rho10, Complex64::new(rho11, 0.0), rho12],
            [rho20, rho12.conj(), Complex64::new(rho22, 0.0)],
        ];
        Self { entries }
    }

    pub fn entries(&self) -> &[[Complex64; 3]; 3] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn rho00(&self) -> f64 {
        self.entries[0][0].re
    }

    pub fn rho11(&self) -> f64 {
        self.entries[1][1].re
    }

    pub fn rho22(&self) -> f64 {
        self.entries[2][2].re
    }

    /// Ground-state coherence `⟨1|ρ|2⟩`.
    pub fn rho12(&self) -> Complex64 {
        self.entries[1][2]
    }

    pub fn rho10(&self) -> Complex64 {
        self.entries[1][0]
    }

    pub fn rho20(&self) -> Complex64 {
        self.entries[2][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += (self.entries[i][j] * self.entries[j][i]).re;
            }
        }
        s
    }

    /// Largest `|ρij − conj(ρji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        hermitian_eigenvalues(&self.hermitian_part())
    }

    fn hermitian_part(&self) -> [[Complex64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| (self.entries[i][j] + self.entries[j][i].conj()) * 0.5))
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        if self
            .entries
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::invalid("density matrix has non-finite entries"));
        }
        let h = self.hermiticity_defect();
        if h > tol.hermiticity {
            return Err(Error::Unphysical(format!(
                "density matrix not Hermitian (defect {h:e})"
            )));
        }
        let tr = self.trace();
        if (tr - ONE).norm() > tol.trace {
            return Err(Error::Unphysical(format!("density matrix trace {tr} differs from 1")));
        }
        let min = self.eigenvalues()[0];
        if min < -tol.eigenvalue {
            return Err(Error::Unphysical(format!(
                "density matrix has negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// Entry-wise max-norm distance.
    pub fn max_abs_diff(&self, other: &DensityMatrix3) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }
}

/// Eigenvalues of a 3×3 Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Degenerate spectra (pure states, the excited level) come out to rounding
/// error, which the trigonometric cubic formula cannot guarantee.
fn hermitian_eigenvalues(a: &[[Complex64; 3]; 3]) -> [f64; 3] {
    let mut a = *a;
    let scale = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    for _ in 0..64 {
        let off: f64 = [(0, 1), (0, 2), (1, 2)].iter().map(|&(p, q)| a[p][q].norm_sqr()).sum();
        if off <= scale * 1e-34 || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            let mag = apq.norm();
            if mag == 0.0 {
                continue;
            }
            // phase to make the pivot real, then a real rotation to zero it
            let phase = apq / mag;
            let tau = (a[q][q].re - a[p][p].re) / (2.0 * mag);
            let t = if tau == 0.0 {
                1.0
            } else {
                tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            let mut v = [[ZERO; 3]; 3];
            for (i, row) in v.iter_mut().enumerate() {
                row[i] = ONE;
            }
            let dq = phase.conj();
            v[p][p] = Complex64::new(c, 0.0);
            v[p][q] = Complex64::new(s, 0.0);
            v[q][p] = dq * -s;
            v[q][q] = dq * c;
            a = conj_sandwich(&v, &a);
        }
    }
    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re];
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// `V† A V`.
fn conj_sandwich(v: &[[Complex64; 3]; 3], a: &[[Complex64; 3]; 3]) -> [[Complex64; 3]; 3] {
    let av: [[Complex64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * v[k][j]).sum()));
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| v[k][i].conj() * av[k][j]).sum()))
}

/// Coefficients of the Λ master equation.
///
/// `|κ12| ≤ √(γ1 γ2)` is enforced on construction: it follows from the
/// positivity of `Im G` and any violation points at bad input data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCoefficients {
    gamma1: f64,
    gamma2: f64,
    kappa12: Complex64,
    omega0: f64,
}

impl DecayCoefficients {
    pub fn new(gamma1: f64, gamma2: f64, kappa12: Complex64) -> Result<Self> {
        if !(gamma1.is_finite() && gamma2.is_finite() && kappa12.re.is_finite() && kappa12.im.is_finite()) {
            return Err(Error::invalid("decay coefficients must be finite"));
        }
        if gamma1 < 0.0 || gamma2 < 0.0 {
            return Err(Error::Unphysical(format!(
                "decay rates must be non-negative (γ1 = {gamma1}, γ2 = {gamma2})"
            )));
        }
        if gamma1 + gamma2 <= 0.0 {
            return Err(Error::Unphysical("γ1 + γ2 must be positive".into()));
        }
        let bound = (gamma1 * gamma2).sqrt();
        if kappa12.norm() > bound * (1.0 + 1e-12) + 1e-15 {
            return Err(Error::Unphysical(format!(
                "|κ12| = {} exceeds √(γ1γ2) = {bound}",
                kappa12.norm()
            )));
        }
        Ok(Self {
            gamma1,
            gamma2,
            kappa12,
            omega0: 0.0,
        })
    }

    /// Sets the transition frequency (rotating frame when zero).
    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    pub fn kappa12(&self) -> Complex64 {
        self.kappa12
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Total decay rate of the excited state.
    pub fn total(&self) -> f64 {
        self.gamma1 + self.gamma2
    }
}

/// Long-time state reached from the excited state.
pub fn steady_state(coeffs: &DecayCoefficients) -> DensityMatrix3 {
    let g = coeffs.total();
    DensityMatrix3::from_elements(
        0.0,
        coeffs.gamma1 / g,
        coeffs.gamma2 / g,
        coeffs.kappa12 / g,
        ZERO,
        ZERO,
    )
}

/// Closed-form solution at time `t` for the excited-state preparation.
pub fn evolve_analytic(coeffs: &DecayCoefficients, t: f64) -> Result<DensityMatrix3> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("time must be finite and non-negative, got {t}")));
    }
    let g = coeffs.total();
    let excited = (-g * t).exp();
    // 1 - e^{-gt} without cancellation for small t
    let fed = -(-g * t).exp_m1();
    Ok(DensityMatrix3::from_elements(
        excited,
        coeffs.gamma1 / g * fed,
        coeffs.gamma2 / g * fed,
        coeffs.kappa12 / g * fed,
        ZERO,
        ZERO,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub rho: DensityMatrix3,
}

/// Time-ordered sequence of states.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
}

pub const TRAJECTORY_CSV_HEADER: &str = "t,rho00,rho11,rho22,re_rho12,im_rho12";

impl Trajectory {
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn last(&self) -> Option<&Snapshot> {
        self.snapshots.last()
    }

    /// CSV with full round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.snapshots.len() + 1));
        out.push_str(TRAJECTORY_CSV_HEADER);
        out.push('\n');
        for s in &self.snapshots {
            let r = &s.rho;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.t,
                r.rho00(),
                r.rho11(),
                r.rho22(),
                r.rho12().re,
                r.rho12().im
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(self.to_csv().as_bytes()).map_err(|e| Error::io(path, e))
    }
}

/// Trace drift beyond which a step is considered to have failed.
const TRACE_DRIFT_LIMIT: f64 = 1e-6;

/// Integrates the populations/coherence equations with fixed-step RK4 from
/// the excited state to `t_end`.
///
/// State vector: `[ρ00, ρ11, ρ22, ρ12, ρ10, ρ20]`.
pub fn evolve_numeric(coeffs: &DecayCoefficients, t_end: f64, dt: f64) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::invalid(format!("time step must be positive, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::invalid(format!(
            "end time must be finite and non-negative, got {t_end}"
        )));
    }
    let g = coeffs.total();
    let k12 = coeffs.kappa12;
    let g1 = coeffs.gamma1;
    let g2 = coeffs.gamma2;
    let coherence_rate = Complex64::new(-g / 2.0, coeffs.omega0);
    let rhs = move |_t: f64, y: &[Complex64; 6]| -> [Complex64; 6] {
        let p0 = y[0];
        [
            -p0 * g,
            p0 * g1,
            p0 * g2,
            p0 * k12,
            coherence_rate * y[4],
            coherence_rate * y[5],
        ]
    };
    let mut y0 = [ZERO; 6];
    y0[0] = ONE;

    let mut snapshots = Vec::with_capacity((t_end / dt).ceil() as usize + 1);
    rk4_fixed(rhs, 0.0, y0, t_end, dt, |t, y| {
        let rho = DensityMatrix3::from_elements(y[0].re, y[1].re, y[2].re, y[3], y[4], y[5]);
        let drift = (rho.trace() - ONE).norm();
        let populations_ok = [y[0].re, y[1].re, y[2].re]
            .iter()
            .all(|p| *p >= -TRACE_DRIFT_LIMIT && *p <= 1.0 + TRACE_DRIFT_LIMIT);
        if !drift.is_finite() || drift > TRACE_DRIFT_LIMIT || !populations_ok {
            return Err(Error::NumericalFailure(format!(
                "integration left the physical state space at t = {t} (trace drift {drift:e}); reduce the step size below {dt}"
            )));
        }
        snapshots.push(Snapshot { t, rho });
        Ok(())
    })?;
    Ok(Trajectory { snapshots })
}

/// Closed-form trajectory on the same time grid as [`evolve_numeric`].
pub fn analytic_on_grid(coeffs: &DecayCoefficients, times: impl IntoIterator<Item = f64>) -> Result<Trajectory> {
    let snapshots = times
        .into_iter()
        .map(|t| evolve_analytic(coeffs, t).map(|rho| Snapshot { t, rho }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { snapshots })
}

/// Joint atom–photon state left behind once the photon has been emitted,
/// amplitudes over `{|1X⟩, |1Y⟩, |2X⟩, |2Y⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedState {
    amplitudes: [Complex64; 4],
}

impl DressedState {
    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Reduced atomic state over `{|1⟩, |2⟩}` after tracing out the photon.
    pub fn partial_trace_photon(&self) -> [[Complex64; 2]; 2] {
        let a = &self.amplitudes;
        std::array::from_fn(|i| std::array::from_fn(|j| (0..2).map(|p| a[2 * i + p] * a[2 * j + p].conj()).sum()))
    }

    /// Reduced atomic state embedded in the three-level space (`ρ00 = 0`).
    pub fn atomic_state(&self) -> DensityMatrix3 {
        let r = self.partial_trace_photon();
        DensityMatrix3::from_elements(0.0, r[0][0].re, r[1][1].re, r[0][1], ZERO, ZERO)
    }

    /// Purity of the reduced atomic state.
    pub fn atomic_purity(&self) -> f64 {
        let r = self.partial_trace_photon();
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (r[i][j] * r[j][i]).re)
            .sum()
    }

    /// Wootters concurrence of the atom–photon pure state: 0 for a product
    /// state, 1 for a maximally entangled one.
    pub fn concurrence(&self) -> f64 {
        let a = &self.amplitudes;
        2.0 * (a[0] * a[3] - a[1] * a[2]).norm()
    }
}

/// Dressed state for a mirror-symmetric environment (`Im Gxy = 0`).
///
/// `|ψ⟩ ∝ d01|1⟩(√gxx|X⟩ + i√gyy|Y⟩) + d02|2⟩(√gxx|X⟩ − i√gyy|Y⟩)`
pub fn dressed_state(green: &GreenSample, dipoles: &DipolePair) -> Result<DressedState> {
    let (gxx, gyy, gxy) = green.cartesian_components()?;
    if gxy != 0.0 {
        return Err(Error::invalid("dressed state requires Im Gxy = 0"));
    }
    if gxx + gyy <= 0.0 {
        return Err(Error::invalid("dressed state requires a non-zero Green sample"));
    }
    let norm = 1.0 / ((dipoles.d01() * dipoles.d01() + dipoles.d02() * dipoles.d02()) * (gxx + gyy)).sqrt();
    let x = Complex64::new(gxx.sqrt(), 0.0);
    let y = Complex64::new(0.0, gyy.sqrt());
    let d1 = dipoles.d01() * norm;
    let d2 = dipoles.d02() * norm;
    Ok(DressedState {
        amplitudes: [x * d1, y * d1, x * d2, -y * d2],
    })
}

/// Largest emitter–mirror distance over which the decay is modified without
/// retardation, `c / (2 γ0)`.
pub fn photonic_coherence_length(gamma0: f64, c: f64) -> Result<f64> {
    if !(gamma0 > 0.0) || !gamma0.is_finite() {
        return Err(Error::invalid(format!("decay rate must be positive, got {gamma0}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!("speed must be positive, got {c}")));
    }
    Ok(c / (2.0 * gamma0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn steady_state_examples() {
        let s = steady_state(&DecayCoefficients::new(0.5, 0.5, c(0.5, 0.0)).unwrap());
        assert_eq!(s.rho11(), 0.5);
        assert_eq!(s.rho22(), 0.5);
        assert_eq!(s.rho12(), c(0.5, 0.0));
        assert_abs_diff_eq!(s.purity(), 1.0, epsilon = 1e-15);
        s.check(Tolerance::STRICT).unwrap();

        let s = steady_state(&DecayCoefficients::new(0.5, 0.5, c(0.0, 0.0)).unwrap());
        assert_eq!(s.rho12(), c(0.0, 0.0));
        assert_abs_diff_eq!(s.purity(), 0.5, epsilon = 1e-15);

        let s = steady_state(&DecayCoefficients::new(0.75, 0.25, c(0.0, 0.2)).unwrap());
        assert_abs_diff_eq!(s.rho11(), 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(s.rho22(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(s.rho12().im, 0.2, epsilon = 1e-15);
        assert_eq!(s.rho00(), 0.0);
    }

    #[test]
    fn unphysical_coefficients_rejected() {
        assert!(matches!(
            DecayCoefficients::new(0.5, 0.5, c(0.9, 0.0)),
            Err(Error::Unphysical(_))
        ));
        assert!(matches!(
            DecayCoefficients::new(0.0, 0.0, c(0.0, 0.0)),
            Err(Error::Unphysical(_))
        ));
        assert!(DecayCoefficients::new(-0.1, 0.5, c(0.0, 0.0)).is_err());
        assert!(DecayCoefficients::new(f64::NAN, 0.5, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn analytic_initial_and_limit() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.5, 0.0)).unwrap();
        let r0 = evolve_analytic(&k, 0.0).unwrap();
        assert_eq!(r0, DensityMatrix3::excited());
        let late = evolve_analytic(&k, 50.0 / k.total()).unwrap();
        assert!(late.max_abs_diff(&steady_state(&k)) < 1e-12);
        let one = evolve_analytic(&k, 1.0).unwrap();
        assert_abs_diff_eq!(one.rho12().re, 0.5 * (1.0 - (-1.0f64).exp()), epsilon = 1e-15);
        assert_abs_diff_eq!(one.rho12().re, 0.316060279414, epsilon = 1e-12);
        assert!(evolve_analytic(&k, -1.0).is_err());
    }

    #[test]
    fn numeric_matches_analytic() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.5, 0.0)).unwrap();
        let traj = evolve_numeric(&k, 10.0, 1e-3).unwrap();
        assert_eq!(traj.len(), 10_001);
        for s in &traj.snapshots {
            let exact = evolve_analytic(&k, s.t).unwrap();
            assert!(s.rho.max_abs_diff(&exact) < 1e-8);
            s.rho.check(Tolerance::TRAJECTORY).unwrap();
        }
    }

    #[test]
    fn zero_kappa_keeps_coherence_zero() {
        let k = DecayCoefficients::new(0.3, 0.7, c(0.0, 0.0)).unwrap();
        for s in evolve_numeric(&k, 5.0, 1e-2).unwrap().snapshots {
            assert_eq!(s.rho.rho12(), c(0.0, 0.0));
        }
    }

    #[test]
    fn optical_coherences_stay_zero_with_omega0() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.2, 0.0))
            .unwrap()
            .with_omega0(2.0 * PI);
        for s in evolve_numeric(&k, 3.0, 1e-2).unwrap().snapshots {
            assert_eq!(s.rho.rho10(), c(0.0, 0.0));
            assert_eq!(s.rho.rho20(), c(0.0, 0.0));
        }
    }

    #[test]
    fn oversized_step_is_a_numerical_failure() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.0, 0.0)).unwrap();
        let err = evolve_numeric(&k, 50.0, 5.0).unwrap_err();
        assert!(matches!(err, Error::NumericalFailure(_)), "{err}");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn numeric_rejects_bad_grid() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.0, 0.0)).unwrap();
        assert!(evolve_numeric(&k, 1.0, 0.0).is_err());
        assert!(evolve_numeric(&k, -1.0, 0.1).is_err());
        let single = evolve_numeric(&k, 0.0, 0.1).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.snapshots[0].rho, DensityMatrix3::excited());
    }

    #[test]
    fn csv_header_and_rows() {
        let k = DecayCoefficients::new(0.5, 0.5, c(0.5, 0.0)).unwrap();
        let csv = evolve_numeric(&k, 0.2, 0.1).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(TRAJECTORY_CSV_HEADER));
        assert_eq!(lines.next(), Some("0,1,0,0,0,0"));
        assert_eq!(lines.count(), 2);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn eigenvalues_agree_with_nalgebra() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..500 {
            let mut m = [[ZERO; 3]; 3];
            for i in 0..3 {
                m[i][i] = c(rng.gen_range(-1.0..1.0), 0.0);
                for j in i + 1..3 {
                    // every few trials leave a zero coupling to hit degenerate cases
                    let z = if trial % 4 == 0 && j == 2 {
                        ZERO
                    } else {
                        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    };
                    m[i][j] = z;
                    m[j][i] = z.conj();
                }
            }
            if trial % 7 == 0 {
                m[1][1] = m[0][0];
                m[0][1] = ZERO;
                m[1][0] = ZERO;
            }
            let ours = hermitian_eigenvalues(&m);
            let na = nalgebra::Matrix3::from_fn(|i, j| m[i][j]);
            let mut theirs: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(|a, b| a.total_cmp(b));
            for k in 0..3 {
                assert_abs_diff_eq!(ours[k], theirs[k], epsilon = 1e-13);
            }
        }
        let ev = DensityMatrix3::excited().eigenvalues();
        assert_eq!(ev, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn eigenvalues_match_known_spectrum() {
        let s = steady_state(&DecayCoefficients::new(0.5, 0.5, c(0.5, 0.0)).unwrap());
        let ev = s.eigenvalues();
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[2], 1.0, epsilon = 1e-15);
        let bad = DensityMatrix3::from_elements(0.0, 0.5, 0.5, c(0.7, 0.0), ZERO, ZERO);
        assert!(matches!(bad.check(Tolerance::STRICT), Err(Error::Unphysical(_))));
    }

    #[test]
    fn dressed_state_examples() {
        let equal = DipolePair::new(1.0, 1.0).unwrap();
        // Im Gxx = 0: product state, pure atom in (|1⟩ − |2⟩)/√2
        let psi = dressed_state(&GreenSample::cartesian(0.0, 1.0, 0.0), &equal).unwrap();
        assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.atomic_purity(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.concurrence(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.atomic_state().rho12().re, -0.5, epsilon = 1e-15);

        let psi = dressed_state(&GreenSample::cartesian(1.0, 1.0, 0.0), &equal).unwrap();
        assert_abs_diff_eq!(psi.atomic_purity(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.concurrence(), 1.0, epsilon = 1e-15);

        let psi = dressed_state(&GreenSample::cartesian(0.25, 0.75, 0.0), &equal).unwrap();
        assert_abs_diff_eq!(psi.atomic_state().rho12().re, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.atomic_state().rho12().im, 0.0, epsilon = 1e-15);

        assert!(dressed_state(&GreenSample::cartesian(0.0, 0.0, 0.0), &equal).is_err());
        assert!(dressed_state(&GreenSample::cartesian(1.0, 1.0, 0.1), &equal).is_err());
    }

    #[test]
    fn coherence_length() {
        assert_eq!(photonic_coherence_length(1.0, 1.0).unwrap(), 0.5);
        let d = photonic_coherence_length(2.0 * PI * 5.2e6, 3.0e8).unwrap();
        assert_abs_diff_eq!(d, 4.5910, epsilon = 1e-3);
        assert!(photonic_coherence_length(0.0, 1.0).is_err());
    }
}
