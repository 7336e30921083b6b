//! C ABI over `aqv`.
//!
//! Every fallible call returns an [`AqvStatus`]; on failure the message is
//! kept per thread and can be read with [`aqv_last_error`]. Reflectance
//! profiles and layouts are opaque handles released with their `_free`
//! function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use aqv::anisotropy::{self, DipolePair, GreenSample};
use aqv::dynamics::{self, DecayCoefficients, DensityMatrix3};
use aqv::farfield::{self, Quadrature, ReflectanceProfile, Taper};
use aqv::metasurface::{self, DesignKind, DesignSpec, MetasurfaceLayout, Palette, SnellOutcome};
use aqv::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AqvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Unphysical = 3,
    NumericalFailure = 4,
    Io = 5,
    Parse = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AqvTaper {
    Linear = 0,
    Hold = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AqvDesignKind {
    Resonant = 0,
    Geometric = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AqvDecayCoefficients {
    pub gamma1: f64,
    pub gamma2: f64,
    pub kappa12_re: f64,
    pub kappa12_im: f64,
    pub omega0: f64,
}

/// Independent entries of the Hermitian 3×3 density matrix.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AqvDensityMatrix {
    pub rho00: f64,
    pub rho11: f64,
    pub rho22: f64,
    pub rho12_re: f64,
    pub rho12_im: f64,
    pub rho10_re: f64,
    pub rho10_im: f64,
    pub rho20_re: f64,
    pub rho20_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AqvEstimate {
    pub na: f64,
    pub gamma_x_ratio: f64,
    pub gamma_y_ratio: f64,
    pub coherence: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AqvDesignSpec {
    pub lambda0_nm: f64,
    pub d_nm: f64,
    pub unit_cell_x_nm: f64,
    pub unit_cell_y_nm: f64,
    pub kind: AqvDesignKind,
    /// Zero or negative selects the default 70° aperture.
    pub aperture_radius_nm: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AqvElement {
    pub x_nm: f64,
    pub y_nm: f64,
    pub lx_nm: f64,
    pub ly_nm: f64,
    pub rotation_rad: f64,
    pub phase_rad: f64,
}

/// Opaque reflectance profile.
pub struct AqvProfile(ReflectanceProfile);

/// Opaque antenna layout.
pub struct AqvLayout(MetasurfaceLayout);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: AqvStatus, msg: impl Into<String>) -> AqvStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> AqvStatus {
    match e {
        Error::Unphysical(_) => AqvStatus::Unphysical,
        Error::InvalidInput(_) => AqvStatus::InvalidInput,
        Error::NumericalFailure(_) => AqvStatus::NumericalFailure,
        Error::Io { .. } => AqvStatus::Io,
        Error::Parse { .. } | Error::Json(_) => AqvStatus::Parse,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), AqvStatus>) -> AqvStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AqvStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AqvStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: aqv::Result<T>) -> Result<T, AqvStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, AqvStatus> {
    p.as_mut()
        .ok_or_else(|| fail(AqvStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn in_ref<'a, T>(p: *const T, name: &str) -> Result<&'a T, AqvStatus> {
    p.as_ref()
        .ok_or_else(|| fail(AqvStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, AqvStatus> {
    if p.is_null() {
        return Err(fail(AqvStatus::NullPointer, "`path` is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| fail(AqvStatus::InvalidInput, "path is not valid UTF-8"))
}

impl AqvDecayCoefficients {
    fn to_core(self) -> aqv::Result<DecayCoefficients> {
        Ok(DecayCoefficients::new(
            self.gamma1,
            self.gamma2,
            Complex64::new(self.kappa12_re, self.kappa12_im),
        )?
        .with_omega0(self.omega0))
    }
}

impl From<&DensityMatrix3> for AqvDensityMatrix {
    fn from(r: &DensityMatrix3) -> Self {
        Self {
            rho00: r.rho00(),
            rho11: r.rho11(),
            rho22: r.rho22(),
            rho12_re: r.rho12().re,
            rho12_im: r.rho12().im,
            rho10_re: r.rho10().re,
            rho10_im: r.rho10().im,
            rho20_re: r.rho20().re,
            rho20_im: r.rho20().im,
        }
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn aqv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Stationary state reached from the excited level.
///
/// # Safety
/// `coeffs` must point to a valid struct and `out` to writable memory.
#[no_mangle]
pub unsafe extern "C" fn aqv_steady_state(
    coeffs: *const AqvDecayCoefficients,
    out: *mut AqvDensityMatrix,
) -> AqvStatus {
    guard(|| {
        let c = lift(in_ref(coeffs, "coeffs")?.to_core())?;
        *out_ref(out, "out")? = (&dynamics::steady_state(&c)).into();
        Ok(())
    })
}

/// Closed-form state at time `t`.
///
/// # Safety
/// As for [`aqv_steady_state`].
#[no_mangle]
pub unsafe extern "C" fn aqv_evolve_analytic(
    coeffs: *const AqvDecayCoefficients,
    t: f64,
    out: *mut AqvDensityMatrix,
) -> AqvStatus {
    guard(|| {
        let c = lift(in_ref(coeffs, "coeffs")?.to_core())?;
        let rho = lift(dynamics::evolve_analytic(&c, t))?;
        *out_ref(out, "out")? = (&rho).into();
        Ok(())
    })
}

/// Stationary coherence for Cartesian Green components and dipole moments.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_coherence(
    im_gxx: f64,
    im_gyy: f64,
    im_gxy: f64,
    d01: f64,
    d02: f64,
    re: *mut f64,
    im: *mut f64,
) -> AqvStatus {
    guard(|| {
        let d = lift(DipolePair::new(d01, d02))?;
        let c = lift(anisotropy::coherence(
            &GreenSample::cartesian(im_gxx, im_gyy, im_gxy),
            &d,
        ))?;
        let (re, im) = (out_ref(re, "re")?, out_ref(im, "im")?);
        *re = c.re;
        *im = c.im;
        Ok(())
    })
}

/// `γx/γ0` in front of a perfect mirror of numerical aperture `na`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_gamma_x_ideal(na: f64, out: *mut f64) -> AqvStatus {
    guard(|| {
        *out_ref(out, "out")? = lift(farfield::gamma_x_ratio_ideal(na))?;
        Ok(())
    })
}

/// Generalised reflection law. On an evanescent outcome `*evanescent` is set
/// and `*out` holds the would-be `sin θr` instead of an angle.
///
/// # Safety
/// `out` and `evanescent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_snell(
    theta_i_deg: f64,
    lambda0_nm: f64,
    phase_gradient: f64,
    out: *mut f64,
    evanescent: *mut bool,
) -> AqvStatus {
    guard(|| {
        let outcome = lift(metasurface::snell_reflection_angle(
            theta_i_deg,
            lambda0_nm,
            phase_gradient,
        ))?;
        let (out, ev) = (out_ref(out, "out")?, out_ref(evanescent, "evanescent")?);
        match outcome {
            SnellOutcome::Reflected(a) => {
                *out = a;
                *ev = false;
            }
            SnellOutcome::Evanescent { sin_theta_r } => {
                *out = sin_theta_r;
                *ev = true;
            }
        }
        Ok(())
    })
}

/// The tabulated angle-resolved reflectance of the reference design.
///
/// # Safety
/// `out` must be writable. Release the handle with [`aqv_profile_free`].
#[no_mangle]
pub unsafe extern "C" fn aqv_profile_table2(taper: AqvTaper, out: *mut *mut AqvProfile) -> AqvStatus {
    guard(|| {
        let taper = match taper {
            AqvTaper::Linear => Taper::Linear,
            AqvTaper::Hold => Taper::Hold,
        };
        *out_ref(out, "out")? = Box::into_raw(Box::new(AqvProfile(farfield::table2_profile(taper))));
        Ok(())
    })
}

/// Loads a `theta_deg,rx,interpolation` CSV.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_profile_load_csv(path: *const c_char, out: *mut *mut AqvProfile) -> AqvStatus {
    guard(|| {
        let profile = lift(ReflectanceProfile::load_csv(path_arg(path)?, 1.0))?;
        *out_ref(out, "out")? = Box::into_raw(Box::new(AqvProfile(profile)));
        Ok(())
    })
}

/// # Safety
/// `profile` must come from this library and not be used afterwards. Null is accepted.
#[no_mangle]
pub unsafe extern "C" fn aqv_profile_free(profile: *mut AqvProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Reflectance at polar angle `theta_deg`.
///
/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_profile_rx(profile: *const AqvProfile, theta_deg: f64, out: *mut f64) -> AqvStatus {
    guard(|| {
        let p = in_ref(profile, "profile")?;
        *out_ref(out, "out")? = p.0.rx(theta_deg);
        Ok(())
    })
}

/// Decay rate and coherence for the profile cut at numerical aperture `na`.
///
/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_estimate(
    profile: *const AqvProfile,
    na: f64,
    nodes_theta: usize,
    nodes_phi: usize,
    out: *mut AqvEstimate,
) -> AqvStatus {
    guard(|| {
        let p = in_ref(profile, "profile")?;
        let quad = lift(Quadrature::new(nodes_theta, nodes_phi))?;
        let e = lift(farfield::estimate(&p.0, na, &quad))?;
        *out_ref(out, "out")? = AqvEstimate {
            na: e.na,
            gamma_x_ratio: e.gamma_x_ratio,
            gamma_y_ratio: e.gamma_y_ratio,
            coherence: e.coherence,
        };
        Ok(())
    })
}

/// Reference design parameters for `kind` (852 nm, `d = 10 λ0`).
#[no_mangle]
pub extern "C" fn aqv_design_spec_default(kind: AqvDesignKind) -> AqvDesignSpec {
    let s = DesignSpec::reference(kind_to_core(kind));
    AqvDesignSpec {
        lambda0_nm: s.lambda0_nm,
        d_nm: s.d_nm,
        unit_cell_x_nm: s.unit_cell_nm[0],
        unit_cell_y_nm: s.unit_cell_nm[1],
        kind,
        aperture_radius_nm: s.aperture_radius_nm,
    }
}

fn kind_to_core(kind: AqvDesignKind) -> DesignKind {
    match kind {
        AqvDesignKind::Resonant => DesignKind::Resonant,
        AqvDesignKind::Geometric => DesignKind::Geometric,
    }
}

/// Builds a layout; the resonant design uses the built-in five-rod palette.
///
/// # Safety
/// `spec` must point to a valid struct and `out` be writable. Release the
/// handle with [`aqv_layout_free`].
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_build(spec: *const AqvDesignSpec, out: *mut *mut AqvLayout) -> AqvStatus {
    guard(|| {
        let s = in_ref(spec, "spec")?;
        let aperture = if s.aperture_radius_nm > 0.0 {
            s.aperture_radius_nm
        } else {
            metasurface::default_aperture_radius(s.d_nm)
        };
        let spec = lift(DesignSpec::new(
            s.lambda0_nm,
            s.d_nm,
            [s.unit_cell_x_nm, s.unit_cell_y_nm],
            kind_to_core(s.kind),
            aperture,
        ))?;
        let layout = lift(metasurface::build_layout(&spec, &Palette::five_rod()))?;
        *out_ref(out, "out")? = Box::into_raw(Box::new(AqvLayout(layout)));
        Ok(())
    })
}

/// # Safety
/// `layout` must come from this library and not be used afterwards. Null is accepted.
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_free(layout: *mut AqvLayout) {
    if !layout.is_null() {
        drop(Box::from_raw(layout));
    }
}

/// Number of antennas, or 0 for a null handle.
///
/// # Safety
/// `layout` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_len(layout: *const AqvLayout) -> usize {
    layout.as_ref().map_or(0, |l| l.0.elements.len())
}

/// Number of supercells, or 0 for a null handle.
///
/// # Safety
/// `layout` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_supercell_count(layout: *const AqvLayout) -> usize {
    layout.as_ref().map_or(0, |l| l.0.supercells.len())
}

/// Antenna `index` in row-major order.
///
/// # Safety
/// `layout` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_element(layout: *const AqvLayout, index: usize, out: *mut AqvElement) -> AqvStatus {
    guard(|| {
        let l = in_ref(layout, "layout")?;
        let e = l.0.elements.get(index).ok_or_else(|| {
            fail(
                AqvStatus::OutOfRange,
                format!("element {index} out of range (len {})", l.0.elements.len()),
            )
        })?;
        let [lx, ly] = e.geometry.size_nm();
        *out_ref(out, "out")? = AqvElement {
            x_nm: e.center_nm[0],
            y_nm: e.center_nm[1],
            lx_nm: lx,
            ly_nm: ly,
            rotation_rad: e.geometry.rotation_rad(),
            phase_rad: e.encoded_phase,
        };
        Ok(())
    })
}

/// Writes the layout as JSON.
///
/// # Safety
/// `layout` must be a live handle and `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn aqv_layout_write_json(layout: *const AqvLayout, path: *const c_char) -> AqvStatus {
    guard(|| {
        let l = in_ref(layout, "layout")?;
        let path = path_arg(path)?;
        let json = lift(metasurface::layout_json(&l.0))?;
        std::fs::write(path, json).map_err(|e| fail(AqvStatus::Io, format!("{}: {e}", path.display())))
    })
}
