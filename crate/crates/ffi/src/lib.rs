//! C ABI for the euler-profile solver.
//!
//! Every function returns an [`EpStatus`]; results go through out-pointers.
//! On failure the message is available from [`ep_last_error`] on the same
//! thread until the next failing call. Panics are caught at the boundary and
//! reported as [`EpStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use euler_profile::oracle::minimize_relaxed;
use euler_profile::solver::{assemble_solution_with, el_residual, fmin, OptimalProfile, Regime};
use euler_profile::{Error, Params, Polyline};

/// Status code returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpStatus {
    Ok = 0,
    InvalidArgument = 1,
    Domain = 2,
    Regime = 3,
    NotApplicable = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// Solution regime of an instance.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpRegime {
    UniqueConvex = 0,
    DegenerateAffine = 1,
    NonuniqueBand = 2,
    DegenerateAffineReflected = 3,
    UniqueConcaveReflected = 4,
}

impl From<Regime> for EpRegime {
    fn from(r: Regime) -> Self {
        match r {
            Regime::UniqueConvex => EpRegime::UniqueConvex,
            Regime::DegenerateAffine => EpRegime::DegenerateAffine,
            Regime::NonuniqueBand => EpRegime::NonuniqueBand,
            Regime::DegenerateAffineReflected => EpRegime::DegenerateAffineReflected,
            Regime::UniqueConcaveReflected => EpRegime::UniqueConcaveReflected,
        }
    }
}

/// Opaque handle to a solved profile.
pub struct EpProfile {
    inner: OptimalProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(EpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidInput(_)
            | Error::InvalidSpec { .. }
            | Error::Conversion(_)
            | Error::Parse(_) => EpStatus::InvalidArgument,
            Error::Domain(_) | Error::InfeasibleEta { .. } | Error::Degenerate => EpStatus::Domain,
            Error::Regime(_) => EpStatus::Regime,
            Error::NotApplicable(_) => EpStatus::NotApplicable,
            Error::Io(_) => EpStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EpStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            EpStatus::Internal
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a>(p: *const EpProfile) -> Result<&'a EpProfile, Fail> {
    p.as_ref().ok_or_else(|| null("profile"))
}

unsafe fn polyline(xy: *const f64, n_vertices: usize) -> Result<Polyline, Fail> {
    if xy.is_null() {
        return Err(null("xy"));
    }
    let flat = std::slice::from_raw_parts(xy, 2 * n_vertices);
    let pts: Vec<(f64, f64)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok(Polyline::from_xy(&pts)?)
}

/// Resistance of a polyline given as `n_vertices` interleaved `x, y` pairs.
///
/// # Safety
/// `xy` must point to `2 * n_vertices` readable doubles and `out_value` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ep_resistance(xy: *const f64, n_vertices: usize, out_value: *mut f64) -> EpStatus {
    guard(|| {
        let p = polyline(xy, n_vertices)?;
        *out(out_value, "out_value")? = p.resistance();
        Ok(())
    })
}

/// Area between a polyline and the bottom edge of the `a × h` box.
///
/// # Safety
/// As for [`ep_resistance`].
#[no_mangle]
pub unsafe extern "C" fn ep_area_below(
    xy: *const f64,
    n_vertices: usize,
    a: f64,
    h: f64,
    out_value: *mut f64,
) -> EpStatus {
    guard(|| {
        let p = polyline(xy, n_vertices)?;
        let q = Params::new(a, h, 0.5 * a * h)?;
        *out(out_value, "out_value")? = p.area_below(&q);
        Ok(())
    })
}

/// Regime of the instance `(a, h, L)`.
///
/// # Safety
/// `out_regime` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_classify(a: f64, h: f64, l: f64, out_regime: *mut EpRegime) -> EpStatus {
    guard(|| {
        let q = Params::new(a, h, l)?;
        *out(out_regime, "out_regime")? = Regime::classify(&q).into();
        Ok(())
    })
}

/// Minimal resistance and regime, without sampling a curve.
///
/// # Safety
/// `out_value` must be writable; `out_regime` may be null.
#[no_mangle]
pub unsafe extern "C" fn ep_fmin(
    a: f64,
    h: f64,
    l: f64,
    out_value: *mut f64,
    out_regime: *mut EpRegime,
) -> EpStatus {
    guard(|| {
        let value = out(out_value, "out_value")?;
        let (regime, f) = fmin(&Params::new(a, h, l)?)?;
        *value = f;
        if let Some(r) = out_regime.as_mut() {
            *r = regime.into();
        }
        Ok(())
    })
}

/// Solves `(a, h, L)` with the convex arc sampled at `samples` points.
/// The handle must be released with [`ep_profile_free`].
///
/// # Safety
/// `out_profile` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_solve(
    a: f64,
    h: f64,
    l: f64,
    samples: usize,
    out_profile: *mut *mut EpProfile,
) -> EpStatus {
    guard(|| {
        let slot = out(out_profile, "out_profile")?;
        *slot = ptr::null_mut();
        let inner = assemble_solution_with(&Params::new(a, h, l)?, samples)?;
        *slot = Box::into_raw(Box::new(EpProfile { inner }));
        Ok(())
    })
}

/// Releases a handle from [`ep_profile_solve`]. Null is ignored.
///
/// # Safety
/// `profile` must be null or a live handle, and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_free(profile: *mut EpProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_f_min(profile: *const EpProfile, out_value: *mut f64) -> EpStatus {
    guard(|| {
        *out(out_value, "out_value")? = handle(profile)?.inner.f_min;
        Ok(())
    })
}

/// # Safety
/// `profile` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_h_star(profile: *const EpProfile, out_value: *mut f64) -> EpStatus {
    guard(|| {
        *out(out_value, "out_value")? = handle(profile)?.inner.h_star;
        Ok(())
    })
}

/// # Safety
/// `profile` must be a live handle and `out_regime` writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_regime(profile: *const EpProfile, out_regime: *mut EpRegime) -> EpStatus {
    guard(|| {
        *out(out_regime, "out_regime")? = handle(profile)?.inner.regime.into();
        Ok(())
    })
}

/// Endpoint slopes `ξ*, η*`. Not applicable in the band regime.
///
/// # Safety
/// `profile` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_xi_eta(
    profile: *const EpProfile,
    out_xi: *mut f64,
    out_eta: *mut f64,
) -> EpStatus {
    guard(|| {
        let p = &handle(profile)?.inner;
        let (xi, eta) = (out(out_xi, "out_xi")?, out(out_eta, "out_eta")?);
        match (p.xi_star, p.eta_star) {
            (Some(x), Some(e)) => {
                *xi = x;
                *eta = e;
                Ok(())
            }
            _ => Err(Fail(EpStatus::NotApplicable, format!("no endpoint slopes in regime {}", p.regime))),
        }
    })
}

/// # Safety
/// `profile` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_vertex_count(profile: *const EpProfile, out_count: *mut usize) -> EpStatus {
    guard(|| {
        *out(out_count, "out_count")? = handle(profile)?.inner.curve.len();
        Ok(())
    })
}

/// Copies the vertices as interleaved `x, y` pairs into `buf`, which holds
/// `capacity` vertices. Fails with `BUFFER_TOO_SMALL` without writing if the
/// curve does not fit.
///
/// # Safety
/// `profile` must be a live handle and `buf` must hold `2 * capacity`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_copy_vertices(
    profile: *const EpProfile,
    buf: *mut f64,
    capacity: usize,
) -> EpStatus {
    guard(|| {
        let v = handle(profile)?.inner.curve.vertices();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if capacity < v.len() {
            return Err(Fail(
                EpStatus::BufferTooSmall,
                format!("need {} vertices, buffer holds {capacity}", v.len()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buf, 2 * v.len());
        for (c, p) in dst.chunks_exact_mut(2).zip(v) {
            c[0] = p.x;
            c[1] = p.y;
        }
        Ok(())
    })
}

/// Euler–Lagrange residual of the profile; also stores the fitted
/// multipliers in the handle. Not applicable in the band regime.
///
/// # Safety
/// `profile` must be a live handle not used concurrently, and `out_value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_el_residual(profile: *mut EpProfile, out_value: *mut f64) -> EpStatus {
    guard(|| {
        let p = profile.as_mut().ok_or_else(|| null("profile"))?;
        let value = out(out_value, "out_value")?;
        *value = el_residual(&mut p.inner)?;
        Ok(())
    })
}

/// Multipliers `λ̄, μ̄` of the profile. Not applicable in the band regime.
///
/// # Safety
/// `profile` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ep_profile_multipliers(
    profile: *const EpProfile,
    out_lambda: *mut f64,
    out_mu: *mut f64,
) -> EpStatus {
    guard(|| {
        let p = &handle(profile)?.inner;
        let (lambda, mu) = (out(out_lambda, "out_lambda")?, out(out_mu, "out_mu")?);
        match (p.lambda_bar, p.mu_bar) {
            (Some(l), Some(m)) => {
                *lambda = l;
                *mu = m;
                Ok(())
            }
            _ => Err(Fail(EpStatus::NotApplicable, format!("no multipliers in regime {}", p.regime))),
        }
    })
}

/// Minimizes the relaxed energy on `n` cells. If `u` is not null it receives
/// the `n + 1` grid values and must hold that many doubles.
///
/// # Safety
/// `out_value` must be writable; `out_converged` may be null; `u` must be
/// null or hold `n + 1` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ep_relaxed_min(
    a: f64,
    h: f64,
    l: f64,
    n: usize,
    tol: f64,
    out_value: *mut f64,
    out_converged: *mut bool,
    u: *mut f64,
) -> EpStatus {
    guard(|| {
        let value = out(out_value, "out_value")?;
        let r = minimize_relaxed(&Params::new(a, h, l)?, n, tol)?;
        *value = r.f_min;
        if let Some(c) = out_converged.as_mut() {
            *c = r.converged;
        }
        if !u.is_null() {
            std::slice::from_raw_parts_mut(u, r.u.values.len()).copy_from_slice(&r.u.values);
        }
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ep_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_status() {
        let mut f = 0.0;
        let s = unsafe { ep_fmin(-1.0, 1.0, 0.2, &mut f, ptr::null_mut()) };
        assert_eq!(s, EpStatus::InvalidArgument);
        let msg = unsafe { CStr::from_ptr(ep_last_error()) }.to_str().unwrap();
        assert!(msg.contains("invalid input"), "{msg}");
        let s = unsafe { ep_fmin(1.0, 1.0, 0.2, ptr::null_mut(), ptr::null_mut()) };
        assert_eq!(s, EpStatus::NullPointer);
    }

    #[test]
    fn version_matches_package() {
        let v = unsafe { CStr::from_ptr(ep_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
