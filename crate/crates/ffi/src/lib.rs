//! C ABI for `sphex`.
//!
//! Monoids and torus actions are exposed as opaque handles built from JSON.
//! The batch commands take and return JSON strings with the same schema as
//! the command line. Every function returns a [`SphexStatus`]; on failure
//! the message is available from [`sphex_last_error`] on the same thread.
//! Strings handed out by the library must be released with
//! [`sphex_string_free`].

use sphex::cli::{self, CliError, EntryArgs, Outcome, WitnessArgs, EXIT_FAILED};
use sphex::monoidcone::{is_almost_excellent, is_excellent_semigroup, is_free, AffineMonoid};
use sphex::torusquot::{null_cone_dimension, quotient_dimension, TorusActionSpec};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphexStatus {
    Ok = 0,
    /// A required pointer argument was null.
    Null = 1,
    /// An argument was out of range or referred to something unknown.
    InvalidArg = 2,
    /// JSON or parameter text could not be parsed.
    Parse = 3,
    /// The call completed but a check failed; the report is still written.
    Inconsistent = 4,
    /// The library panicked. No output was written.
    Panic = 5,
}

/// Opaque handle to an affine monoid.
pub struct SphexMonoid(AffineMonoid);

/// Opaque handle to a diagonal torus action.
pub struct SphexTorusAction(TorusActionSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(SphexStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure(SphexStatus::InvalidArg, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> Res<SphexStatus>) -> SphexStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SphexStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Failure(SphexStatus::Null, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(SphexStatus::Parse, format!("{what}: {e}")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Res<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Res<T> {
    serde_json::from_str(s).map_err(|e| Failure(SphexStatus::Parse, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| Failure(SphexStatus::Null, "handle is null".into()))
}

unsafe fn write<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(Failure(SphexStatus::Null, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_outcome(out: *mut *mut c_char, o: Outcome) -> Res<SphexStatus> {
    if out.is_null() {
        return Err(Failure(SphexStatus::Null, "output pointer is null".into()));
    }
    let s = serde_json::to_string(&o.report).expect("reports serialise");
    out.write(CString::new(s).expect("no interior nul").into_raw());
    if o.exit_code == EXIT_FAILED {
        set_error("a check failed; see the report");
        Ok(SphexStatus::Inconsistent)
    } else {
        Ok(SphexStatus::Ok)
    }
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sphex_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into the library on the same
/// thread.
#[no_mangle]
pub extern "C" fn sphex_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a monoid from JSON (`{"rank": 2, "generators": [[1,0],[1,1]]}`).
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_from_json(json: *const c_char, out: *mut *mut SphexMonoid) -> SphexStatus {
    guard(|| {
        let m: AffineMonoid = parse_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(SphexMonoid(m))))?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a handle from [`sphex_monoid_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_free(m: *mut SphexMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_rank(m: *const SphexMonoid, out: *mut usize) -> SphexStatus {
    guard(|| {
        write(out, handle(m)?.0.rank())?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_is_free(m: *const SphexMonoid, out: *mut bool) -> SphexStatus {
    guard(|| {
        write(out, is_free(&handle(m)?.0))?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_is_excellent(m: *const SphexMonoid, out: *mut bool) -> SphexStatus {
    guard(|| {
        write(out, is_excellent_semigroup(&handle(m)?.0).excellent)?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_is_almost_excellent(m: *const SphexMonoid, out: *mut bool) -> SphexStatus {
    guard(|| {
        write(out, is_almost_excellent(&handle(m)?.0).almost_excellent)?;
        Ok(SphexStatus::Ok)
    })
}

/// Full semigroup report as JSON, as printed by `sphex semigroup check`.
///
/// # Safety
/// `m` must be a live handle and `out` writable. Free the result with
/// [`sphex_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sphex_monoid_report(m: *const SphexMonoid, out: *mut *mut c_char) -> SphexStatus {
    guard(|| write_outcome(out, cli::semigroup_check(&handle(m)?.0)))
}

/// Builds a torus action from JSON (`{"torus_rank": 1, "weights": [[1],[-1]]}`).
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_torus_from_json(json: *const c_char, out: *mut *mut SphexTorusAction) -> SphexStatus {
    guard(|| {
        let a: TorusActionSpec = parse_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(SphexTorusAction(a))))?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `a` must be null or a handle from [`sphex_torus_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphex_torus_free(a: *mut SphexTorusAction) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_torus_quotient_dim(a: *const SphexTorusAction, out: *mut usize) -> SphexStatus {
    guard(|| {
        write(out, quotient_dimension(&handle(a)?.0))?;
        Ok(SphexStatus::Ok)
    })
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_torus_null_cone_dim(a: *const SphexTorusAction, out: *mut usize) -> SphexStatus {
    guard(|| {
        let d = null_cone_dimension(&handle(a)?.0).map_err(|e| Failure(SphexStatus::InvalidArg, e.to_string()))?;
        write(out, d)?;
        Ok(SphexStatus::Ok)
    })
}

/// Full analysis as JSON, as printed by `sphex torus analyze`.
///
/// # Safety
/// `a` must be a live handle and `out` writable. Free the result with
/// [`sphex_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sphex_torus_report(a: *const SphexTorusAction, out: *mut *mut c_char) -> SphexStatus {
    guard(|| write_outcome(out, cli::torus_analyze(&handle(a)?.0)?))
}

unsafe fn params(p: *const c_char) -> Res<Option<sphex::catalog::Params>> {
    opt_text(p, "params")?
        .map(|s| cli::parse_params(s).map_err(|e| Failure(SphexStatus::Parse, e)))
        .transpose()
}

/// Validates catalog entries against the computed verdicts.
///
/// `entry` may be null for every entry. `params` is null or text such as
/// `"n=2,m=1"`. A positive `sweep` sweeps every parameter up to that bound.
/// Returns `SPHEX_STATUS_INCONSISTENT` with the report written when some
/// instance disagrees with the catalog.
///
/// # Safety
/// String arguments must be null or valid nul-terminated strings, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_catalog_validate(
    entry: *const c_char,
    params_text: *const c_char,
    sweep: i64,
    out: *mut *mut c_char,
) -> SphexStatus {
    guard(|| {
        let args = EntryArgs {
            entry: opt_text(entry, "entry")?.unwrap_or("all").to_string(),
            param: params(params_text)?,
            sweep: (sweep > 0).then_some(sweep),
        };
        write_outcome(out, cli::catalog_validate(&args)?)
    })
}

/// Analyses a construction given as JSON, as `sphex construct` does.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_construct(json: *const c_char, out: *mut *mut c_char) -> SphexStatus {
    guard(|| write_outcome(out, cli::construct(parse_json(text(json, "json")?)?)?))
}

/// Runs the semi-invariance and witness checks for a case such as `"2-3"`.
///
/// `params` is null for the defaults. Returns `SPHEX_STATUS_INCONSISTENT`
/// with the report written when a check fails.
///
/// # Safety
/// String arguments must be null (except `case_id`) or valid nul-terminated
/// strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sphex_witness_run(
    case_id: *const c_char,
    params_text: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> SphexStatus {
    guard(|| {
        let args = WitnessArgs {
            case: text(case_id, "case_id")?.to_string(),
            param: params(params_text)?,
            samples,
            seed,
            abcd: None,
        };
        write_outcome(out, cli::witness_run(&args)?)
    })
}
