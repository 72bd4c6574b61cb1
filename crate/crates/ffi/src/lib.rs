//! C interface to the coxeter-shadows library.
//!
//! The API follows the usual opaque-handle pattern: `cox_group_new` parses a
//! system description and returns a handle, every query takes the handle plus
//! explicit caps, and results are written through out-pointers while the
//! return value is a status code.  Strings returned through out-pointers are
//! owned by the caller and must be released with `cox_string_free`.
//!
//! All entry points catch panics and report them as `COX_STATUS_PANICKED`
//! instead of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use coxeter_shadows::automata::{brink_howlett, minimize};
use coxeter_shadows::group::CoxeterGroup;
use coxeter_shadows::roots::SmallRoots;
use coxeter_shadows::shi::enumerate_m;
use coxeter_shadows::system::CoxeterSystem;
use coxeter_shadows::verify::{run_suite, SuiteConfig, SUITE_NAMES};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidSystem = 2,
    InvalidArgument = 3,
    CapExceeded = 4,
    CheckFailed = 5,
    Inconclusive = 6,
    Panicked = 7,
}

/// Opaque handle to a Coxeter group.
pub struct CoxGroup {
    w: CoxeterGroup,
}

fn guarded(f: impl FnOnce() -> CoxStatus) -> CoxStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CoxStatus::Panicked)
}

/// Writes an owned C string through `out`; the caller frees it with
/// `cox_string_free`.
unsafe fn emit_string(text: String, out: *mut *mut c_char) -> CoxStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            CoxStatus::Ok
        }
        Err(_) => CoxStatus::InvalidArgument,
    }
}

/// Parses a system description (preset name like `Gtilde2`, or text of the
/// form `rank N; m i j = v`) and writes a fresh handle through `out`.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
/// The returned handle must be released with `cox_group_free`.
#[no_mangle]
pub unsafe extern "C" fn cox_group_new(spec: *const c_char, out: *mut *mut CoxGroup) -> CoxStatus {
    if spec.is_null() || out.is_null() {
        return CoxStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(spec).to_str() else {
        return CoxStatus::InvalidArgument;
    };
    guarded(|| match CoxeterSystem::parse(text) {
        Ok(sys) => {
            let handle = Box::new(CoxGroup { w: CoxeterGroup::new(sys) });
            *out = Box::into_raw(handle);
            CoxStatus::Ok
        }
        Err(_) => CoxStatus::InvalidSystem,
    })
}

/// Releases a handle returned by `cox_group_new`.  A null handle is a no-op.
///
/// # Safety
/// `group` must be null or a pointer previously returned by `cox_group_new`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn cox_group_free(group: *mut CoxGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// The rank of the system; 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cox_group_rank(group: *const CoxGroup) -> u32 {
    match group.as_ref() {
        Some(g) => g.w.rank() as u32,
        None => 0,
    }
}

/// The canonical text of the system, suitable as a cache key.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_group_describe(
    group: *const CoxGroup,
    out: *mut *mut c_char,
) -> CoxStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    guarded(|| emit_string(g.w.system().to_string(), out))
}

/// Counts the small roots, writing the count through `out`.  `max_roots`
/// bounds the enumeration; exceeding it yields `COX_STATUS_CAP_EXCEEDED`.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_small_root_count(
    group: *const CoxGroup,
    max_roots: usize,
    out: *mut usize,
) -> CoxStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    guarded(|| match SmallRoots::compute(&g.w, max_roots) {
        Ok(sr) => {
            *out = sr.len();
            CoxStatus::Ok
        }
        Err(_) => CoxStatus::CapExceeded,
    })
}

/// Counts the Shi parts (= smallest elements), writing through `out`.
/// `max_states` caps both the root enumeration and the automaton.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_shi_part_count(
    group: *const CoxGroup,
    max_states: usize,
    out: *mut usize,
) -> CoxStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    guarded(|| {
        let sr = match SmallRoots::compute(&g.w, max_states) {
            Ok(sr) => sr,
            Err(_) => return CoxStatus::CapExceeded,
        };
        match brink_howlett(&sr, g.w.rank(), max_states) {
            Ok(bh) => {
                *out = enumerate_m(&g.w, &bh).len();
                CoxStatus::Ok
            }
            Err(_) => CoxStatus::CapExceeded,
        }
    })
}

/// Counts the gates (= states of the minimal reduced-word automaton, = cone
/// types), writing through `out`.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_gate_count(
    group: *const CoxGroup,
    max_states: usize,
    out: *mut usize,
) -> CoxStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    guarded(|| {
        let sr = match SmallRoots::compute(&g.w, max_states) {
            Ok(sr) => sr,
            Err(_) => return CoxStatus::CapExceeded,
        };
        match brink_howlett(&sr, g.w.rank(), max_states) {
            Ok(bh) => {
                *out = minimize(&bh.dfa).0.num_states();
                CoxStatus::Ok
            }
            Err(_) => CoxStatus::CapExceeded,
        }
    })
}

/// Reduced-word counts by length as a JSON array `[1, n1, n2, ...]` up to
/// `max_len`, written through `out` as an owned string.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_growth_json(
    group: *const CoxGroup,
    max_len: u32,
    max_states: usize,
    out: *mut *mut c_char,
) -> CoxStatus {
    let (Some(g), false) = (group.as_ref(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    guarded(|| {
        let sr = match SmallRoots::compute(&g.w, max_states) {
            Ok(sr) => sr,
            Err(_) => return CoxStatus::CapExceeded,
        };
        let bh = match brink_howlett(&sr, g.w.rank(), max_states) {
            Ok(bh) => bh,
            Err(_) => return CoxStatus::CapExceeded,
        };
        let counts: Vec<String> =
            bh.dfa.word_growth(max_len as usize).iter().map(|c| c.to_string()).collect();
        emit_string(format!("[{}]", counts.join(", ")), out)
    })
}

/// Runs a verification suite (`automata`, `shi`, `shadow`, `cone`,
/// `bipodality` or `all`) at the given ball radius and writes the JSON
/// report through `out`.  The status reflects the worst check outcome:
/// `COX_STATUS_CHECK_FAILED` for a failure, `COX_STATUS_INCONCLUSIVE` when
/// nothing failed but some check could not be decided at this radius.
///
/// # Safety
/// `group` must be a live handle, `suite` a valid NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_verify_json(
    group: *const CoxGroup,
    suite: *const c_char,
    radius: u32,
    out: *mut *mut c_char,
) -> CoxStatus {
    let (Some(g), false, false) = (group.as_ref(), suite.is_null(), out.is_null()) else {
        return CoxStatus::NullArgument;
    };
    let Ok(suite) = CStr::from_ptr(suite).to_str() else {
        return CoxStatus::InvalidArgument;
    };
    if !SUITE_NAMES.contains(&suite) {
        return CoxStatus::InvalidArgument;
    }
    guarded(|| {
        let cfg = SuiteConfig { radius, ..SuiteConfig::default() };
        let report = match run_suite(&g.w, suite, &cfg) {
            Ok(r) => r,
            Err(_) => return CoxStatus::CapExceeded,
        };
        let status = if report.any_failed() {
            CoxStatus::CheckFailed
        } else if report.any_inconclusive() {
            CoxStatus::Inconclusive
        } else {
            CoxStatus::Ok
        };
        match emit_string(report.to_json(), out) {
            CoxStatus::Ok => status,
            other => other,
        }
    })
}

/// Releases a string returned through any `out` parameter.  Null is a no-op.
///
/// # Safety
/// `s` must be null or a string previously returned by this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn cox_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// A static description of a status code; never needs freeing.
#[no_mangle]
pub extern "C" fn cox_status_message(status: CoxStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        CoxStatus::Ok => b"ok\0",
        CoxStatus::NullArgument => b"a required pointer argument was null\0",
        CoxStatus::InvalidSystem => b"the system description did not parse\0",
        CoxStatus::InvalidArgument => b"an argument was malformed\0",
        CoxStatus::CapExceeded => b"a configured cap was exceeded\0",
        CoxStatus::CheckFailed => b"a verified property failed\0",
        CoxStatus::Inconclusive => b"verification was inconclusive at this radius\0",
        CoxStatus::Panicked => b"internal panic; please report this\0",
    };
    msg.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn new_group(spec: &str) -> *mut CoxGroup {
        let c = CString::new(spec).unwrap();
        let mut handle: *mut CoxGroup = ptr::null_mut();
        let status = unsafe { cox_group_new(c.as_ptr(), &mut handle) };
        assert_eq!(status, CoxStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    fn take_string(s: *mut c_char) -> String {
        assert!(!s.is_null());
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        unsafe { cox_string_free(s) };
        text
    }

    #[test]
    fn lifecycle_and_counts() {
        let g = new_group("Atilde2");
        unsafe {
            assert_eq!(cox_group_rank(g), 3);
            let mut n = 0usize;
            assert_eq!(cox_small_root_count(g, 10_000, &mut n), CoxStatus::Ok);
            assert_eq!(n, 6);
            assert_eq!(cox_shi_part_count(g, 10_000, &mut n), CoxStatus::Ok);
            assert_eq!(n, 16);
            assert_eq!(cox_gate_count(g, 10_000, &mut n), CoxStatus::Ok);
            assert_eq!(n, 16);
            cox_group_free(g);
        }
    }

    #[test]
    fn describe_is_canonical() {
        let g = new_group("A2");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { cox_group_describe(g, &mut s) }, CoxStatus::Ok);
        assert_eq!(take_string(s), "rank 2; m 1 2 = 3");
        unsafe { cox_group_free(g) };
    }

    #[test]
    fn growth_json_matches_known_series() {
        let g = new_group("Ctilde2");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { cox_growth_json(g, 6, 10_000, &mut s) }, CoxStatus::Ok);
        assert_eq!(take_string(s), "[1, 3, 6, 10, 18, 28, 40]");
        unsafe { cox_group_free(g) };
    }

    #[test]
    fn verify_reports_status_and_json() {
        let g = new_group("B2");
        let suite = CString::new("all").unwrap();
        let mut s: *mut c_char = ptr::null_mut();
        let status = unsafe { cox_verify_json(g, suite.as_ptr(), 8, &mut s) };
        assert_eq!(status, CoxStatus::Ok);
        let text = take_string(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["system"], "rank 2; m 1 2 = 4");
        assert!(v["checks"].as_array().unwrap().len() > 10);
        unsafe { cox_group_free(g) };
    }

    #[test]
    fn error_paths() {
        unsafe {
            let mut handle: *mut CoxGroup = ptr::null_mut();
            assert_eq!(cox_group_new(ptr::null(), &mut handle), CoxStatus::NullArgument);
            let bad = CString::new("rank 99").unwrap();
            assert_eq!(cox_group_new(bad.as_ptr(), &mut handle), CoxStatus::InvalidSystem);
            assert_eq!(cox_group_rank(ptr::null()), 0);

            let g = new_group("A2");
            let mut n = 0usize;
            assert_eq!(cox_small_root_count(ptr::null(), 10, &mut n), CoxStatus::NullArgument);
            assert_eq!(cox_small_root_count(g, 1, &mut n), CoxStatus::CapExceeded);
            let bad_suite = CString::new("everything").unwrap();
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(cox_verify_json(g, bad_suite.as_ptr(), 4, &mut s), CoxStatus::InvalidArgument);
            cox_group_free(g);
            cox_string_free(ptr::null_mut());
            cox_group_free(ptr::null_mut());
        }
    }

    #[test]
    fn status_messages_are_static() {
        for status in [CoxStatus::Ok, CoxStatus::CapExceeded, CoxStatus::Panicked] {
            let p = cox_status_message(status);
            assert!(!p.is_null());
            assert!(!unsafe { CStr::from_ptr(p) }.to_str().unwrap().is_empty());
        }
    }
}
