//! C ABI over `boolecode`.
//!
//! Schemes are opaque handles built from the same JSON config the CLI reads.
//! Every fallible call returns a [`BcStatus`]; on failure the message is
//! available from [`bc_last_error`] until the next failing call on the same
//! thread. Strings returned through `char **` are owned by the caller and
//! released with [`bc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use boolecode::schemes::{outer_bound, security_threshold, AnyScheme, SchemeConfig, SchemeKind, ThresholdParams};
use boolecode::simulator::{AdversaryModel, FailureKind, Strategy, SweepOptions};

/// Passed for an absent optional parameter; `SIZE_MAX` in the header.
pub const BC_UNSET: usize = usize::MAX;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    InvalidArgument = 4,
    Simulation = 5,
    Serialization = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcSchemeKind {
    LccDirect = 0,
    Anf = 1,
    Dnf = 2,
    Ptf = 3,
    DPtf = 4,
    DataLog = 5,
    DataAug = 6,
}

impl From<BcSchemeKind> for SchemeKind {
    fn from(k: BcSchemeKind) -> Self {
        match k {
            BcSchemeKind::LccDirect => SchemeKind::LccDirect,
            BcSchemeKind::Anf => SchemeKind::Anf,
            BcSchemeKind::Dnf => SchemeKind::Dnf,
            BcSchemeKind::Ptf => SchemeKind::Ptf,
            BcSchemeKind::DPtf => SchemeKind::DPtf,
            BcSchemeKind::DataLog => SchemeKind::DataLog,
            BcSchemeKind::DataAug => SchemeKind::DataAug,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcStrategy {
    RandomReplace = 0,
    AdditiveOffset = 1,
    CodewordTargeted = 2,
    Erase = 3,
}

impl From<BcStrategy> for Strategy {
    fn from(s: BcStrategy) -> Self {
        match s {
            BcStrategy::RandomReplace => Strategy::RandomReplace,
            BcStrategy::AdditiveOffset => Strategy::AdditiveOffset,
            BcStrategy::CodewordTargeted => Strategy::CodewordTargeted,
            BcStrategy::Erase => Strategy::Erase,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcFailure {
    None = 0,
    WrongValue = 1,
    DecodeFailure = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BcThreshold {
    pub beta: usize,
    pub feasible: bool,
}

/// Formula inputs; optional fields take [`BC_UNSET`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct BcThresholdParams {
    pub n: usize,
    pub k: usize,
    pub weight: usize,
    pub degree: usize,
    pub d: usize,
    pub q: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BcTrialResult {
    pub success: bool,
    pub failure: BcFailure,
}

/// Opaque scheme handle.
pub struct BcScheme {
    inner: AnyScheme,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: BcStatus, msg: impl Into<String>) -> BcStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> BcStatus) -> BcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(BcStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BcStatus> {
    if s.is_null() {
        return Err(fail(BcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(BcStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BcStatus::Ok
        }
        Err(e) => fail(BcStatus::Serialization, e.to_string()),
    }
}

fn opt(v: usize) -> Option<usize> {
    (v != BC_UNSET).then_some(v)
}

/// Message of the last failure on this thread, or null. Borrowed; valid
/// until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn bc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn bc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn bc_outer_bound(n: usize, k: usize) -> usize {
    outer_bound(n, k)
}

/// Closed-form threshold of a scheme kind.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_security_threshold(
    kind: BcSchemeKind,
    params: BcThresholdParams,
    out: *mut BcThreshold,
) -> BcStatus {
    guard(|| {
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        let p = ThresholdParams {
            n: params.n,
            k: params.k,
            weight: opt(params.weight),
            degree: opt(params.degree),
            d: opt(params.d),
            q: opt(params.q),
        };
        match security_threshold(kind.into(), &p) {
            Ok(t) => {
                *out = BcThreshold {
                    beta: t.beta,
                    feasible: t.feasible,
                };
                BcStatus::Ok
            }
            Err(e) => fail(BcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Builds a scheme from a JSON config
/// (`{"scheme": "anf", "n": 10, "k": 4, "function": {...}}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_from_json(json: *const c_char, out: *mut *mut BcScheme) -> BcStatus {
    guard(|| {
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cfg: SchemeConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return fail(BcStatus::InvalidConfig, e.to_string()),
        };
        match cfg.build() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(BcScheme { inner }));
                BcStatus::Ok
            }
            Err(e) => fail(BcStatus::InvalidConfig, e.to_string()),
        }
    })
}

/// Null is a no-op.
///
/// # Safety
/// `scheme` must come from [`bc_scheme_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_free(scheme: *mut BcScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

unsafe fn scheme_ref<'a>(s: *const BcScheme) -> Result<&'a AnyScheme, BcStatus> {
    s.as_ref()
        .map(|s| &s.inner)
        .ok_or_else(|| fail(BcStatus::NullPointer, "null scheme handle"))
}

/// # Safety
/// `scheme` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_threshold(scheme: *const BcScheme, out: *mut BcThreshold) -> BcStatus {
    guard(|| {
        let s = match scheme_ref(scheme) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        let t = s.threshold();
        *out = BcThreshold {
            beta: t.beta,
            feasible: t.feasible,
        };
        BcStatus::Ok
    })
}

/// Static description as JSON; free with [`bc_string_free`].
///
/// # Safety
/// `scheme` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_summary_json(scheme: *const BcScheme, out: *mut *mut c_char) -> BcStatus {
    guard(|| {
        let s = match scheme_ref(scheme) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        match serde_json::to_string(&s.summary()) {
            Ok(j) => write_string(out, j),
            Err(e) => fail(BcStatus::Serialization, e.to_string()),
        }
    })
}

/// One seeded trial with `b` adversaries.
///
/// # Safety
/// `scheme` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_run_trial(
    scheme: *const BcScheme,
    b: usize,
    strategy: BcStrategy,
    seed: u64,
    out: *mut BcTrialResult,
) -> BcStatus {
    guard(|| {
        let s = match scheme_ref(scheme) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        let adv = AdversaryModel {
            count: b,
            strategy: strategy.into(),
            seed,
        };
        match s.run_trial(&adv) {
            Ok(o) => {
                *out = BcTrialResult {
                    success: o.success,
                    failure: match o.failure {
                        None => BcFailure::None,
                        Some(FailureKind::WrongValue) => BcFailure::WrongValue,
                        Some(FailureKind::DecodeFailure) => BcFailure::DecodeFailure,
                    },
                };
                BcStatus::Ok
            }
            Err(e) => fail(BcStatus::Simulation, e.to_string()),
        }
    })
}

/// Threshold sweep over `b = 0..=min(N, outer bound + 1)`; the report is
/// written as JSON. Free with [`bc_string_free`].
///
/// # Safety
/// `scheme` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_scheme_sweep_json(
    scheme: *const BcScheme,
    trials: usize,
    strategy: BcStrategy,
    seed: u64,
    out: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let s = match scheme_ref(scheme) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if out.is_null() {
            return fail(BcStatus::NullPointer, "null output pointer");
        }
        let opts = SweepOptions {
            trials,
            b_values: None,
            strategy: strategy.into(),
            seed,
        };
        let report = match s.sweep(&opts) {
            Ok(r) => r,
            Err(e) => return fail(BcStatus::Simulation, e.to_string()),
        };
        match serde_json::to_string(&report) {
            Ok(j) => write_string(out, j),
            Err(e) => fail(BcStatus::Serialization, e.to_string()),
        }
    })
}
