//! C ABI over `kato-core`.
//!
//! Sequences live behind an opaque `KatoSequence*` created by
//! `kato_sequence_parse` or `kato_sequence_from_entries` and released with
//! `kato_sequence_free`. Every fallible call returns a `KatoStatus`; on
//! failure `kato_last_error_message` describes the error for the calling
//! thread. Strings handed out by the library must be released with
//! `kato_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kato_core::chern::{index_from_tip_fraction, solve_adjunction, tip_multiplicity};
use kato_core::deform::deformation_report;
use kato_core::germ::{build_germ, classify_hermitian, HermitianClass};
use kato_core::graph::build_dual_graph;
use kato_core::report::{build_report, to_dot, to_json};
use kato_core::sequence::{parse_any, parse_expanded_with};
use kato_core::{DlousskySequence, Error, Limits, SurfaceClass};
use num_complex::Complex64;

/// Opaque handle to a validated, canonically rotated sequence.
pub struct KatoSequence {
    inner: DlousskySequence,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KatoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    TooLarge = 4,
    NotSimple = 5,
    SelfLoop = 6,
    SingularSystem = 7,
    IndexNotOne = 8,
    ZeroParameter = 9,
    EpsilonInconsistent = 10,
    ParameterCount = 11,
    InvalidArgument = 12,
    Overflow = 13,
    Unavailable = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KatoClass {
    Enoki = 0,
    InoueHirzebruch = 1,
    IntermediateSimple = 2,
    IntermediateMultiTree = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KatoHermitian {
    AnticanonicalCandidate = 0,
    VectorFieldCandidate = 1,
    BiHermitianCandidate = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KatoDeformation {
    pub b: u64,
    pub l_total: u64,
    pub epsilon: u8,
    pub eta: u8,
    pub chi_tangent: i64,
    pub chi_log: i64,
    pub h1_log: u64,
    pub h1_theta_minus_d: u64,
    pub h1_normal: u64,
    pub h0_theta_d: u64,
    pub via_double_cover: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("no interior nul")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> KatoStatus {
    match e {
        Error::Syntax { .. }
        | Error::BlockLength { .. }
        | Error::Empty
        | Error::EntryTooSmall { .. }
        | Error::Inconsistent { .. } => KatoStatus::Parse,
        Error::TooLarge { .. } => KatoStatus::TooLarge,
        Error::NotSimple { .. } => KatoStatus::NotSimple,
        Error::SelfLoopUnsupported { .. } => KatoStatus::SelfLoop,
        Error::SingularSystem { .. } => KatoStatus::SingularSystem,
        Error::IndexNotOne { .. } => KatoStatus::IndexNotOne,
        Error::ZeroParameter => KatoStatus::ZeroParameter,
        Error::EpsilonInconsistent { .. } => KatoStatus::EpsilonInconsistent,
        Error::ParameterCount { .. } => KatoStatus::ParameterCount,
        Error::ExponentOverflow(_) => KatoStatus::Overflow,
        Error::InvalidEpsilon(_) | Error::EmptyArguments | Error::MalformedGraph(_) => {
            KatoStatus::InvalidArgument
        }
    }
}

struct Fail(KatoStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording its error message and turning panics into
/// `KatoStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KatoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            KatoStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KatoStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(KatoStatus::NullPointer, format!("{what} is null"))
}

unsafe fn sequence<'a>(seq: *const KatoSequence) -> Result<&'a DlousskySequence, Fail> {
    seq.as_ref()
        .map(|s| &s.inner)
        .ok_or_else(|| null("sequence"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Fail> {
    let c = CString::new(text).map_err(|_| {
        Fail(
            KatoStatus::InvalidArgument,
            "string holds a nul byte".into(),
        )
    })?;
    write_out(out, c.into_raw())
}

fn limits(max_b2: usize) -> Limits {
    if max_b2 == 0 {
        Limits::from_env()
    } else {
        Limits { max_b2 }
    }
}

fn box_sequence(inner: DlousskySequence) -> *mut KatoSequence {
    Box::into_raw(Box::new(KatoSequence { inner }))
}

/// Parses `"[s2 r2]"` or `"4,2,2,2"`. `max_b2 = 0` uses the default bound
/// (or `KATO_MAX_B2`).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_parse(
    text: *const c_char,
    max_b2: usize,
    out: *mut *mut KatoSequence,
) -> KatoStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Fail(KatoStatus::InvalidUtf8, e.to_string()))?;
        let seq = parse_any(text, &limits(max_b2))?;
        write_out(out, box_sequence(seq))
    })
}

/// Builds a sequence from `len` expanded entries.
///
/// # Safety
/// `entries` must point to `len` readable values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_from_entries(
    entries: *const u32,
    len: usize,
    max_b2: usize,
    out: *mut *mut KatoSequence,
) -> KatoStatus {
    guard(|| {
        if entries.is_null() && len > 0 {
            return Err(null("entries"));
        }
        let values: Vec<i64> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(entries, len)
                .iter()
                .map(|&v| i64::from(v))
                .collect()
        };
        let seq = parse_expanded_with(&values, &limits(max_b2))?;
        write_out(out, box_sequence(seq))
    })
}

/// # Safety
/// `seq` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_free(seq: *mut KatoSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Second Betti number; 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_b2(seq: *const KatoSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.inner.b2())
}

/// Sum of the entries; 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_dloussky_number(seq: *const KatoSequence) -> u64 {
    seq.as_ref().map_or(0, |s| s.inner.dloussky_number())
}

/// Canonical symbolic form, e.g. `"[s2 r2]"`.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_symbolic(
    seq: *const KatoSequence,
    out: *mut *mut c_char,
) -> KatoStatus {
    guard(|| write_string(out, sequence(seq)?.symbolic()))
}

/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_sequence_class(
    seq: *const KatoSequence,
    out: *mut KatoClass,
) -> KatoStatus {
    guard(|| {
        let class = match sequence(seq)?.classify() {
            SurfaceClass::Enoki => KatoClass::Enoki,
            SurfaceClass::InoueHirzebruch => KatoClass::InoueHirzebruch,
            SurfaceClass::Intermediate { simple: true, .. } => KatoClass::IntermediateSimple,
            SurfaceClass::Intermediate { .. } => KatoClass::IntermediateMultiTree,
        };
        write_out(out, class)
    })
}

/// Index of the surface. Fails with `KATO_STATUS_UNAVAILABLE` for Enoki and
/// nodal Inoue-Hirzebruch graphs, `KATO_STATUS_OVERFLOW` beyond 64 bits.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_index(seq: *const KatoSequence, out: *mut u64) -> KatoStatus {
    guard(|| {
        let s = sequence(seq)?;
        let index = if s.is_simple() {
            index_from_tip_fraction(s)?
        } else {
            solve_adjunction(&build_dual_graph(s))
                .map_err(|e| Fail(KatoStatus::Unavailable, e.to_string()))?
                .index
        };
        let value = u64::try_from(&index)
            .map_err(|_| Fail(KatoStatus::Overflow, format!("index {index}")))?;
        write_out(out, value)
    })
}

/// Tip multiplicity of a simple sequence as `"num/den"`.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_tip_multiplicity(
    seq: *const KatoSequence,
    out: *mut *mut c_char,
) -> KatoStatus {
    guard(|| write_string(out, tip_multiplicity(sequence(seq)?)?.to_string()))
}

/// Full invariant report as JSON; `epsilon` is 0 or 1.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_report_json(
    seq: *const KatoSequence,
    epsilon: u8,
    out: *mut *mut c_char,
) -> KatoStatus {
    guard(|| write_string(out, to_json(&build_report(sequence(seq)?, epsilon)?)))
}

/// Dual graph in DOT format.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_graph_dot(
    seq: *const KatoSequence,
    out: *mut *mut c_char,
) -> KatoStatus {
    guard(|| write_string(out, to_dot(sequence(seq)?)))
}

/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_deformation(
    seq: *const KatoSequence,
    epsilon: u8,
    out: *mut KatoDeformation,
) -> KatoStatus {
    guard(|| {
        let r = deformation_report(sequence(seq)?, epsilon)?;
        write_out(
            out,
            KatoDeformation {
                b: r.b,
                l_total: r.l_total,
                epsilon: r.epsilon,
                eta: r.eta,
                chi_tangent: r.chi_tangent,
                chi_log: r.chi_log,
                h1_log: r.h1_log,
                h1_theta_minus_d: r.h1_theta_minus_d,
                h1_normal: r.h1_normal,
                h0_theta_d: r.h0_theta_d,
                via_double_cover: r.via_double_cover,
            },
        )
    })
}

/// Evaluates the germ at `z = (re1, im1, re2, im2)`, writing the image in
/// the same layout to `out`. `params` holds `n_params` interleaved
/// `(re, im)` pairs: `a_0 … a_(l-1), a_(l+K)`. Returns
/// `KATO_STATUS_OVERFLOW` if the result is not finite (the values are still
/// written).
///
/// # Safety
/// `params` must hold `2 * n_params` doubles, `z` and `out` four each.
#[no_mangle]
pub unsafe extern "C" fn kato_germ_eval(
    seq: *const KatoSequence,
    params: *const f64,
    n_params: usize,
    generic: c_int,
    z: *const f64,
    out: *mut f64,
) -> KatoStatus {
    guard(|| {
        let s = sequence(seq)?;
        if (params.is_null() && n_params > 0) || z.is_null() || out.is_null() {
            return Err(null("params, z or out"));
        }
        let raw = if n_params == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(params, 2 * n_params)
        };
        let a: Vec<Complex64> = raw
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        let germ = build_germ(s, &a, generic != 0)?;
        let z = std::slice::from_raw_parts(z, 4);
        let v = germ.eval(Complex64::new(z[0], z[1]), Complex64::new(z[2], z[3]));
        let out = std::slice::from_raw_parts_mut(out, 4);
        out.copy_from_slice(&[v.z1.re, v.z1.im, v.z2.re, v.z2.im]);
        if !v.finite {
            return Err(Fail(
                KatoStatus::Overflow,
                "germ value is not finite".into(),
            ));
        }
        Ok(())
    })
}

/// Classifies an index-1 surface by `|a₀|`.
///
/// # Safety
/// `seq` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kato_classify_hermitian(
    seq: *const KatoSequence,
    a0_re: f64,
    a0_im: f64,
    out: *mut KatoHermitian,
) -> KatoStatus {
    guard(|| {
        let class = match classify_hermitian(sequence(seq)?, Complex64::new(a0_re, a0_im))? {
            HermitianClass::AnticanonicalCandidate => KatoHermitian::AnticanonicalCandidate,
            HermitianClass::VectorFieldCandidate => KatoHermitian::VectorFieldCandidate,
            HermitianClass::BiHermitianCandidate => KatoHermitian::BiHermitianCandidate,
        };
        write_out(out, class)
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kato_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn kato_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn kato_status_message(status: KatoStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        KatoStatus::Ok => b"ok\0",
        KatoStatus::NullPointer => b"null pointer argument\0",
        KatoStatus::InvalidUtf8 => b"text is not valid UTF-8\0",
        KatoStatus::Parse => b"invalid sequence\0",
        KatoStatus::TooLarge => b"b2 exceeds the configured bound\0",
        KatoStatus::NotSimple => b"operation needs a simple intermediate sequence\0",
        KatoStatus::SelfLoop => b"nodal curve (self-loop) is not supported here\0",
        KatoStatus::SingularSystem => b"adjunction system is singular\0",
        KatoStatus::IndexNotOne => b"index is not 1\0",
        KatoStatus::ZeroParameter => b"a0 must be nonzero\0",
        KatoStatus::EpsilonInconsistent => b"epsilon = 1 needs index 1\0",
        KatoStatus::ParameterCount => b"wrong number of germ parameters\0",
        KatoStatus::InvalidArgument => b"invalid argument\0",
        KatoStatus::Overflow => b"value does not fit the output type\0",
        KatoStatus::Unavailable => b"value is not defined for this sequence\0",
        KatoStatus::Panic => b"internal error\0",
    };
    text.as_ptr().cast()
}
