//! C ABI over `lu-invariants`.
//!
//! States and fingerprints are opaque heap handles released with their
//! `_free` function. Every fallible call returns an [`LuStatus`]; on failure
//! the message is available from [`luinv_last_error_message`] on the same
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lu_invariants::{
    compare, fingerprint, random_density, read_state, validate, write_state, DensityMatrix, Error,
    InvariantFingerprint, InvariantSettings, RngSeed, VerdictStatus, C64,
};
use nalgebra::DMatrix;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Validation = 4,
    Numerical = 5,
    Incomparable = 6,
    Io = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A validated density matrix.
pub struct LuState(DensityMatrix);

/// A computed invariant fingerprint.
pub struct LuFingerprint(InvariantFingerprint);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(LuStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => LuStatus::Parse,
            Error::Io { .. } => LuStatus::Io,
            Error::Incomparable(_) => LuStatus::Incomparable,
            Error::InvalidArgument(_) | Error::InvalidPivot(_) | Error::RankOutOfRange { .. } => {
                LuStatus::InvalidArgument
            }
            Error::ImaginaryResidue { .. }
            | Error::NotSpecialUnitary(_)
            | Error::NotSpecialOrthogonal(_) => LuStatus::Numerical,
            _ => LuStatus::Validation,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LuStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LuStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LuStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            LuStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn path_arg(path: *const c_char) -> Result<String, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(LuStatus::InvalidArgument, "path is not UTF-8".into()))
}

unsafe fn dims_arg(dims: *const usize, parties: usize) -> Result<Vec<usize>, Failure> {
    if dims.is_null() {
        return Err(null("dims"));
    }
    Ok(std::slice::from_raw_parts(dims, parties).to_vec())
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed_state(out: *mut *mut LuState, state: DensityMatrix) -> Result<(), Failure> {
    unsafe { put(out, Box::into_raw(Box::new(LuState(state))), "out") }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn luinv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads and validates a JSON state file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_read(path: *const c_char, out: *mut *mut LuState) -> LuStatus {
    guard(|| {
        let path = path_arg(path)?;
        boxed_state(out, read_state(path)?)
    })
}

/// Builds a state from a row-major `side × side` matrix, `side = Π dims`.
/// `imag` may be null for a real matrix.
///
/// # Safety
/// `dims` must hold `parties` values; `real` (and `imag` when non-null) must
/// hold `side²` values.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_from_parts(
    dims: *const usize,
    parties: usize,
    real: *const f64,
    imag: *const f64,
    out: *mut *mut LuState,
) -> LuStatus {
    guard(|| {
        let dims = dims_arg(dims, parties)?;
        if real.is_null() {
            return Err(null("real"));
        }
        let side = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&s| s.checked_mul(s).is_some())
            .ok_or_else(|| Failure(LuStatus::InvalidArgument, "dimensions overflow".into()))?;
        let re = std::slice::from_raw_parts(real, side * side);
        let im = (!imag.is_null()).then(|| std::slice::from_raw_parts(imag, side * side));
        let matrix = DMatrix::from_fn(side, side, |r, c| {
            C64::new(re[r * side + c], im.map_or(0.0, |im| im[r * side + c]))
        });
        boxed_state(out, validate(matrix, &dims)?)
    })
}

/// Draws a random state of the given rank (0 means full rank).
///
/// # Safety
/// `dims` must hold `parties` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_random(
    dims: *const usize,
    parties: usize,
    rank: usize,
    seed: u64,
    out: *mut *mut LuState,
) -> LuStatus {
    guard(|| {
        let dims = dims_arg(dims, parties)?;
        let rank = if rank == 0 {
            dims.iter().product()
        } else {
            rank
        };
        boxed_state(out, random_density(&dims, rank, RngSeed(seed))?)
    })
}

/// Writes a state in the JSON state format.
///
/// # Safety
/// `state` must come from this library and `path` be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_write(state: *const LuState, path: *const c_char) -> LuStatus {
    guard(|| {
        let state = as_ref(state, "state")?;
        let path = path_arg(path)?;
        Ok(write_state(&state.0, path)?)
    })
}

/// Number of parties, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_parties(state: *const LuState) -> usize {
    state.as_ref().map_or(0, |s| s.0.parties())
}

/// # Safety
/// `state` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn luinv_state_free(state: *mut LuState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Computes the fingerprint. Negative `max_alpha` / `max_beta` select the
/// default power ranges; `max_beta = 0` is rejected.
///
/// # Safety
/// `state` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_compute(
    state: *const LuState,
    max_alpha: i64,
    max_beta: i64,
    out: *mut *mut LuFingerprint,
) -> LuStatus {
    guard(|| {
        let state = as_ref(state, "state")?;
        let settings = InvariantSettings {
            max_alpha: usize::try_from(max_alpha).ok(),
            max_beta: usize::try_from(max_beta).ok(),
        };
        let fp = fingerprint(&state.0, &settings)?;
        put(out, Box::into_raw(Box::new(LuFingerprint(fp))), "out")
    })
}

/// Number of entries, or 0 for a null handle.
///
/// # Safety
/// `fp` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_len(fp: *const LuFingerprint) -> usize {
    fp.as_ref().map_or(0, |f| f.0.len())
}

fn entry(fp: &LuFingerprint, index: usize) -> Result<&(lu_invariants::InvariantKey, f64), Failure> {
    fp.0.entries().get(index).ok_or_else(|| {
        Failure(
            LuStatus::InvalidArgument,
            format!("index {index} out of range for {} entries", fp.0.len()),
        )
    })
}

/// Value of the entry at `index` (canonical key order).
///
/// # Safety
/// `fp` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_value(
    fp: *const LuFingerprint,
    index: usize,
    out: *mut f64,
) -> LuStatus {
    guard(|| {
        let (_, value) = entry(as_ref(fp, "fingerprint")?, index)?;
        put(out, *value, "out")
    })
}

/// Copies the key at `index` into `buf` with a trailing NUL. `needed`, when
/// non-null, receives the key length without the NUL; a short buffer yields
/// `BufferTooSmall` and is left untouched.
///
/// # Safety
/// `fp` must come from this library; `buf` must hold `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_key(
    fp: *const LuFingerprint,
    index: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> LuStatus {
    guard(|| {
        let (key, _) = entry(as_ref(fp, "fingerprint")?, index)?;
        let key = key.to_string();
        if !needed.is_null() {
            needed.write(key.len());
        }
        if buf.is_null() || buf_len <= key.len() {
            return Err(Failure(
                LuStatus::BufferTooSmall,
                format!("key needs {} bytes", key.len() + 1),
            ));
        }
        ptr::copy_nonoverlapping(key.as_ptr().cast::<c_char>(), buf, key.len());
        buf.add(key.len()).write(0);
        Ok(())
    })
}

/// Looks a value up by key, e.g. `"T1.iii.beta=1"`.
///
/// # Safety
/// `fp` must come from this library, `key` be NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_get(
    fp: *const LuFingerprint,
    key: *const c_char,
    out: *mut f64,
) -> LuStatus {
    guard(|| {
        let fp = as_ref(fp, "fingerprint")?;
        let key = path_arg(key)?;
        let value =
            fp.0.get(&key)
                .ok_or_else(|| Failure(LuStatus::InvalidArgument, format!("no entry `{key}`")))?;
        put(out, value, "out")
    })
}

/// JSON report of the fingerprint; release with [`luinv_string_free`].
///
/// # Safety
/// `fp` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_to_json(
    fp: *const LuFingerprint,
    out: *mut *mut c_char,
) -> LuStatus {
    guard(|| {
        let fp = as_ref(fp, "fingerprint")?;
        let text =
            lu_invariants::report::render_fingerprint(&fp.0, lu_invariants::report::Format::Json);
        let text = CString::new(text).expect("JSON has no NUL");
        put(out, text.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn luinv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `fp` must be null or come from this library, and not be used again.
#[no_mangle]
pub unsafe extern "C" fn luinv_fingerprint_free(fp: *mut LuFingerprint) {
    if !fp.is_null() {
        drop(Box::from_raw(fp));
    }
}

/// Compares two fingerprints. `distinct` receives 1 for DISTINCT and 0 for
/// INCONCLUSIVE; `witnesses` (optional) the number of differing entries.
/// Fingerprints of different shapes give `Incomparable`.
///
/// # Safety
/// `a` and `b` must come from this library; `distinct` must be writable.
#[no_mangle]
pub unsafe extern "C" fn luinv_compare(
    a: *const LuFingerprint,
    b: *const LuFingerprint,
    tolerance: f64,
    distinct: *mut i32,
    witnesses: *mut usize,
) -> LuStatus {
    guard(|| {
        let verdict = compare(&as_ref(a, "a")?.0, &as_ref(b, "b")?.0, tolerance)?;
        put(
            distinct,
            i32::from(verdict.status == VerdictStatus::Distinct),
            "distinct",
        )?;
        if !witnesses.is_null() {
            witnesses.write(verdict.witnesses.len());
        }
        Ok(())
    })
}
