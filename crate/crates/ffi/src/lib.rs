//! C ABI over `zeta2k`.
//!
//! Conventions:
//!
//! * Every fallible function returns a [`Zeta2kStatus`] and writes results
//!   through out-pointers, which are left untouched on failure.
//! * On failure a message is stored per thread; read it with
//!   [`zeta2k_last_error_message`].
//! * Strings returned to the caller are owned by the caller and must be
//!   released with [`zeta2k_string_free`].
//! * Panics never cross the boundary; they surface as
//!   [`Zeta2kStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use num_complex::Complex64;
use zeta2k::exact::format_rational;
use zeta2k::identity::Identity;
use zeta2k::{BernoulliTable, Error};

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zeta2kStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Input outside the domain: branch cut, pole or `w = 1`.
    Domain = 3,
    NonFinite = 4,
    InsufficientTerms = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zeta2kBernoulliMethod {
    Recurrence = 0,
    SeriesDivision = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zeta2kIdentity {
    Theorem = 0,
    Corollary = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Zeta2kComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Zeta2kComplex> for Complex64 {
    fn from(z: Zeta2kComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for Zeta2kComplex {
    fn from(z: Complex64) -> Self {
        Zeta2kComplex { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Zeta2kVerifyReport {
    pub lhs: Zeta2kComplex,
    pub rhs_partial: Zeta2kComplex,
    pub tail_estimate: Zeta2kComplex,
    pub remainder_bound: f64,
    pub discrepancy: f64,
    pub evaluation_epsilon: f64,
    pub pass: bool,
}

/// Opaque table of exact Bernoulli numbers `B_0..B_n`.
pub struct Zeta2kBernoulliTable {
    inner: BernoulliTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(error: &Error) -> Zeta2kStatus {
    match error {
        Error::InvalidArgument(_) | Error::DivisionByZeroSeries | Error::UnboundedQuotient => {
            Zeta2kStatus::InvalidArgument
        }
        Error::BranchCut { .. } | Error::UnitExcluded | Error::Pole(_) => Zeta2kStatus::Domain,
        Error::NonFinite { .. } => Zeta2kStatus::NonFinite,
        Error::InsufficientTerms { .. } => Zeta2kStatus::InsufficientTerms,
    }
}

fn fail(status: Zeta2kStatus, message: impl Into<Vec<u8>>) -> Zeta2kStatus {
    set_last_error(message);
    status
}

/// Runs `body` behind a panic guard and records the error message.
fn guard(body: impl FnOnce() -> Result<(), Zeta2kStatus> + UnwindSafe) -> Zeta2kStatus {
    clear_last_error();
    match catch_unwind(body) {
        Ok(Ok(())) => Zeta2kStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(Zeta2kStatus::Panic, message)
        }
    }
}

fn lift<T>(result: zeta2k::Result<T>) -> Result<T, Zeta2kStatus> {
    result.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Zeta2kStatus> {
    if p.is_null() {
        Err(fail(Zeta2kStatus::NullPointer, format!("{name} is NULL")))
    } else {
        Ok(())
    }
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior NUL").into_raw()
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn zeta2k_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `B_0..B_n` with the chosen method.
///
/// # Safety
/// `out` must be NULL or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_bernoulli_new(
    n: usize,
    method: Zeta2kBernoulliMethod,
    out: *mut *mut Zeta2kBernoulliTable,
) -> Zeta2kStatus {
    guard(move || {
        non_null(out, "out")?;
        let inner = match method {
            Zeta2kBernoulliMethod::Recurrence => zeta2k::bernoulli_recurrence(n),
            Zeta2kBernoulliMethod::SeriesDivision => zeta2k::bernoulli_series_division(n),
        };
        *out = Box::into_raw(Box::new(Zeta2kBernoulliTable { inner }));
        Ok(())
    })
}

/// Number of entries (`n + 1`), or 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_bernoulli_len(table: *const Zeta2kBernoulliTable) -> usize {
    table.as_ref().map_or(0, |t| t.inner.values().len())
}

/// Writes `B_k` as a newly allocated `"p/q"` string (or `"p"` when integral).
///
/// # Safety
/// `table` must be NULL or a live handle; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_bernoulli_get(
    table: *const Zeta2kBernoulliTable,
    k: usize,
    out: *mut *mut c_char,
) -> Zeta2kStatus {
    guard(move || {
        non_null(table, "table")?;
        non_null(out, "out")?;
        let table = &*table;
        let value = table.inner.get(k).ok_or_else(|| {
            fail(
                Zeta2kStatus::InvalidArgument,
                format!("index {k} beyond table maximum {}", table.inner.max_index()),
            )
        })?;
        *out = into_c_string(format_rational(value));
        Ok(())
    })
}

/// Releases a table. NULL is ignored.
///
/// # Safety
/// `table` must be NULL or a live handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_bernoulli_free(table: *mut Zeta2kBernoulliTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `ζ(2m) = q·π^{2m}`: writes `q` as a `"p/q"` string and the rounded value.
/// Either out-pointer may be NULL.
///
/// # Safety
/// Non-NULL out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_zeta_even(
    m: u32,
    out_q: *mut *mut c_char,
    out_value: *mut f64,
) -> Zeta2kStatus {
    guard(move || {
        let value = lift(zeta2k::zeta::zeta_even_exact(m))?;
        if !out_value.is_null() {
            *out_value = value.value();
        }
        if !out_q.is_null() {
            *out_q = into_c_string(format_rational(&value.q));
        }
        Ok(())
    })
}

/// Checks an identity at `input` with `terms` series terms.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_verify(
    identity: Zeta2kIdentity,
    input: Zeta2kComplex,
    terms: u64,
    out: *mut Zeta2kVerifyReport,
) -> Zeta2kStatus {
    guard(move || {
        non_null(out, "out")?;
        let identity = match identity {
            Zeta2kIdentity::Theorem => Identity::Theorem,
            Zeta2kIdentity::Corollary => Identity::Corollary,
        };
        let report = lift(zeta2k::verify(identity, input.into(), terms))?;
        *out = Zeta2kVerifyReport {
            lhs: report.lhs.into(),
            rhs_partial: report.rhs_partial.into(),
            tail_estimate: report.tail_estimate.into(),
            remainder_bound: report.remainder_bound,
            discrepancy: report.discrepancy,
            evaluation_epsilon: report.evaluation_epsilon,
            pass: report.pass,
        };
        Ok(())
    })
}

/// Truncated product `P_N(z)` for `e^z - w` with `2N + 1` zeros.
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zeta2k_hadamard_product(
    w: Zeta2kComplex,
    z: Zeta2kComplex,
    half_count: u64,
    out: *mut Zeta2kComplex,
) -> Zeta2kStatus {
    guard(move || {
        non_null(out, "out")?;
        *out = lift(zeta2k::truncated_product(w.into(), z.into(), half_count))?.into();
        Ok(())
    })
}
