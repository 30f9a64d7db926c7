//! C ABI over the verifier: opaque model handles, status codes and a
//! per-thread last-error message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use braided_rmatrix::exchange::transfer_commutator;
use braided_rmatrix::models::{build, ModelId, RModel};
use braided_rmatrix::param::ParamPoint;
use braided_rmatrix::sampling::{Sampler, SamplingConfig};
use braided_rmatrix::tensor::{CMatrix, C64};
use braided_rmatrix::verifier::{run_check, CheckId, Tolerances};
use braided_rmatrix::Error;

/// Status code returned by every function.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    Singular = 4,
    PoleProximity = 5,
    NotProportional = 6,
    WrongModel = 7,
    BranchCut = 8,
    SingularExchange = 9,
    MemoryBound = 10,
    SamplingExhausted = 11,
    Io = 12,
    BufferTooSmall = 13,
    NotApplicable = 14,
    Panic = 15,
}

impl From<&Error> for BrmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Dimension(_) | Error::InvalidLeg(_) => BrmStatus::Dimension,
            Error::Singular(_) => BrmStatus::Singular,
            Error::PoleProximity(_) => BrmStatus::PoleProximity,
            Error::NotProportional(_) => BrmStatus::NotProportional,
            Error::WrongModel { .. } => BrmStatus::WrongModel,
            Error::BranchCut(_) => BrmStatus::BranchCut,
            Error::SingularExchange(_) => BrmStatus::SingularExchange,
            Error::MemoryBound(_) => BrmStatus::MemoryBound,
            Error::SamplingExhausted(_) => BrmStatus::SamplingExhausted,
            Error::Config(_) => BrmStatus::InvalidArgument,
            Error::Io(_) => BrmStatus::Io,
        }
    }
}

/// Complex number with the layout of `double[2]`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BrmComplex {
    pub re: f64,
    pub im: f64,
}

impl TryFrom<i32> for BrmFamily {
    type Error = Failure;
    fn try_from(v: i32) -> Result<Self, Failure> {
        Ok(match v {
            0 => BrmFamily::A,
            1 => BrmFamily::B,
            2 => BrmFamily::C,
            3 => BrmFamily::D,
            _ => return Err(Failure(BrmStatus::InvalidArgument, format!("unknown family {v}"))),
        })
    }
}

impl From<BrmComplex> for C64 {
    fn from(z: BrmComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Quantum matrix family; passed to `brm_model_eval` as its integer value.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrmFamily {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

/// Opaque model handle.
pub struct BrmModel {
    inner: Box<dyn RModel>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

pub struct Failure(BrmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn null() -> Failure {
    Failure(BrmStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, recording the message of any failure or panic.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> BrmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BrmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BrmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(BrmStatus::InvalidArgument, "argument is not UTF-8".into()))
}

unsafe fn model_arg<'a>(m: *const BrmModel) -> Result<&'a dyn RModel, Failure> {
    m.as_ref().map(|m| m.inner.as_ref()).ok_or_else(null)
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(null)
}

/// Creates a model from its name (`csg`, `cp2`, `su3so3`, `gl44`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer. The
/// handle written to `*out` must be released with `brm_model_free`.
#[no_mangle]
pub unsafe extern "C" fn brm_model_new(name: *const c_char, out: *mut *mut BrmModel) -> BrmStatus {
    guarded(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let id: ModelId = str_arg(name)?.parse()?;
        *out = Box::into_raw(Box::new(BrmModel { inner: build(id) }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `model` must be null or a handle from `brm_model_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brm_model_free(model: *mut BrmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Writes the dimension `d` of the vector representation.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brm_model_dim(model: *const BrmModel, out: *mut usize) -> BrmStatus {
    guarded(|| {
        *out_arg(out)? = model_arg(model)?.dim();
        Ok(())
    })
}

/// Evaluates one quantum family (a `BrmFamily` value) at `(p, λ)` into a
/// row-major `d²×d²` buffer. `λ` is ignored for `B` and `C`.
///
/// # Safety
/// `model` must be a live handle; `out` must point to `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn brm_model_eval(
    model: *const BrmModel,
    family: i32,
    p: BrmComplex,
    lambda: BrmComplex,
    out: *mut BrmComplex,
    len: usize,
) -> BrmStatus {
    guarded(|| {
        let m = model_arg(model)?;
        if out.is_null() {
            return Err(null());
        }
        let (p, l) = (C64::from(p), C64::from(lambda));
        let x: CMatrix = match BrmFamily::try_from(family)? {
            BrmFamily::A => m.a_q(p, l)?,
            BrmFamily::B => m.b_q(p),
            BrmFamily::C => m.c_q(p),
            BrmFamily::D => m.d_q(p, l)?,
        };
        let n = x.as_slice().len();
        if len < n {
            return Err(Failure(BrmStatus::BufferTooSmall, format!("buffer needs {n} elements")));
        }
        let dst = std::slice::from_raw_parts_mut(out, n);
        for (d, s) in dst.iter_mut().zip(x.as_slice()) {
            *d = BrmComplex { re: s.re, im: s.im };
        }
        Ok(())
    })
}

/// Outcome of one check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BrmCheckResult {
    pub max_relative: f64,
    pub tolerance: f64,
    /// 1 when every sample passed.
    pub passed: i32,
    /// Number of evaluated samples.
    pub samples: usize,
}

/// Runs a catalogue check (e.g. `"QYBE_A"`) at `samples` seeded points with the default tolerances.
///
/// Returns `BRM_STATUS_NOT_APPLICABLE` when the identity is not a property of the model.
///
/// # Safety
/// `model` must be a live handle, `check` a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brm_run_check(
    model: *const BrmModel,
    check: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut BrmCheckResult,
) -> BrmStatus {
    guarded(|| {
        let m = model_arg(model)?;
        let out = out_arg(out)?;
        let id: CheckId = str_arg(check)?.parse()?;
        if samples == 0 {
            return Err(Failure(BrmStatus::InvalidArgument, "samples must be at least 1".into()));
        }
        let pts = Sampler::new(seed).points(m, samples, &SamplingConfig::for_model(m.id()))?;
        let r = run_check(m, id, &pts, &Tolerances::default())
            .ok_or_else(|| Failure(BrmStatus::NotApplicable, format!("{id} is not a property of {}", m.id())))?;
        *out = BrmCheckResult {
            max_relative: r.max_relative,
            tolerance: r.tolerance,
            passed: r.passed as i32,
            samples: r.samples.len(),
        };
        Ok(())
    })
}

/// Relative residual of `[t(λ), t(μ)]` after normal ordering, for `n_sites` 1 or 2.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brm_transfer_commutator(
    model: *const BrmModel,
    p: BrmComplex,
    lambda: BrmComplex,
    mu: BrmComplex,
    n_sites: usize,
    out: *mut f64,
) -> BrmStatus {
    guarded(|| {
        let m = model_arg(model)?;
        let out = out_arg(out)?;
        let pt = ParamPoint::new(p.into(), lambda.into(), mu.into());
        *out = transfer_commutator(m, &pt, n_sites)?.relative;
        Ok(())
    })
}

/// Copies the calling thread's last error message, NUL-terminated and truncated to `len`.
///
/// Returns the full message length excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn brm_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}
