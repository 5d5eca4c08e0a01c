//! C ABI for the `colorlie` library.
//!
//! Algebras are passed around as opaque [`ColorlieAlgebra`] handles created by
//! [`colorlie_algebra_from_json`] and released with [`colorlie_algebra_free`].
//! Every fallible call returns a [`ColorlieStatus`]; on failure a message is
//! available from [`colorlie_last_error`] on the calling thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with [`colorlie_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use colorlie::cochain::{cohomology_dims, is_graded_rigid};
use colorlie::definition::{parse_definition_str, Definition};
use colorlie::enveloping::{render_u, EnvelopingAlgebra};
use colorlie::expr::parse_word;
use colorlie::poisson::{parse_sym, render_star, star_product};
use colorlie::representation::ModuleSpec;
use colorlie::{Error, Scalar};

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorlieStatus {
    Ok = 0,
    /// A mathematical check failed (invalid axioms, non-cocycle, defective deformation).
    MathFailure = 1,
    /// Malformed input: JSON, names, degrees, scalar literals.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Coefficient module for cohomology.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorlieModule {
    Adjoint = 0,
    Trivial = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColorlieCohomologyDims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// Opaque handle to a parsed algebra definition.
pub struct ColorlieAlgebra {
    def: Definition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> ColorlieStatus {
    match e {
        Error::InvalidAlgebra(_) | Error::InvalidModule(_) | Error::NotACocycle(_) | Error::DefectiveDeformation(_) => {
            ColorlieStatus::MathFailure
        }
        _ => ColorlieStatus::InputError,
    }
}

struct Failure(ColorlieStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ColorlieStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ColorlieStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal error".into());
            ColorlieStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ColorlieStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ColorlieStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(alg: *const ColorlieAlgebra) -> Result<&'a ColorlieAlgebra, Failure> {
    alg.as_ref().ok_or_else(|| Failure(ColorlieStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ColorlieStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ColorlieStatus::Internal, "result contains a nul byte".into()))?;
    write_out(out, c.into_raw())
}

/// Parses a JSON algebra definition. With `verify` the color Lie axioms are
/// checked and a violation yields `COLORLIE_STATUS_MATH_FAILURE`.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_from_json(
    json: *const c_char,
    verify: bool,
    out: *mut *mut ColorlieAlgebra,
) -> ColorlieStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let def = parse_definition_str(text, verify)?;
        write_out(out, Box::into_raw(Box::new(ColorlieAlgebra { def })))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `alg` must come from [`colorlie_algebra_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_free(alg: *mut ColorlieAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_dimension(alg: *const ColorlieAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.def.algebra.dim())
}

/// Runs all axiom checks; `*valid` receives the verdict and, when false, the
/// report is available through [`colorlie_last_error`].
///
/// # Safety
/// `alg` must be a live handle and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_verify(alg: *const ColorlieAlgebra, valid: *mut bool) -> ColorlieStatus {
    guard(|| {
        let report = handle(alg)?.def.algebra.verify_all();
        write_out(valid, report.is_valid())?;
        if !report.is_valid() {
            set_last_error(report.to_string());
        }
        Ok(())
    })
}

/// `dim C^n, Z^n, B^n, H^n` in degree `degree` (`"e"`, `"1"`, `"1,0"`, …).
///
/// # Safety
/// `alg` must be a live handle, `degree` a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_cohomology_dims(
    alg: *const ColorlieAlgebra,
    n: usize,
    degree: *const c_char,
    module: ColorlieModule,
    out: *mut ColorlieCohomologyDims,
) -> ColorlieStatus {
    guard(|| {
        let a = &handle(alg)?.def.algebra;
        let g = a.group().parse_element(str_arg(degree, "degree")?)?;
        let spec = match module {
            ColorlieModule::Adjoint => ModuleSpec::Adjoint,
            ColorlieModule::Trivial => ModuleSpec::Trivial,
        };
        let d = cohomology_dims(a, &spec, n, &g);
        write_out(
            out,
            ColorlieCohomologyDims {
                cochains: d.cochains,
                cocycles: d.cocycles,
                coboundaries: d.coboundaries,
                cohomology: d.cohomology,
            },
        )
    })
}

/// Graded rigidity; `h2_dim` may be null.
///
/// # Safety
/// `alg` must be a live handle, `rigid` a valid pointer, `h2_dim` null or valid.
#[no_mangle]
pub unsafe extern "C" fn colorlie_is_rigid(alg: *const ColorlieAlgebra, rigid: *mut bool, h2_dim: *mut usize) -> ColorlieStatus {
    guard(|| {
        let r = is_graded_rigid(&handle(alg)?.def.algebra);
        write_out(rigid, r.rigid)?;
        if !h2_dim.is_null() {
            h2_dim.write(r.h2_dim);
        }
        Ok(())
    })
}

/// PBW normal form of a word such as `"f*e"` or `"f e"`.
///
/// # Safety
/// `alg` must be a live handle, `word` a valid string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_pbw_normalize(
    alg: *const ColorlieAlgebra,
    word: *const c_char,
    out: *mut *mut c_char,
) -> ColorlieStatus {
    guard(|| {
        let a = &handle(alg)?.def.algebra;
        let names = parse_word(&[str_arg(word, "word")?.to_string()]);
        let idx = a.word_indices(&names)?;
        let nf = EnvelopingAlgebra::new(a).pbw_normal_form(&idx, Scalar::one())?;
        write_string(out, render_u(a, &nf))
    })
}

/// Product of two expressions in `U(g)`.
///
/// # Safety
/// `alg` must be a live handle, `u`, `v` valid strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_multiply(
    alg: *const ColorlieAlgebra,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> ColorlieStatus {
    guard(|| {
        let a = &handle(alg)?.def.algebra;
        let env = EnvelopingAlgebra::new(a);
        let x = env.parse(str_arg(u, "u")?)?;
        let y = env.parse(str_arg(v, "v")?)?;
        write_string(out, render_u(a, &env.multiply(&x, &y)))
    })
}

/// Star product of two expressions in the associated graded algebra, truncated at `t^order`.
///
/// # Safety
/// `alg` must be a live handle, `u`, `v` valid strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn colorlie_star(
    alg: *const ColorlieAlgebra,
    u: *const c_char,
    v: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> ColorlieStatus {
    guard(|| {
        let a = &handle(alg)?.def.algebra;
        let env = EnvelopingAlgebra::new(a);
        let x = parse_sym(a, str_arg(u, "u")?)?;
        let y = parse_sym(a, str_arg(v, "v")?)?;
        write_string(out, render_star(a, &star_product(&env, &x, &y, order)))
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn colorlie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn colorlie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
