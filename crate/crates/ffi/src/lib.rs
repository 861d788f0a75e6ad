//! C interface to `multizero`.
//!
//! Every function returns an [`MzStatus`]. Results come back through out
//! pointers. Rationals cross the boundary as `"p/q"` strings and lists as
//! comma separated text. Strings handed out by the library must be released
//! with [`mz_string_free`], handles with their matching `_free` function.
//! After a non-OK status, [`mz_last_error`] describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multizero::bounds::{
    condg2_check, eq1_check, eq2_check, eq3_check, ozl2_check, theorem4_check, BoundReport, Theorem4,
};
use multizero::deltabases::{multiplicity_from_coeffs, DeltaBasisSpec, ExpansionVector};
use multizero::error::Error;
use multizero::exact::interval::Verdict;
use multizero::exact::{format_rational, parse_rational, parse_rational_list};
use multizero::extremal::{search_max_multiplicity, verify_witness, SearchProblem};
use multizero::families::FamilySpec;
use multizero::report::ReportRecord;
use serde_json::json;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    TooLarge = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzVerdict {
    Holds = 0,
    Violated = 1,
    Undecided = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MzTheorem4 {
    Meixner1 = 0,
    Meixner2 = 1,
    Charlier3 = 2,
}

/// Opaque orthogonal family.
pub struct MzFamily(FamilySpec);

/// Opaque coefficient vector in a chosen basis.
pub struct MzExpansion(ExpansionVector);

/// Opaque bound evaluation.
pub struct MzReport(BoundReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Fail {
    Null,
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MzStatus::Ok,
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            MzStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            MzStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(format!("{}: {e}", e.kind()));
            match e {
                Error::Parse(_) => MzStatus::Parse,
                Error::InstanceTooLarge(_) => MzStatus::TooLarge,
                _ => MzStatus::Domain,
            }
        }
        Err(_) => {
            set_error("internal panic".into());
            MzStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn opt_text<'a>(p: *const c_char) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Utf8)?;
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(())
}

fn required(s: Option<&str>, what: &str) -> Result<String, Fail> {
    s.map(str::to_owned)
        .ok_or_else(|| Fail::Lib(Error::InvalidParameters(format!("{what} is required"))))
}

/// Message for the last failure on this thread, or NULL.
///
/// The pointer stays valid until the next call into the library on the same
/// thread. It must not be freed.
#[no_mangle]
pub extern "C" fn mz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a family by name: `hahn`, `chebyshev`, `krawtchouk`, `meixner` or
/// `charlier`.
///
/// `n` is the support size parameter for the finite families. `p1` and `p2`
/// carry the remaining parameters in declaration order: `(alpha, beta)` for
/// Hahn, `q` for Krawtchouk, `(beta, q)` for Meixner, `lambda` for Charlier.
/// Unused parameters may be NULL.
///
/// # Safety
/// String arguments must be NUL terminated or NULL. `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_family_new(
    kind: *const c_char,
    n: usize,
    p1: *const c_char,
    p2: *const c_char,
    out: *mut *mut MzFamily,
) -> MzStatus {
    guard(|| {
        let kind = text(kind)?;
        let p1 = opt_text(p1)?;
        let p2 = opt_text(p2)?;
        let num = |s: Option<&str>, what: &str| -> Result<_, Fail> { Ok(parse_rational(&required(s, what)?)?) };
        let fam = match kind {
            "hahn" => FamilySpec::hahn(n, num(p1, "alpha")?, num(p2, "beta")?)?,
            "chebyshev" => FamilySpec::chebyshev(n),
            "krawtchouk" => FamilySpec::krawtchouk(n, num(p1, "q")?)?,
            "meixner" => FamilySpec::meixner(num(p1, "beta")?, num(p2, "q")?)?,
            "charlier" => FamilySpec::charlier(num(p1, "lambda")?)?,
            other => return Err(Error::InvalidParameters(format!("unknown family {other:?}")).into()),
        };
        put_box(out, MzFamily(fam))
    })
}

/// Translates the support of `fam` by `by`.
///
/// # Safety
/// `fam` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mz_family_shift(fam: *mut MzFamily, by: i64) -> MzStatus {
    guard(|| {
        let f = fam.as_mut().ok_or(Fail::Null)?;
        f.0 = f.0.clone().shifted(by);
        Ok(())
    })
}

/// # Safety
/// `fam` must come from [`mz_family_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn mz_family_free(fam: *mut MzFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Weight at `x` as `"p/q"`.
///
/// # Safety
/// `fam` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_family_weight(fam: *const MzFamily, x: i64, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let w = handle(fam)?.0.weight(x)?;
        put_string(out, format_rational(&w))
    })
}

/// Squared normalized value at `(k, x)`. Exact families give `"p/q"`, the
/// others a rational multiple of their unit such as `"3/2*exp(-1/1)"`.
///
/// # Safety
/// `fam` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_family_g_squared(
    fam: *const MzFamily,
    k: usize,
    x: i64,
    out: *mut *mut c_char,
) -> MzStatus {
    guard(|| {
        let g = handle(fam)?.0.g_squared(k, x)?;
        put_string(out, g.to_string())
    })
}

/// Tail sum of squared values at `s` from degree `mu` upward.
///
/// # Safety
/// `fam` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_family_tail_sum(
    fam: *const MzFamily,
    s: i64,
    mu: usize,
    out: *mut *mut c_char,
) -> MzStatus {
    guard(|| {
        let t = handle(fam)?.0.tail_sum(s, mu)?;
        put_string(out, t.to_string())
    })
}

/// Coefficients `a_0..a_n` given as a comma separated list, in the basis
/// `monomial`, `krawtchouk` or `laguerre`. `alpha` is required only for
/// `laguerre`.
///
/// # Safety
/// String arguments must be NUL terminated or NULL. `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mz_expansion_new(
    basis: *const c_char,
    alpha: *const c_char,
    coeffs: *const c_char,
    out: *mut *mut MzExpansion,
) -> MzStatus {
    guard(|| {
        let basis = text(basis)?;
        let alpha = opt_text(alpha)?;
        let a = parse_rational_list(text(coeffs)?)?;
        if a.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()).into());
        }
        let n = a.len() - 1;
        let spec = match basis {
            "monomial" => DeltaBasisSpec::monomial(n),
            "krawtchouk" => DeltaBasisSpec::krawtchouk_product(n),
            "laguerre" => DeltaBasisSpec::laguerre_ratio(n, parse_rational(&required(alpha, "alpha")?)?)?,
            other => return Err(Error::InvalidParameters(format!("unknown basis {other:?}")).into()),
        };
        put_box(out, MzExpansion(ExpansionVector::new(spec, a)?))
    })
}

/// Multiplicity of the zero at the distinguished point.
///
/// # Safety
/// `exp` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_expansion_multiplicity(exp: *const MzExpansion, out: *mut usize) -> MzStatus {
    guard(|| {
        let mu = multiplicity_from_coeffs(&handle(exp)?.0)?;
        put(out, mu)
    })
}

/// # Safety
/// `exp` must come from [`mz_expansion_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn mz_expansion_free(exp: *mut MzExpansion) {
    if !exp.is_null() {
        drop(Box::from_raw(exp));
    }
}

unsafe fn report_with(
    out: *mut *mut MzReport,
    f: impl FnOnce() -> Result<BoundReport, Fail>,
) -> MzStatus {
    guard(|| {
        let r = f()?;
        put_box(out, MzReport(r))
    })
}

/// # Safety
/// `exp` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_eq1(exp: *const MzExpansion, out: *mut *mut MzReport) -> MzStatus {
    report_with(out, || Ok(eq1_check(&handle(exp)?.0)?))
}

/// # Safety
/// `exp` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_eq2(exp: *const MzExpansion, out: *mut *mut MzReport) -> MzStatus {
    report_with(out, || Ok(eq2_check(&handle(exp)?.0)?))
}

/// # Safety
/// `exp` must be a live handle, `q` a NUL terminated rational and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_eq3(
    exp: *const MzExpansion,
    q: *const c_char,
    out: *mut *mut MzReport,
) -> MzStatus {
    report_with(out, || {
        let q = parse_rational(text(q)?)?;
        Ok(eq3_check(&handle(exp)?.0, &q)?)
    })
}

/// Weighted L2 bound for a zero of order `mu` at the support point `s`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_ozl2(
    exp: *const MzExpansion,
    fam: *const MzFamily,
    s: i64,
    mu: usize,
    out: *mut *mut MzReport,
) -> MzStatus {
    report_with(out, || Ok(ozl2_check(&handle(exp)?.0, &handle(fam)?.0, s, mu)?))
}

/// Bound for a zero of order `mu` at a point `s` outside the support.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_condg2(
    exp: *const MzExpansion,
    fam: *const MzFamily,
    s: i64,
    mu: usize,
    out: *mut *mut MzReport,
) -> MzStatus {
    report_with(out, || Ok(condg2_check(&handle(exp)?.0, &handle(fam)?.0, s, mu)?))
}

/// Closed form bounds for the Meixner and Charlier weights.
///
/// # Safety
/// `exp` must be a live handle, `q` a NUL terminated rational and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mz_check_theorem4(
    exp: *const MzExpansion,
    which: MzTheorem4,
    q: *const c_char,
    out: *mut *mut MzReport,
) -> MzStatus {
    report_with(out, || {
        let q = parse_rational(text(q)?)?;
        let which = match which {
            MzTheorem4::Meixner1 => Theorem4::Meixner1,
            MzTheorem4::Meixner2 => Theorem4::Meixner2,
            MzTheorem4::Charlier3 => Theorem4::Charlier3,
        };
        Ok(theorem4_check(&handle(exp)?.0, which, &q)?)
    })
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_report_verdict(rep: *const MzReport, out: *mut MzVerdict) -> MzStatus {
    guard(|| {
        let v = match handle(rep)?.0.verdict {
            Verdict::Holds => MzVerdict::Holds,
            Verdict::Violated => MzVerdict::Violated,
            Verdict::Undecided => MzVerdict::Undecided,
        };
        put(out, v)
    })
}

/// Whether the inequality was met with equality.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_report_sharp(rep: *const MzReport, out: *mut bool) -> MzStatus {
    guard(|| put(out, handle(rep)?.0.sharp))
}

/// The report as a JSON object, same fields as the command line tool.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_report_json(rep: *const MzReport, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let rec = ReportRecord::new(&handle(rep)?.0, None);
        put_string(out, serde_json::to_string(&rec).expect("record serializes"))
    })
}

/// # Safety
/// `rep` must come from one of the `mz_check_*` functions or be NULL.
#[no_mangle]
pub unsafe extern "C" fn mz_report_free(rep: *mut MzReport) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Checks that the monomial coefficients vanish to order `mu` at one.
///
/// # Safety
/// `coeffs` must be NUL terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_verify_witness(coeffs: *const c_char, mu: usize, out: *mut bool) -> MzStatus {
    guard(|| {
        let a = parse_rational_list(text(coeffs)?)?;
        put(out, verify_witness(&a, mu))
    })
}

/// Largest multiplicity at one over degree `n` polynomials with coefficients
/// from `alphabet`, returned as JSON.
///
/// # Safety
/// `alphabet` must be NUL terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mz_search(n: usize, alphabet: *const c_char, out: *mut *mut c_char) -> MzStatus {
    guard(|| {
        let prob = SearchProblem::new(n, parse_rational_list(text(alphabet)?)?)?;
        let res = search_max_multiplicity(&prob)?;
        let list = |w: &Vec<_>| w.iter().map(format_rational).collect::<Vec<_>>();
        let doc = json!({
            "n": n,
            "mu_max": res.mu_max,
            "bound_used": res.bound_used,
            "witness_count": res.witness_count,
            "nodes_explored": res.nodes_explored,
            "sign_reduced": res.sign_reduced,
            "witnesses": res.witnesses.iter().map(list).collect::<Vec<_>>(),
        });
        put_string(out, doc.to_string())
    })
}
