//! C ABI over the weylsum engine.
//!
//! Every fallible call returns a [`WsStatus`]; on failure the message is kept
//! per thread and read with [`ws_last_error_message`]. Handles are opaque and
//! must be released with their matching `_free`. Strings returned through
//! out-pointers are owned by the caller and released with [`ws_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylsum::branching::Pair;
use weylsum::charkit::{character, dimension_oracle, q_dimension_mod, weyl_sum_permweights};
use weylsum::field::Fp;
use weylsum::permweights::{phi, SignedWeight};
use weylsum::rootsys::{build_algebra, AlgebraData, AlgebraKind, Weight};
use weylsum::schur::EvalContext;
use weylsum::weyl::{orbit_size, Sign};
use weylsum::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotDominant = 3,
    CapExceeded = 4,
    ZeroDenominator = 5,
    InvalidModulus = 6,
    TableError = 7,
    Io = 8,
    Panic = 9,
}

impl From<&Error> for WsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotDominant(_) | Error::NotStrictlyDominant(_) => WsStatus::NotDominant,
            Error::OrbitCapExceeded { .. } => WsStatus::CapExceeded,
            Error::ZeroDenominator(_) | Error::ZeroCoordinate => WsStatus::ZeroDenominator,
            Error::InvalidModulus(_) => WsStatus::InvalidModulus,
            Error::MalformedTable { .. }
            | Error::TableCount { .. }
            | Error::NotReduced { .. }
            | Error::NonDominantImage { .. }
            | Error::DuplicateImage { .. } => WsStatus::TableError,
            Error::Io(_) | Error::Checkpoint(_) => WsStatus::Io,
            _ => WsStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null(&'static str),
    Engine(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Engine(e)
    }
}

/// Runs `f`, turning errors and panics into a status plus a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WsStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            WsStatus::NullPointer
        }
        Ok(Err(Fail::Engine(e))) => {
            let status = WsStatus::from(&e);
            set_error(e.to_string());
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            WsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Engine(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).expect("no interior nul");
    write_out(out, c.into_raw(), "out")
}

unsafe fn pair_arg(p: *const c_char) -> Result<Pair, Fail> {
    Ok(text(p, "pair")?.parse::<Pair>()?)
}

unsafe fn weight_arg(kind: AlgebraKind, labels: *const i64, len: usize) -> Result<Weight, Fail> {
    Ok(Weight::new(kind, slice(labels, len, "labels")?.to_vec())?)
}

unsafe fn context_arg(pair: Pair, u: *const u64, len: usize, prime: u64) -> Result<EvalContext<Fp>, Fail> {
    let free = slice(u, len, "u")?
        .iter()
        .map(|&x| Fp::new(x, prime))
        .collect::<Result<Vec<_>, _>>()?;
    let want = pair.alphabet_size() - 1;
    if free.len() != want {
        return Err(Error::ContextMismatch {
            expected: want,
            got: free.len(),
        }
        .into());
    }
    Ok(EvalContext::from_free(free)?)
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn ws_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opaque root system handle.
pub struct WsAlgebra {
    data: AlgebraData,
}

/// Builds the root system named `name` ("E7", "E8", "A1" … "A8").
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_algebra_new(name: *const c_char, out: *mut *mut WsAlgebra) -> WsStatus {
    guard(|| {
        let kind: AlgebraKind = text(name, "name")?.parse()?;
        let handle = Box::new(WsAlgebra {
            data: build_algebra(kind),
        });
        write_out(out, Box::into_raw(handle), "out")
    })
}

/// # Safety
/// `alg` must come from [`ws_algebra_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_algebra_free(alg: *mut WsAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Rank of the algebra, 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_algebra_rank(alg: *const WsAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.data.rank())
}

/// Size of the Weyl orbit of a dominant weight, as a decimal string.
///
/// # Safety
/// `labels` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_orbit_size(
    alg: *const WsAlgebra,
    labels: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let alg = &alg.as_ref().ok_or(Fail::Null("alg"))?.data;
        let w = weight_arg(alg.kind, labels, len)?;
        write_string(out, orbit_size(alg, &w)?.to_string())
    })
}

/// Weyl dimension of the irreducible module with the given highest weight,
/// as a decimal string.
///
/// # Safety
/// As for [`ws_orbit_size`].
#[no_mangle]
pub unsafe extern "C" fn ws_dimension(
    alg: *const WsAlgebra,
    labels: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let alg = &alg.as_ref().ok_or(Fail::Null("alg"))?.data;
        let w = weight_arg(alg.kind, labels, len)?;
        write_string(out, dimension_oracle(alg, &w)?.to_string())
    })
}

/// Opaque list of signed permutation weights.
pub struct WsPermWeights {
    items: Vec<SignedWeight>,
}

/// Permutation weights of a dominant weight for `pair` ("E7:A7", "E8:A8",
/// "A<n>:A<n-1>").
///
/// # Safety
/// `pair` must be a nul-terminated string, `labels` must point to `len`
/// values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_phi(
    pair: *const c_char,
    labels: *const i64,
    len: usize,
    out: *mut *mut WsPermWeights,
) -> WsStatus {
    guard(|| {
        let pair = pair_arg(pair)?;
        let w = weight_arg(pair.source(), labels, len)?;
        let handle = Box::new(WsPermWeights {
            items: phi(pair, &w)?,
        });
        write_out(out, Box::into_raw(handle), "out")
    })
}

/// # Safety
/// `pw` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_permweights_len(pw: *const WsPermWeights) -> usize {
    pw.as_ref().map_or(0, |p| p.items.len())
}

/// Copies entry `index` into `labels_out` (capacity `cap`) and its sign (+1 or
/// −1) into `sign_out`.
///
/// # Safety
/// `pw` must be a live handle; `labels_out` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ws_permweights_get(
    pw: *const WsPermWeights,
    index: usize,
    labels_out: *mut i64,
    cap: usize,
    sign_out: *mut i32,
) -> WsStatus {
    guard(|| {
        let pw = pw.as_ref().ok_or(Fail::Null("pw"))?;
        let item = pw.items.get(index).ok_or_else(|| {
            Error::Parse(format!("index {index} out of range for {} entries", pw.items.len()))
        })?;
        let l = &item.weight.labels;
        if cap < l.len() {
            return Err(Error::Parse(format!("buffer holds {cap} labels, need {}", l.len())).into());
        }
        if labels_out.is_null() {
            return Err(Fail::Null("labels_out"));
        }
        ptr::copy_nonoverlapping(l.as_ptr(), labels_out, l.len());
        let sign = if item.sign == Sign::Plus { 1 } else { -1 };
        write_out(sign_out, sign, "sign_out")
    })
}

/// # Safety
/// `pw` must come from [`ws_phi`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ws_permweights_free(pw: *mut WsPermWeights) {
    if !pw.is_null() {
        drop(Box::from_raw(pw));
    }
}

/// Alternating Weyl sum of a strictly dominant weight mod `prime`, evaluated
/// through permutation weights. `u` holds the free subalgebra variables
/// (alphabet size − 1 of them); the last one is their inverse product.
///
/// # Safety
/// `pair` must be a nul-terminated string, `labels` and `u` must point to
/// `len` and `u_len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ws_weyl_sum_mod_p(
    pair: *const c_char,
    labels: *const i64,
    len: usize,
    u: *const u64,
    u_len: usize,
    prime: u64,
    out: *mut u64,
) -> WsStatus {
    guard(|| {
        let pair = pair_arg(pair)?;
        let w = weight_arg(pair.source(), labels, len)?;
        let ctx = context_arg(pair, u, u_len, prime)?;
        write_out(out, weyl_sum_permweights(pair, &w, &ctx)?.value(), "out")
    })
}

/// Character of the irreducible module with highest weight `labels` mod
/// `prime`, at the same kind of point as [`ws_weyl_sum_mod_p`].
///
/// # Safety
/// As for [`ws_weyl_sum_mod_p`].
#[no_mangle]
pub unsafe extern "C" fn ws_character_mod_p(
    pair: *const c_char,
    labels: *const i64,
    len: usize,
    u: *const u64,
    u_len: usize,
    prime: u64,
    out: *mut u64,
) -> WsStatus {
    guard(|| {
        let pair = pair_arg(pair)?;
        let w = weight_arg(pair.source(), labels, len)?;
        let ctx = context_arg(pair, u, u_len, prime)?;
        write_out(out, character(pair, &w, &ctx)?.value(), "out")
    })
}

/// q-dimension polynomial as comma-separated coefficients of q^0, q^1, ….
///
/// # Safety
/// As for [`ws_phi`], with `out` receiving a string.
#[no_mangle]
pub unsafe extern "C" fn ws_q_dimension(
    pair: *const c_char,
    labels: *const i64,
    len: usize,
    prime: u64,
    out: *mut *mut c_char,
) -> WsStatus {
    guard(|| {
        let pair = pair_arg(pair)?;
        let w = weight_arg(pair.source(), labels, len)?;
        let p = q_dimension_mod(pair, &w, prime)?;
        let coeffs: Vec<String> = p.coeffs.iter().map(|c| c.to_string()).collect();
        write_string(out, coeffs.join(","))
    })
}
