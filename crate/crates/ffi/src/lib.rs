//! C interface to `satgame`.
//!
//! Every function returns an [`SgStatus`]. On failure the message is kept
//! per thread and can be read with [`sg_last_error_message`]. Families are
//! opaque handles owned by the caller and released with [`sg_family_free`];
//! strings returned by the library are released with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use satgame::cli::{seat_seed, strategy_by_name};
use satgame::game::{run_game, GameKind, Mode, Role, RoleAssignment, RunOptions};
use satgame::minimizer::round_cover_bound;
use satgame::setfam::{covering_number, is_maximal_intersecting, KSet, Params, SetFamily};
use satgame::solver::solve;
use satgame::sperner::solve_sperner;
use satgame::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidState = 3,
    UniverseTooSmall = 4,
    RuleViolation = 5,
    Forfeit = 6,
    ResourceLimit = 7,
    Internal = 8,
    InvalidUtf8 = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgKind {
    Saturation = 0,
    Tau = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgRole {
    Minimizer = 0,
    Maximizer = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgMode {
    Full = 0,
    Certify = 1,
}

/// An intersecting family of k-sets.
pub struct SgFamily {
    inner: SetFamily,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Param(_) => SgStatus::InvalidParameter,
        Error::State(_) => SgStatus::InvalidState,
        Error::UniverseTooSmall { .. } => SgStatus::UniverseTooSmall,
        Error::RuleViolation(_) => SgStatus::RuleViolation,
        Error::Forfeit { .. } => SgStatus::Forfeit,
        Error::Resource(_) => SgStatus::ResourceLimit,
        Error::Internal(_) => SgStatus::Internal,
    }
}

struct Fail(SgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SgStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any error or panic for [`sg_last_error_message`].
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside satgame".into());
            SgStatus::Panic
        }
    }
}

fn kind_of(k: SgKind) -> GameKind {
    match k {
        SgKind::Saturation => GameKind::Saturation,
        SgKind::Tau => GameKind::Tau,
    }
}

fn role_of(r: SgRole) -> Role {
    match r {
        SgRole::Minimizer => Role::Minimizer,
        SgRole::Maximizer => Role::Maximizer,
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn family<'a>(f: *const SgFamily) -> Result<&'a SgFamily, Fail> {
    f.as_ref().ok_or_else(|| null("family"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates an empty family of k-subsets of `[n]`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sg_family_new(n: u32, k: u32, out: *mut *mut SgFamily) -> SgStatus {
    guard(|| {
        let p = Params::new(n, k)?;
        let h = Box::into_raw(Box::new(SgFamily {
            inner: SetFamily::new(p),
        }));
        write(out, h).inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// Releases a family. Null is ignored.
///
/// # Safety
/// `f` must come from [`sg_family_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sg_family_free(f: *mut SgFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Adds a k-set given as `len` elements. Fails without changing the family
/// if the set is malformed, already present, or disjoint from a member.
///
/// # Safety
/// `f` must be a live handle and `elems` must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn sg_family_push(
    f: *mut SgFamily,
    elems: *const u32,
    len: usize,
) -> SgStatus {
    guard(|| {
        let fam = f.as_mut().ok_or_else(|| null("family"))?;
        if elems.is_null() && len > 0 {
            return Err(null("elements"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(elems, len)
        };
        let p = fam.inner.params();
        let set = KSet::new(p, slice.iter().copied())?;
        if fam.inner.contains(&set) {
            return Err(Fail(
                SgStatus::RuleViolation,
                format!("{set} is already in the family"),
            ));
        }
        if let Some(m) = fam.inner.first_disjoint(&set) {
            return Err(Fail(
                SgStatus::RuleViolation,
                format!("{set} is disjoint from {m}"),
            ));
        }
        fam.inner.push(set)?;
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_family_len(f: *const SgFamily, out: *mut usize) -> SgStatus {
    guard(|| write(out, family(f)?.inner.len()))
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_family_is_intersecting(f: *const SgFamily, out: *mut bool) -> SgStatus {
    guard(|| write(out, family(f)?.inner.is_intersecting()))
}

/// Whether no further k-set can be added.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_family_is_maximal(f: *const SgFamily, out: *mut bool) -> SgStatus {
    guard(|| write(out, is_maximal_intersecting(&family(f)?.inner)?))
}

/// Writes the covering number to `out_tau` and, if `cover` is not null, a
/// smallest cover into `cover[0..tau]`. Fails with `BufferTooSmall` (after
/// writing `out_tau`) when `cover_cap < tau`.
///
/// # Safety
/// `f` must be a live handle, `out_tau` writable, and `cover` either null or
/// writable for `cover_cap` values.
#[no_mangle]
pub unsafe extern "C" fn sg_family_covering_number(
    f: *const SgFamily,
    out_tau: *mut u32,
    cover: *mut u32,
    cover_cap: usize,
) -> SgStatus {
    guard(|| {
        let (tau, pts) = covering_number(&family(f)?.inner)?;
        write(out_tau, tau)?;
        if cover.is_null() {
            return Ok(());
        }
        if cover_cap < tau as usize {
            return Err(Fail(
                SgStatus::BufferTooSmall,
                format!("cover needs {tau} slots"),
            ));
        }
        for (i, x) in pts.iter().enumerate() {
            cover.add(i).write(x);
        }
        Ok(())
    })
}

/// Exact value of the game on k-subsets of `[n]` under optimal play.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_solve(
    n: u32,
    k: u32,
    kind: SgKind,
    first: SgRole,
    out: *mut u64,
) -> SgStatus {
    guard(|| {
        let r = solve(
            Params::new(n, k)?,
            kind_of(kind),
            RoleAssignment::new(role_of(first)),
        )?;
        write(out, r.value)
    })
}

/// Exact value of the antichain game on subsets of `[n]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_solve_sperner(n: u32, first: SgRole, out: *mut u64) -> SgStatus {
    guard(|| write(out, solve_sperner(n, role_of(first))?))
}

/// Bound on the minimizer's cover size after round `i` for set size `k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_round_cover_bound(i: u32, k: u32, out: *mut u32) -> SgStatus {
    guard(|| write(out, round_cover_bound(i, k)?))
}

/// Plays one game between two named strategies and returns the transcript
/// as a JSON string, to be released with [`sg_string_free`].
///
/// # Safety
/// `strategy_a` and `strategy_b` must be nul-terminated strings and
/// `out_json` writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn sg_play_json(
    n: u32,
    k: u32,
    kind: SgKind,
    first: SgRole,
    strategy_a: *const c_char,
    strategy_b: *const c_char,
    mode: SgMode,
    seed: u64,
    out_json: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("output pointer"));
        }
        let p = Params::new(n, k)?;
        let mut a = strategy_by_name(str_arg(strategy_a, "strategy A")?, seat_seed(seed, false))?;
        let mut b = strategy_by_name(str_arg(strategy_b, "strategy B")?, seat_seed(seed, true))?;
        let mode = match mode {
            SgMode::Full => Mode::FullPlay,
            SgMode::Certify => Mode::Certify,
        };
        let opts = RunOptions {
            seed,
            ..RunOptions::default()
        };
        let t = run_game(
            p,
            kind_of(kind),
            RoleAssignment::new(role_of(first)),
            a.as_mut(),
            b.as_mut(),
            mode,
            &opts,
        )?;
        let json = CString::new(t.to_json()).expect("JSON has no nul bytes");
        write(out_json, json.into_raw())
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
