//! C ABI over `braided-rover`.
//!
//! Objects cross the boundary as opaque pointers owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`BrvStatus`]; on failure the message is available from
//! [`brv_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use braided_rover::recursion::{self, RecursionTable, Verdict};
use braided_rover::thompson::{Groupoid, Triple};
use braided_rover::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Operands from incompatible tables, degrees or strand counts.
    Mismatch = 4,
    /// Any other precondition failure reported by the library.
    Invalid = 5,
    Panic = 6,
}

/// Three-valued answer of an equality or identity test.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrvVerdict {
    Equal = 0,
    Unequal = 1,
    Unknown = 2,
}

impl From<Verdict> for BrvVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Equal => BrvVerdict::Equal,
            Verdict::Unequal => BrvVerdict::Unequal,
            Verdict::Unknown { .. } => BrvVerdict::Unknown,
        }
    }
}

/// A recursion table (generators and their wreath recursion).
pub struct BrvTable(RecursionTable);

/// The groupoid of triples over a table.
pub struct BrvGroupoid(Groupoid);

/// A triple `[forest ; group element ; forest]`.
pub struct BrvTriple(Triple);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let msg = CString::new(bytes).expect("interior nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BrvStatus {
    match e {
        Error::Parse { .. } => BrvStatus::Parse,
        Error::StrandMismatch(..)
        | Error::DegreeMismatch(..)
        | Error::TableMismatch(..)
        | Error::RootMismatch(..)
        | Error::ShapeMismatch(..) => BrvStatus::Mismatch,
        _ => BrvStatus::Invalid,
    }
}

struct Failure(BrvStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording any error or panic for `brv_last_error`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BrvStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(body)) {
        Ok(Ok(())) => BrvStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BrvStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller guarantees `p` is null or came from this library
    unsafe { p.as_ref() }.ok_or_else(|| Failure(BrvStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BrvStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null and nul-terminated by contract
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure(BrvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            BrvStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    // SAFETY: non-null and writable by contract
    unsafe { out.write(value) };
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', ""))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn brv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brv_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Loads a built-in table: `brgrig`, `grig` or `zwrz`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brv_table_builtin(
    name: *const c_char,
    out: *mut *mut BrvTable,
) -> BrvStatus {
    guard(|| {
        let table = match unsafe { text(name, "name") }? {
            "brgrig" => recursion::brgrig(),
            "grig" => recursion::grig(),
            "zwrz" => recursion::zwrz(),
            other => {
                return Err(Failure(
                    BrvStatus::Invalid,
                    format!("unknown built-in table {other:?}"),
                ));
            }
        };
        unsafe { write(out, boxed(BrvTable(table))) }
    })
}

/// Parses a table in the text format accepted by `brv`.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn brv_table_parse(
    source: *const c_char,
    out: *mut *mut BrvTable,
) -> BrvStatus {
    guard(|| {
        let table = RecursionTable::parse(unsafe { text(source, "source") }?)?;
        unsafe { write(out, boxed(BrvTable(table))) }
    })
}

/// # Safety
/// `table` must be null or a table from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brv_table_free(table: *mut BrvTable) {
    if !table.is_null() {
        // SAFETY: produced by Box::into_raw
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Decides whether `word` is the identity, exploring at most `budget`
/// levels of the recursion.
///
/// # Safety
/// Pointers must be valid; `word` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_word_is_identity(
    table: *const BrvTable,
    word: *const c_char,
    budget: usize,
    out: *mut BrvVerdict,
) -> BrvStatus {
    guard(|| {
        let t = &unsafe { borrow(table, "table") }?.0;
        let w = t.parse_word(unsafe { text(word, "word") }?)?;
        unsafe { write(out, t.is_identity(&w, budget).into()) }
    })
}

/// Decides whether two words represent the same group element.
///
/// # Safety
/// Pointers must be valid; words nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_word_eq(
    table: *const BrvTable,
    lhs: *const c_char,
    rhs: *const c_char,
    budget: usize,
    out: *mut BrvVerdict,
) -> BrvStatus {
    guard(|| {
        let t = &unsafe { borrow(table, "table") }?.0;
        let u = t.parse_word(unsafe { text(lhs, "lhs") }?)?;
        let v = t.parse_word(unsafe { text(rhs, "rhs") }?)?;
        unsafe { write(out, t.eq_in(&u, &v, budget).into()) }
    })
}

/// Formats the wreath recursion of `word` as `root (s1, ..., sd)`. The
/// string must be released with [`brv_string_free`].
///
/// # Safety
/// Pointers must be valid; `word` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_word_sections(
    table: *const BrvTable,
    word: *const c_char,
    out: *mut *mut c_char,
) -> BrvStatus {
    guard(|| {
        let t = &unsafe { borrow(table, "table") }?.0;
        let w = t.parse_word(unsafe { text(word, "word") }?)?;
        let rec = t.recursion(&w);
        let sections: Vec<String> = rec.sections.iter().map(|s| t.format_word(s)).collect();
        let line = format!("{} ({})", rec.root, sections.join(", "));
        unsafe { write(out, c_string(line)) }
    })
}

/// Builds the groupoid of triples over a copy of `table`.
///
/// # Safety
/// `table` must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_groupoid_new(
    table: *const BrvTable,
    out: *mut *mut BrvGroupoid,
) -> BrvStatus {
    guard(|| {
        let t = unsafe { borrow(table, "table") }?.0.clone();
        unsafe { write(out, boxed(BrvGroupoid(Groupoid::new(t)))) }
    })
}

/// # Safety
/// `groupoid` must be null or a groupoid from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brv_groupoid_free(groupoid: *mut BrvGroupoid) {
    if !groupoid.is_null() {
        // SAFETY: produced by Box::into_raw
        drop(unsafe { Box::from_raw(groupoid) });
    }
}

/// Parses a triple such as `[∧;(a,b);∧]`.
///
/// # Safety
/// Pointers must be valid; `source` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_parse(
    groupoid: *const BrvGroupoid,
    source: *const c_char,
    out: *mut *mut BrvTriple,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let t = g.parse_triple(unsafe { text(source, "source") }?)?;
        unsafe { write(out, boxed(BrvTriple(t))) }
    })
}

/// # Safety
/// `triple` must be null or a triple from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_free(triple: *mut BrvTriple) {
    if !triple.is_null() {
        // SAFETY: produced by Box::into_raw
        drop(unsafe { Box::from_raw(triple) });
    }
}

/// Formats a triple in the same syntax accepted by [`brv_triple_parse`].
///
/// # Safety
/// Pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_format(
    groupoid: *const BrvGroupoid,
    triple: *const BrvTriple,
    out: *mut *mut c_char,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let t = &unsafe { borrow(triple, "triple") }?.0;
        unsafe { write(out, c_string(g.format(t))) }
    })
}

/// Number of leaves of the right forest (the source object).
///
/// # Safety
/// `triple` must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_feet(triple: *const BrvTriple, out: *mut usize) -> BrvStatus {
    guard(|| {
        let t = &unsafe { borrow(triple, "triple") }?.0;
        unsafe { write(out, t.feet()) }
    })
}

/// Composes `lhs · rhs`, expanding both sides to a common forest.
///
/// # Safety
/// Pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_multiply(
    groupoid: *const BrvGroupoid,
    lhs: *const BrvTriple,
    rhs: *const BrvTriple,
    out: *mut *mut BrvTriple,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let x = &unsafe { borrow(lhs, "lhs") }?.0;
        let y = &unsafe { borrow(rhs, "rhs") }?.0;
        let product = g.multiply(x, y)?;
        unsafe { write(out, boxed(BrvTriple(product))) }
    })
}

/// # Safety
/// Pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_invert(
    groupoid: *const BrvGroupoid,
    triple: *const BrvTriple,
    out: *mut *mut BrvTriple,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let t = &unsafe { borrow(triple, "triple") }?.0;
        unsafe { write(out, boxed(BrvTriple(g.invert(t)))) }
    })
}

/// Greedily removes carets. `partial` is set when some reduction could not
/// be decided within the groupoid's budget.
///
/// # Safety
/// Pointers must be valid; `out` and `partial` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_reduce(
    groupoid: *const BrvGroupoid,
    triple: *const BrvTriple,
    out: *mut *mut BrvTriple,
    partial: *mut bool,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let t = &unsafe { borrow(triple, "triple") }?.0;
        if out.is_null() || partial.is_null() {
            return Err(Failure(
                BrvStatus::NullPointer,
                "output pointer is null".into(),
            ));
        }
        let (reduced, incomplete) = g.reduce(t);
        unsafe {
            write(partial, incomplete)?;
            write(out, boxed(BrvTriple(reduced)))
        }
    })
}

/// Equality of two triples as groupoid elements.
///
/// # Safety
/// Pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_eq(
    groupoid: *const BrvGroupoid,
    lhs: *const BrvTriple,
    rhs: *const BrvTriple,
    out: *mut BrvVerdict,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let x = &unsafe { borrow(lhs, "lhs") }?.0;
        let y = &unsafe { borrow(rhs, "rhs") }?.0;
        unsafe { write(out, g.eq(x, y)?.into()) }
    })
}

/// Whether `rhs = lhs [1, h, 1]` for some `h` with entries in
/// `Z = <b, c, d>`. Only defined over the braided Grigorchuk table.
///
/// # Safety
/// Pointers must be valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn brv_triple_eq_mod_z(
    groupoid: *const BrvGroupoid,
    lhs: *const BrvTriple,
    rhs: *const BrvTriple,
    out: *mut BrvVerdict,
) -> BrvStatus {
    guard(|| {
        let g = &unsafe { borrow(groupoid, "groupoid") }?.0;
        let x = &unsafe { borrow(lhs, "lhs") }?.0;
        let y = &unsafe { borrow(rhs, "rhs") }?.0;
        unsafe { write(out, g.eq_mod_z(x, y)?.into()) }
    })
}
