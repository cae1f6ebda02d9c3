//! C ABI for the thetalab core: exact number theory, Gauss-sum closed
//! forms, local classification at rationals, and the theta functional
//! equation residual.
//!
//! Conventions: every fallible function returns a `tl_status`; results go
//! through out-pointers. Null out-pointers yield `TL_NULL_POINTER`.
//! Heap-backed objects (the Liouville table) are opaque handles with an
//! explicit `_free`.

#![allow(non_camel_case_types)]

use std::os::raw::c_char;

use thetalab::exact::{kronecker, liouville_sieve, LiouvilleTable, ReducedRational};
use thetalab::gauss::gauss_sum_closed;
use thetalab::local::classify_rational;
use thetalab::series::theta_transform_residual;
use thetalab::{BigComplex, Error};

/// Status codes for all fallible entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum tl_status {
    TL_OK = 0,
    /// A precondition on the arguments was violated.
    TL_PRECONDITION = 1,
    /// Arguments were required to be coprime and are not.
    TL_NOT_COPRIME = 2,
    /// Zero denominator.
    TL_ZERO_DENOMINATOR = 3,
    /// Allocation or other resource exhaustion.
    TL_RESOURCE = 4,
    /// A required out-pointer was null.
    TL_NULL_POINTER = 5,
    /// Any other error.
    TL_OTHER = 6,
}

fn status_of(e: &Error) -> tl_status {
    match e {
        Error::Precondition(_) => tl_status::TL_PRECONDITION,
        Error::NotCoprime(..) => tl_status::TL_NOT_COPRIME,
        Error::ZeroDenominator => tl_status::TL_ZERO_DENOMINATOR,
        Error::Resource(_) => tl_status::TL_RESOURCE,
        _ => tl_status::TL_OTHER,
    }
}

/// Closed-form quadratic Gauss sum: zero flag, phase as a multiple of
/// π/4, and the radicand r with |S| = √r when nonzero.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct tl_gauss_sum {
    pub is_zero: bool,
    /// Phase exponent k in e^{iπk/4}, 0 ≤ k < 8.
    pub phase_eighths: u8,
    pub radicand: u64,
}

/// Differentiability verdict at a reduced rational. Field values:
/// 0 = zero derivative / difference quotient, 1 = infinite, 2 = none.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct tl_verdict {
    pub num: i64,
    pub den: i64,
    /// 1 iff the two-sided derivative exists (and is zero in the
    /// normalization used by the library).
    pub two_sided_zero: bool,
    pub right: u8,
    pub left: u8,
    pub symmetric: u8,
    pub kappa_is_zero: bool,
    /// κ phase exponent k in e^{iπk/4} when κ ≠ 0.
    pub kappa_phase_eighths: u8,
    /// |κ| = 1/√den when κ ≠ 0, else 0.
    pub kappa_magnitude: f64,
}

fn diff_code(s: thetalab::local::DiffStatus) -> u8 {
    match s {
        thetalab::local::DiffStatus::Zero => 0,
        thetalab::local::DiffStatus::Infinite => 1,
        thetalab::local::DiffStatus::None => 2,
    }
}

/// Kronecker symbol (a/n), full domain.
#[no_mangle]
pub extern "C" fn tl_kronecker(a: i64, n: i64, out: *mut i32) -> tl_status {
    if out.is_null() {
        return tl_status::TL_NULL_POINTER;
    }
    unsafe { *out = kronecker(a as i128, n as i128) };
    tl_status::TL_OK
}

/// Closed form for S(p, q) = Σ_{n mod p} e^{2πi q n²/p}, p ≥ 1,
/// gcd(p, q) = 1.
#[no_mangle]
pub extern "C" fn tl_gauss_sum_closed(p: i64, q: i64, out: *mut tl_gauss_sum) -> tl_status {
    if out.is_null() {
        return tl_status::TL_NULL_POINTER;
    }
    match gauss_sum_closed(p, q) {
        Ok(s) => {
            unsafe {
                *out = tl_gauss_sum {
                    is_zero: s.is_zero,
                    phase_eighths: s.phase.k(),
                    radicand: s.radicand,
                };
            }
            tl_status::TL_OK
        }
        Err(e) => status_of(&e),
    }
}

/// Classify the local behavior of the Riemann-type series at num/den.
#[no_mangle]
pub extern "C" fn tl_classify(num: i64, den: i64, out: *mut tl_verdict) -> tl_status {
    if out.is_null() {
        return tl_status::TL_NULL_POINTER;
    }
    let xi = match ReducedRational::reduce(num, den) {
        Ok(x) => x,
        Err(e) => return status_of(&e),
    };
    let v = classify_rational(xi);
    unsafe {
        *out = tl_verdict {
            num: xi.num(),
            den: xi.den(),
            two_sided_zero: matches!(
                v.two_sided,
                thetalab::local::TwoSidedStatus::DerivativeZero
            ),
            right: diff_code(v.right),
            left: diff_code(v.left),
            symmetric: diff_code(v.symmetric),
            kappa_is_zero: v.kappa.is_zero,
            kappa_phase_eighths: v.kappa.phase_eighths,
            kappa_magnitude: v.kappa.magnitude,
        };
    }
    tl_status::TL_OK
}

/// |θ(−1/z) − √(z/i)·θ(z)| at z = re + i·im (im > 0), computed at the
/// given precision in bits and rounded to f64.
#[no_mangle]
pub extern "C" fn tl_theta_transform_residual(
    re: f64,
    im: f64,
    precision_bits: u32,
    out: *mut f64,
) -> tl_status {
    if out.is_null() {
        return tl_status::TL_NULL_POINTER;
    }
    let z = BigComplex::from_f64(re, im, precision_bits + 32);
    match theta_transform_residual(&z, precision_bits) {
        Ok(r) => {
            unsafe { *out = r.to_f64() };
            tl_status::TL_OK
        }
        Err(e) => status_of(&e),
    }
}

/// Opaque handle to a Liouville λ table.
pub struct tl_liouville_table {
    inner: LiouvilleTable,
}

/// Build a table of λ(n) for 1 ≤ n ≤ limit. Returns null on failure
/// (limit = 0 or allocation failure).
#[no_mangle]
pub extern "C" fn tl_liouville_new(limit: usize) -> *mut tl_liouville_table {
    match liouville_sieve(limit) {
        Ok(t) => Box::into_raw(Box::new(tl_liouville_table { inner: t })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// λ(n) from a table; requires 1 ≤ n ≤ limit.
#[no_mangle]
pub extern "C" fn tl_liouville_get(
    table: *const tl_liouville_table,
    n: usize,
    out: *mut i8,
) -> tl_status {
    if table.is_null() || out.is_null() {
        return tl_status::TL_NULL_POINTER;
    }
    let t = unsafe { &(*table).inner };
    if n == 0 || n > t.limit() {
        return tl_status::TL_PRECONDITION;
    }
    unsafe { *out = t.get(n) };
    tl_status::TL_OK
}

/// Free a table created by `tl_liouville_new`. Null is a no-op.
#[no_mangle]
pub extern "C" fn tl_liouville_free(table: *mut tl_liouville_table) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_core() {
        let mut out = 0i32;
        assert_eq!(tl_kronecker(2, 7, &mut out), tl_status::TL_OK);
        assert_eq!(out, kronecker(2, 7));
        assert_eq!(tl_kronecker(2, 7, std::ptr::null_mut()), tl_status::TL_NULL_POINTER);
    }

    #[test]
    fn gauss_sum_roundtrip() {
        let mut s = tl_gauss_sum {
            is_zero: false,
            phase_eighths: 0,
            radicand: 0,
        };
        assert_eq!(tl_gauss_sum_closed(5, 1, &mut s), tl_status::TL_OK);
        assert!(!s.is_zero);
        assert_eq!(s.radicand, 5);
        assert_eq!(tl_gauss_sum_closed(6, 3, &mut s), tl_status::TL_NOT_COPRIME);
    }

    #[test]
    fn classify_odd_odd_is_two_sided_zero() {
        let mut v = tl_verdict {
            num: 0,
            den: 0,
            two_sided_zero: false,
            right: 9,
            left: 9,
            symmetric: 9,
            kappa_is_zero: false,
            kappa_phase_eighths: 0,
            kappa_magnitude: 0.0,
        };
        assert_eq!(tl_classify(3, 9, &mut v), tl_status::TL_OK);
        assert_eq!((v.num, v.den), (1, 3));
        assert!(v.two_sided_zero);
        assert!(v.kappa_is_zero);
        assert_eq!(tl_classify(1, 0, &mut v), tl_status::TL_ZERO_DENOMINATOR);
    }

    #[test]
    fn theta_residual_is_tiny() {
        let mut r = 1.0f64;
        assert_eq!(
            tl_theta_transform_residual(0.3, 1.2, 128, &mut r),
            tl_status::TL_OK
        );
        assert!(r < 1e-30, "residual={r}");
    }

    #[test]
    fn liouville_handle_lifecycle() {
        let t = tl_liouville_new(100);
        assert!(!t.is_null());
        let mut v = 0i8;
        assert_eq!(tl_liouville_get(t, 1, &mut v), tl_status::TL_OK);
        assert_eq!(v, 1);
        assert_eq!(tl_liouville_get(t, 12, &mut v), tl_status::TL_OK);
        assert_eq!(v, -1); // 12 = 2²·3, Ω = 3
        assert_eq!(tl_liouville_get(t, 101, &mut v), tl_status::TL_PRECONDITION);
        tl_liouville_free(t);
        assert!(tl_liouville_new(0).is_null());
    }
}
