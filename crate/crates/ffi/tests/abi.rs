use std::ffi::{c_char, CStr, CString};
use std::ptr;

use multizero_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    mz_string_free(p);
    s
}

unsafe fn last_error() -> String {
    let p = mz_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

unsafe fn expansion(coeffs: &str) -> *mut MzExpansion {
    let mut e = ptr::null_mut();
    assert_eq!(mz_expansion_new(c("monomial").as_ptr(), ptr::null(), c(coeffs).as_ptr(), &mut e), MzStatus::Ok);
    e
}

#[test]
fn family_values() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(mz_family_new(c("chebyshev").as_ptr(), 2, ptr::null(), ptr::null(), &mut f), MzStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(mz_family_tail_sum(f, 0, 1, &mut s), MzStatus::Ok);
        assert_eq!(take(s), "2/3");
        assert_eq!(mz_family_weight(f, 1, &mut s), MzStatus::Ok);
        assert_eq!(take(s), "1/1");
        mz_family_free(f);

        assert_eq!(mz_family_new(c("charlier").as_ptr(), 0, c("1").as_ptr(), ptr::null(), &mut f), MzStatus::Ok);
        assert_eq!(mz_family_g_squared(f, 0, 0, &mut s), MzStatus::Ok);
        assert_eq!(take(s), "1/1*exp(-1/1)");
        mz_family_free(f);
    }
}

#[test]
fn bound_report_round_trip() {
    unsafe {
        let e = expansion("1,-5,10,-10,5,-1");
        let mut mu = 0usize;
        assert_eq!(mz_expansion_multiplicity(e, &mut mu), MzStatus::Ok);
        assert_eq!(mu, 5);

        let mut r = ptr::null_mut();
        assert_eq!(mz_check_eq1(e, &mut r), MzStatus::Ok);
        let mut v = MzVerdict::Undecided;
        let mut sharp = false;
        assert_eq!(mz_report_verdict(r, &mut v), MzStatus::Ok);
        assert_eq!(mz_report_sharp(r, &mut sharp), MzStatus::Ok);
        assert_eq!(v, MzVerdict::Holds);
        assert!(sharp);
        let mut s = ptr::null_mut();
        assert_eq!(mz_report_json(r, &mut s), MzStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(doc["lhs"], "252/1");
        assert_eq!(doc["rhs"], "252/1");
        mz_report_free(r);

        assert_eq!(mz_check_theorem4(e, MzTheorem4::Charlier3, c("1").as_ptr(), &mut r), MzStatus::Ok);
        assert_eq!(mz_report_verdict(r, &mut v), MzStatus::Ok);
        assert_eq!(v, MzVerdict::Holds);
        mz_report_free(r);
        mz_expansion_free(e);
    }
}

#[test]
fn ozl2_and_condg2() {
    unsafe {
        let e = expansion("1,-2,1");
        let mut f = ptr::null_mut();
        assert_eq!(mz_family_new(c("krawtchouk").as_ptr(), 2, c("1/2").as_ptr(), ptr::null(), &mut f), MzStatus::Ok);
        let mut r = ptr::null_mut();
        let mut v = MzVerdict::Undecided;
        assert_eq!(mz_check_ozl2(e, f, 0, 2, &mut r), MzStatus::Ok);
        assert_eq!(mz_report_verdict(r, &mut v), MzStatus::Ok);
        assert_eq!(v, MzVerdict::Holds);
        mz_report_free(r);

        mz_family_free(f);

        // Support {1}, zero at 0 outside it.
        let e2 = expansion("0,1,-1");
        let mut g = ptr::null_mut();
        assert_eq!(mz_family_new(c("krawtchouk").as_ptr(), 1, c("1/2").as_ptr(), ptr::null(), &mut g), MzStatus::Ok);
        assert_eq!(mz_family_shift(g, 1), MzStatus::Ok);
        assert_eq!(mz_check_condg2(e2, g, 0, 1, &mut r), MzStatus::Ok);
        assert_eq!(mz_report_verdict(r, &mut v), MzStatus::Ok);
        assert_eq!(v, MzVerdict::Holds);
        mz_report_free(r);
        mz_family_free(g);
        mz_expansion_free(e);
        mz_expansion_free(e2);
    }
}

#[test]
fn search_and_verify() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(mz_search(6, c("-1,0,1").as_ptr(), &mut s), MzStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(doc["mu_max"], 3);
        let mut ok = false;
        assert_eq!(mz_verify_witness(c("1,-1,-1,0,1,1,-1").as_ptr(), 3, &mut ok), MzStatus::Ok);
        assert!(ok);
        assert_eq!(mz_verify_witness(c("1,-1,-1,0,1,1,-1").as_ptr(), 4, &mut ok), MzStatus::Ok);
        assert!(!ok);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(mz_family_new(ptr::null(), 2, ptr::null(), ptr::null(), &mut f), MzStatus::NullPointer);
        assert!(f.is_null());
        assert_eq!(mz_family_new(c("krawtchouk").as_ptr(), 2, c("0").as_ptr(), ptr::null(), &mut f), MzStatus::Domain);
        assert!(last_error().starts_with("InvalidParameters"));
        assert_eq!(mz_family_new(c("hahn").as_ptr(), 2, c("x").as_ptr(), c("1").as_ptr(), &mut f), MzStatus::Parse);
        assert_eq!(mz_family_new(c("bessel").as_ptr(), 2, ptr::null(), ptr::null(), &mut f), MzStatus::Domain);

        let bad = [0xffu8, 0];
        let mut e = ptr::null_mut();
        assert_eq!(
            mz_expansion_new(bad.as_ptr() as *const c_char, ptr::null(), c("1").as_ptr(), &mut e),
            MzStatus::InvalidUtf8
        );

        let e = expansion("0,1,-1");
        let mut r = ptr::null_mut();
        assert_eq!(mz_check_eq2(e, &mut r), MzStatus::Domain);
        assert!(last_error().starts_with("ZeroLeadCoefficient"));
        assert!(r.is_null());
        assert_eq!(mz_check_eq1(e, ptr::null_mut()), MzStatus::NullPointer);
        mz_expansion_free(e);

        let mut s = ptr::null_mut();
        assert_eq!(mz_search(40, c("-1,0,1").as_ptr(), &mut s), MzStatus::TooLarge);

        let mut ok = false;
        assert_eq!(mz_verify_witness(c("1,-1").as_ptr(), 1, &mut ok), MzStatus::Ok);
        assert!(mz_last_error().is_null());
    }
}

#[test]
fn null_frees_are_ignored() {
    unsafe {
        mz_string_free(ptr::null_mut());
        mz_family_free(ptr::null_mut());
        mz_expansion_free(ptr::null_mut());
        mz_report_free(ptr::null_mut());
    }
}
