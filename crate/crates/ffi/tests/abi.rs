use std::ffi::CStr;
use std::ptr;

use zeta2k_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let text = CStr::from_ptr(p).to_str().unwrap().to_owned();
    zeta2k_string_free(p);
    text
}

unsafe fn last_error() -> Option<String> {
    let p = zeta2k_last_error_message();
    (!p.is_null()).then(|| CStr::from_ptr(p).to_str().unwrap().to_owned())
}

#[test]
fn bernoulli_handle_lifecycle() {
    unsafe {
        for method in [Zeta2kBernoulliMethod::Recurrence, Zeta2kBernoulliMethod::SeriesDivision] {
            let mut table = ptr::null_mut();
            assert_eq!(zeta2k_bernoulli_new(12, method, &mut table), Zeta2kStatus::Ok);
            assert_eq!(zeta2k_bernoulli_len(table), 13);
            let expected = ["1", "-1/2", "1/6", "0", "-1/30"];
            for (k, want) in expected.iter().enumerate() {
                let mut s = ptr::null_mut();
                assert_eq!(zeta2k_bernoulli_get(table, k, &mut s), Zeta2kStatus::Ok);
                assert_eq!(take_string(s), *want);
            }
            let mut s = ptr::null_mut();
            assert_eq!(zeta2k_bernoulli_get(table, 12, &mut s), Zeta2kStatus::Ok);
            assert_eq!(take_string(s), "-691/2730");
            let mut s = ptr::null_mut();
            assert_eq!(zeta2k_bernoulli_get(table, 13, &mut s), Zeta2kStatus::InvalidArgument);
            assert!(s.is_null());
            assert!(last_error().unwrap().contains("13"));
            zeta2k_bernoulli_free(table);
        }
    }
}

#[test]
fn null_handling() {
    unsafe {
        assert_eq!(
            zeta2k_bernoulli_new(3, Zeta2kBernoulliMethod::Recurrence, ptr::null_mut()),
            Zeta2kStatus::NullPointer
        );
        assert_eq!(zeta2k_bernoulli_len(ptr::null()), 0);
        let mut s = ptr::null_mut();
        assert_eq!(zeta2k_bernoulli_get(ptr::null(), 0, &mut s), Zeta2kStatus::NullPointer);
        zeta2k_bernoulli_free(ptr::null_mut());
        zeta2k_string_free(ptr::null_mut());
        assert_eq!(
            zeta2k_hadamard_product(Zeta2kComplex { re: 2.0, im: 0.0 }, Zeta2kComplex::default(), 10, ptr::null_mut()),
            Zeta2kStatus::NullPointer
        );
    }
}

#[test]
fn zeta_even_values() {
    unsafe {
        let mut q = ptr::null_mut();
        let mut value = 0.0;
        assert_eq!(zeta2k_zeta_even(2, &mut q, &mut value), Zeta2kStatus::Ok);
        assert_eq!(take_string(q), "1/90");
        assert_eq!(value, 1.082_323_233_711_138_2);
        assert_eq!(zeta2k_zeta_even(5, ptr::null_mut(), ptr::null_mut()), Zeta2kStatus::Ok);
        assert_eq!(zeta2k_zeta_even(0, &mut q, &mut value), Zeta2kStatus::InvalidArgument);
        assert!(last_error().is_some());
        // A success clears the previous message.
        assert_eq!(zeta2k_zeta_even(1, ptr::null_mut(), &mut value), Zeta2kStatus::Ok);
        assert!(last_error().is_none());
    }
}

#[test]
fn verify_report() {
    unsafe {
        let mut report = Zeta2kVerifyReport::default();
        let w = Zeta2kComplex { re: 2.0, im: 3.0 };
        assert_eq!(zeta2k_verify(Zeta2kIdentity::Theorem, w, 100_000, &mut report), Zeta2kStatus::Ok);
        assert!(report.pass);
        assert!(report.discrepancy <= report.remainder_bound + report.evaluation_epsilon);
        assert!((report.lhs.re + 0.079_607_007_277_427_23).abs() < 1e-15);

        let x = Zeta2kComplex::default();
        assert_eq!(zeta2k_verify(Zeta2kIdentity::Corollary, x, 1_000, &mut report), Zeta2kStatus::Ok);
        assert_eq!(report.lhs.re, -1.0 / 12.0);

        let cut = Zeta2kComplex { re: -1.0, im: 0.0 };
        assert_eq!(zeta2k_verify(Zeta2kIdentity::Theorem, cut, 10, &mut report), Zeta2kStatus::Domain);
        let pole = Zeta2kComplex { re: 0.0, im: 1.0 };
        assert_eq!(zeta2k_verify(Zeta2kIdentity::Corollary, pole, 10, &mut report), Zeta2kStatus::Domain);
        let nan = Zeta2kComplex { re: f64::NAN, im: 0.0 };
        assert_eq!(zeta2k_verify(Zeta2kIdentity::Theorem, nan, 10, &mut report), Zeta2kStatus::NonFinite);
    }
}

#[test]
fn hadamard_product_converges() {
    unsafe {
        let w = Zeta2kComplex { re: 2.0, im: 0.0 };
        let z = Zeta2kComplex { re: 1.0, im: 0.0 };
        let mut previous = f64::INFINITY;
        for n in [100, 1_000, 10_000] {
            let mut p = Zeta2kComplex::default();
            assert_eq!(zeta2k_hadamard_product(w, z, n, &mut p), Zeta2kStatus::Ok);
            let error = (p.re - (std::f64::consts::E - 2.0)).hypot(p.im);
            assert!(error < previous);
            previous = error;
        }
        let mut p = Zeta2kComplex::default();
        assert_eq!(zeta2k_hadamard_product(Zeta2kComplex { re: 1.0, im: 0.0 }, z, 5, &mut p), Zeta2kStatus::Domain);
        assert_eq!(zeta2k_hadamard_product(w, z, 0, &mut p), Zeta2kStatus::InvalidArgument);
    }
}

#[test]
fn errors_are_thread_local() {
    unsafe {
        assert_eq!(zeta2k_zeta_even(0, ptr::null_mut(), ptr::null_mut()), Zeta2kStatus::InvalidArgument);
        let other = std::thread::spawn(|| last_error()).join().unwrap();
        assert!(other.is_none());
        assert!(last_error().is_some());
    }
}
