use std::ffi::{CStr, CString};
use std::ptr;

use siegelfc_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    sfc_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = sfc_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn lift_and_coefficients() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sfc_siegel_maass_lift(10, 60, &mut f), SfcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sfc_siegel_coefficient(f, 1, 1, 1, &mut s), SfcStatus::Ok);
        assert_eq!(take(s), "1");
        // (1,0,1) has disc −4: c(4) = −2
        assert_eq!(sfc_siegel_coefficient(f, 1, 0, 1, &mut s), SfcStatus::Ok);
        assert_eq!(take(s), "-2");
        assert_eq!(
            sfc_siegel_coefficient(f, 1, 2, 1, &mut s),
            SfcStatus::InvalidInput
        );
        assert!(last_error().contains("positive definite"));
        assert_eq!(
            sfc_siegel_coefficient(f, 10, 1, 10, &mut s),
            SfcStatus::Precision
        );
        sfc_siegel_free(f);
    }
}

#[test]
fn json_round_trip() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sfc_siegel_maass_lift(12, 40, &mut f), SfcStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(sfc_siegel_to_json(f, &mut s), SfcStatus::Ok);
        let json = take(s);
        assert!(json.starts_with(r#"{"type":"siegel","weight":12"#));
        let c = CString::new(json.clone()).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(sfc_siegel_from_json(c.as_ptr(), &mut g), SfcStatus::Ok);
        assert_eq!(sfc_siegel_to_json(g, &mut s), SfcStatus::Ok);
        assert_eq!(take(s), json);
        let bad = CString::new("{not json").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(sfc_siegel_from_json(bad.as_ptr(), &mut h), SfcStatus::Parse);
        assert!(h.is_null());
        sfc_siegel_free(f);
        sfc_siegel_free(g);
    }
}

#[test]
fn extraction_through_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(sfc_siegel_maass_lift(10, 100, &mut f), SfcStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(sfc_half_extract(f, 3, 50, &mut h), SfcStatus::Ok);
        let (mut kappa, mut level, mut prec) = (0i64, 0u64, 0u64);
        assert_eq!(
            sfc_half_info(h, &mut kappa, &mut level, &mut prec),
            SfcStatus::Ok
        );
        assert_eq!((kappa, level, prec), (9, 12, 50));
        let mut s = ptr::null_mut();
        assert_eq!(sfc_half_coefficient(h, 11, &mut s), SfcStatus::Ok);
        assert_eq!(take(s), "198");
        assert_eq!(sfc_half_coefficient(h, 50, &mut s), SfcStatus::Precision);
        let mut bad = ptr::null_mut();
        assert_eq!(
            sfc_half_extract(f, 4, 50, &mut bad),
            SfcStatus::InvalidInput
        );

        // p = 1 reproduces the Eichler–Zagier image
        let mut one = ptr::null_mut();
        let mut ez = ptr::null_mut();
        assert_eq!(sfc_half_extract(f, 1, 100, &mut one), SfcStatus::Ok);
        assert_eq!(sfc_half_ez(10, 100, &mut ez), SfcStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sfc_half_to_json(one, &mut a), SfcStatus::Ok);
        assert_eq!(sfc_half_to_json(ez, &mut b), SfcStatus::Ok);
        assert_eq!(take(a), take(b));
        for p in [h, one, ez] {
            sfc_half_free(p);
        }
        sfc_siegel_free(f);
    }
}

#[test]
fn class_groups_and_bessel() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sfc_class_group_new(-23, &mut g), SfcStatus::Ok);
        let mut h = 0u64;
        assert_eq!(sfc_class_group_order(g, &mut h), SfcStatus::Ok);
        assert_eq!(h, 3);
        let mut s = ptr::null_mut();
        assert_eq!(sfc_class_group_to_json(g, &mut s), SfcStatus::Ok);
        assert_eq!(
            take(s),
            r#"{"disc":-23,"h":3,"reduced":[[1,1,6],[2,1,3],[2,-1,3]],"generators":[{"index":1,"order":3}]}"#
        );
        let mut f = ptr::null_mut();
        assert_eq!(sfc_siegel_maass_lift(10, 30, &mut f), SfcStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(sfc_bessel_period(f, g, 0, &mut re, &mut im), SfcStatus::Ok);
        assert_eq!((re, im), (8208.0, 0.0));
        assert_eq!(sfc_bessel_period(f, g, 1, &mut re, &mut im), SfcStatus::Ok);
        assert_eq!((re, im), (0.0, 0.0));
        assert_eq!(
            sfc_bessel_period(f, g, 3, &mut re, &mut im),
            SfcStatus::InvalidInput
        );
        let mut bad = ptr::null_mut();
        assert_eq!(sfc_class_group_new(12, &mut bad), SfcStatus::InvalidInput);
        sfc_class_group_free(g);
        sfc_siegel_free(f);
    }
}

#[test]
fn null_arguments() {
    unsafe {
        assert_eq!(
            sfc_siegel_maass_lift(10, 10, ptr::null_mut()),
            SfcStatus::NullArgument
        );
        let mut s = ptr::null_mut();
        assert_eq!(
            sfc_siegel_coefficient(ptr::null(), 1, 1, 1, &mut s),
            SfcStatus::NullArgument
        );
        assert_eq!(last_error(), "form is null");
        let mut f = ptr::null_mut();
        assert_eq!(
            sfc_siegel_from_json(ptr::null(), &mut f),
            SfcStatus::NullArgument
        );
        assert_eq!(
            sfc_siegel_maass_lift(11, 10, &mut f),
            SfcStatus::InvalidInput
        );
        sfc_siegel_free(ptr::null_mut());
        sfc_half_free(ptr::null_mut());
        sfc_class_group_free(ptr::null_mut());
        sfc_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/siegelfc.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "sfc_siegel_maass_lift",
        "sfc_half_extract",
        "sfc_bessel_period",
        "sfc_last_error_message",
        "SFC_STATUS_PRECISION = 4",
        "typedef struct SfcSiegelForm SfcSiegelForm;",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // compile a translation unit against the header when a C compiler exists
    let Ok(cc) = which_cc() else { return };
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"siegelfc.h\"\n\
         int main(void) {\n\
           SfcSiegelForm *f = 0;\n\
           SfcStatus st = sfc_siegel_maass_lift(10, 50, &f);\n\
           sfc_siegel_free(f);\n\
           return st == SFC_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc)
            .arg("--version")
            .output()
            .is_ok()
        {
            return Ok(cc);
        }
    }
    Err(())
}
