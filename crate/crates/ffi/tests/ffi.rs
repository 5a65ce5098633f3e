use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fskein_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { fsk_string_free(s) };
    out
}

fn engine(preset: &str) -> *mut FskEngine {
    let name = CString::new(preset).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { fsk_engine_from_preset(name.as_ptr(), &mut e) }, FSK_OK);
    e
}

fn parse(e: *const FskEngine, text: &str) -> *mut FskElement {
    let t = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { fsk_element_parse(e, t.as_ptr(), &mut g) }, FSK_OK);
    g
}

#[test]
fn abelianization_and_germ() {
    let e = engine("higman:4");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fsk_engine_abelianization(e, &mut s) }, FSK_OK);
    assert_eq!(take(s), "Z^2");
    unsafe { fsk_engine_free(e) };

    let e = engine("mirror-cleary:2");
    assert_eq!(unsafe { fsk_engine_germ(e, FSK_END_O, &mut s) }, FSK_OK);
    assert_eq!(take(s), "Gr<a,b | a a = b>");
    assert_eq!(unsafe { fsk_engine_germ(e, 7, &mut s) }, FSK_ERR_DOMAIN);
    unsafe { fsk_engine_free(e) };
}

#[test]
fn element_arithmetic() {
    let e = engine("cleary:2");
    let g = parse(e, "b1");
    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { fsk_element_inverse(g, &mut inv) }, FSK_OK);
    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { fsk_element_multiply(g, inv, &mut prod) }, FSK_OK);
    let mut v = -1;
    assert_eq!(unsafe { fsk_element_is_identity(prod, &mut v) }, FSK_OK);
    assert_eq!(v, FSK_VERDICT_EQUAL);
    assert_eq!(unsafe { fsk_element_is_identity(g, &mut v) }, FSK_OK);
    assert_eq!(v, FSK_VERDICT_DISTINCT);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fsk_element_to_string(g, &mut s) }, FSK_OK);
    assert_eq!(take(s), "frac(a1 b1 ; (1 2 3) ; a1 a2)");
    let rel = parse(e, "frac(a1 a2 ; id ; b1 b1)");
    assert_eq!(unsafe { fsk_element_is_identity(rel, &mut v) }, FSK_OK);
    assert_eq!(v, FSK_VERDICT_EQUAL);
    for h in [g, inv, prod, rel] {
        unsafe { fsk_element_free(h) };
    }
    unsafe { fsk_engine_free(e) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("nonsense:3").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { fsk_engine_from_preset(bad.as_ptr(), &mut e) }, FSK_ERR_DOMAIN);
    let msg = unsafe { CStr::from_ptr(fsk_last_error()) }.to_str().unwrap();
    assert!(msg.contains("unknown preset"), "{msg}");
    assert_eq!(unsafe { fsk_engine_from_preset(ptr::null(), &mut e) }, FSK_ERR_NULL);

    let text = CString::new("colors: a b\nrel: a1 a2 = q1 b1").unwrap();
    assert_eq!(unsafe { fsk_engine_from_text(text.as_ptr(), &mut e) }, FSK_ERR_PARSE);

    let e1 = engine("cleary:2");
    let e2 = engine("cleary:2");
    let (g, h) = (parse(e1, "a1"), parse(e2, "a1"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fsk_element_multiply(g, h, &mut out) }, FSK_ERR_DOMAIN);
    let t = CString::new("frac(a1 ; id").unwrap();
    assert!(unsafe { fsk_element_parse(e1, t.as_ptr(), &mut out) } < 0);
    unsafe {
        fsk_element_free(g);
        fsk_element_free(h);
        fsk_engine_free(e1);
        fsk_engine_free(e2);
        fsk_element_free(ptr::null_mut());
    }
}

#[test]
fn engine_description() {
    let text = CString::new("colors: a b\nrel: a1 a2 = b1 b1").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { fsk_engine_from_text(text.as_ptr(), &mut e) }, FSK_OK);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fsk_engine_describe(e, &mut s) }, FSK_OK);
    assert!(take(s).starts_with("engine=cleary-nf"));
    unsafe { fsk_engine_free(e) };
}

/// The generated header compiles as C and declares every entry point.
#[test]
fn header_is_valid_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/fskein.h")).unwrap();
    for f in ["fsk_engine_from_preset", "fsk_element_multiply", "fsk_last_error", "fsk_string_free"] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I", &format!("{dir}/include"), &format!("{dir}/tests/c/smoke.c")])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());

    // link and run it when the static library sits next to the test binary
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile.join("libfskein_ffi.a");
    if !lib.exists() {
        eprintln!("no static library at {}; skipping link", lib.display());
        return;
    }
    let bin = profile.join("fskein_smoke");
    let status = std::process::Command::new("cc")
        .args(["-I", &format!("{dir}/include"), &format!("{dir}/tests/c/smoke.c")])
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Z^2");
}
