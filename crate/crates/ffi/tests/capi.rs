use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gamma_groups_ffi::*;

fn catalog(name: &str) -> *mut GgGroup {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gg_catalog_group(name.as_ptr(), &mut g) },
        GgStatus::Ok
    );
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = gg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { gg_string_free(p) };
    s
}

#[test]
fn pauli_queries() {
    let g = catalog("pauli");
    unsafe {
        assert_eq!(gg_group_order(g), 16);
        assert_eq!(gg_group_dimension(g), 2);
        assert_eq!(gg_group_class_count(g), 10);
        assert_eq!(gg_group_center_order(g), 4);
        gg_group_free(g);
    }
}

#[test]
fn aliases_resolve_to_the_same_group() {
    let (a, b) = (catalog("pauli"), catalog("d_gamma"));
    let mut iso = -1;
    unsafe {
        assert_eq!(gg_group_is_isomorphic(a, b, &mut iso), GgStatus::Ok);
        gg_group_free(a);
        gg_group_free(b);
    }
    assert_eq!(iso, 1);
}

#[test]
fn quaternion_kinds_are_not_isomorphic() {
    let (a, b) = (catalog("Q2"), catalog("q2"));
    let mut iso = -1;
    unsafe {
        assert_eq!(gg_group_is_isomorphic(a, b, &mut iso), GgStatus::Ok);
        gg_group_free(a);
        gg_group_free(b);
    }
    assert_eq!(iso, 0);
}

#[test]
fn unknown_name_sets_error() {
    let name = CString::new("no_such_group").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gg_catalog_group(name.as_ptr(), &mut g) },
        GgStatus::UnknownName
    );
    assert!(g.is_null());
    assert!(last_error().contains("no_such_group"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gg_catalog_group(ptr::null(), &mut g) },
        GgStatus::NullPointer
    );
    assert_eq!(unsafe { gg_group_order(ptr::null()) }, 0);
    let mut out = 0;
    assert_eq!(
        unsafe { gg_group_is_isomorphic(ptr::null(), ptr::null(), &mut out) },
        GgStatus::NullPointer
    );
    unsafe {
        gg_group_free(ptr::null_mut());
        gg_string_free(ptr::null_mut());
    }
}

#[test]
fn group_from_json_and_analyze() {
    let json = CString::new(
        r#"{"name":"x","dimension":2,"generators":["[[0,1],[1,0]]","[[1,0],[0,-1]]"]}"#,
    )
    .unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gg_group_from_json(json.as_ptr(), 0, &mut g) },
        GgStatus::Ok
    );
    assert_eq!(unsafe { gg_group_order(g) }, 8);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gg_analyze_json(g, &mut out) }, GgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["invariant"], 1);
    unsafe { gg_group_free(g) };
}

#[test]
fn cap_and_parse_errors_map_to_codes() {
    let json = CString::new(
        r#"{"name":"x","dimension":2,"generators":["[[0,1],[1,0]]","[[1,0],[0,-1]]"]}"#,
    )
    .unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gg_group_from_json(json.as_ptr(), 4, &mut g) },
        GgStatus::CapExceeded
    );
    let bad = CString::new(r#"{"name":"x","dimension":2,"generators":["[[0,1],[1"]}"#).unwrap();
    assert_eq!(
        unsafe { gg_group_from_json(bad.as_ptr(), 0, &mut g) },
        GgStatus::ParseError
    );
    assert!(!last_error().is_empty());
}

#[test]
fn claims_through_the_c_interface() {
    let filter = CString::new("pauli.*").unwrap();
    let (mut out, mut failures) = (ptr::null_mut(), usize::MAX);
    assert_eq!(
        unsafe { gg_verify_claims(filter.as_ptr(), &mut out, &mut failures) },
        GgStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(failures, 0);

    let none = CString::new("nonexistent.*").unwrap();
    assert_eq!(
        unsafe { gg_verify_claims(none.as_ptr(), &mut out, &mut failures) },
        GgStatus::UnknownClaim
    );
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(gg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/gamma_groups.h");
    for f in [
        "gg_catalog_group",
        "gg_group_from_json",
        "gg_group_free",
        "gg_group_order",
        "gg_group_dimension",
        "gg_group_class_count",
        "gg_group_center_order",
        "gg_group_is_isomorphic",
        "gg_analyze_json",
        "gg_verify_claims",
        "gg_string_free",
        "gg_last_error_message",
        "gg_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct GgGroup GgGroup;"));
}
