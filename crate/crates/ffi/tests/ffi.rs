use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use moy_ffi::*;

fn fixture(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    moy_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = moy_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn example_graph_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(moy_graph_from_json(fixture("fig13.graph").as_ptr(), &mut g), MoyStatus::Ok);
        let mut valid = false;
        assert_eq!(moy_graph_validate(g, &mut valid), MoyStatus::Ok);
        assert!(valid);
        for m in [MOY_METHOD_STATESUM, MOY_METHOD_SPANNING, MOY_METHOD_MATRIXTREE] {
            let mut s = ptr::null_mut();
            assert_eq!(moy_alexander(g, m, &mut s), MoyStatus::Ok);
            assert_eq!(take(s), "1 + 2*t + 3*t^2 + 3*t^3 + 2*t^4 + t^5");
        }
        let mut n = 0;
        assert_eq!(moy_tree_count(g, &mut n), MoyStatus::Ok);
        assert_eq!(n, 12);
        let mut json = ptr::null_mut();
        assert_eq!(moy_graph_to_json(g, &mut json), MoyStatus::Ok);
        let mut back = ptr::null_mut();
        let text = CString::new(take(json)).unwrap();
        assert_eq!(moy_graph_from_json(text.as_ptr(), &mut back), MoyStatus::Ok);
        moy_graph_free(back);
        moy_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("{ not json").unwrap();
        assert_eq!(moy_graph_from_json(bad.as_ptr(), &mut g), MoyStatus::InvalidInput);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(moy_graph_from_json(ptr::null(), &mut g), MoyStatus::NullPointer);
        assert_eq!(moy_gen(1, 0, &mut g), MoyStatus::InvalidInput);

        assert_eq!(moy_gen(3, 5, &mut g), MoyStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(moy_alexander(g, 17, &mut s), MoyStatus::InvalidInput);
        assert!(last_error().contains("unknown method"));
        assert_eq!(moy_alexander(g, MOY_METHOD_STATESUM, ptr::null_mut()), MoyStatus::NullPointer);
        moy_graph_free(g);
        moy_graph_free(ptr::null_mut());
        moy_string_free(ptr::null_mut());
    }
}

#[test]
fn generated_graphs_are_deterministic() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(moy_gen(42, 10, &mut a), MoyStatus::Ok);
        assert_eq!(moy_gen(42, 10, &mut b), MoyStatus::Ok);
        let (mut ja, mut jb) = (ptr::null_mut(), ptr::null_mut());
        moy_graph_to_json(a, &mut ja);
        moy_graph_to_json(b, &mut jb);
        assert_eq!(take(ja), take(jb));
        moy_graph_free(a);
        moy_graph_free(b);
    }
}

#[test]
fn pd_comparison() {
    unsafe {
        let mut equal = true;
        let (mut c, mut s) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(moy_pd_compare(fixture("trefoil.pd").as_ptr(), &mut equal, &mut c, &mut s), MoyStatus::Ok);
        assert!(!equal);
        assert_eq!(take(c), "1 + t + t^2");
        assert_eq!(take(s), "1 + 2*t + t^2");
        assert_eq!(moy_pd_compare(fixture("fig8.pd").as_ptr(), &mut equal, ptr::null_mut(), ptr::null_mut()), MoyStatus::Ok);
        assert!(equal);
        let bad = CString::new("X 1 2 3").unwrap();
        assert_eq!(moy_pd_compare(bad.as_ptr(), &mut equal, ptr::null_mut(), ptr::null_mut()), MoyStatus::InvalidInput);
    }
}

#[test]
fn header_declares_the_interface() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = std::fs::read_to_string(dir.join("moy.h")).unwrap();
    for name in [
        "moy_graph_from_json",
        "moy_graph_free",
        "moy_graph_to_json",
        "moy_graph_validate",
        "moy_alexander",
        "moy_tree_count",
        "moy_gen",
        "moy_pd_compare",
        "moy_string_free",
        "moy_last_error",
        "MOY_STATUS_VIOLATION",
        "typedef struct MoyGraph MoyGraph",
    ] {
        assert!(header.contains(name), "{name} missing from moy.h");
    }
    // the header must be valid C when a compiler is around
    let Ok(probe) = Command::new("cc").arg("--version").output() else { return };
    if !probe.status.success() {
        return;
    }
    let tmp = std::env::temp_dir().join(format!("moy-header-{}.c", std::process::id()));
    std::fs::write(&tmp, "#include \"moy.h\"\nint main(void) { return MOY_STATUS_OK; }\n").unwrap();
    let out = Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-I").arg(&dir).arg(&tmp).output().unwrap();
    let _ = std::fs::remove_file(&tmp);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
