use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use helm_core::fixtures;
use helm_ffi::*;

struct Handle(*mut HelmComplex);

impl Handle {
    fn parse(text: &str) -> Result<Handle, HelmStatus> {
        let text = CString::new(text).unwrap();
        let mut out = ptr::null_mut();
        match unsafe { helm_complex_from_edge_list(text.as_ptr(), &mut out) } {
            HelmStatus::Ok => Ok(Handle(out)),
            s => Err(s),
        }
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { helm_complex_free(self.0) }
    }
}

fn last_error() -> String {
    let p = helm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn matrix(
    f: unsafe extern "C" fn(*const HelmComplex, *mut i64, usize, *mut usize, *mut usize) -> HelmStatus,
    h: &Handle,
) -> Vec<Vec<i64>> {
    let (mut rows, mut cols) = (0, 0);
    assert_eq!(unsafe { f(h.0, ptr::null_mut(), 0, &mut rows, &mut cols) }, HelmStatus::Ok);
    let mut buf = vec![0i64; rows * cols];
    assert_eq!(unsafe { f(h.0, buf.as_mut_ptr(), buf.len(), &mut rows, &mut cols) }, HelmStatus::Ok);
    buf.chunks(cols.max(1)).take(rows).map(<[i64]>::to_vec).collect()
}

#[test]
fn kite_through_the_abi() {
    let h = Handle::parse(fixtures::KITE_EDGE_LIST).unwrap();
    let (mut n, mut m, mut t, mut omega) = (0, 0, 0, 0);
    assert_eq!(unsafe { helm_complex_counts(h.0, &mut n, &mut m, &mut t, &mut omega) }, HelmStatus::Ok);
    assert_eq!((n, m, t, omega), (5, 6, 2, 1));

    assert_eq!(matrix(helm_complex_incidence_b, &h), fixtures::kite_b_rows());
    assert_eq!(matrix(helm_complex_incidence_c, &h).len(), 2);

    for method in [HelmMethod::Product, HelmMethod::Entrywise, HelmMethod::Verify] {
        let mut buf = vec![0i64; 36];
        let (mut r, mut c) = (0, 0);
        let s = unsafe { helm_complex_helmholtzian(h.0, method, buf.as_mut_ptr(), 36, &mut r, &mut c) };
        assert_eq!(s, HelmStatus::Ok);
        let rows: Vec<Vec<i64>> = buf.chunks(6).map(<[i64]>::to_vec).collect();
        assert_eq!(rows, fixtures::kite_h_rows());
    }

    let mut report = HelmNullityReport::default();
    assert_eq!(unsafe { helm_complex_nullity(h.0, &mut report) }, HelmStatus::Ok);
    assert_eq!(report.eta_exact, 0);
    assert!(report.triangles_independent);
}

#[test]
fn k4_reports_dependence() {
    let h = Handle::parse(fixtures::K4_EDGE_LIST).unwrap();
    let mut report = HelmNullityReport::default();
    assert_eq!(unsafe { helm_complex_nullity(h.0, &mut report) }, HelmStatus::Ok);
    assert_eq!((report.eta_exact, report.eta_predicted, report.rank_c), (0, -1, 3));
    assert!(!report.triangles_independent);

    let json = unsafe { helm_complex_nullity_json(h.0) };
    assert!(!json.is_null());
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { helm_string_free(json) };
    assert!(text.contains(r#""eta_predicted":-1"#), "{text}");
}

#[test]
fn decompose_and_rank() {
    let h = Handle::parse("1 2\n2 3\n3 4\n1 4\n").unwrap();
    let mut dim = 0;
    assert_eq!(unsafe { helm_complex_harmonic_dimension(h.0, &mut dim) }, HelmStatus::Ok);
    assert_eq!(dim, 1);

    // circulation around the square: purely harmonic
    let flow = [1.0, 1.0, 1.0, -1.0];
    let (mut g, mut hm, mut c) = ([9.0; 4], [9.0; 4], [9.0; 4]);
    let s = unsafe {
        helm_complex_decompose(h.0, flow.as_ptr(), 4, 1e-9, g.as_mut_ptr(), hm.as_mut_ptr(), c.as_mut_ptr())
    };
    assert_eq!(s, HelmStatus::Ok);
    for e in 0..4 {
        assert!(g[e].abs() < 1e-12 && c[e].abs() < 1e-12);
        assert!((hm[e] - flow[e]).abs() < 1e-12);
    }

    let mut potential = [0.0; 4];
    let mut ranking = HelmRanking::default();
    let s = unsafe { helm_complex_rank(h.0, flow.as_ptr(), 4, potential.as_mut_ptr(), 4, &mut ranking) };
    assert_eq!(s, HelmStatus::Ok);
    assert!((ranking.harmonic_ratio - 1.0).abs() < 1e-12);
    assert!(!ranking.degenerate);
}

#[test]
fn error_codes() {
    assert_eq!(Handle::parse("1 1\n").err(), Some(HelmStatus::InvalidGraph));
    assert!(last_error().contains("record 1"), "{}", last_error());
    assert_eq!(Handle::parse("1 2\n2 1\n").err(), Some(HelmStatus::InvalidGraph));
    assert_eq!(Handle::parse("1 x\n").err(), Some(HelmStatus::Parse));

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { helm_complex_from_edge_list(ptr::null(), &mut out) }, HelmStatus::NullPointer);
    let bad = [0xffu8, 0];
    let s = unsafe { helm_complex_from_edge_list(bad.as_ptr().cast(), &mut out) };
    assert_eq!(s, HelmStatus::InvalidUtf8);
    assert_eq!(unsafe { helm_complex_nullity(ptr::null(), &mut HelmNullityReport::default()) }, HelmStatus::NullPointer);

    let h = Handle::parse("1 2\n2 3\n").unwrap();
    let mut small = [0i64; 3];
    let s = unsafe { helm_complex_incidence_b(h.0, small.as_mut_ptr(), 3, ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(s, HelmStatus::BufferTooSmall);

    let flow = [1.0];
    let s = unsafe { helm_complex_decompose(h.0, flow.as_ptr(), 1, 1e-9, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(s, HelmStatus::DimensionMismatch);
    let flow = [1.0, f64::NAN];
    let s = unsafe { helm_complex_decompose(h.0, flow.as_ptr(), 2, 1e-9, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(s, HelmStatus::NonFinite);
    let s = unsafe { helm_complex_decompose(h.0, flow.as_ptr(), 2, 0.0, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(s, HelmStatus::InvalidArgument);

    for s in [HelmStatus::Ok, HelmStatus::Internal, HelmStatus::InvalidArgument] {
        assert!(!helm_status_message(s).is_null());
    }
    unsafe {
        helm_complex_free(ptr::null_mut());
        helm_string_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip() {
    let h = Handle::parse(fixtures::KITE_EDGE_LIST).unwrap();
    let json = unsafe { helm_complex_to_json(h.0) };
    let text = unsafe { CStr::from_ptr(json) }.to_owned();
    unsafe { helm_string_free(json) };
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { helm_complex_from_json(text.as_ptr(), &mut out) }, HelmStatus::Ok);
    let again = Handle(out);
    let mut t = 0;
    unsafe { helm_complex_counts(again.0, ptr::null_mut(), ptr::null_mut(), &mut t, ptr::null_mut()) };
    assert_eq!(t, 2);
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        r#"#include "helm.h"
int probe(void) {
    HelmComplex *c = 0;
    HelmNullityReport r;
    if (helm_complex_from_edge_list("1 2\n", &c) != HELM_STATUS_OK) return 1;
    helm_complex_nullity(c, &r);
    helm_complex_free(c);
    return (int)r.eta_exact;
}
"#,
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
