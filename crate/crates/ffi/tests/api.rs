use std::ffi::{CStr, CString};
use std::ptr;

use coprimenet_ffi::*;

fn build(n: u64) -> *mut CpnNetwork {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cpn_network_build(n, 0, &mut h) }, CpnStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = cpn_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn n10_counts_and_queries() {
    let h = build(10);
    let (mut nodes, mut edges) = (0u64, 0u64);
    unsafe {
        assert_eq!(cpn_network_node_count(h, &mut nodes), CpnStatus::Ok);
        assert_eq!(cpn_network_edge_count(h, &mut edges), CpnStatus::Ok);
    }
    assert_eq!((nodes, edges), (5, 3));

    let mut buf = [0u64; 5];
    let mut written = 0usize;
    assert_eq!(unsafe { cpn_network_labels(h, buf.as_mut_ptr(), 5, &mut written) }, CpnStatus::Ok);
    assert_eq!((written, buf), (5, [4, 6, 8, 9, 10]));

    let mut d = 0u64;
    assert_eq!(unsafe { cpn_network_degree(h, 9, &mut d) }, CpnStatus::Ok);
    assert_eq!(d, 3);
    let mut e = false;
    assert_eq!(unsafe { cpn_network_has_edge(h, 4, 9, &mut e) }, CpnStatus::Ok);
    assert!(e);
    assert_eq!(unsafe { cpn_network_has_edge(h, 4, 8, &mut e) }, CpnStatus::Ok);
    assert!(!e);

    let mut stats = std::mem::MaybeUninit::<CpnStats>::uninit();
    assert_eq!(unsafe { cpn_network_stats(h, stats.as_mut_ptr()) }, CpnStatus::Ok);
    let stats = unsafe { stats.assume_init() };
    assert_eq!((stats.diameter, stats.max_degree), (-1, 3));
    assert!((stats.link_density - 0.3).abs() < 1e-15);
    assert!((stats.avg_degree - 1.2).abs() < 1e-15);
    unsafe { cpn_network_free(h) };
}

#[test]
fn errors_set_status_and_message() {
    let h = build(10);
    let mut d = 0u64;
    assert_eq!(unsafe { cpn_network_degree(h, 7, &mut d) }, CpnStatus::NotFound);
    assert!(last_error().contains("7 is not a node"));

    let mut buf = [0u64; 2];
    let mut written = 0usize;
    assert_eq!(
        unsafe { cpn_network_labels(h, buf.as_mut_ptr(), 2, &mut written) },
        CpnStatus::BufferTooSmall
    );
    assert_eq!(written, 5);

    let mut s = std::mem::MaybeUninit::<CpnSpectral>::uninit();
    assert_eq!(unsafe { cpn_network_spectral(h, 1, s.as_mut_ptr()) }, CpnStatus::Disconnected);
    assert_eq!(unsafe { cpn_network_node_count(h, ptr::null_mut()) }, CpnStatus::NullPointer);
    assert_eq!(unsafe { cpn_network_node_count(ptr::null(), &mut d) }, CpnStatus::NullPointer);
    unsafe { cpn_network_free(h) };
    unsafe { cpn_network_free(ptr::null_mut()) };

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cpn_network_build(3, 0, &mut h) }, CpnStatus::Domain);
    assert!(h.is_null());
    assert_eq!(unsafe { cpn_network_build(500, 100, &mut h) }, CpnStatus::SizeCap);
    assert!(last_error().contains("cap"));
}

#[test]
fn spectral_on_connected_network() {
    let h = build(300);
    let mut s = std::mem::MaybeUninit::<CpnSpectral>::uninit();
    assert_eq!(unsafe { cpn_network_spectral(h, 1, s.as_mut_ptr()) }, CpnStatus::Ok);
    let s = unsafe { s.assume_init() };
    assert!(0.0 < s.lambda2 && s.lambda2 <= s.lambda_n);
    assert!((s.sync_ratio - s.lambda_n / s.lambda2).abs() < 1e-12);
    assert!(s.lambda1_adj > 0.0 && s.residual < 1e-6);
    unsafe { cpn_network_free(h) };
}

#[test]
fn edge_list_export() {
    let h = build(25);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.txt");
    let c = CString::new(path.to_str().unwrap()).unwrap();
    assert_eq!(unsafe { cpn_network_write_edge_list(h, c.as_ptr()) }, CpnStatus::Ok);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 29);
    assert!(text.lines().any(|l| l == "4 9"));
    let bad = CString::new("/nonexistent-dir/x.txt").unwrap();
    assert_eq!(unsafe { cpn_network_write_edge_list(h, bad.as_ptr()) }, CpnStatus::Io);
    unsafe { cpn_network_free(h) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(cpn_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
