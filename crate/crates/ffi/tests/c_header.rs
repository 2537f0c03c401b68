//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

fn staticlib() -> PathBuf {
    // Test binaries run from target/<profile>/deps, next to the library;
    // `cargo build` also copies it one level up.
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let here = deps.join("libcoprimenet_ffi.a");
    if here.exists() {
        here
    } else {
        deps.parent().unwrap().join("libcoprimenet_ffi.a")
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "coprimenet.h"

int main(void) {
    CpnNetwork *net = NULL;
    if (cpn_network_build(25, 0, &net) != CPN_STATUS_OK) return 10;
    uint64_t nodes = 0, edges = 0;
    if (cpn_network_node_count(net, &nodes) != CPN_STATUS_OK) return 11;
    if (cpn_network_edge_count(net, &edges) != CPN_STATUS_OK) return 12;
    uint64_t degree = 0;
    if (cpn_network_degree(net, 7, &degree) != CPN_STATUS_NOT_FOUND) return 13;
    if (cpn_last_error_message() == NULL) return 14;
    CpnStats stats;
    if (cpn_network_stats(net, &stats) != CPN_STATUS_OK) return 15;
    printf("%llu %llu %lld %s\n", (unsigned long long)nodes, (unsigned long long)edges,
           (long long)stats.diameter, cpn_version());
    cpn_network_free(net);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("coprimenet.h").exists(), "header not generated");
    let lib = staticlib();
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), format!("15 29 3 {}", env!("CARGO_PKG_VERSION")));
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/coprimenet.h")).unwrap();
    for name in [
        "typedef struct CpnNetwork CpnNetwork",
        "CPN_STATUS_SIZE_CAP = 3",
        "cpn_network_build",
        "cpn_network_free",
        "cpn_network_spectral",
        "cpn_last_error_message",
        "CpnStats",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}
