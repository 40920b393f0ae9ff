//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "ffrace.h"

int main(void) {
    FfraceContext *ctx = NULL;
    if (ffrace_context_new("F2", "T^3+T+1", &ctx) != FFRACE_STATUS_OK) return 10;
    size_t n = ffrace_class_count(ctx);
    uint64_t counts[16];
    if (ffrace_count_sieve(ctx, 9, counts, 16) != FFRACE_STATUS_OK) return 11;
    for (size_t i = 0; i < n; i++) {
        char *label = NULL;
        if (ffrace_class_label(ctx, i, &label) != FFRACE_STATUS_OK) return 12;
        printf("%s=%llu\n", label, (unsigned long long)counts[i]);
        ffrace_string_free(label);
    }
    FfraceContext *bad = NULL;
    if (ffrace_context_new("F2", "T^^", &bad) == FFRACE_STATUS_OK) return 13;
    if (ffrace_last_error() == NULL) return 14;
    ffrace_context_free(ctx);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<this test>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libffrace_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in ["1=7", "T=9", "T^2=7", "T+1=9", "T^2+T=9", "T^2+T+1=8", "T^2+1=7"] {
        assert!(text.lines().any(|l| l == line), "{line} missing in {text}");
    }
}
