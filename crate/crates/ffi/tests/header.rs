use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(root().join("include/lfun.h")).unwrap();
    for name in [
        "LFUN_STATUS_RESOURCE_LIMIT",
        "typedef struct LfunModule LfunModule",
        "lfun_job_run",
        "lfun_module_from_job",
        "lfun_l_euler",
        "lfun_series_coefficient",
        "lfun_legendre_unit_root",
        "lfun_last_error",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // integration tests live next to the library artifacts in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.join("liblfun_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built yet; skipping link check");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping link check");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let ok = Command::new("cc")
        .arg(root().join("tests/smoke.c"))
        .arg("-I")
        .arg(root().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(ok.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 2 4 8");
}
