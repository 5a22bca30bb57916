//! Loads the freshly built extension into Python and runs python/smoke_test.py.

use std::path::{Path, PathBuf};
use std::process::Command;

fn built_library() -> PathBuf {
    // The test binary lives in <target>/<profile>/deps; the library one level up.
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let name = if cfg!(target_os = "macos") {
        "libcha.dylib"
    } else {
        "libcha.so"
    };
    profile_dir.join(name)
}

#[test]
fn python_smoke_test() {
    if Command::new("python3").arg("--version").output().is_err() {
        eprintln!("python3 not found; skipping");
        return;
    }
    let lib = built_library();
    assert!(lib.exists(), "{} was not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(&lib, dir.path().join("cha.so")).unwrap();
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3")
        .arg(&script)
        .env("PYTHONPATH", dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}
