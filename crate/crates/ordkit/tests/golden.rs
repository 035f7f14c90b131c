//! Byte-for-byte golden outputs with their exit codes. Regenerate a file by
//! running the listed command from this crate's directory.

use std::path::Path;
use std::process::Command;

const CASES: &[(&[&str], i32, &str)] = &[
    (&["enumerate", "--group", "cyclic:5"], 0, "enumerate_cyclic5.json"),
    (&["enumerate", "--group", "cyclic:4", "--list", "--format", "table"], 0, "enumerate_cyclic4.txt"),
    (&["spectrum", "--group", "cyclic:6", "--cap", "10"], 0, "spectrum_cyclic6.json"),
    (&["detect-secret", "--group", "cyclic:3", "--ordering", "natural"], 0, "detect_cyclic3.json"),
    (&["validate", "--group", "klein4", "--ordering", "table:tests/data/klein4_cycle.json"], 1, "validate_klein4.json"),
];

#[test]
fn golden_outputs() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    for (args, code, file) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_ordkit"))
            .args(*args)
            .current_dir(root)
            .env_remove("ORDKIT_MAX_BALL")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(*code), "{args:?}");
        let expected = std::fs::read(root.join("tests/golden").join(file)).unwrap();
        assert!(out.stdout == expected, "{args:?} differs from {file}:\n{}", String::from_utf8_lossy(&out.stdout));
    }
}
