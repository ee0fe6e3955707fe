//! Shared helpers for the CLI test suites.
#![allow(dead_code)] // each test binary uses a different subset

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct CmdResult {
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub success: bool,
}

impl CmdResult {
    pub fn stdout_str(&self) -> &str {
        std::str::from_utf8(&self.stdout).expect("stdout is UTF-8")
    }

    pub fn stderr_str(&self) -> &str {
        std::str::from_utf8(&self.stderr).expect("stderr is UTF-8")
    }
}

/// Run the textcat binary in `dir` with the given arguments.
pub fn textcat(dir: &Path, args: &[&str]) -> CmdResult {
    let output: Output = Command::new(env!("CARGO_BIN_EXE_textcat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn textcat");
    CmdResult {
        stdout: output.stdout,
        stderr: output.stderr,
        success: output.status.success(),
    }
}

/// Run and require success, returning stdout.
pub fn textcat_ok(dir: &Path, args: &[&str]) -> String {
    let result = textcat(dir, args);
    assert!(
        result.success,
        "textcat {args:?} failed:\n{}",
        result.stderr_str()
    );
    result.stdout_str().to_string()
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compare text against a committed golden file. Set `UPDATE_GOLDEN=1` to
/// rewrite the goldens instead.
pub fn assert_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).expect("write golden");
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(actual, expected, "output differs from golden {name}");
}
