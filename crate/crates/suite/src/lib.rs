//! Runner for the acceptance checks: one line per criterion, a non-zero exit
//! code if any of them fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

/// Result of one criterion.
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }

    /// Passes only if every part passes; details are joined with `; `.
    pub fn all(parts: Vec<Outcome>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let detail =
            parts.iter().map(|p| format!("{}{}", if p.pass { "" } else { "FAILED " }, p.detail)).collect::<Vec<_>>().join("; ");
        Outcome { pass, detail }
    }
}

#[derive(Default)]
pub struct Suite {
    passed: usize,
    failed: Vec<u32>,
}

impl Suite {
    /// Runs one criterion, printing its line as soon as it finishes. A panic
    /// counts as a failure.
    pub fn run(&mut self, id: u32, name: &str, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let out = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        println!("criterion {id} {}: {name} [{secs:.1}s] {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        if out.pass {
            self.passed += 1;
        } else {
            self.failed.push(id);
        }
    }

    pub fn finish(self) -> ExitCode {
        let total = self.passed + self.failed.len();
        println!("acceptance: {}/{total} criteria passed", self.passed);
        if self.failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            println!("failed: {:?}", self.failed);
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_joins_and_flags_failures() {
        let o = Outcome::all(vec![Outcome::new(true, "a"), Outcome::new(false, "b")]);
        assert!(!o.pass);
        assert_eq!(o.detail, "a; FAILED b");
    }
}
