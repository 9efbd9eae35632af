//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const BIN: &str = env!("CARGO_BIN_EXE_sgcs");

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str, budget: Option<Duration>) -> Outcome {
    let t = Instant::now();
    let out = Command::new(BIN).args(["verify", "--suite", name]).output();
    let elapsed = t.elapsed();
    let out = match out {
        Ok(o) => o,
        Err(e) => return Outcome { ok: false, detail: format!("spawn failed: {e}") },
    };
    let stderr = String::from_utf8_lossy(&out.stderr);
    let failed: Vec<&str> = stderr.lines().filter(|l| l.starts_with("FAIL")).collect();
    let checks = stderr.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count();
    let mut ok = out.status.success() && failed.is_empty() && checks > 0;
    let mut detail = format!("{checks} checks, {:.2}s", elapsed.as_secs_f64());
    if let Some(b) = budget {
        if elapsed > b {
            ok = false;
            detail.push_str(&format!(" (budget {}s exceeded)", b.as_secs()));
        } else {
            detail.push_str(&format!(" (budget {}s)", b.as_secs()));
        }
    }
    for f in failed {
        detail.push_str("\n    ");
        detail.push_str(f);
    }
    if !out.status.success() && checks == 0 {
        detail.push_str(&format!("\n    exit {:?}: {}", out.status.code(), stderr.trim()));
    }
    Outcome { ok, detail }
}

fn run_to(args: &[&str], out: &Path) -> Result<Vec<u8>, String> {
    let st = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !st.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", st.status.code(), String::from_utf8_lossy(&st.stderr).trim()));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let runs: [&[&str]; 4] = [
        &["coeffs", "--family", "sgi", "--kappa", "2.5", "--alpha-r", "1.3", "--alpha-phi", "0.4"],
        &["stats-sweep", "--family", "sgi", "--kappa-list", "1,2,5", "--grid", "0:5:41"],
        &["stats-sweep", "--family", "sgii", "--kappa", "1.5", "--grid", "0:50:26"],
        &["contract", "--family", "sgi"],
    ];
    let mut compared = 0;
    for (i, args) in runs.iter().enumerate() {
        let a = run_to(args, &dir.path().join(format!("{i}a.csv")));
        let b = run_to(args, &dir.path().join(format!("{i}b.csv")));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b && !a.is_empty() => compared += 1,
            (Ok(_), Ok(_)) => return Outcome { ok: false, detail: format!("{args:?}: outputs differ") },
            (Err(e), _) | (_, Err(e)) => return Outcome { ok: false, detail: e },
        }
    }
    Outcome { ok: true, detail: format!("{compared} commands byte-identical across two runs") }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("AC1 normalization oracle", Box::new(|| suite("normalization", Some(Duration::from_secs(5))))),
        ("AC2 identity resolution", Box::new(|| suite("identity", Some(Duration::from_secs(60))))),
        ("AC3 quantization closed forms", Box::new(|| suite("quantization", None))),
        ("AC4 algebra relations", Box::new(|| suite("algebra", None))),
        ("AC5 displacement equivalence", Box::new(|| suite("displacement", None))),
        ("AC6 statistics pins", Box::new(|| suite("stats", None))),
        ("AC7 contraction", Box::new(|| suite("contraction", Some(Duration::from_secs(30))))),
        ("AC8 reduction chain", Box::new(|| suite("reduction", None))),
        ("AC9 determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        let o = run();
        if !o.ok {
            failures += 1;
        }
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
