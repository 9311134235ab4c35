//! One line per acceptance criterion, from a single `ctpair verify all` run.
//! All comparisons inside the suites are exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ctpair::fixtures;
use ctpair::verify::{CaseReport, Report, Status};

struct Run {
    report: Report,
    exit: Option<i32>,
    wall: Duration,
}

fn run_all() -> Run {
    let dir = tempfile::TempDir::new().unwrap();
    let json = dir.path().join("report.json");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ctpair"))
        .args(["verify", "all", "--max-order", "12", "--json", json.to_str().unwrap()])
        .output()
        .expect("binary runs");
    let wall = start.elapsed();
    let report = serde_json::from_str(&std::fs::read_to_string(&json).expect("report written")).expect("report parses");
    Run { report, exit: out.status.code(), wall }
}

fn cases<'a>(r: &'a Report, suite: &str) -> Vec<&'a CaseReport> {
    r.cases.iter().filter(|c| c.suite == suite).collect()
}

fn seconds(cs: &[&CaseReport]) -> f64 {
    cs.iter().map(|c| c.micros).sum::<u64>() as f64 / 1e6
}

/// Passes when every case of the suites passed (skips allowed only where
/// noted) and there is at least one case.
fn all_pass(r: &Report, suites: &[&str], allow_skip: bool) -> Result<usize, String> {
    let mut n = 0;
    for s in suites {
        let cs = cases(r, s);
        if cs.is_empty() {
            return Err(format!("suite {s} produced no cases"));
        }
        for c in &cs {
            match c.status {
                Status::Pass => {}
                Status::Skip if allow_skip => {}
                _ => return Err(format!("{}/{}: {:?} {}", c.suite, c.case, c.status, c.witness.clone().unwrap_or_default())),
            }
        }
        n += cs.len();
    }
    Ok(n)
}

fn detected(r: &Report, suite: &str, case: &str) -> Result<(), String> {
    let c = r.cases.iter().find(|c| c.suite == suite && c.case == case).ok_or_else(|| format!("no case {suite}/{case}"))?;
    match (&c.status, &c.witness) {
        (Status::Pass, Some(w)) if w.starts_with("detected: ") => Ok(()),
        _ => Err(format!("{suite}/{case} did not record a detected failure")),
    }
}

fn within(cs: &[&CaseReport], limit: f64) -> Result<f64, String> {
    let t = seconds(cs);
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:.1} s, limit {limit} s"))
    }
}

fn groups_covered(r: &Report, suite: &str) -> Result<(), String> {
    let seen: BTreeSet<&str> = cases(r, suite).iter().filter_map(|c| c.case.split('/').next()).collect();
    for g in ["Z2", "Z3", "Z4", "V4", "Z6", "S3", "D4", "Q8"] {
        if !seen.contains(g) {
            return Err(format!("{suite} never ran on {g}"));
        }
    }
    Ok(())
}

fn names(r: &Report, suite: &str) -> BTreeSet<String> {
    cases(r, suite).iter().map(|c| c.case.clone()).collect()
}

fn every_shipped_sequence(r: &Report, suite: &str) -> Result<(), String> {
    let have = names(r, suite);
    for s in fixtures::shipped_sequences() {
        if !have.contains(&s.name) {
            return Err(format!("{suite} has no case for {}", s.name));
        }
    }
    Ok(())
}

fn criteria(run: &Run) -> Vec<(&'static str, Result<String, String>)> {
    let r = &run.report;
    let mut out: Vec<(&'static str, Result<String, String>)> = Vec::new();

    out.push(("homotopy relations on the whole inventory", (|| {
        let n = all_pass(r, &["homotopy"], false)?;
        groups_covered(r, "homotopy")?;
        let t = within(&cases(r, "homotopy"), 60.0)?;
        Ok(format!("{n} cases, {t:.1} s"))
    })()));

    out.push(("cochain Shapiro identities and group-change diagrams, exhaustive cross-check for |G| ≤ 6", (|| {
        let n = all_pass(r, &["group-change"], false)?;
        groups_covered(r, "group-change")?;
        let have = names(r, "group-change");
        for g in ["Z2", "Z3", "Z4", "V4", "Z6", "S3"] {
            if !have.contains(&format!("{g}/exhaustive-cross-check")) {
                return Err(format!("no exhaustive cross-check for {g}"));
            }
        }
        for kind in ["cochain-shapiro", "shapiro-diagrams", "corestriction-diagrams"] {
            if !have.iter().any(|c| c.ends_with(kind)) {
                return Err(format!("no {kind} cases"));
            }
        }
        let t = within(&cases(r, "group-change"), 180.0)?;
        Ok(format!("{n} cases, {t:.1} s"))
    })()));

    out.push(("cores∘res = [G:H]·id", (|| {
        let n = all_pass(r, &["cores-res"], false)?;
        groups_covered(r, "cores-res")?;
        Ok(format!("{n} cases"))
    })()));

    out.push(("well-definedness under 20 re-choices, broken context detected", (|| {
        let n = all_pass(r, &["well-definedness"], false)?;
        every_shipped_sequence(r, "well-definedness")?;
        detected(r, "well-definedness", "broken-reciprocity/detected")?;
        let t = within(&cases(r, "well-definedness"), 120.0)?;
        Ok(format!("{n} cases, {t:.1} s"))
    })()));

    out.push(("kernels equal π(Sel M) and ι^∨(Sel M^∨)", (|| {
        let n = all_pass(r, &["kernels"], false)?;
        every_shipped_sequence(r, "kernels")?;
        Ok(format!("{n} sequences"))
    })()));

    out.push(("duality identity and naturality", (|| {
        let n = all_pass(r, &["duality", "naturality"], false)?;
        every_shipped_sequence(r, "duality")?;
        let morphisms = fixtures::shipped_morphisms().map_err(|e| e.to_string())?;
        let have = names(r, "naturality");
        if let Some(m) = morphisms.iter().find(|m| !have.contains(&m.name)) {
            return Err(format!("no naturality case for {}", m.name));
        }
        Ok(format!("{n} cases"))
    })()));

    out.push(("invariance under conjugating every place", (|| {
        let n = all_pass(r, &["conjugation"], false)?;
        every_shipped_sequence(r, "conjugation")?;
        Ok(format!("{n} sequences × 10 tuples"))
    })()));

    out.push(("CTP_E = CTP_{Ind E} on the index 2 and 3 families", (|| {
        let n = all_pass(r, &["field-change"], false)?;
        let have = names(r, "field-change");
        for fam in ["index2-cyclotomic", "index2-klein", "index3-cyclic", "index3-symmetric"] {
            if !have.contains(&format!("{fam}/induction")) {
                return Err(format!("no induction case for {fam}"));
            }
        }
        Ok(format!("{n} cases"))
    })()));

    out.push(("restriction/corestriction and Galois invariance where hypotheses hold", (|| {
        let n = all_pass(r, &["restriction", "galois"], true)?;
        let controls: Vec<String> = names(r, "restriction").into_iter().filter(|c| c.ends_with("/hypothesis-control")).collect();
        if controls.is_empty() {
            return Err("no hypothesis controls".into());
        }
        for c in &controls {
            detected(r, "restriction", c)?;
        }
        let evaluated = r.cases.iter().filter(|c| (c.suite == "restriction" && c.case.contains("/part")) || c.suite == "galois").filter(|c| c.status == Status::Pass).count();
        if evaluated == 0 {
            return Err("every identity was skipped".into());
        }
        Ok(format!("{n} cases, {evaluated} identities evaluated"))
    })()));

    out.push(("symmetry, antisymmetry and alternating γ_n at n = 2", (|| {
        let n = all_pass(r, &["symmetry", "antisymmetry", "gamma"], false)?;
        Ok(format!("{n} cases"))
    })()));

    out.push(("exhaustive transcript oracle for |G| = 2", (|| {
        let n = all_pass(r, &["oracle"], false)?;
        detected(r, "oracle", "broken-reciprocity/detected")?;
        let t = within(&cases(r, "oracle"), 60.0)?;
        Ok(format!("{n} cases, {t:.2} s"))
    })()));

    out.push(("verify all --max-order 12 exits 0 within 10 minutes", (|| {
        if run.exit != Some(0) {
            return Err(format!("exit code {:?}", run.exit));
        }
        if run.wall >= Duration::from_secs(600) {
            return Err(format!("took {:?}", run.wall));
        }
        Ok(format!("{} cases, {:.1} s", r.cases.len(), run.wall.as_secs_f64()))
    })()));

    out
}

fn main() {
    let run = run_all();
    let results = criteria(&run);
    assert_eq!(results.len(), 12);
    let mut failed = 0;
    for (i, (what, res)) in results.iter().enumerate() {
        match res {
            Ok(detail) => println!("criterion {:>2}: PASS  {what} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {what}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
