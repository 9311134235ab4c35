use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ctpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctpair")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixtures() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fx");
    let o = ctpair(&["fixtures", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    (dir, out)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const EMPTY_PLACES: &str = r#"{
  "group": {"table": [[0, 1], [1, 0]]},
  "coefficient": "C",
  "modules": {"C": {"moduli": [2]}},
  "places": []
}"#;

#[test]
fn fixtures_are_byte_reproducible() {
    let (dir, a) = fixtures();
    let b = dir.path().join("again");
    assert_eq!(code(&ctpair(&["fixtures", "-o", path(&b)])), 0);
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 14);
    for n in &names {
        assert_eq!(std::fs::read(a.join(n)).unwrap(), std::fs::read(b.join(n)).unwrap(), "{n:?}");
    }
    // rewriting in place leaves the bytes alone
    let before = std::fs::read(a.join("seed.json")).unwrap();
    assert_eq!(code(&ctpair(&["fixtures", "-o", path(&a)])), 0);
    assert_eq!(std::fs::read(a.join("seed.json")).unwrap(), before);
    // the checked-in copies are current
    let shipped = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../contexts");
    for n in &names {
        assert_eq!(std::fs::read(shipped.join(n)).unwrap(), std::fs::read(a.join(n)).unwrap(), "contexts/{n:?} is stale");
    }
}

#[test]
fn shipped_contexts_validate() {
    let (_dir, fx) = fixtures();
    for e in std::fs::read_dir(&fx).unwrap() {
        let p = e.unwrap().path();
        let name = p.file_name().unwrap().to_str().unwrap().to_string();
        let o = ctpair(&["validate", path(&p)]);
        let want = if name == "broken.json" { 1 } else { 0 };
        assert_eq!(code(&o), want, "{name}: {}", stdout(&o));
        let strict = ctpair(&["validate", "--strict", path(&p)]);
        if !name.starts_with("index2-cyclotomic") && name != "broken.json" {
            assert_eq!(code(&strict), 0, "{name} --strict: {}", stdout(&strict));
        }
    }
}

#[test]
fn broken_context_names_the_reciprocity_witness() {
    let (_dir, fx) = fixtures();
    let o = ctpair(&["validate", path(&fx.join("broken.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL reciprocity: class [1] of H²(G, C) has invariant sum 1/2"), "{}", stdout(&o));
}

#[test]
fn empty_places_context_loads() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "empty.json", EMPTY_PLACES);
    let o = ctpair(&["validate", path(&p)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("ok   reciprocity"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let dangling = write(
        &dir,
        "dangling.json",
        r#"{"group": {"table": [[0, 1], [1, 0]]}, "coefficient": "C", "modules": {"C": {"moduli": [2]}},
            "places": [{"name": "v", "decomposition": "Dv", "inertia": "Dv", "inv": []}]}"#,
    );
    let o = ctpair(&["validate", path(&dangling)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("schema error at $.places[0].decomposition: unknown subgroup \"Dv\""), "{}", stderr(&o));

    let garbled = write(&dir, "garbled.json", "{\n  \"group\": [\n");
    let o = ctpair(&["validate", path(&garbled)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parse error at line 3"), "{}", stderr(&o));

    let o = ctpair(&["validate", path(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);

    let o = ctpair(&["verify", "no-such-suite"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown suite"));

    let o = ctpair(&["ctp"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn seed_pairing_value() {
    let (_dir, fx) = fixtures();
    let seed = fx.join("seed.json");
    let o = ctpair(&["ctp", path(&seed), "--sequence", "twisted", "--rechoose", "10"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("φ=[1] ψ=[1]: 1/2"), "{}", stdout(&o));
    assert!(stdout(&o).contains("kernels match the Selmer images: true"));

    let o = ctpair(&["ctp", path(&seed), "--sequence", "twisted", "--phi", "1", "--psi", "1", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "φ=[1] ψ=[1]: 1/2");

    let o = ctpair(&["ctp", path(&seed), "--sequence", "twisted", "--phi", "9", "--psi", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn rechoice_on_broken_context_is_a_property_failure() {
    let (_dir, fx) = fixtures();
    let o = ctpair(&["ctp", path(&fx.join("broken.json")), "--sequence", "twisted", "--rechoose", "20"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("gives"));
}

#[test]
fn induce_to_the_trivial_subgroup() {
    let (dir, fx) = fixtures();
    let out = dir.path().join("ind.json");
    let o = ctpair(&["induce", path(&fx.join("seed.json")), "--subgroup", "1", "-o", path(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let places = doc["places"].as_array().unwrap();
    assert_eq!(places.len(), 2);
    for p in places {
        assert_eq!(p["decomposition"], "G");
        assert_eq!(doc["subgroups"]["G"], serde_json::json!([0]));
        assert!(p["inv"].as_array().unwrap().is_empty());
    }
    assert_eq!(code(&ctpair(&["validate", path(&out)])), 0);
}

#[test]
fn cohomology_selmer_and_maps() {
    let (_dir, fx) = fixtures();
    let seed = fx.join("seed.json");
    let o = ctpair(&["cohomology", path(&seed), "--module", "C", "--degree", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("H^2: invariant factors [2], order 2"), "{}", stdout(&o));

    let o = ctpair(&["selmer", path(&seed), "--decorated", "twisted.M2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Sel: order 2"), "{}", stdout(&o));

    let o = ctpair(&["maps", path(&seed), "--module", "C", "--subgroup", "1", "--degree", "0"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("res: [2] -> [2]") && s.contains("cores: [2] -> [2]"), "{s}");

    let o = ctpair(&["selmer", path(&seed), "--decorated", "nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_writes_a_json_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = ctpair(&["verify", "gamma", "--json", path(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let cases = doc["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    let c = cases[0].as_object().unwrap();
    let mut keys: Vec<_> = c.keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["case", "micros", "status", "suite", "witness"]);
    assert_eq!(c["status"], "pass");
    assert_eq!(c["suite"], "gamma");
}
