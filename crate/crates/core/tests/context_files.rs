use ctpair::group::FiniteGroup;
use ctpair::io::{cochain_literal, load_str, parse_cochain_str, parse_group_str, shipped_files};
use ctpair::module::GModule;
use ctpair::{Cochain, LoadError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn shipped_files_round_trip() {
    let files = shipped_files();
    assert_eq!(files.len(), 14);
    for (name, f) in &files {
        let text = f.to_json().unwrap();
        assert!(text.ends_with('\n'));
        let back = load_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(back == *f, "{name} changed on reload");
        assert_eq!(back.to_json().unwrap(), text, "{name} is not byte-stable");
    }
    let again: Vec<String> = shipped_files().iter().map(|(_, f)| f.to_json().unwrap()).collect();
    let first: Vec<String> = files.iter().map(|(_, f)| f.to_json().unwrap()).collect();
    assert_eq!(again, first);
}

#[test]
fn permutations_and_tables_agree() {
    let from_perms = parse_group_str(r#"{"permutations": [[1, 2, 0], [1, 0, 2]]}"#).unwrap();
    assert_eq!(from_perms.order(), 6);
    let table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| from_perms.mul(a, b)).collect()).collect();
    let text = serde_json::json!({ "table": table }).to_string();
    let from_table = parse_group_str(&text).unwrap();
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(from_table.mul(a, b), from_perms.mul(a, b));
        }
    }
    let s3 = FiniteGroup::symmetric3();
    assert_eq!(s3.order(), from_perms.order());
}

#[test]
fn group_errors() {
    for bad in [
        r#"{"table": [[0, 1], [0, 1]]}"#,
        r#"{"permutations": [[0, 0]]}"#,
        r#"{"table": [[0]], "permutations": [[0]]}"#,
        r#"{"table": [[0, 1], [1, 0]], "labels": ["e"]}"#,
        r#"{"permutations": [[1, 2, 3, 4, 5, 6, 7, 0], [1, 0, 2, 3, 4, 5, 6, 7]]}"#,
        "[",
    ] {
        assert!(parse_group_str(bad).is_err(), "{bad} accepted");
    }
}

#[test]
fn cochain_literals_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = FiniteGroup::symmetric3();
    let m = GModule::trivial_action(&g.whole(), vec![2, 3]);
    for n in 0..3 {
        for _ in 0..5 {
            let c = Cochain::random(&m, n, &mut rng).unwrap();
            let text = cochain_literal(&c).to_string();
            assert_eq!(parse_cochain_str(&m, n, &text).unwrap(), c);
        }
    }
}

fn schema_path(e: LoadError) -> String {
    match e {
        LoadError::Schema { path, .. } | LoadError::Validation { path, .. } => path,
        other => panic!("expected a located error, got {other}"),
    }
}

#[test]
fn bad_cochain_literals_name_the_key() {
    let g = FiniteGroup::cyclic(2);
    let m = GModule::trivial_action(&g.whole(), vec![2]);
    let e = parse_cochain_str(&m, 2, r#"{"1,x": [1]}"#).unwrap_err();
    assert_eq!(schema_path(e), "$[\"1,x\"]");
    let e = parse_cochain_str(&m, 2, r#"{"1": [1]}"#).unwrap_err();
    assert!(e.to_string().contains("expected 2 indices"));
    let e = parse_cochain_str(&m, 1, r#"{"5": [1]}"#).unwrap_err();
    assert!(e.to_string().contains("not in the acting group"));
    assert!(parse_cochain_str(&m, 1, r#"{"1": [1, 0]}"#).is_err());
    assert!(matches!(parse_cochain_str(&m, 1, "{\n  \"1\": [1],\n}"), Err(LoadError::Parse { line: 3, .. })));
}

const SEED: &str = r#"{
  "version": 1,
  "group": {"table": [[0, 1], [1, 0]]},
  "subgroups": {"G": [0, 1], "1": [0]},
  "coefficient": "C",
  "modules": {"C": {"moduli": [2]}},
  "places": [
    {"name": "v1", "decomposition": "G", "inertia": "1", "inv": [[{"1,1": [1]}, "1/2"]]},
    {"name": "v2", "decomposition": "G", "inertia": "1", "inv": [[{"1,1": [1]}, "1/2"]]}
  ]
}"#;

#[test]
fn minimal_file_loads_and_balances() {
    let f = load_str(SEED).unwrap();
    assert_eq!(f.context.places.len(), 2);
    assert_eq!(f.context.reciprocity_witness().unwrap(), None);
    let empty = load_str(&SEED.replace(r#""places": ["#, r#""places": [], "unused": ["#)).unwrap_err();
    assert!(empty.to_string().contains("unused"));
}

#[test]
fn schema_errors_carry_paths() {
    let cases = [
        (SEED.replace(r#""decomposition": "G", "inertia": "1", "inv": [[{"1,1": [1]}, "1/2"]]},
    {"name": "v2""#, r#""decomposition": "D", "inertia": "1", "inv": [[{"1,1": [1]}, "1/2"]]},
    {"name": "v2""#), "$.places[0].decomposition"),
        (SEED.replace(r#""moduli": [2]"#, r#""moduli": "two""#), "$.modules[\"C\"].moduli"),
        (SEED.replace(r#""1/2"]]},
    {"name": "v2""#, r#""1/0"]]},
    {"name": "v2""#), "$.places[0].inv[0][1]"),
        (SEED.replace(r#""version": 1"#, r#""version": 7"#), "$.version"),
    ];
    for (text, path) in cases {
        let e = load_str(&text).unwrap_err();
        assert_eq!(schema_path(e), path);
    }
}
