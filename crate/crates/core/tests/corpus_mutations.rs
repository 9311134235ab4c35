//! The fuzz entry points run on the checked-in corpus and on random byte
//! mutations of it. Errors are fine; panics are not.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use ctpair::group::FiniteGroup;
use ctpair::io::{cochain_literal, load_str, parse_cochain_str, parse_group_str};
use ctpair::module::GModule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

fn mutate(rng: &mut ChaCha8Rng, seed: &[u8]) -> Vec<u8> {
    const BYTES: &[u8] = b"0123456789-,[]{}\": /aeltx";
    let mut v = seed.to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let at = rng.gen_range(0..=v.len());
        match rng.gen_range(0..4) {
            0 if at < v.len() => v[at] = BYTES[rng.gen_range(0..BYTES.len())],
            1 if at < v.len() => {
                v.remove(at);
            }
            2 => v.insert(at, BYTES[rng.gen_range(0..BYTES.len())]),
            _ => v.truncate(at),
        }
    }
    v
}

fn run(target: &str, rounds: usize, f: impl Fn(&[u8])) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (name, seed) in corpus(target) {
        let n = if seed.len() > 4096 { rounds / 10 } else { rounds };
        for k in 0..=n {
            let input = if k == 0 { seed.clone() } else { mutate(&mut rng, &seed) };
            if catch_unwind(AssertUnwindSafe(|| f(&input))).is_err() {
                panic!("{target}: panic on mutation {k} of {name}: {:?}", String::from_utf8_lossy(&input));
            }
        }
    }
}

#[test]
fn load_context() {
    run("load_context", 100, |data| {
        if let Ok(text) = std::str::from_utf8(data) {
            if let Ok(f) = load_str(text) {
                let _ = f.to_json();
            }
        }
    });
}

#[test]
fn parse_group() {
    run("parse_group", 400, |data| {
        if let Ok(text) = std::str::from_utf8(data) {
            let _ = parse_group_str(text);
        }
    });
}

#[test]
fn parse_cochain() {
    run("parse_cochain", 400, |data| {
        let Some((&head, rest)) = data.split_first() else { return };
        let Ok(text) = std::str::from_utf8(rest) else { return };
        let g = match head & 3 {
            0 => FiniteGroup::cyclic(2),
            1 => FiniteGroup::cyclic(4),
            2 => FiniteGroup::symmetric3(),
            _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        };
        let moduli = if head & 4 == 0 { vec![2] } else { vec![2, 4] };
        let m = GModule::trivial_action(&g.whole(), moduli);
        let degree = usize::from((head >> 3) % 4);
        if let Ok(c) = parse_cochain_str(&m, degree, text) {
            let back = parse_cochain_str(&m, degree, &cochain_literal(&c).to_string());
            assert_eq!(back.ok(), Some(c));
        }
    });
}
