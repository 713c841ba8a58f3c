use std::process::Command;

use cutjoin_cli::document::{CacheEntry, CacheFile, PolynomialDocument, CACHE_VERSION};
use cutjoin_core::hodge::{cmg_polynomial, psi_correlator};
use cutjoin_core::CorrelatorProvider;

fn cutjoin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cutjoin"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Any digit-dot-digit or exponent literal outside string values.
fn has_float_literal(json: &str) -> bool {
    fn walk(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Number(n) => !(n.is_i64() || n.is_u64()),
            serde_json::Value::Array(a) => a.iter().any(walk),
            serde_json::Value::Object(o) => o.values().any(walk),
            _ => false,
        }
    }
    walk(&serde_json::from_str(json).unwrap())
}

#[test]
fn verify_json_is_byte_stable() {
    let a = cutjoin(&["verify", "--g", "1", "--m", "2", "--format", "json"]);
    let b = cutjoin(&["verify", "--g", "1", "--m", "2", "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert!(a.1.contains("\"status\": \"zero\""));
    assert!(!has_float_literal(&a.1));
}

#[test]
fn machine_outputs_have_no_floats() {
    for args in [
        &["omega", "--order", "6", "--format", "json"][..],
        &["phi", "--i", "2", "--format", "json"],
        &[
            "phi", "--i", "2", "--form", "series", "--order", "5", "--format", "json",
        ],
        &["psi", "--g", "2", "--b", "2,3", "--format", "json"],
        &["cmg", "--g", "1", "--m", "2", "--format", "json"],
        &["table", "--g", "1", "--max-n", "4", "--format", "json"],
        &["dvv", "--g", "1", "--m", "2", "--format", "json"],
        &[
            "extract",
            "--g",
            "1",
            "--m",
            "2",
            "--unknowns",
            "1:0:1;1:0,1:1",
            "--format",
            "json",
        ],
    ] {
        let (code, out, err) = cutjoin(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(!has_float_literal(&out), "{args:?}");
    }
}

#[test]
fn cmg_document_round_trips() {
    let (code, out, _) = cutjoin(&["cmg", "--g", "1", "--m", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = PolynomialDocument::parse(&out).unwrap();
    let expected = cmg_polynomial(1, 2, &CorrelatorProvider::numeric())
        .unwrap()
        .poly;
    assert_eq!(doc.to_poly().unwrap(), expected);
    assert_eq!(doc.render() + "\n", out);
    assert_eq!(doc.metadata.degree, Some(6));
}

#[test]
fn spec_examples() {
    assert_eq!(cutjoin(&["psi", "--g", "1", "--b", "1"]).1, "1/24\n");
    let (_, latex, _) = cutjoin(&["cmg", "--g", "0", "--m", "3", "--format", "latex"]);
    assert!(latex.starts_with("-\\frac{\\tau^{2}}{\\tau + 1} y_{1} y_{2} y_{3}"));
}

#[test]
fn cache_round_trip_of_fifty_correlators() {
    fn sorted(total: u32, n: usize, min: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        (min..=total)
            .flat_map(|b| {
                sorted(total - b, n - 1, b)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, b);
                        rest
                    })
            })
            .collect()
    }
    let mut values = Vec::new();
    for (g, n) in [
        (0u32, 3usize),
        (0, 4),
        (0, 5),
        (0, 6),
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
    ] {
        for b in sorted(3 * g + n as u32 - 3, n, 0) {
            let v = psi_correlator(g, &b).unwrap();
            values.push((g, b, v));
        }
    }
    values.truncate(50);
    assert_eq!(values.len(), 50);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let cache = CacheFile::from_values(values.clone());
    cache.save(&path).unwrap();
    let back = CacheFile::load(&path).unwrap().unwrap();
    assert_eq!(back, cache);
    let mut got = back.psi_values().unwrap();
    got.sort();
    values.sort();
    assert_eq!(got, values);
}

#[test]
fn stale_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let stale = CacheFile {
        version: CACHE_VERSION + 1,
        entries: vec![CacheEntry {
            genus: 1,
            psi: vec![1],
            lambda: vec![],
            num: "5".into(),
            den: "7".into(),
        }],
    };
    std::fs::write(&path, stale.render()).unwrap();
    assert!(CacheFile::load(&path).unwrap().is_none());
    let p = path.to_str().unwrap();
    let (code, out, err) = cutjoin(&["psi", "--g", "1", "--b", "1", "--cache", p]);
    assert_eq!(code, 0);
    assert_eq!(out, "1/24\n");
    assert!(err.contains("rebuilding"));
    let fresh = CacheFile::load(&path).unwrap().unwrap();
    assert_eq!(fresh.version, CACHE_VERSION);
    assert!(fresh
        .entries
        .iter()
        .any(|e| e.psi == vec![1] && e.num == "1" && e.den == "24"));
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-cache.json");
    let out = Command::new(env!("CARGO_BIN_EXE_cutjoin"))
        .args(["table", "--g", "1", "--max-n", "3"])
        .env("CUTJOIN_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(CacheFile::load(&path).unwrap().is_some());
}

#[test]
fn malformed_cache_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"version\": 1, \"entries\": [").unwrap();
    let (code, _, err) = cutjoin(&[
        "psi",
        "--g",
        "1",
        "--b",
        "1",
        "--cache",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("line"));
}

#[test]
fn nonzero_and_internal_exit_codes() {
    assert_eq!(cutjoin(&["verify", "--g", "1", "--m", "1"]).0, 2);
    assert_eq!(
        cutjoin(&["verify", "--g", "1", "--m", "2", "--format", "latex"]).0,
        2
    );
    assert_eq!(cutjoin(&["cmg", "--g", "0", "--m", "2"]).0, 2);
}
