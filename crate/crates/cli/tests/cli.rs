use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Workdir {
    dir: TempDir,
}

impl Workdir {
    fn new() -> Self {
        Workdir {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn canform(args: &[&std::ffi::OsStr]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_canform")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Keys of the outermost object, in output order (pretty-printed JSON).
fn top_level_keys(json: &str) -> Vec<String> {
    json.lines()
        .filter_map(|l| l.strip_prefix("  \""))
        .filter_map(|l| l.split_once("\":").map(|(k, _)| k.to_string()))
        .collect()
}

macro_rules! args {
    ($($a:expr),* $(,)?) => { &[$(std::ffi::OsStr::new(&$a)),*] };
}

#[test]
fn jordan_of_identity_over_gf2() {
    let w = Workdir::new();
    let id = w.file("id2.mat", "field gf 2\n2 2\n1 0\n0 1\n");
    let (code, out, _) = canform(args!["jordan", id]);
    assert_eq!(code, 0);
    assert!(out.contains("blocks:\n  (x + 1)^1\n  (x + 1)^1\n"), "{out}");

    let (code, out, _) = canform(args!["--json", "jordan", id]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        json!({
            "field": "gf 2",
            "n": 2,
            "blocks": [{"prime": ["1", "1"], "power": 1}, {"prime": ["1", "1"], "power": 1}],
            "form": [["1", "0"], ["0", "1"]],
            "transform": [["1", "0"], ["0", "1"]],
        })
    );
    assert_eq!(top_level_keys(&out), ["field", "n", "blocks", "form", "transform"]);
}

#[test]
fn similar_exit_codes() {
    let w = Workdir::new();
    let a = w.file("a.mat", "field q\n2 2\n1 2\n3 4\n");
    // b = Q a Q^-1 with Q = [[1, 1], [0, 1]].
    let b = w.file("b.mat", "field q\n2 2\n4 2\n3 1\n");
    let c = w.file("c.mat", "field q\n2 2\n1 0\n0 4\n");
    assert_eq!(canform(args!["similar", a, b]).0, 0);
    let (code, out, _) = canform(args!["similar", a, c]);
    assert_eq!((code, out.as_str()), (1, "not similar\n"));
}

#[test]
fn contra_equiv_with_different_ranks() {
    let w = Workdir::new();
    let one = w.file("one.mat", "field q\n1 1\n1\n");
    let zero = w.file("zero.mat", "field q\n1 1\n0\n");
    let (code, out, _) = canform(args!["contra-equiv", one, zero, zero, one]);
    assert_eq!((code, out.as_str()), (1, "not equivalent\n"));
    assert_eq!(canform(args!["contra-equiv", one, zero, one, zero]).0, 0);
}

#[test]
fn contra_of_zero_pair() {
    let w = Workdir::new();
    let a = w.file("a.mat", "field gf 3\n1 2\n0 0\n");
    let b = w.file("b.mat", "field gf 3\n2 1\n0\n0\n");
    let (code, out, _) = canform(args!["--json", "contra", a, b]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["blocks"],
        json!([{"kind": "Zero", "m_i": 1, "n_i": 2, "size": 3, "jordan": null}])
    );
    assert_eq!(v["S"], json!([["1"]]));
    assert_eq!(v["rank_profile"], json!({"t": 1, "a_chain": [0, 0], "b_chain": [0, 0]}));
    assert_eq!(
        top_level_keys(&out),
        [
            "m",
            "n",
            "field",
            "blocks",
            "canonical_A",
            "canonical_B",
            "S",
            "T",
            "rank_profile"
        ]
    );
}

#[test]
fn contra_text_lists_invertible_part() {
    let w = Workdir::new();
    let a = w.file("a.mat", "field q\n2 2\n1 0\n0 1\n");
    let b = w.file("b.mat", "field q\n2 2\n0 -1\n1 0\n");
    let (code, out, _) = canform(args!["contra", a, b]);
    assert_eq!(code, 0);
    assert!(
        out.contains("Invertible size 2 (A block 2x2)\n    (x^2 + 1)^1\n"),
        "{out}"
    );
}

#[test]
fn factor_of_x2_minus_1() {
    let (code, out, _) = canform(args!["--json", "factor", "x^2 - 1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["unit"], "1");
    assert_eq!(
        v["factors"][0],
        json!({"prime": ["-1", "1"], "text": "x - 1", "multiplicity": 1})
    );
    assert_eq!(v["factors"][1]["text"], "x + 1");
}

#[test]
fn minpoly_text() {
    let w = Workdir::new();
    let a = w.file("a.mat", "field q\n2 2\n0 -1\n1 0\n");
    let (code, out, _) = canform(args!["minpoly", a]);
    assert_eq!((code, out.as_str()), (0, "x^2 + 1\n"));
}

#[test]
fn errors_exit_two_with_one_line() {
    let w = Workdir::new();
    let bad = w.file("bad.mat", "field q\n2 2\n1 2\n3\n");
    let (code, out, err) = canform(args!["jordan", bad]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("line 4"), "{err}");

    let rect = w.file("rect.mat", "field q\n1 2\n1 2\n");
    let (code, _, err) = canform(args!["jordan", rect]);
    assert_eq!(code, 2);
    assert!(err.contains("not square"), "{err}");

    let gf2 = w.file("gf2.mat", "field gf 2\n1 1\n1\n");
    let q = w.file("q.mat", "field q\n1 1\n1\n");
    let (code, _, err) = canform(args!["similar", gf2, q]);
    assert_eq!(code, 2);
    assert!(err.contains("field mismatch"), "{err}");

    let (code, _, err) = canform(args!["jordan", w.dir.path().join("missing.mat")]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");

    let (code, _, err) = canform(args!["similar", q]);
    assert_eq!(code, 2);
    assert_eq!(err.lines().count(), 1);
}
