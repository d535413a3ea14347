//! Frozen command outputs. Set GRADECONE_BLESS=1 to rewrite the files after
//! an intended change, then review the diff.

mod common;

use common::{golden_path, run, run_golden, GOLDENS};

#[test]
fn outputs_match_golden_files() {
    let bless = std::env::var_os("GRADECONE_BLESS").is_some();
    let mut mismatched = Vec::new();
    for g in GOLDENS {
        let (code, out) = run_golden(g);
        assert_eq!(code, g.code, "{}: exit status", g.name);
        let path = golden_path(g.name);
        if bless {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != out {
            mismatched.push(format!("--- {}\n{want}+++ actual\n{out}", g.name));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

#[test]
fn json_mode_prints_one_document() {
    for g in GOLDENS.iter().filter(|g| g.args.contains(&"--json")) {
        let (_, out) = run_golden(g);
        let mut docs = serde_json::Deserializer::from_str(&out).into_iter::<serde_json::Value>();
        assert!(docs.next().unwrap().is_ok(), "{}", g.name);
        assert!(docs.next().is_none(), "{}: more than one document", g.name);
    }
}

#[test]
fn example_tables_are_bit_exact() {
    assert_eq!(run(&["betti", "@embedded"]).1, "total: 1 2 1\n0: 1 . .\n1: . 2 1\n");
    assert_eq!(run(&["betti", "@residue"]).1, "total: 1 2 1\n0: 1 2 1\n");
    assert_eq!(
        run(&["betti", "@quasipure"]).1,
        "total: 1 3 2\n0: 1 . .\n1: . . .\n2: . 2 1\n3: . 1 .\n4: . . 1\n"
    );
    assert_eq!(
        run(&["betti", "@not_quasipure"]).1,
        "total: 1 3 2\n0: 1 . .\n1: . 2 1\n2: . . .\n3: . . .\n4: . 1 1\n"
    );
}

#[test]
fn usage_and_input_errors_exit_one() {
    let (code, out, err) = run(&["betti"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(!err.is_empty());

    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());

    let (code, _, err) = run(&["betti", "/nonexistent/instance.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/instance.json"), "{err}");

    let (code, _, _) = run(&["check", "thm-9.9", "@embedded"]);
    assert_eq!(code, 1);
}

#[test]
fn malformed_file_reports_position() {
    let dir = std::env::temp_dir().join(format!("gradecone-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"vars\": [\"x\"],\n \"ideal\": [\"x^2\",]\n}").unwrap();
    let (code, out, err) = run(&["betti", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("line 2"), "{err}");

    std::fs::write(&path, "{\"vars\": [\"x\"], \"ideal\": [\"x^2 +* x\"]}").unwrap();
    let (code, _, err) = run(&["betti", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_goes_to_standard_output() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("corpus"));
    assert!(err.is_empty());
}

#[test]
fn seed_is_echoed_in_reports() {
    let (code, out, _) = run(&["check", "thm-3.3", "@curve", "--json", "--seed", "41"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 41);
    assert_eq!(v["verdict"], "PASS");
}
