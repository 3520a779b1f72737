use std::path::{Path, PathBuf};

use harmless_cli::run;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["harmless"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P3: &str = "p hs 3 2\nt 1 1\nt 2 2\nt 3 1\ne 1 2\ne 2 3\n";

#[test]
fn brute_on_p3() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.hs", P3);
    let (code, out, _) = call(&["solve", "--algo", "brute", s(&f)]);
    assert_eq!(code, 0);
    assert_eq!(out, "SIZE 1\nSET 1\nSOLVER brute\n");
}

#[test]
fn verify_reports_slack() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.hs", P3);
    for args in [
        vec!["verify", s(&f), "--set", "1", "3"],
        vec!["verify", s(&f), "--set", "1,3"],
    ] {
        let (code, out, _) = call(&args);
        assert_eq!(code, 0);
        assert!(out.contains("SLACK 2 0\n"));
        assert!(out.ends_with("VALID no\n"));
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.hs", P3);
    assert_eq!(call(&["solve", "--algo", "cliquewidth", s(&f)]).0, 1);
    assert_eq!(call(&["solve", "--algo", "planar", s(&f)]).0, 1);
    assert_eq!(call(&["solve", "--algo", "bogus", s(&f)]).0, 1);
    let bad = write(&dir, "bad.hs", "p hs 2 1\nt 1 1\nt 2 1\ne 1 3\n");
    let (code, _, err) = call(&["solve", s(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("3"));
    assert_eq!(call(&["solve", "missing.hs"]).0, 1);
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("p hs 30 30\n");
    for v in 1..=30 {
        text += &format!("t {v} 2\n");
    }
    for v in 1..=30 {
        text += &format!("e {} {}\n", v, v % 30 + 1);
    }
    let f = write(&dir, "c30.hs", &text);
    assert_eq!(
        call(&["solve", "--algo", "brute", "--budget", "10", s(&f)]).0,
        2
    );
}

#[test]
fn selectors_agree_and_machine_lines_parse() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "p6.hs",
        "p hs 6 5\nt 1 1\nt 2 2\nt 3 2\nt 4 1\nt 5 2\nt 6 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n",
    );
    let mut e = "(v 1 2)".to_string();
    for i in 2..=6 {
        e = format!("(rho 3 2 (rho 2 1 (eta 3 2 (union (v {i} 3) {e}))))");
    }
    let cx = write(&dir, "p6.cx", &format!("(cexpr 3 {e})"));
    let mut sizes = Vec::new();
    for algo in ["auto", "brute", "nd", "twincover"] {
        let (code, out, err) = call(&["solve", "--algo", algo, "--machine", s(&f)]);
        assert_eq!(code, 0, "{err}");
        for line in out.lines() {
            let (k, v) = line.split_once('=').unwrap();
            assert!(!k.is_empty() && !k.contains(' ') && !v.contains('='));
        }
        sizes.push(
            out.lines()
                .find(|l| l.starts_with("size="))
                .unwrap()
                .to_string(),
        );
    }
    let (code, out, err) = call(&[
        "solve",
        "--algo",
        "cliquewidth",
        "--cexpr",
        s(&cx),
        "--machine",
        s(&f),
    ]);
    assert_eq!(code, 0, "{err}");
    sizes.push(
        out.lines()
            .find(|l| l.starts_with("size="))
            .unwrap()
            .to_string(),
    );
    assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{sizes:?}");
}

#[test]
fn planar_prints_rule() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.hs", P3);
    let (code, out, _) = call(&["solve", "--algo", "planar", "--k", "1", s(&f)]);
    assert_eq!(code, 0);
    assert_eq!(out, "ANSWER yes\nSET 1\nSOLVER planar\nRULE kernel\n");
    let (_, out, _) = call(&["solve", "--algo", "planar", "--k", "2", s(&f)]);
    assert!(out.starts_with("ANSWER no\n"));
}

#[test]
fn generated_instances_parse_back() {
    let dir = TempDir::new().unwrap();
    let mmo = write(&dir, "a.mmo", "p mmo 2 1 3\ne 1 2 2\n");
    let (code, out, _) = call(&["generate", "mmo", s(&mmo)]);
    assert_eq!(code, 0);
    assert!(out.contains("# target k=8\n"));
    assert!(out.starts_with("# trace\n"));
    harmless::format::parse_instance(&out).unwrap();

    let mrss = write(&dir, "a.mrss", "p mrss 2 3 2\nt 3 3\ns 2 1\ns 1 1\ns 1 2\n");
    let (code, out, _) = call(&["generate", "mrss", s(&mrss)]);
    assert_eq!(code, 0);
    assert!(out.contains("# target r=12\n"));
    let inst = harmless::format::parse_instance(&out).unwrap();
    assert_eq!(inst.vertex_count(), 29);

    let bad = write(&dir, "b.mrss", "p mrss 2 1 1\nt 1 1\ns 1 0\n");
    let (code, _, err) = call(&["generate", "mrss", s(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("coordinate 2"));
}

#[test]
fn analyze_lists_classes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.hs", P3);
    let (code, out, _) = call(&["analyze", s(&f)]);
    assert_eq!(code, 0);
    assert!(out.contains("ND_CLASSES 2\n"));
    assert!(out.contains("TWIN_COVER 1\n"));
}
