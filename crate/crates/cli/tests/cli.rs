use std::path::Path;
use std::process::{Command, Output};

fn skewfiss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewfiss")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_verify_classify() {
    let dir = tempfile::tempdir().unwrap();
    let c13 = dir.path().join("c13.ascm");
    assert!(skewfiss(&["construct", "cyc", "--q", "13", "--d", "4", "-o", path(&c13)]).status.success());

    let v = skewfiss(&["verify", path(&c13)]);
    assert!(v.status.success());
    let text = stdout(&v);
    assert!(text.contains("result: pass"));
    assert!(text.contains("skew-symmetric: yes"));
    assert!(text.contains("valencies: [1, 3, 3, 3, 3]"));

    let c = skewfiss(&["classify", path(&c13)]);
    assert!(c.status.success());
    assert!(stdout(&c).starts_with("conference q=13 g=-3"));
    assert!(!stdout(&c).contains("+ -"));

    let k = skewfiss(&["krein", path(&c13)]);
    assert!(k.status.success());
    assert!(stdout(&k).contains("negative: 0"));
}

#[test]
fn wreath_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g, w) = (dir.path().join("f.ascm"), dir.path().join("g.ascm"), dir.path().join("w.ascm"));
    assert!(skewfiss(&["construct", "cyc", "--q", "3", "--d", "2", "-o", path(&f)]).status.success());
    assert!(skewfiss(&["construct", "cyc", "--q", "7", "--d", "2", "-o", path(&g)]).status.success());
    assert!(skewfiss(&["construct", "wreath", "--inner", path(&f), "--outer", path(&g), "-o", path(&w)])
        .status
        .success());
    let c = skewfiss(&["classify", path(&w)]);
    assert_eq!(stdout(&c).lines().next(), Some("imprimitive (21, 2, 1, 0) f=3 g=7 type I"));
    let k = skewfiss(&["krein", path(&w)]);
    assert!(stdout(&k).contains("negative: 0"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ascm");
    std::fs::write(&bad, "3 2\n0 1 2\n2 0 1\n").unwrap();
    for args in [
        vec!["verify", path(&bad)],
        vec!["verify", "/nonexistent/file.ascm"],
        vec!["construct", "cyc", "--q", "12", "--d", "4", "-o", "/dev/null"],
        vec!["scan", "bogus"],
        vec!["nonsense"],
    ] {
        let o = skewfiss(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let j = dir.path().join("c.ascm");
    assert!(skewfiss(&["construct", "cyc", "--q", "13", "--d", "2", "-o", path(&j)]).status.success());
    assert_eq!(skewfiss(&["classify", path(&j)]).status.code(), Some(1));
    assert_eq!(skewfiss(&["--help"]).status.code(), Some(0));
}

#[test]
fn scans_are_deterministic() {
    for kind in ["conference", "srg", "johnson", "imprimitive"] {
        let args = ["scan", kind, "--max-n", "600", "--max-v", "60", "--format", "json"];
        let par = skewfiss(&args);
        let mut seq_args = vec!["--sequential"];
        seq_args.extend_from_slice(&args);
        let seq = skewfiss(&seq_args);
        let one =
            Command::new(env!("CARGO_BIN_EXE_skewfiss")).env("SKEWFISS_THREADS", "1").args(args).output().unwrap();
        assert!(par.status.success(), "{kind}");
        assert_eq!(par.stdout, seq.stdout, "{kind}");
        assert_eq!(par.stdout, one.stdout, "{kind}");
    }
}

#[test]
fn output_formats() {
    let tsv = stdout(&skewfiss(&["scan", "srg", "--max-n", "60"]));
    assert_eq!(tsv.lines().next().unwrap().split('\t').count(), 10);
    assert!(tsv.lines().any(|l| l.starts_with("57\tsrg\t")));
    let md = stdout(&skewfiss(&["scan", "srg", "--max-n", "60", "--format", "md"]));
    assert!(md.lines().nth(1).unwrap().starts_with("|---|"));
    let json: serde_json::Value =
        serde_json::from_slice(&skewfiss(&["scan", "srg", "--max-n", "60", "--format", "json", "--tables"]).stdout)
            .unwrap();
    assert!(json.as_array().unwrap().iter().all(|r| r.get("table").is_some()));
}

#[test]
fn annotations_override_existence() {
    let dir = tempfile::tempdir().unwrap();
    let ann = dir.path().join("a.json");
    std::fs::write(
        &ann,
        r#"[{"match": {"n": 57, "table_type": "III", "z": 27}, "existence": "0", "citation": "srg table"}]"#,
    )
    .unwrap();
    let out = stdout(&skewfiss(&["scan", "srg", "--max-n", "60", "--annotations", path(&ann)]));
    let row = out.lines().find(|l| l.starts_with("57\t")).unwrap();
    let cols: Vec<&str> = row.split('\t').collect();
    assert_eq!((cols[6], cols[7]), ("0", "srg table"));
    std::fs::write(&ann, "not json").unwrap();
    assert_eq!(skewfiss(&["scan", "srg", "--annotations", path(&ann)]).status.code(), Some(1));
}
