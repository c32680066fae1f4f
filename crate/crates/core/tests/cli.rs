use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_lace-ground");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const ONE_BY_ONE: &str = "ground v1\ndims 1 1\narc 0 0 -1 1\narc 0 0 1 0\n";
const MIRROR: &str = "ground v1\ndims 1 1\narc 0 0 1 1\narc 0 0 -1 0\n";

#[test]
fn paths_counts() {
    for (n, count) in [(1, 3), (2, 39), (3, 498)] {
        let o = run(&["paths", "--height", &n.to_string()]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), count.to_string());
    }
    let listed = run(&["paths", "--height", "1", "--list"]);
    assert_eq!(stdout(&listed).lines().count(), 4);
}

#[test]
fn paths_rejects_zero_height() {
    assert_eq!(run(&["paths", "--height", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sols");
    let o = run(&[
        "enumerate",
        "--rows",
        "2",
        "--cols",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("solutions=12 "), "{}", stdout(&o));
    let files: Vec<_> = fs::read_dir(&out).unwrap().collect();
    assert_eq!(files.len(), 12);
    for f in files {
        let path = f.unwrap().path();
        assert_eq!(path.extension().unwrap(), "gnd");
        let v = run(&["verify", path.to_str().unwrap(), "--strict"]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    }
}

#[test]
fn enumerate_budget_is_incomplete() {
    let o = run(&["enumerate", "--rows", "3", "--cols", "3", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("complete=false"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.gnd", ONE_BY_ONE);
    let bad = write(dir.path(), "bad.gnd", "ground v1\ndims 1 1\narc 0 0 -1 1\n");
    let broken = write(
        dir.path(),
        "broken.gnd",
        "ground v1\ndims 1 1\narc 0 0 5 5\n",
    );
    assert_eq!(run(&["verify", &good]).status.code(), Some(0));
    assert_eq!(run(&["verify", &bad]).status.code(), Some(1));
    let b = run(&["verify", &broken]);
    assert_eq!(b.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&b.stderr).contains("line 3"));
    assert_eq!(run(&["verify", "/nonexistent.gnd"]).status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.gnd", "ground v1\ndims 1 1\narc 0 0 -1 1\n");
    let o = run(&["verify", &bad, "--report", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["two_regular"]["status"], "fail");
    assert_eq!(v["two_regular"]["witness"]["kind"], "vertex");
}

#[test]
fn verify_prints_braids() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "z.gnd", &format!("{ONE_BY_ONE}zeta 0 0 CTC\n"));
    let o = run(&["verify", &f, "--braid"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("s1 s0^-1 s2^-1 s1 (alternating)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn canon_marks_reflected_copy() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&run(&["canon", &write(dir.path(), "a.gnd", ONE_BY_ONE)]));
    let b = stdout(&run(&["canon", &write(dir.path(), "b.gnd", MIRROR)]));
    assert_eq!(a.lines().next(), b.lines().next());
    let flags: Vec<bool> = [&a, &b]
        .iter()
        .map(|s| s.contains("canonical: true"))
        .collect();
    assert_eq!(flags.iter().filter(|&&f| f).count(), 1);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.gnd", ONE_BY_ONE);
    let svg = dir.path().join("a.svg");
    let o = run(&[
        "render",
        &f,
        "--repeats",
        "3x2",
        "--out",
        svg.to_str().unwrap(),
        "--labels",
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let class = |c: &str| {
        doc.descendants()
            .filter(|n| n.attribute("class") == Some(c))
            .count()
    };
    assert_eq!(class("arc"), 12);
    assert_eq!(class("vertex"), 6);
    assert_eq!(class("period"), 1);
    assert_eq!(
        run(&["render", &f, "--repeats", "0x2", "--out", "x.svg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn counts_table() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("t.tsv");
    let o = run(&[
        "counts",
        "--max-rows",
        "2",
        "--max-cols",
        "2",
        "--tsv",
        tsv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let expected = "n\\m\t1\t2\n1\t1\t2\n2\t4\t12\n";
    assert_eq!(fs::read_to_string(&tsv).unwrap(), expected);
    assert!(stdout(&o).starts_with(expected));
}

#[test]
fn counts_budget_marks_cells() {
    let o = run(&[
        "counts",
        "--max-rows",
        "3",
        "--max-cols",
        "3",
        "--budget",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains('*'));
    assert!(stdout(&o).contains('≥'));
}

#[test]
fn enumerate_is_byte_identical_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let listing = |jobs: &str| {
        let out = dir.path().join(jobs);
        let o = run(&[
            "enumerate",
            "--rows",
            "3",
            "--cols",
            "2",
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let mut files: Vec<_> = fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_owned(), fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        files
    };
    let one = listing("1");
    assert_eq!(one.len(), 31);
    assert_eq!(listing("2"), one);
    assert_eq!(listing("8"), one);
}
