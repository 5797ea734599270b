use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED_DATA: &str = "dom(a). dom(b). dom(c).\n";
const WORKED_PROGRAM: &str = "q(b,c) -> p(a).\np(X) -> X = a ; q(X,_).\n";

fn psplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ground(dir: &Path, data: &str, program: &str, extra: &[&str]) -> PathBuf {
    let d = file(dir, "data.ps", data);
    let p = file(dir, "program.ps", program);
    let out = dir.join("out.gnd");
    let mut args = vec!["ground", "-d", s(&d), "-p", s(&p), "-o", s(&out)];
    args.extend_from_slice(extra);
    let o = psplus(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn ground_then_solve_all() {
    let dir = TempDir::new().unwrap();
    let gnd = ground(dir.path(), WORKED_DATA, WORKED_PROGRAM, &[]);
    let text = fs::read_to_string(&gnd).unwrap();
    assert!(text.starts_with("p gnd 9 3\n"), "{text}");

    let o = psplus(&["solve", s(&gnd), "--all"]);
    assert_eq!(o.status.code(), Some(10));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("SAT"));
    let models: Vec<Vec<&str>> = lines
        .map(|l| {
            let mut atoms: Vec<&str> = l.split_whitespace().collect();
            atoms.sort();
            atoms
        })
        .collect();
    assert!(models.contains(&vec!["p(a)", "q(b,c)"]), "{models:?}");
    assert!(models.contains(&vec!["p(b)", "p(c)", "q(b,a)", "q(c,c)"]), "{models:?}");

    let o = psplus(&["solve", s(&gnd), "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), models.len().to_string());

    let o = psplus(&["solve", s(&gnd)]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn unsat_exit_code() {
    let dir = TempDir::new().unwrap();
    let gnd = ground(
        dir.path(),
        "p1(a0). q1(a0). r1(b0).\n",
        "data p1/1. data q1/1.\np1(X) -> q1(X).\nq1(X) -> p1(X).\np1(a0) -> p1(b0).\n",
        &[],
    );
    let o = psplus(&["solve", s(&gnd)]);
    assert_eq!(o.status.code(), Some(20));
    assert_eq!(stdout(&o), "UNSAT\n");
}

#[test]
fn symbolic_bounds_need_a_binding() {
    let dir = TempDir::new().unwrap();
    let d = file(dir.path(), "d.ps", "vtx(v1). vtx(v2).\n");
    let p = file(dir.path(), "p.ps", "invc(X) -> vtx(X).\n{invc(_)} k.\n");
    let out = dir.path().join("o.gnd");
    let o = psplus(&["ground", "-d", s(&d), "-p", s(&p), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("-c k="));
    let o = psplus(&["ground", "-d", s(&d), "-p", s(&p), "-c", "k=1", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let o = psplus(&["solve", s(&out), "--count"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn dimacs_export() {
    let dir = TempDir::new().unwrap();
    let gnd = ground(dir.path(), WORKED_DATA, "-> 1 {r(_)} 2.\n", &[]);
    let cnf = dir.path().join("out.cnf");
    let o = psplus(&["solve", s(&gnd), "--dimacs", s(&cnf)]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(fs::read_to_string(&cnf).unwrap(), "p cnf 3 2\n-1 -2 -3 0\n1 2 3 0\n");
}

#[test]
fn complete_then_ground_and_solve() {
    let dir = TempDir::new().unwrap();
    let lp = file(dir.path(), "even.lp", "p(X) :- e(X), not q(X).\nq(X) :- e(X), not p(X).\n");
    let ps = dir.path().join("even.ps");
    let o = psplus(&["complete", s(&lp), "-o", s(&ps)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let program = fs::read_to_string(&ps).unwrap();
    assert!(program.starts_with("data e/1.\n"), "{program}");
    let d = file(dir.path(), "e.ps", "e(a). e(b).\n");
    let gnd = dir.path().join("even.gnd");
    let o = psplus(&["ground", "-d", s(&d), "-p", s(&ps), "-o", s(&gnd)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = psplus(&["solve", s(&gnd), "--count"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn gen_ground_solve_pigeonhole() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("ph");
    let o = psplus(&["gen", "pigeonhole", "--p", "3", "--h", "2", "-o", s(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    let gnd = dir.path().join("ph.gnd");
    let data = inst.join("data.ps");
    let program = inst.join("program.ps");
    let o = psplus(&["ground", "-d", s(&data), "-p", s(&program), "-o", s(&gnd)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(psplus(&["solve", s(&gnd)]).status.code(), Some(20));
}

#[test]
fn gen_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = psplus(&["gen", "vertex-cover", "--n", "8", "--m", "12", "--k", "4", "--seed", "7", "-o", s(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["data.ps", "program.ps"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
    }
}

#[test]
fn solve_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let gnd = ground(dir.path(), WORKED_DATA, WORKED_PROGRAM, &[]);
    let a = psplus(&["solve", s(&gnd), "--all"]);
    let b = psplus(&["solve", s(&gnd), "--all"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bench_writes_table_and_rows() {
    let dir = TempDir::new().unwrap();
    let cfg = file(
        dir.path(),
        "suite.toml",
        "[[run]]\nlabel = \"q4\"\nfamily = \"nqueens\"\nn = 4\nmode = \"count\"\n\n\
         [[run]]\nlabel = \"vc\"\nfamily = \"vertex-cover-catom\"\nn = 6\nm = 8\nk = \"min\"\nseeds = 2\n",
    );
    let report = dir.path().join("report.txt");
    let o = psplus(&["bench", s(&cfg), "-o", s(&report), "--sequential"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&report).unwrap();
    let (table, rows) = text.split_once("\n\n").unwrap();
    assert_eq!(table.lines().count(), 3);
    assert!(table.lines().nth(1).unwrap().starts_with("q4 "));
    let rows: Vec<&str> = rows.lines().collect();
    assert_eq!(rows[0], "run,instance,atoms,clauses,result,decisions,ms");
    assert!(rows[1].starts_with("q4,nqueens n=4,16,"), "{}", rows[1]);
    assert!(rows[1].contains(",2,"));
    assert_eq!(rows.len(), 4);
}

#[test]
fn errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.gnd");
    assert_eq!(psplus(&["solve", s(&missing)]).status.code(), Some(1));
    let bad = file(dir.path(), "bad.gnd", "not a ground file\n");
    assert_eq!(psplus(&["solve", s(&bad)]).status.code(), Some(1));
    let p = file(dir.path(), "p.ps", "p(X -> q.\n");
    let out = dir.path().join("o.gnd");
    let o = psplus(&["ground", "-p", s(&p), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p.ps"));
    let general = ground(dir.path(), "dom(a). dom(b).\n", "1 {r(_)} 1 -> c.\n", &[]);
    let cnf = dir.path().join("x.cnf");
    assert_eq!(psplus(&["solve", s(&general), "--dimacs", s(&cnf)]).status.code(), Some(1));
}
