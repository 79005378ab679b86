use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mpc_core::generators::transitive_closure;
use mpc_core::graph::{parse_cover, parse_graph, validate_path_cover};
use mpc_cli::bench::read_records;
use tempfile::TempDir;

fn mpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpc")).args(args).output().unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

const DIAMOND: &str = "4 4\n0 1\n0 2\n1 3\n2 3\n";
// Width 3: {1, 3, 6} is an antichain and three paths suffice.
const WIDTH_THREE: &str = "7 8\n0 1\n1 2\n0 3\n3 4\n1 4\n3 2\n5 6\n6 4\n";

#[test]
fn gen_random_complete_order() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "g.txt");
    let o = mpc(&["gen", "random", "--n", "4", "--m", "6", "--seed", "1", "--out", s(&out)]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "n=4 m=6\n");
    let g = parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    let edges: Vec<_> = g.edges().collect();
    assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
}

#[test]
fn gen_closure_is_closed() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "tc.txt");
    assert!(mpc(&["gen", "tc", "--n", "100", "--m", "200", "--seed", "3", "-o", s(&out)]).status.success());
    let g = parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(transitive_closure(&g).edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
}

#[test]
fn gen_rejects_bad_specs_as_usage_errors() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "g.txt");
    let too_dense = mpc(&["gen", "random", "--n", "4", "--m", "7", "-o", s(&out)]);
    assert_eq!(too_dense.status.code(), Some(2));
    let no_k = mpc(&["gen", "pathpart", "--n", "10", "--m", "5", "-o", s(&out)]);
    assert_eq!(no_k.status.code(), Some(2));
    assert_eq!(mpc(&["gen", "cube", "--n", "4", "--m", "1", "-o", s(&out)]).status.code(), Some(2));
    assert_eq!(mpc(&["solve", s(&out), "--algo", "k4"]).status.code(), Some(2));
}

#[test]
fn solve_every_algorithm() {
    let dir = TempDir::new().unwrap();
    let diamond = write(&dir, "d.txt", DIAMOND);
    let wide = write(&dir, "w.txt", WIDTH_THREE);
    let chain = write(&dir, "c.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    for algo in ["dfs", "bfs", "blocking", "k3", "k2"] {
        for (graph, k) in [(&diamond, 2), (&wide, 3), (&chain, 1)] {
            let cover = path(&dir, "cover.txt");
            let o = mpc(&[
                "solve", s(graph), "--algo", algo, "--init", "greedy", "--presparsify", "both",
                "--check-invariants", "-o", s(&cover),
            ]);
            assert!(o.status.success(), "{algo}: {}", String::from_utf8_lossy(&o.stderr));
            assert!(String::from_utf8_lossy(&o.stdout).starts_with(&format!("k={k} ")));
            let g = parse_graph(&fs::read_to_string(graph).unwrap()).unwrap();
            let pc = parse_cover(&fs::read_to_string(&cover).unwrap()).unwrap();
            assert!(validate_path_cover(&g, &pc).is_valid());
            assert_eq!(pc.len(), k);
            let warned = String::from_utf8_lossy(&o.stderr).contains("ignored");
            assert_eq!(warned, algo.starts_with('k'));
        }
    }
}

#[test]
fn solve_reports_io_and_cycle_errors() {
    let dir = TempDir::new().unwrap();
    let cyclic = write(&dir, "cyc.txt", "2 2\n0 1\n1 0\n");
    let o = mpc(&["solve", s(&cyclic)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
    assert_eq!(mpc(&["solve", s(&path(&dir, "missing.txt"))]).status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "d.txt", DIAMOND);
    let good = write(&dir, "good.txt", "2\n0 1 3\n2\n");
    let missing = write(&dir, "missing.txt", "1\n0 1 3\n");
    let three = write(&dir, "three.txt", "3\n0 1\n2\n3\n");
    assert_eq!(mpc(&["verify", s(&g), s(&good), "--oracle"]).status.code(), Some(0));
    let o = mpc(&["verify", s(&g), s(&missing)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("uncovered: 2"));
    assert_eq!(mpc(&["verify", s(&g), s(&three)]).status.code(), Some(0));
    let o = mpc(&["verify", s(&g), s(&three), "--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 paths but the width is 2"));
}

#[test]
fn gen_and_solve_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.txt"), path(&dir, "b.txt"));
    for out in [&a, &b] {
        let o = mpc(&["gen", "pathpart", "--n", "300", "--m", "400", "--k", "7", "--seed", "9", "-o", s(out)]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    for algo in ["dfs", "bfs", "blocking", "k3", "k2"] {
        let (ca, cb) = (path(&dir, "ca.txt"), path(&dir, "cb.txt"));
        for out in [&ca, &cb] {
            assert!(mpc(&["solve", s(&a), "--algo", algo, "--presparsify", "dfs", "-o", s(out)]).status.success());
        }
        assert_eq!(fs::read(&ca).unwrap(), fs::read(&cb).unwrap(), "{algo}");
    }
}

#[test]
fn bench_writes_rows_and_aggregates() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "bench.csv");
    let o = mpc(&[
        "bench", "--family", "random", "--n", "200", "--m", "300,600", "--seeds", "1",
        "--algo", "blocking,k2", "--init", "naive,greedy", "--reps", "3", "-o", s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_records(fs::File::open(&out).unwrap()).unwrap();
    // 2 instances x 3 cells x (3 reps + mean).
    assert_eq!(rows.len(), 24);
    for m in [300, 600] {
        let widths: Vec<_> = rows.iter().filter(|r| r.m == m).map(|r| r.width.unwrap()).collect();
        assert!(widths.iter().all(|&k| k == widths[0]));
    }
    assert_eq!(rows.iter().filter(|r| r.rep == "mean").count(), 6);
}
