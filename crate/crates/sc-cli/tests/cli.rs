use sc_cli::io::{load_instance, load_trajectory, save_instance, InstanceFile};
use sc_freespace::build_continuous_fsd;
use sc_geometry::{SCInstance, Trajectory};
use sc_oracles::sc_discrete_bruteforce;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sc-cli")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn square_laps(laps: usize) -> SCInstance {
    let sq = [(0., 0.), (1., 0.), (1., 1.), (0., 1.)];
    let mut v: Vec<(f64, f64)> = (0..laps).flat_map(|_| sq).collect();
    v.push((0., 0.));
    SCInstance::new(Trajectory::from_xy(&v).unwrap(), 3, 4.0, 0.1)
}

#[test]
fn frechet_identical_inputs_at_zero() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "# curve\n0,0\n1,0\n1,2\n");
    for mode in ["discrete", "continuous"] {
        assert_eq!(code(&["frechet", "decide", "--a", s(&a), "--b", s(&a), "--d", "0", "--mode", mode]), 0);
        assert_eq!(code(&["frechet", "decide", "--a", s(&a), "--b", s(&a), "--d", "0", "--mode", mode, "--oracle"]), 0);
    }
}

#[test]
fn frechet_no_and_discrete_gap() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", "[[0,0],[2,0]]");
    let b = write(&dir, "b.json", r#"{"trajectory": [[0,1],[1,1],[2,1]]}"#);
    let args = |d: &'static str, mode: &'static str| ["frechet", "decide", "--a", s(&a), "--b", s(&b), "--d", d, "--mode", mode];
    assert_eq!(code(&args("0.5", "continuous")), 1);
    assert_eq!(code(&args("1", "continuous")), 0);
    // The middle vertex of b is √2 from the nearest vertex of a.
    assert_eq!(code(&args("1", "discrete")), 1);
    assert_eq!(code(&args("1.5", "discrete")), 0);
}

#[test]
fn usage_and_io_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.csv", "0,0\n1,zz\n");
    let out = run(&["frechet", "decide", "--a", s(&bad), "--b", s(&bad), "--d", "1", "--mode", "discrete"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let bad_json = write(&dir, "bad.json", "{\n\"trajectory\": [[0,0],\n[1,]]\n}");
    let out = run(&["sc", "decide", "--in", s(&bad_json), "--mode", "discrete"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&["sc", "decide", "--in", "/nonexistent.json", "--mode", "discrete"]), 2);
    assert_eq!(code(&["frechet", "decide", "--a", s(&bad)]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn sc_decide_on_three_lap_square() {
    let dir = TempDir::new().unwrap();
    let inst = square_laps(3);
    assert!(sc_discrete_bruteforce(&inst).unwrap().yes);
    let f = dir.path().join("sq.json");
    save_instance(&InstanceFile::from_instance(&inst), &f).unwrap();
    let w = dir.path().join("w.json");
    assert_eq!(code(&["sc", "decide", "--in", s(&f), "--mode", "discrete", "--witness", s(&w)]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(v["answer"], true);
    assert_eq!(v["witness"]["paths"].as_array().unwrap().len(), 2);
    assert_eq!(code(&["sc", "decide", "--in", s(&f), "--mode", "continuous"]), 0);
    assert_eq!(code(&["sc", "decide", "--in", s(&f), "--mode", "continuous", "--vertex2vertex"]), 0);
    assert_eq!(code(&["oracle", "sc", "--in", s(&f), "--mode", "discrete"]), 0);

    let two = dir.path().join("two.json");
    save_instance(&InstanceFile::from_instance(&square_laps(2)), &two).unwrap();
    assert_eq!(code(&["sc", "decide", "--in", s(&two), "--mode", "discrete"]), 1);
    assert_eq!(code(&["oracle", "sc", "--in", s(&two), "--mode", "discrete"]), 1);
    assert_eq!(code(&["sc", "decide", "--in", s(&two), "--mode", "continuous"]), 1);
}

#[test]
fn several_trajectories_are_joined() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.json");
    save_instance(&InstanceFile::from_instance(&square_laps(1)), &one).unwrap();
    let w = dir.path().join("w.json");
    assert_eq!(code(&["sc", "decide", "--in", s(&one), "--mode", "discrete"]), 1);
    let args = ["sc", "decide", "--in", s(&one), "--in", s(&one), "--in", s(&one), "--mode", "discrete", "--witness", s(&w)];
    assert_eq!(code(&args), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(v["meta"]["separator_vertices"], serde_json::json!([5, 11]));
}

#[test]
fn generators_write_instances() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "0,0\n1,0\n");
    let out = |n: &str| dir.path().join(n);
    assert_eq!(code(&["gen", "bringmann", "--a", s(&a), "--b", s(&a), "--out", s(&out("b.json"))]), 0);
    assert_eq!(code(&["sc", "decide", "--in", s(&out("b.json")), "--mode", "discrete"]), 0);
    assert_eq!(code(&["gen", "density", "--n", "2", "--out", s(&out("d.json"))]), 0);
    let dens = load_instance(&out("d.json")).unwrap();
    assert_eq!(dens.meta.unwrap()["expected_kind2_per_copy"], 8);
    assert_eq!(code(&["gen", "or", "--x", "true", "--z", "false", "--out", s(&out("or.json"))]), 0);
    assert_eq!(code(&["gen", "and", "--x", "10", "--z", "01", "--out", s(&out("and.json"))]), 0);
    assert_eq!(code(&["gen", "and", "--x", "1x", "--z", "01", "--out", s(&out("bad.json"))]), 2);
    let or = load_trajectory(&out("or.json"));
    assert!(or.is_err(), "gadget files hold two curves");
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out("and.json")).unwrap()).unwrap();
    assert_eq!(g["w"], 2);
    let p3 = out("3.json");
    let t3 = ["gen", "threeov", "--x", "0", "--y", "1", "--z", "0", "--out", s(&p3)];
    assert_eq!(code(&t3), 0);
    let f = load_instance(&p3).unwrap();
    assert!(f.margin.unwrap() > 0.0);
    assert_eq!(code(&["sc", "decide", "--in", s(&p3), "--mode", "continuous"]), 0);
}

#[test]
fn svg_has_one_path_per_edge_interval() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.csv", "0,0\n1,0\n2,0.5\n");
    let b = write(&dir, "b.csv", "0,0.3\n1,0.8\n2,0\n");
    let svg = dir.path().join("f.svg");
    let args = ["fsd", "dump", "--a", s(&a), "--b", s(&b), "--d", "0.9", "--format", "svg", "--out", s(&svg)];
    assert_eq!(code(&args), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    let fsd = build_continuous_fsd(&load_trajectory(&a).unwrap(), &load_trajectory(&b).unwrap(), 0.9);
    let mut edges = 0;
    for j in 0..fsd.rows() {
        edges += (0..fsd.n1()).filter(|&e| !fsd.vert(e, j).is_empty()).count();
    }
    for k in 0..fsd.n2() {
        edges += (0..fsd.cols()).filter(|&i| !fsd.horiz(k, i).is_empty()).count();
    }
    assert!(edges > 4);
    assert_eq!(text.matches("<path ").count(), edges);
    assert_eq!(text.matches("<rect ").count(), 4);

    let json = dir.path().join("f.json");
    let args = ["fsd", "dump", "--a", s(&a), "--b", s(&b), "--d", "0.9", "--internal", "--ell", "0.5", "--out", s(&json)];
    assert_eq!(code(&args), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    assert!(v["internal"].is_array());
    assert_eq!(code(&["fsd", "dump", "--a", s(&a), "--b", s(&b), "--d", "1", "--format", "png", "--out", s(&json)]), 2);
}

#[test]
fn bench_rows_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let rows = |name: &str| {
        let p = dir.path().join(name);
        assert_eq!(code(&["bench", "sweep", "--algo", "discrete", "--sizes", "40,80", "--seeds", "2", "--out", s(&p)]), 0);
        let text = std::fs::read_to_string(&p).unwrap();
        let lines: Vec<String> = text.lines().map(String::from).collect();
        assert_eq!(lines[0], "algorithm,n,m,seed,wall_nanos,answer,links,cuts,events");
        lines[1..]
            .iter()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(4);
                f.join(",")
            })
            .collect::<Vec<_>>()
    };
    let (a, b) = (rows("a.csv"), rows("b.csv"));
    assert_eq!(a.len(), 4);
    assert_eq!(a, b);
    assert_eq!(code(&["bench", "sweep", "--algo", "quantum", "--sizes", "4", "--out", s(&dir.path().join("c.csv"))]), 2);
}
