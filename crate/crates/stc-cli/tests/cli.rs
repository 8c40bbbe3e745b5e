use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use stc_core::io::{parse_assignment, parse_graph, write_assignment, write_sat};
use stc_core::reduction::random_m2p1n;

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("stc-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        stc_in(&self.0, args, &[])
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn stc_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stc"));
    cmd.args(args).current_dir(dir);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K4: &str = "stcgraph 4 6\n0 1 1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 1\n";
const C5: &str = "stcgraph 5 5\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n4 0 1\n";

#[test]
fn decide_k4_is_yes_with_witness() {
    let s = Scratch::new("decide");
    s.put("k4.stcgraph", K4);
    let o = s.run(&["decide", "k4.stcgraph", "--witness", "w.stctree"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "YES\n");
    let v = s.run(&["verify-tree", "k4.stcgraph", "w.stctree", "--k", "3"]);
    assert_eq!(stdout(&v), "congestion 3\nwithin 3\n");
}

#[test]
fn decide_no_exits_one() {
    // a 4-cycle with one doubled edge: lambda 2 but congestion 3
    let s = Scratch::new("no");
    s.put("g.stcgraph", "stcgraph 4 5\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n0 1 1\n");
    let o = s.run(&["decide", "g.stcgraph"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NO preimage-violation\n");
    assert!(stdout(&s.run(&["exact", "g.stcgraph"])).starts_with("stc 3\n"));
}

#[test]
fn exact_c5() {
    let s = Scratch::new("exact");
    s.put("c5.stcgraph", C5);
    let o = s.run(&["exact", "c5.stcgraph"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("stc 2\nstctree 5\n"), "{out}");
    assert_eq!(out.lines().count(), 2 + 4);
}

#[test]
fn budget_comes_from_the_environment() {
    let s = Scratch::new("budget");
    s.put("k4.stcgraph", K4);
    let o = stc_in(&s.0, &["exact", "k4.stcgraph"], &[("STC_MAX_TREES", "1")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert!(o.stdout.is_empty());
}

#[test]
fn four_petal_flower_tree_has_congestion_five() {
    let s = Scratch::new("flower");
    let g = s.run(&["gadget", "flower", "--l", "4", "--k", "8", "--tree", "f.stctree"]);
    s.put("f.stcgraph", &stdout(&g));
    let o = s.run(&["verify-tree", "f.stcgraph", "f.stctree"]);
    assert_eq!(stdout(&o), "congestion 5\n");
    let graph = parse_graph(&stdout(&g)).unwrap();
    assert_eq!(graph.vertex_count(), 12);
    assert!(graph.vertex_label(0).is_some());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let s = Scratch::new("errors");
    assert_eq!(s.run(&["frobnicate"]).status.code(), Some(2));
    s.put("bad.stcgraph", "stcgraph 2 1\n0 1 3 2\n");
    let o = s.run(&["exact", "bad.stcgraph"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 7"));
    s.put("bad.sat", "m2p1n 6\n3p 1 2 3\n");
    assert_eq!(s.run(&["reduce3", "bad.sat"]).status.code(), Some(2));
    assert_eq!(s.run(&["exact", "missing.stcgraph"]).status.code(), Some(3));
}

#[test]
fn assignment_round_trip_through_files() {
    let s = Scratch::new("sat");
    let (inst, model) = (0..)
        .map(|seed| random_m2p1n(12, seed).unwrap())
        .find_map(|inst| {
            let m = (0u32..1 << 12).map(|mask| (0..12).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()).find(|v| inst.is_satisfied_by(v))?;
            Some((inst, m))
        })
        .unwrap();
    s.put("s.sat", &write_sat(&inst));
    s.put("a.txt", &write_assignment(&model));
    for (cmd, sidecar) in [("reduce3", false), ("reduce4", true)] {
        let mut args = vec![cmd, "s.sat"];
        if sidecar {
            args.extend(["--labels", "g.labels"]);
        }
        let g = s.run(&args);
        assert_eq!(g.status.code(), Some(0));
        s.put("g.stcgraph", &stdout(&g));
        let mut from = vec!["from-assignment", "g.stcgraph", "a.txt"];
        let mut to = vec!["to-assignment", "g.stcgraph", "t.stctree", "--audit"];
        if sidecar {
            from.extend(["--labels", "g.labels"]);
            to.extend(["--labels", "g.labels"]);
        }
        let t = s.run(&from);
        assert_eq!(t.status.code(), Some(0), "{}", String::from_utf8_lossy(&t.stderr));
        s.put("t.stctree", &stdout(&t));
        let back = s.run(&to);
        assert_eq!(back.status.code(), Some(0), "{}", String::from_utf8_lossy(&back.stderr));
        let text = stdout(&back);
        assert!(inst.is_satisfied_by(&parse_assignment(&text).unwrap()));
        assert!(!text.contains("FAIL"), "{text}");
    }
    // the degree-4 graph without its sidecar cannot be read back as a reduction
    assert_eq!(s.run(&["from-assignment", "g.stcgraph", "a.txt"]).status.code(), Some(3));
}

#[test]
fn generators_are_seeded() {
    let s = Scratch::new("gen");
    let a = s.run(&["gen", "--n", "5", "--k", "2", "--seed", "9"]);
    let b = s.run(&["gen", "--n", "5", "--k", "2", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("stcgraph 5 "));
    let sat = s.run(&["gen-sat", "--n", "12", "--seed", "1"]);
    assert!(stdout(&sat).starts_with("m2p1n 12\n"));
    assert_eq!(s.run(&["gen-sat", "--n", "7"]).status.code(), Some(3));
}

#[test]
fn cactus_and_expand() {
    let s = Scratch::new("cactus");
    s.put("c5.stcgraph", C5);
    let o = s.run(&["cactus", "c5.stcgraph"]);
    let out = stdout(&o);
    assert!(out.starts_with("k 2 cuts 10\n"), "{out}");
    assert!(out.ends_with("cycle 0 1 2 3 4\n"), "{out}");
    s.put("w.stcgraph", "stcgraph 3 3\n0 1 1 3\n1 2 1\n2 0 2\n");
    let x = parse_graph(&stdout(&s.run(&["expand", "w.stcgraph", "--k", "4"]))).unwrap();
    assert_eq!(x.weighted_degree(0).unwrap(), 3);
    let sub = parse_graph(&stdout(&s.run(&["expand", "w.stcgraph", "--k", "4", "--subdivide"]))).unwrap();
    assert_eq!(sub.vertex_count(), x.vertex_count() + 2);
    assert!(sub.max_weighted_degree() <= 3);
}
