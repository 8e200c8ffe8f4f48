use std::path::Path;
use std::process::{Command, Output};

use planar_cayley::construct::CayleyBall;
use serde_json::Value;

fn pcayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcayley")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn invalid_parameters_exit_2() {
    let out = pcayley(&["build", "--type", "V", "--n", "2", "--m", "1"]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&pcayley(&["build", "--type", "I", "--n", "1"])), 2);
    assert_eq!(code(&pcayley(&["build", "--type", "VI", "--n", "2"])), 2);
}

#[test]
fn parse_and_usage_errors_exit_1() {
    assert_eq!(code(&pcayley(&["classify", "<a,b | b^2, (ab"])), 1);
    assert_eq!(code(&pcayley(&["build", "--type", "XI", "--n", "2"])), 1);
    assert_eq!(code(&pcayley(&["classify", "/nonexistent/ball.json"])), 1);
    assert_eq!(code(&pcayley(&["frobnicate"])), 1);
    assert_eq!(code(&pcayley(&["--help"])), 0);
}

#[test]
fn classify_recognises_type_ii() {
    let out = pcayley(&["classify", "<a,b | b^2, (aba^-1b^-1)^2>"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["type"], "II");
    assert_eq!(j["params"]["n"], 2);
    assert_eq!(j["flags"]["hinge"], true);
    assert_eq!(j["flags"]["vap_free"], true);
    assert_eq!(j["colour_spin"]["b"], "reversing");
    assert_eq!(j["generator_count"], 2);
}

#[test]
fn classify_outside_catalogue_exits_3() {
    let out = pcayley(&["classify", "<a,b | b^2, a^3>"]);
    assert_eq!(code(&out), 3);
    let j = json(&out);
    assert_eq!(j["not_in_catalogue"]["cornp_case"], 1);
}

#[test]
fn blind_classification_of_a_saved_ball() {
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("ball.json");
    let ball = ball.to_str().unwrap();
    let out = pcayley(&["build", "--type", "III", "--m", "3", "--radius", "6", "-o", ball]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = pcayley(&["classify", ball, "--blind"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let j = json(&out);
    assert_eq!(j["type"], "III");
    assert_eq!(j["params"]["n"], 3);
    assert_eq!(j["kappa_claim"]["evidence"], "ball-verified");

    let out = pcayley(&["--radius", "2", "classify", "--type", "III", "--m", "3", "--blind"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn finite_presentation_builds_whole_graph() {
    let out = pcayley(&["build", "--presentation", "<b,c,d | b^2, c^2, d^2, (bc)^2, cd>"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let b = CayleyBall::from_json_str(&stdout(&out)).unwrap();
    assert!(b.is_complete());
    assert_eq!(b.len(), 4);
}

#[test]
fn checks_on_single_balls() {
    let out = pcayley(&["verify", "--check", "k33-scaffold"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("b6.json");
    let ball = ball.to_str().unwrap();
    assert_eq!(code(&pcayley(&["build", "--type", "I", "--n", "3", "--radius", "6", "-o", ball])), 0);
    for check in ["separator-involution", "planarity", "spin-consistency", "face-correspondence"] {
        let out = pcayley(&["verify", ball, "--check", check]);
        assert_eq!(code(&out), 0, "{check}: {}", stdout(&out));
    }
}

#[test]
fn render_deeper_than_the_ball_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let ball = dir.path().join("b6.json");
    let ball = ball.to_str().unwrap();
    assert_eq!(code(&pcayley(&["build", "--type", "II", "--n", "2", "--radius", "6", "-o", ball])), 0);
    assert_eq!(code(&pcayley(&["render", ball, "--depth", "7"])), 5);
    assert_eq!(code(&pcayley(&["render", ball, "--depth", "3"])), 0);
}

/// Edges among vertices of depth at most `d`, counted from neighbour slots.
fn edges_within(b: &CayleyBall, d: usize) -> (usize, usize) {
    let (mut half, mut loops, mut involutions) = (0, 0, 0);
    for v in (0..b.len()).filter(|&v| b.depth(v) <= d) {
        for c in 0..b.columns().len() {
            let Some(w) = b.neighbour(v, c) else { continue };
            if b.depth(w) > d {
                continue;
            }
            let involutive = b.inverse_column(c) == c;
            if v == w && involutive {
                loops += 1;
            } else {
                half += 1;
                if involutive {
                    involutions += 1;
                }
            }
        }
    }
    (half / 2 + loops, involutions / 2 + loops)
}

#[test]
fn dot_has_one_statement_per_edge() {
    for (kind, n, m) in [("I", "3", None), ("V", "2", Some("2")), ("IX", "3", None)] {
        let mut args = vec!["render", "--type", kind, "--n", n, "--depth", "2", "--format", "dot"];
        if let Some(m) = m {
            args.extend(["--m", m]);
        }
        let out = pcayley(&args);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        let statements: Vec<&str> = text.lines().filter(|l| l.contains("->")).collect();

        let mut build = vec!["build", "--type", kind, "--n", n, "--radius", "4"];
        if let Some(m) = m {
            build.extend(["--m", m]);
        }
        let b = CayleyBall::from_json_str(&stdout(&pcayley(&build))).unwrap();
        let (edges, involutions) = edges_within(&b, 2);
        assert_eq!(statements.len(), edges, "{kind}");
        assert_eq!(statements.iter().filter(|l| l.contains("dir=none")).count(), involutions, "{kind}");
        assert!(text.starts_with("digraph"));
    }
}

#[test]
fn svg_is_deterministic_and_seeded() {
    let render = |seed: &str| {
        stdout(&pcayley(&["--seed", seed, "render", "--type", "VI", "--n", "2", "--m", "3", "--depth", "3"]))
    };
    let a = render("0");
    assert_eq!(a, render("0"));
    assert_ne!(a, render("90"));
    assert!(a.starts_with("<svg") || a.starts_with("<?xml"));
    assert!(a.contains("</svg>"));
    let nested = stdout(&pcayley(&["render", "--type", "III", "--m", "4", "--depth", "3"]));
    assert!(nested.contains("<circle"));
}

#[test]
fn every_layout_renders() {
    for layout in ["radial", "tree", "concentric", "auto"] {
        for kind in [["III", "--m", "4"], ["IV", "--m", "3"], ["VIII", "--m", "2"]] {
            let mut args = vec!["render", "--type"];
            args.extend(kind);
            args.extend(["--depth", "3", "--layout", layout]);
            let out = pcayley(&args);
            assert_eq!(code(&out), 0, "{layout} {kind:?}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn smoke_grid_writes_report_and_drawings() {
    let dir = tempfile::tempdir().unwrap();
    let out = pcayley(&["verify", "--grid", "smoke", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&read(&dir.path().join("smoke.json"))).unwrap();
    assert_eq!(report["pass"], true);
    let cells = report["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 18);
    let svgs = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "svg"))
        .count();
    assert_eq!(svgs, cells.len());
}
