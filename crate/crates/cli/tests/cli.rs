use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use designlab::IncidenceSystem;
use designlab_cli::format::{parse_str, write_design, DesignFormat};
use designlab_cli::selftest::random_system;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_designlab")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

struct Corpus {
    dir: TempDir,
}

impl Corpus {
    fn new() -> Self {
        Corpus { dir: TempDir::new().unwrap() }
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn system(&self, name: &str, s: &IncidenceSystem, format: DesignFormat) -> PathBuf {
        self.write(name, &write_design(s, format))
    }
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn lists(v: usize, blocks: &[&[usize]]) -> IncidenceSystem {
    IncidenceSystem::from_lists(v, blocks.iter().map(|b| b.to_vec())).unwrap()
}

#[test]
fn golden_exit_codes() {
    let c = Corpus::new();
    let fano = IncidenceSystem::fano_plane();
    let cases: Vec<(&str, IncidenceSystem, [i32; 4])> = vec![
        // expected exits for uniform, oddtown, general, dual
        ("fano", fano.clone(), [0, 1, 0, 0]),
        ("fano-complement", fano.complement(), [0, 1, 0, 0]),
        ("sunflower", lists(5, &[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]), [1, 1, 0, 1]),
        ("odd-singletons", lists(3, &[&[0], &[1], &[2]]), [1, 0, 0, 1]),
        ("repeated-block", lists(3, &[&[0, 1], &[0, 1]]), [1, 1, 1, 1]),
        ("odd-intersection", lists(3, &[&[0, 1, 2], &[0]]), [1, 1, 0, 1]),
        ("empty-blocks", lists(3, &[&[], &[]]), [1, 1, 1, 1]),
    ];
    for (name, system, expected) in cases {
        for format in [DesignFormat::Json, DesignFormat::Text] {
            let ext = if format == DesignFormat::Json { "json" } else { "txt" };
            let path = c.system(&format!("{name}.{ext}"), &system, format);
            for (variant, want) in ["uniform", "oddtown", "general", "dual"].iter().zip(expected) {
                let out = run(&["fisher", "--variant", variant, s(&path)]);
                assert_eq!(code(&out), want, "{name} {variant} ({ext}): {}", stdout(&out));
            }
        }
    }
}

#[test]
fn fano_uniform_report() {
    let c = Corpus::new();
    let path = c.system("fano.json", &IncidenceSystem::fano_plane(), DesignFormat::Json);
    let out = run(&["--json", "fisher", "--variant", "uniform", s(&path)]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["payload"]["verdict"], "bound-holds");
    assert_eq!(report["payload"]["bound"]["lhs"], 7);
    assert_eq!(report["payload"]["bound"]["rhs"], 7);
    assert_eq!(report["payload"]["certificate"]["square_det"], "576");
    let digest = report["input_digests"][0].as_str().unwrap();
    assert!(digest.starts_with("sha256:") && digest.len() == 7 + 64);
    let text = stdout(&run(&["fisher", "--variant", "uniform", s(&path)]));
    assert!(text.contains("7 ≤ 7") && text.contains("576"), "{text}");
}

#[test]
fn odd_intersection_is_reported() {
    let c = Corpus::new();
    let path = c.write("odd.txt", "3 2\n0 1 2\n0\n");
    let out = run(&["fisher", "--variant", "oddtown", s(&path)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("pairwise intersection 1 is odd"), "{}", stdout(&out));
}

#[test]
fn isomorphism_exit_codes() {
    let c = Corpus::new();
    let fano = IncidenceSystem::fano_plane();
    let a = c.system("a.json", &fano, DesignFormat::Json);
    let b = c.system("b.txt", &fano.relabel(&[3, 5, 0, 6, 1, 2, 4]).unwrap(), DesignFormat::Text);
    let d = c.system("c.json", &fano.complement(), DesignFormat::Json);
    assert_eq!(code(&run(&["isomorphic", s(&a), s(&b)])), 0);
    assert_eq!(code(&run(&["isomorphic", s(&a), s(&d)])), 1);
}

#[test]
fn dual_twice_is_isomorphic() {
    let c = Corpus::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<IncidenceSystem> =
        std::iter::once(IncidenceSystem::fano_plane()).chain((0..8).map(|_| random_system(&mut rng))).collect();
    for (i, system) in samples.iter().enumerate() {
        for format in [DesignFormat::Json, DesignFormat::Text] {
            let ext = if format == DesignFormat::Json { "json" } else { "txt" };
            let input = c.system(&format!("in{i}.{ext}"), system, format);
            let once = c.dir.path().join(format!("once{i}.{ext}"));
            let twice = c.dir.path().join(format!("twice{i}.{ext}"));
            assert_eq!(code(&run(&["dual", s(&input), "--out", s(&once)])), 0);
            assert_eq!(code(&run(&["dual", s(&once), "--out", s(&twice)])), 0);
            let back = parse_str(&fs::read_to_string(&twice).unwrap(), format).unwrap();
            assert!(designlab::incidence::are_isomorphic(&back, system), "{system}");
            assert_eq!(code(&run(&["isomorphic", s(&input), s(&twice)])), 0);
        }
    }
}

#[test]
fn complement_writes_input_format() {
    let c = Corpus::new();
    let input = c.write("in.txt", "3 2\n0\n1 2\n");
    let out = run(&["complement", s(&input)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3 2\n1 2\n0\n");
}

#[test]
fn write_then_parse_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let system = random_system(&mut rng);
        for format in [DesignFormat::Json, DesignFormat::Text] {
            assert_eq!(parse_str(&write_design(&system, format), format).unwrap(), system);
        }
    }
}

fn strip_wall_time(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_time_secs");
            map.values_mut().for_each(strip_wall_time);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_wall_time),
        _ => {}
    }
}

#[test]
fn reports_are_deterministic() {
    let c = Corpus::new();
    let path = c.system("fano.json", &IncidenceSystem::fano_plane(), DesignFormat::Json);
    for args in [
        vec!["--json", "check", s(&path)],
        vec!["--json", "matrix", s(&path)],
        vec!["--json", "fisher", "--variant", "general", s(&path)],
        vec!["--json", "dual", s(&path)],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!stdout(&first).contains("wall_time"));
    }
    let mut runs: Vec<Value> = (0..2)
        .map(|_| serde_json::from_str(&stdout(&run(&["--json", "selftest"]))).unwrap())
        .collect();
    runs.iter_mut().for_each(strip_wall_time);
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn parse_errors_exit_two_with_location() {
    let c = Corpus::new();
    let cases = [
        ("range.json", r#"{"v":2,"blocks":[[0,2]]}"#, "block 0: point 2 is out of range"),
        ("dup.txt", "3 2\n0 1\n2 2\n", "line 3: point 2 repeated"),
        ("syntax.json", "{\"v\":2,\n\"blocks\":[[0,]]}", "line 2, column"),
        ("header.txt", "3\n0\n", "line 1"),
        ("token.txt", "3 1\n0 a\n", "line 2: position 2"),
        ("short.txt", "3 2\n0\n", "expected 2 block lines"),
    ];
    for (name, contents, needle) in cases {
        let path = c.write(name, contents);
        let out = run(&["check", s(&path)]);
        assert_eq!(code(&out), 2, "{name}");
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
        let out = run(&["--json", "check", s(&path)]);
        assert_eq!(code(&out), 2);
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["payload"]["kind"], "error");
        assert_eq!(report["exit_code"], 2);
    }
    assert_eq!(code(&run(&["check", "/nonexistent/design.json"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["fisher", "--variant", "nope", "x.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["enumerate", "--family", "bibd", "--v", "7"])), 2);
    assert_eq!(code(&run(&["enumerate", "--family", "odd-town", "--v", "40"])), 2);
}

#[test]
fn format_flag_overrides_inference() {
    let c = Corpus::new();
    let path = c.write("design", "{\"v\":3,\"blocks\":[[0,1,2]]}");
    assert_eq!(code(&run(&["check", s(&path)])), 0);
    assert_eq!(code(&run(&["--format", "text", "check", s(&path)])), 2);
    let text = c.write("design.dat", "3 1\n0 1 2\n");
    assert_eq!(code(&run(&["--format", "text", "check", s(&text)])), 0);
}

#[test]
fn enumerate_streams_families() {
    let out = run(&["enumerate", "--family", "const-intersect", "--v", "3"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 19);
    assert!(stderr(&out).contains("19 families"));
    for line in &lines {
        let blocks: Vec<&str> = line.split(" | ").collect();
        let text = format!("3 {}\n{}\n", blocks.len(), blocks.join("\n"));
        let family = parse_str(&text, DesignFormat::Text).unwrap();
        assert!(family.classify().const_intersect.constant().is_some_and(|k| k >= 1), "{line}");
    }

    let out = run(&["--json", "enumerate", "--family", "bibd", "--v", "7", "--k", "3", "--lambda", "1", "--limit", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 5);
    let summary: Value = serde_json::from_str(&stderr(&out)).unwrap();
    assert_eq!(summary["payload"]["families_emitted"], 5);

    let out = run(&["enumerate", "--family", "odd-town", "--v", "2"]);
    assert_eq!(stdout(&out), "-\n0\n0 | 1\n1\n");
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
}
