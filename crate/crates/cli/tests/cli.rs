use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const QUARTIC: &str = "x0^4 + x1^4 - x2^4 - x3^4";

fn write_config(dir: &Path, surface: &str, schedule: &str) -> std::path::PathBuf {
    let path = dir.join("exp.conf");
    fs::write(
        &path,
        format!(
            "# test run\nsurface = {surface}\nb_schedule = {schedule}\nplane_sample = 12\nseed = 3\n\
             cache_dir = cache\ncover_height = 8\ncover_random = 50\n"
        ),
    )
    .unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planesect")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn missing_or_invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["count", "--config", s(&dir.path().join("nope.conf"))]);
    assert_eq!(out.status.code(), Some(2));
    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "surface = x0^4\nb_schedule = 4, 2\n").unwrap();
    assert_eq!(run(&["count", "--config", s(&bad)]).status.code(), Some(2));
    fs::write(&bad, "surface = x0^4 + x1^\nb_schedule = 2\n").unwrap();
    assert_eq!(run(&["count", "--config", s(&bad)]).status.code(), Some(2));
}

#[test]
fn singular_surface_refused_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "x0^2*x1^2 + x2^4 + x3^4", "1, 2");
    let out = run(&["count", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["count", "--force", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn report_without_enough_data_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUARTIC, "1, 2, 4");
    let out = run(&["report", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["counts.csv", "exponent.csv", "sections.csv", "sections_histogram.csv", "cover.csv"] {
        assert!(dir.path().join("reports").join(f).exists(), "{f}");
    }
    let exponent = fs::read_to_string(dir.path().join("reports/exponent.csv")).unwrap();
    assert!(exponent.contains("insufficient_data"));
}

#[test]
fn count_rows_match_known_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUARTIC, "1, 2");
    let out = run(&["count", "--config", s(&cfg)]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("reports/counts.csv")).unwrap();
    assert!(text.starts_with("# planesect-counts v1\n"));
    let row1 = text.lines().find(|l| l.starts_with("1,")).unwrap();
    assert!(row1.starts_with("1,16,0,"), "{row1}");
}

#[test]
fn reports_are_reproducible_and_cache_coherent() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), QUARTIC, "1, 2, 4, 8");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (out, threads) in [(&a, "1"), (&b, "2")] {
        for cmd in ["count", "sections"] {
            let o = run(&[cmd, "--config", s(&cfg), "--out", s(out), "--threads", threads]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        }
    }
    for f in ["counts.csv", "exponent.csv", "sections.csv", "sections_histogram.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let caches: Vec<_> = fs::read_dir(dir.path().join("cache")).unwrap().collect();
    assert_eq!(caches.len(), 1);
}
