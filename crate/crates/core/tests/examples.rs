//! Runs every example binary that `cargo test` builds alongside the tests.

use std::path::PathBuf;
use std::process::Command;

fn examples_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn every_example_runs() {
    let dir = examples_dir();
    let out_dir = tempfile::tempdir().unwrap();
    let svg = out_dir.path().join("example.svg");
    let runs: [(&str, Vec<&str>, &str); 10] = [
        ("geometry", vec![], "bowtie simple = false"),
        ("generate", vec!["3", "20"], "satris_"),
        ("values", vec![], "uniform"),
        ("verify", vec![], r#"{"valid":true"#),
        ("solve", vec!["1", "30"], r#"verified: {"valid":true"#),
        ("shelf", vec![], "shelf packing placed"),
        ("leaderboard", vec![], "score at half the best:  1/4"),
        ("select", vec![], "by family"),
        ("render", vec![svg.to_str().unwrap()], "wrote"),
        ("quadtree", vec![], "pairs after adding"),
    ];
    for (name, args, expect) in runs {
        let path = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        let out = Command::new(&path)
            .args(&args)
            .output()
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout.contains(expect), "{name} printed {stdout}");
    }
    roxmltree::Document::parse(&std::fs::read_to_string(&svg).unwrap()).unwrap();
}
