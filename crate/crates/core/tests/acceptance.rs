use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use catkit::acceptance::{self, Check};
use catkit::corpus::Corpus;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(10)),
        2 | 4 => Some(Duration::from_secs(5)),
        7 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

fn timed(f: impl FnOnce() -> Check) -> (Check, Duration) {
    let t = Instant::now();
    let c = f();
    (c, t.elapsed())
}

fn main() {
    let dir = corpus_dir();
    let corpus = Corpus::load(&dir).expect("corpus loads");
    let runs: Vec<(Check, Duration)> = vec![
        timed(|| acceptance::em_as_descent(&corpus)),
        timed(acceptance::mate_bijection),
        timed(|| acceptance::beck_chevalley_witness(&corpus)),
        timed(|| acceptance::span_mat_round_trips(&corpus)),
        timed(|| acceptance::topology_coherence(&corpus)),
        timed(acceptance::descent_specialization),
        timed(acceptance::monad_morphisms),
        timed(|| acceptance::universal_properties(&corpus)),
        timed(|| determinism_tree(&dir)),
    ];
    let mut failed = Vec::new();
    for (check, elapsed) in &runs {
        let in_time = limit(check.id).map_or(true, |l| *elapsed < l);
        let pass = check.pass && in_time;
        let timing = if in_time { String::new() } else { " (too slow)".to_string() };
        println!(
            "[{}] criterion {}: {} ({:.2?}{timing}) {}",
            if pass { "PASS" } else { "FAIL" },
            check.id,
            check.name,
            elapsed,
            check.detail
        );
        if !pass {
            failed.push(check.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}

/// Runs the whole corpus twice into separate output trees and compares them
/// byte for byte, on top of the in-process check.
fn determinism_tree(dir: &Path) -> Check {
    let mut check = acceptance::determinism(dir);
    let trees: Vec<tempfile::TempDir> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
    for t in &trees {
        let out = catkit::cli::run(["catkit", "corpus", "run", "--dir"].map(Into::into).into_iter().chain([
            dir.as_os_str().to_owned(),
            "--out".into(),
            t.path().as_os_str().to_owned(),
        ]));
        if out.code != 0 {
            check.pass = false;
            check.detail = format!("corpus run exited {}: {}", out.code, out.stderr);
            return check;
        }
    }
    let read = |t: &tempfile::TempDir| {
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(t.path())
            .unwrap()
            .map(|e| {
                let p = e.unwrap().path();
                (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
            })
            .collect();
        files.sort();
        files
    };
    let (a, b) = (read(&trees[0]), read(&trees[1]));
    if a != b {
        check.pass = false;
        check.detail = "output trees differ".into();
    } else {
        check.detail = format!("{}; {} files byte-identical across two trees", check.detail, a.len());
    }
    check
}
