use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn hybridx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybridx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
    corpus: PathBuf,
    index: PathBuf,
}

fn fixture(m: &str, k: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    let index = dir.path().join("corpus.hx");
    let o = hybridx(&["gen", p(&corpus), "--size", "3000", "--copies", "4", "--rate", "0.01", "--seed", "5", "--alphabet", "text"]);
    assert!(o.status.success(), "{o:?}");
    let o = hybridx(&["build", p(&corpus), p(&index), "--m", m, "--k", k]);
    assert!(o.status.success(), "{o:?}");
    Fixture { dir, corpus, index }
}

#[test]
fn gen_is_deterministic_and_respects_copies() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let one = dir.path().join("one");
    let same = dir.path().join("same");
    for out in [&a, &b] {
        assert!(hybridx(&["gen", p(out), "--size", "500", "--copies", "3", "--rate", "0.05", "--seed", "9"]).status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    assert!(hybridx(&["gen", p(&one), "--size", "500", "--copies", "1", "--seed", "9"]).status.success());
    assert_eq!(std::fs::read(&one).unwrap().len(), 500);

    assert!(hybridx(&["gen", p(&same), "--size", "100", "--copies", "4", "--rate", "0"]).status.success());
    let t = std::fs::read(&same).unwrap();
    assert_eq!(t.len(), 400);
    assert!(t.chunks(100).all(|c| c == &t[..100]));

    let o = hybridx(&["gen", p(&same), "--rate", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_prints_stats_and_stats_agrees() {
    let f = fixture("20", "1");
    let o = hybridx(&["stats", p(&f.index)]);
    assert!(o.status.success());
    let text = stdout(&o);
    let size = std::fs::metadata(&f.index).unwrap().len();
    assert!(text.contains(&format!("file_bytes\t{size}")), "{text}");
    let n = std::fs::read(&f.corpus).unwrap().len();
    assert!(text.lines().any(|l| l == format!("n\t{n}")), "{text}");
}

#[test]
fn missing_input_fails_with_message() {
    let dir = tempfile::tempdir().unwrap();
    let o = hybridx(&["build", p(&dir.path().join("nope")), p(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn query_outputs_sorted_tsv() {
    let f = fixture("20", "1");
    let text = std::fs::read(&f.corpus).unwrap();
    let pat = std::str::from_utf8(&text[100..108]).unwrap().to_string();
    let o = hybridx(&["query", p(&f.index), &pat]);
    assert!(o.status.success());
    let lines: Vec<Vec<String>> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    assert!(!lines.is_empty());
    let mut prev = (0, 0);
    for l in &lines {
        assert_eq!(l.len(), 4);
        assert_eq!(l[0], "1");
        let (s, e): (usize, usize) = (l[1].parse().unwrap(), l[2].parse().unwrap());
        assert_eq!(&text[s - 1..e], pat.as_bytes());
        assert!((s, e) > prev);
        prev = (s, e);
        assert!(l[3] == "primary" || l[3] == "secondary");
    }
}

#[test]
fn query_with_no_hits_is_empty() {
    let f = fixture("20", "0");
    let o = hybridx(&["query", p(&f.index), "###"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn patterns_file_groups_by_id() {
    let f = fixture("20", "0");
    let text = std::fs::read(&f.corpus).unwrap();
    let pats = f.dir.path().join("pats");
    let body = [&text[10..14], &text[200..205], &text[3000..3003]]
        .map(|s| String::from_utf8(s.to_vec()).unwrap().replace('\n', "x"))
        .join("\n");
    std::fs::write(&pats, &body).unwrap();
    let o = hybridx(&["query", p(&f.index), "--patterns", p(&pats)]);
    assert!(o.status.success());
    let ids: Vec<usize> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().parse().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] <= w[1]));
    assert!(ids.iter().all(|&i| (1..=3).contains(&i)));
}

#[test]
fn query_beyond_bounds_names_the_bound() {
    let f = fixture("20", "1");
    let o = hybridx(&["query", p(&f.index), "abc", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max 1"));
    let long = "a".repeat(21);
    let o = hybridx(&["query", p(&f.index), &long]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max 20"));
}

#[test]
fn verify_passes_on_fresh_index() {
    let f = fixture("40", "1");
    let o = hybridx(&["verify", p(&f.index), p(&f.corpus), "--samples", "200", "--seed", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn verify_detects_wrong_corpus() {
    let f = fixture("40", "0");
    let other = f.dir.path().join("other");
    let mut text = std::fs::read(&f.corpus).unwrap();
    let mid = text.len() / 2;
    text[mid..].reverse();
    std::fs::write(&other, &text).unwrap();
    let o = hybridx(&["verify", p(&f.index), p(&other), "--samples", "100"]);
    assert_eq!(o.status.code(), Some(1));

    std::fs::write(&other, b"short").unwrap();
    let o = hybridx(&["verify", p(&f.index), p(&other)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_with_zero_samples_passes_vacuously() {
    let f = fixture("10", "0");
    let o = hybridx(&["verify", p(&f.index), p(&f.corpus), "--samples", "0"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nothing verified"));
}

#[test]
fn bench_emits_one_record_per_length() {
    let f = fixture("40", "0");
    let o = hybridx(&["bench", p(&f.index), p(&f.corpus), "--lengths", "10,20,40", "--count", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "corpus,n,m,k,patterns,total_matches,mean_us,median_us,index_bytes");
    assert_eq!(lines.len(), 4);
    for (line, m) in lines[1..].iter().zip(["10", "20", "40"]) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 9);
        assert_eq!(cols[0], "corpus");
        assert_eq!(cols[2], m);
        assert_eq!(cols[4], "1");
        assert!(cols[6].parse::<f64>().unwrap() > 0.0);
        assert!(cols[5].parse::<usize>().unwrap() >= 1);
    }

    let o = hybridx(&["bench", p(&f.index), p(&f.dir.path().join("missing"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corrupt_index_is_a_format_error() {
    let f = fixture("10", "0");
    let mut bytes = std::fs::read(&f.index).unwrap();
    bytes[0] = b'X';
    std::fs::write(&f.index, &bytes).unwrap();
    let o = hybridx(&["stats", p(&f.index)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("magic"));
}

#[test]
fn parse_dump_round_trips() {
    let f = fixture("10", "0");
    let o = hybridx(&["parse", p(&f.corpus)]);
    assert!(o.status.success());
    let parse = hybrid_index::Parse::from_dump(&stdout(&o)).unwrap();
    assert_eq!(hybrid_index::decode(&parse).unwrap(), std::fs::read(&f.corpus).unwrap());
}
