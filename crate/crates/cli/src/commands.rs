use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use hybrid_index::corpus::{generate, perturb, sample_substring, Alphabet, CorpusSpec};
use hybrid_index::naive::{find_approx, find_exact};
use hybrid_index::{HybridIndex, IndexParams, IndexStats, Origin};
use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Command, Failure};

/// Pattern lengths sampled by `verify`.
const VERIFY_LENGTHS: [usize; 5] = [1, 10, 20, 40, 80];

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Build {
            input,
            output,
            m,
            k,
            g,
            b,
            sep_count,
        } => {
            let params = IndexParams {
                separator_count: sep_count,
                g,
                b,
                ..IndexParams::new(m, k)
            };
            build(&input, &output, &params)
        }
        Command::Query {
            index,
            pattern,
            patterns,
            k,
        } => {
            let patterns = match (pattern, patterns) {
                (Some(p), _) => vec![p.into_bytes()],
                (None, Some(path)) => read_patterns(&path)?,
                (None, None) => return Err(Failure::Usage("give a pattern or --patterns FILE".into()).into()),
            };
            query(&index, &patterns, k)
        }
        Command::Verify {
            index,
            corpus,
            samples,
            seed,
        } => verify(&index, &corpus, samples, seed),
        Command::Bench {
            index,
            corpus,
            lengths,
            count,
            seed,
            k,
        } => bench(&index, &corpus, &lengths, count, seed, k),
        Command::Stats { index } => {
            let idx = load_index(&index)?;
            print_stats(&mut io::stdout().lock(), &idx.stats())?;
            Ok(())
        }
        Command::Parse { input } => {
            let text = read_file(&input)?;
            let parse = hybrid_index::parse(&text)?;
            io::stdout().lock().write_all(parse.dump().as_bytes())?;
            Ok(())
        }
        Command::Gen {
            output,
            size,
            copies,
            rate,
            seed,
            alphabet,
        } => gen(&output, size, copies, rate, seed, alphabet),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_index(path: &Path) -> Result<HybridIndex> {
    let bytes = read_file(path)?;
    HybridIndex::deserialize(&bytes).with_context(|| format!("cannot load index {}", path.display()))
}

fn read_patterns(path: &Path) -> Result<Vec<Vec<u8>>> {
    let data = read_file(path)?;
    Ok(data
        .split(|&c| c == b'\n')
        .map(|line| line.strip_suffix(b"\r").unwrap_or(line))
        .filter(|line| !line.is_empty())
        .map(<[u8]>::to_vec)
        .collect())
}

fn build(input: &Path, output: &Path, params: &IndexParams) -> Result<()> {
    let text = read_file(input)?;
    let start = Instant::now();
    let idx = HybridIndex::build(&text, params)?;
    info!("built index over {} bytes in {:.2?}", text.len(), start.elapsed());
    let bytes = idx.serialize();
    fs::write(output, &bytes).with_context(|| format!("cannot write {}", output.display()))?;
    print_stats(&mut io::stdout().lock(), &idx.stats())?;
    Ok(())
}

fn print_stats(out: &mut impl Write, st: &IndexStats) -> io::Result<()> {
    writeln!(out, "n\t{}", st.n)?;
    writeln!(out, "phrases\t{}", st.phrases)?;
    writeln!(out, "kernel_len\t{}", st.kernel_len)?;
    writeln!(out, "kernel_ratio\t{:.6}", st.kernel_ratio())?;
    writeln!(out, "grid_points\t{}", st.grid_points)?;
    for (name, bytes) in &st.sections {
        writeln!(out, "section.{name}\t{bytes}")?;
    }
    writeln!(out, "section_total\t{}", st.section_bytes())?;
    writeln!(out, "file_bytes\t{}", st.file_bytes)
}

fn tag(origin: Origin) -> &'static str {
    match origin {
        Origin::Primary => "primary",
        Origin::Secondary => "secondary",
    }
}

fn query(index: &Path, patterns: &[Vec<u8>], k: usize) -> Result<()> {
    let idx = load_index(index)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (id, pat) in patterns.iter().enumerate() {
        let res = idx.query(pat, k)?;
        for o in &res.occurrences {
            writeln!(out, "{}\t{}\t{}\t{}", id + 1, o.start, o.end, tag(o.origin))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn load_pair(index: &Path, corpus: &Path) -> Result<(HybridIndex, Vec<u8>)> {
    let idx = load_index(index)?;
    let text = read_file(corpus)?;
    Ok((idx, text))
}

fn verify(index: &Path, corpus: &Path, samples: usize, seed: u64) -> Result<()> {
    let (idx, text) = load_pair(index, corpus)?;
    if idx.text_len() != text.len() {
        return Err(Failure::Verify(format!(
            "index covers {} bytes but the corpus has {}",
            idx.text_len(),
            text.len()
        ))
        .into());
    }
    if samples == 0 {
        warn!("no samples requested; nothing verified");
        println!("PASS 0/0");
        return Ok(());
    }
    let params = *idx.params();
    let lengths: Vec<usize> = VERIFY_LENGTHS
        .into_iter()
        .filter(|&m| m <= params.max_pattern_len && m <= text.len())
        .collect();
    let lengths = if lengths.is_empty() {
        vec![params.max_pattern_len.min(text.len())]
    } else {
        lengths
    };
    let mut symbols: Vec<u8> = text.clone();
    symbols.sort_unstable();
    symbols.dedup();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for s in 0..samples {
        let len = lengths[s % lengths.len()];
        let k = rng.gen_range(0..=params.max_edits);
        let Some(base) = sample_substring(&mut rng, &text, len) else {
            continue;
        };
        let edits = rng.gen_range(0..=k);
        let pat = perturb(&mut rng, &base, edits, &symbols, params.max_pattern_len);
        let got: Vec<(usize, usize)> = idx.query(&pat, k)?.occurrences.iter().map(|o| (o.start, o.end)).collect();
        let want = if k == 0 {
            find_exact(&text, &pat)
        } else {
            find_approx(&text, &pat, k)
        };
        if got != want {
            failures += 1;
            let missing: Vec<_> = want.iter().filter(|w| !got.contains(w)).take(10).collect();
            let extra: Vec<_> = got.iter().filter(|g| !want.contains(g)).take(10).collect();
            eprintln!(
                "mismatch for {:?} (k={k}): index {} hits, scan {} hits; missing {missing:?}; extra {extra:?}",
                String::from_utf8_lossy(&pat),
                got.len(),
                want.len()
            );
        }
    }
    if failures > 0 {
        println!("FAIL {}/{samples}", samples - failures);
        return Err(Failure::Verify(format!("{failures} of {samples} samples disagree with the scan")).into());
    }
    println!("PASS {samples}/{samples}");
    Ok(())
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn bench(index: &Path, corpus: &Path, lengths: &[usize], count: usize, seed: u64, k: usize) -> Result<()> {
    let (idx, text) = load_pair(index, corpus)?;
    let index_bytes = fs::metadata(index)?.len();
    let name = corpus
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "corpus,n,m,k,patterns,total_matches,mean_us,median_us,index_bytes")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &m in lengths {
        let mut times = Vec::with_capacity(count);
        let mut total = 0usize;
        for _ in 0..count {
            let Some(pat) = sample_substring(&mut rng, &text, m) else {
                warn!("no non-unary substring of length {m}");
                break;
            };
            let start = Instant::now();
            let res = idx.query(&pat, k)?;
            let micros = start.elapsed().as_nanos().max(1) as f64 / 1000.0;
            total += res.occurrences.len();
            times.push(micros);
        }
        if times.is_empty() {
            continue;
        }
        times.sort_by(f64::total_cmp);
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        writeln!(
            out,
            "{name},{},{m},{k},{},{total},{mean:.3},{:.3},{index_bytes}",
            text.len(),
            times.len(),
            median(&times)
        )?;
    }
    Ok(())
}

fn gen(output: &Path, size: usize, copies: usize, rate: f64, seed: u64, alphabet: Alphabet) -> Result<()> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Failure::Usage(format!("rate {rate} is outside [0, 1]")).into());
    }
    if size == 0 || copies == 0 {
        return Err(Failure::Usage("size and copies must be positive".into()).into());
    }
    let text = generate(&CorpusSpec {
        base_len: size,
        copies,
        rate,
        seed,
        alphabet,
    });
    fs::write(output, &text).with_context(|| format!("cannot write {}", output.display()))?;
    info!("wrote {} bytes to {}", text.len(), output.display());
    Ok(())
}
