//! Property checks shared by the property suites and the acceptance run.
//! Each returns a description of the first violation found.

use std::collections::{BTreeMap, BTreeSet};

use hybrid_index::{parse, FilterParams, FilteredText, GapList, GridPoint, MatchClass, Phrase, RmqIndex, SourceGrid};

use super::{naive_parse, Lcg};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Phrase boundaries and literal positions of a text, from its parse.
pub struct Truth {
    pub phrase_of: Vec<usize>,
    pub literal: Vec<bool>,
}

impl Truth {
    pub fn new(text: &[u8]) -> Self {
        let p = parse(text).unwrap();
        let mut phrase_of = vec![0; text.len() + 1];
        let mut literal = vec![false; text.len() + 1];
        for (r, (&s, ph)) in p.phrase_starts().iter().zip(p.phrases()).enumerate() {
            let len = match *ph {
                Phrase::Literal(_) => {
                    literal[s] = true;
                    1
                }
                Phrase::Copy { len, .. } => len,
            };
            phrase_of[s..s + len].fill(r);
        }
        Self { phrase_of, literal }
    }

    /// Crosses a phrase boundary or holds a first occurrence (1-based, inclusive).
    pub fn primary(&self, a: usize, b: usize) -> bool {
        self.phrase_of[a] != self.phrase_of[b] || self.literal[a]
    }
}

pub fn parse_round_trip(text: &[u8]) -> Check {
    let p = parse(text).map_err(|e| e.to_string())?;
    let ours: Vec<(usize, usize)> = p
        .phrases()
        .iter()
        .map(|ph| match *ph {
            Phrase::Literal(_) => (0, 1),
            Phrase::Copy { src, len } => (src, len),
        })
        .collect();
    ensure!(ours == naive_parse(text), "parse differs from the quadratic oracle on {:?}", String::from_utf8_lossy(text));
    let back = hybrid_index::decode(&p).map_err(|e| e.to_string())?;
    ensure!(back == text, "decode does not restore the text");
    Ok(())
}

pub fn gaplist_lossless(values: &[u64], g: usize, b: usize, probes: &[u64]) -> Check {
    let universe = values.last().copied().unwrap_or(0) + 3;
    let list = GapList::build(values, g, b, universe).map_err(|e| e.to_string())?;
    ensure!(list.iter().eq(values.iter().copied()), "iteration differs (g={g}, b={b})");
    for (i, &v) in values.iter().enumerate() {
        ensure!(list.access(i + 1).ok() == Some(v), "access({}) wrong", i + 1);
    }
    let mut buf = Vec::new();
    list.write_to(&mut buf);
    let back = GapList::read_from(&mut &buf[..], "check").map_err(|e| e.to_string())?;
    ensure!(back == list, "serialization changed the list");
    for &x in probes {
        let s = values.partition_point(|&v| v < x);
        let succ = (s < values.len()).then(|| (s + 1, values[s]));
        ensure!(list.successor(x) == succ, "successor({x})");
        let p = values.partition_point(|&v| v <= x);
        let pred = (p > 0).then(|| (p, values[p - 1]));
        ensure!(list.predecessor(x) == pred, "predecessor({x})");
    }
    Ok(())
}

pub fn rmq_matches_scan(values: &[u64], rng: &mut Lcg, queries: usize) -> Check {
    let n = values.len();
    let at = |p: usize| values[p - 1];
    let rmq = RmqIndex::build(n, at);
    for _ in 0..queries {
        let (a, b) = (rng.below(n) + 1, rng.below(n) + 1);
        let (lo, hi) = (a.min(b), a.max(b));
        let mut best = lo;
        for p in lo..=hi {
            if at(p) > at(best) {
                best = p;
            }
        }
        let got = rmq.query(lo, hi, at).map_err(|e| e.to_string())?;
        ensure!(got == best, "rmq({lo},{hi}) = {got}, scan gives {best}");
    }
    Ok(())
}

pub fn covering_matches_filter(text: &[u8], rng: &mut Lcg, queries: usize) -> Check {
    let p = parse(text).unwrap();
    let mut starts: Vec<u64> = p.phrase_starts().iter().map(|&s| s as u64).collect();
    starts.push(text.len() as u64 + 1);
    let starts = GapList::build(&starts, 8, 32, text.len() as u64 + 1).unwrap();
    let grid = SourceGrid::build(&p, &starts, 8, 32).unwrap();
    let points: Vec<GridPoint> = p
        .phrases()
        .iter()
        .zip(p.phrase_starts())
        .filter_map(|(ph, i)| match *ph {
            Phrase::Copy { src, len } => Some(GridPoint {
                x: src,
                y: src + len - 1,
                phrase_start: i,
            }),
            Phrase::Literal(_) => None,
        })
        .collect();
    let n = text.len();
    for _ in 0..queries {
        let l = rng.below(n) + 1;
        let r = (l + rng.below(30)).min(n);
        let mut got = grid.covering_sources(&starts, l, r);
        let mut want: Vec<GridPoint> = points.iter().copied().filter(|q| q.x <= l && q.y >= r).collect();
        got.sort();
        want.sort();
        ensure!(got == want, "covering_sources({l},{r}) differs from the filter");
    }
    Ok(())
}

/// Every short kernel range against every short text range: primary kernel
/// ranges map to equal primary text ranges, and each primary text range of
/// length at most `M + K` is reached exactly once.
pub fn mapping_exhaustive(text: &[u8], params: FilterParams) -> Check {
    let p = parse(text).unwrap();
    let ft = FilteredText::build(text, &p, &params, 4, 16).map_err(|e| e.to_string())?;
    let truth = Truth::new(text);
    let kernel = ft.kernel();
    let sep = ft.separator();
    let span = params.max_pattern_len + params.max_edits;
    let n = text.len();

    let halo = params.halo();
    let per_phrase = if halo == 0 { 1 + params.sep_count() } else { 2 * halo + params.sep_count() };
    ensure!(kernel.len() <= p.len() * per_phrase, "kernel exceeds the per-phrase bound");

    let mut mapped: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for i in 1..=kernel.len() {
        for j in i..(i + span).min(kernel.len() + 1) {
            let piece = &kernel[i - 1..j];
            let class = ft.classify(i, j).map_err(|e| e.to_string())?;
            ensure!((class == MatchClass::ContainsSeparator) == piece.contains(&sep), "separator class of ({i},{j})");
            if class == MatchClass::Primary {
                let (a, b) = ft.map_to_original(i, j).map_err(|e| e.to_string())?;
                ensure!(b - a == j - i && b <= n, "({i},{j}) maps to ({a},{b})");
                ensure!(&text[a - 1..b] == piece, "({i},{j}) maps to unequal ({a},{b})");
                ensure!(truth.primary(a, b), "({i},{j}) maps to non-primary ({a},{b})");
                ensure!(mapped.insert((a, b), (i, j)).is_none(), "two kernel ranges map to ({a},{b})");
            } else {
                ensure!(ft.map_to_original(i, j).is_err(), "non-primary ({i},{j}) was mapped");
            }
        }
    }

    let mut expected = BTreeSet::new();
    for a in 1..=n {
        for b in a..(a + span).min(n + 1) {
            if truth.primary(a, b) {
                expected.insert((a, b));
            }
        }
    }
    let got: BTreeSet<(usize, usize)> = mapped.keys().copied().collect();
    if got != expected {
        let missing = expected.difference(&got).next();
        let extra = got.difference(&expected).next();
        return Err(format!("primary ranges differ: missing {missing:?}, extra {extra:?}"));
    }
    Ok(())
}
