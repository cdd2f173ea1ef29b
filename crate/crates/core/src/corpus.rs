//! Synthetic repetitive corpora and pattern sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// `ACGT`.
    Dna,
    /// Lowercase letters and a few punctuation bytes.
    Text,
    /// Every byte except `#`.
    Bytes,
}

impl Alphabet {
    pub fn symbols(self) -> Vec<u8> {
        match self {
            Alphabet::Dna => b"ACGT".to_vec(),
            Alphabet::Text => b"abcdefghijklmnopqrstuvwxyz -.,\n".to_vec(),
            Alphabet::Bytes => (0..=255u8).filter(|&c| c != b'#').collect(),
        }
    }
}

impl std::str::FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dna" => Ok(Alphabet::Dna),
            "text" => Ok(Alphabet::Text),
            "bytes" => Ok(Alphabet::Bytes),
            other => Err(format!("unknown alphabet {other:?} (dna, text, bytes)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    pub base_len: usize,
    /// Total number of copies, the unmutated base included.
    pub copies: usize,
    /// Per-byte probability of a point mutation in each later copy.
    pub rate: f64,
    pub seed: u64,
    pub alphabet: Alphabet,
}

/// Writes a random base followed by `copies - 1` independently mutated copies of it.
pub fn generate(spec: &CorpusSpec) -> Vec<u8> {
    assert!((0.0..=1.0).contains(&spec.rate), "mutation rate outside [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let symbols = spec.alphabet.symbols();
    let base = random_text(&mut rng, &symbols, spec.base_len);
    let mut out = Vec::with_capacity(spec.base_len * spec.copies.max(1));
    out.extend_from_slice(&base);
    for _ in 1..spec.copies {
        out.extend(mutate(&mut rng, &symbols, &base, spec.rate));
    }
    out
}

pub fn random_text(rng: &mut impl Rng, symbols: &[u8], len: usize) -> Vec<u8> {
    (0..len).map(|_| *symbols.choose(rng).unwrap()).collect()
}

/// Copies `base`, applying a substitution, insertion or deletion at each
/// byte with probability `rate`.
pub fn mutate(rng: &mut impl Rng, symbols: &[u8], base: &[u8], rate: f64) -> Vec<u8> {
    let mut out = Vec::with_capacity(base.len() + base.len() / 64);
    for &c in base {
        if rate == 0.0 || !rng.gen_bool(rate) {
            out.push(c);
            continue;
        }
        match rng.gen_range(0..3) {
            0 => out.push(other_symbol(rng, symbols, c)),
            1 => {
                out.push(*symbols.choose(rng).unwrap());
                out.push(c);
            }
            _ => {}
        }
    }
    out
}

fn other_symbol(rng: &mut impl Rng, symbols: &[u8], c: u8) -> u8 {
    if symbols.len() < 2 {
        return c;
    }
    loop {
        let s = *symbols.choose(rng).unwrap();
        if s != c {
            return s;
        }
    }
}

/// A uniformly chosen substring of length `len` containing at least two
/// distinct bytes (any substring when `len == 1`); `None` if a few hundred
/// draws find none.
pub fn sample_substring(rng: &mut impl Rng, text: &[u8], len: usize) -> Option<Vec<u8>> {
    if len == 0 || len > text.len() {
        return None;
    }
    for _ in 0..512 {
        let start = rng.gen_range(0..=text.len() - len);
        let s = &text[start..start + len];
        if len == 1 || s.iter().any(|&c| c != s[0]) {
            return Some(s.to_vec());
        }
    }
    None
}

/// Applies `edits` random edits drawn from `symbols`, keeping the pattern
/// non-empty and at most `max_len` bytes long.
pub fn perturb(rng: &mut impl Rng, pattern: &[u8], edits: usize, symbols: &[u8], max_len: usize) -> Vec<u8> {
    let mut p = pattern.to_vec();
    for _ in 0..edits {
        let op = rng.gen_range(0..3);
        if op == 1 && p.len() < max_len {
            let at = rng.gen_range(0..=p.len());
            p.insert(at, *symbols.choose(rng).unwrap());
        } else if op == 2 && p.len() > 1 {
            let at = rng.gen_range(0..p.len());
            p.remove(at);
        } else {
            let at = rng.gen_range(0..p.len());
            p[at] = *symbols.choose(rng).unwrap();
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(copies: usize, rate: f64) -> CorpusSpec {
        CorpusSpec {
            base_len: 1000,
            copies,
            rate,
            seed: 7,
            alphabet: Alphabet::Dna,
        }
    }

    #[test]
    fn zero_rate_repeats_base() {
        let t = generate(&spec(4, 0.0));
        assert_eq!(t.len(), 4000);
        assert!(t.chunks(1000).all(|c| c == &t[..1000]));
    }

    #[test]
    fn single_copy_is_base() {
        assert_eq!(generate(&spec(1, 0.5)).len(), 1000);
    }

    #[test]
    fn deterministic() {
        assert_eq!(generate(&spec(3, 0.01)), generate(&spec(3, 0.01)));
        assert_ne!(
            generate(&spec(3, 0.01)),
            generate(&CorpusSpec { seed: 8, ..spec(3, 0.01) })
        );
    }

    #[test]
    fn sampled_substrings_are_not_unary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = generate(&spec(2, 0.01));
        for _ in 0..100 {
            let s = sample_substring(&mut rng, &t, 10).unwrap();
            assert!(s.iter().any(|&c| c != s[0]));
        }
        assert_eq!(sample_substring(&mut rng, b"aaaa", 2), None);
    }
}
