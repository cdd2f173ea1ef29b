//! LZ77 factorization with leftmost sources.
//!
//! Every phrase is either the first occurrence of a byte, stored as itself,
//! or the longest prefix of the remaining text that also starts somewhere to
//! its left, stored as `(source, length)` where `source` is the leftmost
//! such start. Sources may overlap the phrase they encode.
//!
//! Positions are 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::suffix::{inverse, lcp_array, suffix_array, MinTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phrase {
    /// First occurrence of a distinct byte.
    Literal(u8),
    /// Copy of `len` bytes starting at `src`.
    Copy { src: usize, len: usize },
}

impl Phrase {
    #[inline]
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { len, .. } => len,
        }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parse {
    phrases: Vec<Phrase>,
    n: usize,
}

impl Parse {
    /// Wraps a phrase list without checking it; use [`decode`] to validate.
    pub fn from_phrases(phrases: Vec<Phrase>) -> Self {
        let n = phrases.iter().map(Phrase::len).sum();
        Self { phrases, n }
    }

    pub fn phrases(&self) -> &[Phrase] {
        &self.phrases
    }

    /// Length of the parsed text.
    pub fn text_len(&self) -> usize {
        self.n
    }

    /// Number of phrases.
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Starting position of every phrase: `[1, 1 + len_1, 1 + len_1 + len_2, ...]`.
    pub fn phrase_starts(&self) -> Vec<usize> {
        self.phrases
            .iter()
            .scan(1, |pos, p| {
                let start = *pos;
                *pos += p.len();
                Some(start)
            })
            .collect()
    }

    /// One phrase per line: `L <hex byte>` or `C <src> <len>`.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.phrases.len() * 8);
        for p in &self.phrases {
            match *p {
                Phrase::Literal(c) => writeln!(out, "L {c:02x}"),
                Phrase::Copy { src, len } => writeln!(out, "C {src} {len}"),
            }
            .unwrap();
        }
        out
    }

    /// Inverse of [`Parse::dump`].
    pub fn from_dump(s: &str) -> Result<Self> {
        let bad = |line: &str| Error::Malformed(format!("parse dump line {line:?}"));
        let mut phrases = Vec::new();
        for line in s.lines().filter(|l| !l.is_empty()) {
            let mut it = line.split(' ');
            let phrase = match (it.next(), it.next(), it.next(), it.next()) {
                (Some("L"), Some(hex), None, None) if hex.len() == 2 => {
                    Phrase::Literal(u8::from_str_radix(hex, 16).map_err(|_| bad(line))?)
                }
                (Some("C"), Some(src), Some(len), None) => Phrase::Copy {
                    src: src.parse().map_err(|_| bad(line))?,
                    len: len.parse().map_err(|_| bad(line))?,
                },
                _ => return Err(bad(line)),
            };
            phrases.push(phrase);
        }
        Ok(Self::from_phrases(phrases))
    }
}

/// Factorizes `text`.
///
/// The longest previous factor at each phrase start comes from its nearest
/// lexicographic neighbours among earlier suffixes; the leftmost source is
/// the smallest suffix-array entry in the LCP interval of that length.
pub fn parse(text: &[u8]) -> Result<Parse> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    let n = text.len();
    let sa = suffix_array(text)?;
    let isa = inverse(&sa);
    let lcp = lcp_array(text, &sa, &isa);
    let sa_tree = MinTree::new(&sa);
    drop(sa);
    let lcp_tree = MinTree::new(&lcp);
    drop(lcp);

    let common = |a: usize, b: usize| {
        text[a..]
            .iter()
            .zip(&text[b..])
            .take_while(|(x, y)| x == y)
            .count()
    };

    let mut phrases = Vec::new();
    let mut i = 0usize;
    while i < n {
        let r = isa[i] as usize;
        let bound = i as u32;
        let left = r
            .checked_sub(1)
            .and_then(|q| sa_tree.prev_less(q, bound))
            .map_or(0, |q| common(i, sa_tree.value(q) as usize));
        let right = sa_tree
            .next_less(r + 1, bound)
            .map_or(0, |q| common(i, sa_tree.value(q) as usize));
        let len = left.max(right);
        if len == 0 {
            phrases.push(Phrase::Literal(text[i]));
            i += 1;
            continue;
        }
        let len32 = len as u32;
        // lcp[q] < len marks the first rank of the interval sharing `len` bytes
        let lo = lcp_tree.prev_less(r, len32).unwrap_or(0);
        let hi = lcp_tree.next_less(r + 1, len32).map_or(n - 1, |q| q - 1);
        let src = sa_tree.min(lo, hi) as usize;
        debug_assert!(src < i);
        phrases.push(Phrase::Copy { src: src + 1, len });
        i += len;
    }
    Ok(Parse { phrases, n })
}

/// Expands a parse back into its text, copying one byte at a time so that
/// self-overlapping sources work.
pub fn decode(parse: &Parse) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(parse.n);
    for p in &parse.phrases {
        match *p {
            Phrase::Literal(c) => out.push(c),
            Phrase::Copy { src, len } => {
                let start = out.len() + 1;
                if len == 0 || src == 0 || src >= start || src + len - 1 >= parse.n {
                    return Err(Error::InvalidSource {
                        phrase_start: start,
                        src,
                        len,
                    });
                }
                for k in 0..len {
                    out.push(out[src - 1 + k]);
                }
            }
        }
    }
    Ok(out)
}
