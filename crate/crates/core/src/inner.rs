//! Default conventional index over the kernel: a plain suffix array,
//! searched by binary search for exact patterns and used as a piece filter
//! for approximate ones.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::format::{read_u64, read_u8};
use crate::packed::bits::{bit_width, ByteAlignedInts};

/// A kernel interval `i..=j` (1-based) at edit distance `dist` from the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelMatch {
    pub i: usize,
    pub j: usize,
    pub dist: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerIndex {
    // 1-based suffix starts, byte-aligned entries
    sa: ByteAlignedInts,
}

/// Pieces shorter than this make the exact-piece filter useless.
const MIN_PIECE: usize = 3;

impl InnerIndex {
    pub fn build(kernel: &[u8]) -> Result<Self> {
        if kernel.is_empty() {
            return Err(Error::EmptyKernel);
        }
        let sa = crate::suffix::suffix_array(kernel)?;
        let bits = bit_width(kernel.len() as u64);
        Ok(Self {
            sa: ByteAlignedInts::from_values(bits, sa.iter().map(|&p| p as u64 + 1)),
        })
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// The `r`-th smallest suffix (both 1-based).
    pub fn suffix_at(&self, r: usize) -> usize {
        self.sa.get(r - 1) as usize
    }

    /// Suffix-array rank range of suffixes starting with `pattern`.
    fn rank_range(&self, kernel: &[u8], pattern: &[u8]) -> (usize, usize) {
        let cmp = |r: usize| {
            let p = self.sa.get(r) as usize - 1;
            let suffix = &kernel[p..];
            let k = suffix.len().min(pattern.len());
            match suffix[..k].cmp(&pattern[..k]) {
                Ordering::Equal if k < pattern.len() => Ordering::Less,
                o => o,
            }
        };
        let n = self.sa.len();
        let lo = crate::packed::gaplist::partition_point(n, |r| cmp(r) == Ordering::Less);
        let hi = lo + crate::packed::gaplist::partition_point(n - lo, |r| cmp(lo + r) == Ordering::Equal);
        (lo, hi)
    }

    /// Sorted start positions of exact occurrences of `pattern`.
    pub fn occurrences(&self, kernel: &[u8], pattern: &[u8]) -> Vec<usize> {
        if pattern.is_empty() {
            return Vec::new();
        }
        let (lo, hi) = self.rank_range(kernel, pattern);
        let mut starts: Vec<usize> = (lo..hi).map(|r| self.sa.get(r) as usize).collect();
        starts.sort_unstable();
        starts
    }

    pub fn locate_exact(&self, kernel: &[u8], pattern: &[u8]) -> Vec<KernelMatch> {
        let m = pattern.len();
        self.occurrences(kernel, pattern)
            .into_iter()
            .map(|i| KernelMatch {
                i,
                j: i + m - 1,
                dist: 0,
            })
            .collect()
    }

    /// Every kernel interval within edit distance `k` of `pattern`, sorted
    /// by `(i, j)`.
    ///
    /// Candidate regions come from exact hits of `k + 1` pattern pieces (one
    /// of them survives any `k` edits); the DP scan runs over those windows
    /// only, or over the whole kernel when pieces get too short.
    pub fn locate_approx(&self, kernel: &[u8], pattern: &[u8], k: usize) -> Vec<KernelMatch> {
        if pattern.is_empty() {
            return Vec::new();
        }
        if k == 0 {
            return self.locate_exact(kernel, pattern);
        }
        let m = pattern.len();
        let n = kernel.len();
        let piece = m / (k + 1);
        let mut windows = Vec::new();
        if piece >= MIN_PIECE {
            let mut covered = 0usize;
            for p in 0..=k {
                let off = p * piece;
                let end = if p == k { m } else { off + piece };
                for q in self.occurrences(kernel, &pattern[off..end]) {
                    let q = q - 1;
                    let lo = q.saturating_sub(off + k);
                    let hi = (q + m + k).saturating_sub(off).min(n);
                    covered += hi - lo;
                    windows.push((lo, hi));
                }
                if covered > n {
                    break;
                }
            }
            if covered > n {
                windows = vec![(0, n)];
            }
        } else {
            windows.push((0, n));
        }
        windows.sort_unstable();

        let mut out = Vec::new();
        let mut merged: Option<(usize, usize)> = None;
        for (lo, hi) in windows {
            match merged {
                Some((a, b)) if lo <= b => merged = Some((a, b.max(hi))),
                Some(w) => {
                    scan_window(kernel, w, pattern, k, &mut out);
                    merged = Some((lo, hi));
                }
                None => merged = Some((lo, hi)),
            }
        }
        if let Some(w) = merged {
            scan_window(kernel, w, pattern, k, &mut out);
        }
        out.sort_unstable();
        out.dedup_by_key(|mt| (mt.i, mt.j));
        out
    }

    pub fn byte_len(&self) -> usize {
        8 + 1 + self.sa.as_bytes().len()
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.sa.len() as u64).to_le_bytes());
        out.push(self.sa.bytes_per_entry() as u8);
        out.extend_from_slice(self.sa.as_bytes());
    }

    pub fn read_from(bytes: &mut &[u8], kernel_len: usize) -> Result<Self> {
        const SECTION: &str = "suffix array";
        let len = read_u64(bytes, SECTION)? as usize;
        let width = read_u8(bytes, SECTION)? as usize;
        if len != kernel_len || width != (bit_width(kernel_len as u64) as usize).div_ceil(8) {
            return Err(Error::Malformed("suffix array shape".into()));
        }
        let total = len.checked_mul(width).ok_or(Error::Truncated(SECTION))?;
        if bytes.len() < total {
            return Err(Error::Truncated(SECTION));
        }
        let (head, rest) = bytes.split_at(total);
        *bytes = rest;
        Ok(Self {
            sa: ByteAlignedInts::from_bytes(width, head.to_vec())?,
        })
    }
}

/// Runs the approximate scan on `kernel[lo..hi]` (0-based, half-open).
fn scan_window(kernel: &[u8], (lo, hi): (usize, usize), pattern: &[u8], k: usize, out: &mut Vec<KernelMatch>) {
    for end in match_ends(&kernel[lo..hi], pattern, k) {
        let end = lo + end;
        for (start, dist) in match_starts(kernel, end, pattern, k) {
            out.push(KernelMatch {
                i: start + 1,
                j: end + 1,
                dist,
            });
        }
    }
}

/// 0-based end positions where some substring ending there is within `k`
/// edits of `pattern` (column-wise DP with Ukkonen's cut-off).
pub fn match_ends(text: &[u8], pattern: &[u8], k: usize) -> Vec<usize> {
    let m = pattern.len();
    let cap = k + 1;
    // col[r] = min distance between pattern[..r] and a suffix of the text read so far, capped
    let mut col: Vec<usize> = (0..=m).map(|r| r.min(cap)).collect();
    let mut last = k.min(m);
    let mut ends = Vec::new();
    for (pos, &c) in text.iter().enumerate() {
        let mut diag = 0; // col[0] of the previous column
        let limit = (last + 1).min(m);
        for r in 1..=limit {
            let up = col[r - 1];
            let prev = col[r];
            let sub = diag + usize::from(pattern[r - 1] != c);
            col[r] = sub.min(prev + 1).min(up + 1).min(cap);
            diag = prev;
        }
        if limit < m {
            col[limit + 1] = cap;
        }
        last = limit;
        while last > 0 && col[last] > k {
            last -= 1;
        }
        if last == m && col[m] <= k {
            ends.push(pos);
        }
    }
    ends
}

/// For a fixed 0-based `end`, every start with `dist(text[start..=end], pattern) <= k`.
pub fn match_starts(text: &[u8], end: usize, pattern: &[u8], k: usize) -> Vec<(usize, usize)> {
    let m = pattern.len();
    let max_len = (m + k).min(end + 1);
    // col[r] = distance between the last r pattern bytes and the last l text bytes
    let mut col: Vec<usize> = (0..=m).collect();
    let mut starts = Vec::new();
    for l in 1..=max_len {
        let c = text[end + 1 - l];
        let mut diag = col[0];
        col[0] = l;
        for r in 1..=m {
            let prev = col[r];
            let sub = diag + usize::from(pattern[m - r] != c);
            col[r] = sub.min(prev + 1).min(col[r - 1] + 1);
            diag = prev;
        }
        if col[m] <= k {
            starts.push((end + 1 - l, col[m]));
        }
        if col.iter().all(|&d| d > k) {
            break;
        }
    }
    starts.reverse();
    starts
}
