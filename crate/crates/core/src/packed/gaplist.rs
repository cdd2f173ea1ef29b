//! Gap-coded monotone integer lists.
//!
//! Consecutive differences are written at a fixed width of
//! `floor(log2 d) + 1` bits, `d` being the largest difference. Every `g`-th
//! value is also kept verbatim so that any rank decodes fewer than `g`
//! differences, and every `b`-th value is copied into a small sample array
//! that narrows binary searches before touching the raw values.

use crate::error::{Error, Result};
use crate::format::{read_u32, read_u64, read_u8};
use crate::packed::bits::{bit_width, PackedInts};

/// Default raw-value period.
pub const DEFAULT_G: usize = 32;
/// Default search-sample period.
pub const DEFAULT_B: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapList {
    count: usize,
    universe: u64,
    g: usize,
    b: usize,
    strict: bool,
    diffs: PackedInts,
    raw: PackedInts,
    samples: PackedInts,
}

impl GapList {
    /// Builds a list over strictly increasing `values`, each at most `universe`.
    pub fn build(values: &[u64], g: usize, b: usize, universe: u64) -> Result<Self> {
        Self::build_inner(values, g, b, universe, true)
    }

    /// Like [`GapList::build`] but accepts repeated values (zero gaps).
    pub fn build_nondecreasing(values: &[u64], g: usize, b: usize, universe: u64) -> Result<Self> {
        Self::build_inner(values, g, b, universe, false)
    }

    fn build_inner(values: &[u64], g: usize, b: usize, universe: u64, strict: bool) -> Result<Self> {
        if g == 0 || b == 0 || b % g != 0 || g > u32::MAX as usize || b > u32::MAX as usize {
            return Err(Error::BadSampling { g, b });
        }
        let mut max_diff = 1u64;
        for (i, w) in values.windows(2).enumerate() {
            if w[1] < w[0] || (strict && w[1] == w[0]) {
                return Err(Error::NotStrictlyIncreasing(i + 2));
            }
            max_diff = max_diff.max(w[1] - w[0]);
        }
        if let Some(&last) = values.last() {
            if last > universe {
                return Err(Error::OutsideUniverse {
                    value: last,
                    universe,
                });
            }
        }
        let raw_width = bit_width(universe);
        let diffs: Vec<u64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let raw: Vec<u64> = values.iter().copied().step_by(g).collect();
        let samples: Vec<u64> = values.iter().copied().step_by(b).collect();
        Ok(Self {
            count: values.len(),
            universe,
            g,
            b,
            strict,
            diffs: PackedInts::from_values(bit_width(max_diff), &diffs),
            raw: PackedInts::from_values(raw_width, &raw),
            samples: PackedInts::from_values(raw_width, &samples),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Bits per stored difference.
    pub fn diff_width(&self) -> u32 {
        self.diffs.width()
    }

    /// Bits per raw value and per sample.
    pub fn raw_width(&self) -> u32 {
        self.raw.width()
    }

    /// The `rank`-th value (1-based).
    pub fn access(&self, rank: usize) -> Result<u64> {
        if rank == 0 || rank > self.count {
            return Err(Error::RankOutOfRange {
                rank,
                count: self.count,
            });
        }
        Ok(self.get(rank - 1))
    }

    /// 0-based access without bounds reporting.
    #[inline]
    pub(crate) fn get(&self, i: usize) -> u64 {
        let block = i / self.g;
        let off = i % self.g;
        let next = (block + 1) * self.g;
        // decode from whichever raw value is closer
        if off > self.g / 2 && next < self.count {
            return self.raw.get(block + 1) - self.diffs.sum_range(i, next);
        }
        self.raw.get(block) + self.diffs.sum_range(block * self.g, i)
    }

    /// Values at 0-based `i` and `i + 1`, sharing one decode.
    #[inline]
    pub(crate) fn get_pair(&self, i: usize) -> (u64, u64) {
        let v = self.get(i);
        (v, v + self.diffs.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let mut cur = 0u64;
        (0..self.count).map(move |i| {
            cur = if i % self.g == 0 {
                self.raw.get(i / self.g)
            } else {
                cur + self.diffs.get(i - 1)
            };
            cur
        })
    }

    /// Smallest stored value `>= x`, with its 1-based rank.
    pub fn successor(&self, x: u64) -> Option<(usize, u64)> {
        if self.count == 0 {
            return None;
        }
        // last raw block whose head is < x; the answer lies at or after it
        let Some(block) = self.last_raw_below(x) else {
            return Some((1, self.raw.get(0)));
        };
        let mut i = block * self.g;
        let mut v = self.raw.get(block);
        while v < x {
            i += 1;
            if i == self.count {
                return None;
            }
            v += self.diffs.get(i - 1);
        }
        Some((i + 1, v))
    }

    /// Largest stored value `<= x`, with its 1-based rank.
    pub fn predecessor(&self, x: u64) -> Option<(usize, u64)> {
        if self.count == 0 {
            return None;
        }
        let block = self.last_raw_at_most(x)?;
        let mut i = block * self.g;
        let mut v = self.raw.get(block);
        let end = ((block + 1) * self.g).min(self.count);
        while i + 1 < end {
            let next = v + self.diffs.get(i);
            if next > x {
                break;
            }
            v = next;
            i += 1;
        }
        Some((i + 1, v))
    }

    /// Range of raw-block indices covered by the samples bracketing `pred`.
    fn raw_window(&self, pred: impl Fn(u64) -> bool) -> (usize, usize) {
        let per = self.b / self.g;
        // number of samples satisfying pred (pred is monotone: true then false)
        let s = partition_point(self.samples.len(), |i| pred(self.samples.get(i)));
        let lo = s.saturating_sub(1) * per;
        let hi = (s * per + 1).min(self.raw.len());
        (lo, hi.max(lo))
    }

    fn last_raw_below(&self, x: u64) -> Option<usize> {
        let (lo, hi) = self.raw_window(|v| v < x);
        let k = lo + partition_point(hi - lo, |j| self.raw.get(lo + j) < x);
        k.checked_sub(1)
    }

    fn last_raw_at_most(&self, x: u64) -> Option<usize> {
        let (lo, hi) = self.raw_window(|v| v <= x);
        let k = lo + partition_point(hi - lo, |j| self.raw.get(lo + j) <= x);
        k.checked_sub(1)
    }

    /// Serialized size in bytes.
    pub fn byte_len(&self) -> usize {
        Self::HEADER_BYTES + self.diffs.byte_len() + self.raw.byte_len() + self.samples.byte_len()
    }

    const HEADER_BYTES: usize = 8 + 8 + 4 + 4 + 1 + 1 + 1;

    pub fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.count as u64).to_le_bytes());
        out.extend_from_slice(&self.universe.to_le_bytes());
        out.extend_from_slice(&(self.g as u32).to_le_bytes());
        out.extend_from_slice(&(self.b as u32).to_le_bytes());
        out.push(self.diffs.width() as u8);
        out.push(self.raw.width() as u8);
        out.push(self.strict as u8);
        self.diffs.write_bytes(out);
        self.raw.write_bytes(out);
        self.samples.write_bytes(out);
    }

    pub fn read_from(bytes: &mut &[u8], section: &'static str) -> Result<Self> {
        let count = read_u64(bytes, section)? as usize;
        let universe = read_u64(bytes, section)?;
        let g = read_u32(bytes, section)? as usize;
        let b = read_u32(bytes, section)? as usize;
        let diff_width = read_u8(bytes, section)? as u32;
        let raw_width = read_u8(bytes, section)? as u32;
        let strict = read_u8(bytes, section)? != 0;
        if g == 0 || b == 0 || b % g != 0 || raw_width != bit_width(universe) {
            return Err(Error::Malformed(format!("gap list header in {section}")));
        }
        if count > bytes.len().saturating_mul(8) + 1 {
            return Err(Error::Truncated(section));
        }
        let diffs = PackedInts::read_bytes(diff_width, count.saturating_sub(1), bytes, section)?;
        let raw = PackedInts::read_bytes(raw_width, count.div_ceil(g), bytes, section)?;
        let samples = PackedInts::read_bytes(raw_width, count.div_ceil(b), bytes, section)?;
        Ok(Self {
            count,
            universe,
            g,
            b,
            strict,
            diffs,
            raw,
            samples,
        })
    }
}

/// First index in `0..len` where `pred` turns false.
#[inline]
pub(crate) fn partition_point(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}
