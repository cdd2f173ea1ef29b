//! The filtered text: the bytes of the original text near phrase
//! boundaries, with separator runs wherever bytes were dropped.
//!
//! Two aligned lists map between the two coordinate systems: `starts`
//! holds the original position of every phrase start (plus the sentinel
//! `n + 1`), `kernel_starts` the position of the same byte in the kernel.

use crate::error::{Error, Result};
use crate::format::{read_u64, read_u8};
use crate::lz77::{Parse, Phrase};
use crate::packed::bits::{bit_width, PackedInts};
use crate::packed::gaplist::GapList;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterParams {
    /// Longest pattern the index must answer (M).
    pub max_pattern_len: usize,
    /// Largest edit distance the index must answer (K).
    pub max_edits: usize,
    /// Separator byte; chosen from the text when `None`.
    pub separator: Option<u8>,
    /// Separator run length; `max_edits + 1` when `None`.
    pub separator_count: Option<usize>,
}

impl FilterParams {
    pub fn new(max_pattern_len: usize, max_edits: usize) -> Self {
        Self {
            max_pattern_len,
            max_edits,
            separator: None,
            separator_count: None,
        }
    }

    /// Bytes kept on each side of a phrase boundary: `M + K - 1`.
    pub fn halo(&self) -> usize {
        (self.max_pattern_len + self.max_edits).saturating_sub(1)
    }

    pub fn sep_count(&self) -> usize {
        self.separator_count.unwrap_or(self.max_edits + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_pattern_len == 0 {
            return Err(Error::BadParams("max pattern length must be at least 1".into()));
        }
        if self.sep_count() == 0 {
            return Err(Error::BadParams("separator count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Picks a byte absent from `text`: `#` if free, else the smallest free byte.
pub fn choose_separator(text: &[u8]) -> Result<u8> {
    let mut seen = [false; 256];
    for &c in text {
        seen[c as usize] = true;
    }
    if !seen[b'#' as usize] {
        return Ok(b'#');
    }
    (0..=255u8)
        .find(|&c| !seen[c as usize])
        .ok_or(Error::NoFreeSeparator)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchClass {
    /// Maps to an occurrence that crosses a phrase boundary or contains a
    /// first occurrence.
    Primary,
    /// Lies strictly inside one copy phrase.
    NonPrimary,
    ContainsSeparator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredText {
    kernel: Vec<u8>,
    separator: u8,
    starts: GapList,
    kernel_starts: GapList,
    first_occ: PackedInts,
    n: usize,
}

impl FilteredText {
    /// Builds the kernel for `text` given its parse.
    ///
    /// Each phrase contributes its first `max(halo, 1)` and last `halo`
    /// bytes; whenever the two do not meet, a run of separators replaces the
    /// dropped middle.
    pub fn build(text: &[u8], parse: &Parse, params: &FilterParams, g: usize, b: usize) -> Result<Self> {
        params.validate()?;
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        if parse.text_len() != text.len() {
            return Err(Error::Malformed("parse does not cover the text".into()));
        }
        let separator = match params.separator {
            Some(sep) if text.contains(&sep) => return Err(Error::SeparatorCollision(sep)),
            Some(sep) => sep,
            None => choose_separator(text)?,
        };
        let halo = params.halo();
        let head_keep = halo.max(1);
        let sep_count = params.sep_count();
        let n = text.len();
        let z = parse.len();

        let mut kernel = Vec::new();
        let mut starts = Vec::with_capacity(z + 1);
        let mut kernel_starts = Vec::with_capacity(z);
        let mut first_occ = Vec::new();
        let mut pos = 0usize;
        for (rank, phrase) in parse.phrases().iter().enumerate() {
            let len = phrase.len();
            starts.push(pos as u64 + 1);
            kernel_starts.push(kernel.len() as u64 + 1);
            if matches!(phrase, Phrase::Literal(_)) {
                first_occ.push(rank as u64 + 1);
            }
            let bytes = &text[pos..pos + len];
            let head = head_keep.min(len);
            let tail = halo.min(len - head);
            if head + tail == len {
                kernel.extend_from_slice(bytes);
            } else {
                kernel.extend_from_slice(&bytes[..head]);
                kernel.extend(std::iter::repeat_n(separator, sep_count));
                kernel.extend_from_slice(&bytes[len - tail..]);
            }
            pos += len;
        }
        starts.push(n as u64 + 1);

        Ok(Self {
            starts: GapList::build(&starts, g, b, n as u64 + 1)?,
            kernel_starts: GapList::build(&kernel_starts, g, b, kernel.len() as u64)?,
            first_occ: PackedInts::from_values(bit_width(z as u64), &first_occ),
            kernel,
            separator,
            n,
        })
    }

    pub fn kernel(&self) -> &[u8] {
        &self.kernel
    }

    pub fn separator(&self) -> u8 {
        self.separator
    }

    /// Original phrase starts with the sentinel `n + 1` appended.
    pub fn starts(&self) -> &GapList {
        &self.starts
    }

    /// Kernel positions of the phrase starts.
    pub fn kernel_starts(&self) -> &GapList {
        &self.kernel_starts
    }

    /// Ranks (into the start lists) of the literal phrases, in text order.
    pub fn first_occurrences(&self) -> Vec<usize> {
        self.first_occ.iter().map(|r| r as usize).collect()
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn phrase_count(&self) -> usize {
        self.kernel_starts.len()
    }

    fn is_first_occurrence(&self, rank: usize) -> bool {
        let r = rank as u64;
        let k = crate::packed::gaplist::partition_point(self.first_occ.len(), |i| {
            self.first_occ.get(i) < r
        });
        k < self.first_occ.len() && self.first_occ.get(k) == r
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > j || j > self.kernel.len() {
            return Err(Error::BadRange {
                lo: i,
                hi: j,
                len: self.kernel.len(),
            });
        }
        Ok(())
    }

    /// Classifies the kernel range `i..=j`, returning the successor rank of
    /// `i` among the kernel phrase starts when primary.
    fn classify_rank(&self, i: usize, j: usize) -> Result<(MatchClass, usize)> {
        self.check_range(i, j)?;
        if self.kernel[i - 1..j].contains(&self.separator) {
            return Ok((MatchClass::ContainsSeparator, 0));
        }
        let Some((s, v)) = self.kernel_starts.successor(i as u64) else {
            return Ok((MatchClass::NonPrimary, 0));
        };
        let v = v as usize;
        let class = if v > j {
            MatchClass::NonPrimary
        } else if v > i {
            MatchClass::Primary
        } else {
            let next_within = s < self.kernel_starts.len() && self.kernel_starts.get(s) as usize <= j;
            if next_within || self.is_first_occurrence(s) {
                MatchClass::Primary
            } else {
                MatchClass::NonPrimary
            }
        };
        Ok((class, s))
    }

    pub fn classify(&self, i: usize, j: usize) -> Result<MatchClass> {
        self.classify_rank(i, j).map(|(c, _)| c)
    }

    /// Maps a primary kernel range to its original interval.
    pub fn map_to_original(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        match self.classify_rank(i, j)? {
            (MatchClass::Primary, s) => Ok(self.map_with_rank(i, j, s)),
            _ => Err(Error::NotPrimary(i, j)),
        }
    }

    /// Classifies and, when primary, maps in one successor search.
    pub fn primary_interval(&self, i: usize, j: usize) -> Result<Option<(usize, usize)>> {
        Ok(match self.classify_rank(i, j)? {
            (MatchClass::Primary, s) => Some(self.map_with_rank(i, j, s)),
            _ => None,
        })
    }

    fn map_with_rank(&self, i: usize, j: usize, s: usize) -> (usize, usize) {
        let orig = self.starts.get(s - 1) as usize;
        let kern = self.kernel_starts.get(s - 1) as usize;
        let start = orig + i - kern;
        (start, start + (j - i))
    }

    pub(crate) fn write_kernel(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.kernel.len() as u64).to_le_bytes());
        out.push(self.separator);
        out.extend_from_slice(&self.kernel);
    }

    pub(crate) fn write_first_occ(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.first_occ.len() as u64).to_le_bytes());
        out.push(self.first_occ.width() as u8);
        self.first_occ.write_bytes(out);
    }

    pub(crate) fn from_sections(
        n: usize,
        mut kernel: &[u8],
        mut starts: &[u8],
        mut kernel_starts: &[u8],
        mut first_occ: &[u8],
    ) -> Result<Self> {
        let klen = read_u64(&mut kernel, "kernel")? as usize;
        let separator = read_u8(&mut kernel, "kernel")?;
        if kernel.len() < klen {
            return Err(Error::Truncated("kernel"));
        }
        let kernel_bytes = kernel[..klen].to_vec();
        let starts = GapList::read_from(&mut starts, "starts")?;
        let kernel_starts = GapList::read_from(&mut kernel_starts, "kernel starts")?;
        let count = read_u64(&mut first_occ, "first occurrences")? as usize;
        let width = read_u8(&mut first_occ, "first occurrences")? as u32;
        if count > 256 {
            return Err(Error::Malformed(format!("{count} first occurrences")));
        }
        let first_occ = PackedInts::read_bytes(width, count, &mut first_occ, "first occurrences")?;
        if starts.len() != kernel_starts.len() + 1 || starts.universe() != n as u64 + 1 {
            return Err(Error::Malformed("phrase start lists disagree".into()));
        }
        Ok(Self {
            kernel: kernel_bytes,
            separator,
            starts,
            kernel_starts,
            first_occ,
            n,
        })
    }
}
