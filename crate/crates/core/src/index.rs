//! The assembled hybrid index: parse, filtered text, inner index over the
//! kernel, and the source grid.

use crate::error::{Error, Result};
use crate::filtered::{FilterParams, FilteredText};
use crate::format::{self, read_u32, read_u64, read_u8, SectionId};
use crate::grid::{Occurrence, SourceGrid};
use crate::inner::{InnerIndex, KernelMatch};
use crate::lz77::{self, Parse};
use crate::packed::gaplist::{DEFAULT_B, DEFAULT_G};

/// Build-time parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexParams {
    /// Longest supported pattern (M).
    pub max_pattern_len: usize,
    /// Largest supported edit distance (K).
    pub max_edits: usize,
    /// Raw-value period of the gap-coded lists.
    pub g: usize,
    /// Search-sample period of the gap-coded lists.
    pub b: usize,
    pub separator: Option<u8>,
    pub separator_count: Option<usize>,
}

impl Default for IndexParams {
    fn default() -> Self {
        Self {
            max_pattern_len: 100,
            max_edits: 0,
            g: DEFAULT_G,
            b: DEFAULT_B,
            separator: None,
            separator_count: None,
        }
    }
}

impl IndexParams {
    pub fn new(max_pattern_len: usize, max_edits: usize) -> Self {
        Self {
            max_pattern_len,
            max_edits,
            ..Self::default()
        }
    }

    pub fn filter(&self) -> FilterParams {
        FilterParams {
            max_pattern_len: self.max_pattern_len,
            max_edits: self.max_edits,
            separator: self.separator,
            separator_count: self.separator_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryResult {
    pub pattern: Vec<u8>,
    pub k: usize,
    /// Sorted by `(start, end)`.
    pub occurrences: Vec<Occurrence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub n: usize,
    pub phrases: usize,
    pub kernel_len: usize,
    pub grid_points: usize,
    /// Serialized size of every section, in file order.
    pub sections: Vec<(&'static str, usize)>,
    pub file_bytes: usize,
}

impl IndexStats {
    pub fn kernel_ratio(&self) -> f64 {
        self.kernel_len as f64 / self.n as f64
    }

    pub fn section_bytes(&self) -> usize {
        self.sections.iter().map(|&(_, b)| b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridIndex {
    params: IndexParams,
    n: usize,
    filtered: FilteredText,
    inner: InnerIndex,
    grid: SourceGrid,
}

impl HybridIndex {
    pub fn build(text: &[u8], params: &IndexParams) -> Result<Self> {
        let parse = lz77::parse(text)?;
        Self::from_parse(text, &parse, params)
    }

    /// Builds from a precomputed parse of `text`.
    pub fn from_parse(text: &[u8], parse: &Parse, params: &IndexParams) -> Result<Self> {
        let filtered = FilteredText::build(text, parse, &params.filter(), params.g, params.b)?;
        let inner = InnerIndex::build(filtered.kernel())?;
        let grid = SourceGrid::build(parse, filtered.starts(), params.g, params.b)?;
        let params = IndexParams {
            separator: Some(filtered.separator()),
            separator_count: Some(params.filter().sep_count()),
            ..*params
        };
        Ok(Self {
            params,
            n: text.len(),
            filtered,
            inner,
            grid,
        })
    }

    /// Parameters with the separator and its run length resolved.
    pub fn params(&self) -> &IndexParams {
        &self.params
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn filtered(&self) -> &FilteredText {
        &self.filtered
    }

    pub fn inner(&self) -> &InnerIndex {
        &self.inner
    }

    pub fn grid(&self) -> &SourceGrid {
        &self.grid
    }

    fn check_query(&self, pattern: &[u8], k: usize) -> Result<()> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if pattern.len() > self.params.max_pattern_len || k > self.params.max_edits {
            return Err(Error::QueryExceedsBounds {
                len: pattern.len(),
                max_len: self.params.max_pattern_len,
                k,
                max_k: self.params.max_edits,
            });
        }
        Ok(())
    }

    /// Kernel matches from the inner index.
    pub fn kernel_matches(&self, pattern: &[u8], k: usize) -> Result<Vec<KernelMatch>> {
        self.check_query(pattern, k)?;
        let kernel = self.filtered.kernel();
        Ok(if k == 0 {
            self.inner.locate_exact(kernel, pattern)
        } else {
            self.inner.locate_approx(kernel, pattern, k)
        })
    }

    /// Distinct primary occurrences in original coordinates, sorted.
    pub fn primaries(&self, pattern: &[u8], k: usize) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for m in self.kernel_matches(pattern, k)? {
            if let Some(span) = self.filtered.primary_interval(m.i, m.j)? {
                out.push(span);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// All occurrences of `pattern` within `k` edits, sorted by position.
    pub fn query(&self, pattern: &[u8], k: usize) -> Result<QueryResult> {
        let primaries = self.primaries(pattern, k)?;
        let mut occurrences = self.grid.expand_secondaries(self.filtered.starts(), &primaries);
        occurrences.sort_unstable();
        Ok(QueryResult {
            pattern: pattern.to_vec(),
            k,
            occurrences,
        })
    }

    fn sections(&self) -> Vec<(SectionId, Vec<u8>)> {
        let mut header = Vec::with_capacity(45);
        header.extend_from_slice(&(self.n as u64).to_le_bytes());
        header.extend_from_slice(&(self.params.max_pattern_len as u32).to_le_bytes());
        header.extend_from_slice(&(self.params.max_edits as u32).to_le_bytes());
        header.extend_from_slice(&(self.params.g as u32).to_le_bytes());
        header.extend_from_slice(&(self.params.b as u32).to_le_bytes());
        header.push(self.filtered.separator());
        header.extend_from_slice(&(self.params.filter().sep_count() as u32).to_le_bytes());
        header.extend_from_slice(&(self.filtered.phrase_count() as u64).to_le_bytes());

        let mut kernel = Vec::new();
        self.filtered.write_kernel(&mut kernel);
        let mut starts = Vec::new();
        self.filtered.starts().write_to(&mut starts);
        let mut kernel_starts = Vec::new();
        self.filtered.kernel_starts().write_to(&mut kernel_starts);
        let mut first_occ = Vec::new();
        self.filtered.write_first_occ(&mut first_occ);
        let mut sa = Vec::new();
        self.inner.write_to(&mut sa);
        let mut xs = Vec::new();
        self.grid.x_list().write_to(&mut xs);
        let mut sats = Vec::new();
        self.grid.write_satellites(&mut sats);
        let mut rmq = Vec::new();
        self.grid.rmq().write_to(&mut rmq);

        vec![
            (SectionId::Header, header),
            (SectionId::Kernel, kernel),
            (SectionId::Starts, starts),
            (SectionId::KernelStarts, kernel_starts),
            (SectionId::FirstOcc, first_occ),
            (SectionId::SuffixArray, sa),
            (SectionId::SourceStarts, xs),
            (SectionId::Satellites, sats),
            (SectionId::Rmq, rmq),
        ]
    }

    pub fn serialize(&self) -> Vec<u8> {
        format::write_container(&self.sections())
    }

    pub fn deserialize(data: &[u8]) -> Result<Self> {
        let sections = format::read_container(data)?;
        let get = |id: SectionId| {
            sections
                .iter()
                .find(|(s, _)| *s == id)
                .map(|&(_, b)| b)
                .ok_or_else(|| Error::Malformed(format!("missing section {}", id.name())))
        };

        let mut h = get(SectionId::Header)?;
        const HDR: &str = "header";
        let n = read_u64(&mut h, HDR)? as usize;
        let max_pattern_len = read_u32(&mut h, HDR)? as usize;
        let max_edits = read_u32(&mut h, HDR)? as usize;
        let g = read_u32(&mut h, HDR)? as usize;
        let b = read_u32(&mut h, HDR)? as usize;
        let separator = read_u8(&mut h, HDR)?;
        let sep_count = read_u32(&mut h, HDR)? as usize;
        let z = read_u64(&mut h, HDR)? as usize;

        let filtered = FilteredText::from_sections(
            n,
            get(SectionId::Kernel)?,
            get(SectionId::Starts)?,
            get(SectionId::KernelStarts)?,
            get(SectionId::FirstOcc)?,
        )?;
        if filtered.phrase_count() != z || filtered.separator() != separator {
            return Err(Error::Malformed("header disagrees with the phrase lists".into()));
        }
        let inner = InnerIndex::read_from(&mut get(SectionId::SuffixArray)?, filtered.kernel().len())?;
        let grid = SourceGrid::from_sections(
            z,
            get(SectionId::SourceStarts)?,
            get(SectionId::Satellites)?,
            get(SectionId::Rmq)?,
        )?;
        Ok(Self {
            params: IndexParams {
                max_pattern_len,
                max_edits,
                g,
                b,
                separator: Some(separator),
                separator_count: Some(sep_count),
            },
            n,
            filtered,
            inner,
            grid,
        })
    }

    pub fn stats(&self) -> IndexStats {
        let sections: Vec<(&'static str, usize)> = self
            .sections()
            .iter()
            .map(|(id, bytes)| (id.name(), bytes.len()))
            .collect();
        let file_bytes = sections.iter().map(|&(_, b)| b).sum::<usize>() + format::overhead(sections.len());
        IndexStats {
            n: self.n,
            phrases: self.filtered.phrase_count(),
            kernel_len: self.filtered.kernel().len(),
            grid_points: self.grid.len(),
            sections,
            file_bytes,
        }
    }
}
