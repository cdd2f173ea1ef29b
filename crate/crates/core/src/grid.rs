//! Two-sided range reporting over phrase sources.
//!
//! Each copy phrase `T[i..j]` with source start `x` is a point `(x, y)`
//! with `y = x + j - i`, the last position of its source. Points are sorted
//! by `x`; only `x` (gap coded) and a pointer to the phrase's cell in the
//! phrase-start list are stored. `y` is recomputed from that list and a
//! position-only range-maximum index over it finds every point with
//! `x <= l` and `y >= r`.

use crate::error::{Error, Result};
use crate::format::{read_u64, read_u8};
use crate::lz77::{Parse, Phrase};
use crate::packed::bits::{bit_width, PackedInts};
use crate::packed::gaplist::GapList;
use crate::packed::rmq::RmqIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    /// Source start.
    pub x: usize,
    /// Source end.
    pub y: usize,
    /// Start of the phrase copied from this source.
    pub phrase_start: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Primary,
    Secondary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceGrid {
    xs: GapList,
    // 1-based ranks into the phrase-start list
    satellites: PackedInts,
    rmq: RmqIndex,
}

impl SourceGrid {
    /// Builds the grid; `starts` must hold every phrase start and the sentinel.
    pub fn build(parse: &Parse, starts: &GapList, g: usize, b: usize) -> Result<Self> {
        let z = parse.len();
        if starts.len() != z + 1 {
            return Err(Error::Malformed("phrase start list lacks the sentinel".into()));
        }
        let mut points: Vec<(u64, u64)> = parse
            .phrases()
            .iter()
            .enumerate()
            .filter_map(|(rank, p)| match *p {
                Phrase::Copy { src, .. } => Some((src as u64, rank as u64 + 1)),
                Phrase::Literal(_) => None,
            })
            .collect();
        // stable: equal sources keep parse order
        points.sort_by_key(|&(x, _)| x);
        let xs: Vec<u64> = points.iter().map(|&(x, _)| x).collect();
        let sats: Vec<u64> = points.iter().map(|&(_, s)| s).collect();
        let n = parse.text_len() as u64;
        let xs = GapList::build_nondecreasing(&xs, g, b, n)?;
        let satellites = PackedInts::from_values(bit_width(z as u64), &sats);
        let rmq = RmqIndex::build(points.len(), |t| y_of(&xs, &satellites, starts, t));
        Ok(Self {
            xs,
            satellites,
            rmq,
        })
    }

    /// Number of points (copy phrases).
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The `t`-th point in x order (1-based).
    pub fn point(&self, starts: &GapList, t: usize) -> GridPoint {
        let x = self.xs.get(t - 1);
        let rank = self.satellites.get(t - 1) as usize;
        let (i, next) = starts.get_pair(rank - 1);
        GridPoint {
            x: x as usize,
            y: (x + next - 1 - i) as usize,
            phrase_start: i as usize,
        }
    }

    pub fn points(&self, starts: &GapList) -> Vec<GridPoint> {
        (1..=self.len()).map(|t| self.point(starts, t)).collect()
    }

    /// Every point with `x <= l` and `y >= r`.
    pub fn covering_sources(&self, starts: &GapList, l: usize, r: usize) -> Vec<GridPoint> {
        let mut out = Vec::new();
        self.for_each_covering(starts, l, r, |p| out.push(p));
        out
    }

    fn for_each_covering(&self, starts: &GapList, l: usize, r: usize, mut emit: impl FnMut(GridPoint)) {
        let Some((k, _)) = self.xs.predecessor(l as u64) else {
            return;
        };
        let y = |t: usize| y_of(&self.xs, &self.satellites, starts, t);
        let mut stack = vec![(1usize, k)];
        while let Some((lo, hi)) = stack.pop() {
            let p = self
                .rmq
                .query(lo, hi, y)
                .expect("grid ranges stay within the point set");
            let point = self.point(starts, p);
            if point.y < r {
                continue;
            }
            emit(point);
            if p < hi {
                stack.push((p + 1, hi));
            }
            if p > lo {
                stack.push((lo, p - 1));
            }
        }
    }

    /// Expands primary occurrences into the full occurrence list: every
    /// entry is copied through each source covering it, and copies are
    /// appended to the same worklist until it is exhausted.
    pub fn expand_secondaries(&self, starts: &GapList, primaries: &[(usize, usize)]) -> Vec<Occurrence> {
        let mut list: Vec<Occurrence> = primaries
            .iter()
            .map(|&(start, end)| Occurrence {
                start,
                end,
                origin: Origin::Primary,
            })
            .collect();
        let mut cursor = 0;
        while cursor < list.len() {
            let Occurrence { start, end, .. } = list[cursor];
            self.for_each_covering(starts, start, end, |p| {
                let copy = p.phrase_start + start - p.x;
                list.push(Occurrence {
                    start: copy,
                    end: copy + (end - start),
                    origin: Origin::Secondary,
                });
            });
            cursor += 1;
        }
        list
    }

    pub fn x_list(&self) -> &GapList {
        &self.xs
    }

    pub fn satellites(&self) -> &PackedInts {
        &self.satellites
    }

    pub fn rmq(&self) -> &RmqIndex {
        &self.rmq
    }

    pub(crate) fn write_satellites(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.satellites.len() as u64).to_le_bytes());
        out.push(self.satellites.width() as u8);
        self.satellites.write_bytes(out);
    }

    pub(crate) fn from_sections(
        z: usize,
        mut xs: &[u8],
        mut sats: &[u8],
        mut rmq: &[u8],
    ) -> Result<Self> {
        let xs = GapList::read_from(&mut xs, "source starts")?;
        let count = read_u64(&mut sats, "satellites")? as usize;
        let width = read_u8(&mut sats, "satellites")? as u32;
        if count != xs.len() || width != bit_width(z as u64) {
            return Err(Error::Malformed("satellite array shape".into()));
        }
        let satellites = PackedInts::read_bytes(width, count, &mut sats, "satellites")?;
        if satellites.iter().any(|s| s == 0 || s as usize > z) {
            return Err(Error::Malformed("satellite outside the phrase list".into()));
        }
        let rmq = RmqIndex::read_from(&mut rmq, "rmq")?;
        if rmq.len() != count {
            return Err(Error::Malformed("rmq size".into()));
        }
        Ok(Self {
            xs,
            satellites,
            rmq,
        })
    }
}

#[inline]
fn y_of(xs: &GapList, satellites: &PackedInts, starts: &GapList, t: usize) -> u64 {
    let x = xs.get(t - 1);
    let (i, next) = starts.get_pair(satellites.get(t - 1) as usize - 1);
    x + next - 1 - i
}
