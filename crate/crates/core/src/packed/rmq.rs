//! Position-only range-maximum queries.
//!
//! The index never stores the values it ranks. Positions are split into
//! blocks of [`BLOCK`]. Each position `j` keeps a bit mask of the block
//! offsets that are still on the maximum stack after scanning its block up
//! to `j`: the lowest such offset at or after `lo` is the maximum of
//! `lo..=j`, so any query inside one block is answered without reading a
//! value. A doubling table over blocks answers the whole-block part of a
//! longer query; values are read through the caller's accessor only to
//! compare the (at most four) candidates. Ties resolve to the leftmost
//! position.

use crate::error::{Error, Result};
use crate::format::{read_u32, read_u64, read_u8};
use crate::packed::bits::{bit_width, PackedInts};

pub const BLOCK: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmqIndex {
    len: usize,
    masks: Vec<u32>,
    // levels[j][i]: block index holding the maximum of blocks [i, i + 2^j)
    levels: Vec<PackedInts>,
}

impl RmqIndex {
    /// Builds over positions `1..=len`; `value(p)` must be defined on that range.
    pub fn build(len: usize, value: impl Fn(usize) -> u64) -> Self {
        let mut masks = vec![0u32; len];
        let nblocks = len.div_ceil(BLOCK);
        let mut block_best: Vec<u64> = Vec::with_capacity(nblocks);
        let mut stack: Vec<(usize, u64)> = Vec::with_capacity(BLOCK);

        for blk in 0..nblocks {
            let start = blk * BLOCK;
            let end = (start + BLOCK).min(len);
            stack.clear();
            let mut mask = 0u32;
            for p in start..end {
                let v = value(p + 1);
                // equal values stay so that the leftmost maximum wins
                while let Some(&(off, top)) = stack.last() {
                    if top >= v {
                        break;
                    }
                    mask &= !(1 << off);
                    stack.pop();
                }
                stack.push((p - start, v));
                mask |= 1 << (p - start);
                masks[p] = mask;
            }
            block_best.push(stack[0].1);
        }

        let mut levels = Vec::new();
        if nblocks > 0 {
            let width = bit_width(nblocks as u64 - 1);
            let base: Vec<u64> = (0..nblocks as u64).collect();
            levels.push(PackedInts::from_values(width, &base));
            let mut span = 1;
            while 2 * span <= nblocks {
                let prev = levels.last().unwrap();
                let row: Vec<u64> = (0..=nblocks - 2 * span)
                    .map(|i| {
                        let (a, b) = (prev.get(i), prev.get(i + span));
                        if block_best[b as usize] > block_best[a as usize] {
                            b
                        } else {
                            a
                        }
                    })
                    .collect();
                levels.push(PackedInts::from_values(width, &row));
                span *= 2;
            }
        }
        Self { len, masks, levels }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Maximum of `lo..=hi` (0-based, same block).
    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> usize {
        let base = lo - lo % BLOCK;
        let live = self.masks[hi] & (u32::MAX << (lo - base));
        base + live.trailing_zeros() as usize
    }

    /// Leftmost position of the maximum of `value` over `lo..=hi` (1-based).
    pub fn query(&self, lo: usize, hi: usize, value: impl Fn(usize) -> u64) -> Result<usize> {
        if lo == 0 || lo > hi || hi > self.len {
            return Err(Error::BadRange {
                lo,
                hi,
                len: self.len,
            });
        }
        let (lo, hi) = (lo - 1, hi - 1);
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return Ok(self.in_block(lo, hi) + 1);
        }

        let mut best = self.in_block(lo, bl * BLOCK + BLOCK - 1);
        let mut best_v = value(best + 1);
        let mut consider = |p: usize| {
            let v = value(p + 1);
            if v > best_v {
                best = p;
                best_v = v;
            }
        };
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let j = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let left = self.levels[j].get(a) as usize;
            let right = self.levels[j].get(b + 1 - (1 << j)) as usize;
            consider(self.block_argmax(left));
            if right != left {
                consider(self.block_argmax(right));
            }
        }
        consider(self.in_block(bh * BLOCK, hi));
        Ok(best + 1)
    }

    #[inline]
    fn block_argmax(&self, blk: usize) -> usize {
        let last = ((blk + 1) * BLOCK).min(self.len) - 1;
        self.in_block(blk * BLOCK, last)
    }

    pub fn byte_len(&self) -> usize {
        8 + 4 + 1 + 4 * self.masks.len() + self.levels.iter().map(PackedInts::byte_len).sum::<usize>()
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.len as u64).to_le_bytes());
        out.extend_from_slice(&(BLOCK as u32).to_le_bytes());
        out.push(self.levels.len() as u8);
        for m in &self.masks {
            out.extend_from_slice(&m.to_le_bytes());
        }
        for level in &self.levels {
            level.write_bytes(out);
        }
    }

    pub fn read_from(bytes: &mut &[u8], section: &'static str) -> Result<Self> {
        let len = read_u64(bytes, section)? as usize;
        let block = read_u32(bytes, section)? as usize;
        let nlevels = read_u8(bytes, section)? as usize;
        if block != BLOCK {
            return Err(Error::Malformed(format!("rmq block size {block}")));
        }
        if len > bytes.len() / 4 {
            return Err(Error::Truncated(section));
        }
        let nblocks = len.div_ceil(BLOCK);
        let expected_levels = if nblocks == 0 {
            0
        } else {
            (usize::BITS - nblocks.leading_zeros()) as usize
        };
        if nlevels != expected_levels {
            return Err(Error::Malformed(format!("rmq level count {nlevels}")));
        }
        let mut masks = Vec::with_capacity(len);
        for p in 0..len {
            let m = read_u32(bytes, section)?;
            // the mask must hold the position itself and nothing to its right
            let off = p % BLOCK;
            if m & (1 << off) == 0 || (off < 31 && m >> (off + 1) != 0) {
                return Err(Error::Malformed("rmq stack mask".into()));
            }
            masks.push(m);
        }
        let mut levels = Vec::with_capacity(nlevels);
        if nblocks > 0 {
            let width = bit_width(nblocks as u64 - 1);
            for j in 0..nlevels {
                let level = PackedInts::read_bytes(width, nblocks + 1 - (1 << j), bytes, section)?;
                if level.iter().any(|b| b as usize >= nblocks) {
                    return Err(Error::Malformed("rmq block index".into()));
                }
                levels.push(level);
            }
        }
        Ok(Self { len, masks, levels })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(values: &[u64], lo: usize, hi: usize) -> usize {
        let mut best = lo;
        for p in lo..=hi {
            if values[p - 1] > values[best - 1] {
                best = p;
            }
        }
        best
    }

    #[test]
    fn singleton_and_ties() {
        let one = [7u64];
        let rmq = RmqIndex::build(1, |p| one[p - 1]);
        assert_eq!(rmq.query(1, 1, |p| one[p - 1]).unwrap(), 1);

        let y = [3u64, 1, 3];
        let rmq = RmqIndex::build(3, |p| y[p - 1]);
        assert_eq!(rmq.query(1, 3, |p| y[p - 1]).unwrap(), 1);
        assert_eq!(rmq.query(2, 3, |p| y[p - 1]).unwrap(), 3);
    }

    #[test]
    fn errors() {
        let rmq = RmqIndex::build(0, |_| 0);
        assert!(matches!(rmq.query(1, 1, |_| 0), Err(Error::BadRange { .. })));
        let y = [1u64, 2];
        let rmq = RmqIndex::build(2, |p| y[p - 1]);
        assert!(rmq.query(0, 1, |p| y[p - 1]).is_err());
        assert!(rmq.query(2, 1, |p| y[p - 1]).is_err());
        assert!(rmq.query(1, 3, |p| y[p - 1]).is_err());
    }

    #[test]
    fn cross_block_ties_are_leftmost() {
        // equal maxima in several blocks
        let y: Vec<u64> = (0..300).map(|i| if i % 37 == 5 { 9 } else { i % 4 }).collect();
        let rmq = RmqIndex::build(y.len(), |p| y[p - 1]);
        for lo in (1..=300).step_by(7) {
            for hi in (lo..=300).step_by(11) {
                assert_eq!(rmq.query(lo, hi, |p| y[p - 1]).unwrap(), brute(&y, lo, hi));
            }
        }
    }

    #[test]
    fn in_block_ranges_match_brute_force() {
        let y: Vec<u64> = (0..100u64).map(|i| (i * 37) % 11).collect();
        let rmq = RmqIndex::build(y.len(), |p| y[p - 1]);
        for lo in 1..=100 {
            for hi in lo..=100 {
                assert_eq!(rmq.query(lo, hi, |p| y[p - 1]).unwrap(), brute(&y, lo, hi));
            }
        }
    }

    #[test]
    fn round_trip() {
        let y: Vec<u64> = (0..1000u64).map(|i| (i * 7919) % 613).collect();
        let rmq = RmqIndex::build(y.len(), |p| y[p - 1]);
        let mut out = Vec::new();
        rmq.write_to(&mut out);
        assert_eq!(out.len(), rmq.byte_len());
        let mut slice = out.as_slice();
        assert_eq!(RmqIndex::read_from(&mut slice, "rmq").unwrap(), rmq);
    }
}
