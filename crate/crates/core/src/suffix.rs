//! Suffix array and LCP construction shared by the parser and the inner index.

use crate::error::{Error, Result};

/// Largest text the 32-bit suffix sorter accepts.
pub const MAX_TEXT_LEN: usize = i32::MAX as usize - 1;

/// 0-based suffix array of `text`.
pub fn suffix_array(text: &[u8]) -> Result<Vec<u32>> {
    if text.len() > MAX_TEXT_LEN {
        return Err(Error::TextTooLarge(text.len()));
    }
    let (_, sa) = divsufsort::sort(text).into_parts();
    Ok(sa.into_iter().map(|p| p as u32).collect())
}

/// Inverse permutation of `sa`.
pub fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        isa[p as usize] = r as u32;
    }
    isa
}

/// `lcp[r]` = longest common prefix of the suffixes at ranks `r - 1` and `r`; `lcp[0] = 0`.
pub fn lcp_array(text: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Min segment tree over `u32` with directional "first smaller" searches.
pub(crate) struct MinTree {
    size: usize,
    len: usize,
    tree: Vec<u32>,
}

impl MinTree {
    pub fn new(values: &[u32]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut tree = vec![u32::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for v in (1..size).rev() {
            tree[v] = tree[2 * v].min(tree[2 * v + 1]);
        }
        Self {
            size,
            len: values.len(),
            tree,
        }
    }

    #[inline]
    pub fn value(&self, i: usize) -> u32 {
        self.tree[self.size + i]
    }

    /// Minimum over `lo..=hi`.
    pub fn min(&self, lo: usize, hi: usize) -> u32 {
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        let mut best = u32::MAX;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.tree[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }

    /// Largest index `<= pos` whose value is `< bound`.
    pub fn prev_less(&self, pos: usize, bound: u32) -> Option<usize> {
        let mut v = pos + self.size;
        if self.tree[v] < bound {
            return Some(pos);
        }
        // climb until a left sibling subtree holds a smaller value
        loop {
            if v == 1 {
                return None;
            }
            if v & 1 == 1 && self.tree[v - 1] < bound {
                v -= 1;
                break;
            }
            v /= 2;
        }
        while v < self.size {
            v = if self.tree[2 * v + 1] < bound {
                2 * v + 1
            } else {
                2 * v
            };
        }
        Some(v - self.size)
    }

    /// Smallest index `>= pos` whose value is `< bound`.
    pub fn next_less(&self, pos: usize, bound: u32) -> Option<usize> {
        if pos >= self.len {
            return None;
        }
        let mut v = pos + self.size;
        if self.tree[v] < bound {
            return Some(pos);
        }
        loop {
            if v == 1 {
                return None;
            }
            if v & 1 == 0 && self.tree[v + 1] < bound {
                v += 1;
                break;
            }
            v /= 2;
        }
        while v < self.size {
            v = if self.tree[2 * v] < bound {
                2 * v
            } else {
                2 * v + 1
            };
        }
        (v - self.size < self.len).then_some(v - self.size)
    }
}
