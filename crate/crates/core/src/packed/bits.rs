//! Fixed-width bit-packed integer arrays.

use crate::error::{Error, Result};

/// Number of bits needed to write `x`, i.e. `floor(log2 x) + 1`, and 1 for zero.
#[inline]
pub fn bit_width(x: u64) -> u32 {
    (64 - x.leading_zeros()).max(1)
}

/// An array of `len` unsigned integers stored with `width` bits each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedInts {
    width: u32,
    len: usize,
    words: Vec<u64>,
}

impl PackedInts {
    pub fn new(width: u32, len: usize) -> Self {
        assert!((1..=64).contains(&width), "width {width} out of 1..=64");
        let bits = len * width as usize;
        Self {
            width,
            len,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn from_values(width: u32, values: &[u64]) -> Self {
        let mut packed = Self::new(width, values.len());
        for (i, &v) in values.iter().enumerate() {
            packed.set(i, v);
        }
        packed
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        let lo = self.words[w] >> off;
        let v = if off + self.width > 64 {
            lo | (self.words[w + 1] << (64 - off))
        } else {
            lo
        };
        v & self.mask()
    }

    /// Sum of the entries in `a..b`.
    #[inline]
    pub fn sum_range(&self, a: usize, b: usize) -> u64 {
        debug_assert!(a <= b && b <= self.len);
        let w = self.width as usize;
        let mask = self.mask();
        let mut bit = a * w;
        let mut sum = 0u64;
        for _ in a..b {
            let (word, off) = (bit / 64, bit % 64);
            let mut v = self.words[word] >> off;
            if off + w > 64 {
                v |= self.words[word + 1] << (64 - off);
            }
            sum += v & mask;
            bit += w;
        }
        sum
    }

    pub fn set(&mut self, i: usize, v: u64) {
        assert!(i < self.len);
        let mask = self.mask();
        assert!(v & !mask == 0, "value {v} does not fit in {} bits", self.width);
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        self.words[w] &= !(mask << off);
        self.words[w] |= v << off;
        if off + self.width > 64 {
            let spill = 64 - off;
            self.words[w + 1] &= !(mask >> spill);
            self.words[w + 1] |= v >> spill;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Size of the serialized bit stream, padded to a byte boundary.
    pub fn byte_len(&self) -> usize {
        (self.len * self.width as usize).div_ceil(8)
    }

    pub fn write_bytes(&self, out: &mut Vec<u8>) {
        let n = self.byte_len();
        out.extend(self.words.iter().flat_map(|w| w.to_le_bytes()).take(n));
    }

    /// Reads `len` values of `width` bits from the front of `bytes`, advancing it.
    pub fn read_bytes(
        width: u32,
        len: usize,
        bytes: &mut &[u8],
        section: &'static str,
    ) -> Result<Self> {
        if !(1..=64).contains(&width) {
            return Err(Error::Malformed(format!("bit width {width} in {section}")));
        }
        let mut packed = Self::new(width, len);
        let n = packed.byte_len();
        if bytes.len() < n {
            return Err(Error::Truncated(section));
        }
        let (head, rest) = bytes.split_at(n);
        for (w, chunk) in packed.words.iter_mut().zip(head.chunks(8)) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            *w = u64::from_le_bytes(buf);
        }
        *bytes = rest;
        Ok(packed)
    }
}

/// Fixed-width little-endian integers padded to whole bytes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ByteAlignedInts {
    bytes_per_entry: usize,
    data: Vec<u8>,
}

impl ByteAlignedInts {
    pub fn from_values(bits: u32, values: impl ExactSizeIterator<Item = u64>) -> Self {
        let bytes_per_entry = (bits as usize).div_ceil(8).max(1);
        let mut data = Vec::with_capacity(values.len() * bytes_per_entry);
        for v in values {
            data.extend_from_slice(&v.to_le_bytes()[..bytes_per_entry]);
        }
        Self {
            bytes_per_entry,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        let start = i * self.bytes_per_entry;
        let mut buf = [0u8; 8];
        buf[..self.bytes_per_entry].copy_from_slice(&self.data[start..start + self.bytes_per_entry]);
        u64::from_le_bytes(buf)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.bytes_per_entry
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn bytes_per_entry(&self) -> usize {
        self.bytes_per_entry
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn from_bytes(bytes_per_entry: usize, data: Vec<u8>) -> Result<Self> {
        if !(1..=8).contains(&bytes_per_entry) || data.len() % bytes_per_entry != 0 {
            return Err(Error::Malformed("byte-aligned array shape".into()));
        }
        Ok(Self {
            bytes_per_entry,
            data,
        })
    }
}
