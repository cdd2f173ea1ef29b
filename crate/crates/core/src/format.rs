//! Index file container.
//!
//! ```text
//! magic "HYBX" | version u16 | section count u16
//! section table: (id u16, offset u64, length u64) per section
//! sections, in table order
//! CRC-32 of all section bytes, u32
//! ```
//!
//! All integers are little-endian; offsets are from the start of the file.

use byteorder::{LittleEndian, ReadBytesExt};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"HYBX";
pub const VERSION: u16 = 1;
const TABLE_ENTRY: usize = 2 + 8 + 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u16)]
pub enum SectionId {
    Header = 1,
    Kernel = 2,
    Starts = 3,
    KernelStarts = 4,
    FirstOcc = 5,
    SuffixArray = 6,
    SourceStarts = 7,
    Satellites = 8,
    Rmq = 9,
}

impl SectionId {
    pub const ALL: [SectionId; 9] = [
        SectionId::Header,
        SectionId::Kernel,
        SectionId::Starts,
        SectionId::KernelStarts,
        SectionId::FirstOcc,
        SectionId::SuffixArray,
        SectionId::SourceStarts,
        SectionId::Satellites,
        SectionId::Rmq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SectionId::Header => "header",
            SectionId::Kernel => "kernel",
            SectionId::Starts => "starts",
            SectionId::KernelStarts => "kernel_starts",
            SectionId::FirstOcc => "first_occ",
            SectionId::SuffixArray => "suffix_array",
            SectionId::SourceStarts => "source_starts",
            SectionId::Satellites => "satellites",
            SectionId::Rmq => "rmq",
        }
    }

    fn from_u16(v: u16) -> Option<Self> {
        Self::ALL.into_iter().find(|s| *s as u16 == v)
    }
}

/// Bytes outside any section for a file with `sections` sections.
pub fn overhead(sections: usize) -> usize {
    MAGIC.len() + 2 + 2 + sections * TABLE_ENTRY + 4
}

pub fn write_container(sections: &[(SectionId, Vec<u8>)]) -> Vec<u8> {
    let body: usize = sections.iter().map(|(_, b)| b.len()).sum();
    let mut out = Vec::with_capacity(overhead(sections.len()) + body);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(sections.len() as u16).to_le_bytes());
    let mut offset = (MAGIC.len() + 4 + sections.len() * TABLE_ENTRY) as u64;
    for (id, bytes) in sections {
        out.extend_from_slice(&(*id as u16).to_le_bytes());
        out.extend_from_slice(&offset.to_le_bytes());
        out.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
        offset += bytes.len() as u64;
    }
    let mut crc = crc32fast::Hasher::new();
    for (_, bytes) in sections {
        out.extend_from_slice(bytes);
        crc.update(bytes);
    }
    out.extend_from_slice(&crc.finalize().to_le_bytes());
    out
}

/// Splits a container into its sections after checking magic, version and CRC.
pub fn read_container(data: &[u8]) -> Result<Vec<(SectionId, &[u8])>> {
    if data.len() < MAGIC.len() || &data[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut cur = &data[4..];
    let version = read_u16(&mut cur, "preamble")?;
    if version != VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: VERSION,
        });
    }
    let count = read_u16(&mut cur, "preamble")? as usize;
    let mut table = Vec::with_capacity(count);
    for _ in 0..count {
        let id = read_u16(&mut cur, "section table")?;
        let offset = read_u64(&mut cur, "section table")?;
        let len = read_u64(&mut cur, "section table")?;
        let id = SectionId::from_u16(id)
            .ok_or_else(|| Error::Malformed(format!("unknown section id {id}")))?;
        table.push((id, offset, len));
    }
    let mut crc = crc32fast::Hasher::new();
    let mut sections = Vec::with_capacity(count);
    let mut expected_offset = (MAGIC.len() + 4 + count * TABLE_ENTRY) as u64;
    for (id, offset, len) in table {
        if offset != expected_offset {
            return Err(Error::Malformed(format!("section {} offset", id.name())));
        }
        let end = offset.checked_add(len).ok_or(Error::Truncated(id.name()))?;
        if end + 4 > data.len() as u64 {
            return Err(Error::Truncated(id.name()));
        }
        let bytes = &data[offset as usize..end as usize];
        crc.update(bytes);
        sections.push((id, bytes));
        expected_offset = end;
    }
    let mut tail = data
        .get(expected_offset as usize..)
        .ok_or(Error::Truncated("checksum"))?;
    let stored = read_u32(&mut tail, "checksum")?;
    if !tail.is_empty() {
        return Err(Error::Malformed("trailing bytes after checksum".into()));
    }
    let computed = crc.finalize();
    if stored != computed {
        return Err(Error::ChecksumMismatch { stored, computed });
    }
    Ok(sections)
}

fn eof(section: &'static str) -> impl FnOnce(std::io::Error) -> Error {
    move |_| Error::Truncated(section)
}

pub(crate) fn read_u8(bytes: &mut &[u8], section: &'static str) -> Result<u8> {
    bytes.read_u8().map_err(eof(section))
}

pub(crate) fn read_u16(bytes: &mut &[u8], section: &'static str) -> Result<u16> {
    bytes.read_u16::<LittleEndian>().map_err(eof(section))
}

pub(crate) fn read_u32(bytes: &mut &[u8], section: &'static str) -> Result<u32> {
    bytes.read_u32::<LittleEndian>().map_err(eof(section))
}

pub(crate) fn read_u64(bytes: &mut &[u8], section: &'static str) -> Result<u64> {
    bytes.read_u64::<LittleEndian>().map_err(eof(section))
}
