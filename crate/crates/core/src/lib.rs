//! A compressed pattern-matching index for highly repetitive texts.
//!
//! The text is LZ77-parsed; only the bytes close to phrase boundaries (the
//! *kernel*) receive a conventional index. Matches found there that cross a
//! boundary, or contain the first occurrence of a byte, are the primary
//! occurrences; every other occurrence lies inside a copy phrase and is
//! recovered from the primaries by two-sided range reporting over the
//! phrase sources.
//!
//! ```
//! use hybrid_index::{HybridIndex, IndexParams};
//!
//! let text = b"abracadabra abracadabra abracadabra";
//! let index = HybridIndex::build(text, &IndexParams::new(8, 0)).unwrap();
//! let hits: Vec<_> = index
//!     .query(b"cad", 0)
//!     .unwrap()
//!     .occurrences
//!     .iter()
//!     .map(|o| o.start)
//!     .collect();
//! assert_eq!(hits, vec![5, 17, 29]);
//! ```

pub mod corpus;
pub mod error;
pub mod filtered;
pub mod format;
pub mod grid;
pub mod index;
pub mod inner;
pub mod lz77;
pub mod naive;
pub mod packed;
pub mod suffix;

pub use error::{Error, Result};
pub use filtered::{FilterParams, FilteredText, MatchClass};
pub use grid::{GridPoint, Occurrence, Origin, SourceGrid};
pub use index::{HybridIndex, IndexParams, IndexStats, QueryResult};
pub use inner::{InnerIndex, KernelMatch};
pub use lz77::{decode, parse, Parse, Phrase};
pub use packed::{GapList, RmqIndex};
