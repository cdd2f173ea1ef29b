//! Succinct building blocks.

pub mod bits;
pub mod gaplist;
pub mod rmq;

pub use bits::{bit_width, PackedInts};
pub use gaplist::GapList;
pub use rmq::RmqIndex;
