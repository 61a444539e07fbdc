//! Succinct string indexes that answer queries on one string through a
//! structure built for a similar string.
//!
//! The core idea: given `access`/`rank`/`select` support over a string
//! `s1` and an alignment between `s1` and a similar string `s2`, a
//! handful of marker bit vectors proportional in size to the number of
//! edits is enough to answer the same queries on `s2`. The crate layers
//! this as:
//!
//! * [`bits`] — rank/select bit vectors (dense and sparse),
//! * [`sequence`] — small-alphabet strings with per-character queries,
//! * [`alignment`] — common subsequences, edit distance, marker masks,
//! * [`relative`] — the layered select/rank/access structures,
//! * [`fm`] — BWT construction, LF/Ψ queries, and the relative index,
//! * [`boss`] — edge-BWTs of order-k de Bruijn graphs,
//! * [`mutate`] — seeded generation of similar sequence pairs,
//! * [`serial`] — binary serialization for all of the above.

pub mod alignment;
pub mod bits;
pub mod boss;
pub mod error;
pub mod fm;
pub mod mutate;
pub mod relative;
pub mod sequence;
pub mod serial;

pub use alignment::{common_subsequence, edit_distance, Alignment};
pub use bits::BitVector;
pub use error::{Error, Result};
pub use fm::{FMIndex, RelativeFMIndex, SuffixArray};
pub use relative::{RelativeSelect, SubsequenceSelect, SupersequenceSelect};
pub use sequence::IndexedSequence;
