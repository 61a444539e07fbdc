//! Binary serialization for every structure in the crate.
//!
//! All integers are little-endian. Variable-length integers (`varint`)
//! use LEB128: seven payload bits per byte, high bit set on
//! continuation.
//!
//! Bit vector:
//!
//! | field   | encoding                                             |
//! |---------|------------------------------------------------------|
//! | length  | u64                                                  |
//! | tag     | u8, 0 = dense, 1 = sparse                            |
//! | payload | dense: `ceil(length / 64)` u64 words, little-endian bit order |
//! |         | sparse: u64 count, u8 position width `w` (bits needed for `length`), then the 1-based set positions packed `w` bits each, LSB first, into `ceil(count * w / 64)` u64 words |
//!
//! Sequence index: u64 length, u8 tag (0), u8 alphabet size, the
//! alphabet bytes ascending, then the `sigma - 1` node bit vectors of
//! the balanced alphabet decomposition in preorder.
//!
//! Alignment: u64 `n1`, u64 `n2`, u64 match count, then per match the
//! varint deltas of both coordinates (strictly positive).
//!
//! Relative select structure: u8 version (1), then in order: the
//! removed-marks vector over the base string, the per-character
//! removed marks, the inserted-marks vector over the target string, the
//! per-character inserted marks, and the extra-character sequence. A
//! per-character table is a u8 entry count followed by `(char byte, bit
//! vector)` pairs in ascending character order. The base index itself is
//! not serialized; the reader supplies it.
//!
//! Index container: magic `RFMX`, u16 version (1), u8 mode, then
//! mode-dependent sections:
//!
//! | mode | meaning                | sections |
//! |------|------------------------|----------|
//! | 0    | plain index            | target BWT sequence |
//! | 1    | relative, rank only    | reference BWT sequence; removed marks; per-character removed marks; inserted marks; extra chars |
//! | 2    | relative with select   | reference BWT sequence; full relative structure |
//! | 3    | relative over raw text | base sequence; full relative structure |
//!
//! Mode 1 omits the per-character inserted marks (the select-side
//! structure); the reader rebuilds them from the stored sections, but
//! query front ends are expected to refuse select-style queries on such
//! an index since the file did not pay for them.

use std::io::{Read, Write};
use std::sync::Arc;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::fm::{FMIndex, RelativeFMIndex};
use crate::relative::{CharMarks, RelativeSelect, SubsequenceSelect, SupersequenceSelect};
use crate::sequence::IndexedSequence;

const MAGIC: &[u8; 4] = b"RFMX";
const CONTAINER_VERSION: u16 = 1;
const RELATIVE_VERSION: u8 = 1;

const TAG_DENSE: u8 = 0;
const TAG_SPARSE: u8 = 1;
const TAG_SEQUENCE: u8 = 0;

// ---------------------------------------------------------------------
// Primitives

pub fn write_u64(w: &mut impl Write, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

pub fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

pub fn write_u8(w: &mut impl Write, v: u8) -> Result<()> {
    w.write_all(&[v])?;
    Ok(())
}

pub fn read_u8(r: &mut impl Read) -> Result<u8> {
    let mut buf = [0u8; 1];
    r.read_exact(&mut buf)?;
    Ok(buf[0])
}

pub fn write_varint(w: &mut impl Write, mut v: u64) -> Result<()> {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            write_u8(w, byte)?;
            return Ok(());
        }
        write_u8(w, byte | 0x80)?;
    }
}

pub fn read_varint(r: &mut impl Read) -> Result<u64> {
    let mut v = 0u64;
    let mut shift = 0u32;
    loop {
        let byte = read_u8(r)?;
        if shift >= 64 {
            return Err(Error::Corrupt("varint overflows 64 bits".into()));
        }
        v |= ((byte & 0x7f) as u64) << shift;
        if byte & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
    }
}

/// Sink that counts bytes, for measuring serialized sizes.
#[derive(Default)]
struct CountingWriter {
    bytes: usize,
}

impl Write for CountingWriter {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.bytes += buf.len();
        Ok(buf.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

fn measure(f: impl FnOnce(&mut CountingWriter) -> Result<()>) -> Result<usize> {
    let mut sink = CountingWriter::default();
    f(&mut sink)?;
    Ok(sink.bytes)
}

// ---------------------------------------------------------------------
// Bit vectors

pub fn write_bitvector(w: &mut impl Write, v: &BitVector) -> Result<()> {
    write_u64(w, v.len() as u64)?;
    if let Some(words) = v.dense_words() {
        write_u8(w, TAG_DENSE)?;
        for &word in words {
            write_u64(w, word)?;
        }
    } else {
        write_u8(w, TAG_SPARSE)?;
        let count = v.count_ones();
        write_u64(w, count as u64)?;
        let width = position_width(v.len());
        write_u8(w, width)?;
        let mut words = vec![0u64; (count * width as usize).div_ceil(64)];
        for (k, p) in v.iter_ones().enumerate() {
            pack_bits(&mut words, k, width, p as u64);
        }
        for word in words {
            write_u64(w, word)?;
        }
    }
    Ok(())
}

/// Bits needed to store any 1-based position of a length-`len` vector.
fn position_width(len: usize) -> u8 {
    (u64::BITS - (len as u64).leading_zeros()).max(1) as u8
}

fn pack_bits(words: &mut [u64], k: usize, width: u8, value: u64) {
    let bit = k as u64 * width as u64;
    let (wi, off) = ((bit / 64) as usize, (bit % 64) as u32);
    words[wi] |= value << off;
    if off + width as u32 > 64 {
        words[wi + 1] |= value >> (64 - off);
    }
}

fn unpack_bits(words: &[u64], k: usize, width: u8) -> u64 {
    let bit = k as u64 * width as u64;
    let (wi, off) = ((bit / 64) as usize, (bit % 64) as u32);
    let mut v = words[wi] >> off;
    if off + width as u32 > 64 {
        v |= words[wi + 1] << (64 - off);
    }
    if width == 64 {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

pub fn read_bitvector(r: &mut impl Read) -> Result<BitVector> {
    let len = read_u64(r)? as usize;
    match read_u8(r)? {
        TAG_DENSE => {
            let mut words = vec![0u64; len.div_ceil(64)];
            for word in words.iter_mut() {
                *word = read_u64(r)?;
            }
            BitVector::from_dense_words(len, words)
                .map_err(|e| Error::Corrupt(e.to_string()))
        }
        TAG_SPARSE => {
            let count = read_u64(r)? as usize;
            let width = read_u8(r)?;
            if width != position_width(len) {
                return Err(Error::Corrupt(format!(
                    "sparse width {width} does not fit length {len}"
                )));
            }
            let mut words = vec![0u64; (count * width as usize).div_ceil(64)];
            for word in words.iter_mut() {
                *word = read_u64(r)?;
            }
            let positions: Vec<usize> = (0..count)
                .map(|k| unpack_bits(&words, k, width) as usize)
                .collect();
            BitVector::from_set_positions(len, &positions)
                .map_err(|e| Error::Corrupt(e.to_string()))
        }
        tag => Err(Error::Corrupt(format!("unknown bit vector tag {tag}"))),
    }
}

/// Serialized size of a bit vector in bytes.
pub fn bitvector_bytes(v: &BitVector) -> usize {
    measure(|w| write_bitvector(w, v)).expect("counting cannot fail")
}

// ---------------------------------------------------------------------
// Sequence indexes

pub fn write_sequence(w: &mut impl Write, s: &IndexedSequence) -> Result<()> {
    write_u64(w, s.len() as u64)?;
    write_u8(w, TAG_SEQUENCE)?;
    write_u8(w, s.alphabet().len() as u8)?;
    w.write_all(s.alphabet())?;
    for bits in s.node_bits() {
        write_bitvector(w, bits)?;
    }
    Ok(())
}

pub fn read_sequence(r: &mut impl Read) -> Result<IndexedSequence> {
    let len = read_u64(r)? as usize;
    let tag = read_u8(r)?;
    if tag != TAG_SEQUENCE {
        return Err(Error::Corrupt(format!("unknown sequence tag {tag}")));
    }
    let sigma = read_u8(r)? as usize;
    let mut alphabet = vec![0u8; sigma];
    r.read_exact(&mut alphabet)?;
    if !alphabet.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Corrupt("alphabet not strictly ascending".into()));
    }
    let mut nodes = Vec::with_capacity(sigma.saturating_sub(1));
    for _ in 0..sigma.saturating_sub(1) {
        nodes.push(read_bitvector(r)?);
    }
    IndexedSequence::from_parts(len, alphabet, &mut nodes.into_iter())
}

/// Serialized size of a sequence index in bytes.
pub fn sequence_bytes(s: &IndexedSequence) -> usize {
    measure(|w| write_sequence(w, s)).expect("counting cannot fail")
}

// ---------------------------------------------------------------------
// Alignments

pub fn write_alignment(w: &mut impl Write, a: &crate::alignment::Alignment) -> Result<()> {
    write_u64(w, a.n1() as u64)?;
    write_u64(w, a.n2() as u64)?;
    write_u64(w, a.len_c() as u64)?;
    let (mut pp, mut pq) = (0u64, 0u64);
    for (p, q) in a.matches() {
        write_varint(w, p as u64 - pp)?;
        write_varint(w, q as u64 - pq)?;
        pp = p as u64;
        pq = q as u64;
    }
    Ok(())
}

pub fn read_alignment(r: &mut impl Read) -> Result<crate::alignment::Alignment> {
    let n1 = read_u64(r)? as usize;
    let n2 = read_u64(r)? as usize;
    let count = read_u64(r)? as usize;
    let mut matches = Vec::with_capacity(count);
    let (mut pp, mut pq) = (0u64, 0u64);
    for _ in 0..count {
        let dp = read_varint(r)?;
        let dq = read_varint(r)?;
        if dp == 0 || dq == 0 {
            return Err(Error::Corrupt("zero delta in alignment".into()));
        }
        pp += dp;
        pq += dq;
        matches.push((pp as u32, pq as u32));
    }
    crate::alignment::Alignment::new(n1, n2, matches).map_err(|e| Error::Corrupt(e.to_string()))
}

// ---------------------------------------------------------------------
// Relative structures

fn write_char_marks(w: &mut impl Write, marks: &CharMarks) -> Result<()> {
    write_u8(w, marks.chars().len() as u8)?;
    for (c, bits) in marks.iter() {
        write_u8(w, c)?;
        write_bitvector(w, bits)?;
    }
    Ok(())
}

fn read_char_marks(r: &mut impl Read) -> Result<CharMarks> {
    let count = read_u8(r)? as usize;
    let mut chars = Vec::with_capacity(count);
    let mut marks = Vec::with_capacity(count);
    for _ in 0..count {
        let c = read_u8(r)?;
        if let Some(&last) = chars.last() {
            if last >= c {
                return Err(Error::Corrupt("character table not ascending".into()));
            }
        }
        chars.push(c);
        marks.push(read_bitvector(r)?);
    }
    Ok(CharMarks::new(chars, marks))
}

/// Writes the full relative structure in its canonical order: global
/// removed marks, per-character removed marks, global inserted marks,
/// per-character inserted marks, extra characters.
pub fn write_relative(w: &mut impl Write, rel: &RelativeSelect) -> Result<()> {
    write_u8(w, RELATIVE_VERSION)?;
    write_bitvector(w, rel.subsequence().removed_marks())?;
    write_char_marks(w, rel.subsequence().removed_char_marks())?;
    write_bitvector(w, rel.supersequence().inserted_marks())?;
    write_char_marks(w, rel.supersequence().inserted_char_marks())?;
    write_sequence(w, rel.supersequence().extra_chars())?;
    Ok(())
}

/// Reads a full relative structure; `base` is the index of the string
/// it queries through.
pub fn read_relative(r: &mut impl Read, base: Arc<IndexedSequence>) -> Result<RelativeSelect> {
    let version = read_u8(r)?;
    if version != RELATIVE_VERSION {
        return Err(Error::Corrupt(format!(
            "unsupported relative structure version {version}"
        )));
    }
    let removed = read_bitvector(r)?;
    let removed_by_char = read_char_marks(r)?;
    let inserted = read_bitvector(r)?;
    let inserted_by_char = read_char_marks(r)?;
    let extra = read_sequence(r)?;
    assemble_relative(base, removed, removed_by_char, inserted, inserted_by_char, extra)
}

fn assemble_relative(
    base: Arc<IndexedSequence>,
    removed: BitVector,
    removed_by_char: CharMarks,
    inserted: BitVector,
    inserted_by_char: CharMarks,
    extra: IndexedSequence,
) -> Result<RelativeSelect> {
    if removed.len() != base.len() {
        return Err(Error::Corrupt(
            "removed marks do not cover the base string".into(),
        ));
    }
    if removed.count_zeros() != inserted.count_zeros() {
        return Err(Error::Corrupt(
            "mark vectors disagree on the common length".into(),
        ));
    }
    if extra.len() != inserted.count_ones() {
        return Err(Error::Corrupt(
            "extra characters do not match the inserted marks".into(),
        ));
    }
    let sub = SubsequenceSelect::from_parts(removed, removed_by_char);
    let sup = SupersequenceSelect::from_parts(inserted, inserted_by_char, extra);
    Ok(RelativeSelect::from_parts(base, sub, sup))
}

/// Serialized size of the four marker-vector components, in bytes.
pub fn marker_bytes(rel: &RelativeSelect) -> usize {
    measure(|w| {
        write_bitvector(w, rel.subsequence().removed_marks())?;
        write_char_marks(w, rel.subsequence().removed_char_marks())?;
        write_bitvector(w, rel.supersequence().inserted_marks())?;
        write_char_marks(w, rel.supersequence().inserted_char_marks())
    })
    .expect("counting cannot fail")
}

/// Serialized size of the whole relative structure (markers plus extra
/// characters), in bytes.
pub fn relative_bytes(rel: &RelativeSelect) -> usize {
    measure(|w| write_relative(w, rel)).expect("counting cannot fail")
}

// ---------------------------------------------------------------------
// Index container

/// An index as stored on disk.
#[derive(Clone, Debug)]
pub enum StoredIndex {
    /// A plain index over the target text's BWT.
    Plain(FMIndex),
    /// The target BWT stored relative to a reference index. Without
    /// `with_select`, the per-character inserted marks are not written
    /// and select-style queries are not paid for.
    Relative {
        index: RelativeFMIndex,
        with_select: bool,
    },
    /// A relative select structure over raw (untransformed) strings.
    RawRelative(RelativeSelect),
}

impl StoredIndex {
    pub fn mode_name(&self) -> &'static str {
        match self {
            StoredIndex::Plain(_) => "plain-fm",
            StoredIndex::Relative {
                with_select: false, ..
            } => "relative-fm",
            StoredIndex::Relative {
                with_select: true, ..
            } => "relative-fm+select",
            StoredIndex::RawRelative(_) => "relative-select",
        }
    }

    fn mode_byte(&self) -> u8 {
        match self {
            StoredIndex::Plain(_) => 0,
            StoredIndex::Relative {
                with_select: false, ..
            } => 1,
            StoredIndex::Relative {
                with_select: true, ..
            } => 2,
            StoredIndex::RawRelative(_) => 3,
        }
    }
}

/// Per-component byte counts of a written container.
#[derive(Clone, Debug, Default)]
pub struct ComponentSizes {
    pub entries: Vec<(String, usize)>,
}

impl ComponentSizes {
    fn push(&mut self, name: &str, bytes: usize) {
        self.entries.push((name.to_string(), bytes));
    }

    pub fn get(&self, name: &str) -> usize {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map_or(0, |&(_, b)| b)
    }

    /// Total bytes across components matching the predicate.
    pub fn total_where(&self, pred: impl Fn(&str) -> bool) -> usize {
        self.entries
            .iter()
            .filter(|(n, _)| pred(n))
            .map(|&(_, b)| b)
            .sum()
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&(_, b)| b).sum()
    }
}

/// Measures a section body, records its size, then writes it for real.
macro_rules! write_section {
    ($w:expr, $sizes:expr, $name:expr, $body:expr) => {{
        let bytes = measure(|sink| $body(sink))?;
        $sizes.push($name, bytes);
        $body($w)?;
    }};
}

/// Writes an index container, returning the byte count per component.
pub fn write_container(w: &mut impl Write, index: &StoredIndex) -> Result<ComponentSizes> {
    let mut sizes = ComponentSizes::default();
    w.write_all(MAGIC)?;
    w.write_all(&CONTAINER_VERSION.to_le_bytes())?;
    write_u8(w, index.mode_byte())?;
    match index {
        StoredIndex::Plain(fm) => {
            write_section!(w, sizes, "target-bwt", |w: &mut _| write_sequence(w, fm.bwt()));
        }
        StoredIndex::Relative { index, with_select } => {
            write_section!(w, sizes, "reference-bwt", |w: &mut _| {
                write_sequence(w, index.reference().bwt())
            });
            let rel = index.relative();
            write_section!(w, sizes, "removed-marks", |w: &mut _| {
                write_bitvector(w, rel.subsequence().removed_marks())
            });
            write_section!(w, sizes, "removed-char-marks", |w: &mut _| {
                write_char_marks(w, rel.subsequence().removed_char_marks())
            });
            write_section!(w, sizes, "inserted-marks", |w: &mut _| {
                write_bitvector(w, rel.supersequence().inserted_marks())
            });
            if *with_select {
                write_section!(w, sizes, "inserted-char-marks", |w: &mut _| {
                    write_char_marks(w, rel.supersequence().inserted_char_marks())
                });
            }
            write_section!(w, sizes, "extra-chars", |w: &mut _| {
                write_sequence(w, rel.supersequence().extra_chars())
            });
        }
        StoredIndex::RawRelative(rel) => {
            write_section!(w, sizes, "base-sequence", |w: &mut _| {
                write_sequence(w, rel.base())
            });
            write_section!(w, sizes, "relative-structure", |w: &mut _| {
                write_relative(w, rel)
            });
        }
    }
    Ok(sizes)
}

/// Measures a container without writing it anywhere.
pub fn container_sizes(index: &StoredIndex) -> Result<ComponentSizes> {
    let mut sink = CountingWriter::default();
    write_container(&mut sink, index)
}

/// Reads an index container written by [`write_container`].
pub fn read_container(r: &mut impl Read) -> Result<StoredIndex> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Corrupt("bad container magic".into()));
    }
    let mut ver = [0u8; 2];
    r.read_exact(&mut ver)?;
    if u16::from_le_bytes(ver) != CONTAINER_VERSION {
        return Err(Error::Corrupt(format!(
            "unsupported container version {}",
            u16::from_le_bytes(ver)
        )));
    }
    match read_u8(r)? {
        0 => {
            let bwt = read_sequence(r)?;
            Ok(StoredIndex::Plain(FMIndex::from_indexed(Arc::new(bwt))))
        }
        1 => {
            let reference = FMIndex::from_indexed(Arc::new(read_sequence(r)?));
            let base = reference.shared_bwt();
            let removed = read_bitvector(r)?;
            let removed_by_char = read_char_marks(r)?;
            let inserted = read_bitvector(r)?;
            let extra = read_sequence(r)?;
            let rel = rebuild_select_side(base, removed, removed_by_char, inserted, extra)?;
            Ok(StoredIndex::Relative {
                index: RelativeFMIndex::from_parts(reference, rel),
                with_select: false,
            })
        }
        2 => {
            let reference = FMIndex::from_indexed(Arc::new(read_sequence(r)?));
            let removed = read_bitvector(r)?;
            let removed_by_char = read_char_marks(r)?;
            let inserted = read_bitvector(r)?;
            let inserted_by_char = read_char_marks(r)?;
            let extra = read_sequence(r)?;
            let rel = assemble_relative(
                reference.shared_bwt(),
                removed,
                removed_by_char,
                inserted,
                inserted_by_char,
                extra,
            )?;
            Ok(StoredIndex::Relative {
                index: RelativeFMIndex::from_parts(reference, rel),
                with_select: true,
            })
        }
        3 => {
            let base = Arc::new(read_sequence(r)?);
            let rel = read_relative(r, base)?;
            Ok(StoredIndex::RawRelative(rel))
        }
        mode => Err(Error::Corrupt(format!("unknown container mode {mode}"))),
    }
}

/// Rebuilds the per-character inserted marks that mode 1 omits: the
/// target string is reconstructed character by character from the
/// stored sections, then the select-side table is derived from it.
fn rebuild_select_side(
    base: Arc<IndexedSequence>,
    removed: BitVector,
    removed_by_char: CharMarks,
    inserted: BitVector,
    extra: IndexedSequence,
) -> Result<RelativeSelect> {
    if removed.len() != base.len() {
        return Err(Error::Corrupt(
            "removed marks do not cover the base string".into(),
        ));
    }
    if extra.len() != inserted.count_ones() {
        return Err(Error::Corrupt(
            "extra characters do not match the inserted marks".into(),
        ));
    }
    let sub = SubsequenceSelect::from_parts(removed, removed_by_char);
    let n2 = inserted.len();
    let mut target = Vec::with_capacity(n2);
    let mut mask = Vec::with_capacity(n2);
    for i in 1..=n2 {
        if inserted.get(i)? {
            target.push(extra.access(inserted.rank1(i)?)?);
            mask.push(true);
        } else {
            target.push(sub.access(&base, inserted.rank0(i)?)?);
            mask.push(false);
        }
    }
    let sup = SupersequenceSelect::build(&sub.subsequence_counts(), &target, &mask)
        .map_err(|e| Error::Corrupt(e.to_string()))?;
    Ok(RelativeSelect::from_parts(base, sub, sup))
}
