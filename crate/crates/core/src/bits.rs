//! Bit vectors with rank and select in both polarities.
//!
//! Positions are 1-based and `rank` takes a prefix *length* in `0..=n`,
//! so `rank1(i)` counts set bits among positions `1..=i`. Two
//! representations sit behind the same interface: a dense bit-packed
//! vector with sampled rank blocks, and a sparse Elias-Fano encoding of
//! the set positions used automatically when fewer than 1/16 of the bits
//! are set. Marker vectors over mostly-unchanged strings are exactly the
//! sparse case, which is what keeps the extra structure proportional to
//! the number of edits rather than the string length.

use crate::error::{Error, Result};

const BLOCK_WORDS: usize = 8; // 512-bit rank blocks
const SPARSE_DENOMINATOR: usize = 16;

/// An immutable bit vector supporting `rank0/rank1/select0/select1`.
///
/// Queries never mutate; concurrent reads from multiple threads are safe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVector {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Dense(DenseBits),
    Sparse(SparseBits),
}

impl BitVector {
    /// Builds a vector over exactly the given bits, choosing the
    /// representation from the density of set bits.
    pub fn build(bits: &[bool]) -> Self {
        let ones: Vec<usize> = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i + 1))
            .collect();
        Self::from_parts(bits.len(), &ones)
    }

    /// Builds from an iterator of bits.
    pub fn from_bits<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let bits: Vec<bool> = iter.into_iter().collect();
        Self::build(&bits)
    }

    /// Builds from the strictly increasing 1-based positions of the set
    /// bits. Produces the same vector as [`BitVector::build`] on the
    /// equivalent bit sequence.
    pub fn from_set_positions(len: usize, ones: &[usize]) -> Result<Self> {
        for (k, &p) in ones.iter().enumerate() {
            if p < 1 || p > len {
                return Err(Error::OutOfRange { index: p, len });
            }
            if k > 0 && ones[k - 1] >= p {
                return Err(Error::InvalidInput(
                    "set positions must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self::from_parts(len, ones))
    }

    fn from_parts(len: usize, ones: &[usize]) -> Self {
        let repr = if len > 0 && ones.len() * SPARSE_DENOMINATOR < len {
            Repr::Sparse(SparseBits::new(len, ones))
        } else {
            Repr::Dense(DenseBits::new(len, ones))
        };
        BitVector { repr }
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Dense(d) => d.len,
            Repr::Sparse(s) => s.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        match &self.repr {
            Repr::Dense(d) => d.ones,
            Repr::Sparse(s) => s.positions_len(),
        }
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    /// Number of occurrences of `bit` in the whole vector.
    pub fn count(&self, bit: bool) -> usize {
        if bit {
            self.count_ones()
        } else {
            self.count_zeros()
        }
    }

    /// The bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        if i < 1 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(match &self.repr {
            Repr::Dense(d) => d.get(i - 1),
            Repr::Sparse(s) => s.rank1(i) - s.rank1(i - 1) == 1,
        })
    }

    /// Number of occurrences of `bit` among positions `1..=i`.
    /// `i` is a prefix length in `0..=len`.
    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        if i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let ones = match &self.repr {
            Repr::Dense(d) => d.rank1(i),
            Repr::Sparse(s) => s.rank1(i),
        };
        Ok(if bit { ones } else { i - ones })
    }

    pub fn rank1(&self, i: usize) -> Result<usize> {
        self.rank(true, i)
    }

    pub fn rank0(&self, i: usize) -> Result<usize> {
        self.rank(false, i)
    }

    /// 1-based position of the `j`-th occurrence of `bit` (`j >= 1`).
    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let available = self.count(bit);
        if j < 1 || j > available {
            return Err(Error::NotFound { rank: j, available });
        }
        Ok(match (&self.repr, bit) {
            (Repr::Dense(d), true) => d.select1(j) + 1,
            (Repr::Dense(d), false) => d.select0(j) + 1,
            (Repr::Sparse(s), true) => s.select1(j) + 1,
            (Repr::Sparse(s), false) => s.select0(j) + 1,
        })
    }

    pub fn select1(&self, j: usize) -> Result<usize> {
        self.select(true, j)
    }

    pub fn select0(&self, j: usize) -> Result<usize> {
        self.select(false, j)
    }

    /// Iterates over all bits in order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len()).map(move |i| self.get(i).expect("in range"))
    }

    /// Iterates over the 1-based positions of the set bits.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.count_ones()).map(move |j| self.select1(j).expect("in range"))
    }

    /// Whether the sparse representation was chosen.
    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    /// Raw words of the dense representation, if dense.
    pub(crate) fn dense_words(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Dense(d) => Some(&d.words),
            Repr::Sparse(_) => None,
        }
    }

    /// Rebuilds a dense vector from its raw words.
    pub(crate) fn from_dense_words(len: usize, words: Vec<u64>) -> Result<Self> {
        if words.len() != len.div_ceil(64) {
            return Err(Error::InvalidInput(format!(
                "{} words cannot hold {len} bits",
                words.len()
            )));
        }
        Ok(BitVector {
            repr: Repr::Dense(DenseBits::from_words(len, words)),
        })
    }

    /// The bits rendered as a `0`/`1` string, most useful for dumps.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

/// Bit-packed vector with 512-bit cumulative rank blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct DenseBits {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    // blocks[b] = number of set bits in words[..b * BLOCK_WORDS]
    blocks: Vec<u64>,
}

impl DenseBits {
    fn new(len: usize, ones: &[usize]) -> Self {
        let n_words = len.div_ceil(64);
        let mut words = vec![0u64; n_words];
        for &p in ones {
            let i = p - 1;
            words[i / 64] |= 1 << (i % 64);
        }
        Self::from_words(len, words)
    }

    fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        debug_assert!(words.len() == len.div_ceil(64));
        // Mask bits beyond len so popcounts stay exact.
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        let n_blocks = words.len().div_ceil(BLOCK_WORDS);
        let mut blocks = Vec::with_capacity(n_blocks + 1);
        let mut acc = 0u64;
        blocks.push(0);
        for chunk in words.chunks(BLOCK_WORDS) {
            acc += chunk.iter().map(|w| w.count_ones() as u64).sum::<u64>();
            blocks.push(acc);
        }
        DenseBits {
            len,
            ones: acc as usize,
            words,
            blocks,
        }
    }

    fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Set bits among 0-based positions `[0, i)`.
    fn rank1(&self, i: usize) -> usize {
        let block = i / (BLOCK_WORDS * 64);
        let mut count = self.blocks[block] as usize;
        let word_end = i / 64;
        for w in &self.words[block * BLOCK_WORDS..word_end] {
            count += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            let w = self.words[word_end] & ((1u64 << (i % 64)) - 1);
            count += w.count_ones() as usize;
        }
        count
    }

    /// 0-based position of the `j`-th set bit, `1 <= j <= ones`.
    fn select1(&self, j: usize) -> usize {
        let j64 = j as u64;
        let block = self.blocks.partition_point(|&c| c < j64) - 1;
        let mut remaining = j - self.blocks[block] as usize;
        for (k, &w) in self.words[block * BLOCK_WORDS..].iter().enumerate() {
            let cnt = w.count_ones() as usize;
            if remaining <= cnt {
                return (block * BLOCK_WORDS + k) * 64 + select_in_word(w, remaining);
            }
            remaining -= cnt;
        }
        unreachable!("select1 out of range despite count check")
    }

    /// 0-based position of the `j`-th unset bit, `1 <= j <= len - ones`.
    fn select0(&self, j: usize) -> usize {
        // Zeros before block b, capped at len to skip padding bits.
        let zeros_before = |b: usize| (b * BLOCK_WORDS * 64).min(self.len) - self.blocks[b] as usize;
        let mut lo = 0;
        let mut hi = self.blocks.len() - 1;
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if zeros_before(mid) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let block = lo;
        let mut remaining = j - zeros_before(block);
        for (k, &w) in self.words[block * BLOCK_WORDS..].iter().enumerate() {
            let offset = (block * BLOCK_WORDS + k) * 64;
            let valid = (self.len - offset).min(64);
            let zeros = valid - w.count_ones() as usize;
            if remaining <= zeros {
                return offset + select_in_word(!w, remaining);
            }
            remaining -= zeros;
        }
        unreachable!("select0 out of range despite count check")
    }
}

/// 0-based position of the `j`-th (1-based) set bit of `w`.
fn select_in_word(mut w: u64, j: usize) -> usize {
    for _ in 1..j {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}

/// Elias-Fano encoding of the set positions: low `low_width` bits packed
/// verbatim, high parts in unary inside `high`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SparseBits {
    len: usize,
    count: usize,
    low_width: u32,
    low: Vec<u64>,
    high: DenseBits,
    buckets: usize,
}

impl SparseBits {
    fn new(len: usize, ones: &[usize]) -> Self {
        let m = ones.len();
        let low_width = len.checked_div(m).map_or(0, |q| q.max(1).ilog2());
        let buckets = if len == 0 {
            1
        } else {
            ((len - 1) >> low_width) + 1
        };
        let mut low = vec![0u64; ((m as u64 * low_width as u64).div_ceil(64)) as usize];
        let mut high_ones = Vec::with_capacity(m);
        for (k, &p) in ones.iter().enumerate() {
            let v = (p - 1) as u64; // 0-based value
            let h = (v >> low_width) as usize;
            high_ones.push(h + k + 1); // 1-based position in high
            if low_width > 0 {
                let l = v & ((1u64 << low_width) - 1);
                let bit = k as u64 * low_width as u64;
                let (wi, off) = ((bit / 64) as usize, (bit % 64) as u32);
                low[wi] |= l << off;
                if off + low_width > 64 {
                    low[wi + 1] |= l >> (64 - off);
                }
            }
        }
        let high_len = m + buckets;
        let high = DenseBits::new(high_len, &high_ones);
        SparseBits {
            len,
            count: m,
            low_width,
            low,
            high,
            buckets,
        }
    }

    fn positions_len(&self) -> usize {
        self.count
    }

    fn low_value(&self, k: usize) -> u64 {
        if self.low_width == 0 {
            return 0;
        }
        let bit = k as u64 * self.low_width as u64;
        let (wi, off) = ((bit / 64) as usize, (bit % 64) as u32);
        let mut v = self.low[wi] >> off;
        if off + self.low_width > 64 {
            v |= self.low[wi + 1] << (64 - off);
        }
        v & ((1u64 << self.low_width) - 1)
    }

    /// 0-based value of the `k`-th (0-based) set position.
    fn one_value(&self, k: usize) -> usize {
        let p = self.high.select1(k + 1); // 0-based pos in high
        let h = p - k; // zeros before = bucket index
        ((h as u64) << self.low_width | self.low_value(k)) as usize
    }

    /// Set bits among 1-based positions `1..=i` (prefix length `i`).
    fn rank1(&self, i: usize) -> usize {
        if self.count == 0 || i == 0 {
            return 0;
        }
        // Count set positions with 0-based value < i.
        let h = i >> self.low_width;
        if h >= self.buckets {
            return self.count;
        }
        // The t-th zero of `high` (0-based position select0(t)) closes
        // bucket t-1, with select0(t) + 1 - t set bits before it.
        let start = if h == 0 {
            0
        } else {
            self.high.select0(h) + 1 - h
        };
        let end = self.high.select0(h + 1) - h;
        let residue = (i - (h << self.low_width)) as u64;
        let mut lo = start;
        let mut hi = end;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.low_value(mid) < residue {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// 0-based position of the `j`-th set bit.
    fn select1(&self, j: usize) -> usize {
        self.one_value(j - 1)
    }

    /// 0-based position of the `j`-th unset bit.
    fn select0(&self, j: usize) -> usize {
        // Find how many set positions precede the j-th zero.
        let mut lo = 0;
        let mut hi = self.count;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.one_value(mid) < j + mid {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        j - 1 + lo
    }
}
