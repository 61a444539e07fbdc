//! Strings over small alphabets with `access`, per-character `rank`, and
//! per-character `select`.
//!
//! The representation is a balanced binary decomposition of the alphabet
//! (wavelet-tree shaped): each internal node splits the alphabet range in
//! half and stores one [`BitVector`] routing every symbol of its range to
//! the left (0) or right (1) half. Queries cost O(log sigma) bit-vector
//! operations. The alphabet is the set of distinct bytes in the text,
//! ordered ascending, and is limited to 64 symbols.

use crate::bits::BitVector;
use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 64;

/// An immutable sequence index over a byte string.
///
/// Positions are 1-based; `rank` takes a prefix length in `0..=len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSequence {
    len: usize,
    alphabet: Vec<u8>,
    counts: Vec<usize>,
    root: Option<Box<Node>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    bits: BitVector,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

impl IndexedSequence {
    /// Indexes `text`. Fails if the text has more than
    /// [`MAX_ALPHABET`] distinct byte values.
    pub fn build(text: &[u8]) -> Result<Self> {
        let mut alphabet: Vec<u8> = text.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.len() > MAX_ALPHABET {
            return Err(Error::UnsupportedAlphabet {
                found: alphabet.len(),
                limit: MAX_ALPHABET,
            });
        }
        let ranks: Vec<u8> = text
            .iter()
            .map(|b| alphabet.binary_search(b).expect("in alphabet") as u8)
            .collect();
        let root = build_node(&ranks, 0, alphabet.len());
        let mut counts = vec![0usize; alphabet.len()];
        for &r in &ranks {
            counts[r as usize] += 1;
        }
        Ok(IndexedSequence {
            len: text.len(),
            alphabet,
            counts,
            root,
        })
    }

    /// Sequence length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The distinct symbols, ascending.
    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    /// Number of occurrences of `x` in the whole sequence.
    pub fn occ(&self, x: u8) -> usize {
        match self.alphabet.binary_search(&x) {
            Ok(r) => self.counts[r],
            Err(_) => 0,
        }
    }

    /// The character at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u8> {
        if i < 1 || i > self.len {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len,
            });
        }
        let mut lo = 0;
        let mut hi = self.alphabet.len();
        let mut node = &self.root;
        let mut pos = i;
        while hi - lo > 1 {
            let n = node.as_ref().expect("internal range has a node");
            let mid = (lo + hi) / 2;
            if n.bits.get(pos)? {
                pos = n.bits.rank1(pos)?;
                lo = mid;
                node = &n.right;
            } else {
                pos = n.bits.rank0(pos)?;
                hi = mid;
                node = &n.left;
            }
        }
        Ok(self.alphabet[lo])
    }

    /// Number of occurrences of `x` among positions `1..=i`.
    /// Characters outside the alphabet have rank 0 everywhere.
    pub fn rank(&self, x: u8, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len,
            });
        }
        let r = match self.alphabet.binary_search(&x) {
            Ok(r) => r,
            Err(_) => return Ok(0),
        };
        let mut lo = 0;
        let mut hi = self.alphabet.len();
        let mut node = &self.root;
        let mut pos = i;
        while hi - lo > 1 {
            let n = node.as_ref().expect("internal range has a node");
            let mid = (lo + hi) / 2;
            if r >= mid {
                pos = n.bits.rank1(pos)?;
                lo = mid;
                node = &n.right;
            } else {
                pos = n.bits.rank0(pos)?;
                hi = mid;
                node = &n.left;
            }
        }
        Ok(pos)
    }

    /// 1-based position of the `j`-th occurrence of `x`.
    pub fn select(&self, x: u8, j: usize) -> Result<usize> {
        let available = self.occ(x);
        if j < 1 || j > available {
            return Err(Error::NotFound { rank: j, available });
        }
        let r = self.alphabet.binary_search(&x).expect("occ > 0");
        let mut path: Vec<(&Node, bool)> = Vec::new();
        let mut lo = 0;
        let mut hi = self.alphabet.len();
        let mut node = &self.root;
        while hi - lo > 1 {
            let n = node.as_ref().expect("internal range has a node");
            let mid = (lo + hi) / 2;
            if r >= mid {
                path.push((n, true));
                lo = mid;
                node = &n.right;
            } else {
                path.push((n, false));
                hi = mid;
                node = &n.left;
            }
        }
        let mut pos = j;
        for (n, bit) in path.into_iter().rev() {
            pos = n.bits.select(bit, pos)?;
        }
        Ok(pos)
    }

    /// Iterates over the characters in order.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.len).map(move |i| self.access(i).expect("in range"))
    }

    /// Reconstructs the underlying text.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.iter().collect()
    }

    /// Node bit vectors in preorder, for serialization.
    pub(crate) fn node_bits(&self) -> Vec<&BitVector> {
        fn walk<'a>(node: &'a Option<Box<Node>>, out: &mut Vec<&'a BitVector>) {
            if let Some(n) = node {
                out.push(&n.bits);
                walk(&n.left, out);
                walk(&n.right, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Rebuilds from an alphabet plus preorder node bit vectors, the
    /// inverse of [`IndexedSequence::node_bits`].
    pub(crate) fn from_parts(
        len: usize,
        alphabet: Vec<u8>,
        nodes: &mut impl Iterator<Item = BitVector>,
    ) -> Result<Self> {
        fn assemble(
            lo: usize,
            hi: usize,
            nodes: &mut impl Iterator<Item = BitVector>,
        ) -> Result<Option<Box<Node>>> {
            if hi - lo <= 1 {
                return Ok(None);
            }
            let bits = nodes
                .next()
                .ok_or_else(|| Error::Corrupt("missing sequence node".into()))?;
            let mid = (lo + hi) / 2;
            let left = assemble(lo, mid, nodes)?;
            let right = assemble(mid, hi, nodes)?;
            Ok(Some(Box::new(Node { bits, left, right })))
        }
        if alphabet.len() > MAX_ALPHABET {
            return Err(Error::Corrupt("alphabet too large".into()));
        }
        let root = assemble(0, alphabet.len(), nodes)?;
        if let Some(n) = &root {
            if n.bits.len() != len {
                return Err(Error::Corrupt("root node length mismatch".into()));
            }
        } else if alphabet.is_empty() && len != 0 {
            return Err(Error::Corrupt("empty alphabet with nonzero length".into()));
        }
        let mut seq = IndexedSequence {
            len,
            counts: vec![0; alphabet.len()],
            alphabet,
            root,
        };
        for r in 0..seq.alphabet.len() {
            seq.counts[r] = seq.rank(seq.alphabet[r], len)?;
        }
        if seq.counts.iter().sum::<usize>() != len {
            return Err(Error::Corrupt("character counts do not cover text".into()));
        }
        Ok(seq)
    }
}

fn build_node(ranks: &[u8], lo: usize, hi: usize) -> Option<Box<Node>> {
    if hi - lo <= 1 {
        return None;
    }
    let mid = (lo + hi) / 2;
    let bits = BitVector::from_bits(ranks.iter().map(|&r| (r as usize) >= mid));
    let left_ranks: Vec<u8> = ranks.iter().copied().filter(|&r| (r as usize) < mid).collect();
    let right_ranks: Vec<u8> = ranks.iter().copied().filter(|&r| (r as usize) >= mid).collect();
    let left = build_node(&left_ranks, lo, mid);
    let right = build_node(&right_ranks, mid, hi);
    Some(Box::new(Node { bits, left, right }))
}
