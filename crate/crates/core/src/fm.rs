//! Burrows-Wheeler transforms and the FM-index query layer: the
//! smaller-character table, LF, Ψ (select-based and the binary-search
//! fallback over rank), and the relative index that answers all of them
//! on a second string's BWT through the first string's index.
//!
//! Production BWTs are sentinel-terminated: a `$` byte, smaller than
//! every allowed text byte, is appended before sorting, which makes the
//! transform invertible and LF/Ψ well-defined. A rotation-sorted variant
//! without a sentinel is also provided for comparing conventions on
//! small inputs.

use std::sync::Arc;

use crate::alignment::{common_subsequence, Alignment};
use crate::error::{Error, Result};
use crate::relative::RelativeSelect;
use crate::sequence::IndexedSequence;

/// Terminator byte appended to texts before suffix sorting. Every text
/// byte must be strictly greater, so the natural byte order already
/// places the sentinel first.
pub const SENTINEL: u8 = b'$';

/// Text length at which suffix sorting switches from direct comparison
/// to prefix doubling.
const DOUBLING_THRESHOLD: usize = 1 << 16;

/// The sorted suffixes of a sentinel-terminated text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArray {
    text: Vec<u8>, // original text plus sentinel
    sa: Vec<u32>,  // 1-based suffix start positions in sorted order
}

impl SuffixArray {
    /// Sorts the suffixes of `text` plus an appended sentinel.
    pub fn build(text: &[u8]) -> Result<Self> {
        check_text(text)?;
        let mut t = Vec::with_capacity(text.len() + 1);
        t.extend_from_slice(text);
        t.push(SENTINEL);
        let sa = if t.len() < DOUBLING_THRESHOLD {
            sort_suffixes_naive(&t)
        } else {
            sort_suffixes_doubling(&t)
        };
        Ok(SuffixArray { text: t, sa })
    }

    /// Number of suffixes (text length plus one for the sentinel).
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// 1-based suffix start positions in lexicographic order.
    pub fn positions(&self) -> &[u32] {
        &self.sa
    }

    /// The sentinel-terminated text.
    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Last column of the sorted-suffix matrix, sentinel included.
    pub fn bwt(&self) -> Vec<u8> {
        let n = self.text.len();
        self.sa
            .iter()
            .map(|&s| {
                let s = s as usize;
                if s == 1 {
                    self.text[n - 1]
                } else {
                    self.text[s - 2]
                }
            })
            .collect()
    }

    /// Inverse permutation: `inverse()[start - 1]` is the 1-based row of
    /// the suffix beginning at `start`.
    pub fn inverse(&self) -> Vec<u32> {
        let mut isa = vec![0u32; self.sa.len()];
        for (row, &start) in self.sa.iter().enumerate() {
            isa[start as usize - 1] = row as u32 + 1;
        }
        isa
    }
}

fn check_text(text: &[u8]) -> Result<()> {
    if let Some(pos) = text.iter().position(|&b| b <= SENTINEL) {
        return Err(Error::InvalidInput(format!(
            "byte {:#04x} at position {} is not above the sentinel {:?}",
            text[pos],
            pos + 1,
            SENTINEL as char
        )));
    }
    Ok(())
}

fn sort_suffixes_naive(t: &[u8]) -> Vec<u32> {
    let mut sa: Vec<u32> = (1..=t.len() as u32).collect();
    sa.sort_unstable_by(|&a, &b| t[a as usize - 1..].cmp(&t[b as usize - 1..]));
    sa
}

/// Prefix-doubling suffix sort with radix passes.
fn sort_suffixes_doubling(t: &[u8]) -> Vec<u32> {
    let n = t.len();
    let mut rank: Vec<u32> = t.iter().map(|&b| b as u32 + 1).collect();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut buf = vec![0u32; n];
    let mut new_rank = vec![0u32; n];
    let mut counts: Vec<u32> = Vec::new();

    // Stable counting sort of `src` into `dst` by `key`.
    fn pass(
        src: &[u32],
        dst: &mut [u32],
        key: impl Fn(u32) -> u32,
        max_key: u32,
        counts: &mut Vec<u32>,
    ) {
        counts.clear();
        counts.resize(max_key as usize + 1, 0);
        for &i in src {
            counts[key(i) as usize] += 1;
        }
        let mut sum = 0u32;
        for c in counts.iter_mut() {
            let here = *c;
            *c = sum;
            sum += here;
        }
        for &i in src {
            let slot = &mut counts[key(i) as usize];
            dst[*slot as usize] = i;
            *slot += 1;
        }
    }

    let mut max_rank = 256u32;
    pass(&sa.clone(), &mut sa, |i| rank[i as usize], max_rank, &mut counts);
    let mut k = 1usize;
    loop {
        let second = |i: u32| {
            let j = i as usize + k;
            if j < n {
                rank[j]
            } else {
                0
            }
        };
        pass(&sa, &mut buf, second, max_rank, &mut counts);
        pass(&buf, &mut sa, |i| rank[i as usize], max_rank, &mut counts);

        new_rank[sa[0] as usize] = 1;
        let mut r = 1u32;
        for w in 0..n - 1 {
            let (a, b) = (sa[w] as usize, sa[w + 1] as usize);
            if rank[a] != rank[b] || second(sa[w]) != second(sa[w + 1]) {
                r += 1;
            }
            new_rank[b] = r;
        }
        std::mem::swap(&mut rank, &mut new_rank);
        max_rank = r;
        if r as usize == n {
            break;
        }
        k *= 2;
    }
    sa.iter_mut().for_each(|s| *s += 1);
    sa
}

/// BWT of `text` with the sentinel appended; output length is
/// `text.len() + 1` and includes the sentinel byte.
pub fn bwt_of(text: &[u8]) -> Result<Vec<u8>> {
    Ok(SuffixArray::build(text)?.bwt())
}

/// Inverts a sentinel-terminated BWT produced by [`bwt_of`].
pub fn inverse_bwt(bwt: &[u8]) -> Result<Vec<u8>> {
    let n = bwt.len();
    let sentinels = bwt.iter().filter(|&&b| b == SENTINEL).count();
    if sentinels != 1 {
        return Err(Error::InvalidInput(format!(
            "transform must contain exactly one sentinel, found {sentinels}"
        )));
    }
    let mut count = [0usize; 256];
    for &b in bwt {
        count[b as usize] += 1;
    }
    let mut smaller = [0usize; 256];
    let mut acc = 0;
    for b in 0..256 {
        smaller[b] = acc;
        acc += count[b];
    }
    let mut running = [0usize; 256];
    let mut lf = vec![0u32; n];
    for (i, &b) in bwt.iter().enumerate() {
        running[b as usize] += 1;
        lf[i] = (smaller[b as usize] + running[b as usize]) as u32;
    }
    // Row 1 is the bare-sentinel suffix; walking LF yields the text
    // right to left. Hitting the sentinel early means the permutation
    // cycle is shorter than the string: not a valid transform.
    let mut out = vec![0u8; n - 1];
    let mut row = 1usize;
    for k in (0..n - 1).rev() {
        let b = bwt[row - 1];
        if b == SENTINEL {
            return Err(Error::InvalidInput(
                "transform is not a single permutation cycle".into(),
            ));
        }
        out[k] = b;
        row = lf[row - 1] as usize;
    }
    if bwt[row - 1] != SENTINEL {
        return Err(Error::InvalidInput(
            "transform is not a single permutation cycle".into(),
        ));
    }
    Ok(out)
}

/// Rotation-sorted BWT without a sentinel: sorts all cyclic rotations
/// and takes the last column. Quadratic comparisons; intended for small
/// demonstration inputs.
pub fn bwt_cyclic(text: &[u8]) -> Vec<u8> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut doubled = Vec::with_capacity(2 * n);
    doubled.extend_from_slice(text);
    doubled.extend_from_slice(text);
    let mut rots: Vec<usize> = (0..n).collect();
    rots.sort_by(|&a, &b| doubled[a..a + n].cmp(&doubled[b..b + n]));
    rots.iter().map(|&r| text[(r + n - 1) % n]).collect()
}

/// Removes the sentinel byte from a BWT, giving the sentinel-free form
/// in which such transforms are usually displayed.
pub fn strip_sentinel(bwt: &[u8]) -> Vec<u8> {
    bwt.iter().copied().filter(|&b| b != SENTINEL).collect()
}

/// Access/rank index over a BWT plus the smaller-character table,
/// answering LF and Ψ.
#[derive(Clone, Debug)]
pub struct FMIndex {
    bwt: Arc<IndexedSequence>,
    smaller: Vec<usize>, // smaller[k] = occurrences of characters below alphabet[k]
}

impl FMIndex {
    /// Builds the index for the BWT of `text`.
    pub fn from_text(text: &[u8]) -> Result<Self> {
        let bwt = bwt_of(text)?;
        Self::from_bwt(&bwt)
    }

    /// Builds the index over an existing BWT string.
    pub fn from_bwt(bwt: &[u8]) -> Result<Self> {
        Ok(Self::from_indexed(Arc::new(IndexedSequence::build(bwt)?)))
    }

    /// Wraps an already-indexed BWT.
    pub fn from_indexed(bwt: Arc<IndexedSequence>) -> Self {
        let mut smaller = Vec::with_capacity(bwt.alphabet().len());
        let mut acc = 0;
        for &c in bwt.alphabet() {
            smaller.push(acc);
            acc += bwt.occ(c);
        }
        FMIndex { bwt, smaller }
    }

    /// Number of BWT rows.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    /// The indexed BWT.
    pub fn bwt(&self) -> &IndexedSequence {
        &self.bwt
    }

    /// Shared handle to the indexed BWT.
    pub fn shared_bwt(&self) -> Arc<IndexedSequence> {
        Arc::clone(&self.bwt)
    }

    /// Occurrences of characters smaller than `x` in the BWT.
    pub fn smaller_count(&self, x: u8) -> usize {
        match self.bwt.alphabet().binary_search(&x) {
            Ok(k) => self.smaller[k],
            Err(k) => self.smaller.get(k).copied().unwrap_or(self.len()),
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Character of the first (sorted) column at row `i`, with its
    /// occurrence rank within that character's run.
    fn first_column(&self, i: usize) -> (u8, usize) {
        let k = self.smaller.partition_point(|&c| c < i) - 1;
        (self.bwt.alphabet()[k], i - self.smaller[k])
    }

    /// Row of the character preceding row `i`'s suffix.
    pub fn lf(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let c = self.bwt.access(i)?;
        Ok(self.smaller_count(c) + self.bwt.rank(c, i)?)
    }

    /// Inverse of [`FMIndex::lf`], via one select on the BWT.
    pub fn psi(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let (c, j) = self.first_column(i);
        self.bwt.select(c, j)
    }

    /// Same contract as [`FMIndex::psi`] but implemented by binary
    /// searching rank queries, for indexes without fast select.
    pub fn psi_binary(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let (c, j) = self.first_column(i);
        psi_by_rank(|p| self.bwt.rank(c, p), self.len(), j)
    }
}

/// Smallest `p` with `rank(p) >= j`, by binary search.
fn psi_by_rank(rank: impl Fn(usize) -> Result<usize>, n: usize, j: usize) -> Result<usize> {
    let mut lo = 1usize;
    let mut hi = n;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if rank(mid)? >= j {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Derives a common subsequence of two BWTs from a common subsequence of
/// their texts: each matched text character is mapped to its BWT row
/// through the suffix arrays, and the longest strictly increasing chain
/// of row pairs is kept.
pub fn bwt_alignment(
    sa1: &SuffixArray,
    sa2: &SuffixArray,
    text_alignment: &Alignment,
) -> Result<Alignment> {
    if text_alignment.n1() + 1 != sa1.len() || text_alignment.n2() + 1 != sa2.len() {
        return Err(Error::InvalidInput(
            "alignment does not cover the suffix-sorted texts".into(),
        ));
    }
    let isa1 = sa1.inverse();
    let isa2 = sa2.inverse();
    // Character at text position p sits at BWT row isa[p + 1]; the
    // sentinel pair always matches.
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(text_alignment.len_c() + 1);
    pairs.push((isa1[0], isa2[0]));
    for (p, q) in text_alignment.matches() {
        pairs.push((isa1[p], isa2[q]));
    }
    pairs.sort_unstable();
    let chain = longest_increasing_chain(&pairs);
    Alignment::new(sa1.len(), sa2.len(), chain)
}

/// Longest subsequence of `pairs` (sorted and strictly increasing in the
/// first coordinate) that is strictly increasing in the second.
fn longest_increasing_chain(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    const NONE: u32 = u32::MAX;
    let mut tails: Vec<u32> = Vec::new(); // smallest tail value per length
    let mut tail_idx: Vec<u32> = Vec::new();
    let mut prev: Vec<u32> = vec![NONE; pairs.len()];
    for (idx, &(_, q)) in pairs.iter().enumerate() {
        let pos = tails.partition_point(|&t| t < q);
        prev[idx] = if pos > 0 { tail_idx[pos - 1] } else { NONE };
        if pos == tails.len() {
            tails.push(q);
            tail_idx.push(idx as u32);
        } else {
            tails[pos] = q;
            tail_idx[pos] = idx as u32;
        }
    }
    let mut chain = Vec::with_capacity(tails.len());
    let mut at = *tail_idx.last().unwrap_or(&NONE);
    while at != NONE {
        chain.push(pairs[at as usize]);
        at = prev[at as usize];
    }
    chain.reverse();
    chain
}

/// FM-index functionality for a target text answered through the
/// reference text's index plus edit-proportional extra structure.
#[derive(Clone, Debug)]
pub struct RelativeFMIndex {
    reference: FMIndex,
    relative: RelativeSelect,
    smaller2: Vec<usize>,
    alphabet2: Vec<u8>,
}

impl RelativeFMIndex {
    /// Builds both BWTs, aligns them, and keeps only the reference index
    /// plus the relative structures. The text alignment is computed here;
    /// for large generated inputs prefer
    /// [`RelativeFMIndex::build_with_alignment`] with the known alignment.
    pub fn build(reference_text: &[u8], target_text: &[u8]) -> Result<Self> {
        let alignment = common_subsequence(reference_text, target_text);
        Self::build_with_alignment(reference_text, target_text, &alignment)
    }

    /// Builds from a known common subsequence of the two texts.
    pub fn build_with_alignment(
        reference_text: &[u8],
        target_text: &[u8],
        text_alignment: &Alignment,
    ) -> Result<Self> {
        text_alignment.check_matches(reference_text, target_text)?;
        let sa1 = SuffixArray::build(reference_text)?;
        let sa2 = SuffixArray::build(target_text)?;
        let balign = bwt_alignment(&sa1, &sa2, text_alignment)?;
        let bwt1 = sa1.bwt();
        let bwt2 = sa2.bwt();
        drop(sa1);
        drop(sa2);
        let reference = FMIndex::from_bwt(&bwt1)?;
        let relative = RelativeSelect::build(reference.shared_bwt(), &bwt2, &balign)?;
        Ok(Self::assemble(reference, relative, &bwt2))
    }

    /// Assembles from prebuilt parts; the target BWT is only used to
    /// derive its character table.
    pub(crate) fn assemble(reference: FMIndex, relative: RelativeSelect, bwt2: &[u8]) -> Self {
        let mut alphabet2: Vec<u8> = bwt2.to_vec();
        alphabet2.sort_unstable();
        alphabet2.dedup();
        let mut counts = vec![0usize; alphabet2.len()];
        for &b in bwt2 {
            counts[alphabet2.binary_search(&b).expect("in alphabet")] += 1;
        }
        let mut smaller2 = Vec::with_capacity(alphabet2.len());
        let mut acc = 0;
        for &c in &counts {
            smaller2.push(acc);
            acc += c;
        }
        RelativeFMIndex {
            reference,
            relative,
            smaller2,
            alphabet2,
        }
    }

    /// Composes an index from a reference index and a relative structure
    /// over the target BWT. The relative structure must query through
    /// the reference's own BWT index.
    pub fn from_components(reference: FMIndex, relative: RelativeSelect) -> Result<Self> {
        if !Arc::ptr_eq(relative.base(), &reference.shared_bwt()) {
            return Err(Error::InvalidInput(
                "relative structure does not share the reference index".into(),
            ));
        }
        Ok(Self::from_parts(reference, relative))
    }

    /// Rebuilds the character table from the relative structure itself.
    pub(crate) fn from_parts(reference: FMIndex, relative: RelativeSelect) -> Self {
        let alphabet2 = relative.alphabet().to_vec();
        let mut smaller2 = Vec::with_capacity(alphabet2.len());
        let mut acc = 0;
        for &c in &alphabet2 {
            smaller2.push(acc);
            acc += relative.occ(c);
        }
        RelativeFMIndex {
            reference,
            relative,
            smaller2,
            alphabet2,
        }
    }

    /// Rows of the target BWT.
    pub fn len(&self) -> usize {
        self.relative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relative.is_empty()
    }

    /// The reference index.
    pub fn reference(&self) -> &FMIndex {
        &self.reference
    }

    /// The relative select/rank/access structure over the target BWT.
    pub fn relative(&self) -> &RelativeSelect {
        &self.relative
    }

    /// Occurrences of characters smaller than `x` in the target BWT.
    pub fn smaller_count(&self, x: u8) -> usize {
        match self.alphabet2.binary_search(&x) {
            Ok(k) => self.smaller2[k],
            Err(k) => self.smaller2.get(k).copied().unwrap_or(self.len()),
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(())
    }

    fn first_column(&self, i: usize) -> (u8, usize) {
        let k = self.smaller2.partition_point(|&c| c < i) - 1;
        (self.alphabet2[k], i - self.smaller2[k])
    }

    /// LF over the target BWT via relative access and rank.
    pub fn lf(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let c = self.relative.access(i)?;
        Ok(self.smaller_count(c) + self.relative.rank(c, i)?)
    }

    /// Ψ over the target BWT via relative select.
    pub fn psi(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let (c, j) = self.first_column(i);
        self.relative.select(c, j)
    }

    /// Ψ via binary search over relative rank, the path available when
    /// no relative select structure is stored.
    pub fn psi_binary(&self, i: usize) -> Result<usize> {
        self.check_row(i)?;
        let (c, j) = self.first_column(i);
        psi_by_rank(|p| self.relative.rank(c, p), self.len(), j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn banana_golden() {
        assert_eq!(bwt_of(b"banana").unwrap(), b"annb$aa");
        assert_eq!(inverse_bwt(b"annb$aa").unwrap(), b"banana");
        assert_eq!(bwt_of(b"").unwrap(), b"$");
        assert_eq!(inverse_bwt(b"$").unwrap(), b"");
    }

    #[test]
    fn worked_example_transform_convention() {
        // The sentinel-stripped transforms of the running-example texts
        // reproduce the reference strings; the rotation-sorted variant
        // does not, which pins the convention.
        let b1 = bwt_of(b"GCACTTAGAGGTCAGT").unwrap();
        assert_eq!(strip_sentinel(&b1), b"TCTGCGTAAAAGGTGC");
        let b2 = bwt_of(b"GCACTAGACGTCAGT").unwrap();
        assert_eq!(strip_sentinel(&b2), b"TGCTCGTAAAACGCG");
        assert_ne!(bwt_cyclic(b"GCACTTAGAGGTCAGT"), b"TCTGCGTAAAAGGTGC".to_vec());
    }

    #[test]
    fn invalid_text_bytes_rejected() {
        assert!(matches!(
            SuffixArray::build(b"AC$GT"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            SuffixArray::build(&[b'A', 0x00, b'C']),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn invalid_transforms_rejected() {
        assert!(inverse_bwt(b"abc").is_err());
        assert!(inverse_bwt(b"a$b$").is_err());
        assert!(inverse_bwt(b"a$b").is_err()); // short permutation cycle
        assert!(inverse_bwt(b"").is_err());
    }

    fn random_dna(rng: &mut StdRng, len: usize) -> Vec<u8> {
        (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
    }

    #[test]
    fn doubling_matches_naive_sort() {
        let mut rng = StdRng::seed_from_u64(0xd0b);
        for _ in 0..60 {
            let len = rng.gen_range(0..=900);
            let text = random_dna(&mut rng, len);
            let mut t = text.clone();
            t.push(SENTINEL);
            assert_eq!(sort_suffixes_doubling(&t), sort_suffixes_naive(&t));
        }
        // Also exercise a low-entropy case.
        let mut t = vec![b'A'; 513];
        t.push(SENTINEL);
        assert_eq!(sort_suffixes_doubling(&t), sort_suffixes_naive(&t));
    }

    #[test]
    fn suffix_order_is_sorted() {
        let mut rng = StdRng::seed_from_u64(0x5a);
        for _ in 0..40 {
            let text = { let l = rng.gen_range(0..=256); random_dna(&mut rng, l) };
            let sa = SuffixArray::build(&text).unwrap();
            let t = sa.text();
            for w in sa.positions().windows(2) {
                assert!(t[w[0] as usize - 1..] < t[w[1] as usize - 1..]);
            }
        }
    }

    #[test]
    fn round_trip_random_texts() {
        let mut rng = StdRng::seed_from_u64(0x707);
        for _ in 0..300 {
            let text = { let l = rng.gen_range(0..=400); random_dna(&mut rng, l) };
            let b = bwt_of(&text).unwrap();
            assert_eq!(inverse_bwt(&b).unwrap(), text);
        }
    }

    #[test]
    fn cyclic_matches_rotation_oracle() {
        let mut rng = StdRng::seed_from_u64(0xc1c);
        for _ in 0..100 {
            let text = { let l = rng.gen_range(0..=64); random_dna(&mut rng, l) };
            let n = text.len();
            let mut rots: Vec<Vec<u8>> = (0..n)
                .map(|i| {
                    let mut r = text[i..].to_vec();
                    r.extend_from_slice(&text[..i]);
                    r
                })
                .collect();
            rots.sort();
            let expected: Vec<u8> = rots.iter().map(|r| *r.last().unwrap()).collect();
            assert_eq!(bwt_cyclic(&text), expected);
        }
    }

    #[test]
    fn lf_examples() {
        let fm = FMIndex::from_text(b"banana").unwrap();
        let n = fm.len();
        // Permutation check.
        let mut seen = vec![false; n + 1];
        for i in 1..=n {
            let v = fm.lf(i).unwrap();
            assert!(!seen[v]);
            seen[v] = true;
        }
        // The sentinel row maps to row 1.
        let sentinel_row = (1..=n).find(|&i| fm.bwt().access(i).unwrap() == SENTINEL).unwrap();
        assert_eq!(fm.lf(sentinel_row).unwrap(), 1);
        // Walking LF from row 1 spells the text backwards.
        let mut row = 1;
        let mut backwards = Vec::new();
        loop {
            let c = fm.bwt().access(row).unwrap();
            if c == SENTINEL {
                break;
            }
            backwards.push(c);
            row = fm.lf(row).unwrap();
        }
        assert_eq!(backwards, b"ananab");
        assert!(matches!(fm.lf(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(fm.lf(n + 1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn psi_is_inverse_of_lf() {
        let fm = FMIndex::from_text(b"banana").unwrap();
        for i in 1..=fm.len() {
            assert_eq!(fm.psi(fm.lf(i).unwrap()).unwrap(), i);
            assert_eq!(fm.lf(fm.psi(i).unwrap()).unwrap(), i);
        }
        // Row 1 precedes the text start, so psi(1) is the sentinel row.
        let sentinel_row = (1..=fm.len())
            .find(|&i| fm.bwt().access(i).unwrap() == SENTINEL)
            .unwrap();
        assert_eq!(fm.psi(1).unwrap(), sentinel_row);
    }

    #[test]
    fn psi_matches_suffix_array_definition() {
        let mut rng = StdRng::seed_from_u64(0x951);
        for _ in 0..50 {
            let text = { let l = rng.gen_range(0..=300); random_dna(&mut rng, l) };
            let sa = SuffixArray::build(&text).unwrap();
            let isa = sa.inverse();
            let fm = FMIndex::from_bwt(&sa.bwt()).unwrap();
            let n = sa.len();
            for i in 1..=n {
                let start = sa.positions()[i - 1] as usize;
                let next = if start == n { 1 } else { start + 1 };
                assert_eq!(fm.psi(i).unwrap(), isa[next - 1] as usize);
            }
        }
    }

    #[test]
    fn psi_binary_matches_psi() {
        let fm = FMIndex::from_text(b"banana").unwrap();
        for i in 1..=fm.len() {
            assert_eq!(fm.psi_binary(i).unwrap(), fm.psi(i).unwrap());
        }
        let fm = FMIndex::from_text(b"").unwrap();
        assert_eq!(fm.len(), 1);
        assert_eq!(fm.psi_binary(1).unwrap(), 1);
        assert_eq!(fm.psi(1).unwrap(), 1);
    }

    #[test]
    fn relative_index_on_worked_example_texts() {
        let t1 = b"GCACTTAGAGGTCAGT";
        let t2 = b"GCACTAGACGTCAGT";
        let rfm = RelativeFMIndex::build(t1, t2).unwrap();
        // The relative structure reconstructs the target BWT exactly.
        let bwt2 = bwt_of(t2).unwrap();
        let got: Vec<u8> = (1..=rfm.len()).map(|i| rfm.relative().access(i).unwrap()).collect();
        assert_eq!(got, bwt2);
        assert_eq!(
            strip_sentinel(&rfm.reference().bwt().to_bytes()),
            b"TCTGCGTAAAAGGTGC"
        );

        let plain = FMIndex::from_text(t2).unwrap();
        for i in 1..=plain.len() {
            assert_eq!(rfm.lf(i).unwrap(), plain.lf(i).unwrap());
            assert_eq!(rfm.psi(i).unwrap(), plain.psi(i).unwrap());
            assert_eq!(rfm.psi_binary(i).unwrap(), plain.psi(i).unwrap());
        }
    }

    #[test]
    fn identical_texts_need_no_markers() {
        let t = b"GATTACAGATTACA";
        let rfm = RelativeFMIndex::build(t, t).unwrap();
        assert_eq!(rfm.relative().marker_popcount(), 0);
        assert_eq!(rfm.relative().supersequence().extra_chars().len(), 0);
    }

    #[test]
    fn relative_queries_match_plain_index_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(0xf0f);
        for _ in 0..40 {
            let t1 = { let l = rng.gen_range(1..=250); random_dna(&mut rng, l) };
            let mut t2 = t1.clone();
            for _ in 0..rng.gen_range(0..8) {
                let i = rng.gen_range(0..t2.len());
                match rng.gen_range(0..3) {
                    0 => t2[i] = b"ACGT"[rng.gen_range(0..4)],
                    1 => {
                        t2.insert(i, b"ACGT"[rng.gen_range(0..4)]);
                    }
                    _ => {
                        t2.remove(i);
                        if t2.is_empty() {
                            t2.push(b'A');
                        }
                    }
                }
            }
            let rfm = RelativeFMIndex::build(&t1, &t2).unwrap();
            let plain = FMIndex::from_text(&t2).unwrap();
            assert_eq!(rfm.len(), plain.len());
            for i in 1..=plain.len() {
                assert_eq!(rfm.lf(i).unwrap(), plain.lf(i).unwrap());
                assert_eq!(rfm.psi(i).unwrap(), plain.psi(i).unwrap());
                assert_eq!(rfm.psi_binary(i).unwrap(), plain.psi_binary(i).unwrap());
                assert_eq!(rfm.psi(rfm.lf(i).unwrap()).unwrap(), i);
            }
        }
    }

    #[test]
    fn bwt_chain_is_a_valid_common_subsequence() {
        let mut rng = StdRng::seed_from_u64(0xbca);
        for _ in 0..40 {
            let t1 = { let l = rng.gen_range(1..=300); random_dna(&mut rng, l) };
            let mut t2 = t1.clone();
            for _ in 0..5 {
                let i = rng.gen_range(0..t2.len());
                t2[i] = b"ACGT"[rng.gen_range(0..4)];
            }
            let talign = common_subsequence(&t1, &t2);
            let sa1 = SuffixArray::build(&t1).unwrap();
            let sa2 = SuffixArray::build(&t2).unwrap();
            let balign = bwt_alignment(&sa1, &sa2, &talign).unwrap();
            balign.check_matches(&sa1.bwt(), &sa2.bwt()).unwrap();
            // The chain keeps the bulk of the matched characters.
            assert!(balign.len_c() >= talign.len_c() / 2);
        }
    }
}
