//! Select, access, and rank on a string answered through an index built
//! for a similar string.
//!
//! Two layers compose. [`SubsequenceSelect`] answers select on a
//! subsequence `C` of an indexed string `s1` by marking, globally and
//! per character, which characters of `s1` fall outside `C`.
//! [`SupersequenceSelect`] answers select on a supersequence `s2` of `C`
//! by marking the characters of `s2` outside `C` and indexing those
//! extra characters separately. [`RelativeSelect`] stacks them, with the
//! subsequence layer serving as the (never materialized) select oracle
//! for `C`, so the only stored structures besides the `s1` index are the
//! marker vectors and the extra-character index — all proportional to
//! the number of edits between the strings.

use std::sync::Arc;

use crate::alignment::Alignment;
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::sequence::IndexedSequence;

/// Per-character marker vectors, keyed by the character table of the
/// string they were derived from. Characters without an entry behave as
/// empty vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMarks {
    chars: Vec<u8>,
    marks: Vec<BitVector>,
}

impl CharMarks {
    pub(crate) fn new(chars: Vec<u8>, marks: Vec<BitVector>) -> Self {
        debug_assert_eq!(chars.len(), marks.len());
        debug_assert!(chars.windows(2).all(|w| w[0] < w[1]));
        CharMarks { chars, marks }
    }

    /// The marker vector for `x`, if `x` occurs in the source string.
    pub fn get(&self, x: u8) -> Option<&BitVector> {
        self.chars
            .binary_search(&x)
            .ok()
            .map(|r| &self.marks[r])
    }

    /// Characters with an entry, ascending.
    pub fn chars(&self) -> &[u8] {
        &self.chars
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &BitVector)> + '_ {
        self.chars.iter().copied().zip(self.marks.iter())
    }

    fn total_ones(&self) -> usize {
        self.marks.iter().map(|m| m.count_ones()).sum()
    }
}

/// Select on a subsequence `C` of an indexed string, via markers over
/// the string and over each character's occurrence list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsequenceSelect {
    removed: BitVector,
    removed_by_char: CharMarks,
}

impl SubsequenceSelect {
    /// Builds from the base index and a mask with 1s at the positions of
    /// `s1` that do not survive into the subsequence.
    pub fn build(s1: &IndexedSequence, mask: &[bool]) -> Result<Self> {
        if mask.len() != s1.len() {
            return Err(Error::InvalidInput(format!(
                "mask length {} does not cover string length {}",
                mask.len(),
                s1.len()
            )));
        }
        let removed = BitVector::build(mask);
        let removed_by_char = per_char_marks(s1.alphabet(), |i| s1.access(i), mask)?;
        Ok(SubsequenceSelect {
            removed,
            removed_by_char,
        })
    }

    /// Length of the subsequence.
    pub fn subsequence_len(&self) -> usize {
        self.removed.count_zeros()
    }

    /// Occurrences of `x` in the subsequence.
    pub fn subsequence_occ(&self, x: u8) -> usize {
        self.removed_by_char
            .get(x)
            .map_or(0, |m| m.count_zeros())
    }

    /// Per-character occurrence counts of the subsequence, for
    /// characters that occur at least once in `s1`.
    pub fn subsequence_counts(&self) -> Vec<(u8, usize)> {
        self.removed_by_char
            .iter()
            .map(|(x, m)| (x, m.count_zeros()))
            .collect()
    }

    /// Position in the subsequence of its `i`-th occurrence of `x`.
    pub fn select(&self, s1: &IndexedSequence, x: u8, i: usize) -> Result<usize> {
        let marks = match self.removed_by_char.get(x) {
            Some(m) => m,
            None => return Err(Error::NotFound { rank: i, available: 0 }),
        };
        let available = marks.count_zeros();
        if i < 1 || i > available {
            return Err(Error::NotFound { rank: i, available });
        }
        // The i-th surviving x is the k-th x of s1; map to its position
        // in s1, then drop the removed characters before it.
        let k = marks.select0(i)?;
        let p = s1.select(x, k)?;
        self.removed.rank0(p)
    }

    /// Occurrences of `x` in the first `i` characters of the subsequence.
    pub fn rank(&self, s1: &IndexedSequence, x: u8, i: usize) -> Result<usize> {
        let len = self.subsequence_len();
        if i > len {
            return Err(Error::OutOfRange { index: i, len });
        }
        if i == 0 {
            return Ok(0);
        }
        let marks = match self.removed_by_char.get(x) {
            Some(m) => m,
            None => return Ok(0),
        };
        let p = self.removed.select0(i)?;
        marks.rank0(s1.rank(x, p)?)
    }

    /// The `i`-th character of the subsequence.
    pub fn access(&self, s1: &IndexedSequence, i: usize) -> Result<u8> {
        let len = self.subsequence_len();
        if i < 1 || i > len {
            return Err(Error::OutOfRange { index: i, len });
        }
        s1.access(self.removed.select0(i)?)
    }

    /// Marker vector over the whole base string.
    pub fn removed_marks(&self) -> &BitVector {
        &self.removed
    }

    /// Per-character marker vectors.
    pub fn removed_char_marks(&self) -> &CharMarks {
        &self.removed_by_char
    }

    pub(crate) fn from_parts(removed: BitVector, removed_by_char: CharMarks) -> Self {
        SubsequenceSelect {
            removed,
            removed_by_char,
        }
    }
}

/// Select on a supersequence `s2` of a base string `C`, given any select
/// oracle for `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersequenceSelect {
    inserted: BitVector,
    inserted_by_char: CharMarks,
    extra_chars: IndexedSequence,
}

impl SupersequenceSelect {
    /// Builds from the supersequence text and a mask with 1s at the
    /// positions of `s2` that are not part of the base subsequence.
    /// `base_counts` carries the per-character occurrence counts of the
    /// base string and is checked against the mask for consistency.
    pub fn build(base_counts: &[(u8, usize)], s2: &[u8], mask: &[bool]) -> Result<Self> {
        if mask.len() != s2.len() {
            return Err(Error::InvalidInput(format!(
                "mask length {} does not cover string length {}",
                mask.len(),
                s2.len()
            )));
        }
        let inserted = BitVector::build(mask);
        let seq = IndexedSequence::build(s2)?;
        let inserted_by_char = per_char_marks(seq.alphabet(), |i| Ok(s2[i - 1]), mask)?;
        let extras: Vec<u8> = s2
            .iter()
            .zip(mask)
            .filter(|&(_, &m)| m)
            .map(|(&c, _)| c)
            .collect();
        let extra_chars = IndexedSequence::build(&extras)?;

        // The zeros of the mask must spell exactly the base string.
        let base_total: usize = base_counts.iter().map(|&(_, c)| c).sum();
        if base_total != inserted.count_zeros() {
            return Err(Error::InvalidInput(format!(
                "mask keeps {} characters but the base string has {}",
                inserted.count_zeros(),
                base_total
            )));
        }
        for (x, marks) in inserted_by_char.iter() {
            let expected = base_counts
                .iter()
                .find(|&&(c, _)| c == x)
                .map_or(0, |&(_, c)| c);
            if marks.count_zeros() != expected {
                return Err(Error::InvalidInput(format!(
                    "mask keeps {} occurrences of {:?} but the base string has {}",
                    marks.count_zeros(),
                    x as char,
                    expected
                )));
            }
        }
        Ok(SupersequenceSelect {
            inserted,
            inserted_by_char,
            extra_chars,
        })
    }

    /// Length of the supersequence.
    pub fn len(&self) -> usize {
        self.inserted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Occurrences of `x` in the supersequence.
    pub fn occ(&self, x: u8) -> usize {
        self.inserted_by_char.get(x).map_or(0, |m| m.len())
    }

    /// Position in the supersequence of its `i`-th occurrence of `x`.
    /// `base_select(x, j)` must return the position of the `j`-th `x`
    /// within the base subsequence.
    pub fn select<F>(&self, base_select: F, x: u8, i: usize) -> Result<usize>
    where
        F: Fn(u8, usize) -> Result<usize>,
    {
        let marks = match self.inserted_by_char.get(x) {
            Some(m) => m,
            None => return Err(Error::NotFound { rank: i, available: 0 }),
        };
        let available = marks.len();
        if i < 1 || i > available {
            return Err(Error::NotFound { rank: i, available });
        }
        if marks.get(i)? {
            // The i-th x is one of the extra characters.
            let in_extras = self.extra_chars.select(x, marks.rank1(i)?)?;
            self.inserted.select1(in_extras)
        } else {
            // The i-th x comes from the base string.
            let in_base = base_select(x, marks.rank0(i)?)?;
            self.inserted.select0(in_base)
        }
    }

    /// Marker vector over the whole supersequence.
    pub fn inserted_marks(&self) -> &BitVector {
        &self.inserted
    }

    /// Per-character marker vectors.
    pub fn inserted_char_marks(&self) -> &CharMarks {
        &self.inserted_by_char
    }

    /// The characters of the supersequence outside the base string, in
    /// order.
    pub fn extra_chars(&self) -> &IndexedSequence {
        &self.extra_chars
    }

    pub(crate) fn from_parts(
        inserted: BitVector,
        inserted_by_char: CharMarks,
        extra_chars: IndexedSequence,
    ) -> Self {
        SupersequenceSelect {
            inserted,
            inserted_by_char,
            extra_chars,
        }
    }
}

/// Select, access, and rank on `s2` through the index of a similar `s1`,
/// composed from the two layers with the subsequence layer acting as the
/// select oracle for the common subsequence.
#[derive(Clone, Debug)]
pub struct RelativeSelect {
    base: Arc<IndexedSequence>,
    sub: SubsequenceSelect,
    sup: SupersequenceSelect,
}

impl RelativeSelect {
    /// Builds the structure for `s2` relative to the indexed `s1`, from
    /// an alignment between them.
    pub fn build(s1: Arc<IndexedSequence>, s2: &[u8], alignment: &Alignment) -> Result<Self> {
        if alignment.n1() != s1.len() || alignment.n2() != s2.len() {
            return Err(Error::InvalidInput(format!(
                "alignment covers lengths {}, {} but strings have {}, {}",
                alignment.n1(),
                alignment.n2(),
                s1.len(),
                s2.len()
            )));
        }
        for (p, q) in alignment.matches() {
            if s1.access(p)? != s2[q - 1] {
                return Err(Error::InvalidInput(format!(
                    "matched pair ({p}, {q}) pairs different characters"
                )));
            }
        }
        let (mask1, mask2) = alignment.marker_masks();
        let sub = SubsequenceSelect::build(&s1, &mask1)?;
        let sup = SupersequenceSelect::build(&sub.subsequence_counts(), s2, &mask2)?;
        Ok(RelativeSelect { base: s1, sub, sup }.validated())
    }

    fn validated(self) -> Self {
        debug_assert_eq!(
            self.sub.subsequence_len(),
            self.sup.inserted_marks().count_zeros()
        );
        self
    }

    /// Length of `s2`.
    pub fn len(&self) -> usize {
        self.sup.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Occurrences of `x` in `s2`.
    pub fn occ(&self, x: u8) -> usize {
        self.sup.occ(x)
    }

    /// The distinct characters of `s2`, ascending.
    pub fn alphabet(&self) -> &[u8] {
        self.sup.inserted_char_marks().chars()
    }

    /// Position of the `i`-th occurrence of `x` in `s2`.
    pub fn select(&self, x: u8, i: usize) -> Result<usize> {
        self.sup
            .select(|c, j| self.sub.select(&self.base, c, j), x, i)
    }

    /// The character at position `i` of `s2`.
    pub fn access(&self, i: usize) -> Result<u8> {
        let inserted = self.sup.inserted_marks();
        if i < 1 || i > inserted.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: inserted.len(),
            });
        }
        if inserted.get(i)? {
            self.sup.extra_chars().access(inserted.rank1(i)?)
        } else {
            self.sub.access(&self.base, inserted.rank0(i)?)
        }
    }

    /// Occurrences of `x` among the first `i` characters of `s2`.
    pub fn rank(&self, x: u8, i: usize) -> Result<usize> {
        let inserted = self.sup.inserted_marks();
        if i > inserted.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: inserted.len(),
            });
        }
        let extra_part = self.sup.extra_chars().rank(x, inserted.rank1(i)?)?;
        let base_part = self.sub.rank(&self.base, x, inserted.rank0(i)?)?;
        Ok(base_part + extra_part)
    }

    /// The index of `s1` this structure queries through.
    pub fn base(&self) -> &Arc<IndexedSequence> {
        &self.base
    }

    /// The `s1`-to-subsequence layer.
    pub fn subsequence(&self) -> &SubsequenceSelect {
        &self.sub
    }

    /// The subsequence-to-`s2` layer.
    pub fn supersequence(&self) -> &SupersequenceSelect {
        &self.sup
    }

    /// Total set bits across all marker vectors.
    pub fn marker_popcount(&self) -> usize {
        self.sub.removed_marks().count_ones()
            + self.sub.removed_char_marks().total_ones()
            + self.sup.inserted_marks().count_ones()
            + self.sup.inserted_char_marks().total_ones()
    }

    pub(crate) fn from_parts(
        base: Arc<IndexedSequence>,
        sub: SubsequenceSelect,
        sup: SupersequenceSelect,
    ) -> Self {
        RelativeSelect { base, sub, sup }.validated()
    }
}

/// Builds one marker vector per character: entry `k` of the vector for
/// `x` is the mask bit at the position of the `k`-th `x`.
fn per_char_marks<F>(alphabet: &[u8], char_at: F, mask: &[bool]) -> Result<CharMarks>
where
    F: Fn(usize) -> Result<u8>,
{
    let mut buffers: Vec<Vec<bool>> = vec![Vec::new(); alphabet.len()];
    for (idx, &m) in mask.iter().enumerate() {
        let c = char_at(idx + 1)?;
        let r = alphabet.binary_search(&c).expect("in alphabet");
        buffers[r].push(m);
    }
    let marks = buffers.into_iter().map(|b| BitVector::build(&b)).collect();
    Ok(CharMarks::new(alphabet.to_vec(), marks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::common_subsequence;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const S1: &[u8] = b"TCTGCGTAAAAGGTGC";
    const S2: &[u8] = b"TGCTCGTAAAACGCG";

    fn build_worked_example() -> RelativeSelect {
        let s1 = Arc::new(IndexedSequence::build(S1).unwrap());
        let alignment = common_subsequence(S1, S2);
        RelativeSelect::build(s1, S2, &alignment).unwrap()
    }

    fn bit_string(v: &BitVector) -> String {
        v.to_bit_string()
    }

    #[test]
    fn worked_example_subsequence_markers() {
        let rel = build_worked_example();
        let sub = rel.subsequence();
        assert_eq!(bit_string(sub.removed_marks()), "0001000000010101");
        let marks = sub.removed_char_marks();
        assert_eq!(bit_string(marks.get(b'A').unwrap()), "0000");
        assert_eq!(bit_string(marks.get(b'C').unwrap()), "001");
        assert_eq!(bit_string(marks.get(b'G').unwrap()), "10100");
        assert_eq!(bit_string(marks.get(b'T').unwrap()), "0001");
    }

    #[test]
    fn worked_example_supersequence_markers() {
        let rel = build_worked_example();
        let sup = rel.supersequence();
        assert_eq!(bit_string(sup.inserted_marks()), "010000000001010");
        let marks = sup.inserted_char_marks();
        assert_eq!(bit_string(marks.get(b'A').unwrap()), "0000");
        assert_eq!(bit_string(marks.get(b'C').unwrap()), "0011");
        assert_eq!(bit_string(marks.get(b'G').unwrap()), "1000");
        assert_eq!(bit_string(marks.get(b'T').unwrap()), "000");
        assert_eq!(sup.extra_chars().to_bytes(), b"GCC");
    }

    #[test]
    fn worked_example_queries() {
        let rel = build_worked_example();
        // The fourth C of s2 is an extra character.
        assert_eq!(rel.select(b'C', 4).unwrap(), 14);
        // The third G of s2 routes through the subsequence layer.
        assert_eq!(rel.select(b'G', 3).unwrap(), 13);
        // Intermediate step: the second G of the common subsequence.
        assert_eq!(rel.subsequence().select(rel.base(), b'G', 2).unwrap(), 11);
        // Access on both branches.
        assert_eq!(rel.access(14).unwrap(), b'C');
        assert_eq!(rel.access(2).unwrap(), b'G');
        // Rank through both parts.
        assert_eq!(rel.rank(b'C', 14).unwrap(), 4);
        assert_eq!(rel.rank(b'C', 0).unwrap(), 0);
    }

    #[test]
    fn boundary_errors() {
        let rel = build_worked_example();
        assert!(matches!(
            rel.select(b'C', rel.occ(b'C') + 1),
            Err(Error::NotFound { .. })
        ));
        assert!(matches!(rel.access(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            rel.access(S2.len() + 1),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            rel.rank(b'C', S2.len() + 1),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn identical_strings_reduce_to_the_base_index() {
        let s1 = Arc::new(IndexedSequence::build(S1).unwrap());
        let alignment = common_subsequence(S1, S1);
        let rel = RelativeSelect::build(Arc::clone(&s1), S1, &alignment).unwrap();
        assert_eq!(rel.marker_popcount(), 0);
        assert_eq!(rel.supersequence().extra_chars().len(), 0);
        for &x in s1.alphabet() {
            for j in 1..=s1.occ(x) {
                assert_eq!(rel.select(x, j).unwrap(), s1.select(x, j).unwrap());
                assert_eq!(
                    rel.subsequence().select(&s1, x, j).unwrap(),
                    s1.select(x, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn character_only_in_s2_uses_the_extra_branch() {
        let s1_text = b"AAAA";
        let s2_text = b"AATA";
        let s1 = Arc::new(IndexedSequence::build(s1_text).unwrap());
        let alignment = common_subsequence(s1_text, s2_text);
        let rel = RelativeSelect::build(s1, s2_text, &alignment).unwrap();
        let marks = rel.supersequence().inserted_char_marks();
        assert_eq!(bit_string(marks.get(b'T').unwrap()), "1");
        assert_eq!(rel.select(b'T', 1).unwrap(), 3);
        assert_eq!(rel.access(3).unwrap(), b'T');
        assert_eq!(rel.rank(b'T', 3).unwrap(), 1);
        assert_eq!(rel.rank(b'T', 2).unwrap(), 0);
    }

    #[test]
    fn character_only_in_s1_reports_not_found() {
        let s1_text = b"AGA";
        let s2_text = b"AA";
        let s1 = Arc::new(IndexedSequence::build(s1_text).unwrap());
        let alignment = common_subsequence(s1_text, s2_text);
        let rel = RelativeSelect::build(s1, s2_text, &alignment).unwrap();
        assert_eq!(rel.occ(b'G'), 0);
        assert!(matches!(
            rel.select(b'G', 1),
            Err(Error::NotFound { rank: 1, available: 0 })
        ));
        assert_eq!(rel.rank(b'G', 2).unwrap(), 0);
    }

    fn random_dna(rng: &mut StdRng, len: usize) -> Vec<u8> {
        (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
    }

    fn mutate_lightly(rng: &mut StdRng, text: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(text.len() + 8);
        for &c in text {
            match rng.gen_range(0..20) {
                0 => {}
                1 => {
                    out.push(b"ACGT"[rng.gen_range(0..4)]);
                    out.push(c);
                }
                2 => out.push(b"ACGT"[rng.gen_range(0..4)]),
                _ => out.push(c),
            }
        }
        out
    }

    #[test]
    fn oracle_equivalence_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(0x5e1ec7);
        for _ in 0..150 {
            let len = rng.gen_range(0..=300);
            let a = random_dna(&mut rng, len);
            let b = mutate_lightly(&mut rng, &a);
            let s1 = Arc::new(IndexedSequence::build(&a).unwrap());
            let alignment = common_subsequence(&a, &b);
            let rel = RelativeSelect::build(s1, &b, &alignment).unwrap();

            let mut counts = [0usize; 256];
            for (idx, &c) in b.iter().enumerate() {
                let i = idx + 1;
                counts[c as usize] += 1;
                assert_eq!(rel.access(i).unwrap(), c);
                assert_eq!(rel.select(c, counts[c as usize]).unwrap(), i);
                for &x in b"ACGT" {
                    assert_eq!(rel.rank(x, i).unwrap(), counts[x as usize], "rank({}, {i})", x as char);
                }
            }
            // Duality through the relative path.
            for &x in b"ACGT" {
                for j in 1..=rel.occ(x) {
                    assert_eq!(rel.rank(x, rel.select(x, j).unwrap()).unwrap(), j);
                }
            }
        }
    }

    #[test]
    fn subsequence_layer_matches_materialized_subsequence() {
        let mut rng = StdRng::seed_from_u64(0x5b5e1);
        for _ in 0..150 {
            let len = rng.gen_range(0..=300);
            let a = random_dna(&mut rng, len);
            // Random subsequence mask.
            let mask: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.25)).collect();
            let c_str: Vec<u8> = a
                .iter()
                .zip(&mask)
                .filter(|&(_, &m)| !m)
                .map(|(&c, _)| c)
                .collect();
            let s1 = IndexedSequence::build(&a).unwrap();
            let sub = SubsequenceSelect::build(&s1, &mask).unwrap();
            assert_eq!(sub.subsequence_len(), c_str.len());

            let mut counts = [0usize; 256];
            for (idx, &c) in c_str.iter().enumerate() {
                counts[c as usize] += 1;
                assert_eq!(sub.select(&s1, c, counts[c as usize]).unwrap(), idx + 1);
                assert_eq!(sub.access(&s1, idx + 1).unwrap(), c);
                for &x in b"ACGT" {
                    assert_eq!(sub.rank(&s1, x, idx + 1).unwrap(), counts[x as usize]);
                }
            }
            for &x in b"ACGT" {
                let occ = sub.subsequence_occ(x);
                assert!(matches!(
                    sub.select(&s1, x, occ + 1),
                    Err(Error::NotFound { .. })
                ));
            }
        }
    }

    #[test]
    fn supersequence_layer_works_with_a_materialized_base() {
        let mut rng = StdRng::seed_from_u64(0x55e1);
        for _ in 0..150 {
            let len = rng.gen_range(0..=300);
            let b = random_dna(&mut rng, len);
            let mask: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.25)).collect();
            let c_str: Vec<u8> = b
                .iter()
                .zip(&mask)
                .filter(|&(_, &m)| !m)
                .map(|(&c, _)| c)
                .collect();
            let c_seq = IndexedSequence::build(&c_str).unwrap();
            let counts: Vec<(u8, usize)> = c_seq
                .alphabet()
                .iter()
                .map(|&x| (x, c_seq.occ(x)))
                .collect();
            let sup = SupersequenceSelect::build(&counts, &b, &mask).unwrap();

            // Naive select oracle on the materialized base string.
            let base_select = |x: u8, j: usize| c_seq.select(x, j);
            let mut seen = [0usize; 256];
            for (idx, &c) in b.iter().enumerate() {
                seen[c as usize] += 1;
                assert_eq!(sup.select(base_select, c, seen[c as usize]).unwrap(), idx + 1);
            }
        }
    }

    #[test]
    fn composed_answers_match_materialized_base_answers() {
        let mut rng = StdRng::seed_from_u64(0xc0390);
        for _ in 0..100 {
            let len = rng.gen_range(0..=200);
            let a = random_dna(&mut rng, len);
            let b = mutate_lightly(&mut rng, &a);
            let alignment = common_subsequence(&a, &b);
            let (mask1, mask2) = alignment.marker_masks();
            let c_str = alignment.common_string(&a);
            let c_seq = IndexedSequence::build(&c_str).unwrap();

            let s1 = Arc::new(IndexedSequence::build(&a).unwrap());
            let rel = RelativeSelect::build(Arc::clone(&s1), &b, &alignment).unwrap();

            let sub = SubsequenceSelect::build(&s1, &mask1).unwrap();
            let sup = SupersequenceSelect::build(&sub.subsequence_counts(), &b, &mask2).unwrap();
            for &x in b"ACGT" {
                for j in 1..=rel.occ(x) {
                    let virtual_path = rel.select(x, j).unwrap();
                    let materialized = sup
                        .select(|c, i| c_seq.select(c, i), x, j)
                        .unwrap();
                    assert_eq!(virtual_path, materialized);
                }
            }
        }
    }

    #[test]
    fn build_rejects_inconsistent_inputs() {
        let s1 = IndexedSequence::build(b"ACGT").unwrap();
        assert!(SubsequenceSelect::build(&s1, &[false; 3]).is_err());
        assert!(SupersequenceSelect::build(&[(b'A', 1)], b"ACGT", &[false; 3]).is_err());
        // Mask keeps 4 characters but base claims 1.
        assert!(SupersequenceSelect::build(&[(b'A', 1)], b"ACGT", &[false; 4]).is_err());
        // Wrong per-character split even though totals agree.
        assert!(SupersequenceSelect::build(
            &[(b'A', 2)],
            b"AC",
            &[false, false]
        )
        .is_err());
        // Alignment that pairs different characters.
        let arc = Arc::new(s1);
        let bad = Alignment::new(4, 4, vec![(1, 2)]).unwrap();
        assert!(RelativeSelect::build(arc, b"ACGT", &bad).is_err());
    }
}
