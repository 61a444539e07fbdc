//! Seeded generation of similar sequence pairs with a known alignment.
//!
//! The generator draws a random DNA string, then walks it emitting a
//! mutated copy: before each position it may insert a random character,
//! each position may be deleted or substituted, and every character it
//! copies unchanged is recorded as a matched pair. The recorded matches
//! are the ground-truth common subsequence, which makes relative
//! structures buildable at sizes where computing an alignment from
//! scratch would dominate the run.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alignment::Alignment;
use crate::error::{Error, Result};

const DNA: &[u8] = b"ACGT";

/// A generated pair plus the alignment the mutation walk produced.
#[derive(Clone, Debug)]
pub struct MutatedPair {
    pub original: Vec<u8>,
    pub mutated: Vec<u8>,
    pub alignment: Alignment,
}

/// Generates a random string of `length` and a mutated copy.
///
/// `sub_rate` is the per-position substitution probability; `indel_rate`
/// splits evenly between an insertion before each position and a
/// deletion of the position. Identical seeds and parameters give
/// byte-identical output.
pub fn mutate_pair(
    seed: u64,
    length: usize,
    sub_rate: f64,
    indel_rate: f64,
) -> Result<MutatedPair> {
    check_rate("sub-rate", sub_rate)?;
    check_rate("indel-rate", indel_rate)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let original: Vec<u8> = (0..length).map(|_| DNA[rng.gen_range(0..4)]).collect();
    let (mutated, alignment) = mutate_walk(&mut rng, &original, sub_rate, indel_rate)?;
    Ok(MutatedPair {
        original,
        mutated,
        alignment,
    })
}

/// Mutates an existing string with a seeded walk.
pub fn mutate_text(
    seed: u64,
    original: &[u8],
    sub_rate: f64,
    indel_rate: f64,
) -> Result<(Vec<u8>, Alignment)> {
    check_rate("sub-rate", sub_rate)?;
    check_rate("indel-rate", indel_rate)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    mutate_walk(&mut rng, original, sub_rate, indel_rate)
}

fn check_rate(name: &str, rate: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidInput(format!(
            "{name} must lie in [0, 1], got {rate}"
        )));
    }
    Ok(())
}

fn mutate_walk(
    rng: &mut ChaCha8Rng,
    original: &[u8],
    sub_rate: f64,
    indel_rate: f64,
) -> Result<(Vec<u8>, Alignment)> {
    let half_indel = indel_rate / 2.0;
    let mut mutated = Vec::with_capacity(original.len() + original.len() / 16 + 8);
    let mut matches: Vec<(u32, u32)> = Vec::with_capacity(original.len());
    for (idx, &c) in original.iter().enumerate() {
        if rng.gen_bool(half_indel) {
            mutated.push(DNA[rng.gen_range(0..4)]);
        }
        if rng.gen_bool(half_indel) {
            continue; // deletion
        }
        if rng.gen_bool(sub_rate) {
            mutated.push(other_char(rng, c));
        } else {
            mutated.push(c);
            matches.push((idx as u32 + 1, mutated.len() as u32));
        }
    }
    if rng.gen_bool(half_indel) {
        mutated.push(DNA[rng.gen_range(0..4)]);
    }
    let alignment = Alignment::new(original.len(), mutated.len(), matches)?;
    Ok((mutated, alignment))
}

fn other_char(rng: &mut ChaCha8Rng, c: u8) -> u8 {
    loop {
        let x = DNA[rng.gen_range(0..4)];
        if x != c {
            return x;
        }
    }
}

/// A plain seeded DNA string, without a mutated partner.
pub fn random_dna(seed: u64, length: usize) -> Vec<u8> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..length).map(|_| DNA[rng.gen_range(0..4)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::edit_distance;

    #[test]
    fn zero_rates_copy_exactly() {
        let pair = mutate_pair(9, 500, 0.0, 0.0).unwrap();
        assert_eq!(pair.original, pair.mutated);
        assert_eq!(pair.alignment.len_c(), 500);
        assert_eq!(pair.alignment.d_indel(), 0);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let a = mutate_pair(1234, 2000, 0.02, 0.01).unwrap();
        let b = mutate_pair(1234, 2000, 0.02, 0.01).unwrap();
        assert_eq!(a.original, b.original);
        assert_eq!(a.mutated, b.mutated);
        assert_eq!(
            a.alignment.matches().collect::<Vec<_>>(),
            b.alignment.matches().collect::<Vec<_>>()
        );
        let c = mutate_pair(1235, 2000, 0.02, 0.01).unwrap();
        assert_ne!(a.original, c.original);
    }

    #[test]
    fn substitution_rate_lands_near_target_distance() {
        let pair = mutate_pair(42, 10_000, 0.01, 0.0).unwrap();
        let d = edit_distance(&pair.original, &pair.mutated).unwrap();
        let ratio = d as f64 / 10_000.0;
        assert!((0.005..=0.02).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn alignment_is_consistent_with_the_strings() {
        let pair = mutate_pair(7, 3000, 0.05, 0.03).unwrap();
        pair.alignment
            .check_matches(&pair.original, &pair.mutated)
            .unwrap();
        assert!(pair.alignment.len_c() <= pair.original.len().min(pair.mutated.len()));
        // The walk only skips edited characters, so the match count
        // tracks the edit rates.
        assert!(pair.alignment.len_c() > 3000 * 8 / 10);
    }

    #[test]
    fn invalid_rates_rejected() {
        assert!(mutate_pair(1, 10, -0.1, 0.0).is_err());
        assert!(mutate_pair(1, 10, 0.0, 1.5).is_err());
        assert!(mutate_pair(1, 10, f64::NAN, 0.0).is_err());
    }
}
