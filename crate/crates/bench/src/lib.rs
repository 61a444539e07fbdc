//! Shared fixtures for the query benchmarks: one generated sequence
//! pair with a plain index over the target and the relative index
//! stored against the reference.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use relsel::fm::{bwt_alignment, FMIndex, RelativeFMIndex, SuffixArray};
use relsel::mutate::mutate_pair;
use relsel::relative::RelativeSelect;

pub struct Fixture {
    pub plain: FMIndex,
    pub relative: RelativeFMIndex,
    pub positions: Vec<usize>,
    pub select_args: Vec<(u8, usize)>,
    pub rank_args: Vec<(u8, usize)>,
}

/// Builds the benchmark fixture: a seeded pair at `length` with
/// desk-scale edit rates, both index flavors, and pre-drawn query
/// arguments shared by every benchmark.
pub fn build_fixture(length: usize, queries: usize, seed: u64) -> Fixture {
    let pair = mutate_pair(seed, length, 0.001, 0.0002).expect("valid rates");
    let sa1 = SuffixArray::build(&pair.original).expect("valid text");
    let sa2 = SuffixArray::build(&pair.mutated).expect("valid text");
    let balign = bwt_alignment(&sa1, &sa2, &pair.alignment).expect("alignment maps");
    let bwt1 = sa1.bwt();
    let bwt2 = sa2.bwt();
    let reference = FMIndex::from_bwt(&bwt1).expect("small alphabet");
    let rel = RelativeSelect::build(reference.shared_bwt(), &bwt2, &balign).expect("consistent");
    let relative = RelativeFMIndex::from_components(reference, rel).expect("shared base");
    let plain = FMIndex::from_bwt(&bwt2).expect("small alphabet");

    let n = plain.len();
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let positions: Vec<usize> = (0..queries).map(|_| rng.gen_range(1..=n)).collect();
    let alphabet: Vec<u8> = plain.bwt().alphabet().to_vec();
    let select_args: Vec<(u8, usize)> = (0..queries)
        .map(|_| {
            let c = alphabet[rng.gen_range(0..alphabet.len())];
            let occ = plain.bwt().occ(c).max(1);
            (c, rng.gen_range(1..=occ))
        })
        .collect();
    let rank_args: Vec<(u8, usize)> = (0..queries)
        .map(|_| {
            let c = alphabet[rng.gen_range(0..alphabet.len())];
            (c, rng.gen_range(0..=n))
        })
        .collect();
    Fixture {
        plain,
        relative,
        positions,
        select_args,
        rank_args,
    }
}
