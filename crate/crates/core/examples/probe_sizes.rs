//! Prints structure sizes and alignment retention for generated pairs
//! at megabase scales.
//!
//! Run: cargo run --release -p relsel --example probe_sizes

use std::sync::Arc;
use std::time::Instant;

use relsel::fm::{bwt_alignment, SuffixArray};
use relsel::mutate::mutate_pair;
use relsel::relative::RelativeSelect;
use relsel::sequence::IndexedSequence;
use relsel::serial::{marker_bytes, relative_bytes, sequence_bytes};

fn main() {
    for &(n, sub, indel) in &[
        (1_000_000usize, 0.001f64, 0.0002f64),
        (10_000_000, 0.001, 0.0002),
    ] {
        let t0 = Instant::now();
        let pair = mutate_pair(42, n, sub, indel).unwrap();
        let sa1 = SuffixArray::build(&pair.original).unwrap();
        let sa2 = SuffixArray::build(&pair.mutated).unwrap();
        println!("n={n} sa built in {:?}", t0.elapsed());
        let t1 = Instant::now();
        let balign = bwt_alignment(&sa1, &sa2, &pair.alignment).unwrap();
        println!(
            "n={n} text_common={} bwt_common={} ({:.4} of rows) d_indel_bwt={} lis in {:?}",
            pair.alignment.len_c(),
            balign.len_c(),
            balign.len_c() as f64 / sa2.len() as f64,
            balign.d_indel(),
            t1.elapsed()
        );
        let bwt1 = sa1.bwt();
        let bwt2 = sa2.bwt();
        let base = Arc::new(IndexedSequence::build(&bwt1).unwrap());
        let plain2 = IndexedSequence::build(&bwt2).unwrap();
        let rel = RelativeSelect::build(base, &bwt2, &balign).unwrap();
        println!(
            "n={n} plain_bytes={} marker_bytes={} relative_total={}",
            sequence_bytes(&plain2),
            marker_bytes(&rel),
            relative_bytes(&rel),
        );
    }

    // Sweep for the size-scaling criterion shape.
    let n = 1_000_000usize;
    for &target in &[100usize, 1_000, 10_000, 100_000] {
        let sub = target as f64 / (2.0 * n as f64);
        let pair = mutate_pair(7, n, sub, 0.0).unwrap();
        let base = Arc::new(IndexedSequence::build(&pair.original).unwrap());
        let rel = RelativeSelect::build(base, &pair.mutated, &pair.alignment).unwrap();
        let d = pair.alignment.d_indel();
        let bytes = marker_bytes(&rel);
        println!(
            "sweep target={target} d_indel={d} marker_bytes={bytes} bytes_per_d={:.2}",
            bytes as f64 / d as f64
        );
    }
}
