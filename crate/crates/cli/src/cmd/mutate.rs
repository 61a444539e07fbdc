//! `relsel mutate` — emit a seeded sequence pair and its alignment.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use relsel::mutate::mutate_pair;
use relsel::serial::write_alignment;

use crate::output::{Output, Record};
use crate::{seqio, CliResult};

#[derive(clap::Args)]
pub struct Args {
    /// RNG seed; identical seeds reproduce identical pairs.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Length of the original sequence.
    #[arg(long, default_value_t = 10_000_000)]
    length: usize,

    /// Per-position substitution probability.
    #[arg(long, default_value_t = 0.001)]
    sub_rate: f64,

    /// Per-position insertion/deletion probability (split evenly).
    #[arg(long, default_value_t = 0.0002)]
    indel_rate: f64,

    /// Output prefix: writes <out>.1.seq, <out>.2.seq, <out>.alignment.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let pair = mutate_pair(args.seed, args.length, args.sub_rate, args.indel_rate)?;

    let path1 = suffixed(&args.out, ".1.seq");
    let path2 = suffixed(&args.out, ".2.seq");
    let path_al = suffixed(&args.out, ".alignment");
    seqio::write_bytes(&path1, &pair.original)?;
    seqio::write_bytes(&path2, &pair.mutated)?;
    let mut w = BufWriter::new(File::create(&path_al)?);
    write_alignment(&mut w, &pair.alignment)?;

    out.emit(
        Record::new("mutate")
            .field("seed", args.seed)
            .field("length1", pair.original.len())
            .field("length2", pair.mutated.len())
            .field("matches", pair.alignment.len_c())
            .field("d-indel", pair.alignment.d_indel())
            .field("file1", path1.display().to_string())
            .field("file2", path2.display().to_string())
            .field("alignment", path_al.display().to_string()),
    );
    Ok(())
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}
