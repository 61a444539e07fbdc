//! `relsel query` — run a seeded query batch against an index file.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use relsel::serial::{read_container, StoredIndex};

use crate::output::{Output, Record};
use crate::{CliError, CliResult, QueryKind};

#[derive(clap::Args)]
pub struct Args {
    /// Index file written by `build`.
    #[arg(long)]
    index: PathBuf,

    /// Query kind to run.
    #[arg(long, value_enum)]
    kind: QueryKind,

    /// Number of queries.
    #[arg(long, default_value_t = 1_000_000)]
    queries: usize,

    /// RNG seed for the query stream.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Timing batches; the median is reported.
    #[arg(long, default_value_t = 5)]
    batches: usize,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let mut r = BufReader::new(File::open(&args.index)?);
    let stored = read_container(&mut r)?;
    if !supports(&stored, args.kind) {
        return Err(CliError::Usage(format!(
            "index mode {} does not support {} queries",
            stored.mode_name(),
            args.kind.name()
        )));
    }
    let plan = make_plan(&stored, args.kind, args.seed, args.queries)?;

    // The digest is always computed in a single deterministic pass.
    let digest = digest_plan(&stored, args.kind, &plan);
    let ns = time_plan(&stored, args.kind, &plan, args.batches);
    out.emit(
        Record::new("query")
            .field("mode", stored.mode_name())
            .field("kind", args.kind.name())
            .field("count", args.queries)
            .field("seed", args.seed)
            .field("digest", format!("{digest:016x}"))
            .field("ns-per-query", ns),
    );
    Ok(())
}

/// Pre-generated query arguments.
pub enum Plan {
    Positions(Vec<usize>),
    PerChar(Vec<(u8, usize)>),
}

pub fn supports(stored: &StoredIndex, kind: QueryKind) -> bool {
    match stored {
        StoredIndex::Plain(_) => true,
        StoredIndex::Relative { with_select, .. } => match kind {
            QueryKind::Lf | QueryKind::PsiBinary | QueryKind::Rank | QueryKind::Access => true,
            QueryKind::Psi | QueryKind::Select => *with_select,
        },
        StoredIndex::RawRelative(_) => {
            matches!(kind, QueryKind::Select | QueryKind::Rank | QueryKind::Access)
        }
    }
}

fn dimensions(stored: &StoredIndex) -> (usize, Vec<(u8, usize)>) {
    match stored {
        StoredIndex::Plain(fm) => (
            fm.len(),
            fm.bwt()
                .alphabet()
                .iter()
                .map(|&c| (c, fm.bwt().occ(c)))
                .collect(),
        ),
        StoredIndex::Relative { index, .. } => (
            index.len(),
            index
                .relative()
                .alphabet()
                .iter()
                .map(|&c| (c, index.relative().occ(c)))
                .collect(),
        ),
        StoredIndex::RawRelative(rel) => (
            rel.len(),
            rel.alphabet()
                .iter()
                .map(|&c| (c, rel.occ(c)))
                .collect(),
        ),
    }
}

/// Generates the query stream for `kind`; deterministic in `seed` and
/// identical across index modes over the same underlying string.
pub fn make_plan(
    stored: &StoredIndex,
    kind: QueryKind,
    seed: u64,
    count: usize,
) -> CliResult<Plan> {
    let (n, occ) = dimensions(stored);
    let mut rng = StdRng::seed_from_u64(seed);
    Ok(match kind {
        QueryKind::Lf | QueryKind::Psi | QueryKind::PsiBinary | QueryKind::Access => {
            if n == 0 && count > 0 {
                return Err(CliError::Data("index is empty".into()));
            }
            Plan::Positions((0..count).map(|_| rng.gen_range(1..=n)).collect())
        }
        QueryKind::Rank => {
            let chars: Vec<u8> = occ.iter().map(|&(c, _)| c).collect();
            if chars.is_empty() && count > 0 {
                return Err(CliError::Data("index is empty".into()));
            }
            Plan::PerChar(
                (0..count)
                    .map(|_| (chars[rng.gen_range(0..chars.len())], rng.gen_range(0..=n)))
                    .collect(),
            )
        }
        QueryKind::Select => {
            let present: Vec<(u8, usize)> = occ.into_iter().filter(|&(_, o)| o > 0).collect();
            if present.is_empty() && count > 0 {
                return Err(CliError::Data("index is empty".into()));
            }
            Plan::PerChar(
                (0..count)
                    .map(|_| {
                        let (c, o) = present[rng.gen_range(0..present.len())];
                        (c, rng.gen_range(1..=o))
                    })
                    .collect(),
            )
        }
    })
}

fn answer(stored: &StoredIndex, kind: QueryKind, c: u8, v: usize) -> usize {
    match stored {
        StoredIndex::Plain(fm) => match kind {
            QueryKind::Lf => fm.lf(v).unwrap(),
            QueryKind::Psi => fm.psi(v).unwrap(),
            QueryKind::PsiBinary => fm.psi_binary(v).unwrap(),
            QueryKind::Access => fm.bwt().access(v).unwrap() as usize,
            QueryKind::Rank => fm.bwt().rank(c, v).unwrap(),
            QueryKind::Select => fm.bwt().select(c, v).unwrap(),
        },
        StoredIndex::Relative { index, .. } => match kind {
            QueryKind::Lf => index.lf(v).unwrap(),
            QueryKind::Psi => index.psi(v).unwrap(),
            QueryKind::PsiBinary => index.psi_binary(v).unwrap(),
            QueryKind::Access => index.relative().access(v).unwrap() as usize,
            QueryKind::Rank => index.relative().rank(c, v).unwrap(),
            QueryKind::Select => index.relative().select(c, v).unwrap(),
        },
        StoredIndex::RawRelative(rel) => match kind {
            QueryKind::Access => rel.access(v).unwrap() as usize,
            QueryKind::Rank => rel.rank(c, v).unwrap(),
            QueryKind::Select => rel.select(c, v).unwrap(),
            _ => unreachable!("unsupported kind filtered earlier"),
        },
    }
}

fn for_each_query(
    stored: &StoredIndex,
    kind: QueryKind,
    plan: &Plan,
    mut f: impl FnMut(usize),
) {
    match plan {
        Plan::Positions(ps) => {
            for &p in ps {
                f(answer(stored, kind, 0, p));
            }
        }
        Plan::PerChar(qs) => {
            for &(c, v) in qs {
                f(answer(stored, kind, c, v));
            }
        }
    }
}

/// FNV-1a over the little-endian answers.
pub fn digest_plan(stored: &StoredIndex, kind: QueryKind, plan: &Plan) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for_each_query(stored, kind, plan, |ans| {
        for b in (ans as u64).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    });
    h
}

/// Warm-up pass then `batches` timed passes; returns the median
/// nanoseconds per query.
pub fn time_plan(stored: &StoredIndex, kind: QueryKind, plan: &Plan, batches: usize) -> f64 {
    let count = match plan {
        Plan::Positions(ps) => ps.len(),
        Plan::PerChar(qs) => qs.len(),
    };
    if count == 0 || batches == 0 {
        return 0.0;
    }
    let mut sink = 0usize;
    for_each_query(stored, kind, plan, |ans| sink = sink.wrapping_add(ans));
    let mut timings = Vec::with_capacity(batches);
    for _ in 0..batches {
        let start = Instant::now();
        for_each_query(stored, kind, plan, |ans| sink = sink.wrapping_add(ans));
        timings.push(start.elapsed().as_nanos() as f64 / count as f64);
    }
    std::hint::black_box(sink);
    timings.sort_by(|a, b| a.partial_cmp(b).unwrap());
    timings[timings.len() / 2]
}
