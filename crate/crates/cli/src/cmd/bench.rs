//! `relsel bench` — end-to-end comparison of the index modes: generate a
//! pair, build every mode, verify that all modes answer identically,
//! then time queries and report a space/latency table.

use relsel::fm::{bwt_alignment, FMIndex, RelativeFMIndex, SuffixArray};
use relsel::mutate::mutate_pair;
use relsel::relative::RelativeSelect;
use relsel::serial::{container_sizes, StoredIndex};

use crate::cmd::query::{digest_plan, make_plan, supports, time_plan};
use crate::output::{Output, Record};
use crate::{CliError, CliResult, QueryKind};

#[derive(clap::Args)]
pub struct Args {
    /// RNG seed for generation and query streams.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Sequence length to generate.
    #[arg(long, default_value_t = 10_000_000)]
    length: usize,

    /// Substitution rate of the generated pair.
    #[arg(long, default_value_t = 0.001)]
    sub_rate: f64,

    /// Indel rate of the generated pair.
    #[arg(long, default_value_t = 0.0002)]
    indel_rate: f64,

    /// Queries per timed batch.
    #[arg(long, default_value_t = 1_000_000)]
    queries: usize,

    /// Timing batches; medians are reported.
    #[arg(long, default_value_t = 5)]
    batches: usize,
}

struct ModeReport {
    mode: &'static str,
    space: usize,
    lf_ns: f64,
    psi_ns: f64,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let pair = mutate_pair(args.seed, args.length, args.sub_rate, args.indel_rate)?;
    out.emit(
        Record::new("generate")
            .field("seed", args.seed)
            .field("length", args.length)
            .field("sub-rate", args.sub_rate)
            .field("indel-rate", args.indel_rate)
            .field("length1", pair.original.len())
            .field("length2", pair.mutated.len())
            .field("d-indel", pair.alignment.d_indel()),
    );

    let sa1 = SuffixArray::build(&pair.original)?;
    let sa2 = SuffixArray::build(&pair.mutated)?;
    let balign = bwt_alignment(&sa1, &sa2, &pair.alignment)?;
    let bwt1 = sa1.bwt();
    let bwt2 = sa2.bwt();
    drop(sa1);
    drop(sa2);
    let reference = FMIndex::from_bwt(&bwt1)?;
    let relative = RelativeSelect::build(reference.shared_bwt(), &bwt2, &balign)?;
    let rfm = RelativeFMIndex::from_components(reference, relative)?;
    let plain = FMIndex::from_bwt(&bwt2)?;

    let stored_plain = StoredIndex::Plain(plain);
    let stored_rank_only = StoredIndex::Relative {
        index: rfm.clone(),
        with_select: false,
    };
    let stored_select = StoredIndex::Relative {
        index: rfm,
        with_select: true,
    };
    let modes = [&stored_plain, &stored_rank_only, &stored_select];

    // Correctness gate: identical answer digests across modes for every
    // supported kind, before any timing is trusted.
    for kind in [
        QueryKind::Lf,
        QueryKind::Psi,
        QueryKind::PsiBinary,
        QueryKind::Select,
        QueryKind::Rank,
        QueryKind::Access,
    ] {
        let mut baseline = None;
        for stored in modes {
            if !supports(stored, kind) {
                continue;
            }
            let plan = make_plan(stored, kind, args.seed, args.queries.min(100_000))?;
            let digest = digest_plan(stored, kind, &plan);
            match baseline {
                None => baseline = Some(digest),
                Some(expected) => {
                    if digest != expected {
                        return Err(CliError::Data(format!(
                            "answer digests diverge for {} on {}",
                            kind.name(),
                            stored.mode_name()
                        )));
                    }
                }
            }
        }
        // The binary-search psi must also agree with plain psi.
        if kind == QueryKind::Psi {
            let plan = make_plan(&stored_plain, QueryKind::Psi, args.seed, args.queries.min(100_000))?;
            let plain_psi = digest_plan(&stored_plain, QueryKind::Psi, &plan);
            let plan_bin = make_plan(&stored_select, QueryKind::PsiBinary, args.seed, args.queries.min(100_000))?;
            let rel_bin = digest_plan(&stored_select, QueryKind::PsiBinary, &plan_bin);
            if plain_psi != rel_bin {
                return Err(CliError::Data(
                    "binary-search psi diverges from plain psi".into(),
                ));
            }
        }
    }
    out.note("cross-mode digests identical");

    // Space and timing per mode. The rank-only mode answers psi by
    // binary search; the others use their select path.
    let mut reports = Vec::new();
    for stored in modes {
        let sizes = container_sizes(stored)?;
        let space = match stored {
            StoredIndex::Relative { .. } => sizes.total_where(|n| n != "reference-bwt"),
            _ => sizes.total(),
        };
        let lf_plan = make_plan(stored, QueryKind::Lf, args.seed, args.queries)?;
        let lf_ns = time_plan(stored, QueryKind::Lf, &lf_plan, args.batches);
        let psi_kind = if supports(stored, QueryKind::Psi) {
            QueryKind::Psi
        } else {
            QueryKind::PsiBinary
        };
        let psi_plan = make_plan(stored, psi_kind, args.seed, args.queries)?;
        let psi_ns = time_plan(stored, psi_kind, &psi_plan, args.batches);
        reports.push(ModeReport {
            mode: stored.mode_name(),
            space,
            lf_ns,
            psi_ns,
        });
    }
    render(out, &reports, args.queries, args.seed);
    Ok(())
}

fn render(out: &Output, reports: &[ModeReport], queries: usize, seed: u64) {
    for r in reports {
        out.emit(
            Record::new("bench")
                .field("mode", r.mode)
                .field("space-bytes", r.space)
                .field("lf-ns", r.lf_ns)
                .field("psi-ns", r.psi_ns)
                .field("queries", queries)
                .field("seed", seed),
        );
    }
    if !out.is_json() {
        out.note("");
        out.note(&format!(
            "{:<20} {:>14} {:>10} {:>10}",
            "mode", "space(bytes)", "lf(ns)", "psi(ns)"
        ));
        for r in reports {
            out.note(&format!(
                "{:<20} {:>14} {:>10.0} {:>10.0}",
                r.mode, r.space, r.lf_ns, r.psi_ns
            ));
        }
    }
}
