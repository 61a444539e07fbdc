//! `relsel boss` — edge-BWTs of order-k de Bruijn graphs.

use std::path::PathBuf;

use relsel::boss::{build_edges, edge_bwt, relative_edge_bwt};

use crate::output::{Output, Record};
use crate::{seqio, CliError, CliResult};

#[derive(clap::Args)]
pub struct Args {
    /// Input given inline.
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,

    /// Input read from a file (raw text or FASTA).
    #[arg(long)]
    input: Option<PathBuf>,

    /// Graph order (node k-mer length).
    #[arg(long, default_value_t = 3)]
    k: usize,

    /// Also print the sorted edge matrix, one `source label` row per line.
    #[arg(long)]
    matrix: bool,

    /// Second string: also build its edge-BWT relative to the first and
    /// report the distance between the two.
    #[arg(long, conflicts_with = "second_input")]
    second_text: Option<String>,

    /// Second string read from a file.
    #[arg(long)]
    second_input: Option<PathBuf>,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let text = match (&args.text, &args.input) {
        (Some(t), None) => t.as_bytes().to_vec(),
        (None, Some(path)) => seqio::read_sequence(path)?,
        _ => return Err(CliError::Usage("give exactly one of --text or --input".into())),
    };
    let labels = edge_bwt(&text, args.k)?;
    out.emit(
        Record::new("edge-bwt")
            .field("k", args.k)
            .field("edges", labels.len())
            .field("labels", String::from_utf8_lossy(&labels).into_owned()),
    );

    if args.matrix {
        let mut edges = build_edges(&text, args.k)?;
        edges.sort();
        for (i, (source, label)) in edges.rows().into_iter().enumerate() {
            if out.is_json() {
                out.emit(
                    Record::new("edge")
                        .field("row", i + 1)
                        .field("source", source)
                        .field("label", label.to_string()),
                );
            } else {
                println!("{source} {label}");
            }
        }
    }

    let second = match (&args.second_text, &args.second_input) {
        (Some(t), None) => Some(t.as_bytes().to_vec()),
        (None, Some(path)) => Some(seqio::read_sequence(path)?),
        (None, None) => None,
        _ => unreachable!("clap enforces the conflict"),
    };
    if let Some(second) = second {
        let labels2 = edge_bwt(&second, args.k)?;
        let rel = relative_edge_bwt(&text, &second, args.k)?;
        out.emit(
            Record::new("relative-edge-bwt")
                .field("labels2", String::from_utf8_lossy(&labels2).into_owned())
                .field("levenshtein", rel.levenshtein)
                .field("d-indel", rel.d_indel)
                .field("marker-popcount", rel.relative.marker_popcount()),
        );
    }
    Ok(())
}
