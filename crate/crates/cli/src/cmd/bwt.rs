//! `relsel bwt` — Burrows-Wheeler transforms on the command line.

use std::path::PathBuf;

use relsel::fm::{bwt_cyclic, bwt_of, inverse_bwt};

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

    /// Invert a sentinel-terminated transform instead.
    #[arg(long, conflicts_with = "cyclic")]
    inverse: bool,

    /// Use the rotation-sorted variant without a sentinel.
    #[arg(long)]
    cyclic: bool,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let data = match (&args.text, &args.input) {
        (Some(t), None) => t.as_bytes().to_vec(),
        (None, Some(path)) => seqio::read_sequence(path)?,
        _ => return Err(CliError::Usage("give exactly one of --text or --input".into())),
    };
    let (operation, result) = if args.inverse {
        ("inverse", inverse_bwt(&data)?)
    } else if args.cyclic {
        ("cyclic", bwt_cyclic(&data))
    } else {
        ("forward", bwt_of(&data)?)
    };
    let shown = String::from_utf8_lossy(&result).into_owned();
    if out.is_json() {
        out.emit(
            Record::new("bwt")
                .field("operation", operation)
                .field("output", shown),
        );
    } else {
        println!("{shown}");
    }
    Ok(())
}
