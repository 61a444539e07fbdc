//! `relsel build` — build an index file from sequence files.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use relsel::alignment::{common_subsequence, Alignment};
use relsel::fm::{FMIndex, RelativeFMIndex};
use relsel::relative::RelativeSelect;
use relsel::sequence::IndexedSequence;
use relsel::serial::{read_alignment, write_container, ComponentSizes, StoredIndex};

use crate::output::{Output, Record};
use crate::{seqio, CliError, CliResult, Mode};

#[derive(clap::Args)]
pub struct Args {
    /// What to build.
    #[arg(long, value_enum)]
    mode: Mode,

    /// Sequence to index (raw text or FASTA).
    #[arg(long)]
    target: PathBuf,

    /// Reference sequence, required for the relative modes.
    #[arg(long)]
    reference: Option<PathBuf>,

    /// Optional alignment file (as written by `mutate`); when absent the
    /// alignment is computed from the sequences.
    #[arg(long)]
    alignment: Option<PathBuf>,

    /// Index file to write.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let target = seqio::read_sequence(&args.target)?;
    let stored = build_index(&args, &target)?;

    let mut w = BufWriter::new(File::create(&args.out)?);
    let sizes = write_container(&mut w, &stored)?;
    emit_sizes(out, &stored, &sizes, &args.out);
    Ok(())
}

fn build_index(args: &Args, target: &[u8]) -> CliResult<StoredIndex> {
    let reference = |args: &Args| -> CliResult<Vec<u8>> {
        let path = args.reference.as_ref().ok_or_else(|| {
            CliError::Usage("this mode needs --reference".into())
        })?;
        seqio::read_sequence(path)
    };
    let alignment_file = |args: &Args| -> CliResult<Option<Alignment>> {
        match &args.alignment {
            None => Ok(None),
            Some(path) => {
                let mut r = BufReader::new(File::open(path)?);
                Ok(Some(read_alignment(&mut r)?))
            }
        }
    };

    Ok(match args.mode {
        Mode::PlainFm => StoredIndex::Plain(FMIndex::from_text(target)?),
        Mode::RelativeFm | Mode::RelativeFmSelect => {
            let reference = reference(args)?;
            let index = match alignment_file(args)? {
                Some(al) => RelativeFMIndex::build_with_alignment(&reference, target, &al)?,
                None => RelativeFMIndex::build(&reference, target)?,
            };
            StoredIndex::Relative {
                index,
                with_select: args.mode == Mode::RelativeFmSelect,
            }
        }
        Mode::RelativeSelect => {
            let reference = reference(args)?;
            let alignment = match alignment_file(args)? {
                Some(al) => al,
                None => common_subsequence(&reference, target),
            };
            let base = Arc::new(IndexedSequence::build(&reference)?);
            StoredIndex::RawRelative(RelativeSelect::build(base, target, &alignment)?)
        }
    })
}

pub fn emit_sizes(out: &Output, stored: &StoredIndex, sizes: &ComponentSizes, path: &Path) {
    for (name, bytes) in &sizes.entries {
        out.emit(
            Record::new("size")
                .field("component", name.as_str())
                .field("bytes", *bytes),
        );
    }
    let mut record = Record::new("build")
        .field("mode", stored.mode_name())
        .field("file", path.display().to_string())
        .field("total-bytes", sizes.total());
    if matches!(stored, StoredIndex::Relative { .. }) {
        // Target-specific storage, excluding the shared reference index.
        record = record.field(
            "relative-bytes",
            sizes.total_where(|n| n != "reference-bwt"),
        );
    }
    out.emit(record);
}
