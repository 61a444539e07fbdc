//! `relsel dump` — print the components of an index file.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use relsel::bits::BitVector;
use relsel::relative::RelativeSelect;
use relsel::sequence::IndexedSequence;
use relsel::serial::{read_container, StoredIndex};

use crate::output::{Output, Record};
use crate::CliResult;

#[derive(clap::Args)]
pub struct Args {
    /// Index file written by `build`.
    #[arg(long)]
    index: PathBuf,

    /// Print bit vectors and strings verbatim up to this length;
    /// longer components are summarized.
    #[arg(long, default_value_t = 512)]
    limit: usize,
}

pub fn run(args: Args, out: &Output) -> CliResult<()> {
    let mut r = BufReader::new(File::open(&args.index)?);
    let stored = read_container(&mut r)?;
    kv(out, "mode", stored.mode_name().to_string());
    match &stored {
        StoredIndex::Plain(fm) => {
            dump_sequence(out, &args, "target-bwt", fm.bwt());
        }
        StoredIndex::Relative { index, with_select } => {
            dump_sequence(out, &args, "reference-bwt", index.reference().bwt());
            dump_relative(out, &args, index.relative(), *with_select);
        }
        StoredIndex::RawRelative(rel) => {
            dump_sequence(out, &args, "base", rel.base());
            dump_relative(out, &args, rel, true);
        }
    }
    Ok(())
}

fn kv(out: &Output, name: &str, value: String) {
    if out.is_json() {
        out.emit(
            Record::new("component")
                .field("name", name)
                .field("value", value),
        );
    } else {
        println!("{name} = {value}");
    }
}

fn dump_sequence(out: &Output, args: &Args, name: &str, seq: &IndexedSequence) {
    let alphabet = String::from_utf8_lossy(seq.alphabet()).into_owned();
    kv(out, &format!("{name}.length"), seq.len().to_string());
    kv(out, &format!("{name}.alphabet"), alphabet);
    if seq.len() <= args.limit {
        kv(
            out,
            name,
            String::from_utf8_lossy(&seq.to_bytes()).into_owned(),
        );
    } else {
        for &c in seq.alphabet() {
            kv(
                out,
                &format!("{name}.occ[{}]", c as char),
                seq.occ(c).to_string(),
            );
        }
    }
}

fn dump_bits(out: &Output, args: &Args, name: &str, bits: &BitVector) {
    if bits.len() <= args.limit {
        kv(out, name, bits.to_bit_string());
    } else {
        kv(
            out,
            name,
            format!("length={}, ones={}", bits.len(), bits.count_ones()),
        );
    }
}

fn dump_relative(out: &Output, args: &Args, rel: &RelativeSelect, with_select: bool) {
    let sub = rel.subsequence();
    dump_bits(out, args, "removed-marks", sub.removed_marks());
    for (c, bits) in sub.removed_char_marks().iter() {
        dump_bits(out, args, &format!("removed-marks[{}]", c as char), bits);
    }
    let sup = rel.supersequence();
    dump_bits(out, args, "inserted-marks", sup.inserted_marks());
    if with_select {
        for (c, bits) in sup.inserted_char_marks().iter() {
            dump_bits(out, args, &format!("inserted-marks[{}]", c as char), bits);
        }
    }
    dump_sequence(out, args, "extra-chars", sup.extra_chars());
}
