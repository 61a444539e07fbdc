//! Sequence file reading: raw byte text or minimal FASTA.
//!
//! A file whose first non-whitespace byte is `>` is treated as FASTA:
//! header lines are skipped, sequence lines are uppercased, and bytes
//! outside A/C/G/T map to `N`. Anything else is raw text with ASCII
//! whitespace stripped.

use std::fs;
use std::path::Path;

use crate::{CliError, CliResult};

pub fn read_sequence(path: &Path) -> CliResult<Vec<u8>> {
    let data = fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_sequence(&data))
}

pub fn parse_sequence(data: &[u8]) -> Vec<u8> {
    let first = data.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'>') {
        let mut out = Vec::with_capacity(data.len());
        for line in data.split(|&b| b == b'\n') {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.first() == Some(&b'>') || line.is_empty() {
                continue;
            }
            for &b in line {
                if b.is_ascii_whitespace() {
                    continue;
                }
                let up = b.to_ascii_uppercase();
                out.push(match up {
                    b'A' | b'C' | b'G' | b'T' => up,
                    _ => b'N',
                });
            }
        }
        out
    } else {
        data.iter()
            .copied()
            .filter(|b| !b.is_ascii_whitespace())
            .collect()
    }
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}
