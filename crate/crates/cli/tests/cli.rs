//! End-to-end tests of the `relsel` binary: pipelines, formats, and
//! exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn relsel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relsel"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_records(out: &Output) -> Vec<serde_json::Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid json line"))
        .collect()
}

fn field<'a>(records: &'a [serde_json::Value], record: &str, key: &str) -> &'a serde_json::Value {
    records
        .iter()
        .find(|r| r["record"] == record)
        .unwrap_or_else(|| panic!("no {record} record"))
        .get(key)
        .unwrap_or_else(|| panic!("no {key} in {record}"))
}

struct Workspace {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

fn workspace() -> Workspace {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    Workspace { _dir: dir, path }
}

#[test]
fn bwt_round_trip_via_cli() {
    let ws = workspace();
    let out = relsel(&ws.path, &["bwt", "--text", "banana"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "annb$aa");

    let out = relsel(&ws.path, &["bwt", "--text", "annb$aa", "--inverse"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "banana");
}

#[test]
fn boss_matrix_matches_reference_rows() {
    let ws = workspace();
    let out = relsel(
        &ws.path,
        &["boss", "--text", "TACGTCGACGACT", "--k", "3", "--matrix"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("TCCGTGGATAA$C"));
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with("edge-bwt."))
        .collect();
    assert_eq!(
        rows,
        vec![
            "$$$ T", "CGA C", "$TA C", "GAC G", "GAC T", "TAC G", "GTC G", "ACG A", "ACG T",
            "TCG A", "$$T A", "ACT $", "CGT C",
        ]
    );

    let out = relsel(
        &ws.path,
        &[
            "--format",
            "json",
            "boss",
            "--text",
            "TACGTCGACGACT",
            "--k",
            "3",
            "--second-text",
            "TACGACGCGACT",
        ],
    );
    let records = json_records(&out);
    assert_eq!(field(&records, "edge-bwt", "labels"), "TCCGTGGATAA$C");
    assert_eq!(field(&records, "relative-edge-bwt", "labels2"), "TCCGTGGACAA$");
    assert_eq!(field(&records, "relative-edge-bwt", "levenshtein"), 2);
}

#[test]
fn mutate_is_deterministic() {
    let ws = workspace();
    let args = [
        "mutate", "--seed", "11", "--length", "5000", "--sub-rate", "0.01", "--indel-rate",
        "0.002", "--out", "a",
    ];
    assert!(relsel(&ws.path, &args).status.success());
    let mut args2 = args;
    args2[args.len() - 1] = "b";
    assert!(relsel(&ws.path, &args2).status.success());
    for suffix in [".1.seq", ".2.seq", ".alignment"] {
        let a = std::fs::read(ws.path.join(format!("a{suffix}"))).unwrap();
        let b = std::fs::read(ws.path.join(format!("b{suffix}"))).unwrap();
        assert_eq!(a, b, "{suffix} differs under the same seed");
    }

    // Zero rates copy the input exactly.
    let out = relsel(
        &ws.path,
        &[
            "--format", "json", "mutate", "--seed", "3", "--length", "400", "--sub-rate", "0",
            "--indel-rate", "0", "--out", "c",
        ],
    );
    let records = json_records(&out);
    assert_eq!(field(&records, "mutate", "d-indel"), 0);
    let t1 = std::fs::read(ws.path.join("c.1.seq")).unwrap();
    let t2 = std::fs::read(ws.path.join("c.2.seq")).unwrap();
    assert_eq!(t1, t2);
}

#[test]
fn build_query_pipeline_digests_agree() {
    let ws = workspace();
    assert!(relsel(
        &ws.path,
        &[
            "mutate", "--seed", "9", "--length", "8000", "--sub-rate", "0.005", "--indel-rate",
            "0.001", "--out", "pair",
        ],
    )
    .status
    .success());
    for (mode, file) in [
        ("plain-fm", "plain.idx"),
        ("relative-fm", "rank.idx"),
        ("relative-fm+select", "sel.idx"),
    ] {
        let mut args = vec![
            "build", "--mode", mode, "--target", "pair.2.seq", "--out", file,
        ];
        if mode != "plain-fm" {
            args.extend_from_slice(&["--reference", "pair.1.seq", "--alignment", "pair.alignment"]);
        }
        let out = relsel(&ws.path, &args);
        assert!(out.status.success(), "build {mode}: {}", stdout(&out));
    }

    let digest_of = |index: &str, kind: &str| -> String {
        let out = relsel(
            &ws.path,
            &[
                "--format", "json", "query", "--index", index, "--kind", kind, "--queries",
                "5000", "--seed", "77", "--batches", "1",
            ],
        );
        assert!(out.status.success(), "query {kind} on {index}");
        let records = json_records(&out);
        field(&records, "query", "digest").as_str().unwrap().to_string()
    };

    let plain_psi = digest_of("plain.idx", "psi");
    assert_eq!(plain_psi, digest_of("sel.idx", "psi"));
    assert_eq!(plain_psi, digest_of("sel.idx", "psi-binary"));
    assert_eq!(plain_psi, digest_of("rank.idx", "psi-binary"));

    // Zero queries: the empty digest, identical everywhere.
    let empty = |index: &str| -> String {
        let out = relsel(
            &ws.path,
            &[
                "--format", "json", "query", "--index", index, "--kind", "psi", "--queries",
                "0", "--seed", "77",
            ],
        );
        assert!(out.status.success());
        let records = json_records(&out);
        field(&records, "query", "digest").as_str().unwrap().to_string()
    };
    assert_eq!(empty("plain.idx"), empty("sel.idx"));
    let plain_lf = digest_of("plain.idx", "lf");
    assert_eq!(plain_lf, digest_of("rank.idx", "lf"));
    assert_eq!(plain_lf, digest_of("sel.idx", "lf"));
    for kind in ["rank", "access"] {
        let d = digest_of("plain.idx", kind);
        assert_eq!(d, digest_of("rank.idx", kind));
        assert_eq!(d, digest_of("sel.idx", kind));
    }
    assert_eq!(digest_of("plain.idx", "select"), digest_of("sel.idx", "select"));

    // At a scale where marker vectors amortize their headers, the
    // relative components undercut the plain target index.
    assert!(relsel(
        &ws.path,
        &[
            "mutate", "--seed", "2", "--length", "100000", "--sub-rate", "0.001",
            "--indel-rate", "0.0002", "--out", "big",
        ],
    )
    .status
    .success());
    let out = relsel(
        &ws.path,
        &[
            "--format", "json", "build", "--mode", "relative-fm+select", "--target",
            "big.2.seq", "--reference", "big.1.seq", "--alignment", "big.alignment", "--out",
            "sel2.idx",
        ],
    );
    let records = json_records(&out);
    let relative_bytes = field(&records, "build", "relative-bytes").as_u64().unwrap();
    let out = relsel(
        &ws.path,
        &[
            "--format", "json", "build", "--mode", "plain-fm", "--target", "big.2.seq",
            "--out", "plain2.idx",
        ],
    );
    let records = json_records(&out);
    let plain_bytes = field(&records, "build", "total-bytes").as_u64().unwrap();
    assert!(
        relative_bytes < plain_bytes,
        "relative {relative_bytes} B vs plain {plain_bytes} B"
    );
}

#[test]
fn dump_reproduces_the_worked_example_table() {
    let ws = workspace();
    std::fs::write(ws.path.join("s1.seq"), "TCTGCGTAAAAGGTGC").unwrap();
    std::fs::write(ws.path.join("s2.seq"), "TGCTCGTAAAACGCG").unwrap();
    assert!(relsel(
        &ws.path,
        &[
            "build", "--mode", "relative-select", "--target", "s2.seq", "--reference", "s1.seq",
            "--out", "raw.idx",
        ],
    )
    .status
    .success());
    let out = relsel(&ws.path, &["dump", "--index", "raw.idx"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "removed-marks = 0001000000010101",
        "removed-marks[A] = 0000",
        "removed-marks[C] = 001",
        "removed-marks[G] = 10100",
        "removed-marks[T] = 0001",
        "inserted-marks = 010000000001010",
        "inserted-marks[A] = 0000",
        "inserted-marks[C] = 0011",
        "inserted-marks[G] = 1000",
        "inserted-marks[T] = 000",
        "extra-chars = GCC",
    ] {
        assert!(text.contains(line), "dump missing: {line}\n{text}");
    }
}

#[test]
fn bench_runs_at_toy_scale() {
    let ws = workspace();
    let out = relsel(
        &ws.path,
        &[
            "--format", "json", "bench", "--seed", "3", "--length", "4000", "--sub-rate",
            "0.01", "--indel-rate", "0.002", "--queries", "2000", "--batches", "2",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = json_records(&out);
    let benches: Vec<_> = records.iter().filter(|r| r["record"] == "bench").collect();
    assert_eq!(benches.len(), 3);
    let modes: Vec<&str> = benches
        .iter()
        .map(|r| r["mode"].as_str().unwrap())
        .collect();
    assert_eq!(modes, vec!["plain-fm", "relative-fm", "relative-fm+select"]);
    for b in &benches {
        assert!(b["space-bytes"].as_u64().unwrap() > 0);
        assert!(b["psi-ns"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn exit_codes_distinguish_usage_and_data_errors() {
    let ws = workspace();
    // Unknown flag: usage.
    let out = relsel(&ws.path, &["query", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing subcommand: usage.
    let out = relsel(&ws.path, &[]);
    assert_eq!(out.status.code(), Some(1));
    // Missing input file: data error.
    let out = relsel(
        &ws.path,
        &["build", "--mode", "plain-fm", "--target", "missing.seq", "--out", "x.idx"],
    );
    assert_eq!(out.status.code(), Some(2));
    // Corrupt index: data error.
    std::fs::write(ws.path.join("junk.idx"), b"not an index").unwrap();
    let out = relsel(
        &ws.path,
        &["query", "--index", "junk.idx", "--kind", "lf", "--queries", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
    // Unsupported query kind for the mode: usage.
    std::fs::write(ws.path.join("s1.seq"), "ACGTACGTAC").unwrap();
    std::fs::write(ws.path.join("s2.seq"), "ACGTACGTAC").unwrap();
    assert!(relsel(
        &ws.path,
        &[
            "build", "--mode", "relative-fm", "--target", "s2.seq", "--reference", "s1.seq",
            "--out", "r.idx",
        ],
    )
    .status
    .success());
    let out = relsel(
        &ws.path,
        &["query", "--index", "r.idx", "--kind", "select", "--queries", "1"],
    );
    assert_eq!(out.status.code(), Some(1));
    // Help is a success.
    let out = relsel(&ws.path, &["--help"]);
    assert_eq!(out.status.code(), Some(0));
    // Invalid rates: data error.
    let out = relsel(
        &ws.path,
        &[
            "mutate", "--seed", "1", "--length", "10", "--sub-rate", "2.0", "--indel-rate",
            "0", "--out", "z",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fasta_input_is_accepted() {
    let ws = workspace();
    std::fs::write(
        ws.path.join("ref.fa"),
        ">seq1 description\nGCACTTAGAGG\ntcagt\n",
    )
    .unwrap();
    let out = relsel(&ws.path, &["bwt", "--input", "ref.fa"]);
    assert!(out.status.success());
    // Same transform as the raw uppercase text.
    let direct = relsel(&ws.path, &["bwt", "--text", "GCACTTAGAGGTCAGT"]);
    assert_eq!(stdout(&out), stdout(&direct));
}
