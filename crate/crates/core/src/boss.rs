//! Edge-BWTs of order-k de Bruijn graphs.
//!
//! Nodes are the k-mers of a string and each distinct (k+1)-mer is an
//! edge from its length-k prefix, labeled with its last character. A
//! chain of dummy sources padded with `$` leads into the first k-mer,
//! and one `$`-labeled edge leaves the last k-mer. Sorting the edges in
//! right-to-left lexicographic order of their source (ties by label) and
//! concatenating the labels gives a BWT-like string over the edges.
//! Edge-BWTs of similar strings stay close in edit distance, so one can
//! be stored relative to the other.

use std::collections::HashSet;
use std::sync::Arc;

use crate::alignment::{common_subsequence, edit_distance};
use crate::error::{Error, Result};
use crate::fm::SENTINEL;
use crate::relative::RelativeSelect;
use crate::sequence::IndexedSequence;

/// One edge: a source k-mer (possibly `$`-padded) and its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: Vec<u8>,
    pub label: u8,
}

/// The edges of a string's order-k de Bruijn graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    k: usize,
    edges: Vec<Edge>,
    sorted: bool,
}

impl EdgeList {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.sorted
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorts edges by right-to-left lexicographic order of their source,
    /// ties by label. Idempotent.
    pub fn sort(&mut self) {
        self.edges.sort_by(|a, b| {
            let ra = a.source.iter().rev();
            let rb = b.source.iter().rev();
            ra.cmp(rb).then(a.label.cmp(&b.label))
        });
        self.sorted = true;
    }

    /// The labels in current order; on a sorted list this is the
    /// edge-BWT.
    pub fn labels(&self) -> Vec<u8> {
        self.edges.iter().map(|e| e.label).collect()
    }

    /// `(source, label)` rows for display, as strings.
    pub fn rows(&self) -> Vec<(String, char)> {
        self.edges
            .iter()
            .map(|e| {
                (
                    String::from_utf8_lossy(&e.source).into_owned(),
                    e.label as char,
                )
            })
            .collect()
    }
}

/// Collects the distinct edges of `text`'s order-k de Bruijn graph:
/// dummy chain, one edge per distinct (k+1)-mer, and the terminal edge.
pub fn build_edges(text: &[u8], k: usize) -> Result<EdgeList> {
    if k == 0 {
        return Err(Error::InvalidInput("graph order must be at least 1".into()));
    }
    if text.len() < k {
        return Err(Error::InvalidInput(format!(
            "text of length {} is shorter than the graph order {k}",
            text.len()
        )));
    }
    if text.contains(&SENTINEL) {
        return Err(Error::InvalidInput(
            "text must not contain the dummy symbol '$'".into(),
        ));
    }

    let mut edges = Vec::new();
    // Dummy chain into the first k-mer: $^k -> text[1], then each prefix
    // of the first k-mer padded with dollars.
    for j in 0..k {
        let mut source = vec![SENTINEL; k - j];
        source.extend_from_slice(&text[..j]);
        edges.push(Edge {
            source,
            label: text[j],
        });
    }
    // Distinct (k+1)-mers.
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for window in text.windows(k + 1) {
        if seen.insert(window) {
            edges.push(Edge {
                source: window[..k].to_vec(),
                label: window[k],
            });
        }
    }
    // Terminal edge out of the final k-mer.
    edges.push(Edge {
        source: text[text.len() - k..].to_vec(),
        label: SENTINEL,
    });
    Ok(EdgeList {
        k,
        edges,
        sorted: false,
    })
}

/// The edge-BWT of `text`'s order-k de Bruijn graph.
pub fn edge_bwt(text: &[u8], k: usize) -> Result<Vec<u8>> {
    let mut edges = build_edges(text, k)?;
    edges.sort();
    Ok(edges.labels())
}

/// A select structure for one edge-BWT stored relative to another,
/// plus the distance statistics between the two.
#[derive(Clone, Debug)]
pub struct RelativeEdgeBwt {
    pub relative: RelativeSelect,
    pub levenshtein: usize,
    pub d_indel: usize,
}

/// Builds the edge-BWTs of both texts and a relative select structure
/// answering queries on the second through an index of the first.
pub fn relative_edge_bwt(text1: &[u8], text2: &[u8], k: usize) -> Result<RelativeEdgeBwt> {
    let eb1 = edge_bwt(text1, k)?;
    let eb2 = edge_bwt(text2, k)?;
    let alignment = common_subsequence(&eb1, &eb2);
    let d_indel = alignment.d_indel();
    let levenshtein = edit_distance(&eb1, &eb2)?;
    let base = Arc::new(IndexedSequence::build(&eb1)?);
    let relative = RelativeSelect::build(base, &eb2, &alignment)?;
    Ok(RelativeEdgeBwt {
        relative,
        levenshtein,
        d_indel,
    })
}
