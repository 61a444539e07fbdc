//! Common subsequences, edit distance, and the marker masks the relative
//! structures are built from.
//!
//! [`common_subsequence`] returns a longest common subsequence as a list
//! of matched position pairs. Small inputs go through a quadratic table
//! whose traceback prefers pairing up mismatched characters over lone
//! insertions and deletions, so runs of substitutions keep the
//! surrounding characters aligned position by position. Large inputs use
//! the greedy O(ND) difference algorithm with the linear-space
//! divide-and-conquer refinement; both paths produce a maximum-length
//! subsequence, deterministically.

use crate::error::{Error, Result};

/// Work budget for quadratic table algorithms, in cells.
pub const DEFAULT_DP_BUDGET: u128 = 1 << 31;

/// Area threshold below which the quadratic LCS table is used.
const DP_AREA_LIMIT: usize = 1 << 20;

/// A common subsequence of two strings as matched position pairs,
/// strictly increasing in both coordinates, plus the edit statistics
/// derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    n1: usize,
    n2: usize,
    matches: Vec<(u32, u32)>,
}

impl Alignment {
    /// Wraps validated match pairs (1-based positions into each string).
    pub fn new(n1: usize, n2: usize, matches: Vec<(u32, u32)>) -> Result<Self> {
        for (k, &(p, q)) in matches.iter().enumerate() {
            let (p, q) = (p as usize, q as usize);
            if p < 1 || p > n1 || q < 1 || q > n2 {
                return Err(Error::InvalidInput(format!(
                    "match ({p}, {q}) outside strings of length {n1}, {n2}"
                )));
            }
            if k > 0 && (matches[k - 1].0 >= p as u32 || matches[k - 1].1 >= q as u32) {
                return Err(Error::InvalidInput(
                    "matches must be strictly increasing in both coordinates".into(),
                ));
            }
        }
        Ok(Alignment { n1, n2, matches })
    }

    /// The identity alignment of a string with itself.
    pub fn identity(n: usize) -> Self {
        Alignment {
            n1: n,
            n2: n,
            matches: (1..=n as u32).map(|i| (i, i)).collect(),
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Length of the common subsequence.
    pub fn len_c(&self) -> usize {
        self.matches.len()
    }

    /// Insertions plus deletions implied by this alignment. Equals the
    /// indel edit distance when the matches form a longest common
    /// subsequence.
    pub fn d_indel(&self) -> usize {
        (self.n1 - self.len_c()) + (self.n2 - self.len_c())
    }

    /// The matched pairs, 1-based.
    pub fn matches(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.matches.iter().map(|&(p, q)| (p as usize, q as usize))
    }

    /// Marker masks over each string: a 1 marks a character that does
    /// not survive into the common subsequence.
    pub fn marker_masks(&self) -> (Vec<bool>, Vec<bool>) {
        let mut mask1 = vec![true; self.n1];
        let mut mask2 = vec![true; self.n2];
        for &(p, q) in &self.matches {
            mask1[p as usize - 1] = false;
            mask2[q as usize - 1] = false;
        }
        (mask1, mask2)
    }

    /// Materializes the common subsequence from the first string.
    pub fn common_string(&self, s1: &[u8]) -> Vec<u8> {
        self.matches
            .iter()
            .map(|&(p, _)| s1[p as usize - 1])
            .collect()
    }

    /// Checks every matched pair against the actual strings.
    pub fn check_matches(&self, s1: &[u8], s2: &[u8]) -> Result<()> {
        if s1.len() != self.n1 || s2.len() != self.n2 {
            return Err(Error::InvalidInput(format!(
                "alignment covers lengths {}, {} but strings have {}, {}",
                self.n1,
                self.n2,
                s1.len(),
                s2.len()
            )));
        }
        for &(p, q) in &self.matches {
            if s1[p as usize - 1] != s2[q as usize - 1] {
                return Err(Error::InvalidInput(format!(
                    "matched pair ({p}, {q}) pairs different characters"
                )));
            }
        }
        Ok(())
    }
}

/// Computes a longest common subsequence of `s1` and `s2`.
pub fn common_subsequence(s1: &[u8], s2: &[u8]) -> Alignment {
    if s1 == s2 {
        return Alignment::identity(s1.len());
    }
    let area = (s1.len() + 1).saturating_mul(s2.len() + 1);
    let matches = if area <= DP_AREA_LIMIT {
        dp_lcs(s1, s2)
    } else {
        myers_lcs(s1, s2)
    };
    Alignment {
        n1: s1.len(),
        n2: s2.len(),
        matches,
    }
}

/// Quadratic-table LCS. The traceback prefers, in order: matching equal
/// characters, skipping one character from each string when that loses
/// nothing (a substitution), skipping from `s1`, skipping from `s2`.
fn dp_lcs(a: &[u8], b: &[u8]) -> Vec<(u32, u32)> {
    let (n, m) = (a.len(), b.len());
    let width = m + 1;
    // table[i * width + j] = LCS length of a[i..], b[j..]
    let mut table = vec![0u32; (n + 1) * width];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            table[i * width + j] = if a[i] == b[j] {
                table[(i + 1) * width + j + 1] + 1
            } else {
                table[(i + 1) * width + j].max(table[i * width + j + 1])
            };
        }
    }
    let mut out = Vec::with_capacity(table[0] as usize);
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        let cur = table[i * width + j];
        if a[i] == b[j] {
            out.push((i as u32 + 1, j as u32 + 1));
            i += 1;
            j += 1;
        } else if table[(i + 1) * width + j + 1] == cur {
            i += 1;
            j += 1;
        } else if table[(i + 1) * width + j] == cur {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Growable furthest-reaching endpoint array indexed by diagonal.
struct DiagonalArray {
    v: Vec<isize>,
    center: usize,
}

impl DiagonalArray {
    fn new() -> Self {
        DiagonalArray {
            v: vec![0; 16],
            center: 8,
        }
    }

    fn reset(&mut self, max_d: usize) {
        if self.center < max_d + 2 {
            let center = (max_d + 2).next_power_of_two();
            self.v = vec![0; 2 * center];
            self.center = center;
        }
        // Only diagonal +1 is read before being written.
        self.v[self.center + 1] = 0;
    }

    fn get(&self, k: isize) -> isize {
        self.v[(self.center as isize + k) as usize]
    }

    fn set(&mut self, k: isize, x: isize) {
        self.v[(self.center as isize + k) as usize] = x;
    }
}

/// Greedy O(ND) LCS with the linear-space divide-and-conquer refinement.
fn myers_lcs(a: &[u8], b: &[u8]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut forward = DiagonalArray::new();
    let mut backward = DiagonalArray::new();
    myers_recurse(a, b, 0, 0, &mut forward, &mut backward, &mut out);
    out
}

fn myers_recurse(
    a: &[u8],
    b: &[u8],
    off_a: usize,
    off_b: usize,
    forward: &mut DiagonalArray,
    backward: &mut DiagonalArray,
    out: &mut Vec<(u32, u32)>,
) {
    // Strip the common prefix and suffix; those characters match directly.
    let mut start = 0;
    while start < a.len() && start < b.len() && a[start] == b[start] {
        out.push((off_a as u32 + start as u32 + 1, off_b as u32 + start as u32 + 1));
        start += 1;
    }
    let (a, b) = (&a[start..], &b[start..]);
    let (off_a, off_b) = (off_a + start, off_b + start);
    let mut tail = 0;
    while tail < a.len() && tail < b.len() && a[a.len() - 1 - tail] == b[b.len() - 1 - tail] {
        tail += 1;
    }
    let (a, b) = (&a[..a.len() - tail], &b[..b.len() - tail]);

    if !a.is_empty() && !b.is_empty() {
        let (x, y, u, v) = middle_snake(a, b, forward, backward);
        myers_recurse(&a[..x], &b[..y], off_a, off_b, forward, backward, out);
        for t in 0..(u - x) {
            out.push((off_a as u32 + x as u32 + t as u32 + 1, off_b as u32 + y as u32 + t as u32 + 1));
        }
        myers_recurse(&a[u..], &b[v..], off_a + u, off_b + v, forward, backward, out);
    }

    for t in (0..tail).rev() {
        out.push((
            (off_a + a.len() + tail - 1 - t) as u32 + 1,
            (off_b + b.len() + tail - 1 - t) as u32 + 1,
        ));
    }
}

/// Finds a middle snake `(x, y) -> (u, v)` of an optimal edit script.
/// Both inputs are nonempty and share no common prefix or suffix, so the
/// script length is at least 2 and both subproblems strictly shrink.
fn middle_snake(
    a: &[u8],
    b: &[u8],
    forward: &mut DiagonalArray,
    backward: &mut DiagonalArray,
) -> (usize, usize, usize, usize) {
    let n = a.len() as isize;
    let m = b.len() as isize;
    let delta = n - m;
    let odd = delta % 2 != 0;
    let max_d = ((n + m) / 2 + 1) as usize;
    forward.reset(max_d);
    backward.reset(max_d);

    for d in 0..=(max_d as isize) {
        let mut k = -d;
        while k <= d {
            // Forward furthest-reaching path on diagonal k.
            let mut x = if k == -d || (k != d && forward.get(k - 1) < forward.get(k + 1)) {
                forward.get(k + 1)
            } else {
                forward.get(k - 1) + 1
            };
            let mut y = x - k;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[x as usize] == b[y as usize] {
                x += 1;
                y += 1;
            }
            forward.set(k, x);
            if odd {
                // Reverse paths of length d-1 exist on diagonals
                // (in reverse coordinates) -(d-1)..=(d-1).
                let rk = delta - k;
                if rk >= -(d - 1) && rk < d && x + backward.get(rk) >= n {
                    return (x0 as usize, y0 as usize, x as usize, y as usize);
                }
            }
            k += 2;
        }

        let mut k = -d;
        while k <= d {
            // Reverse furthest-reaching path, expressed as a forward
            // path over the reversed strings.
            let mut x = if k == -d || (k != d && backward.get(k - 1) < backward.get(k + 1)) {
                backward.get(k + 1)
            } else {
                backward.get(k - 1) + 1
            };
            let mut y = x - k;
            let (x0, y0) = (x, y);
            while x < n && y < m && a[(n - 1 - x) as usize] == b[(m - 1 - y) as usize] {
                x += 1;
                y += 1;
            }
            backward.set(k, x);
            if !odd {
                let fk = delta - k;
                if fk >= -d && fk <= d && x + forward.get(fk) >= n {
                    // The reverse snake ran from (n-x0, m-y0) back to
                    // (n-x, m-y) in forward coordinates.
                    return (
                        (n - x) as usize,
                        (m - y) as usize,
                        (n - x0) as usize,
                        (m - y0) as usize,
                    );
                }
            }
            k += 2;
        }
    }
    unreachable!("middle snake must exist within (n + m) / 2 + 1 steps")
}

/// Unit-cost Levenshtein distance with the default work budget.
pub fn edit_distance(s1: &[u8], s2: &[u8]) -> Result<usize> {
    edit_distance_with_budget(s1, s2, DEFAULT_DP_BUDGET)
}

/// Unit-cost Levenshtein distance; errors when the table would exceed
/// `budget` cells.
pub fn edit_distance_with_budget(s1: &[u8], s2: &[u8], budget: u128) -> Result<usize> {
    let required = (s1.len() as u128 + 1) * (s2.len() as u128 + 1);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    // Roll over the shorter string to keep the live row small.
    let (long, short) = if s1.len() >= s2.len() { (s1, s2) } else { (s2, s1) };
    let mut prev: Vec<u32> = (0..=short.len() as u32).collect();
    let mut cur = vec![0u32; short.len() + 1];
    for (i, &cl) in long.iter().enumerate() {
        cur[0] = i as u32 + 1;
        for (j, &cs) in short.iter().enumerate() {
            let sub = prev[j] + (cl != cs) as u32;
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(*prev.last().unwrap() as usize)
}
