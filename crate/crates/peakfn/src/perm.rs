//! Permutations, descent/peak/valley statistics, pattern containment, and
//! avoidance-class enumeration.
//!
//! Permutations are stored in one-line notation as a rearrangement of `1..=n`.
//! The empty permutation (size 0) is permitted and avoids every pattern.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported permutation size. Keeps entries in `u8` and lets the
/// enumerator track used values in a single `u64` mask.
pub const MAX_SIZE: usize = 64;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation, checking that `entries` is a rearrangement of `1..=n`.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n > MAX_SIZE {
            return Err(Error::InvalidPermutation(format!(
                "size {n} exceeds maximum {MAX_SIZE}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "entries are not a rearrangement of 1..={n}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { entries })
    }

    /// The empty permutation.
    pub fn empty() -> Self {
        Permutation {
            entries: Vec::new(),
        }
    }

    /// The increasing permutation `12...n`.
    pub fn increasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u8).collect(),
        }
    }

    /// The decreasing permutation `n...21`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u8).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.entries
    }

    /// The descent set `{i : p_i > p_{i+1}}`.
    pub fn descent_set(&self) -> IndexSet {
        descent_set_of_word(&self.entries)
    }

    /// The peak set `Peak(Des(p))`: descents `s` with `s != 1` and `s-1` not a descent.
    pub fn peak_set(&self) -> IndexSet {
        self.descent_set().peak_set()
    }

    /// Indices `i` with `p_{i-1} > p_i < p_{i+1}` (so `2 <= i <= n-1`).
    pub fn valley_set(&self) -> IndexSet {
        let n = self.size();
        let mut elems = Vec::new();
        for i in 1..n.saturating_sub(1) {
            if self.entries[i - 1] > self.entries[i] && self.entries[i] < self.entries[i + 1] {
                elems.push((i + 1) as u8);
            }
        }
        IndexSet::new(elems, n).expect("valley set is within range")
    }

    /// Applies one of the four classical symmetries.
    pub fn apply_symmetry(&self, which: Symmetry) -> Permutation {
        match which {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::ReverseComplement => self.reverse().complement(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    pub fn reverse(&self) -> Permutation {
        let mut entries = self.entries.clone();
        entries.reverse();
        Permutation { entries }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.size() as u8;
        Permutation {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0u8; self.size()];
        for (i, &v) in self.entries.iter().enumerate() {
            entries[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { entries }
    }

    /// True iff some subsequence of `self` standardizes to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains_pattern(&self.entries, &pattern.entries)
    }

    /// True iff `self` contains none of the given patterns.
    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        !patterns.iter().any(|t| self.contains(t))
    }

    /// Replaces the smallest element with 1, the second smallest with 2, and so on.
    pub fn standardize(word: &[u8]) -> Permutation {
        let mut sorted: Vec<u8> = word.to_vec();
        sorted.sort_unstable();
        let entries = word
            .iter()
            .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
            .collect();
        Permutation { entries }
    }
}

impl fmt::Display for Permutation {
    /// Contiguous digits for sizes up to 9, comma-separated entries otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ε");
        }
        if self.size() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts digit strings (`"4612537"`), comma-separated entries
    /// (`"10,3,1,2"`), an optional surrounding `[...]`, and `"ε"`/`""` for the
    /// empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Permutation::empty());
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s);
        let entries: Vec<u8> = if inner.contains(',') {
            inner
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry '{tok}'")))
                })
                .collect::<Result<_>>()?
        } else {
            inner
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit '{c}'")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries)
    }
}

/// The four classical symmetries of the permutation square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
    Inverse,
}

/// A strictly increasing set of indices in `[n-1]`, tagged with its degree `n`.
///
/// Houses descent sets, peak sets, and valley sets, and indexes the peak
/// functions `K_{S,n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    elems: Vec<u8>,
    degree: usize,
}

impl IndexSet {
    /// Builds an index set, checking that elements are strictly increasing and
    /// lie in `1..=degree-1`.
    pub fn new(elems: Vec<u8>, degree: usize) -> Result<Self> {
        for w in elems.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidIndexSet(
                    "elements must be strictly increasing".into(),
                ));
            }
        }
        if let (Some(&first), Some(&last)) = (elems.first(), elems.last()) {
            if first < 1 || last as usize >= degree.max(1) {
                return Err(Error::InvalidIndexSet(format!(
                    "elements must lie in [1, {}]",
                    degree.saturating_sub(1)
                )));
            }
        }
        Ok(IndexSet { elems, degree })
    }

    pub fn empty(degree: usize) -> Self {
        IndexSet {
            elems: Vec::new(),
            degree,
        }
    }

    pub fn elements(&self) -> &[u8] {
        &self.elems
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    /// True iff `1` is absent and no two consecutive integers are both present.
    pub fn is_peak_set(&self) -> bool {
        if self.contains(1) {
            return false;
        }
        self.elems.windows(2).all(|w| w[1] - w[0] >= 2)
    }

    /// `Peak(S) = {s in S : s != 1, s-1 not in S}`, with the same degree.
    pub fn peak_set(&self) -> IndexSet {
        let elems = self
            .elems
            .iter()
            .copied()
            .filter(|&s| s != 1 && !self.contains(s - 1))
            .collect();
        IndexSet {
            elems,
            degree: self.degree,
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elems.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.elems.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.degree)
    }
}

impl IndexSet {
    /// Parses `"{2,5}"`, `"{}"`, or `"∅"` at the given degree.
    pub fn parse(s: &str, degree: usize) -> Result<Self> {
        let s = s.trim();
        if s == "∅" || s == "{}" {
            return Ok(IndexSet::empty(degree));
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}} or ∅, got '{s}'")))?;
        let elems = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad index '{tok}'")))
            })
            .collect::<Result<Vec<u8>>>()?;
        IndexSet::new(elems, degree)
    }
}

/// Ordered by degree, then size, then lexicographically on elements. This is
/// the canonical term order for peak-function indices.
impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.elems.len().cmp(&other.elems.len()))
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Descent set of a word with distinct entries.
pub fn descent_set_of_word(word: &[u8]) -> IndexSet {
    let elems = word
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| (i + 1) as u8)
        .collect();
    IndexSet {
        elems,
        degree: word.len(),
    }
}

/// Peak set of a word with distinct entries.
pub fn peak_set_of_word(word: &[u8]) -> IndexSet {
    descent_set_of_word(word).peak_set()
}

/// A finite set of nonempty patterns defining an avoidance class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct PatternSet {
    patterns: BTreeSet<Permutation>,
}

impl PatternSet {
    /// The empty pattern set (its avoidance class is all of `S_n`).
    pub fn none() -> Self {
        PatternSet::default()
    }

    /// Builds a pattern set; duplicates collapse, the empty permutation is rejected.
    pub fn new<I: IntoIterator<Item = Permutation>>(patterns: I) -> Result<Self> {
        let patterns: BTreeSet<Permutation> = patterns.into_iter().collect();
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidPermutation(
                "the empty permutation is not a valid pattern".into(),
            ));
        }
        Ok(PatternSet { patterns })
    }

    /// Parses a comma-separated list of patterns: `"123,132,312"` or
    /// `"[10,3,1,2],321"`. Sizes above 9 require the bracketed form.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::none());
        }
        let mut patterns = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(',').trim();
            if rest.is_empty() {
                break;
            }
            let token_end = if rest.starts_with('[') {
                rest.find(']')
                    .map(|i| i + 1)
                    .ok_or_else(|| Error::Parse("unclosed '[' in pattern list".into()))?
            } else {
                rest.find(',').unwrap_or(rest.len())
            };
            patterns.push(rest[..token_end].parse::<Permutation>()?);
            rest = &rest[token_end..];
        }
        PatternSet::new(patterns)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.patterns.contains(p)
    }

    /// `Π^r`: every pattern reversed.
    pub fn reverse(&self) -> PatternSet {
        PatternSet {
            patterns: self.patterns.iter().map(Permutation::reverse).collect(),
        }
    }

    /// Applies a symmetry to every pattern.
    pub fn apply_symmetry(&self, which: Symmetry) -> PatternSet {
        PatternSet {
            patterns: self
                .patterns
                .iter()
                .map(|p| p.apply_symmetry(which))
                .collect(),
        }
    }

    /// Canonical text encoding: patterns in sorted order, joined by commas.
    pub fn canonical_string(&self) -> String {
        if self.patterns.is_empty() {
            return "∅".into();
        }
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for PatternSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PatternSet::parse(s)
    }
}

/// For each pattern slot `j`, the previous slot carrying the tightest lower
/// bound and the tightest upper bound on the value assigned to `j`.
fn window_bounds(pat: &[u8]) -> Vec<(Option<usize>, Option<usize>)> {
    let mut out = Vec::with_capacity(pat.len());
    for j in 0..pat.len() {
        let mut lo: Option<usize> = None;
        let mut hi: Option<usize> = None;
        for i in 0..j {
            if pat[i] < pat[j] {
                if lo.is_none_or(|l| pat[l] < pat[i]) {
                    lo = Some(i);
                }
            } else if hi.is_none_or(|h| pat[h] > pat[i]) {
                hi = Some(i);
            }
        }
        out.push((lo, hi));
    }
    out
}

/// True iff some subsequence of `word` standardizes to `pat`.
///
/// Recursive slot-by-slot search; each candidate value is checked only against
/// the tightest previously placed lower and upper bounds.
pub fn contains_pattern(word: &[u8], pat: &[u8]) -> bool {
    let k = pat.len();
    if k == 0 {
        return true;
    }
    if k > word.len() {
        return false;
    }
    let bounds = window_bounds(pat);
    let mut chosen = vec![0u8; k];
    search(word, pat, &bounds, &mut chosen, 0, 0, None)
}

/// True iff some occurrence of `pat` in `word` uses the final position.
///
/// If `word` without its last entry avoids `pat`, this is exactly the test for
/// whether appending that entry created an occurrence.
pub(crate) fn contains_pattern_at_last(word: &[u8], pat: &[u8]) -> bool {
    let k = pat.len();
    if k == 0 || k > word.len() {
        return false;
    }
    let last = *word.last().unwrap();
    if k == 1 {
        return true;
    }
    let bounds = window_bounds(pat);
    let mut chosen = vec![0u8; k - 1];
    // The final slot is pinned to the last entry; each earlier slot must also
    // sit on the correct side of it.
    let pinned = (pat[k - 1], last);
    search(
        &word[..word.len() - 1],
        &pat[..k - 1],
        &bounds[..k - 1],
        &mut chosen,
        0,
        0,
        Some(pinned),
    )
}

fn search(
    word: &[u8],
    pat: &[u8],
    bounds: &[(Option<usize>, Option<usize>)],
    chosen: &mut [u8],
    slot: usize,
    start: usize,
    pinned: Option<(u8, u8)>,
) -> bool {
    if slot == pat.len() {
        return true;
    }
    let remaining = pat.len() - slot;
    for pos in start..=word.len().saturating_sub(remaining) {
        let v = word[pos];
        let (lo, hi) = bounds[slot];
        if let Some(i) = lo {
            if chosen[i] > v {
                continue;
            }
        }
        if let Some(i) = hi {
            if chosen[i] < v {
                continue;
            }
        }
        if let Some((pin_rank, pin_val)) = pinned {
            if (pat[slot] < pin_rank) != (v < pin_val) {
                continue;
            }
        }
        chosen[slot] = v;
        if search(word, pat, bounds, chosen, slot + 1, pos + 1, pinned) {
            return true;
        }
    }
    false
}

/// Enumerates `Av_n(patterns)` in lexicographic order.
pub fn enumerate_av(n: usize, patterns: &PatternSet) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(n, patterns, |w| {
        out.push(Permutation {
            entries: w.to_vec(),
        })
    });
    out
}

/// Number of permutations in `Av_n(patterns)`.
pub fn av_count(n: usize, patterns: &PatternSet) -> u64 {
    let mut count = 0u64;
    for_each_avoider(n, patterns, |_| count += 1);
    count
}

/// Visits every permutation of `Av_n(patterns)` in lexicographic order.
///
/// Permutations are built by prefix extension; a prefix that already contains
/// a pattern is pruned, since no extension can avoid it. Only occurrences
/// using the newly appended entry need to be checked at each step.
pub fn for_each_avoider<F: FnMut(&[u8])>(n: usize, patterns: &PatternSet, mut f: F) {
    assert!(n <= MAX_SIZE, "size {n} exceeds maximum {MAX_SIZE}");
    let pats: Vec<&[u8]> = patterns.iter().map(|p| p.as_slice()).collect();
    let mut prefix: Vec<u8> = Vec::with_capacity(n);
    extend_prefix(n, &pats, &mut prefix, 0, &mut f);
}

fn extend_prefix<F: FnMut(&[u8])>(
    n: usize,
    pats: &[&[u8]],
    prefix: &mut Vec<u8>,
    used: u64,
    f: &mut F,
) {
    if prefix.len() == n {
        f(prefix);
        return;
    }
    for v in 1..=n as u8 {
        if used & (1u64 << v) != 0 {
            continue;
        }
        prefix.push(v);
        if !pats.iter().any(|p| contains_pattern_at_last(prefix, p)) {
            extend_prefix(n, pats, prefix, used | (1u64 << v), f);
        }
        prefix.pop();
    }
}

/// All interleavings of `p` with `q` shifted up by `p.size()`.
///
/// The result has `C(m+n, m)` distinct permutations of size `m+n`.
pub fn shuffle_perms(p: &Permutation, q: &Permutation) -> Vec<Permutation> {
    let m = p.size() as u8;
    let shifted: Vec<u8> = q.as_slice().iter().map(|&v| v + m).collect();
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(p.size() + q.size());
    interleave(p.as_slice(), &shifted, &mut buf, &mut out);
    out.into_iter().collect()
}

fn interleave(a: &[u8], b: &[u8], buf: &mut Vec<u8>, out: &mut BTreeSet<Permutation>) {
    if a.is_empty() && b.is_empty() {
        out.insert(Permutation {
            entries: buf.clone(),
        });
        return;
    }
    if let Some((&first, rest)) = a.split_first() {
        buf.push(first);
        interleave(rest, b, buf, out);
        buf.pop();
    }
    if let Some((&first, rest)) = b.split_first() {
        buf.push(first);
        interleave(a, rest, buf, out);
        buf.pop();
    }
}

/// True iff the multisets of peak sets over `Av_n` agree for the two pattern sets.
pub fn peak_equivalent(a: &PatternSet, b: &PatternSet, n: usize) -> bool {
    peak_histogram(a, n) == peak_histogram(b, n)
}

/// Multiset of peak sets over `Av_n(patterns)`, as a sorted histogram.
pub fn peak_histogram(
    patterns: &PatternSet,
    n: usize,
) -> std::collections::BTreeMap<IndexSet, u64> {
    let mut hist = std::collections::BTreeMap::new();
    for_each_avoider(n, patterns, |w| {
        *hist.entry(peak_set_of_word(w)).or_insert(0) += 1;
    });
    hist
}
