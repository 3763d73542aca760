//! Partitions, Young and shifted diagrams, standard fillings and their
//! descent/peak statistics, reading words, the two-row S/S′ construction, and
//! the a/b/c labeling of two-row shifted tableaux.
//!
//! Rows are stored bottom-up (the first row is the lowest), matching the
//! diagram convention used throughout. Row `i` of a shifted diagram is
//! indented `i-1` cells, so its cell `j` occupies absolute column `i-1+j`
//! (1-indexed).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::perm::{IndexSet, Permutation};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u8>,
}

/// A strictly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StrictPartition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl StrictPartition {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be strictly decreasing".into(),
            ));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn as_partition(&self) -> Partition {
        Partition {
            parts: self.parts.clone(),
        }
    }
}

fn fmt_parts(f: &mut fmt::Formatter<'_>, parts: &[u8]) -> fmt::Result {
    let body: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    write!(f, "({})", body.join(","))
}

fn parse_parts(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad partition part '{tok}'")))
        })
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.parts)
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.parts)
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StrictPartition::new(parse_parts(s)?)
    }
}

/// Ordered by length, then lexicographically descending on parts. Iterating a
/// sorted collection then matches the display order `(9), (8,1), (7,2), ...,
/// (6,2,1), ...` used for Schur Q expansions.
impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts
            .len()
            .cmp(&other.parts.len())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts
            .len()
            .cmp(&other.parts.len())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n`, sorted.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    gen_partitions(n, n, true, &mut parts, &mut out);
    let mut out: Vec<Partition> = out.into_iter().map(|parts| Partition { parts }).collect();
    out.sort();
    out
}

/// All strict partitions of `n`, sorted.
pub fn strict_partitions_of(n: usize) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    gen_partitions(n, n, false, &mut parts, &mut out);
    let mut out: Vec<StrictPartition> = out
        .into_iter()
        .map(|parts| StrictPartition { parts })
        .collect();
    out.sort();
    out
}

fn gen_partitions(rem: usize, max: usize, weak: bool, parts: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if rem == 0 {
        out.push(parts.clone());
        return;
    }
    let hi = rem.min(max);
    for p in (1..=hi).rev() {
        parts.push(p as u8);
        let next_max = if weak { p } else { p.saturating_sub(1) };
        gen_partitions(rem - p, next_max, weak, parts, out);
        parts.pop();
    }
}

/// A standard Young tableau; `rows[0]` is the bottom row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungTableau {
    rows: Vec<Vec<u8>>,
}

/// A standard shifted tableau; row `i` (0-indexed) is indented `i` cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedTableau {
    rows: Vec<Vec<u8>>,
}

fn check_standard_entries(rows: &[Vec<u8>]) -> Result<usize> {
    let n: usize = rows.iter().map(|r| r.len()).sum();
    let mut seen = vec![false; n + 1];
    for row in rows {
        for &v in row {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidTableau(format!(
                    "entries must be exactly 1..={n}"
                )));
            }
            seen[v as usize] = true;
        }
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTableau(
                "rows must increase left to right".into(),
            ));
        }
    }
    Ok(n)
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        check_standard_entries(&rows)?;
        let shape: Vec<u8> = rows.iter().map(|r| r.len() as u8).collect();
        Partition::new(shape)?;
        for i in 1..rows.len() {
            for (j, &entry) in rows[i].iter().enumerate() {
                if entry <= rows[i - 1][j] {
                    return Err(Error::InvalidTableau(
                        "columns must increase bottom to top".into(),
                    ));
                }
            }
        }
        Ok(YoungTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len() as u8).collect(),
        }
    }

    /// `{i : i+1 is in a strictly higher row than i}`.
    pub fn descent_set(&self) -> IndexSet {
        descents_of_rows(&self.rows)
    }

    pub fn peak_set(&self) -> IndexSet {
        self.descent_set().peak_set()
    }

    /// Concatenation of the rows read left to right, top row first.
    pub fn reading_word(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.size());
        for row in self.rows.iter().rev() {
            word.extend_from_slice(row);
        }
        Permutation::new(word).expect("reading word of a standard filling is a permutation")
    }
}

impl ShiftedTableau {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        check_standard_entries(&rows)?;
        let shape: Vec<u8> = rows.iter().map(|r| r.len() as u8).collect();
        StrictPartition::new(shape)?;
        // Cell (i, j) has (i+1, j-1) directly above it in absolute columns.
        for i in 1..rows.len() {
            for j in 0..rows[i].len() {
                if rows[i][j] <= rows[i - 1][j + 1] {
                    return Err(Error::InvalidTableau(
                        "columns must increase bottom to top".into(),
                    ));
                }
            }
        }
        Ok(ShiftedTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn shape(&self) -> StrictPartition {
        StrictPartition {
            parts: self.rows.iter().map(|r| r.len() as u8).collect(),
        }
    }

    pub fn descent_set(&self) -> IndexSet {
        descents_of_rows(&self.rows)
    }

    pub fn peak_set(&self) -> IndexSet {
        self.descent_set().peak_set()
    }
}

fn descents_of_rows(rows: &[Vec<u8>]) -> IndexSet {
    let n: usize = rows.iter().map(|r| r.len()).sum();
    let mut row_of = vec![0usize; n + 1];
    for (i, row) in rows.iter().enumerate() {
        for &v in row {
            row_of[v as usize] = i;
        }
    }
    let elems = (1..n)
        .filter(|&i| row_of[i + 1] > row_of[i])
        .map(|i| i as u8)
        .collect();
    IndexSet::new(elems, n).expect("descent set is within range")
}

fn fmt_rows(
    f: &mut fmt::Formatter<'_>,
    rows: &[Vec<u8>],
    marks: Option<&BTreeSet<u8>>,
) -> fmt::Result {
    let body: Vec<String> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    if marks.is_some_and(|m| m.contains(v)) {
                        format!("{v}'")
                    } else {
                        v.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    write!(f, "{}", body.join("/"))
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows, None)
    }
}

impl fmt::Debug for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows, None)
    }
}

impl fmt::Display for ShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows, None)
    }
}

impl fmt::Debug for ShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.rows, None)
    }
}

fn parse_rows(s: &str) -> Result<(Vec<Vec<u8>>, BTreeSet<u8>)> {
    let mut rows = Vec::new();
    let mut marks = BTreeSet::new();
    for row_text in s.trim().split('/') {
        let mut row = Vec::new();
        for tok in row_text.split(',') {
            let tok = tok.trim();
            let (tok, marked) = match tok.strip_suffix('\'') {
                Some(t) => (t, true),
                None => (tok, false),
            };
            let v = tok
                .parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad tableau entry '{tok}'")))?;
            if marked {
                marks.insert(v);
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok((rows, marks))
}

impl FromStr for YoungTableau {
    type Err = Error;

    /// Parses the slash-separated bottom-up row format, e.g. `"1,2,5,7/3,4/6"`.
    fn from_str(s: &str) -> Result<Self> {
        let (rows, marks) = parse_rows(s)?;
        if !marks.is_empty() {
            return Err(Error::Parse(
                "marks are not allowed in a Young tableau".into(),
            ));
        }
        YoungTableau::new(rows)
    }
}

impl FromStr for ShiftedTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (rows, marks) = parse_rows(s)?;
        if !marks.is_empty() {
            return Err(Error::Parse(
                "marks require a marked shifted tableau".into(),
            ));
        }
        ShiftedTableau::new(rows)
    }
}

/// A standard shifted tableau whose off-diagonal entries may be marked.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedShiftedTableau {
    base: ShiftedTableau,
    marks: BTreeSet<u8>,
}

impl MarkedShiftedTableau {
    /// Builds a marked tableau; main-diagonal entries (the first cell of each
    /// row) may not be marked.
    pub fn new(base: ShiftedTableau, marks: BTreeSet<u8>) -> Result<Self> {
        let diagonal: BTreeSet<u8> = base
            .rows()
            .iter()
            .filter_map(|r| r.first().copied())
            .collect();
        let all: BTreeSet<u8> = base.rows().iter().flatten().copied().collect();
        for &m in &marks {
            if !all.contains(&m) {
                return Err(Error::InvalidTableau(format!(
                    "marked value {m} is not an entry"
                )));
            }
            if diagonal.contains(&m) {
                return Err(Error::InvalidTableau(format!(
                    "main-diagonal entry {m} may not be marked"
                )));
            }
        }
        Ok(MarkedShiftedTableau { base, marks })
    }

    pub fn unmark(&self) -> ShiftedTableau {
        self.base.clone()
    }

    pub fn base(&self) -> &ShiftedTableau {
        &self.base
    }

    pub fn marks(&self) -> &BTreeSet<u8> {
        &self.marks
    }

    pub fn is_marked(&self, v: u8) -> bool {
        self.marks.contains(&v)
    }
}

impl fmt::Display for MarkedShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.base.rows, Some(&self.marks))
    }
}

impl fmt::Debug for MarkedShiftedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(f, &self.base.rows, Some(&self.marks))
    }
}

impl FromStr for MarkedShiftedTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (rows, marks) = parse_rows(s)?;
        MarkedShiftedTableau::new(ShiftedTableau::new(rows)?, marks)
    }
}

/// All standard Young tableaux of the given shape.
///
/// Values 1..n are placed one at a time into the rows that keep every
/// intermediate shape a partition contained in the target; rows are tried
/// bottom-up, so the output is lexicographic in the sequence of row choices.
pub fn enumerate_syt(shape: &Partition) -> Vec<YoungTableau> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    grow_fillings(shape.parts(), false, &mut rows, 1, shape.weight(), &mut out);
    out.into_iter().map(|rows| YoungTableau { rows }).collect()
}

/// All standard shifted tableaux of the given shape, in the same order.
pub fn enumerate_ssht(shape: &StrictPartition) -> Vec<ShiftedTableau> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    grow_fillings(shape.parts(), true, &mut rows, 1, shape.weight(), &mut out);
    out.into_iter()
        .map(|rows| ShiftedTableau { rows })
        .collect()
}

fn grow_fillings(
    shape: &[u8],
    strict: bool,
    rows: &mut Vec<Vec<u8>>,
    next: usize,
    n: usize,
    out: &mut Vec<Vec<Vec<u8>>>,
) {
    if next > n {
        out.push(rows.clone());
        return;
    }
    let gap = if strict { 2 } else { 1 };
    for i in 0..=rows.len() {
        if i >= shape.len() {
            break;
        }
        let len_i = rows.get(i).map_or(0, |r| r.len());
        if len_i >= shape[i] as usize {
            continue;
        }
        if i > 0 && rows[i - 1].len() < len_i + gap {
            continue;
        }
        if i == rows.len() {
            rows.push(Vec::new());
        }
        rows[i].push(next as u8);
        grow_fillings(shape, strict, rows, next + 1, n, out);
        rows[i].pop();
        if rows[i].is_empty() {
            rows.pop();
        }
    }
}

/// `|SYT(a,b)| = C(a+b, b) - C(a+b, b-1)` in exact big-integer arithmetic.
pub fn count_two_row_syt(a: usize, b: usize) -> Result<BigUint> {
    if a < b {
        return Err(Error::InvalidCount(format!("({a},{b}) is not a partition")));
    }
    let total = BigUint::from(a + b);
    let first = binomial(total.clone(), BigUint::from(b));
    let second = if b == 0 {
        BigUint::zero()
    } else {
        binomial(total, BigUint::from(b - 1))
    };
    Ok(first - second)
}

/// `|SShT(n-k,k)| = C(n-1, k) - C(n-1, k-1)`; the shape must be strict.
pub fn count_two_row_ssht(n: usize, k: usize) -> Result<BigUint> {
    if k > 0 && n <= 2 * k {
        return Err(Error::InvalidCount(format!(
            "shape ({},{k}) is not strict",
            n - k
        )));
    }
    if n == 0 {
        return Ok(BigUint::from(1u8));
    }
    let top = BigUint::from(n - 1);
    let first = binomial(top.clone(), BigUint::from(k));
    let second = if k == 0 {
        BigUint::zero()
    } else {
        binomial(top, BigUint::from(k - 1))
    };
    Ok(first - second)
}

/// The pair of standard Young tableaux attached to a two-row shifted tableau.
///
/// `S` is obtained by sliding the second row one cell to the left. When the
/// shape `(n-k, k)` has `n > 2k+1`, a second tableau `S'` of shape
/// `(n-k-1, k+1)` exists: the shift entry `s` is the largest bottom-row entry
/// exceeding the top-row entry two columns to its left (`s = 2` if there is
/// none), and `s` is moved from the bottom row into the top row.
pub fn build_s_sprime(t: &ShiftedTableau) -> Result<(YoungTableau, Option<YoungTableau>)> {
    if t.height() > 2 {
        return Err(Error::ShapeTooTall(t.height()));
    }
    let n = t.size();
    let k = if t.height() == 2 {
        t.rows()[1].len()
    } else {
        0
    };
    let s_tab = YoungTableau::new(t.rows.clone())?;
    if n == 2 * k + 1 {
        return Ok((s_tab, None));
    }

    let bottom = &s_tab.rows[0];
    let top: &[u8] = if k > 0 { &s_tab.rows[1] } else { &[] };
    // Largest bottom-row entry at position j+2 exceeding the top-row entry at
    // position j (1-indexed), falling back to 2.
    let mut shift = 2u8;
    for (j, &t_entry) in top.iter().enumerate() {
        if j + 2 < bottom.len() && bottom[j + 2] > t_entry {
            shift = shift.max(bottom[j + 2]);
        }
    }

    let new_bottom: Vec<u8> = bottom.iter().copied().filter(|&v| v != shift).collect();
    let mut new_top: Vec<u8> = top.to_vec();
    let pos = new_top.partition_point(|&v| v < shift);
    new_top.insert(pos, shift);
    let s_prime = YoungTableau::new(vec![new_bottom, new_top])?;
    Ok((s_tab, Some(s_prime)))
}

/// The a/b/c labeling of a two-row shifted tableau.
///
/// `a` is the top row; `b_i` (assigned from `b_k` downward) is the largest
/// bottom-row entry smaller than both `a_i` and `b_{i+1}`; `c` is everything
/// else in increasing order. All three are returned in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcLabeling {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub c: Vec<u8>,
}

pub fn label_abc(t: &ShiftedTableau) -> Result<AbcLabeling> {
    if t.height() > 2 {
        return Err(Error::ShapeTooTall(t.height()));
    }
    let a: Vec<u8> = if t.height() == 2 {
        t.rows()[1].clone()
    } else {
        Vec::new()
    };
    let bottom = &t.rows()[0];
    let k = a.len();
    let mut b = vec![0u8; k];
    let mut bound = u8::MAX;
    for i in (0..k).rev() {
        let limit = a[i].min(bound);
        let chosen = bottom
            .iter()
            .copied()
            .filter(|&v| v < limit)
            .max()
            .expect("a valid two-row shifted tableau always admits the b-labeling");
        b[i] = chosen;
        bound = chosen;
    }
    let b_set: BTreeSet<u8> = b.iter().copied().collect();
    let c: Vec<u8> = bottom
        .iter()
        .copied()
        .filter(|v| !b_set.contains(v))
        .collect();
    Ok(AbcLabeling { a, b, c })
}

/// The `n-2k` peakless permutations whose inverse Sagan–Worley insertion
/// tableau is `t`: for each split `j`, the descending arm holds all `a` labels
/// and `c_1..c_j`, the ascending arm holds all `b` labels and the remaining
/// `c` labels.
pub fn labeled_permutations(t: &ShiftedTableau) -> Result<Vec<Permutation>> {
    let labeling = label_abc(t)?;
    let mut out = Vec::with_capacity(labeling.c.len());
    for j in 1..=labeling.c.len() {
        let mut left: Vec<u8> = labeling.a.iter().chain(&labeling.c[..j]).copied().collect();
        left.sort_unstable_by(|x, y| y.cmp(x));
        let mut right: Vec<u8> = labeling.b.iter().chain(&labeling.c[j..]).copied().collect();
        right.sort_unstable();
        left.extend_from_slice(&right);
        out.push(Permutation::new(left)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn yt(s: &str) -> YoungTableau {
        s.parse().unwrap()
    }

    fn st(s: &str) -> ShiftedTableau {
        s.parse().unwrap()
    }

    fn set(elems: &[u8], degree: usize) -> IndexSet {
        IndexSet::new(elems.to_vec(), degree).unwrap()
    }

    #[test]
    fn partition_parsing_and_order() {
        assert_eq!(sp("(6,3)").to_string(), "(6,3)");
        assert_eq!(sp("6,3"), sp("(6,3)"));
        assert!("(3,3)".parse::<StrictPartition>().is_err());
        assert!("(1,3)".parse::<Partition>().is_err());
        let sorted = strict_partitions_of(9);
        let display: Vec<String> = sorted.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            display,
            ["(9)", "(8,1)", "(7,2)", "(6,3)", "(5,4)", "(6,2,1)", "(5,3,1)", "(4,3,2)"]
        );
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(strict_partitions_of(0), vec![StrictPartition::empty()]);
    }

    #[test]
    fn ssht_321_fillings() {
        let fillings = enumerate_ssht(&sp("(3,2,1)"));
        assert_eq!(fillings.len(), 2);
        assert_eq!(fillings[0], st("1,2,3/4,5/6"));
        assert_eq!(fillings[1], st("1,2,4/3,5/6"));
        assert_eq!(fillings[0].descent_set(), set(&[3, 5], 6));
        assert_eq!(fillings[0].peak_set(), set(&[3, 5], 6));
        assert_eq!(fillings[1].descent_set(), set(&[2, 4, 5], 6));
        assert_eq!(fillings[1].peak_set(), set(&[2, 4], 6));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_ssht(&sp("(6)")).len(), 1);
        assert_eq!(enumerate_ssht(&sp("(4,2)")).len(), 5);
        assert_eq!(
            enumerate_syt(&"(3,1)".parse::<Partition>().unwrap()).len(),
            3
        );
        assert_eq!(enumerate_syt(&"(5)".parse::<Partition>().unwrap()).len(), 1);
        assert_eq!(
            enumerate_syt(&"(5,4)".parse::<Partition>().unwrap()).len(),
            42
        );
        assert_eq!(enumerate_ssht(&StrictPartition::empty()).len(), 1);
    }

    #[test]
    fn single_row_descents_empty() {
        assert_eq!(st("1,2,3,4").descent_set(), set(&[], 4));
        assert_eq!(yt("1,2,3,4").descent_set(), set(&[], 4));
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(count_two_row_syt(3, 1).unwrap(), BigUint::from(3u8));
        assert_eq!(count_two_row_syt(7, 0).unwrap(), BigUint::from(1u8));
        assert_eq!(count_two_row_syt(5, 4).unwrap(), BigUint::from(42u8));
        assert!(count_two_row_syt(2, 3).is_err());
        assert_eq!(count_two_row_ssht(6, 2).unwrap(), BigUint::from(5u8));
        assert_eq!(count_two_row_ssht(9, 0).unwrap(), BigUint::from(1u8));
        assert_eq!(count_two_row_ssht(9, 4).unwrap(), BigUint::from(14u8));
        assert!(count_two_row_ssht(6, 3).is_err());
        assert!(count_two_row_ssht(4, 2).is_err());
    }

    #[test]
    fn counting_matches_enumeration() {
        for n in 1..=10usize {
            for k in 0..=(n.saturating_sub(1)) / 2 {
                if k > 0 && n <= 2 * k {
                    continue;
                }
                let shape = if k == 0 {
                    StrictPartition::new(vec![n as u8]).unwrap()
                } else {
                    StrictPartition::new(vec![(n - k) as u8, k as u8]).unwrap()
                };
                assert_eq!(
                    count_two_row_ssht(n, k).unwrap(),
                    BigUint::from(enumerate_ssht(&shape).len()),
                    "shape {shape}"
                );
            }
        }
    }

    #[test]
    fn reading_words() {
        assert_eq!(
            yt("1,2,3,6,7,9/4,5,8").reading_word().to_string(),
            "458123679"
        );
        assert_eq!(
            yt("1,2,3,7,9/4,5,6,8").reading_word().to_string(),
            "456812379"
        );
        assert_eq!(yt("1,2,3").reading_word(), Permutation::increasing(3));
    }

    #[test]
    fn s_sprime_example() {
        let t = st("1,2,3,6,7,9/4,5,8");
        let (s, s_prime) = build_s_sprime(&t).unwrap();
        assert_eq!(s, yt("1,2,3,6,7,9/4,5,8"));
        assert_eq!(s_prime.unwrap(), yt("1,2,3,7,9/4,5,6,8"));
    }

    #[test]
    fn s_sprime_no_second_tableau_at_minimum_size() {
        // n = 2k+1: only S exists.
        let t = st("1,2,3/4,5");
        let (s, s_prime) = build_s_sprime(&t).unwrap();
        assert_eq!(s, yt("1,2,3/4,5"));
        assert!(s_prime.is_none());
    }

    #[test]
    fn s_sprime_single_row_uses_fallback_shift() {
        let t = st("1,2,3,4,5");
        let (s, s_prime) = build_s_sprime(&t).unwrap();
        assert_eq!(s, yt("1,2,3,4,5"));
        assert_eq!(s_prime.unwrap(), yt("1,3,4,5/2"));
    }

    #[test]
    fn s_sprime_fallback_with_two_rows() {
        // No bottom-row entry beats the entry two columns back: shift 2.
        let t = st("1,2,3/4");
        let (s, s_prime) = build_s_sprime(&t).unwrap();
        assert_eq!(s, yt("1,2,3/4"));
        assert_eq!(s_prime.unwrap(), yt("1,3/2,4"));
    }

    #[test]
    fn s_sprime_rejects_tall_shapes() {
        assert!(build_s_sprime(&st("1,2,3/4,5/6")).is_err());
    }

    #[test]
    fn abc_labeling_example() {
        let t = st("1,2,3,5,6,9/4,7,8");
        let labeling = label_abc(&t).unwrap();
        assert_eq!(labeling.a, vec![4, 7, 8]);
        assert_eq!(labeling.b, vec![3, 5, 6]);
        assert_eq!(labeling.c, vec![1, 2, 9]);
    }

    #[test]
    fn abc_labeling_single_row() {
        let t = st("1,2,3,4");
        let labeling = label_abc(&t).unwrap();
        assert!(labeling.a.is_empty());
        assert!(labeling.b.is_empty());
        assert_eq!(labeling.c, vec![1, 2, 3, 4]);
    }

    #[test]
    fn abc_labels_partition_entries() {
        for shape in ["(5,2)", "(4,3)", "(6,1)", "(7,2)"] {
            for t in enumerate_ssht(&sp(shape)) {
                let l = label_abc(&t).unwrap();
                let mut all: Vec<u8> = l.a.iter().chain(&l.b).chain(&l.c).copied().collect();
                all.sort_unstable();
                let expected: Vec<u8> = (1..=t.size() as u8).collect();
                assert_eq!(all, expected, "at {t}");
            }
        }
    }

    #[test]
    fn labeled_permutations_example() {
        let t = st("1,2,3,5,6,9/4,7,8");
        let perms = labeled_permutations(&t).unwrap();
        let display: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
        assert_eq!(display, ["874123569", "874213569", "987421356"]);
        for p in &perms {
            assert!(!p.contains(&"132".parse().unwrap()), "{p}");
            assert!(!p.contains(&"231".parse().unwrap()), "{p}");
        }
    }

    #[test]
    fn labeled_permutations_single_row() {
        let t = st("1,2,3");
        let perms = labeled_permutations(&t).unwrap();
        let display: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
        assert_eq!(display, ["123", "213", "321"]);
    }

    #[test]
    fn marked_tableau_rules() {
        let base = st("1,2,3,7/4,5/6");
        assert!(MarkedShiftedTableau::new(base.clone(), [3].into()).is_ok());
        assert!(MarkedShiftedTableau::new(base.clone(), [1].into()).is_err());
        assert!(MarkedShiftedTableau::new(base.clone(), [4].into()).is_err());
        let marked: MarkedShiftedTableau = "1,2,3',7/4,5/6".parse().unwrap();
        assert_eq!(marked.to_string(), "1,2,3',7/4,5/6");
        assert_eq!(marked.unmark(), base);
    }

    #[test]
    fn tableau_validation() {
        assert!("1,3/2".parse::<ShiftedTableau>().is_err());
        assert!("2,1,3".parse::<YoungTableau>().is_err());
        assert!("1,2/3,4,5".parse::<YoungTableau>().is_err());
        assert!("1,2,3/4,5,6".parse::<ShiftedTableau>().is_err());
        assert!("1,3/2,4".parse::<YoungTableau>().is_ok());
    }
}
