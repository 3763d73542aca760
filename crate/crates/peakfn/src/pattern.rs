//! Pattern-avoiding peak functions `R_n(Π)` and every closed form they
//! satisfy: per-row Table 1 formulas, the shuffle-product identity, and the
//! bounded-descending-pattern closed form, plus symmetry/positivity search
//! tooling.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{
    descent_set_of_word, for_each_avoider, peak_histogram, shuffle_perms, IndexSet, PatternSet,
    Permutation,
};
use crate::qsym::{Basis, Composition, QsymExpr, QsymIndex};
use crate::schurq::{expand_in_schurq, ExpandOutcome, SchurQExpansion};
use crate::tableau::{enumerate_ssht, strict_partitions_of, StrictPartition};

/// `R_n(Π) = Σ K_{Peak(π)}` over `Av_n(Π)`, with one term per distinct peak
/// set carrying its multiplicity. `R_0(Π) = K_{∅,0} = 1`.
pub fn r_n(patterns: &PatternSet, n: usize) -> QsymExpr {
    r_n_from_histogram(&peak_histogram(patterns, n), n)
}

/// Builds `R_n` from a precomputed peak-set histogram of the avoidance class.
pub fn r_n_from_histogram(hist: &BTreeMap<IndexSet, u64>, n: usize) -> QsymExpr {
    let mut out = QsymExpr::zero(Basis::K, n);
    for (s, &count) in hist {
        out.add_term(QsymIndex::Peaks(s.clone()), count as i64);
    }
    out
}

/// The fundamental-basis analogue: `Σ F_{β}` with `set(β) = Des(π)` over the
/// avoidance class.
pub fn pattern_fundamental(patterns: &PatternSet, n: usize) -> QsymExpr {
    let mut out = QsymExpr::zero(Basis::F, n);
    for_each_avoider(n, patterns, |w| {
        let alpha = Composition::from_set(&descent_set_of_word(w));
        out.add_term(QsymIndex::Comp(alpha), 1);
    });
    out
}

/// One row of the closed-form table: the pattern sets it covers and its row
/// number (1..=8).
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub row: u8,
    pub pattern_sets: Vec<PatternSet>,
}

const TABLE1_PATTERNS: &[(u8, &[&str])] = &[
    (1, &[""]),
    (2, &["123", "213", "312", "321"]),
    (
        3,
        &[
            "213,132", "231,312", "123,132", "132,312", "213,231", "231,321",
        ],
    ),
    (4, &["132,231"]),
    (
        5,
        &[
            "123,132,312",
            "123,213,231",
            "132,312,321",
            "132,213,321",
            "132,213,312",
            "123,231,312",
            "213,231,321",
            "213,231,312",
        ],
    ),
    (
        6,
        &["123,132,231", "132,213,231", "132,231,312", "132,231,321"],
    ),
    (
        7,
        &[
            "123,132,213,231",
            "123,132,231,312",
            "132,213,231,312",
            "132,213,231,321",
            "132,231,312,321",
        ],
    ),
    (8, &["123,132,213,231,312", "132,213,231,312,321"]),
];

/// Every pattern set of the closed-form table, grouped by row in row order.
pub fn table1_rows() -> Vec<Table1Row> {
    let mut rows: Vec<Table1Row> = TABLE1_PATTERNS
        .iter()
        .map(|&(row, sets)| Table1Row {
            row,
            pattern_sets: sets
                .iter()
                .map(|s| PatternSet::parse(s).expect("table entries are valid pattern lists"))
                .collect(),
        })
        .collect();
    rows.sort_by_key(|r| r.row);
    rows
}

/// Identifies one of the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormId {
    /// A table row, 1 through 8.
    Row(u8),
    /// Alias for row 2 (single patterns of size 3).
    R321,
    /// Alias for row 3 (the two-pattern cases with two-row expansions).
    R132_312,
    /// Alias for row 5 (the shuffle-product cases).
    ShuffleCase,
    /// The bounded-descending-arm formula for `Av(132, 312, δ_j)`, in its
    /// min-clipped general form.
    IncludeDelta(usize),
}

/// Evaluates a closed form at degree `n`. Table rows require `n >= 3`; terms
/// on non-strict shapes carry coefficient zero and are dropped.
pub fn closed_form(id: ClosedFormId, n: usize) -> Result<SchurQExpansion> {
    let row = match id {
        ClosedFormId::Row(r) => r,
        ClosedFormId::R321 => 2,
        ClosedFormId::R132_312 => 3,
        ClosedFormId::ShuffleCase => 5,
        ClosedFormId::IncludeDelta(j) => return include_delta_formula(j, n),
    };
    if !(1..=8).contains(&row) {
        return Err(Error::ClosedFormRange(format!("row {row} is not in 1..=8")));
    }
    if n < 3 {
        return Err(Error::ClosedFormRange(format!(
            "table rows are stated for n >= 3, got {n}"
        )));
    }
    let mut out = Vec::new();
    match row {
        1 => {
            for lambda in strict_partitions_of(n) {
                let count = enumerate_ssht(&lambda).len() as i64;
                let coeff = BigInt::from(count) << (n - lambda.len());
                out.push((lambda, coeff));
            }
        }
        2 => {
            for (k, lambda) in two_row_shapes(n) {
                let coeff = binom(n, k + 1)
                    - if k >= 1 {
                        binom(n, k - 1)
                    } else {
                        BigInt::from(0)
                    };
                out.push((lambda, coeff));
            }
        }
        3 => {
            for (k, lambda) in two_row_shapes(n) {
                out.push((lambda, BigInt::from((n - 2 * k) as i64)));
            }
        }
        4 => out.push((row_shape(n), BigInt::from(1) << (n - 1))),
        5 => {
            out.push((row_shape(n), BigInt::from(2)));
            out.push((hook_shape(n), BigInt::from(1)));
        }
        6 => out.push((row_shape(n), BigInt::from(n as i64))),
        7 => out.push((row_shape(n), BigInt::from(2))),
        8 => out.push((row_shape(n), BigInt::from(1))),
        _ => unreachable!(),
    }
    build_expansion(n, out)
}

/// `Σ_k min(n-2k, j-1-k) Q_{(n-k,k)}` over strict shapes with positive
/// coefficient: the descending arm of the V-shape holds at most `j-1`
/// elements, which caps the split count at `j-1-k`.
pub fn include_delta_formula(j: usize, n: usize) -> Result<SchurQExpansion> {
    if j < 2 {
        return Err(Error::ClosedFormRange(format!(
            "delta pattern size {j} must be >= 2"
        )));
    }
    if n < 1 {
        return Err(Error::ClosedFormRange("degree must be >= 1".into()));
    }
    let mut out = Vec::new();
    for (k, lambda) in two_row_shapes(n) {
        let splits = (n - 2 * k) as i64;
        let cap = j as i64 - 1 - k as i64;
        let coeff = splits.min(cap);
        if coeff > 0 {
            out.push((lambda, BigInt::from(coeff)));
        }
    }
    build_expansion(n, out)
}

/// The formula as printed, `Σ_{k=0}^{j-2} (j-1-k) Q_{(n-k,k)}`; every shape in
/// that range is strict exactly when `n >= 2j-3`, so the printed form is only
/// evaluated there.
pub fn include_delta_printed(j: usize, n: usize) -> Result<SchurQExpansion> {
    if j < 2 {
        return Err(Error::ClosedFormRange(format!(
            "delta pattern size {j} must be >= 2"
        )));
    }
    if n + 3 < 2 * j {
        return Err(Error::ClosedFormRange(format!(
            "printed form needs n >= 2j-3 = {}, got {n}",
            2 * j - 3
        )));
    }
    let mut out = Vec::new();
    for k in 0..=(j - 2) {
        let coeff = (j - 1 - k) as i64;
        out.push((two_row_shape(n, k)?, BigInt::from(coeff)));
    }
    build_expansion(n, out)
}

fn build_expansion(n: usize, terms: Vec<(StrictPartition, BigInt)>) -> Result<SchurQExpansion> {
    let mut pairs = Vec::new();
    for (lambda, coeff) in terms {
        let coeff_i64 = i64::try_from(&coeff)
            .map_err(|_| Error::ClosedFormRange("coefficient exceeds i64".into()))?;
        pairs.push((lambda, coeff_i64));
    }
    SchurQExpansion::from_integer_terms(n, pairs)
}

fn binom(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n as i64), BigInt::from(k as i64))
}

fn row_shape(n: usize) -> StrictPartition {
    StrictPartition::new(vec![n as u8]).expect("single row is strict")
}

fn hook_shape(n: usize) -> StrictPartition {
    StrictPartition::new(vec![(n - 1) as u8, 1]).expect("(n-1,1) is strict for n >= 3")
}

fn two_row_shape(n: usize, k: usize) -> Result<StrictPartition> {
    if k == 0 {
        return Ok(row_shape(n));
    }
    StrictPartition::new(vec![(n - k) as u8, k as u8])
}

/// The strict shapes `(n-k, k)` with `k = 0, 1, ...` while `n-k > k`.
fn two_row_shapes(n: usize) -> Vec<(usize, StrictPartition)> {
    let mut out = Vec::new();
    let mut k = 0;
    while n > 2 * k {
        out.push((
            k,
            two_row_shape(n, k).expect("n > 2k keeps the shape strict"),
        ));
        k += 1;
    }
    out
}

/// Flattens `Π ⧢ Π' = {π ⧢ σ : π ∈ Π, σ ∈ Π'}` into one pattern set.
pub fn shuffle_pattern_sets(p: &PatternSet, p2: &PatternSet) -> PatternSet {
    let mut all: Vec<Permutation> = Vec::new();
    for a in p.iter() {
        for b in p2.iter() {
            all.extend(shuffle_perms(a, b));
        }
    }
    PatternSet::new(all).expect("shuffles of nonempty patterns are nonempty")
}

/// The right-hand side of the shuffle-product identity:
/// `R_n(Π') + Σ_{k=0}^{n-1} R_k(Π)·[K_{∅,1}·R_{n-k-1}(Π') − R_{n-k}(Π')]`.
pub fn shuffle_formula_rhs(p: &PatternSet, p2: &PatternSet, n: usize) -> QsymExpr {
    let r2: Vec<QsymExpr> = (0..=n).map(|m| r_n(p2, m)).collect();
    let unit_deg1 = QsymExpr::k_term(IndexSet::empty(1), 1).expect("∅ is a peak set");
    let mut acc = r2[n].clone();
    for k in 0..n {
        let rk = r_n(p, k);
        if rk.is_zero() {
            continue;
        }
        let bracket = unit_deg1
            .peak_product(&r2[n - k - 1])
            .expect("K-basis product")
            .sub(&r2[n - k])
            .expect("matching degree");
        let term = rk.peak_product(&bracket).expect("K-basis product");
        acc = acc.add(&term).expect("matching degree");
    }
    acc
}

/// Symmetry/positivity report for `R_n({ι_k})`.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: usize,
    pub symmetric: bool,
    /// `None` when the expression is not in the Schur Q span.
    pub q_positive: Option<bool>,
    pub outcome: ExpandOutcome,
    pub elapsed_ms: u128,
}

impl Serialize for ConjectureReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ConjectureReport", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("symmetric", &self.symmetric)?;
        st.serialize_field("q_positive", &self.q_positive)?;
        match &self.outcome {
            ExpandOutcome::Expansion(e) => st.serialize_field("expansion", e)?,
            ExpandOutcome::NotInSpan { witness, .. } => {
                st.serialize_field("expansion", &format!("not in span (witness {witness})"))?
            }
        }
        st.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        st.end()
    }
}

/// Evaluates `R_n({ι_k})`, tests symmetry, expands into Schur Q-functions,
/// and tests positivity.
pub fn conjecture_check(k: usize, n: usize) -> Result<ConjectureReport> {
    if k < 2 {
        return Err(Error::ClosedFormRange(format!(
            "pattern size {k} must be >= 2"
        )));
    }
    let start = Instant::now();
    let patterns = PatternSet::new([Permutation::increasing(k)])?;
    let e = r_n(&patterns, n);
    let symmetric = e.is_symmetric();
    let outcome = expand_in_schurq(&e)?;
    let q_positive = outcome.expansion().map(SchurQExpansion::is_positive);
    Ok(ConjectureReport {
        n,
        symmetric,
        q_positive,
        outcome,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Smallest `n <= n_max` with `R_n(Π)` not symmetric, scanning upward.
pub fn find_nonsymmetric_witness(patterns: &PatternSet, n_max: usize) -> Option<usize> {
    (1..=n_max).find(|&n| !r_n(patterns, n).is_symmetric())
}

/// Convenience conversion for comparing integer data against rational
/// expansion coefficients.
pub fn rational(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}
