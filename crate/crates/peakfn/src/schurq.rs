//! Schur Q-functions in the peak basis and expansion of peak-basis
//! expressions into Schur Q-functions.
//!
//! `Q_λ = Σ K_{Peak(T)}` over the standard shifted tableaux of shape `λ`.
//! Expanding a peak-basis expression into the `Q_λ` is exact rational linear
//! algebra on the system indexed by (strict partitions) × (peak sets); an
//! expression outside the span yields a `NotInSpan` witness rather than an
//! error.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::IndexSet;
use crate::qsym::{Basis, QsymExpr, QsymIndex};
use crate::tableau::{enumerate_ssht, strict_partitions_of, StrictPartition};

/// A linear combination of Schur Q-functions with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SchurQExpansion {
    degree: usize,
    terms: BTreeMap<StrictPartition, BigRational>,
}

impl SchurQExpansion {
    pub fn zero(degree: usize) -> Self {
        SchurQExpansion {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds an expansion from integer coefficients on strict partitions.
    pub fn from_integer_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (StrictPartition, i64)>,
    {
        let mut out = SchurQExpansion::zero(degree);
        for (lambda, c) in terms {
            if lambda.weight() != degree {
                return Err(Error::InvalidPartition(format!(
                    "{lambda} does not have weight {degree}"
                )));
            }
            out.add_term(lambda, BigRational::from_integer(BigInt::from(c)));
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StrictPartition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &StrictPartition) -> BigRational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, lambda: StrictPartition, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// True iff every coefficient is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// `Q_λ = 2^{ℓ(λ)} P_λ`; multiplying a Q-expansion by this scalar per term
/// converts it to the Schur P normalization.
pub fn q_over_p_scalar(lambda: &StrictPartition) -> BigUint {
    BigUint::one() << lambda.len()
}

/// The peak-basis expansion of `Q_λ`: one `K_{Peak(T)}` per standard shifted
/// tableau `T` of shape `λ`.
pub fn schur_q(lambda: &StrictPartition) -> QsymExpr {
    let n = lambda.weight();
    let mut out = QsymExpr::zero(Basis::K, n);
    for t in enumerate_ssht(lambda) {
        out = out
            .add(&QsymExpr::k_term(t.peak_set(), 1).expect("tableau peak sets are peak sets"))
            .expect("same degree and basis");
    }
    out
}

/// Result of expanding a peak-basis expression into Schur Q-functions.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpandOutcome {
    Expansion(SchurQExpansion),
    /// The expression is not in the span; `witness` is the first peak-set
    /// equation violated by the least-squares-free candidate solution.
    NotInSpan {
        witness: IndexSet,
        expected: BigRational,
        actual: BigRational,
    },
}

impl ExpandOutcome {
    pub fn expansion(&self) -> Option<&SchurQExpansion> {
        match self {
            ExpandOutcome::Expansion(e) => Some(e),
            ExpandOutcome::NotInSpan { .. } => None,
        }
    }

    pub fn is_in_span(&self) -> bool {
        matches!(self, ExpandOutcome::Expansion(_))
    }
}

/// All valid peak sets of degree `n` (subsets of `[2, n-1]` with no two
/// consecutive elements), in canonical (size, lexicographic) order.
pub fn peak_sets_of_degree(n: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut elems: Vec<u8> = Vec::new();
    fn rec(n: usize, next: usize, elems: &mut Vec<u8>, out: &mut Vec<IndexSet>) {
        out.push(IndexSet::new(elems.clone(), n).expect("constructed in range"));
        for e in next..n {
            elems.push(e as u8);
            rec(n, e + 2, elems, out);
            elems.pop();
        }
    }
    rec(n, 2, &mut elems, &mut out);
    out.sort();
    out
}

/// Expands a peak-basis expression into Schur Q-functions by exact Gaussian
/// elimination over the rationals.
///
/// The system has one equation per peak set of the degree and one unknown per
/// strict partition; the partition rows are linearly independent, so a
/// solution is unique when it exists. When the expression lies outside the
/// span, the first violated equation (in canonical peak-set order) is
/// returned as the witness.
pub fn expand_in_schurq(e: &QsymExpr) -> Result<ExpandOutcome> {
    if e.basis() != Basis::K {
        return Err(Error::BasisMismatch {
            expected: "K",
            got: "M/F",
        });
    }
    let n = e.degree();

    // Column order: strict partitions in reverse lexicographic order.
    let mut partitions = strict_partitions_of(n);
    partitions.sort_by(|a, b| b.parts().cmp(a.parts()));
    let peak_sets = peak_sets_of_degree(n);
    let set_pos: BTreeMap<&IndexSet, usize> =
        peak_sets.iter().enumerate().map(|(i, s)| (s, i)).collect();

    // A[row][col] = number of standard shifted tableaux of shape `col` with
    // peak set `row`; b[row] = coefficient of K_row in the input.
    let rows = peak_sets.len();
    let cols = partitions.len();
    let mut a = vec![vec![BigRational::zero(); cols]; rows];
    for (j, lambda) in partitions.iter().enumerate() {
        for t in enumerate_ssht(lambda) {
            let i = set_pos[&t.peak_set()];
            a[i][j] += BigRational::one();
        }
    }
    let mut b = vec![BigRational::zero(); rows];
    for (idx, c) in e.terms() {
        let QsymIndex::Peaks(s) = idx else {
            return Err(Error::BasisMismatch {
                expected: "K",
                got: "M/F",
            });
        };
        b[set_pos[s]] = BigRational::from_integer(BigInt::from(c));
    }

    // Forward elimination with exact arithmetic.
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(cols);
    let mut used = vec![false; rows];
    for col in 0..cols {
        let pivot = (0..rows).find(|&r| !used[r] && !a[r][col].is_zero());
        let Some(p) = pivot else {
            panic!("peak-set matrix lost rank at degree {n}: the strict-partition rows must be independent");
        };
        used[p] = true;
        pivot_rows.push(p);
        let inv = a[p][col].clone();
        for r in 0..rows {
            if r == p || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            let pivot_row = a[p][col..].to_vec();
            for (c2, pivot_entry) in (col..cols).zip(&pivot_row) {
                let delta = &factor * pivot_entry;
                a[r][c2] -= delta;
            }
            let delta = &factor * &b[p];
            b[r] -= delta;
        }
    }

    // Back-substitution on the pivot rows (now diagonal across pivot columns).
    let mut solution = vec![BigRational::zero(); cols];
    for (col, &p) in pivot_rows.iter().enumerate() {
        solution[col] = &b[p] / &a[p][col];
    }

    // Non-pivot rows are now all-zero in the coefficient part; a nonzero
    // right-hand side there means the expression is outside the span. Report
    // the first violated equation of the original system.
    for (i, s) in peak_sets.iter().enumerate() {
        if used[i] {
            continue;
        }
        if !b[i].is_zero() {
            let expected = original_equation_value(e, s);
            let actual = dot_count(&partitions, &solution, s);
            return Ok(ExpandOutcome::NotInSpan {
                witness: s.clone(),
                expected,
                actual,
            });
        }
    }

    let mut expansion = SchurQExpansion::zero(n);
    for (lambda, c) in partitions.into_iter().zip(solution) {
        expansion.add_term(lambda, c);
    }
    Ok(ExpandOutcome::Expansion(expansion))
}

fn original_equation_value(e: &QsymExpr, s: &IndexSet) -> BigRational {
    BigRational::from_integer(BigInt::from(e.coeff(&QsymIndex::Peaks(s.clone()))))
}

fn dot_count(
    partitions: &[StrictPartition],
    solution: &[BigRational],
    s: &IndexSet,
) -> BigRational {
    let mut total = BigRational::zero();
    for (lambda, c) in partitions.iter().zip(solution) {
        let count = enumerate_ssht(lambda)
            .iter()
            .filter(|t| &t.peak_set() == s)
            .count();
        total += c * BigRational::from_integer(BigInt::from(count));
    }
    total
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SchurQExpansion {
    /// Plain-text rendering, e.g. `7*Q(4) + 8*Q(3,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let body: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
            write!(f, "{}*Q({})", fmt_coeff(&mag), body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SchurQExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}

impl SchurQExpansion {
    /// LaTeX rendering in the display style `10Q_{(6)}+12Q_{(5,1)}-Q_{(3,2,1)}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (lambda, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if !mag.is_one() {
                out.push_str(&fmt_coeff(&mag));
            }
            out.push_str(&format!("Q_{{{lambda}}}"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct QTermRepr {
    index: Vec<u8>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct QExprRepr {
    degree: usize,
    basis: String,
    terms: Vec<QTermRepr>,
}

impl Serialize for SchurQExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(lambda, c)| QTermRepr {
                index: lambda.parts().to_vec(),
                coeff: fmt_coeff(c),
            })
            .collect();
        QExprRepr {
            degree: self.degree,
            basis: "Q".into(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SchurQExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QExprRepr::deserialize(deserializer)?;
        if repr.basis != "Q" {
            return Err(D::Error::custom(format!(
                "expected basis Q, got {}",
                repr.basis
            )));
        }
        let mut out = SchurQExpansion::zero(repr.degree);
        for term in repr.terms {
            let lambda = StrictPartition::new(term.index).map_err(D::Error::custom)?;
            if lambda.weight() != repr.degree {
                return Err(D::Error::custom("partition weight does not match degree"));
            }
            let coeff: BigRational = term
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient '{}'", term.coeff)))?;
            out.add_term(lambda, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::r_n;
    use crate::perm::PatternSet;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn k(elems: &[u8], degree: usize) -> QsymExpr {
        QsymExpr::k_term(IndexSet::new(elems.to_vec(), degree).unwrap(), 1).unwrap()
    }

    #[test]
    fn schur_q_examples() {
        let q321 = schur_q(&sp("(3,2,1)"));
        let expected = k(&[3, 5], 6).add(&k(&[2, 4], 6)).unwrap();
        assert_eq!(q321, expected);
        assert_eq!(schur_q(&sp("(7)")), k(&[], 7));
        assert_eq!(schur_q(&sp("(3,1)")), k(&[2], 4).add(&k(&[3], 4)).unwrap());
    }

    #[test]
    fn peak_set_counts() {
        // Valid peak sets of [n-1] with no two consecutive elements.
        let counts: Vec<usize> = (0..=9).map(|n| peak_sets_of_degree(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn expansion_round_trip_on_basis_elements() {
        for n in 0..=9 {
            for lambda in strict_partitions_of(n) {
                let outcome = expand_in_schurq(&schur_q(&lambda)).unwrap();
                let expansion = outcome.expansion().expect("basis element is in span");
                assert_eq!(expansion.num_terms(), 1);
                assert!(expansion.coeff(&lambda).is_one(), "λ={lambda}");
            }
        }
    }

    #[test]
    fn expansion_of_avoidance_classes() {
        let got = expand_in_schurq(&r_n(&PatternSet::parse("321").unwrap(), 4)).unwrap();
        let expected =
            SchurQExpansion::from_integer_terms(4, [(sp("(4)"), 4), (sp("(3,1)"), 5)]).unwrap();
        assert_eq!(got.expansion().unwrap(), &expected);
    }

    #[test]
    fn counterexample_expansion() {
        let patterns = PatternSet::parse("1234,1243,2413,3142,3412,4123").unwrap();
        let got = expand_in_schurq(&r_n(&patterns, 6)).unwrap();
        let expansion = got.expansion().unwrap().clone();
        let expected = SchurQExpansion::from_integer_terms(
            6,
            [
                (sp("(6)"), 10),
                (sp("(5,1)"), 12),
                (sp("(4,2)"), 8),
                (sp("(3,2,1)"), -1),
            ],
        )
        .unwrap();
        assert_eq!(expansion, expected);
        assert!(!expansion.is_positive());
        assert!(expansion.is_integral());
        assert_eq!(
            expansion.to_string(),
            "10*Q(6) + 12*Q(5,1) + 8*Q(4,2) - 1*Q(3,2,1)"
        );
        assert_eq!(
            expansion.to_latex(),
            "10Q_{(6)}+12Q_{(5,1)}+8Q_{(4,2)}-Q_{(3,2,1)}"
        );
    }

    #[test]
    fn not_in_span_with_witness() {
        // K_{{2},4} alone is outside the span of Q_(4) = K_∅ and
        // Q_(3,1) = K_{2} + K_{3}.
        let outcome = expand_in_schurq(&k(&[2], 4)).unwrap();
        match outcome {
            ExpandOutcome::NotInSpan {
                witness,
                expected,
                actual,
            } => {
                assert!(!witness.is_empty());
                assert_ne!(expected, actual);
            }
            ExpandOutcome::Expansion(e) => panic!("unexpectedly in span: {e}"),
        }
    }

    #[test]
    fn nonsymmetric_expressions_are_not_in_span() {
        for n in 3..=7 {
            let sets = peak_sets_of_degree(n);
            for s in &sets {
                let e = QsymExpr::k_term(s.clone(), 1).unwrap();
                if !e.is_symmetric() {
                    assert!(!expand_in_schurq(&e).unwrap().is_in_span());
                }
            }
            // Two-term combinations with unequal coefficients.
            for (i, s1) in sets.iter().enumerate() {
                for s2 in &sets[i + 1..] {
                    let e = QsymExpr::k_term(s1.clone(), 1)
                        .unwrap()
                        .add(&QsymExpr::k_term(s2.clone(), 2).unwrap())
                        .unwrap();
                    assert_eq!(
                        e.is_symmetric(),
                        expand_in_schurq(&e).unwrap().is_in_span(),
                        "K({s1}) + 2K({s2})"
                    );
                }
            }
        }
    }

    #[test]
    fn q_over_p_examples() {
        assert_eq!(q_over_p_scalar(&sp("(6)")), BigUint::from(2u8));
        assert_eq!(q_over_p_scalar(&sp("(3,2,1)")), BigUint::from(8u8));
    }

    #[test]
    fn degree_zero_unit() {
        let unit = k(&[], 0);
        let outcome = expand_in_schurq(&unit).unwrap();
        let expansion = outcome.expansion().unwrap();
        assert_eq!(expansion.num_terms(), 1);
        assert!(expansion.coeff(&StrictPartition::empty()).is_one());
    }

    #[test]
    fn json_round_trip() {
        let e = SchurQExpansion::from_integer_terms(
            6,
            [(sp("(6)"), 10), (sp("(5,1)"), 12), (sp("(3,2,1)"), -1)],
        )
        .unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"degree":6,"basis":"Q","terms":[{"index":[6],"coeff":"10"},{"index":[5,1],"coeff":"12"},{"index":[3,2,1],"coeff":"-1"}]}"#
        );
        let back: SchurQExpansion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
