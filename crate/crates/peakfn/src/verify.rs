//! Verification suites: brute-force reproduction of every closed form and
//! structural identity at desk scale. Each check returns a pass/fail line;
//! the CLI prints them and the acceptance tests assert them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::One;

use crate::insertion::{phi, phi_preimage, rsk, sagan_worley};
use crate::pattern::{
    closed_form, include_delta_formula, include_delta_printed, r_n, shuffle_formula_rhs,
    shuffle_pattern_sets, table1_rows, ClosedFormId,
};
use crate::perm::{av_count, enumerate_av, peak_histogram, IndexSet, PatternSet, Permutation};
use crate::qsym::QsymExpr;
use crate::schurq::{expand_in_schurq, peak_sets_of_degree, ExpandOutcome, SchurQExpansion};
use crate::tableau::{
    count_two_row_ssht, count_two_row_syt, enumerate_ssht, enumerate_syt, Partition,
    ShiftedTableau, StrictPartition,
};

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            details: details.into(),
        }
    }

    fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            details: details.into(),
        }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        got: T,
        want: T,
        context: impl Into<String>,
    ) -> Self {
        let name = name.into();
        if got == want {
            CheckResult::pass(name, context)
        } else {
            CheckResult::fail(
                name,
                format!("{}: got {:?}, want {:?}", context.into(), got, want),
            )
        }
    }
}

/// True iff every check passed.
pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn expand_or_fail(name: &str, e: &QsymExpr, out: &mut Vec<CheckResult>) -> Option<SchurQExpansion> {
    match expand_in_schurq(e) {
        Ok(ExpandOutcome::Expansion(x)) => Some(x),
        Ok(ExpandOutcome::NotInSpan {
            witness,
            expected,
            actual,
        }) => {
            out.push(CheckResult::fail(
                name,
                format!(
                    "not in Schur Q span: K({witness}) equation wants {expected}, got {actual}"
                ),
            ));
            None
        }
        Err(err) => {
            out.push(CheckResult::fail(name, format!("expansion error: {err}")));
            None
        }
    }
}

/// Every pattern set of the closed-form table matches its row formula
/// exactly, for `min_n <= n <= max_n`, via brute-force enumeration.
pub fn check_table1(min_n: usize, max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for row in table1_rows() {
        for patterns in &row.pattern_sets {
            for n in min_n.max(3)..=max_n {
                let name = format!("table1 row{} Π={{{}}} n={}", row.row, patterns, n);
                let expected = match closed_form(ClosedFormId::Row(row.row), n) {
                    Ok(e) => e,
                    Err(err) => {
                        out.push(CheckResult::fail(name, format!("closed form error: {err}")));
                        continue;
                    }
                };
                let Some(got) = expand_or_fail(&name, &r_n(patterns, n), &mut out) else {
                    continue;
                };
                out.push(CheckResult::expect_eq(
                    name,
                    got.to_string(),
                    expected.to_string(),
                    "brute force vs closed form",
                ));
            }
        }
    }
    out
}

type AppendixEntry = (&'static [u8], i64);

const APPENDIX_1234: &[&[AppendixEntry]] = &[
    &[(&[1], 1)],
    &[(&[2], 2)],
    &[(&[3], 4), (&[2, 1], 2)],
    &[(&[4], 7), (&[3, 1], 8)],
    &[(&[5], 11), (&[4, 1], 20), (&[3, 2], 16)],
    &[(&[6], 16), (&[5, 1], 40), (&[4, 2], 61), (&[3, 2, 1], 15)],
    &[
        (&[7], 22),
        (&[6, 1], 70),
        (&[5, 2], 155),
        (&[4, 3], 91),
        (&[4, 2, 1], 77),
    ],
    &[
        (&[8], 29),
        (&[7, 1], 112),
        (&[6, 2], 323),
        (&[5, 3], 344),
        (&[5, 2, 1], 232),
        (&[4, 3, 1], 168),
    ],
    &[
        (&[9], 37),
        (&[8, 1], 168),
        (&[7, 2], 595),
        (&[6, 3], 891),
        (&[5, 4], 456),
        (&[6, 2, 1], 555),
        (&[5, 3, 1], 744),
        (&[4, 3, 2], 168),
    ],
];

const APPENDIX_12345: &[&[AppendixEntry]] = &[
    &[(&[1], 1)],
    &[(&[2], 2)],
    &[(&[3], 4), (&[2, 1], 1)],
    &[(&[4], 8), (&[3, 1], 8)],
    &[(&[5], 15), (&[4, 1], 24), (&[3, 2], 16)],
    &[(&[6], 26), (&[5, 1], 59), (&[4, 2], 80), (&[3, 2, 1], 16)],
    &[
        (&[7], 42),
        (&[6, 1], 125),
        (&[5, 2], 259),
        (&[4, 3], 160),
        (&[4, 2, 1], 112),
    ],
    &[
        (&[8], 64),
        (&[7, 1], 237),
        (&[6, 2], 664),
        (&[5, 3], 769),
        (&[5, 2, 1], 448),
        (&[4, 3, 1], 384),
    ],
    &[
        (&[9], 93),
        (&[8, 1], 413),
        (&[7, 2], 1461),
        (&[6, 3], 2441),
        (&[5, 4], 1329),
        (&[6, 2, 1], 1344),
        (&[5, 3, 1], 2217),
        (&[4, 3, 2], 768),
    ],
];

/// Catalogued corrections to the reference tables above, as
/// `(pattern, n, partition, printed, corrected)`.
///
/// Both corrections are forced by the count identity
/// `Σ_λ c_λ·|SShT(λ)| = |Av_n(Π)|` (each `Q_λ` contributes one peak function
/// per standard shifted tableau, and the peak functions count the avoiders):
///
/// - `12345` at `n = 3` prints `1*Q(2,1)`. No permutation of size 3 contains
///   a pattern of size 5, so `R_3(12345) = R_3(∅) = 4*Q(3) + 2*Q(2,1)` — the
///   value the `1234` table itself prints at `n = 3`. The printed row counts
///   5 of the 6 permutations of `S_3`.
/// - `1234` at `n = 6` prints `15*Q(3,2,1)`. The printed row counts
///   `16 + 40·4 + 61·5 + 15·2 = 511` avoiders, but `|Av_6(1234)| = 513`,
///   which forces the coefficient 16 given the other three.
///
/// Every other entry of both tables satisfies the count identity exactly.
/// The checker re-derives `|Av_n(Π)|` through an independent filter oracle,
/// verifies the corrected value (and, where avoidance is vacuous, the Π = ∅
/// closed-form route), and reports these entries as errata rather than
/// asserting the misprints.
const APPENDIX_ERRATA: &[(&str, usize, &[u8], i64, i64)] =
    &[("12345", 3, &[2, 1], 1, 2), ("1234", 6, &[3, 2, 1], 15, 16)];

fn appendix_expected(entries: &[AppendixEntry], n: usize) -> SchurQExpansion {
    let terms = entries.iter().map(|&(parts, coeff)| {
        (
            StrictPartition::new(parts.to_vec()).expect("table shapes are strict"),
            coeff,
        )
    });
    SchurQExpansion::from_integer_terms(n, terms).expect("table entries have the right weight")
}

/// Brute-force `R_n(1234)` and `R_n(12345)` against the embedded reference
/// tables, `min_n <= n <= max_n <= 9`.
pub fn check_appendix(min_n: usize, max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (pattern_text, table) in [("1234", APPENDIX_1234), ("12345", APPENDIX_12345)] {
        let patterns = PatternSet::parse(pattern_text).expect("valid pattern");
        for n in min_n.max(1)..=max_n.min(9) {
            let name = format!("appendix R_{n}({pattern_text})");
            let Some(got) = expand_or_fail(&name, &r_n(&patterns, n), &mut out) else {
                continue;
            };
            let printed = appendix_expected(table[n - 1], n);
            if got == printed {
                out.push(CheckResult::pass(name, "matches printed table"));
                continue;
            }
            let erratum = APPENDIX_ERRATA
                .iter()
                .find(|&&(p, en, _, _, _)| p == pattern_text && en == n);
            let Some(&(_, _, parts, printed_coeff, corrected_coeff)) = erratum else {
                out.push(CheckResult::fail(
                    name,
                    format!("got {got}, printed table says {printed}"),
                ));
                continue;
            };
            // Verify the catalogued erratum precisely: the printed entry must
            // still carry the misprinted coefficient, the computed value must
            // carry the corrected one, the corrected row (and not the printed
            // one) must satisfy the count identity against an independent
            // filter oracle, and where avoidance is vacuous the Π = ∅
            // closed-form route must agree too.
            let lambda = StrictPartition::new(parts.to_vec()).expect("strict");
            let ok_printed = printed.coeff(&lambda) == crate::pattern::rational(printed_coeff);
            let corrected = {
                let terms: Vec<(StrictPartition, i64)> = printed
                    .terms()
                    .map(|(l, c)| {
                        let c = i64::try_from(c.numer()).expect("table coefficients fit i64");
                        (l.clone(), if *l == lambda { corrected_coeff } else { c })
                    })
                    .collect();
                SchurQExpansion::from_integer_terms(n, terms).expect("weights unchanged")
            };
            let class_size = naive_av_count(&patterns, n);
            let count_ok = weighted_tableau_count(&corrected) == BigUint::from(class_size)
                && weighted_tableau_count(&printed) != BigUint::from(class_size);
            let vacuous = patterns.iter().all(|t| t.size() > n);
            let vacuous_ok =
                !vacuous || closed_form(ClosedFormId::Row(1), n).is_ok_and(|row1| row1 == got);
            if ok_printed && got == corrected && count_ok && vacuous_ok {
                out.push(CheckResult::pass(
                    name,
                    format!(
                        "catalogued erratum: printed {printed_coeff}*Q{lambda}, computed \
                         {corrected_coeff}*Q{lambda}; corrected row counts all {class_size} \
                         avoiders, printed row does not"
                    ),
                ));
            } else {
                out.push(CheckResult::fail(
                    name,
                    format!("erratum verification failed: got {got}, printed {printed}"),
                ));
            }
        }
    }
    out
}

/// `Σ_λ c_λ·|SShT(λ)|`: the number of avoiders a Q-expansion accounts for.
fn weighted_tableau_count(e: &SchurQExpansion) -> BigUint {
    let mut total = BigUint::from(0u8);
    for (lambda, c) in e.terms() {
        let count = BigUint::from(enumerate_ssht(lambda).len());
        let coeff = u64::try_from(c.numer()).expect("nonnegative integer coefficient");
        total += count * BigUint::from(coeff);
    }
    total
}

/// Independent avoidance-class counter: plain recursive permutation
/// generation and subsequence filtering, sharing no machinery with the
/// production enumerator.
fn naive_av_count(patterns: &PatternSet, n: usize) -> u64 {
    fn order_isomorphic(sub: &[u8], pat: &[u8]) -> bool {
        for i in 0..sub.len() {
            for j in i + 1..sub.len() {
                if (sub[i] < sub[j]) != (pat[i] < pat[j]) {
                    return false;
                }
            }
        }
        true
    }
    fn has_subsequence(word: &[u8], pat: &[u8], start: usize, sub: &mut Vec<u8>) -> bool {
        if sub.len() == pat.len() {
            return order_isomorphic(sub, pat);
        }
        for i in start..word.len() {
            sub.push(word[i]);
            if has_subsequence(word, pat, i + 1, sub) {
                return true;
            }
            sub.pop();
        }
        false
    }
    fn generate(n: usize, cur: &mut Vec<u8>, patterns: &PatternSet, count: &mut u64) {
        if cur.len() == n {
            let avoids = patterns
                .iter()
                .all(|t| !has_subsequence(cur, t.as_slice(), 0, &mut Vec::new()));
            if avoids {
                *count += 1;
            }
            return;
        }
        for v in 1..=n as u8 {
            if !cur.contains(&v) {
                cur.push(v);
                generate(n, cur, patterns, count);
                cur.pop();
            }
        }
    }
    let mut count = 0;
    generate(n, &mut Vec::new(), patterns, &mut count);
    count
}

/// A symmetric but not Schur-Q-positive pattern-avoiding peak function at
/// degree 6.
pub fn check_counterexample() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let patterns = PatternSet::parse("1234,1243,2413,3142,3412,4123").expect("valid patterns");
    let e = r_n(&patterns, 6);
    out.push(CheckResult::expect_eq(
        "counterexample symmetric",
        e.is_symmetric(),
        true,
        "R_6 of the six size-4 patterns",
    ));
    let Some(x) = expand_or_fail("counterexample expansion", &e, &mut out) else {
        return out;
    };
    let expected = SchurQExpansion::from_integer_terms(
        6,
        [
            (StrictPartition::new(vec![6]).unwrap(), 10),
            (StrictPartition::new(vec![5, 1]).unwrap(), 12),
            (StrictPartition::new(vec![4, 2]).unwrap(), 8),
            (StrictPartition::new(vec![3, 2, 1]).unwrap(), -1),
        ],
    )
    .unwrap();
    out.push(CheckResult::expect_eq(
        "counterexample expansion",
        x.to_string(),
        expected.to_string(),
        "10Q(6)+12Q(5,1)+8Q(4,2)-Q(3,2,1)",
    ));
    out.push(CheckResult::expect_eq(
        "counterexample not positive",
        x.is_positive(),
        false,
        "one negative coefficient",
    ));
    out
}

/// Exhaustive insertion identities over all of `S_n` for `n <= max_n`: the
/// peak characterization of the Sagan–Worley insertion tableau, the
/// peak-preservation of inserting the inverse, and the RSK descent identity.
pub fn check_insertion_properties(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut peak_char_ok = 0u64;
        let mut inverse_ok = 0u64;
        let mut rsk_des_ok = 0u64;
        let mut total = 0u64;
        let mut first_failure = String::new();
        for p in enumerate_av(n, &PatternSet::none()) {
            total += 1;
            let r_tab = sagan_worley(&p).insertion;
            let got = r_tab.peak_set();
            let want = late_neighbor_values(&p);
            if got == want {
                peak_char_ok += 1;
            } else if first_failure.is_empty() {
                first_failure = format!("peak characterization fails at {p}: {got} vs {want}");
            }
            let r_inv = sagan_worley(&p.inverse()).insertion;
            if p.peak_set() == r_inv.peak_set() {
                inverse_ok += 1;
            } else if first_failure.is_empty() {
                first_failure = format!("inverse-insertion peaks fail at {p}");
            }
            if p.descent_set() == rsk(&p).recording.descent_set() {
                rsk_des_ok += 1;
            } else if first_failure.is_empty() {
                first_failure = format!("recording descents fail at {p}");
            }
        }
        let name = format!("insertion identities n={n}");
        if peak_char_ok == total && inverse_ok == total && rsk_des_ok == total {
            out.push(CheckResult::pass(
                name,
                format!("{total} permutations, 3 identities each"),
            ));
        } else {
            out.push(CheckResult::fail(name, first_failure));
        }
    }
    out
}

/// Values `v` whose two value-neighbors `v-1` and `v+1` both appear to the
/// left of `v` in the one-line word.
fn late_neighbor_values(p: &Permutation) -> IndexSet {
    let n = p.size();
    let mut pos = vec![0usize; n + 2];
    for (i, &v) in p.as_slice().iter().enumerate() {
        pos[v as usize] = i;
    }
    let elems = (2..n.max(1))
        .filter(|&v| pos[v - 1] < pos[v] && pos[v + 1] < pos[v])
        .map(|v| v as u8)
        .collect();
    IndexSet::new(elems, n).expect("values lie in range")
}

/// Peak preservation of Φ over `Av_n(321)` for `n <= peak_max_n`, and the
/// preimage suite for `n <= preimage_max_n`: cardinality formula, disjointness,
/// and exact partition of the avoidance class, with every constructive
/// preimage member re-checked through Φ itself.
pub fn check_phi_suite(peak_max_n: usize, preimage_max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let av321 = PatternSet::parse("321").expect("valid pattern");
    for n in 0..=peak_max_n {
        let mut ok = 0u64;
        let mut total = 0u64;
        let mut failure = String::new();
        for p in enumerate_av(n, &av321) {
            total += 1;
            if phi(&p).peak_set() == p.peak_set() {
                ok += 1;
            } else if failure.is_empty() {
                failure = format!("Peak(Φ({p})) != Peak({p})");
            }
        }
        let name = format!("Φ peak preservation n={n}");
        if ok == total {
            out.push(CheckResult::pass(
                name,
                format!("{total} permutations in Av_n(321)"),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }

    for n in 1..=preimage_max_n {
        let name = format!("Φ preimage partition n={n}");
        let avoiders: BTreeSet<Permutation> = enumerate_av(n, &av321).into_iter().collect();
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let mut failure = String::new();
        let mut tableau_count = 0usize;
        for (k, shape) in two_row_strict_shapes(n) {
            for t in enumerate_ssht(&shape) {
                tableau_count += 1;
                let preimage = match phi_preimage(&t) {
                    Ok(p) => p,
                    Err(err) => {
                        failure = format!("preimage error at {t}: {err}");
                        break;
                    }
                };
                let want = binom_u(n, k + 1)
                    - if k >= 1 {
                        binom_u(n, k - 1)
                    } else {
                        BigUint::from(0u8)
                    };
                if BigUint::from(preimage.len()) != want {
                    failure = format!("|Φ^{{-1}}({t})| = {}, want {want}", preimage.len());
                    break;
                }
                for p in preimage {
                    if phi(&p) != t {
                        failure = format!("constructive preimage member {p} has Φ({p}) != {t}");
                        break;
                    }
                    if !seen.insert(p.clone()) {
                        failure = format!("{p} appears in two preimages");
                        break;
                    }
                }
                if !failure.is_empty() {
                    break;
                }
            }
            if !failure.is_empty() {
                break;
            }
        }
        if failure.is_empty() && seen == avoiders {
            out.push(CheckResult::pass(
                name,
                format!(
                    "{} tableaux partition {} avoiders",
                    tableau_count,
                    avoiders.len()
                ),
            ));
        } else if failure.is_empty() {
            out.push(CheckResult::fail(
                name,
                format!(
                    "preimages cover {} of {} avoiders",
                    seen.len(),
                    avoiders.len()
                ),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

fn two_row_strict_shapes(n: usize) -> Vec<(usize, StrictPartition)> {
    let mut shapes = Vec::new();
    let mut k = 0;
    while n > 2 * k {
        let parts = if k == 0 {
            vec![n as u8]
        } else {
            vec![(n - k) as u8, k as u8]
        };
        shapes.push((k, StrictPartition::new(parts).expect("strict")));
        k += 1;
    }
    shapes
}

fn binom_u(n: usize, k: usize) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Counting identities: the two-row counting formulas against enumeration for
/// `n <= enum_max_n`, the peakless-class count `2^{n-1}` for `n <= av_max_n`,
/// and the weighted shifted-tableau sum `2^{n-1}` for `n <= sum_max_n`.
pub fn check_counting_identities(
    sum_max_n: usize,
    av_max_n: usize,
    enum_max_n: usize,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=sum_max_n {
        let mut total = BigUint::from(0u8);
        for (k, _) in two_row_strict_shapes(n) {
            let count = count_two_row_ssht(n, k).expect("strict shape");
            total += count * BigUint::from(n - 2 * k);
        }
        out.push(CheckResult::expect_eq(
            format!("Σ (n-2k)|SShT(n-k,k)| = 2^(n-1) at n={n}"),
            total,
            BigUint::one() << (n - 1),
            "weighted two-row count",
        ));
    }
    let peakless = PatternSet::parse("132,231").expect("valid patterns");
    for n in 1..=av_max_n {
        out.push(CheckResult::expect_eq(
            format!("|Av_n(132,231)| = 2^(n-1) at n={n}"),
            BigUint::from(av_count(n, &peakless)),
            BigUint::one() << (n - 1),
            "peakless class size",
        ));
    }
    for n in 1..=enum_max_n {
        let mut ssht_ok = true;
        let mut syt_ok = true;
        let mut detail = String::new();
        for (k, shape) in two_row_strict_shapes(n) {
            let formula = count_two_row_ssht(n, k).expect("strict shape");
            let enumerated = BigUint::from(enumerate_ssht(&shape).len());
            if formula != enumerated {
                ssht_ok = false;
                detail = format!("SShT{shape}: formula {formula}, enumeration {enumerated}");
                break;
            }
        }
        for b in 0..=n / 2 {
            let a = n - b;
            let formula = count_two_row_syt(a, b).expect("valid shape");
            let shape = if b == 0 {
                Partition::new(vec![a as u8]).unwrap()
            } else {
                Partition::new(vec![a as u8, b as u8]).unwrap()
            };
            let enumerated = BigUint::from(enumerate_syt(&shape).len());
            if formula != enumerated {
                syt_ok = false;
                detail = format!("SYT{shape}: formula {formula}, enumeration {enumerated}");
                break;
            }
        }
        let name = format!("two-row counting formulas n={n}");
        if ssht_ok && syt_ok {
            out.push(CheckResult::pass(name, "formulas match enumeration"));
        } else {
            out.push(CheckResult::fail(name, detail));
        }
    }
    out
}

/// The peak-basis product against the quasi-shuffle oracle on all single-term
/// pairs of total degree `<= oracle_max`, and independence of the
/// representative permutations for total degree `<= indep_max`.
pub fn check_product_oracle(oracle_max: usize, indep_max: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for total in 0..=oracle_max {
        let mut pairs = 0u64;
        let mut failure = String::new();
        for n1 in 0..=total {
            let n2 = total - n1;
            for s1 in peak_sets_of_degree(n1) {
                let k1 = QsymExpr::k_term(s1.clone(), 1).expect("peak set");
                for s2 in peak_sets_of_degree(n2) {
                    let k2 = QsymExpr::k_term(s2.clone(), 1).expect("peak set");
                    pairs += 1;
                    let product_m = k1.peak_product(&k2).expect("K basis").to_m();
                    let oracle = k1
                        .to_m()
                        .quasi_shuffle_product(&k2.to_m())
                        .expect("M basis");
                    if product_m != oracle {
                        failure =
                            format!("K({s1})·K({s2}) disagrees with the quasi-shuffle oracle");
                        break;
                    }
                }
                if !failure.is_empty() {
                    break;
                }
            }
            if !failure.is_empty() {
                break;
            }
        }
        let name = format!("peak product oracle total degree {total}");
        if failure.is_empty() {
            out.push(CheckResult::pass(
                name,
                format!("{pairs} single-term pairs"),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }

    type PeakPairKey = (usize, Vec<u8>, Vec<u8>);
    for total in 0..=indep_max {
        let mut classes: HashMap<PeakPairKey, BTreeMap<IndexSet, u64>> = HashMap::new();
        let mut failure = String::new();
        for n1 in 0..=total {
            let n2 = total - n1;
            for p in enumerate_av(n1, &PatternSet::none()) {
                for q in enumerate_av(n2, &PatternSet::none()) {
                    let mut hist: BTreeMap<IndexSet, u64> = BTreeMap::new();
                    for rho in crate::perm::shuffle_perms(&p, &q) {
                        *hist.entry(rho.peak_set()).or_insert(0) += 1;
                    }
                    let key = (
                        n1,
                        p.peak_set().elements().to_vec(),
                        q.peak_set().elements().to_vec(),
                    );
                    match classes.entry(key) {
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(hist);
                        }
                        std::collections::hash_map::Entry::Occupied(o) => {
                            if o.get() != &hist {
                                failure = format!(
                                    "representatives {p} and an earlier choice give different products"
                                );
                            }
                        }
                    }
                }
                if !failure.is_empty() {
                    break;
                }
            }
            if !failure.is_empty() {
                break;
            }
        }
        let name = format!("product representative independence total degree {total}");
        if failure.is_empty() {
            out.push(CheckResult::pass(
                name,
                format!("{} peak-set pairs", classes.len()),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

/// The monomial-reversal identity for single peak functions over all of `S_n`,
/// and the symmetric-implies-reverse-equal consequence over every pattern
/// subset of `S_3`, both for `n <= max_n`.
pub fn check_reversal_machinery(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut memo: BTreeMap<IndexSet, QsymExpr> = BTreeMap::new();
        let mut ok = 0u64;
        let mut total = 0u64;
        let mut failure = String::new();
        for p in enumerate_av(n, &PatternSet::none()) {
            total += 1;
            let m_fwd = memo
                .entry(p.peak_set())
                .or_insert_with(|| QsymExpr::k_term(p.peak_set(), 1).expect("peak set").to_m())
                .clone();
            let rev = p.reverse();
            let m_rev = memo
                .entry(rev.peak_set())
                .or_insert_with(|| {
                    QsymExpr::k_term(rev.peak_set(), 1)
                        .expect("peak set")
                        .to_m()
                })
                .clone();
            if m_fwd.reverse_m().expect("M basis") == m_rev {
                ok += 1;
            } else if failure.is_empty() {
                failure = format!("M-reversal fails at {p}");
            }
        }
        let name = format!("K reversal in M basis n={n}");
        if ok == total {
            out.push(CheckResult::pass(name, format!("{total} permutations")));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }

    for n in 1..=max_n {
        let mut checked = 0u64;
        let mut failure = String::new();
        for patterns in all_s3_subsets() {
            let e = r_n(&patterns, n);
            if e.is_symmetric() {
                checked += 1;
                let rev = r_n(&patterns.reverse(), n);
                if e != rev {
                    failure =
                        format!("R_{n}({{{patterns}}}) symmetric but differs from its reversal");
                    break;
                }
            }
        }
        let name = format!("symmetric ⇒ reverse-equal n={n}");
        if failure.is_empty() {
            out.push(CheckResult::pass(
                name,
                format!("{checked} symmetric subsets of S_3"),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

/// Every subset of `S_3`, including the empty set.
pub fn all_s3_subsets() -> Vec<PatternSet> {
    let s3 = enumerate_av(3, &PatternSet::none());
    (0u32..64)
        .map(|mask| {
            PatternSet::new(
                s3.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, p)| p.clone()),
            )
            .expect("patterns are nonempty")
        })
        .collect()
}

/// The symmetry classification is complete at the checked range: a subset of
/// `S_3` (not containing both increasing and decreasing patterns) has
/// `R_n` symmetric for all `n <= max_n` exactly when it is listed in the
/// closed-form table.
pub fn check_table1_completeness(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let listed: BTreeSet<String> = table1_rows()
        .iter()
        .flat_map(|row| row.pattern_sets.iter().map(|p| p.canonical_string()))
        .collect();
    let iota = Permutation::increasing(3);
    let delta = Permutation::decreasing(3);
    for patterns in all_s3_subsets() {
        if patterns.contains(&iota) && patterns.contains(&delta) {
            continue;
        }
        let symmetric_all = (1..=max_n).all(|n| r_n(&patterns, n).is_symmetric());
        let in_table = listed.contains(&patterns.canonical_string());
        out.push(CheckResult::expect_eq(
            format!("classification Π={{{patterns}}}"),
            symmetric_all,
            in_table,
            format!("symmetric for all n <= {max_n} iff listed"),
        ));
    }
    out
}

/// The shuffle identity for the three pattern-set pairs, `n <= max_n`.
pub fn check_shuffle_formula(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let cases = [("12", "1"), ("21", "1"), ("1", "12")];
    for (a, b) in cases {
        let pa = PatternSet::parse(a).expect("valid");
        let pb = PatternSet::parse(b).expect("valid");
        let shuffled = shuffle_pattern_sets(&pa, &pb);
        for n in 0..=max_n {
            let lhs = r_n(&shuffled, n);
            let rhs = shuffle_formula_rhs(&pa, &pb, n);
            out.push(CheckResult::expect_eq(
                format!("shuffle formula {a} ⧢ {b} n={n}"),
                lhs.to_string(),
                rhs.to_string(),
                format!("Π⧢Π' = {{{shuffled}}}"),
            ));
        }
    }
    out
}

/// The `2Q(n) + Q(n-1,1)` value for the four shuffle-product pattern sets,
/// `2 <= n <= max_n` (the hook term drops at `n = 2`).
pub fn check_shuffle_closed_form(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let sets = ["123,132,312", "123,213,231", "132,312,321", "213,231,321"];
    for text in sets {
        let patterns = PatternSet::parse(text).expect("valid");
        for n in 2..=max_n {
            let name = format!("shuffle value Π={{{patterns}}} n={n}");
            let Some(got) = expand_or_fail(&name, &r_n(&patterns, n), &mut out) else {
                continue;
            };
            let mut terms = vec![(StrictPartition::new(vec![n as u8]).unwrap(), 2)];
            if n >= 3 {
                terms.push((StrictPartition::new(vec![(n - 1) as u8, 1]).unwrap(), 1));
            }
            let expected = SchurQExpansion::from_integer_terms(n, terms).unwrap();
            out.push(CheckResult::expect_eq(
                name,
                got.to_string(),
                expected.to_string(),
                "2Q(n) + Q(n-1,1)",
            ));
        }
    }
    out
}

/// The bounded-descending-arm closed form: the min-clipped form against brute
/// force for `j in 2..=5`, and the printed form wherever it is defined.
pub fn check_include_delta(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for j in 2..=5usize {
        let mut patterns = vec![
            "132".parse::<Permutation>().unwrap(),
            "312".parse::<Permutation>().unwrap(),
        ];
        patterns.push(Permutation::decreasing(j));
        let patterns = PatternSet::new(patterns).expect("valid");
        for n in 1..=max_n {
            let name = format!("include-delta j={j} n={n}");
            let Some(got) = expand_or_fail(&name, &r_n(&patterns, n), &mut out) else {
                continue;
            };
            let clipped = include_delta_formula(j, n).expect("valid arguments");
            let mut pass = got == clipped;
            let mut detail = format!("min-clipped form at j={j}");
            if pass && n + 3 >= 2 * j {
                let printed = include_delta_printed(j, n).expect("n >= 2j-3");
                if printed != got {
                    pass = false;
                    detail = format!("printed form diverges: {printed} vs {got}");
                } else {
                    detail.push_str("; printed form agrees");
                }
            }
            if pass {
                out.push(CheckResult::pass(name, detail));
            } else {
                out.push(CheckResult::fail(
                    name,
                    format!("{detail}; got {got}, clipped {clipped}"),
                ));
            }
        }
    }
    out
}

/// The monomial-basis symmetry test against polynomial specialization
/// invariance, on single peak functions and brute-forced `R_n` values of
/// degree `<= max_deg`.
pub fn check_symmetry_oracle(max_deg: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=max_deg {
        let mut inputs: Vec<(String, QsymExpr)> = peak_sets_of_degree(n)
            .into_iter()
            .map(|s| (format!("K({s})"), QsymExpr::k_term(s, 1).expect("peak set")))
            .collect();
        for patterns in all_s3_subsets() {
            inputs.push((format!("R_{n}({{{patterns}}})"), r_n(&patterns, n)));
        }
        let mut failure = String::new();
        let total = inputs.len();
        for (label, e) in inputs {
            let direct = e.is_symmetric();
            let oracle = e.specialize(n).is_symmetric_under_all_permutations();
            if direct != oracle {
                failure = format!("{label}: basis test {direct}, specialization test {oracle}");
                break;
            }
        }
        let name = format!("symmetry oracle degree {n}");
        if failure.is_empty() {
            out.push(CheckResult::pass(name, format!("{total} inputs")));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

/// `Φ` input sanity for tableau-level callers: both constructed recording
/// candidates of every two-row shifted tableau are valid standard Young
/// tableaux (validated on construction), and Sagan–Worley insertion of every
/// labeled permutation returns the original tableau.
pub fn check_labeling_roundtrip(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut tableaux = 0u64;
        let mut failure = String::new();
        for (_, shape) in two_row_strict_shapes(n) {
            for t in enumerate_ssht(&shape) {
                tableaux += 1;
                match crate::tableau::labeled_permutations(&t) {
                    Ok(perms) => {
                        for p in perms {
                            if sagan_worley(&p).insertion != t {
                                failure = format!("labeled permutation {p} does not insert to {t}");
                                break;
                            }
                            let peakless = p.peak_set().is_empty();
                            if !peakless {
                                failure = format!("labeled permutation {p} has a peak");
                                break;
                            }
                        }
                    }
                    Err(err) => failure = format!("labeling error at {t}: {err}"),
                }
                if !failure.is_empty() {
                    break;
                }
            }
            if !failure.is_empty() {
                break;
            }
        }
        let name = format!("labeling round trip n={n}");
        if failure.is_empty() {
            out.push(CheckResult::pass(
                name,
                format!("{tableaux} two-row tableaux"),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

/// Grouping all of `S_n` by the unmarked recording tableau of the inverse:
/// each standard shifted tableau `T` of shape `λ` is hit by exactly
/// `2^{n-ℓ(λ)}` distinct marked tableaux, each accounting for `|SShT(λ)|`
/// permutations. This is the machinery behind the Π = ∅ closed form.
pub fn check_marked_recording_counts(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut by_unmarked: BTreeMap<ShiftedTableau, BTreeSet<String>> = BTreeMap::new();
        let mut group_sizes: BTreeMap<ShiftedTableau, u64> = BTreeMap::new();
        for p in enumerate_av(n, &PatternSet::none()) {
            let recording = sagan_worley(&p.inverse()).recording;
            let base = recording.unmark();
            by_unmarked
                .entry(base.clone())
                .or_default()
                .insert(recording.to_string());
            *group_sizes.entry(base).or_insert(0) += 1;
        }
        let mut failure = String::new();
        for (t, marked_variants) in &by_unmarked {
            let shape = t.shape();
            let expected_marks = 1u64 << (n - shape.len());
            let expected_size = expected_marks * enumerate_ssht(&shape).len() as u64;
            if marked_variants.len() as u64 != expected_marks {
                failure = format!(
                    "{t}: {} marked variants, want {expected_marks}",
                    marked_variants.len()
                );
                break;
            }
            if group_sizes[t] != expected_size {
                failure = format!("{t}: {} permutations, want {expected_size}", group_sizes[t]);
                break;
            }
        }
        let name = format!("marked recording counts n={n}");
        if failure.is_empty() {
            out.push(CheckResult::pass(
                name,
                format!("{} base tableaux", by_unmarked.len()),
            ));
        } else {
            out.push(CheckResult::fail(name, failure));
        }
    }
    out
}

/// The identity suite the CLI exposes: insertion properties, Φ machinery,
/// reversal machinery, counting identities, product and symmetry oracles, and
/// the degree-6 counterexample.
pub fn identity_suite(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.extend(check_insertion_properties(max_n));
    out.extend(check_phi_suite(max_n.min(7), max_n.min(8)));
    out.extend(check_reversal_machinery(max_n.min(6)));
    out.extend(check_counting_identities(
        max_n.max(20),
        max_n.max(12),
        max_n.min(12),
    ));
    out.extend(check_labeling_roundtrip(max_n.min(8)));
    out.extend(check_marked_recording_counts(max_n.min(6)));
    out.extend(check_product_oracle(max_n.min(7), max_n.min(6)));
    out.extend(check_symmetry_oracle(max_n.min(5)));
    out.extend(check_counterexample());
    out.extend(check_table1_completeness(max_n.min(7)));
    out
}

/// The shuffle suite the CLI exposes.
pub fn shuffle_suite(max_n: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.extend(check_shuffle_formula(max_n));
    out.extend(check_shuffle_closed_form(max_n));
    out.extend(check_include_delta(max_n.min(8)));
    out
}

/// Histogram of peak sets over `Av_n(patterns)` as `(elements, count)` pairs;
/// the canonical payload for the on-disk cache.
pub fn histogram_pairs(patterns: &PatternSet, n: usize) -> Vec<(Vec<u8>, u64)> {
    peak_histogram(patterns, n)
        .into_iter()
        .map(|(s, c)| (s.elements().to_vec(), c))
        .collect()
}
