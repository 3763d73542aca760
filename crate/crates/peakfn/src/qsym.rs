//! Homogeneous quasisymmetric expressions in the monomial (M), fundamental
//! (F), and peak (K) bases, with exact integer coefficients.
//!
//! `K_{S,n} = 2^{|S|+1} Σ F_β` over compositions `β ⊨ n` with
//! `S ⊆ set(β) △ (set(β)+1)`, and `F_α = Σ M_β` over refinements `β` of `α`.
//! The degree-zero peak function `K_{∅,0}` is 1 by definition and acts as the
//! unit for the products.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{shuffle_perms, IndexSet, Permutation};

/// A finite sequence of positive integers; the empty composition has weight 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u8>,
}

impl Composition {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition("parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
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

    /// `α^r`: the parts in reverse order.
    pub fn reverse(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// `set(α) = {α_1, α_1+α_2, ...}` excluding the total weight.
    pub fn comp_set(&self) -> IndexSet {
        let n = self.weight();
        let mut elems = Vec::new();
        let mut sum = 0usize;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            sum += p as usize;
            elems.push(sum as u8);
        }
        IndexSet::new(elems, n).expect("partial sums are strictly increasing and below n")
    }

    /// Inverse of [`Composition::comp_set`]: the composition of `n` whose
    /// partial sums are exactly `s`.
    pub fn from_set(s: &IndexSet) -> Composition {
        let n = s.degree();
        let mut parts = Vec::with_capacity(s.len() + 1);
        let mut prev = 0u8;
        for &e in s.elements() {
            parts.push(e - prev);
            prev = e;
        }
        if n > 0 {
            parts.push(n as u8 - prev);
        }
        Composition { parts }
    }

    /// The partition obtained by sorting the parts in decreasing order.
    pub fn sorted_desc(&self) -> Vec<u8> {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All compositions of `n`, ordered lexicographically on parts.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    gen_compositions(n, &mut parts, &mut out);
    out
}

fn gen_compositions(rem: usize, parts: &mut Vec<u8>, out: &mut Vec<Composition>) {
    if rem == 0 {
        out.push(Composition {
            parts: parts.clone(),
        });
        return;
    }
    for p in 1..=rem {
        parts.push(p as u8);
        gen_compositions(rem - p, parts, out);
        parts.pop();
    }
}

/// All compositions `β` refining `α` (adding adjacent parts of `β` gives `α`).
pub fn refinements(alpha: &Composition) -> Vec<Composition> {
    let mut out = vec![Composition::empty()];
    for &part in alpha.parts() {
        let blocks = compositions_of(part as usize);
        let mut next = Vec::with_capacity(out.len() * blocks.len());
        for prefix in &out {
            for block in &blocks {
                let mut parts = prefix.parts.clone();
                parts.extend_from_slice(block.parts());
                next.push(Composition { parts });
            }
        }
        out = next;
    }
    out
}

/// The basis a [`QsymExpr`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    K,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::K => "K",
        }
    }
}

/// A basis index: a composition for M/F, a peak set for K.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum QsymIndex {
    Comp(Composition),
    Peaks(IndexSet),
}

impl fmt::Debug for QsymIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QsymIndex::Comp(c) => write!(f, "{c}"),
            QsymIndex::Peaks(s) => write!(f, "{s}"),
        }
    }
}

/// A homogeneous quasisymmetric expression: an integer linear combination of
/// basis elements of one degree, in one basis. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct QsymExpr {
    degree: usize,
    basis: Basis,
    terms: BTreeMap<QsymIndex, i64>,
}

impl QsymExpr {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        QsymExpr {
            degree,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The single peak-function term `coeff * K_{S,n}`.
    pub fn k_term(s: IndexSet, coeff: i64) -> Result<Self> {
        if !s.is_peak_set() {
            return Err(Error::NotAPeakSet(s.to_string()));
        }
        let mut e = QsymExpr::zero(Basis::K, s.degree());
        e.add_term(QsymIndex::Peaks(s), coeff);
        Ok(e)
    }

    /// The single fundamental term `coeff * F_α`.
    pub fn f_term(alpha: Composition, coeff: i64) -> Self {
        let mut e = QsymExpr::zero(Basis::F, alpha.weight());
        e.add_term(QsymIndex::Comp(alpha), coeff);
        e
    }

    /// The single monomial term `coeff * M_α`.
    pub fn m_term(alpha: Composition, coeff: i64) -> Self {
        let mut e = QsymExpr::zero(Basis::M, alpha.weight());
        e.add_term(QsymIndex::Comp(alpha), coeff);
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QsymIndex, i64)> {
        self.terms.iter().map(|(i, &c)| (i, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, idx: &QsymIndex) -> i64 {
        self.terms.get(idx).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, idx: QsymIndex, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QsymExpr) -> Result<QsymExpr> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &QsymExpr) -> Result<QsymExpr> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &QsymExpr, sign: i64) -> Result<QsymExpr> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.name(),
                got: other.basis.name(),
            });
        }
        if self.degree != other.degree {
            return Err(Error::InvalidComposition(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(idx.clone(), sign * c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> QsymExpr {
        let mut out = QsymExpr::zero(self.basis, self.degree);
        for (idx, c) in self.terms() {
            out.add_term(idx.clone(), factor * c);
        }
        out
    }

    /// Expands every peak function into fundamentals:
    /// `K_{S,n} = 2^{|S|+1} Σ F_β` over `β ⊨ n` with `S ⊆ set(β) △ (set(β)+1)`.
    /// At degree 0 the unit expands to `F_()` with coefficient unchanged.
    pub fn k_to_f(&self) -> Result<QsymExpr> {
        if self.basis != Basis::K {
            return Err(Error::BasisMismatch {
                expected: "K",
                got: self.basis.name(),
            });
        }
        let n = self.degree;
        let mut out = QsymExpr::zero(Basis::F, n);
        if n == 0 {
            for (_, c) in self.terms() {
                out.add_term(QsymIndex::Comp(Composition::empty()), c);
            }
            return Ok(out);
        }
        let comps = compositions_of(n);
        let comp_masks: Vec<u64> = comps
            .iter()
            .map(|beta| {
                let b = index_mask(&beta.comp_set());
                b ^ (b << 1)
            })
            .collect();
        for (idx, c) in self.terms() {
            let QsymIndex::Peaks(s) = idx else {
                return Err(Error::BasisMismatch {
                    expected: "K",
                    got: "M/F",
                });
            };
            let coeff = c * (1i64 << (s.len() + 1));
            let s_mask = index_mask(s);
            for (beta, &mask) in comps.iter().zip(&comp_masks) {
                if s_mask & !mask == 0 {
                    out.add_term(QsymIndex::Comp(beta.clone()), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Expands every fundamental into monomials: `F_α = Σ M_β` over
    /// refinements `β` of `α`.
    pub fn f_to_m(&self) -> Result<QsymExpr> {
        if self.basis != Basis::F {
            return Err(Error::BasisMismatch {
                expected: "F",
                got: self.basis.name(),
            });
        }
        let mut out = QsymExpr::zero(Basis::M, self.degree);
        for (idx, c) in self.terms() {
            let QsymIndex::Comp(alpha) = idx else {
                return Err(Error::BasisMismatch {
                    expected: "F",
                    got: "K",
                });
            };
            for beta in refinements(alpha) {
                out.add_term(QsymIndex::Comp(beta), c);
            }
        }
        Ok(out)
    }

    /// Converts to the monomial basis from whichever basis this is in.
    pub fn to_m(&self) -> QsymExpr {
        match self.basis {
            Basis::M => self.clone(),
            Basis::F => self.f_to_m().expect("basis checked"),
            Basis::K => self
                .k_to_f()
                .expect("basis checked")
                .f_to_m()
                .expect("k_to_f produces F"),
        }
    }

    /// True iff the monomial-basis coefficients are constant on rearrangement
    /// classes of compositions, i.e. the expression is a symmetric function.
    pub fn is_symmetric(&self) -> bool {
        let m = self.to_m();
        let mut classes: BTreeMap<Vec<u8>, (i64, u64)> = BTreeMap::new();
        for (idx, c) in m.terms() {
            let QsymIndex::Comp(alpha) = idx else {
                unreachable!("M basis")
            };
            let entry = classes.entry(alpha.sorted_desc()).or_insert((c, 0));
            if entry.0 != c {
                return false;
            }
            entry.1 += 1;
        }
        classes
            .iter()
            .all(|(partition, &(_, seen))| seen == rearrangement_count(partition))
    }

    /// Reverses every index composition, keeping coefficients.
    pub fn reverse_m(&self) -> Result<QsymExpr> {
        if self.basis != Basis::M {
            return Err(Error::BasisMismatch {
                expected: "M",
                got: self.basis.name(),
            });
        }
        let mut out = QsymExpr::zero(Basis::M, self.degree);
        for (idx, c) in self.terms() {
            let QsymIndex::Comp(alpha) = idx else {
                unreachable!("M basis")
            };
            out.add_term(QsymIndex::Comp(alpha.reverse()), c);
        }
        Ok(out)
    }

    /// Product in the peak basis via the shuffle rule: pick permutations with
    /// the given peak sets, shuffle them, and sum `K` over the peak sets of
    /// the shuffles. The result does not depend on the representatives.
    pub fn peak_product(&self, other: &QsymExpr) -> Result<QsymExpr> {
        if self.basis != Basis::K || other.basis != Basis::K {
            return Err(Error::BasisMismatch {
                expected: "K",
                got: "M/F",
            });
        }
        let mut out = QsymExpr::zero(Basis::K, self.degree + other.degree);
        for (i1, c1) in self.terms() {
            let QsymIndex::Peaks(s1) = i1 else {
                unreachable!("K basis")
            };
            let p = representative_perm(s1)?;
            for (i2, c2) in other.terms() {
                let QsymIndex::Peaks(s2) = i2 else {
                    unreachable!("K basis")
                };
                let q = representative_perm(s2)?;
                for rho in shuffle_perms(&p, &q) {
                    out.add_term(QsymIndex::Peaks(rho.peak_set()), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// The overlapping-shuffle product of monomial quasisymmetric functions.
    /// Serves as an independent oracle for [`QsymExpr::peak_product`].
    pub fn quasi_shuffle_product(&self, other: &QsymExpr) -> Result<QsymExpr> {
        if self.basis != Basis::M || other.basis != Basis::M {
            return Err(Error::BasisMismatch {
                expected: "M",
                got: "F/K",
            });
        }
        let mut out = QsymExpr::zero(Basis::M, self.degree + other.degree);
        for (i1, c1) in self.terms() {
            let QsymIndex::Comp(a) = i1 else {
                unreachable!("M basis")
            };
            for (i2, c2) in other.terms() {
                let QsymIndex::Comp(b) = i2 else {
                    unreachable!("M basis")
                };
                let mut prefix = Vec::with_capacity(a.len() + b.len());
                quasi_shuffle(a.parts(), b.parts(), &mut prefix, c1 * c2, &mut out);
            }
        }
        Ok(out)
    }

    /// Evaluates in `vars` commuting variables, returning a dense
    /// exponent-vector polynomial.
    pub fn specialize(&self, vars: usize) -> Polynomial {
        assert!(vars >= 1, "at least one variable required");
        let m = self.to_m();
        let mut poly = Polynomial {
            vars,
            terms: BTreeMap::new(),
        };
        for (idx, c) in m.terms() {
            let QsymIndex::Comp(alpha) = idx else {
                unreachable!("M basis")
            };
            let k = alpha.len();
            if k > vars {
                continue;
            }
            let mut choice: Vec<usize> = Vec::with_capacity(k);
            choose_vars(vars, k, 0, &mut choice, &mut |chosen| {
                let mut exps = vec![0u8; vars];
                for (slot, &var) in chosen.iter().enumerate() {
                    exps[var] = alpha.parts()[slot];
                }
                *poly.terms.entry(exps).or_insert(0) += c;
            });
        }
        poly.terms.retain(|_, c| *c != 0);
        poly
    }
}

fn choose_vars(
    m: usize,
    k: usize,
    start: usize,
    choice: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if choice.len() == k {
        f(choice);
        return;
    }
    for v in start..m {
        choice.push(v);
        choose_vars(m, k, v + 1, choice, f);
        choice.pop();
    }
}

fn quasi_shuffle(a: &[u8], b: &[u8], prefix: &mut Vec<u8>, coeff: i64, out: &mut QsymExpr) {
    if a.is_empty() || b.is_empty() {
        let mut parts = prefix.clone();
        parts.extend_from_slice(a);
        parts.extend_from_slice(b);
        out.add_term(QsymIndex::Comp(Composition { parts }), coeff);
        return;
    }
    prefix.push(a[0]);
    quasi_shuffle(&a[1..], b, prefix, coeff, out);
    prefix.pop();
    prefix.push(b[0]);
    quasi_shuffle(a, &b[1..], prefix, coeff, out);
    prefix.pop();
    prefix.push(a[0] + b[0]);
    quasi_shuffle(&a[1..], &b[1..], prefix, coeff, out);
    prefix.pop();
}

fn index_mask(s: &IndexSet) -> u64 {
    s.elements().iter().fold(0u64, |m, &e| m | (1u64 << e))
}

/// Number of distinct rearrangements of a multiset of parts.
fn rearrangement_count(partition: &[u8]) -> u64 {
    let mut denom = 1u64;
    let mut run = 1u64;
    for w in partition.windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= run;
        } else {
            run = 1;
        }
    }
    factorial(partition.len() as u64) / denom
}

fn factorial(n: u64) -> u64 {
    (2..=n).product()
}

/// The canonical permutation with the given peak set: non-peak positions take
/// the smallest values in increasing order, peak positions take the largest
/// values in increasing order. Its descent set is exactly `s`, so its peak
/// set is `s` whenever `s` is a valid peak set.
pub fn representative_perm(s: &IndexSet) -> Result<Permutation> {
    if !s.is_peak_set() {
        return Err(Error::NotAPeakSet(s.to_string()));
    }
    let n = s.degree();
    let mut entries = vec![0u8; n];
    let small_count = n - s.len();
    let mut small = 1u8;
    let mut large = (small_count + 1) as u8;
    for (i, slot) in entries.iter_mut().enumerate() {
        if s.contains((i + 1) as u8) {
            *slot = large;
            large += 1;
        } else {
            *slot = small;
            small += 1;
        }
    }
    Permutation::new(entries)
}

impl fmt::Display for QsymExpr {
    /// Plain-text rendering, e.g. `4*K(∅) + 2*K({2})` or `7*F(2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (idx, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match idx {
                QsymIndex::Comp(comp) => write!(f, "{mag}*{}{comp}", self.basis.name())?,
                QsymIndex::Peaks(s) => write!(f, "{mag}*K({s})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QsymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {} {}] {}", self.degree, self.basis.name(), self)
    }
}

impl QsymExpr {
    /// LaTeX rendering in the display style `4K_{\{2\},3}` / `7F_{(2,1)}`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (idx, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if c < 0 {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            match idx {
                QsymIndex::Comp(comp) => {
                    out.push_str(&format!("{}_{{{comp}}}", self.basis.name()));
                }
                QsymIndex::Peaks(s) => {
                    let set = if s.is_empty() {
                        "\\emptyset".to_string()
                    } else {
                        let body: Vec<String> =
                            s.elements().iter().map(|e| e.to_string()).collect();
                        format!("\\{{{}\\}}", body.join(","))
                    };
                    out.push_str(&format!("K_{{{set},{}}}", self.degree));
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    index: Vec<u8>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ExprRepr {
    degree: usize,
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for QsymExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(idx, coeff)| TermRepr {
                index: match idx {
                    QsymIndex::Comp(c) => c.parts().to_vec(),
                    QsymIndex::Peaks(s) => s.elements().to_vec(),
                },
                coeff,
            })
            .collect();
        ExprRepr {
            degree: self.degree,
            basis: self.basis,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QsymExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(deserializer)?;
        let mut expr = QsymExpr::zero(repr.basis, repr.degree);
        for term in repr.terms {
            let idx = match repr.basis {
                Basis::K => {
                    let s = IndexSet::new(term.index, repr.degree).map_err(D::Error::custom)?;
                    if !s.is_peak_set() {
                        return Err(D::Error::custom(format!("{s} is not a peak set")));
                    }
                    QsymIndex::Peaks(s)
                }
                Basis::M | Basis::F => {
                    let c = Composition::new(term.index).map_err(D::Error::custom)?;
                    if c.weight() != repr.degree {
                        return Err(D::Error::custom("index weight does not match degree"));
                    }
                    QsymIndex::Comp(c)
                }
            };
            expr.add_term(idx, term.coeff);
        }
        Ok(expr)
    }
}

/// A dense exponent-vector polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl Polynomial {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Applies a permutation to the variables: variable `i` becomes variable
    /// `σ(i)`.
    pub fn permute_vars(&self, sigma: &Permutation) -> Polynomial {
        assert_eq!(sigma.size(), self.vars);
        let mut terms = BTreeMap::new();
        for (exps, c) in self.terms() {
            let mut new_exps = vec![0u8; self.vars];
            for (i, &e) in exps.iter().enumerate() {
                new_exps[sigma.as_slice()[i] as usize - 1] = e;
            }
            *terms.entry(new_exps).or_insert(0) += c;
        }
        Polynomial {
            vars: self.vars,
            terms,
        }
    }

    /// True iff the polynomial is invariant under every permutation of its
    /// variables.
    pub fn is_symmetric_under_all_permutations(&self) -> bool {
        crate::perm::enumerate_av(self.vars, &crate::perm::PatternSet::none())
            .iter()
            .all(|sigma| &self.permute_vars(sigma) == self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_av;
    use crate::perm::PatternSet;

    fn comp(parts: &[u8]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn peaks(elems: &[u8], degree: usize) -> IndexSet {
        IndexSet::new(elems.to_vec(), degree).unwrap()
    }

    fn k(elems: &[u8], degree: usize) -> QsymExpr {
        QsymExpr::k_term(peaks(elems, degree), 1).unwrap()
    }

    #[test]
    fn comp_set_examples() {
        assert_eq!(comp(&[2, 1]).comp_set(), peaks(&[2], 3));
        assert_eq!(
            comp(&[1, 2, 1]).comp_set(),
            IndexSet::new(vec![1, 3], 4).unwrap()
        );
        assert_eq!(Composition::empty().comp_set(), IndexSet::empty(0));
        for parts in [&[2u8, 1, 3][..], &[1, 1, 1], &[4], &[2, 2]] {
            let c = comp(parts);
            let n = c.weight() as u8;
            let expected: Vec<u8> = c.reverse().comp_set().elements().to_vec();
            let reflected: Vec<u8> = c
                .comp_set()
                .elements()
                .iter()
                .rev()
                .map(|&s| n - s)
                .collect();
            assert_eq!(expected, reflected, "at {c}");
        }
    }

    #[test]
    fn comp_set_round_trip() {
        for n in 0..=7 {
            for c in compositions_of(n) {
                assert_eq!(Composition::from_set(&c.comp_set()), c);
            }
        }
    }

    #[test]
    fn k_to_f_examples() {
        let e = k(&[2], 3).k_to_f().unwrap();
        let expected = QsymExpr::f_term(comp(&[2, 1]), 4)
            .add(&QsymExpr::f_term(comp(&[1, 2]), 4))
            .unwrap();
        assert_eq!(e, expected);

        // The empty peak set imposes no condition: all compositions, coefficient 2.
        let e = k(&[], 4).k_to_f().unwrap();
        assert_eq!(e.num_terms(), 8);
        assert!(e.terms().all(|(_, c)| c == 2));

        // Degree-zero unit.
        let unit = k(&[], 0).k_to_f().unwrap();
        assert_eq!(unit, QsymExpr::f_term(Composition::empty(), 1));
    }

    #[test]
    fn k_to_f_coefficients_are_uniform_powers() {
        for n in 1..=7 {
            for s in crate::schurq::peak_sets_of_degree(n) {
                let coeff = 1i64 << (s.len() + 1);
                let e = QsymExpr::k_term(s, 1).unwrap().k_to_f().unwrap();
                assert!(e.num_terms() > 0);
                assert!(e.terms().all(|(_, c)| c == coeff));
            }
        }
    }

    #[test]
    fn f_to_m_examples() {
        assert_eq!(
            QsymExpr::f_term(comp(&[2]), 1).f_to_m().unwrap(),
            QsymExpr::m_term(comp(&[2]), 1)
                .add(&QsymExpr::m_term(comp(&[1, 1]), 1))
                .unwrap()
        );
        assert_eq!(
            QsymExpr::f_term(comp(&[1, 1]), 1).f_to_m().unwrap(),
            QsymExpr::m_term(comp(&[1, 1]), 1)
        );
        let e = QsymExpr::f_term(comp(&[2, 1]), 1).f_to_m().unwrap();
        let expected = QsymExpr::m_term(comp(&[2, 1]), 1)
            .add(&QsymExpr::m_term(comp(&[1, 1, 1]), 1))
            .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn symmetry_examples() {
        assert!(k(&[], 2).is_symmetric());
        let r5_132 = crate::pattern::r_n(&PatternSet::parse("132").unwrap(), 5);
        assert!(!r5_132.is_symmetric());
        let big = crate::pattern::r_n(
            &PatternSet::parse("1234,1243,2413,3142,3412,4123").unwrap(),
            6,
        );
        assert!(big.is_symmetric());
    }

    #[test]
    fn reverse_m_examples() {
        assert_eq!(
            QsymExpr::m_term(comp(&[2, 1]), 1).reverse_m().unwrap(),
            QsymExpr::m_term(comp(&[1, 2]), 1)
        );
        let palindrome = QsymExpr::m_term(comp(&[1, 2, 1]), 5);
        assert_eq!(palindrome.reverse_m().unwrap(), palindrome);
    }

    #[test]
    fn reversal_identity_for_peak_terms() {
        for n in 1..=6 {
            for q in enumerate_av(n, &PatternSet::none()) {
                let fwd = QsymExpr::k_term(q.peak_set(), 1).unwrap().to_m();
                let rev = QsymExpr::k_term(q.reverse().peak_set(), 1).unwrap().to_m();
                assert_eq!(fwd.reverse_m().unwrap(), rev, "at {q}");
            }
        }
    }

    #[test]
    fn peak_product_examples() {
        let product = k(&[], 1).peak_product(&k(&[], 1)).unwrap();
        assert_eq!(product, k(&[], 2).scale(2));

        // Cross-check in the monomial basis: (2M_(1))^2 = 8M_(1,1) + 4M_(2).
        let m = product.to_m();
        assert_eq!(m.coeff(&QsymIndex::Comp(comp(&[1, 1]))), 8);
        assert_eq!(m.coeff(&QsymIndex::Comp(comp(&[2]))), 4);

        // Appending one letter to a peakless word: 2K_{∅,n} plus one peak
        // anywhere in the interior.
        for n in 3..=6usize {
            let product = k(&[], n - 1).peak_product(&k(&[], 1)).unwrap();
            let mut expected = k(&[], n).scale(2);
            for m in 2..n {
                expected = expected.add(&k(&[m as u8], n)).unwrap();
            }
            assert_eq!(product, expected, "n={n}");
        }

        // Unit.
        let e = k(&[2], 4);
        assert_eq!(e.peak_product(&k(&[], 0)).unwrap(), e);
        assert_eq!(k(&[], 0).peak_product(&e).unwrap(), e);
    }

    #[test]
    fn quasi_shuffle_examples() {
        let m1 = QsymExpr::m_term(comp(&[1]), 1);
        let product = m1.quasi_shuffle_product(&m1).unwrap();
        let expected = QsymExpr::m_term(comp(&[1, 1]), 2)
            .add(&QsymExpr::m_term(comp(&[2]), 1))
            .unwrap();
        assert_eq!(product, expected);

        let unit = QsymExpr::m_term(Composition::empty(), 1);
        let e = QsymExpr::m_term(comp(&[2, 1]), 5);
        assert_eq!(e.quasi_shuffle_product(&unit).unwrap(), e);
    }

    #[test]
    fn peak_product_agrees_with_quasi_shuffle_oracle() {
        for n1 in 0..=3usize {
            for n2 in 0..=3usize {
                for s1 in crate::schurq::peak_sets_of_degree(n1) {
                    for s2 in crate::schurq::peak_sets_of_degree(n2) {
                        let a = QsymExpr::k_term(s1.clone(), 1).unwrap();
                        let b = QsymExpr::k_term(s2.clone(), 1).unwrap();
                        let fast = a.peak_product(&b).unwrap().to_m();
                        let oracle = a.to_m().quasi_shuffle_product(&b.to_m()).unwrap();
                        assert_eq!(fast, oracle, "K({s1})·K({s2})");
                    }
                }
            }
        }
    }

    #[test]
    fn specialize_examples() {
        let m2 = QsymExpr::m_term(comp(&[2]), 1).specialize(2);
        let terms: Vec<(Vec<u8>, i64)> = m2.terms().map(|(e, c)| (e.clone(), c)).collect();
        assert_eq!(terms, vec![(vec![0, 2], 1), (vec![2, 0], 1)]);

        let f11 = QsymExpr::f_term(comp(&[1, 1]), 1).specialize(2);
        let terms: Vec<(Vec<u8>, i64)> = f11.terms().map(|(e, c)| (e.clone(), c)).collect();
        assert_eq!(terms, vec![(vec![1, 1], 1)]);

        let k2 = k(&[], 2).specialize(2);
        let terms: Vec<(Vec<u8>, i64)> = k2.terms().map(|(e, c)| (e.clone(), c)).collect();
        assert_eq!(
            terms,
            vec![(vec![0, 2], 2), (vec![1, 1], 4), (vec![2, 0], 2)]
        );
    }

    #[test]
    fn representative_perm_examples() {
        assert_eq!(
            representative_perm(&IndexSet::empty(5)).unwrap(),
            Permutation::increasing(5)
        );
        assert_eq!(
            representative_perm(&peaks(&[2], 3)).unwrap().to_string(),
            "132"
        );
        assert!(representative_perm(&peaks(&[1], 3)).is_err());
        for n in 0..=8 {
            for s in crate::schurq::peak_sets_of_degree(n) {
                let q = representative_perm(&s).unwrap();
                assert_eq!(q.peak_set(), s, "peak set {s} degree {n}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let e = k(&[2, 5], 7).scale(4).add(&k(&[3], 7).scale(-2)).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"degree":7,"basis":"K","terms":[{"index":[3],"coeff":-2},{"index":[2,5],"coeff":4}]}"#
        );
        let back: QsymExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<QsymExpr>(
            r#"{"degree":3,"basis":"K","terms":[{"index":[1],"coeff":1}]}"#
        )
        .is_err());
    }

    #[test]
    fn display_formats() {
        let e = k(&[], 3).scale(4).add(&k(&[2], 3).scale(2)).unwrap();
        assert_eq!(e.to_string(), "4*K(∅) + 2*K({2})");
        assert_eq!(e.to_latex(), "4K_{\\emptyset,3}+2K_{\\{2\\},3}");
        let f = QsymExpr::f_term(comp(&[2, 1]), 3)
            .sub(&QsymExpr::f_term(comp(&[1, 2]), 1))
            .unwrap();
        assert_eq!(f.to_string(), "-1*F(1,2) + 3*F(2,1)");
        assert_eq!(f.to_latex(), "-F_{(1,2)}+3F_{(2,1)}");
    }
}
