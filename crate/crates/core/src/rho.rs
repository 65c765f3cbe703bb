//! The representation rho of the generators on the truncated free word
//! space L^- spanned by `f_{i_1} ... f_{i_t}` and `J f_{i_1} ... f_{i_t}`.
//!
//! Plain generators act by the lowest-weight-module formulas
//!
//! ```text
//! f_j . w = f_j w
//! h_j . w = -(c_{i_1 j} + ... + c_{i_t j}) w
//! e_j . w = -sum_k delta_{j i_k} (c_{i_{k+1} j} + ... + c_{i_t j}) w\f_{i_k}
//! ```
//!
//! and keep the J flag. A J-tagged generator uses the same coefficient and
//! toggles the flag, with an extra factor -1 when the input carries J.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::relations::{GenTag, RelationReport, Rhs, FAMILIES};
use crate::roots::CartanMatrix;
use crate::scalars::{rat, Rational};
use crate::span::{SpanBasis, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    pub j_flag: bool,
    /// Letters `i_1, ..., i_t`, 0-based; `f_{i_1}` is applied last.
    pub indices: Vec<usize>,
}

impl FreeWord {
    pub fn empty(j_flag: bool) -> Self {
        Self {
            j_flag,
            indices: Vec::new(),
        }
    }

    pub fn new(j_flag: bool, indices: Vec<usize>) -> Self {
        Self { j_flag, indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j_flag {
            f.write_str("J")?;
        }
        if self.indices.is_empty() {
            return f.write_str("1");
        }
        let letters: Vec<String> = self.indices.iter().map(|i| format!("f{}", i + 1)).collect();
        f.write_str(&letters.join(""))
    }
}

pub type LinComb = BTreeMap<FreeWord, Rational>;

fn add_term(acc: &mut LinComb, w: FreeWord, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(w.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&w);
    }
}

fn sum_c(cm: &CartanMatrix, letters: &[usize], j: usize) -> i64 {
    letters.iter().map(|&i| cm.get(i, j)).sum()
}

/// `rho(tag_j)(word)`; raising a word of length `degree` is a
/// `TruncationOverflow`.
pub fn rho_apply(tag: GenTag, j: usize, word: &FreeWord, cm: &CartanMatrix, degree: usize) -> Result<LinComb> {
    if j >= cm.rank() || word.indices.iter().any(|&i| i >= cm.rank()) {
        return Err(Error::OutOfRange(format!("generator index {j} or word {word} outside rank {}", cm.rank())));
    }
    if word.len() > degree {
        return Err(Error::TruncationOverflow { length: word.len(), degree });
    }
    let (flag, sign) = if tag.is_j() {
        (!word.j_flag, if word.j_flag { -1 } else { 1 })
    } else {
        (word.j_flag, 1)
    };
    let mut out = LinComb::new();
    match tag.plain() {
        GenTag::F => {
            if word.len() == degree {
                return Err(Error::TruncationOverflow {
                    length: word.len() + 1,
                    degree,
                });
            }
            let mut indices = Vec::with_capacity(word.len() + 1);
            indices.push(j);
            indices.extend(&word.indices);
            add_term(&mut out, FreeWord::new(flag, indices), rat(sign));
        }
        GenTag::H => {
            let c = -sum_c(cm, &word.indices, j);
            add_term(&mut out, FreeWord::new(flag, word.indices.clone()), rat(sign * c));
        }
        _ => {
            let t = word.len();
            for k in 0..t {
                if word.indices[k] != j {
                    continue;
                }
                let c = -sum_c(cm, &word.indices[k + 1..], j);
                let mut rest = word.indices.clone();
                rest.remove(k);
                add_term(&mut out, FreeWord::new(flag, rest), rat(sign * c));
            }
        }
    }
    debug_assert!(out.keys().all(|w| {
        let expected = match tag.plain() {
            GenTag::F => word.len() + 1,
            GenTag::H => word.len(),
            _ => word.len() - 1,
        };
        w.len() == expected
    }));
    Ok(out)
}

/// rho of one generator as a sparse table over all words of length at most
/// the degree cap. Raising operators have no entries on words of maximal
/// length.
#[derive(Clone, Debug)]
pub struct RhoOperator {
    pub tag: GenTag,
    pub index: usize,
    pub degree: usize,
    action: BTreeMap<FreeWord, LinComb>,
}

/// Every word of length at most `max_len`, both flags.
pub fn words_up_to(l: usize, max_len: usize) -> Vec<FreeWord> {
    let mut out = Vec::new();
    for flag in [false, true] {
        let mut layer = vec![Vec::new()];
        for t in 0..=max_len {
            if t > 0 {
                layer = layer
                    .iter()
                    .flat_map(|w: &Vec<usize>| {
                        (0..l).map(move |i| {
                            let mut v = w.clone();
                            v.push(i);
                            v
                        })
                    })
                    .collect();
            }
            out.extend(layer.iter().map(|w| FreeWord::new(flag, w.clone())));
        }
    }
    out
}

impl RhoOperator {
    pub fn build(tag: GenTag, index: usize, cm: &CartanMatrix, degree: usize) -> Result<Self> {
        let mut action = BTreeMap::new();
        for w in words_up_to(cm.rank(), degree) {
            match rho_apply(tag, index, &w, cm, degree) {
                Ok(v) => {
                    action.insert(w, v);
                }
                Err(Error::TruncationOverflow { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Self {
            tag,
            index,
            degree,
            action,
        })
    }

    pub fn apply_word(&self, w: &FreeWord) -> Result<&LinComb> {
        self.action.get(w).ok_or(Error::TruncationOverflow {
            length: w.len() + 1,
            degree: self.degree,
        })
    }

    pub fn apply(&self, v: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::new();
        for (w, c) in v {
            for (w2, c2) in self.apply_word(w)? {
                add_term(&mut out, w2.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// Coefficients `lambda_w` with `rho(x) w = lambda_w w'` for the
    /// length-preserving operators, one per word in `words`.
    pub fn diagonal(&self, words: &[FreeWord]) -> Vec<Rational> {
        words
            .iter()
            .map(|w| {
                self.action
                    .get(w)
                    .and_then(|v| v.values().next().cloned())
                    .unwrap_or_else(Rational::zero)
            })
            .collect()
    }
}

fn sub(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), -c.clone());
    }
    out
}

fn scaled(a: &LinComb, s: i64) -> LinComb {
    a.iter()
        .filter(|_| s != 0)
        .map(|(w, c)| (w.clone(), c * rat(s)))
        .collect()
}

fn display(v: &LinComb) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .take(4)
        .map(|(w, c)| format!("{}*{w}", crate::scalars::format_rational(c)))
        .collect::<Vec<_>>()
        .join(" + ")
}

struct Operators {
    ops: BTreeMap<(GenTag, usize), RhoOperator>,
}

impl Operators {
    fn new(cm: &CartanMatrix, degree: usize) -> Result<Self> {
        let mut ops = BTreeMap::new();
        for tag in GenTag::ALL {
            for i in 0..cm.rank() {
                ops.insert((tag, i), RhoOperator::build(tag, i, cm, degree)?);
            }
        }
        Ok(Self { ops })
    }

    fn get(&self, tag: GenTag, i: usize) -> &RhoOperator {
        &self.ops[&(tag, i)]
    }
}

/// For every family `[X_i, Y_j] = rhs`, checks that
/// `rho(X_i) rho(Y_j) - rho(Y_j) rho(X_i) - rho(rhs)` kills every word of
/// length at most `degree - 1`.
pub fn verify_ideal_kernel(cm: &CartanMatrix, degree: usize) -> Result<Vec<RelationReport>> {
    if degree < 2 {
        return Err(Error::OutOfRange(format!("degree {degree} < 2")));
    }
    let ops = Operators::new(cm, degree)?;
    let words = words_up_to(cm.rank(), degree - 1);
    let l = cm.rank();
    let check_family = |f: &crate::relations::Family| -> Result<RelationReport> {
        let mut report = RelationReport {
            family: f.id.to_string(),
            formula: f.formula.to_string(),
            instances_checked: 0,
            failures: Vec::new(),
        };
        for i in 0..l {
            for j in 0..l {
                let x = ops.get(f.x, i);
                let y = ops.get(f.y, j);
                for w in &words {
                    report.instances_checked += 1;
                    let unit: LinComb = [(w.clone(), rat(1))].into_iter().collect();
                    let xy = x.apply(&y.apply(&unit)?)?;
                    let yx = y.apply(&x.apply(&unit)?)?;
                    let rhs = match f.rhs {
                        Rhs::Zero => LinComb::new(),
                        Rhs::Delta(t, s) if i == j => scaled(ops.get(t, i).apply_word(w)?, s),
                        Rhs::Delta(..) => LinComb::new(),
                        Rhs::Cartan(t, s) => scaled(ops.get(t, j).apply_word(w)?, s * cm.get(j, i)),
                    };
                    let defect = sub(&sub(&xy, &yx), &rhs);
                    if !defect.is_empty() {
                        report.failures.push(format!(
                            "[{},{}] - rhs on {w} = {}",
                            f.x.label(i),
                            f.y.label(j),
                            display(&defect)
                        ));
                    }
                }
            }
        }
        Ok(report)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        FAMILIES.par_iter().map(check_family).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        FAMILIES.iter().map(check_family).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub rank_h: usize,
    pub rank_jh: usize,
    pub expected: usize,
    pub words: usize,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.rank_h == self.expected && self.rank_jh == self.expected
    }
}

/// Rank of `{rho(h_i)}` and of `{rho(Jh_i)}` through their coefficient
/// vectors on all words of length at most `degree`.
pub fn verify_h_independence(cm: &CartanMatrix, degree: usize) -> Result<IndependenceReport> {
    if degree < 1 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let words = words_up_to(cm.rank(), degree);
    let rank = |tag: GenTag| -> Result<usize> {
        let mut span = SpanBasis::new(words.len());
        for i in 0..cm.rank() {
            let op = RhoOperator::build(tag, i, cm, degree)?;
            span.insert(&SparseVec::from_dense(&op.diagonal(&words)));
        }
        Ok(span.dim())
    };
    Ok(IndependenceReport {
        rank_h: rank(GenTag::H)?,
        rank_jh: rank(GenTag::JH)?,
        expected: cm.rank(),
        words: words.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{cartan_matrix, TypeLabel};

    fn a2() -> CartanMatrix {
        cartan_matrix(TypeLabel::A, 2).unwrap()
    }

    fn single(w: FreeWord, c: i64) -> LinComb {
        [(w, rat(c))].into_iter().collect()
    }

    #[test]
    fn documented_values() {
        let cm = a2();
        let w = FreeWord::new(false, vec![0, 1]);
        assert_eq!(rho_apply(GenTag::H, 0, &w, &cm, 4).unwrap(), single(w.clone(), -1));
        for i in 0..2 {
            for j in 0..2 {
                assert!(rho_apply(GenTag::E, j, &FreeWord::new(false, vec![i]), &cm, 4).unwrap().is_empty());
            }
        }
        let jf1 = FreeWord::new(true, vec![0]);
        assert_eq!(rho_apply(GenTag::JH, 0, &jf1, &cm, 4).unwrap(), single(FreeWord::new(false, vec![0]), 2));
    }

    #[test]
    fn j_flag_transitions() {
        let cm = a2();
        let w = FreeWord::new(false, vec![1]);
        let jw = FreeWord::new(true, vec![1]);
        assert_eq!(rho_apply(GenTag::F, 0, &jw, &cm, 4).unwrap(), single(FreeWord::new(true, vec![0, 1]), 1));
        assert_eq!(rho_apply(GenTag::JF, 0, &w, &cm, 4).unwrap(), single(FreeWord::new(true, vec![0, 1]), 1));
        assert_eq!(rho_apply(GenTag::JF, 0, &jw, &cm, 4).unwrap(), single(FreeWord::new(false, vec![0, 1]), -1));
        // e_2 f_2 f_1: only k = 1 contributes, coefficient -c_{1,2} = 1
        let w3 = FreeWord::new(true, vec![1, 0]);
        assert_eq!(rho_apply(GenTag::E, 1, &w3, &cm, 4).unwrap(), single(FreeWord::new(true, vec![0]), 1));
        assert_eq!(rho_apply(GenTag::JE, 1, &w3, &cm, 4).unwrap(), single(FreeWord::new(false, vec![0]), -1));
    }

    #[test]
    fn both_readings_of_the_jh_display_agree() {
        // rho(h_j)(J w) and rho(Jh_j)(w) share the right-hand side -(sum c) J w
        let cm = cartan_matrix(TypeLabel::B, 3).unwrap();
        for w in words_up_to(3, 3).into_iter().filter(|w| !w.j_flag) {
            let jw = FreeWord::new(true, w.indices.clone());
            for j in 0..3 {
                let a = rho_apply(GenTag::H, j, &jw, &cm, 3).unwrap();
                let b = rho_apply(GenTag::JH, j, &w, &cm, 3).unwrap();
                assert_eq!(a, b);
                let c = -sum_c(&cm, &w.indices, j);
                let want = if c == 0 { LinComb::new() } else { single(jw.clone(), c) };
                assert_eq!(a, want);
            }
        }
    }

    #[test]
    fn truncation_overflow_is_reported() {
        let cm = a2();
        let w = FreeWord::new(false, vec![0, 0]);
        assert!(matches!(rho_apply(GenTag::F, 0, &w, &cm, 2), Err(Error::TruncationOverflow { .. })));
        assert!(rho_apply(GenTag::E, 0, &w, &cm, 2).is_ok());
        let op = RhoOperator::build(GenTag::JF, 1, &cm, 2).unwrap();
        assert!(op.apply_word(&w).is_err());
    }

    #[test]
    fn empty_word() {
        let cm = a2();
        for tag in [GenTag::H, GenTag::E, GenTag::JH, GenTag::JE] {
            assert!(rho_apply(tag, 0, &FreeWord::empty(false), &cm, 2).unwrap().is_empty());
        }
    }

    #[test]
    fn length_grading_and_parity() {
        let cm = cartan_matrix(TypeLabel::C, 2).unwrap();
        for w in words_up_to(2, 2) {
            for tag in GenTag::ALL {
                for j in 0..2 {
                    let out = rho_apply(tag, j, &w, &cm, 3).unwrap();
                    let delta: i64 = match tag.plain() {
                        GenTag::F => 1,
                        GenTag::H => 0,
                        _ => -1,
                    };
                    for k in out.keys() {
                        assert_eq!(k.len() as i64, w.len() as i64 + delta);
                        assert_eq!(k.j_flag, w.j_flag ^ tag.is_j());
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_kernel_for_small_types() {
        for (t, l, d) in [(TypeLabel::A, 1, 3), (TypeLabel::A, 2, 4), (TypeLabel::B, 2, 4), (TypeLabel::C, 2, 4)] {
            let reports = verify_ideal_kernel(&cartan_matrix(t, l).unwrap(), d).unwrap();
            assert_eq!(reports.len(), 16);
            for r in &reports {
                assert!(r.passed(), "{t}{l} {}: {:?}", r.family, r.failures);
                assert!(r.instances_checked > 0);
            }
        }
        assert!(verify_ideal_kernel(&a2(), 1).is_err());
    }

    #[test]
    fn action_distinguishes_c_ij_from_c_ji() {
        let cm = cartan_matrix(TypeLabel::B, 2).unwrap();
        let ops = Operators::new(&cm, 3).unwrap();
        let w = FreeWord::new(false, vec![1]);
        let unit = single(w.clone(), 1);
        let h0 = ops.get(GenTag::H, 0);
        let f1 = ops.get(GenTag::F, 1);
        let lhs = sub(&h0.apply(&f1.apply(&unit).unwrap()).unwrap(), &f1.apply(&h0.apply(&unit).unwrap()).unwrap());
        // [h_1, f_2] = -c_21 f_2, and c_21 != c_12 for B2
        let right = scaled(f1.apply_word(&w).unwrap(), -cm.get(1, 0));
        let wrong = scaled(f1.apply_word(&w).unwrap(), -cm.get(0, 1));
        assert_eq!(lhs, right);
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn h_independence() {
        let r = verify_h_independence(&a2(), 2).unwrap();
        assert_eq!((r.rank_h, r.rank_jh), (2, 2));
        assert!(r.passed());
        let r = verify_h_independence(&cartan_matrix(TypeLabel::A, 1).unwrap(), 1).unwrap();
        assert_eq!((r.rank_h, r.rank_jh), (1, 1));
        let singular = CartanMatrix::from_rows(vec![vec![2, -1], vec![-4, 2]]).unwrap();
        let r = verify_h_independence(&singular, 4).unwrap();
        assert_eq!((r.rank_h, r.rank_jh), (1, 1));
        assert!(!r.passed());
    }
}
