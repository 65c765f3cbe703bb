//! Cartan matrices, positive roots by root-string closure, and weights.
//!
//! Index convention: `c[i][j] = alpha_i(h_j)`, so that `[h_i, e_j] = c[j][i] e_j`
//! holds in every realization. Simple roots are labelled as in Bourbaki
//! (B_l: `alpha_l` short, C_l: `alpha_l` long, D_l: `alpha_l` attached to
//! `alpha_{l-2}`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
}

impl TypeLabel {
    pub fn min_rank(self) -> usize {
        match self {
            TypeLabel::A => 1,
            TypeLabel::B | TypeLabel::C => 2,
            TypeLabel::D => 3,
        }
    }

    /// Size of the defining matrix realization.
    pub fn ambient_n(self, l: usize) -> usize {
        match self {
            TypeLabel::A => l + 1,
            TypeLabel::B => 2 * l + 1,
            TypeLabel::C | TypeLabel::D => 2 * l,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self, l: usize) -> usize {
        match self {
            TypeLabel::A => l * (l + 1) / 2,
            TypeLabel::B | TypeLabel::C => l * l,
            TypeLabel::D => l * (l - 1),
        }
    }

    pub fn check_rank(self, l: usize) -> Result<()> {
        if l < self.min_rank() {
            return Err(Error::InvalidType(format!(
                "{self}{l}: rank must be at least {}",
                self.min_rank()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TypeLabel::A),
            "B" | "b" => Ok(TypeLabel::B),
            "C" | "c" => Ok(TypeLabel::C),
            "D" | "d" => Ok(TypeLabel::D),
            other => Err(Error::InvalidType(format!("unknown type label {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    l: usize,
    c: Vec<Vec<i64>>,
    #[serde(default)]
    type_label: Option<TypeLabel>,
}

impl CartanMatrix {
    /// Accepts any generalized Cartan matrix: `c_ii = 2`, `c_ij <= 0` off the
    /// diagonal, `c_ij = 0` iff `c_ji = 0`. Finiteness is not checked here.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let l = rows.len();
        if l == 0 {
            return Err(Error::DegenerateInput("empty Cartan matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != l {
                return Err(Error::DimensionMismatch { expected: l, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 2 {
                    return Err(Error::MalformedInput(format!("c[{i}][{i}] = {v}, expected 2")));
                }
                if i != j && v > 0 {
                    return Err(Error::MalformedInput(format!("c[{i}][{j}] = {v} is positive")));
                }
                if i != j && (v == 0) != (rows[j][i] == 0) {
                    return Err(Error::MalformedInput(format!("c[{i}][{j}] and c[{j}][{i}] disagree on zero")));
                }
            }
        }
        Ok(Self { l, c: rows, type_label: None })
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn type_label(&self) -> Option<TypeLabel> {
        self.type_label
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        let n = self.l;
        let mut m: Vec<Vec<i128>> = self.c.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .c
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn cartan_matrix(t: TypeLabel, l: usize) -> Result<CartanMatrix> {
    t.check_rank(l)?;
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        c[i][i] = 2;
        if i + 1 < l {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    match t {
        TypeLabel::A => {}
        TypeLabel::B => {
            // alpha_l short: alpha_{l-1}(h_l) = -2, alpha_l(h_{l-1}) = -1
            c[l - 2][l - 1] = -2;
            c[l - 1][l - 2] = -1;
        }
        TypeLabel::C => {
            c[l - 2][l - 1] = -1;
            c[l - 1][l - 2] = -2;
        }
        TypeLabel::D => {
            c[l - 2][l - 1] = 0;
            c[l - 1][l - 2] = 0;
            c[l - 3][l - 1] = -1;
            c[l - 1][l - 3] = -1;
        }
    }
    Ok(CartanMatrix {
        l,
        c,
        type_label: Some(t),
    })
}

/// Coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn simple(l: usize, i: usize) -> Self {
        let mut coeffs = vec![0; l];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|k| -k).collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&k| k >= 0) && self.coeffs.iter().any(|&k| k > 0)
    }

    fn shifted(&self, i: usize, by: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[i] += by;
        Self { coeffs }
    }
}

/// `(lambda(h_1), ..., lambda(h_l))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    pub values: Vec<i64>,
}

impl Weight {
    pub fn zero(l: usize) -> Self {
        Self { values: vec![0; l] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn weight_of(root: &Root, cm: &CartanMatrix) -> Weight {
    let l = cm.rank();
    let values = (0..l)
        .map(|j| (0..l).map(|i| root.coeffs[i] * cm.get(i, j)).sum())
        .collect();
    Weight { values }
}

/// All positive roots, ordered by height and then with earlier simple roots
/// first. Errors with `NotFiniteType` once more than `10 l^2` roots appear.
pub fn positive_roots(cm: &CartanMatrix) -> Result<Vec<Root>> {
    let l = cm.rank();
    let cap = 10 * l * l;
    let mut known: BTreeSet<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
    let mut layer: Vec<Root> = known.iter().cloned().collect();
    let mut all = layer.clone();
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            let w = weight_of(beta, cm);
            for i in 0..l {
                // p: how far the alpha_i-string through beta extends downwards
                let mut p = 0;
                let mut down = beta.shifted(i, -1);
                while known.contains(&down) {
                    p += 1;
                    down = down.shifted(i, -1);
                }
                if p - w.values[i] > 0 {
                    let up = beta.shifted(i, 1);
                    if !known.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        for r in &next {
            known.insert(r.clone());
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::NotFiniteType(format!(
                "more than {cap} positive roots; Cartan matrix {cm} is not of finite type"
            )));
        }
        layer = next.into_iter().collect();
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
    Ok(all)
}

/// Nonzero weights `+-Phi^+`: positive roots in order, then their negatives.
pub fn root_weights(cm: &CartanMatrix) -> Result<Vec<(Root, Weight)>> {
    let pos = positive_roots(cm)?;
    let mut out: Vec<(Root, Weight)> = pos.iter().map(|r| (r.clone(), weight_of(r, cm))).collect();
    out.extend(pos.iter().map(|r| {
        let n = r.neg();
        let w = weight_of(&n, cm);
        (n, w)
    }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    /// Positive roots written in the orthonormal basis `eps_1..eps_m`, as
    /// listed in the usual tables.
    fn epsilon_roots(t: TypeLabel, l: usize) -> Vec<Vec<i64>> {
        let m = if t == TypeLabel::A { l + 1 } else { l };
        let e = |i: usize| {
            let mut v = vec![0i64; m];
            v[i] = 1;
            v
        };
        let add = |a: &Vec<i64>, b: &Vec<i64>, s: i64| a.iter().zip(b).map(|(x, y)| x + s * y).collect::<Vec<_>>();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                out.push(add(&e(i), &e(j), -1));
                if t != TypeLabel::A {
                    out.push(add(&e(i), &e(j), 1));
                }
            }
            match t {
                TypeLabel::B => out.push(e(i)),
                TypeLabel::C => out.push(add(&e(i), &e(i), 1)),
                _ => {}
            }
        }
        out
    }

    /// Simple-root coordinates of an epsilon-basis vector.
    fn to_simple(t: TypeLabel, l: usize, v: &[i64]) -> Vec<i64> {
        let partial: Vec<i64> = v.iter().scan(0, |s, x| {
            *s += x;
            Some(*s)
        }).collect();
        let mut k: Vec<i64> = partial[..l].to_vec();
        match t {
            TypeLabel::A | TypeLabel::B => {}
            TypeLabel::C => {
                assert_eq!(k[l - 1] % 2, 0);
                k[l - 1] /= 2;
            }
            TypeLabel::D => {
                let s = partial[l - 2];
                k[l - 1] = (s + v[l - 1]) / 2;
                k[l - 2] = (s - v[l - 1]) / 2;
            }
        }
        k
    }

    #[test]
    fn cartan_table_entries() {
        assert_eq!(cartan_matrix(TypeLabel::A, 2).unwrap().rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(TypeLabel::A, 1).unwrap().rows(), &[vec![2]]);
        assert_eq!(cartan_matrix(TypeLabel::B, 2).unwrap().rows(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(cartan_matrix(TypeLabel::C, 2).unwrap().rows(), &[vec![2, -1], vec![-2, 2]]);
        let d4 = cartan_matrix(TypeLabel::D, 4).unwrap();
        assert_eq!(d4.get(1, 3), -1);
        assert_eq!(d4.get(2, 3), 0);
        assert_eq!(d4.get(1, 2), -1);
    }

    #[test]
    fn invalid_ranks() {
        assert!(cartan_matrix(TypeLabel::A, 0).is_err());
        assert!(cartan_matrix(TypeLabel::B, 1).is_err());
        assert!(cartan_matrix(TypeLabel::D, 2).is_err());
        assert!(cartan_matrix(TypeLabel::C, 2).is_ok());
        assert!("Z".parse::<TypeLabel>().is_err());
    }

    #[test]
    fn from_rows_validation() {
        assert!(CartanMatrix::from_rows(vec![vec![2, 1], vec![-1, 2]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, 0], vec![-1, 2]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![3]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, -1]]).is_err());
        assert!(CartanMatrix::from_rows(vec![vec![2, -1], vec![-4, 2]]).is_ok());
    }

    #[test]
    fn determinants_of_finite_types() {
        for l in 1..6 {
            assert_eq!(cartan_matrix(TypeLabel::A, l).unwrap().determinant(), l as i64 + 1);
        }
        for l in 2..6 {
            assert_eq!(cartan_matrix(TypeLabel::B, l).unwrap().determinant(), 2);
            assert_eq!(cartan_matrix(TypeLabel::C, l).unwrap().determinant(), 2);
        }
        for l in 3..6 {
            assert_eq!(cartan_matrix(TypeLabel::D, l).unwrap().determinant(), 4);
        }
        let bad = CartanMatrix::from_rows(vec![vec![2, -1], vec![-4, 2]]).unwrap();
        assert_eq!(bad.determinant(), 0);
    }

    #[test]
    fn a2_roots_and_weights() {
        let cm = cartan_matrix(TypeLabel::A, 2).unwrap();
        let roots = positive_roots(&cm).unwrap();
        let coeffs: Vec<Vec<i64>> = roots.iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(weight_of(&roots[0], &cm).values, vec![2, -1]);
        assert_eq!(weight_of(&roots[0].neg(), &cm).values, vec![-2, 1]);
        assert_eq!(weight_of(&roots[2], &cm).values, vec![1, 1]);
        assert_eq!(positive_roots(&cartan_matrix(TypeLabel::A, 1).unwrap()).unwrap(), vec![Root::simple(1, 0)]);
    }

    #[test]
    fn positive_roots_match_epsilon_tables() {
        for t in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
            for l in t.min_rank()..=6 {
                let cm = cartan_matrix(t, l).unwrap();
                let got: Vec<Vec<i64>> = positive_roots(&cm).unwrap().into_iter().map(|r| r.coeffs).collect();
                let want: Vec<Vec<i64>> = epsilon_roots(t, l).iter().map(|v| to_simple(t, l, v)).collect();
                assert_eq!(got.len(), t.positive_root_count(l), "{t}{l}");
                assert_eq!(sorted(got), sorted(want), "{t}{l}");
            }
        }
    }

    #[test]
    fn weights_are_linear_on_roots() {
        for t in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
            let l = t.min_rank().max(3);
            let cm = cartan_matrix(t, l).unwrap();
            let roots = positive_roots(&cm).unwrap();
            let set: BTreeSet<&Root> = roots.iter().collect();
            for r in &roots {
                for s in &roots {
                    let sum = Root {
                        coeffs: r.coeffs.iter().zip(&s.coeffs).map(|(a, b)| a + b).collect(),
                    };
                    if set.contains(&sum) {
                        assert_eq!(weight_of(&sum, &cm), weight_of(r, &cm).add(&weight_of(s, &cm)));
                    }
                }
            }
        }
    }

    #[test]
    fn string_closure_holds() {
        let cm = cartan_matrix(TypeLabel::B, 3).unwrap();
        let roots = positive_roots(&cm).unwrap();
        let set: BTreeSet<Root> = roots.iter().cloned().collect();
        for beta in &roots {
            let w = weight_of(beta, &cm);
            for i in 0..3 {
                let mut p = 0;
                while set.contains(&beta.shifted(i, -(p + 1))) {
                    p += 1;
                }
                assert_eq!(p - w.values[i] > 0, set.contains(&beta.shifted(i, 1)));
            }
        }
    }

    #[test]
    fn non_finite_type_hits_the_guard() {
        let affine = CartanMatrix::from_rows(vec![vec![2, -1], vec![-4, 2]]).unwrap();
        assert!(matches!(positive_roots(&affine), Err(Error::NotFiniteType(_))));
        let hyperbolic = CartanMatrix::from_rows(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert!(matches!(positive_roots(&hyperbolic), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn root_weights_lists_both_signs() {
        let cm = cartan_matrix(TypeLabel::A, 2).unwrap();
        let rw = root_weights(&cm).unwrap();
        assert_eq!(rw.len(), 6);
        assert!(rw.iter().all(|(r, w)| weight_of(r, &cm) == *w));
        assert_eq!(rw[3].0, rw[0].0.neg());
    }
}
