//! The bracket on gl(n,H), bracket closure of a set of matrices, and
//! structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{check_dims, mj_embed, mj_extract, QuatMatrix};
use crate::scalars::Rational;
use crate::span::{combine, SpanBasis, SparseVec};

/// `[X1 + J Y1, X2 + J Y2]` evaluated blockwise:
///
/// ```text
/// (X1 X2 - X2 X1 - conj(Y1) Y2 + conj(Y2) Y1)
///   + J (Y1 X2 - Y2 X1 + conj(X1) Y2 - conj(X2) Y1)
/// ```
pub fn bracket(x: &QuatMatrix, y: &QuatMatrix) -> Result<QuatMatrix> {
    check_dims(x, y)?;
    let (x1, y1) = x.blocks();
    let (x2, y2) = y.blocks();
    let complex_part = &(&(&(&x1 * &x2) - &(&x2 * &x1)) - &(&y1.conj() * &y2)) + &(&y2.conj() * &y1);
    let j_part = &(&(&(&y1 * &x2) - &(&y2 * &x1)) + &(&x1.conj() * &y2)) - &(&x2.conj() * &y1);
    Ok(QuatMatrix::from_blocks(&complex_part, &j_part))
}

/// The same bracket as the commutator of the complex images.
pub fn bracket_via_mj(x: &QuatMatrix, y: &QuatMatrix) -> Result<QuatMatrix> {
    check_dims(x, y)?;
    let (zx, zy) = (mj_embed(x), mj_embed(y));
    let xy = &zx * &zy;
    let yx = &zy * &zx;
    Ok(mj_extract(&crate::linalg::MJMatrix {
        block_a: &xy.block_a - &yx.block_a,
        block_b: &xy.block_b - &yx.block_b,
    }))
}

/// Commutator `x y - y x` in the associative algebra gl(n,H). This is the
/// fast path used by the closure engine; it skips zero entries.
pub fn commutator(x: &QuatMatrix, y: &QuatMatrix) -> QuatMatrix {
    &(x * y) - &(y * x)
}

/// Sparse table `[x_i, x_j] = sum_k c_ij^k x_k`, stored for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StructureConstants {
    dim: usize,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl StructureConstants {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[x_i, x_j]` for `i < j`. Zero brackets are not stored.
    pub fn set(&mut self, i: usize, j: usize, value: SparseVec) {
        assert!(i < j && j < self.dim, "structure constant index ({i}, {j})");
        if value.is_zero() {
            self.table.remove(&(i, j));
        } else {
            self.table.insert((i, j), value);
        }
    }

    /// `[x_i, x_j]` in coordinates, for any `i, j`.
    pub fn get(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::new(),
            Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self.table.get(&(j, i)).map(SparseVec::neg).unwrap_or_default(),
        }
    }

    /// Nonzero entries `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.table
            .iter()
            .flat_map(|((i, j), v)| v.entries().iter().map(move |(k, c)| (*i, *j, *k, c)))
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>) -> Self {
        let mut grouped: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            grouped.entry((i, j)).or_default().push((k, c));
        }
        let mut out = Self::new(dim);
        for ((i, j), pairs) in grouped {
            out.set(i, j, SparseVec::from_pairs(pairs));
        }
        out
    }

    /// Bracket of two elements given in coordinates.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = vec![Rational::zero(); self.dim];
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                if i == j {
                    continue;
                }
                let (lo, hi, sign) = if i < j { (*i, *j, 1) } else { (*j, *i, -1) };
                if let Some(v) = self.table.get(&(lo, hi)) {
                    let s = if sign > 0 { a * b } else { -(a * b) };
                    for (k, c) in v.entries() {
                        acc[*k] += &s * c;
                    }
                }
            }
        }
        SparseVec::from_dense(&acc)
    }

    /// Mutable access for tests that corrupt a table on purpose.
    pub fn raw_mut(&mut self) -> &mut BTreeMap<(usize, usize), SparseVec> {
        &mut self.table
    }
}

/// Jacobi sum of basis elements `i, j, k`.
fn jacobi_sum(sc: &StructureConstants, i: usize, j: usize, k: usize) -> SparseVec {
    let e = |m: usize| SparseVec::unit(m);
    let a = sc.bracket(&e(i), &sc.get(j, k));
    let b = sc.bracket(&e(j), &sc.get(k, i));
    let c = sc.bracket(&e(k), &sc.get(i, j));
    a.add(&b).add(&c)
}

/// Outcome of a Jacobi identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub exhaustive: bool,
    pub triples_checked: usize,
    pub failures: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const JACOBI_EXHAUSTIVE_MAX_DIM: usize = 40;
pub const JACOBI_SAMPLES: usize = 600;

/// Exhaustive over `i < j < k` up to dimension 40, otherwise a fixed-seed
/// sample of distinct triples. Triples with a repeated index vanish by
/// antisymmetry, which the table encodes.
pub fn jacobi_report(sc: &StructureConstants) -> JacobiReport {
    let d = sc.dim();
    let mut triples = Vec::new();
    let exhaustive = d <= JACOBI_EXHAUSTIVE_MAX_DIM;
    if exhaustive {
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    triples.push((i, j, k));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9ac0b1);
        while triples.len() < JACOBI_SAMPLES {
            let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
            if i != j && j != k && i != k {
                triples.push((i, j, k));
            }
        }
    }
    let failures = triples
        .iter()
        .copied()
        .filter(|&(i, j, k)| !jacobi_sum(sc, i, j, k).is_zero())
        .collect();
    JacobiReport {
        exhaustive,
        triples_checked: triples.len(),
        failures,
    }
}

pub fn jacobi_check(sc: &StructureConstants) -> bool {
    jacobi_report(sc).passed()
}

/// Result of a bracket closure.
#[derive(Clone, Debug)]
pub struct Closure {
    pub n: usize,
    pub span: SpanBasis,
    /// The echelon rows as matrices; `constants` refers to this basis.
    pub basis: Vec<QuatMatrix>,
    pub constants: StructureConstants,
}

impl Closure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, m: &QuatMatrix) -> bool {
        self.span.contains(&m.to_sparse())
    }
}

fn brackets_with(x: &QuatMatrix, members: &[QuatMatrix]) -> Vec<QuatMatrix> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        members.par_iter().map(|m| commutator(x, m)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        members.iter().map(|m| commutator(x, m)).collect()
    }
}

/// Smallest real subspace of gl(n,H) containing `generators` and closed
/// under the bracket, with its echelon basis and structure constants.
///
/// Worklist algorithm: each newly accepted element is bracketed with every
/// accepted element; brackets are evaluated in parallel, insertion into the
/// echelon basis is serial.
pub fn closure(generators: &[QuatMatrix]) -> Closure {
    let n = generators.first().map(QuatMatrix::n).unwrap_or(1);
    let span = closure_span(n, generators);
    let basis: Vec<QuatMatrix> = span.rows().iter().map(|r| QuatMatrix::from_sparse(n, r)).collect();
    let constants = echelon_constants(&span, &basis);
    Closure {
        n,
        span,
        basis,
        constants,
    }
}

/// The closed span only, without structure constants.
pub fn closure_span(n: usize, generators: &[QuatMatrix]) -> SpanBasis {
    let mut span = SpanBasis::new(4 * n * n);
    let mut members: Vec<QuatMatrix> = Vec::new();
    for g in generators {
        assert_eq!(g.n(), n, "closure generators of mixed size");
        if span.insert(&g.to_sparse()) {
            members.push(g.clone());
        }
    }
    let mut next = 0;
    while next < members.len() {
        let x = members[next].clone();
        next += 1;
        // members[..] grows while we iterate; only brackets with elements
        // already accepted are needed here, later ones pair with x when
        // they are processed.
        let candidates = brackets_with(&x, &members[..]);
        for c in candidates {
            if !c.is_zero() && span.insert(&c.to_sparse()) {
                members.push(c);
            }
        }
    }
    span
}

/// Structure constants in an echelon basis: coordinates are the values at
/// the pivot columns.
fn echelon_constants(span: &SpanBasis, basis: &[QuatMatrix]) -> StructureConstants {
    let d = basis.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let compute = |&(i, j): &(usize, usize)| {
        let b = commutator(&basis[i], &basis[j]).to_sparse();
        let coords = span
            .coordinates(&b)
            .expect("closure is bracket-closed by construction");
        (i, j, coords)
    };
    #[cfg(feature = "parallel")]
    let values: Vec<(usize, usize, SparseVec)> = {
        use rayon::prelude::*;
        pairs.par_iter().map(compute).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<(usize, usize, SparseVec)> = pairs.iter().map(compute).collect();
    let mut sc = StructureConstants::new(d);
    for (i, j, v) in values {
        sc.set(i, j, v);
    }
    sc
}

/// One failed equivariance instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceFailure {
    pub i: usize,
    pub j: usize,
    pub map: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub pairs_checked: usize,
    pub span_sigma_invariant: bool,
    pub span_tau_invariant: bool,
    pub failures: Vec<EquivarianceFailure>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.span_sigma_invariant && self.span_tau_invariant && self.failures.is_empty()
    }
}

/// Checks that the span is stable under sigma and tau and that both are
/// bracket homomorphisms on every basis pair.
pub fn check_conjugation_equivariance(basis: &[QuatMatrix]) -> EquivarianceReport {
    let Some(n) = basis.first().map(QuatMatrix::n) else {
        return EquivarianceReport {
            pairs_checked: 0,
            span_sigma_invariant: true,
            span_tau_invariant: true,
            failures: Vec::new(),
        };
    };
    let span = SpanBasis::from_vectors(4 * n * n, basis.iter().map(QuatMatrix::to_sparse).collect::<Vec<_>>().iter());
    let span_sigma_invariant = basis.iter().all(|b| span.contains(&b.sigma().to_sparse()));
    let span_tau_invariant = basis.iter().all(|b| span.contains(&b.tau().to_sparse()));
    let sig: Vec<QuatMatrix> = basis.iter().map(QuatMatrix::sigma).collect();
    let tau: Vec<QuatMatrix> = basis.iter().map(QuatMatrix::tau).collect();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs_checked += 1;
            let b = commutator(&basis[i], &basis[j]);
            if b.sigma() != commutator(&sig[i], &sig[j]) {
                failures.push(EquivarianceFailure { i, j, map: "sigma" });
            }
            if b.tau() != commutator(&tau[i], &tau[j]) {
                failures.push(EquivarianceFailure { i, j, map: "tau" });
            }
        }
    }
    EquivarianceReport {
        pairs_checked,
        span_sigma_invariant,
        span_tau_invariant,
        failures,
    }
}

/// Coordinates of a linear combination of basis matrices.
pub fn combination(basis: &[QuatMatrix], coeffs: &SparseVec) -> QuatMatrix {
    let n = basis[0].n();
    let vs: Vec<SparseVec> = basis.iter().map(QuatMatrix::to_sparse).collect();
    let terms: Vec<(Rational, &SparseVec)> = coeffs.entries().iter().map(|(k, c)| (c.clone(), &vs[*k])).collect();
    QuatMatrix::from_sparse(n, &combine(&terms, 4 * n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::testing::random_matrix;
    use crate::scalars::testing::random_quaternion;
    use crate::scalars::Quaternion;
    use rand::seq::SliceRandom;

    fn sl_c_plus_j(n: usize) -> Vec<QuatMatrix> {
        let mut gens = Vec::new();
        let mut push = |m: QuatMatrix| {
            gens.push(m.left_scale(&Quaternion::i()));
            gens.push(m.apply_j());
            gens.push(m.left_scale(&Quaternion::i()).apply_j());
            gens.push(m);
        };
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    push(QuatMatrix::e(n, p, q));
                }
            }
        }
        for p in 0..n - 1 {
            push(&QuatMatrix::e(n, p, p) - &QuatMatrix::e(n, p + 1, p + 1));
        }
        gens
    }

    fn gl_basis(n: usize) -> Vec<QuatMatrix> {
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for u in Quaternion::coordinate_units() {
                    out.push(QuatMatrix::unit(n, p, q, u));
                }
            }
        }
        out
    }

    #[test]
    fn bracket_examples() {
        let e12 = QuatMatrix::e(2, 0, 1);
        let e21 = QuatMatrix::e(2, 1, 0);
        let h1 = &QuatMatrix::e(2, 0, 0) - &QuatMatrix::e(2, 1, 1);
        assert_eq!(bracket(&e12, &e21).unwrap(), h1);
        assert_eq!(bracket(&e12.apply_j(), &e21.apply_j()).unwrap(), -&h1);
        assert!(bracket(&e12, &QuatMatrix::e(3, 0, 1)).is_err());
    }

    #[test]
    fn bracket_on_elementary_tensors() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 3;
        for _ in 0..20 {
            let z1 = random_quaternion(&mut rng);
            let z2 = random_quaternion(&mut rng);
            let (i, j, k, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let lhs = bracket(&QuatMatrix::unit(n, i, j, z1.clone()), &QuatMatrix::unit(n, k, l, z2.clone())).unwrap();
            let mut rhs = QuatMatrix::zero(n);
            if j == k {
                rhs = &rhs + &QuatMatrix::unit(n, i, l, &z1 * &z2);
            }
            if i == l {
                rhs = &rhs - &QuatMatrix::unit(n, k, j, &z2 * &z1);
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn three_bracket_paths_agree_and_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let x = random_matrix(&mut rng, 3);
            let y = random_matrix(&mut rng, 3);
            let b = bracket(&x, &y).unwrap();
            assert_eq!(b, bracket_via_mj(&x, &y).unwrap());
            assert_eq!(b, commutator(&x, &y));
            assert!((&b + &bracket(&y, &x).unwrap()).is_zero());
        }
    }

    #[test]
    fn closure_of_sl2c_plus_j_is_sl2h() {
        let c = closure(&sl_c_plus_j(2));
        assert_eq!(c.dim(), 15);
        assert!(c.basis.iter().all(|b| b.real_trace().is_zero()));
        assert!(jacobi_check(&c.constants));
    }

    #[test]
    fn closure_of_sl3c_plus_j_is_sl3h() {
        let c = closure(&sl_c_plus_j(3));
        assert_eq!(c.dim(), 35);
        assert!(c.basis.iter().all(|b| b.real_trace().is_zero()));
    }

    #[test]
    fn closure_of_single_element_is_abelian() {
        let h1 = &QuatMatrix::e(2, 0, 0) - &QuatMatrix::e(2, 1, 1);
        let c = closure(&[h1]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.constants.entries().count(), 0);
    }

    #[test]
    fn closure_is_idempotent_and_order_independent() {
        let gens = sl_c_plus_j(2);
        let c = closure(&gens);
        let again = closure(&c.basis);
        assert!(again.span.same_span(&c.span));
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            let s = closure(&shuffled);
            assert_eq!(s.dim(), c.dim());
            assert!(s.span.same_span(&c.span));
        }
    }

    #[test]
    fn degenerate_generators_are_reduced() {
        let e = QuatMatrix::e(2, 0, 1);
        let c = closure(&[e.clone(), e.clone(), QuatMatrix::zero(2), e.scale(&crate::scalars::rat(3))]);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn conjugation_equivariance_on_gl2h() {
        let report = check_conjugation_equivariance(&gl_basis(2));
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 16 * 15 / 2);
    }

    #[test]
    fn span_of_one_plus_j_is_not_sigma_invariant() {
        let x = QuatMatrix::unit(2, 0, 0, &<Quaternion as num_traits::One>::one() + &Quaternion::j());
        let report = check_conjugation_equivariance(&[x]);
        assert!(!report.span_sigma_invariant);
        assert!(report.span_tau_invariant);
        assert!(!report.passed());
    }

    #[test]
    fn jacobi_detects_sign_flip() {
        let c = closure(&sl_c_plus_j(2));
        assert!(jacobi_check(&c.constants));
        let mut bad = c.constants.clone();
        let key = *bad.raw_mut().keys().next().unwrap();
        let v = bad.raw_mut().get(&key).unwrap().clone();
        let (k, x) = v.entries()[0].clone();
        let flipped = v.add_scaled(&(x * crate::scalars::rat(-2)), &SparseVec::unit(k));
        bad.raw_mut().insert(key, flipped);
        assert!(!jacobi_check(&bad));
    }

    #[test]
    fn jacobi_on_gl2h() {
        let c = closure(&gl_basis(2));
        assert_eq!(c.dim(), 16);
        let r = jacobi_report(&c.constants);
        assert!(r.exhaustive && r.passed());
        assert_eq!(r.triples_checked, 16 * 15 * 14 / 6);
    }

    #[test]
    fn structure_constants_reproduce_matrix_brackets() {
        let c = closure(&sl_c_plus_j(2));
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                let via_table = combination(&c.basis, &c.constants.get(i, j));
                assert_eq!(via_table, commutator(&c.basis[i], &c.basis[j]));
            }
        }
    }
}
