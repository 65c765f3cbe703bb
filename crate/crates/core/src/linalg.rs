//! Matrices over H and their complex images.
//!
//! An `n x n` quaternion matrix `X = A + J B` (with `A`, `B` complex) maps to
//! the `2n x 2n` complex matrix `[[A, -conj(B)], [B, conj(A)]]`; the image
//! is exactly the set of `Z` with `J Z = conj(Z) J`.
//!
//! Real coordinates of a quaternion matrix are laid out row-major over the
//! entries, four per entry: `re z1, im z1, re z2, im z2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Quaternion, Rational};
use crate::span::{SpanBasis, SparseVec};

/// Dense complex matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::from_ints(1, 0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.data[r * rhs.cols + c] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

/// Square matrix over H.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Quaternion::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Quaternion::from_int(1));
        }
        m
    }

    /// `q E_pq` (0-based indices).
    pub fn unit(n: usize, p: usize, q: usize, coeff: Quaternion) -> Self {
        let mut m = Self::zero(n);
        m.set(p, q, coeff);
        m
    }

    /// `E_pq` with real coefficient 1.
    pub fn e(n: usize, p: usize, q: usize) -> Self {
        Self::unit(n, p, q, Quaternion::from_int(1))
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedInput("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// `A + J B`.
    pub fn from_blocks(a: &CMatrix, b: &CMatrix) -> Self {
        let n = a.rows();
        assert!(a.cols() == n && b.rows() == n && b.cols() == n);
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(Quaternion::new(a.get(r, c).clone(), b.get(r, c).clone()));
            }
        }
        Self { n, entries }
    }

    /// `(A, B)` with `self = A + J B`.
    pub fn blocks(&self) -> (CMatrix, CMatrix) {
        let n = self.n;
        (
            CMatrix::from_fn(n, n, |r, c| self.get(r, c).z1.clone()),
            CMatrix::from_fn(n, n, |r, c| self.get(r, c).z2.clone()),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Quaternion {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.entries[r * self.n + c] = q;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Quaternion]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn map(&self, f: impl Fn(&Quaternion) -> Quaternion) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise `q x` (left multiplication by a quaternion scalar).
    pub fn left_scale(&self, q: &Quaternion) -> Self {
        self.map(|x| q * x)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn sigma(&self) -> Self {
        self.map(Quaternion::sigma)
    }

    pub fn tau(&self) -> Self {
        self.map(Quaternion::tau)
    }

    /// Left multiplication by `j`: `A + J B -> -B + J A`.
    pub fn apply_j(&self) -> Self {
        self.map(Quaternion::apply_j)
    }

    /// Quaternionic conjugate transpose `X*`.
    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    /// Transpose taken in the complex image: `A + J B -> A^t - J B^*`, so
    /// that `mj_embed` of the result is the plain transpose of `mj_embed`.
    pub fn transpose_mj(&self) -> Self {
        let (a, b) = self.blocks();
        Self::from_blocks(&a.transpose(), &-&b.adjoint())
    }

    pub fn trace(&self) -> Quaternion {
        let mut t = Quaternion::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn real_trace(&self) -> Rational {
        self.trace().z1.re
    }

    /// All entries have `z2 = 0`.
    pub fn is_complex(&self) -> bool {
        self.entries.iter().all(Quaternion::is_complex)
    }

    /// All entries have `z1 = 0`.
    pub fn is_j_part(&self) -> bool {
        self.entries.iter().all(|q| q.z1.is_zero())
    }

    /// Real coordinate vector of length `4 n^2`.
    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.iter().flat_map(Quaternion::coords).collect()
    }

    pub fn unflatten(n: usize, coords: &[Rational]) -> Result<Self> {
        if coords.len() != 4 * n * n {
            return Err(Error::DimensionMismatch {
                expected: 4 * n * n,
                got: coords.len(),
            });
        }
        let entries = coords
            .chunks(4)
            .map(|c| Quaternion::from_coords([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
            .collect();
        Ok(Self { n, entries })
    }

    pub fn to_sparse(&self) -> SparseVec {
        let mut pairs = Vec::new();
        for (e, q) in self.entries.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (k, c) in q.coords().into_iter().enumerate() {
                if !c.is_zero() {
                    pairs.push((4 * e + k, c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn from_sparse(n: usize, v: &SparseVec) -> Self {
        let mut m = Self::zero(n);
        for (c, x) in v.entries() {
            let e = &mut m.entries[c / 4];
            match c % 4 {
                0 => e.z1.re = x.clone(),
                1 => e.z1.im = x.clone(),
                2 => e.z2.re = x.clone(),
                _ => e.z2.im = x.clone(),
            }
        }
        m
    }

    pub fn try_mul(&self, rhs: &QuatMatrix) -> Result<QuatMatrix> {
        check_dims(self, rhs)?;
        let n = self.n;
        let mut out = QuatMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * n + c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_dims(x: &QuatMatrix, y: &QuatMatrix) -> Result<()> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch {
            expected: x.n,
            got: y.n,
        });
    }
    Ok(())
}

impl fmt::Display for QuatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in 0..self.n {
            for c in 0..self.n {
                let q = self.get(r, c);
                if q.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({q})E{}{}", r + 1, c + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a QuatMatrix> for &'a QuatMatrix {
    type Output = QuatMatrix;
    fn mul(self, rhs: &QuatMatrix) -> QuatMatrix {
        self.try_mul(rhs).expect("quaternion matrix product shape")
    }
}

impl<'a> Add<&'a QuatMatrix> for &'a QuatMatrix {
    type Output = QuatMatrix;
    fn add(self, rhs: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, rhs.n);
        QuatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a QuatMatrix> for &'a QuatMatrix {
    type Output = QuatMatrix;
    fn sub(self, rhs: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.n, rhs.n);
        QuatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QuatMatrix {
    type Output = QuatMatrix;
    fn neg(self) -> QuatMatrix {
        self.map(|q| -q)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }
}

/// A `2n x 2n` complex matrix of the form `[[A, -conj(B)], [B, conj(A)]]`,
/// stored through its two blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MJMatrix {
    pub block_a: CMatrix,
    pub block_b: CMatrix,
}

impl MJMatrix {
    pub fn n(&self) -> usize {
        self.block_a.rows()
    }

    /// The full `2n x 2n` complex matrix.
    pub fn to_complex(&self) -> CMatrix {
        let n = self.n();
        CMatrix::from_fn(2 * n, 2 * n, |r, c| match (r < n, c < n) {
            (true, true) => self.block_a.get(r, c).clone(),
            (true, false) => -&self.block_b.get(r, c - n).conj(),
            (false, true) => self.block_b.get(r - n, c).clone(),
            (false, false) => self.block_a.get(r - n, c - n).conj(),
        })
    }

    /// Recovers the blocks from a full complex matrix, rejecting matrices
    /// that are not of MJ form.
    pub fn from_complex(z: &CMatrix) -> Result<Self> {
        if z.rows() != z.cols() || !z.rows().is_multiple_of(2) {
            return Err(Error::MalformedInput(format!(
                "expected an even square matrix, got {}x{}",
                z.rows(),
                z.cols()
            )));
        }
        let n = z.rows() / 2;
        let a = CMatrix::from_fn(n, n, |r, c| z.get(r, c).clone());
        let b = CMatrix::from_fn(n, n, |r, c| z.get(n + r, c).clone());
        let me = Self {
            block_a: a,
            block_b: b,
        };
        if me.to_complex() != *z {
            return Err(Error::MalformedInput("matrix does not satisfy JZ = conj(Z)J".into()));
        }
        Ok(me)
    }

    /// Interleaved `MJ(2,C) (x) gl(n,C)` layout: the 2x2 block for entry
    /// `(i, j)` sits at rows `2i, 2i+1` and columns `2j, 2j+1`.
    pub fn to_interleaved(&self) -> CMatrix {
        let n = self.n();
        CMatrix::from_fn(2 * n, 2 * n, |r, c| {
            let (i, j) = (r / 2, c / 2);
            let a = self.block_a.get(i, j);
            let b = self.block_b.get(i, j);
            match (r % 2, c % 2) {
                (0, 0) => a.clone(),
                (1, 0) => b.clone(),
                (0, _) => -&b.conj(),
                _ => a.conj(),
            }
        })
    }
}

impl<'a> Mul<&'a MJMatrix> for &'a MJMatrix {
    type Output = MJMatrix;
    fn mul(self, rhs: &MJMatrix) -> MJMatrix {
        // [[A,-B'],[B,A']] [[C,-D'],[D,C']]: first column block only.
        let (a, b) = (&self.block_a, &self.block_b);
        let (c, d) = (&rhs.block_a, &rhs.block_b);
        MJMatrix {
            block_a: &(a * c) - &(&b.conj() * d),
            block_b: &(b * c) + &(&a.conj() * d),
        }
    }
}

pub fn mj_embed(m: &QuatMatrix) -> MJMatrix {
    let (block_a, block_b) = m.blocks();
    MJMatrix { block_a, block_b }
}

pub fn mj_extract(z: &MJMatrix) -> QuatMatrix {
    QuatMatrix::from_blocks(&z.block_a, &z.block_b)
}

/// Re-indexes an interleaved `MJ(2,C) (x) gl(n,C)` matrix into block form.
pub fn coordinate_change(interleaved: &CMatrix) -> Result<MJMatrix> {
    let m = interleaved;
    if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
        return Err(Error::MalformedInput(format!(
            "expected an even square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows() / 2;
    let z = MJMatrix {
        block_a: CMatrix::from_fn(n, n, |i, j| m.get(2 * i, 2 * j).clone()),
        block_b: CMatrix::from_fn(n, n, |i, j| m.get(2 * i + 1, 2 * j).clone()),
    };
    if z.to_interleaved() != *m {
        return Err(Error::MalformedInput(
            "2x2 blocks are not of the form [[a, -conj(b)], [b, conj(a)]]".into(),
        ));
    }
    Ok(z)
}

pub fn apply_sigma(m: &QuatMatrix) -> QuatMatrix {
    m.sigma()
}

pub fn apply_tau(m: &QuatMatrix) -> QuatMatrix {
    m.tau()
}

#[allow(non_snake_case)]
pub fn apply_J(m: &QuatMatrix) -> QuatMatrix {
    m.apply_j()
}

pub fn quat_transpose_mj(m: &QuatMatrix) -> QuatMatrix {
    m.transpose_mj()
}

fn independent_span(basis: &[QuatMatrix]) -> Result<SpanBasis> {
    let n = basis
        .first()
        .map(QuatMatrix::n)
        .ok_or_else(|| Error::DegenerateInput("empty basis".into()))?;
    let mut span = SpanBasis::new(4 * n * n);
    for (k, b) in basis.iter().enumerate() {
        check_dims(&basis[0], b)?;
        if !span.insert(&b.to_sparse()) {
            return Err(Error::DegenerateInput(format!(
                "basis element {k} is a real combination of the previous ones"
            )));
        }
    }
    Ok(span)
}

/// Whether the real span of `basis` is invariant under `J`.
#[allow(non_snake_case)]
pub fn is_J_submodule(basis: &[QuatMatrix]) -> Result<bool> {
    let span = independent_span(basis)?;
    Ok(basis.iter().all(|b| span.contains(&b.apply_j().to_sparse())))
}

/// Whether the real span of `basis` is invariant under both `sigma` and `tau`.
pub fn is_sigma_submodule(basis: &[QuatMatrix]) -> Result<bool> {
    let span = independent_span(basis)?;
    Ok(basis
        .iter()
        .all(|b| span.contains(&b.sigma().to_sparse()) && span.contains(&b.tau().to_sparse())))
}


#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::scalars::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn embed_of_j_and_i() {
        let j = QuatMatrix::unit(1, 0, 0, Quaternion::j());
        let z = mj_embed(&j).to_complex();
        assert_eq!(z, CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => g(-1, 0),
            (1, 0) => g(1, 0),
            _ => g(0, 0),
        }));
        let i = QuatMatrix::unit(1, 0, 0, Quaternion::i());
        let z = mj_embed(&i).to_complex();
        assert_eq!(z, CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => g(0, 1),
            (1, 1) => g(0, -1),
            _ => g(0, 0),
        }));
    }

    #[test]
    fn embed_is_multiplicative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = random_matrix(&mut rng, 3);
            let y = random_matrix(&mut rng, 3);
            let lhs = mj_embed(&(&x * &y));
            assert_eq!(lhs, &mj_embed(&x) * &mj_embed(&y));
            assert_eq!(lhs.to_complex(), &mj_embed(&x).to_complex() * &mj_embed(&y).to_complex());
            assert_eq!(mj_extract(&mj_embed(&x)), x);
            assert_eq!(mj_embed(&(&x + &y)), MJMatrix {
                block_a: &mj_embed(&x).block_a + &mj_embed(&y).block_a,
                block_b: &mj_embed(&x).block_b + &mj_embed(&y).block_b,
            });
        }
        assert_eq!(mj_embed(&QuatMatrix::identity(3)).to_complex(), CMatrix::identity(6));
    }

    #[test]
    fn from_complex_rejects_non_mj() {
        let mut z = CMatrix::identity(4);
        z.set(0, 0, g(2, 0));
        assert!(matches!(MJMatrix::from_complex(&z), Err(Error::MalformedInput(_))));
        let ok = mj_embed(&QuatMatrix::e(2, 0, 1)).to_complex();
        assert!(MJMatrix::from_complex(&ok).is_ok());
    }

    #[test]
    fn coordinate_change_examples() {
        let id = coordinate_change(&CMatrix::identity(2)).unwrap();
        assert_eq!(id.to_complex(), CMatrix::identity(2));

        // a = E12, b = 0 for n = 2: interleaved entries (0,2) and (1,3).
        let mut inter = CMatrix::zeros(4, 4);
        inter.set(0, 2, g(1, 0));
        inter.set(1, 3, g(1, 0));
        let z = coordinate_change(&inter).unwrap().to_complex();
        let mut expected = CMatrix::zeros(4, 4);
        expected.set(0, 1, g(1, 0));
        expected.set(2, 3, g(1, 0));
        assert_eq!(z, expected);

        let mut bad = CMatrix::zeros(4, 4);
        bad.set(0, 2, g(1, 0));
        assert!(coordinate_change(&bad).is_err());
    }

    #[test]
    fn coordinate_change_respects_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = mj_embed(&random_matrix(&mut rng, 2));
            let y = mj_embed(&random_matrix(&mut rng, 2));
            let (ix, iy) = (x.to_interleaved(), y.to_interleaved());
            let via_interleaved = coordinate_change(&(&ix * &iy)).unwrap();
            assert_eq!(via_interleaved.to_complex(), &x.to_complex() * &y.to_complex());
        }
    }

    #[test]
    fn conjugation_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = random_cmatrix(&mut rng, 3);
            let b = random_cmatrix(&mut rng, 3);
            let m = QuatMatrix::from_blocks(&a, &b);
            assert_eq!(apply_sigma(&m), QuatMatrix::from_blocks(&a, &-&b));
            assert_eq!(apply_tau(&m), QuatMatrix::from_blocks(&a.conj(), &b.conj()));
            assert_eq!(apply_J(&apply_J(&m)), -&m);
            assert_eq!(apply_J(&m), QuatMatrix::from_blocks(&-&b, &a));
        }
    }

    #[test]
    fn operator_relations_on_gl3_basis() {
        let n = 3;
        for p in 0..n {
            for q in 0..n {
                for u in Quaternion::coordinate_units() {
                    let m = QuatMatrix::unit(n, p, q, u);
                    assert_eq!(m.sigma().tau(), m.tau().sigma());
                    assert_eq!(m.sigma().apply_j(), -&m.apply_j().sigma());
                }
            }
        }
    }

    #[test]
    fn transpose_mj_examples() {
        let j = QuatMatrix::unit(1, 0, 0, Quaternion::j());
        let t = quat_transpose_mj(&j);
        assert_eq!(t, QuatMatrix::unit(1, 0, 0, -Quaternion::j()));
        assert_eq!(mj_embed(&t).to_complex(), mj_embed(&j).to_complex().transpose());
        assert_eq!(quat_transpose_mj(&QuatMatrix::e(2, 0, 1)), QuatMatrix::e(2, 1, 0));

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 3);
            assert_eq!(quat_transpose_mj(&quat_transpose_mj(&m)), m);
            assert_eq!(mj_embed(&m.transpose_mj()).to_complex(), mj_embed(&m).to_complex().transpose());
        }
    }

    #[test]
    fn flatten_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_matrix(&mut rng, 3);
        assert_eq!(m.flatten().len(), 36);
        assert_eq!(QuatMatrix::unflatten(3, &m.flatten()).unwrap(), m);
        assert_eq!(QuatMatrix::from_sparse(3, &m.to_sparse()), m);
        // entry (0,1) starts at coordinate 4
        let e = QuatMatrix::unit(2, 0, 1, Quaternion::j());
        assert_eq!(e.flatten()[6], rat(1));
    }

    #[test]
    fn submodule_examples_in_h() {
        let one = |q: Quaternion| QuatMatrix::unit(1, 0, 0, q);
        let ji = Quaternion::coordinate_units()[3].clone();
        let i_set = [one(Quaternion::i()), one(Quaternion::j()), one(ji)];
        assert!(is_sigma_submodule(&i_set).unwrap());
        assert!(!is_J_submodule(&i_set).unwrap());

        let k_set = [one(&<Quaternion as num_traits::One>::one() + &Quaternion::j())];
        assert!(!is_sigma_submodule(&k_set).unwrap());

        let mut full = Vec::new();
        for p in 0..2 {
            for q in 0..2 {
                full.push(QuatMatrix::e(2, p, q));
                full.push(QuatMatrix::e(2, p, q).apply_j());
                full.push(QuatMatrix::unit(2, p, q, Quaternion::i()));
                full.push(QuatMatrix::unit(2, p, q, Quaternion::i()).apply_j());
            }
        }
        assert!(is_sigma_submodule(&full).unwrap());
        assert!(is_J_submodule(&full).unwrap());

        let dependent = [one(Quaternion::i()), one(Quaternion::i().scale(&rat(2)))];
        assert!(matches!(is_J_submodule(&dependent), Err(Error::DegenerateInput(_))));
    }

    proptest::proptest! {
        #[test]
        fn embed_is_additive_and_injective(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_matrix(&mut rng, 2);
            let y = random_matrix(&mut rng, 2);
            let sum = mj_embed(&(&x + &y)).to_complex();
            proptest::prop_assert_eq!(sum, &mj_embed(&x).to_complex() + &mj_embed(&y).to_complex());
            proptest::prop_assert_eq!(x == y, mj_embed(&x) == mj_embed(&y));
        }
    }
}
