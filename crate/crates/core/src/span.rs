//! Exact real subspaces of `Q^N` kept in reduced row echelon form.
//!
//! Vectors are sparse: sorted `(column, value)` pairs with no explicit
//! zeros. A [`SpanBasis`] stores its rows fully reduced (every pivot column
//! is zero in every other row) and sorted by pivot, so the stored basis of a
//! subspace is unique and membership is a single pass over the pivots.

use num_traits::{One, Zero};

use crate::scalars::Rational;

/// Sparse vector over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        Self {
            entries: vec![(col, Rational::one())],
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn get(&self, col: usize) -> Rational {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(c, v)| (*c, v * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(c, v)| (*c, -v)).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Rational, other: &SparseVec) -> Self {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, va)), Some((cb, vb))) => {
                    if ca < cb {
                        out.push((*ca, va.clone()));
                        a.next();
                    } else if cb < ca {
                        out.push((*cb, vb * s));
                        b.next();
                    } else {
                        let v = va + vb * s;
                        if !v.is_zero() {
                            out.push((*ca, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    a.next();
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, vb * s));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }

    /// Keeps the entries with column `< at` and shifts the rest down by `at`,
    /// returning `(head, tail)`.
    pub fn split_at(&self, at: usize) -> (SparseVec, SparseVec) {
        let idx = self.entries.partition_point(|(c, _)| *c < at);
        let head = Self {
            entries: self.entries[..idx].to_vec(),
        };
        let tail = Self {
            entries: self.entries[idx..]
                .iter()
                .map(|(c, v)| (c - at, v.clone()))
                .collect(),
        };
        (head, tail)
    }

    /// Concatenates `self` (assumed shorter than `offset`) with `other`
    /// shifted by `offset`.
    pub fn concat(&self, offset: usize, other: &SparseVec) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(c, v)| (c + offset, v.clone())));
        Self { entries }
    }
}

/// Linear combination `sum coeffs[k] * vectors[k]` accumulated densely.
pub fn combine(terms: &[(Rational, &SparseVec)], len: usize) -> SparseVec {
    let mut acc = vec![Rational::zero(); len];
    for (s, v) in terms {
        if s.is_zero() {
            continue;
        }
        for (c, x) in v.entries() {
            acc[*c] += s * x;
        }
    }
    SparseVec::from_dense(&acc)
}

/// Reduced row echelon basis of a subspace of `Q^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vs: I) -> Self {
        let mut basis = Self::new(ambient);
        for v in vs {
            basis.insert(v);
        }
        basis
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` against the rows, read off at the pivot columns.
    fn pivot_coefficients(&self, v: &SparseVec) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        let mut k = 0;
        for (c, x) in v.entries() {
            while k < self.pivots.len() && self.pivots[k] < *c {
                k += 1;
            }
            if k < self.pivots.len() && self.pivots[k] == *c {
                out.push((k, x.clone()));
            }
        }
        out
    }

    /// Residual of `v` after subtracting its projection onto the span along
    /// the pivot columns. Zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let coeffs = self.pivot_coefficients(v);
        if coeffs.is_empty() {
            return v.clone();
        }
        if coeffs.len() == 1 {
            let (k, x) = &coeffs[0];
            return v.add_scaled(&-x, &self.rows[*k]);
        }
        let mut acc = v.to_dense(self.ambient);
        for (k, x) in &coeffs {
            for (c, r) in self.rows[*k].entries() {
                acc[*c] -= x * r;
            }
        }
        SparseVec::from_dense(&acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` with respect to [`Self::rows`], or `None` when `v`
    /// is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_pairs(self.pivot_coefficients(v)))
    }

    /// Adds `v` to the span. Returns `false` when it was already contained.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&lead.recip());
        for row in &mut self.rows {
            let x = row.get(pivot);
            if !x.is_zero() {
                *row = row.add_scaled(&-x, &r);
            }
        }
        let pos = self.pivots.partition_point(|p| *p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, r);
        true
    }

    pub fn contains_span(&self, other: &SpanBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_span(&self, other: &SpanBasis) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }

    /// Basis of the intersection with `other`.
    pub fn intersection(&self, other: &SpanBasis) -> SpanBasis {
        // x = sum a_k r_k lies in `other` iff sum a_k reduce_other(r_k) = 0.
        let residuals: Vec<SparseVec> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let kernel = kernel_of_columns(&residuals, self.ambient);
        let mut out = SpanBasis::new(self.ambient);
        for a in kernel {
            let terms: Vec<(Rational, &SparseVec)> = a
                .entries()
                .iter()
                .map(|(k, x)| (x.clone(), &self.rows[*k]))
                .collect();
            out.insert(&combine(&terms, self.ambient));
        }
        out
    }
}

/// Null space of the matrix whose rows are `rows` (each of length `ncols`).
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let echelon = SpanBasis::from_vectors(ncols, rows);
    let pivots = echelon.pivots();
    let mut out = Vec::new();
    let mut k = 0;
    for free in 0..ncols {
        if k < pivots.len() && pivots[k] == free {
            k += 1;
            continue;
        }
        let mut pairs = vec![(free, Rational::one())];
        for (row, p) in echelon.rows().iter().zip(pivots) {
            let x = row.get(free);
            if !x.is_zero() {
                pairs.push((*p, -x));
            }
        }
        out.push(SparseVec::from_pairs(pairs));
    }
    out
}

/// Kernel of the map `a -> sum a_k columns[k]`, as vectors indexed by `k`.
pub fn kernel_of_columns(columns: &[SparseVec], len: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); len];
    for (k, col) in columns.iter().enumerate() {
        for (c, x) in col.entries() {
            rows[*c].push((k, x.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(SparseVec::from_pairs)
        .collect();
    nullspace(&rows, columns.len())
}

/// Expresses vectors in a fixed, not necessarily echelon, basis.
///
/// Internally an echelon basis of `[v_m | e_m]`: every reduced row carries
/// in its tail the combination of the original vectors that produced it.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    ambient: usize,
    len: usize,
    augmented: SpanBasis,
}

impl Coordinatizer {
    /// Returns `None` when the vectors are linearly dependent.
    pub fn new(ambient: usize, basis: &[SparseVec]) -> Option<Self> {
        let mut augmented = SpanBasis::new(ambient + basis.len());
        for (m, v) in basis.iter().enumerate() {
            let row = v.concat(ambient, &SparseVec::unit(m));
            augmented.insert(&row);
        }
        let me = Self {
            ambient,
            len: basis.len(),
            augmented,
        };
        if me.augmented.pivots().iter().any(|p| *p >= ambient) {
            return None;
        }
        Some(me)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates of `x` in the original basis, or `None` when outside.
    pub fn coordinates(&self, x: &SparseVec) -> Option<SparseVec> {
        let mut terms: Vec<(Rational, SparseVec)> = Vec::new();
        let mut residual = x.clone();
        for (row, p) in self.augmented.rows().iter().zip(self.augmented.pivots()) {
            let c = x.get(*p);
            if c.is_zero() {
                continue;
            }
            let (head, tail) = row.split_at(self.ambient);
            residual = residual.add_scaled(&-&c, &head);
            terms.push((c, tail));
        }
        if !residual.is_zero() {
            return None;
        }
        let refs: Vec<(Rational, &SparseVec)> = terms.iter().map(|(c, v)| (c.clone(), v)).collect();
        Some(combine(&refs, self.len))
    }
}
