//! Chevalley generators of the classical algebras in their defining
//! representations, and the named quaternion Lie algebras of gl(n,H).

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_dims, QuatMatrix};
use crate::roots::TypeLabel;
use crate::scalars::{GaussianRational, Quaternion};
use crate::span::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyGenerators {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub ambient_n: usize,
    pub h: Vec<QuatMatrix>,
    pub e: Vec<QuatMatrix>,
    pub f: Vec<QuatMatrix>,
}

impl ChevalleyGenerators {
    /// `e_i, f_i` in order; these generate g_0.
    pub fn ef(&self) -> Vec<QuatMatrix> {
        self.e.iter().chain(&self.f).cloned().collect()
    }
}

/// Matrix with integer entries `(p, q, c)`.
fn int_matrix(n: usize, entries: &[(usize, usize, i64)]) -> QuatMatrix {
    let mut m = QuatMatrix::zero(n);
    for &(p, q, c) in entries {
        let v = m.get(p, q) + &Quaternion::from_int(c);
        m.set(p, q, v);
    }
    m
}

/// Standard realizations:
/// - A_l in sl(l+1, C);
/// - B_l in so(2l+1, C) for the form pairing `0 <-> 0` and `i <-> l+i`;
/// - C_l in sp(2l, C) for the form pairing `i <-> l+i` with a sign;
/// - D_l in so(2l, C) for the form pairing `i <-> l+i`.
pub fn chevalley_generators(t: TypeLabel, l: usize) -> Result<ChevalleyGenerators> {
    t.check_rank(l)?;
    let n = t.ambient_n(l);
    let (mut h, mut e, mut f) = (Vec::new(), Vec::new(), Vec::new());
    let mut push = |hh: Vec<(usize, usize, i64)>, ee: Vec<(usize, usize, i64)>, ff: Vec<(usize, usize, i64)>| {
        h.push(int_matrix(n, &hh));
        e.push(int_matrix(n, &ee));
        f.push(int_matrix(n, &ff));
    };
    // the type-independent chain a -> a+1 acting on both halves
    let chain = |a: usize, b: usize| {
        (
            vec![(a, a, 1), (a + 1, a + 1, -1), (b, b, -1), (b + 1, b + 1, 1)],
            vec![(a, a + 1, 1), (b + 1, b, -1)],
            vec![(a + 1, a, 1), (b, b + 1, -1)],
        )
    };
    match t {
        TypeLabel::A => {
            for i in 0..l {
                push(vec![(i, i, 1), (i + 1, i + 1, -1)], vec![(i, i + 1, 1)], vec![(i + 1, i, 1)]);
            }
        }
        TypeLabel::B => {
            for i in 1..l {
                let (hh, ee, ff) = chain(i, l + i);
                push(hh, ee, ff);
            }
            push(
                vec![(l, l, 2), (2 * l, 2 * l, -2)],
                vec![(l, 0, 1), (0, 2 * l, -1)],
                vec![(0, l, 2), (2 * l, 0, -2)],
            );
        }
        TypeLabel::C => {
            for i in 0..l - 1 {
                let (hh, ee, ff) = chain(i, l + i);
                push(hh, ee, ff);
            }
            push(
                vec![(l - 1, l - 1, 1), (2 * l - 1, 2 * l - 1, -1)],
                vec![(l - 1, 2 * l - 1, 1)],
                vec![(2 * l - 1, l - 1, 1)],
            );
        }
        TypeLabel::D => {
            for i in 0..l - 1 {
                let (hh, ee, ff) = chain(i, l + i);
                push(hh, ee, ff);
            }
            push(
                vec![(l - 2, l - 2, 1), (l - 1, l - 1, 1), (2 * l - 2, 2 * l - 2, -1), (2 * l - 1, 2 * l - 1, -1)],
                vec![(l - 2, 2 * l - 1, 1), (l - 1, 2 * l - 2, -1)],
                vec![(2 * l - 1, l - 2, 1), (2 * l - 2, l - 1, -1)],
            );
        }
    }
    Ok(ChevalleyGenerators {
        type_label: t,
        rank: l,
        ambient_n: n,
        h,
        e,
        f,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NamedKind {
    GlH,
    SlH,
    SoStar,
    Sp,
    SlC,
    SoC,
    U,
    Sk,
    /// sl(n,R) + J gl(n,R), with the standard tau.
    SlRJGlR,
}

impl NamedKind {
    pub const ALL: [NamedKind; 9] = [
        NamedKind::GlH,
        NamedKind::SlH,
        NamedKind::SoStar,
        NamedKind::Sp,
        NamedKind::SlC,
        NamedKind::SoC,
        NamedKind::U,
        NamedKind::Sk,
        NamedKind::SlRJGlR,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            NamedKind::GlH => "gl-h",
            NamedKind::SlH => "sl-h",
            NamedKind::SoStar => "so-star",
            NamedKind::Sp => "sp",
            NamedKind::SlC => "sl-c",
            NamedKind::SoC => "so-c",
            NamedKind::U => "u",
            NamedKind::Sk => "sk",
            NamedKind::SlRJGlR => "sl-r-j-gl-r",
        }
    }

    fn long_name(self) -> &'static str {
        match self {
            NamedKind::GlH => "gl_n_H",
            NamedKind::SlH => "sl_n_H",
            NamedKind::SoStar => "so_star_2n",
            NamedKind::Sp => "sp_n",
            NamedKind::SlC => "sl_n_C",
            NamedKind::SoC => "so_n_C",
            NamedKind::U => "u_n",
            NamedKind::Sk => "sk_n_C",
            NamedKind::SlRJGlR => "sl_n_R_J_gl_n_R",
        }
    }

    /// Human-readable name at a given size, e.g. `sl(3,H)`.
    pub fn display(self, n: usize) -> String {
        match self {
            NamedKind::GlH => format!("gl({n},H)"),
            NamedKind::SlH => format!("sl({n},H)"),
            NamedKind::SoStar => format!("so*({})", 2 * n),
            NamedKind::Sp => format!("sp({n})"),
            NamedKind::SlC => format!("sl({n},C)"),
            NamedKind::SoC => format!("so({n},C)"),
            NamedKind::U => format!("u({n})"),
            NamedKind::Sk => format!("sk({n},C)"),
            NamedKind::SlRJGlR => format!("sl({n},R)+Jgl({n},R)"),
        }
    }

    /// Real dimension as a subalgebra of gl(n,H).
    pub fn dimension(self, n: usize) -> usize {
        match self {
            NamedKind::GlH => 4 * n * n,
            NamedKind::SlH => 4 * n * n - 1,
            NamedKind::SoStar => n * (2 * n - 1),
            NamedKind::Sp => n * (2 * n + 1),
            NamedKind::SlC => 2 * n * n - 2,
            NamedKind::SoC => n * (n - 1),
            NamedKind::U => n * n,
            NamedKind::Sk => 2 * n * n - 1,
            NamedKind::SlRJGlR => 2 * n * n - 1,
        }
    }
}

impl fmt::Display for NamedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for NamedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s || k.long_name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub kind: NamedKind,
    pub n: usize,
    pub basis: Vec<QuatMatrix>,
}

pub const MAX_NAMED_N: usize = 10;

fn cunit(n: usize, p: usize, q: usize, c: GaussianRational) -> QuatMatrix {
    QuatMatrix::unit(n, p, q, Quaternion::from_complex(c))
}

fn junit(n: usize, p: usize, q: usize, c: GaussianRational) -> QuatMatrix {
    QuatMatrix::unit(n, p, q, Quaternion::new(GaussianRational::zero(), c))
}

fn one() -> GaussianRational {
    GaussianRational::from_ints(1, 0)
}

fn i_() -> GaussianRational {
    GaussianRational::i()
}

/// `{c E_pq, c i E_pq}` style helpers, `c` placed by `place`.
fn all_entries(n: usize, place: fn(usize, usize, usize, GaussianRational) -> QuatMatrix, out: &mut Vec<QuatMatrix>) {
    for p in 0..n {
        for q in 0..n {
            out.push(place(n, p, q, one()));
            out.push(place(n, p, q, i_()));
        }
    }
}

fn traceless_complex(n: usize, imaginary_diagonal: bool, out: &mut Vec<QuatMatrix>) {
    for p in 0..n {
        for q in 0..n {
            if p != q {
                out.push(cunit(n, p, q, one()));
                out.push(cunit(n, p, q, i_()));
            }
        }
    }
    for p in 0..n - 1 {
        out.push(&cunit(n, p, p, one()) - &cunit(n, p + 1, p + 1, one()));
        if !imaginary_diagonal {
            out.push(&cunit(n, p, p, i_()) - &cunit(n, p + 1, p + 1, i_()));
        }
    }
    if imaginary_diagonal {
        for p in 0..n {
            out.push(cunit(n, p, p, i_()));
        }
    }
}

fn skew_pairs(n: usize, place: fn(usize, usize, usize, GaussianRational) -> QuatMatrix, c: GaussianRational, sign: i64, out: &mut Vec<QuatMatrix>) {
    let s = GaussianRational::from_ints(sign, 0);
    for p in 0..n {
        for q in p + 1..n {
            out.push(&place(n, p, q, c.clone()) + &place(n, q, p, &c * &s));
        }
    }
}

pub fn build_named(kind: NamedKind, n: usize) -> Result<NamedAlgebra> {
    if !(2..=MAX_NAMED_N).contains(&n) {
        return Err(Error::OutOfRange(format!("{kind}: n = {n} outside 2..={MAX_NAMED_N}")));
    }
    if kind == NamedKind::SoC && n < 3 {
        log::warn!("so({n},C) is not semisimple");
    }
    let mut b = Vec::new();
    match kind {
        NamedKind::GlH => {
            all_entries(n, cunit, &mut b);
            all_entries(n, junit, &mut b);
        }
        NamedKind::SlH => {
            traceless_complex(n, true, &mut b);
            all_entries(n, junit, &mut b);
        }
        NamedKind::SoStar => {
            skew_pairs(n, cunit, one(), -1, &mut b);
            skew_pairs(n, cunit, i_(), -1, &mut b);
            for p in 0..n {
                b.push(junit(n, p, p, one()));
            }
            skew_pairs(n, junit, one(), 1, &mut b);
            skew_pairs(n, junit, i_(), -1, &mut b);
        }
        NamedKind::Sp => {
            for p in 0..n {
                b.push(cunit(n, p, p, i_()));
            }
            skew_pairs(n, cunit, one(), -1, &mut b);
            skew_pairs(n, cunit, i_(), 1, &mut b);
            for p in 0..n {
                b.push(junit(n, p, p, one()));
                b.push(junit(n, p, p, i_()));
            }
            skew_pairs(n, junit, one(), 1, &mut b);
            skew_pairs(n, junit, i_(), 1, &mut b);
        }
        NamedKind::SlC => traceless_complex(n, false, &mut b),
        NamedKind::SoC => {
            skew_pairs(n, cunit, one(), -1, &mut b);
            skew_pairs(n, cunit, i_(), -1, &mut b);
        }
        NamedKind::U => {
            for p in 0..n {
                b.push(cunit(n, p, p, i_()));
            }
            skew_pairs(n, cunit, one(), -1, &mut b);
            skew_pairs(n, cunit, i_(), 1, &mut b);
        }
        NamedKind::Sk => traceless_complex(n, true, &mut b),
        NamedKind::SlRJGlR => {
            for p in 0..n {
                for q in 0..n {
                    if p != q {
                        b.push(cunit(n, p, q, one()));
                    }
                    b.push(junit(n, p, q, one()));
                }
            }
            for p in 0..n - 1 {
                b.push(&cunit(n, p, p, one()) - &cunit(n, p + 1, p + 1, one()));
            }
        }
    }
    debug_assert_eq!(b.len(), kind.dimension(n));
    Ok(NamedAlgebra { kind, n, basis: b })
}

/// Linear defect map whose kernel is the algebra; `membership` tests it
/// for zero.
pub fn constraint(kind: NamedKind, m: &QuatMatrix) -> SparseVec {
    let n = m.n();
    let (a, b) = m.blocks();
    let stride = 4 * n * n;
    let j_part = || QuatMatrix::from_blocks(&crate::linalg::CMatrix::zeros(n, n), &b).to_sparse();
    let trace = |re_only: bool| {
        let t = m.trace();
        let mut pairs = vec![(0, t.z1.re.clone())];
        if !re_only {
            pairs.push((1, t.z1.im.clone()));
        }
        SparseVec::from_pairs(pairs)
    };
    let real_blocks = || {
        let mut pairs = Vec::new();
        for (k, q) in m.flatten().into_iter().enumerate() {
            if k % 2 == 1 {
                pairs.push((k, q));
            }
        }
        SparseVec::from_pairs(pairs)
    };
    let complex_only = |extra: QuatMatrix| extra.to_sparse().concat(stride, &j_part());
    match kind {
        NamedKind::GlH => SparseVec::new(),
        NamedKind::SlH => trace(true),
        NamedKind::SoStar => (m + &m.transpose_mj()).to_sparse(),
        NamedKind::Sp => (m + &m.conj_transpose()).to_sparse(),
        NamedKind::SlC => trace(false).concat(2, &j_part()),
        NamedKind::SoC => complex_only(QuatMatrix::from_blocks(&(&a + &a.transpose()), &crate::linalg::CMatrix::zeros(n, n))),
        NamedKind::U => complex_only(QuatMatrix::from_blocks(&(&a + &a.adjoint()), &crate::linalg::CMatrix::zeros(n, n))),
        NamedKind::Sk => trace(true).concat(2, &j_part()),
        NamedKind::SlRJGlR => trace(true).concat(2, &real_blocks()),
    }
}

pub fn membership(kind: NamedKind, n: usize, m: &QuatMatrix) -> Result<bool> {
    check_dims(&QuatMatrix::zero(n), m)?;
    Ok(constraint(kind, m).is_zero())
}
