//! Quaternification of a classical simple Lie algebra: the bracket closure
//! of `g_0 + J g_0` inside gl(n,H), its weight decomposition under
//! `h_r = span_R{h_i}`, and the checks run against it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::bracket::{check_conjugation_equivariance, closure, closure_span, commutator, jacobi_report, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::QuatMatrix;
use crate::realizations::{build_named, chevalley_generators, ChevalleyGenerators, NamedKind};
pub use crate::relations::RelationReport;
use crate::relations::{GenTag, Rhs, FAMILIES, SERRE_PAIRS};
use crate::report::CheckResult;
use crate::roots::{cartan_matrix, root_weights, CartanMatrix, Root, TypeLabel, Weight};
use crate::scalars::{rat, Quaternion, Rational};
use crate::span::{combine, kernel_of_columns, Coordinatizer, SpanBasis, SparseVec};

/// Largest real dimension `4 n^2` of the ambient gl(n,H) accepted by
/// [`quaternify`].
pub const MAX_AMBIENT_REAL_DIM: usize = 400;

pub const REALIZATION: &str = "defining";

/// Largest supported rank for a type.
pub fn max_rank(t: TypeLabel) -> usize {
    (t.min_rank()..).take_while(|&l| 4 * t.ambient_n(l).pow(2) <= MAX_AMBIENT_REAL_DIM).last().unwrap_or(0)
}

pub fn check_supported(t: TypeLabel, l: usize) -> Result<()> {
    t.check_rank(l)?;
    if l > max_rank(t) {
        return Err(Error::OutOfRange(format!(
            "{t}{l}: ambient gl({},H) exceeds the supported size (rank at most {})",
            t.ambient_n(l),
            max_rank(t)
        )));
    }
    Ok(())
}

/// A nonzero candidate weight and the adapted-basis indices spanning its
/// weight space (possibly none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub root: Root,
    pub weight: Weight,
    pub indices: Vec<usize>,
}

/// The quaternification together with its adapted basis
///
/// `[h_r | h_r^perp | rest of k | g_w for w in +Phi^+ | g_w for w in -Phi^+ | residual]`
///
/// and the structure constants in that basis.
#[derive(Clone, Debug)]
pub struct QuaternionLieAlgebra {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub realization: String,
    pub n: usize,
    pub cartan: CartanMatrix,
    pub generators: ChevalleyGenerators,
    pub basis: Vec<QuatMatrix>,
    pub constants: StructureConstants,
    pub weight_spaces: Vec<WeightSpace>,
    pub k_part: Vec<usize>,
    pub hr_basis: Vec<usize>,
    pub hr_perp_basis: Vec<usize>,
    /// Basis vectors outside every candidate weight space; empty when the
    /// decomposition is complete.
    pub residual: Vec<usize>,
    coordinatizer: Coordinatizer,
}

/// Coordinates of the six generator series in the adapted basis.
#[derive(Clone, Debug)]
pub struct GeneratorCoords {
    series: BTreeMap<GenTag, Vec<SparseVec>>,
}

impl GeneratorCoords {
    pub fn get(&self, tag: GenTag, i: usize) -> &SparseVec {
        &self.series[&tag][i]
    }
}

impl QuaternionLieAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        type_label: TypeLabel,
        rank: usize,
        realization: String,
        generators: ChevalleyGenerators,
        basis: Vec<QuatMatrix>,
        constants: StructureConstants,
        weight_spaces: Vec<WeightSpace>,
        k_part: Vec<usize>,
        hr_basis: Vec<usize>,
        hr_perp_basis: Vec<usize>,
        residual: Vec<usize>,
    ) -> Result<Self> {
        let cartan = cartan_matrix(type_label, rank)?;
        let n = type_label.ambient_n(rank);
        let d = basis.len();
        if generators.rank != rank || generators.ambient_n != n {
            return Err(Error::MalformedInput("generators do not match type and rank".into()));
        }
        if [&generators.h, &generators.e, &generators.f].iter().any(|s| s.len() != rank || s.iter().any(|m| m.n() != n)) {
            return Err(Error::MalformedInput("generator matrices have the wrong count or size".into()));
        }
        if basis.iter().any(|m| m.n() != n) {
            return Err(Error::MalformedInput(format!("basis matrices must be {n}x{n}")));
        }
        if constants.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: constants.dim() });
        }
        if constants.entries().any(|(_, _, k, _)| k >= d) {
            return Err(Error::MalformedInput("structure constant index out of range".into()));
        }
        let all_indices = weight_spaces
            .iter()
            .flat_map(|w| &w.indices)
            .chain(&k_part)
            .chain(&hr_basis)
            .chain(&hr_perp_basis)
            .chain(&residual);
        if let Some(bad) = all_indices.clone().find(|&&i| i >= d) {
            return Err(Error::MalformedInput(format!("basis index {bad} out of range (dim {d})")));
        }
        if weight_spaces.iter().any(|w| w.weight.values.len() != rank || w.root.coeffs.len() != rank) {
            return Err(Error::MalformedInput("weight of the wrong length".into()));
        }
        let sparse: Vec<SparseVec> = basis.iter().map(QuatMatrix::to_sparse).collect();
        let coordinatizer = Coordinatizer::new(4 * n * n, &sparse)
            .ok_or_else(|| Error::MalformedInput("basis is linearly dependent".into()))?;
        Ok(Self {
            type_label,
            rank,
            realization,
            n,
            cartan,
            generators,
            basis,
            constants,
            weight_spaces,
            k_part,
            hr_basis,
            hr_perp_basis,
            residual,
            coordinatizer,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        4 * self.n * self.n
    }

    /// Coordinates in the adapted basis, `None` if `m` is not in g.
    pub fn coords(&self, m: &QuatMatrix) -> Option<SparseVec> {
        self.coordinatizer.coordinates(&m.to_sparse())
    }

    pub fn element(&self, coords: &SparseVec) -> QuatMatrix {
        let vs: Vec<SparseVec> = self.basis.iter().map(QuatMatrix::to_sparse).collect();
        let terms: Vec<(Rational, &SparseVec)> = coords.entries().iter().map(|(k, c)| (c.clone(), &vs[*k])).collect();
        QuatMatrix::from_sparse(self.n, &combine(&terms, self.ambient_dim()))
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.constants.bracket(x, y)
    }

    pub fn generator_matrix(&self, tag: GenTag, i: usize) -> QuatMatrix {
        let g = &self.generators;
        let m = match tag.plain() {
            GenTag::H => &g.h[i],
            GenTag::E => &g.e[i],
            _ => &g.f[i],
        };
        if tag.is_j() {
            m.apply_j()
        } else {
            m.clone()
        }
    }

    /// Fails with the offending generator if one is not in the span.
    pub fn generator_coords(&self) -> std::result::Result<GeneratorCoords, String> {
        let mut series = BTreeMap::new();
        for tag in GenTag::ALL {
            let mut v = Vec::new();
            for i in 0..self.rank {
                let c = self
                    .coords(&self.generator_matrix(tag, i))
                    .ok_or_else(|| format!("{} is not in the algebra", tag.label(i)))?;
                v.push(c);
            }
            series.insert(tag, v);
        }
        Ok(GeneratorCoords { series })
    }

    /// +1 for complex basis vectors, -1 for J-part vectors, 0 otherwise.
    pub fn sigma_sign(&self, k: usize) -> i8 {
        let m = &self.basis[k];
        if m.is_complex() {
            1
        } else if m.is_j_part() {
            -1
        } else {
            0
        }
    }

    /// Indices `[lo, hi)` grouped into blocks, each tagged with its weight
    /// (`None` for the residual).
    fn blocks(&self) -> Vec<(Option<Weight>, Vec<usize>)> {
        let mut out = vec![(Some(Weight::zero(self.rank)), self.k_part.clone())];
        for ws in &self.weight_spaces {
            out.push((Some(ws.weight.clone()), ws.indices.clone()));
        }
        out.push((None, self.residual.clone()));
        out
    }
}

fn units() -> [Quaternion; 4] {
    Quaternion::coordinate_units()
}

/// `span_R{u x : u in {1, i, j, ji}, x in xs}`.
fn h_span(xs: &[QuatMatrix]) -> Vec<QuatMatrix> {
    xs.iter().flat_map(|x| units().map(|u| x.left_scale(&u))).collect()
}

fn span_of(amb: usize, ms: &[QuatMatrix]) -> SpanBasis {
    let vs: Vec<SparseVec> = ms.iter().map(QuatMatrix::to_sparse).collect();
    SpanBasis::from_vectors(amb, vs.iter())
}

/// Weight spaces of the candidate weights inside the span `g`, each as an
/// echelon basis in ambient coordinates. `h` must lie in `g`.
fn candidate_weight_spaces(n: usize, g: &SpanBasis, h: &[QuatMatrix], candidates: &[Weight]) -> Vec<SpanBasis> {
    let d = g.dim();
    let l = h.len();
    let rows: Vec<QuatMatrix> = g.rows().iter().map(|r| QuatMatrix::from_sparse(n, r)).collect();
    // ad h_i in the echelon coordinates of g
    let ad: Vec<Vec<SparseVec>> = h
        .iter()
        .map(|hi| {
            rows.iter()
                .map(|r| g.coordinates(&commutator(hi, r).to_sparse()).expect("h_i normalizes g"))
                .collect()
        })
        .collect();
    let solve = |w: &Weight| {
        let cols: Vec<SparseVec> = (0..d)
            .map(|k| {
                let mut col = SparseVec::new();
                for (i, ad_i) in ad.iter().enumerate() {
                    let shifted = ad_i[k].add_scaled(&rat(-w.values[i]), &SparseVec::unit(k));
                    col = col.concat(i * d, &shifted);
                }
                col
            })
            .collect();
        let kernel = kernel_of_columns(&cols, l * d);
        let vecs: Vec<SparseVec> = kernel
            .iter()
            .map(|c| {
                let terms: Vec<(Rational, &SparseVec)> = c.entries().iter().map(|(k, x)| (x.clone(), &g.rows()[*k])).collect();
                combine(&terms, g.ambient())
            })
            .collect();
        SpanBasis::from_vectors(g.ambient(), vecs.iter())
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        candidates.par_iter().map(solve).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        candidates.iter().map(solve).collect()
    }
}

/// Builds the quaternification of the type's defining realization.
///
/// Aborts only if a defining relation or a Serre relation fails, which
/// would mean an implementation error; the structural checks are left to
/// [`run_check`].
pub fn quaternify(t: TypeLabel, l: usize) -> Result<QuaternionLieAlgebra> {
    check_supported(t, l)?;
    let cm = cartan_matrix(t, l)?;
    let gens = chevalley_generators(t, l)?;
    let n = gens.ambient_n;
    let amb = 4 * n * n;

    let g_r = closure(&gens.ef());
    let g = closure_span(n, &h_span(&g_r.basis));
    log::info!("{t}{l}: closure has real dimension {}", g.dim());

    let roots = root_weights(&cm)?;
    let mut candidates = vec![Weight::zero(l)];
    candidates.extend(roots.iter().map(|(_, w)| w.clone()));
    let spaces = candidate_weight_spaces(n, &g, &gens.h, &candidates);
    let k_space = &spaces[0];

    let k_rows: Vec<QuatMatrix> = k_space.rows().iter().map(|r| QuatMatrix::from_sparse(n, r)).collect();
    let mut kk = SpanBasis::new(amb);
    for a in 0..k_rows.len() {
        for b in a + 1..k_rows.len() {
            kk.insert(&commutator(&k_rows[a], &k_rows[b]).to_sparse());
        }
    }

    let mut running = SpanBasis::new(amb);
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut take = |cands: &[SparseVec]| -> Vec<usize> {
        let mut idx = Vec::new();
        for v in cands {
            if running.insert(v) {
                idx.push(basis.len());
                basis.push(v.clone());
            }
        }
        idx
    };
    let h_sparse: Vec<SparseVec> = gens.h.iter().map(QuatMatrix::to_sparse).collect();
    let hr_basis = take(&h_sparse);
    let hr_perp_basis = take(kk.rows());
    let k_rest = take(k_space.rows());
    let weight_spaces: Vec<WeightSpace> = roots
        .iter()
        .zip(&spaces[1..])
        .map(|((root, weight), sp)| WeightSpace {
            root: root.clone(),
            weight: weight.clone(),
            indices: take(sp.rows()),
        })
        .collect();
    let residual = take(g.rows());
    debug_assert_eq!(basis.len(), g.dim());

    let k_part: Vec<usize> = hr_basis.iter().chain(&hr_perp_basis).chain(&k_rest).copied().collect();
    let matrices: Vec<QuatMatrix> = basis.iter().map(|v| QuatMatrix::from_sparse(n, v)).collect();
    let coordinatizer = Coordinatizer::new(amb, &basis).expect("adapted basis is independent");
    let constants = adapted_constants(&matrices, &coordinatizer);

    let algebra = QuaternionLieAlgebra {
        type_label: t,
        rank: l,
        realization: REALIZATION.to_string(),
        n,
        cartan: cm,
        generators: gens,
        basis: matrices,
        constants,
        weight_spaces,
        k_part,
        hr_basis,
        hr_perp_basis,
        residual,
        coordinatizer,
    };
    let mut failures: Vec<String> = verify_relations(&algebra)
        .into_iter()
        .flat_map(|r| r.failures.into_iter().map(move |f| format!("{}: {f}", r.family)))
        .collect();
    failures.extend(verify_serre(&algebra).failures);
    if !failures.is_empty() {
        return Err(Error::Verification(format!(
            "{t}{l}: defining relations fail in the realization: {}",
            failures.join("; ")
        )));
    }
    Ok(algebra)
}

fn adapted_constants(basis: &[QuatMatrix], coordinatizer: &Coordinatizer) -> StructureConstants {
    let d = basis.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let compute = |&(i, j): &(usize, usize)| {
        let c = coordinatizer
            .coordinates(&commutator(&basis[i], &basis[j]).to_sparse())
            .expect("the span is bracket-closed");
        (i, j, c)
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

fn describe(v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .entries()
        .iter()
        .take(6)
        .map(|(k, c)| format!("{}*b{k}", crate::scalars::format_rational(c)))
        .collect();
    let more = if v.nnz() > 6 { " + ..." } else { "" };
    format!("{}{more}", terms.join(" + "))
}

/// Evaluates all sixteen relation families through the structure
/// constants, for all `i, j`.
pub fn verify_relations(g: &QuaternionLieAlgebra) -> Vec<RelationReport> {
    let gc = match g.generator_coords() {
        Ok(gc) => gc,
        Err(msg) => {
            return FAMILIES
                .iter()
                .map(|f| RelationReport {
                    family: f.id.to_string(),
                    formula: f.formula.to_string(),
                    instances_checked: 0,
                    failures: vec![msg.clone()],
                })
                .collect()
        }
    };
    let l = g.rank;
    FAMILIES
        .iter()
        .map(|f| {
            let mut failures = Vec::new();
            let mut instances = 0;
            for i in 0..l {
                for j in 0..l {
                    instances += 1;
                    let lhs = g.bracket(gc.get(f.x, i), gc.get(f.y, j));
                    let rhs = match f.rhs {
                        Rhs::Zero => SparseVec::new(),
                        Rhs::Delta(t, s) if i == j => gc.get(t, i).scale(&rat(s)),
                        Rhs::Delta(..) => SparseVec::new(),
                        Rhs::Cartan(t, s) => gc.get(t, j).scale(&rat(s * g.cartan.get(j, i))),
                    };
                    if lhs != rhs {
                        failures.push(format!(
                            "[{},{}] = {} but expected {}",
                            f.x.label(i),
                            f.y.label(j),
                            describe(&lhs),
                            describe(&rhs)
                        ));
                    }
                }
            }
            RelationReport {
                family: f.id.to_string(),
                formula: f.formula.to_string(),
                instances_checked: instances,
                failures,
            }
        })
        .collect()
}

/// `(ad a_i)^{1-c_ji}(b_j) = 0` for `i != j` and every pair of series in
/// `{e, Je}` and in `{f, Jf}`.
pub fn verify_serre(g: &QuaternionLieAlgebra) -> RelationReport {
    let mut report = RelationReport {
        family: "serre".into(),
        formula: "(ad a_i)^(1-c_ji)(b_j) = 0, a,b in {e,Je} or {f,Jf}".into(),
        instances_checked: 0,
        failures: Vec::new(),
    };
    let gc = match g.generator_coords() {
        Ok(gc) => gc,
        Err(msg) => {
            report.failures.push(msg);
            return report;
        }
    };
    for i in 0..g.rank {
        for j in 0..g.rank {
            if i == j {
                continue;
            }
            let p = 1 - g.cartan.get(j, i);
            for (a, b) in SERRE_PAIRS {
                report.instances_checked += 1;
                let mut x = gc.get(b, j).clone();
                for _ in 0..p {
                    x = g.bracket(gc.get(a, i), &x);
                }
                if !x.is_zero() {
                    report
                        .failures
                        .push(format!("(ad {})^{p}({}) = {}", a.label(i), b.label(j), describe(&x)));
                }
            }
        }
    }
    report
}

/// Weight spaces as a map from weight to adapted-basis indices, the zero
/// weight included.
pub fn weight_decomposition(g: &QuaternionLieAlgebra) -> BTreeMap<Weight, Vec<usize>> {
    let mut out = BTreeMap::new();
    out.insert(Weight::zero(g.rank), g.k_part.clone());
    for ws in &g.weight_spaces {
        out.insert(ws.weight.clone(), ws.indices.clone());
    }
    out
}

fn unit_span(d: usize, idx: &[usize]) -> SpanBasis {
    let vs: Vec<SparseVec> = idx.iter().map(|&k| SparseVec::unit(k)).collect();
    SpanBasis::from_vectors(d, vs.iter())
}

/// Joint eigenvalues of `ad h_r` on g found by splitting g one `h_i` at a
/// time over an integer range bounding the spectrum. Returns the weights
/// with their multiplicities and the dimension left unresolved
/// (non-integer or non-semisimple part).
pub fn observed_weights(g: &QuaternionLieAlgebra) -> (Vec<(Weight, usize)>, usize) {
    let d = g.dim();
    let bound = g
        .generators
        .h
        .iter()
        .map(|h| {
            h.rows()
                .map(|row| row.iter().flat_map(|q| q.coords()).map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b))
                .max()
                .unwrap_or_else(Rational::zero)
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = 2 * bound.ceil().to_integer().to_i64().unwrap_or(0);
    let mut pieces: Vec<(Vec<i64>, Vec<SparseVec>)> = vec![(Vec::new(), (0..d).map(SparseVec::unit).collect())];
    let mut unresolved = 0;
    for &hi in &g.hr_basis {
        let h = SparseVec::unit(hi);
        let mut next = Vec::new();
        for (partial, vecs) in pieces {
            let mut found = 0;
            for lambda in -bound..=bound {
                let cols: Vec<SparseVec> = vecs
                    .iter()
                    .map(|v| g.bracket(&h, v).add_scaled(&rat(-lambda), v))
                    .collect();
                let ker = kernel_of_columns(&cols, d);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let new_vecs = ker
                    .iter()
                    .map(|c| {
                        let terms: Vec<(Rational, &SparseVec)> = c.entries().iter().map(|(k, x)| (x.clone(), &vecs[*k])).collect();
                        combine(&terms, d)
                    })
                    .collect();
                let mut w = partial.clone();
                w.push(lambda);
                next.push((w, new_vecs));
            }
            unresolved += vecs.len() - found;
        }
        pieces = next;
    }
    let mut out: Vec<(Weight, usize)> = pieces.into_iter().map(|(w, v)| (Weight { values: w }, v.len())).collect();
    out.sort();
    (out, unresolved)
}

fn dimension_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("dimension");
    c.detail("dim", g.dim());
    if g.type_label == TypeLabel::A {
        let expected = 4 * g.n * g.n - 1;
        c.detail("expected", expected);
        c.check(g.dim() == expected, || format!("dim {} != 4(l+1)^2-1 = {expected}", g.dim()));
        c.check(
            g.basis.iter().all(|m| crate::realizations::membership(NamedKind::SlH, g.n, m).unwrap_or(false)),
            || "a basis element is not in sl(n,H)".into(),
        );
    } else {
        c.detail("expected", serde_json::Value::Null);
        let in_sl = g.basis.iter().all(|m| m.real_trace().is_zero());
        c.detail("equals_sl_n_H", in_sl && g.dim() == 4 * g.n * g.n - 1);
    }
    c
}

fn relations_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("relations");
    let reports = verify_relations(g);
    c.detail("families", reports.len());
    let mut per_family = serde_json::Map::new();
    for r in reports {
        per_family.insert(r.family.clone(), json!({"instances": r.instances_checked, "failures": r.failures.len()}));
        c.instances += r.instances_checked;
        for f in r.failures {
            c.fail(format!("{}: {f}", r.family));
        }
    }
    c.detail("per_family", serde_json::Value::Object(per_family));
    c
}

fn serre_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("serre");
    let r = verify_serre(g);
    c.instances = r.instances_checked;
    for f in r.failures {
        c.fail(f);
    }
    c
}

fn jacobi_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("jacobi");
    let r = jacobi_report(&g.constants);
    c.instances = r.triples_checked;
    c.detail("exhaustive", r.exhaustive);
    for (i, j, k) in r.failures {
        c.fail(format!("Jacobi sum nonzero for basis triple ({i},{j},{k})"));
    }
    c
}

fn conjugations_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("conjugations");
    let r = check_conjugation_equivariance(&g.basis);
    c.instances = r.pairs_checked;
    c.check(r.span_sigma_invariant, || "span is not sigma-invariant".into());
    c.check(r.span_tau_invariant, || "span is not tau-invariant".into());
    for f in r.failures {
        c.fail(format!("{} is not a homomorphism on basis pair ({},{})", f.map, f.i, f.j));
    }
    c
}

/// Recomputes every bracket of basis matrices and compares with the stored
/// constants; names each disagreeing `(i, j, k)`.
fn constants_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("constants");
    let d = g.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let compute = |&(i, j): &(usize, usize)| -> Vec<String> {
        let actual = g.coords(&commutator(&g.basis[i], &g.basis[j]));
        let stored = g.constants.get(i, j);
        match actual {
            None => vec![format!("[b{i},b{j}] leaves the span")],
            Some(a) if a == stored => Vec::new(),
            Some(a) => {
                let ks: BTreeSet<usize> = a.entries().iter().chain(stored.entries()).map(|(k, _)| *k).collect();
                ks.into_iter()
                    .filter(|&k| a.get(k) != stored.get(k))
                    .map(|k| {
                        format!(
                            "structure constant ({i},{j},{k}) is {} but the matrices give {}",
                            crate::scalars::format_rational(&stored.get(k)),
                            crate::scalars::format_rational(&a.get(k))
                        )
                    })
                    .collect()
            }
        }
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Vec<String>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(compute).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Vec<String>> = pairs.iter().map(compute).collect();
    for r in results {
        c.instances += 1;
        for f in r {
            c.fail(f);
        }
    }
    c
}

/// Root-space decomposition checks.
pub fn decomposition_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("decomposition");
    let d = g.dim();
    let amb = g.ambient_dim();

    // g_0 as a real span, to compare g_w with H (x) (g_0)_w
    let g_r = closure(&g.generators.ef());
    let g0: Vec<QuatMatrix> = g_r
        .basis
        .iter()
        .flat_map(|x| [x.clone(), x.left_scale(&Quaternion::i())])
        .collect();
    let g0_span = span_of(amb, &g0);

    let mut dims = serde_json::Map::new();
    dims.insert("0".into(), json!(g.k_part.len()));
    for ws in &g.weight_spaces {
        dims.insert(ws.weight.to_string(), json!(ws.indices.len()));
        c.check(ws.indices.len() == 4, || {
            format!("weight {} (root {:?}) has real dimension {}, expected 4", ws.weight, ws.root.coeffs, ws.indices.len())
        });
        let w_span = span_of(amb, &ws.indices.iter().map(|&k| g.basis[k].clone()).collect::<Vec<_>>());
        let g0_w = w_span.intersection(&g0_span);
        let hx = span_of(amb, &h_span(&g0_w.rows().iter().map(|r| QuatMatrix::from_sparse(g.n, r)).collect::<Vec<_>>()));
        c.check(hx.same_span(&w_span), || {
            format!(
                "g_{} (dim {}) differs from H(x)(g_0)_w (dim {})",
                ws.weight,
                w_span.dim(),
                hx.dim()
            )
        });
    }
    c.detail("weight_space_dims", serde_json::Value::Object(dims));

    let total: usize = g.k_part.len() + g.weight_spaces.iter().map(|w| w.indices.len()).sum::<usize>();
    c.detail("dim", d).detail("dim_k", g.k_part.len()).detail("sum_of_weight_spaces", total);
    c.check(total == d && g.residual.is_empty(), || {
        format!("weight spaces of the roots and zero sum to {total}, not {d}")
    });
    if !g.residual.is_empty() {
        let (observed, unresolved) = observed_weights(g);
        let candidates: BTreeSet<Weight> = weight_decomposition(g).into_keys().collect();
        let extra: Vec<String> = observed
            .iter()
            .filter(|(w, _)| !candidates.contains(w))
            .map(|(w, m)| format!("{w}x{m}"))
            .collect();
        c.detail("unexpected_weights", extra.clone());
        c.detail("unresolved_dim", unresolved);
        c.check(extra.is_empty(), || format!("weights outside the root system: {}", extra.join(", ")));
    }

    // [g_w, g_v] in g_{w+v}
    let blocks = g.blocks();
    let mut block_of = vec![usize::MAX; d];
    let mut by_weight: BTreeMap<Weight, usize> = BTreeMap::new();
    for (b, (w, idx)) in blocks.iter().enumerate() {
        for &k in idx {
            block_of[k] = b;
        }
        if let Some(w) = w {
            by_weight.insert(w.clone(), b);
        }
    }
    let mut bad_pairs = 0usize;
    for (bw, (w, wi)) in blocks.iter().enumerate() {
        let Some(w) = w else { continue };
        for (v, vi) in blocks.iter().skip(bw).map(|(v, vi)| (v, vi)) {
            let Some(v) = v else { continue };
            let target = by_weight.get(&w.add(v)).copied();
            let mut ok = true;
            for &a in wi {
                for &b in vi {
                    if a == b {
                        continue;
                    }
                    let br = g.constants.get(a, b);
                    if br.entries().iter().any(|(k, _)| Some(block_of[*k]) != target) {
                        ok = false;
                    }
                }
            }
            c.check(ok, || format!("[g_{w}, g_{v}] is not contained in g_{}", w.add(v)));
            if !ok {
                bad_pairs += 1;
            }
        }
    }
    c.detail("bracket_grading_failures", bad_pairs);
    c
}

fn explicit_type_a_forms(n: usize) -> (Vec<QuatMatrix>, Vec<QuatMatrix>) {
    // k = h_o + sqrt(-1) R E_11 + J(h_o + C E_11),
    // h_r^perp = sqrt(-1) sum R E_ii + J(h_o + C E_11)
    let i = Quaternion::i();
    let j = Quaternion::j();
    let ji = &j * &i;
    let diag = |p: usize, q: &Quaternion| QuatMatrix::unit(n, p, p, q.clone());
    let mut j_diag = Vec::new();
    for p in 0..n {
        j_diag.push(diag(p, &j));
        j_diag.push(diag(p, &ji));
    }
    let mut k = j_diag.clone();
    for p in 0..n - 1 {
        let h = &QuatMatrix::e(n, p, p) - &QuatMatrix::e(n, p + 1, p + 1);
        k.push(h.left_scale(&i));
        k.push(h);
    }
    k.push(diag(0, &i));
    let mut perp = j_diag;
    perp.extend((0..n).map(|p| diag(p, &i)));
    (k, perp)
}

/// The lemma on k: `[h_r, k] = 0`, `k = h_r (+) h_r^perp`,
/// `[k, k] = h_r^perp`.
pub fn k_structure(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("k-structure");
    let d = g.dim();
    let (k, hr, perp) = (&g.k_part, &g.hr_basis, &g.hr_perp_basis);
    c.detail("dim_k", k.len()).detail("dim_h_r", hr.len()).detail("dim_h_r_perp", perp.len());

    for &a in hr {
        for &b in k {
            c.check(g.constants.get(a, b).is_zero(), || format!("[b{a}, b{b}] != 0 with b{a} in h_r"));
        }
    }

    let mut kk = SpanBasis::new(d);
    for (x, &a) in k.iter().enumerate() {
        for &b in &k[x + 1..] {
            kk.insert(&g.constants.get(a, b));
        }
    }
    c.detail("dim_kk", kk.dim());
    let perp_span = unit_span(d, perp);
    c.check(kk.same_span(&perp_span), || {
        format!("[k,k] (dim {}) differs from h_r^perp (dim {})", kk.dim(), perp.len())
    });
    let hr_span = unit_span(d, hr);
    let inter = hr_span.intersection(&kk).dim();
    c.detail("dim_h_r_meet_kk", inter);
    c.check(inter == 0 && hr.len() + kk.dim() == k.len(), || {
        format!(
            "k is not h_r (+) [k,k]: dim k = {}, dim h_r = {}, dim [k,k] = {}, intersection {inter}",
            k.len(),
            hr.len(),
            kk.dim()
        )
    });
    c.check(hr.len() == g.rank, || format!("h_r has dimension {} for rank {}", hr.len(), g.rank));

    // k = closure(h_0 + J h_0)
    let h0 = closure(&h_span(&g.generators.h));
    let k_amb = span_of(g.ambient_dim(), &k.iter().map(|&i| g.basis[i].clone()).collect::<Vec<_>>());
    c.detail("dim_closure_h0_Jh0", h0.dim());
    c.check(h0.span.same_span(&k_amb), || {
        format!("closure(h_0 + J h_0) has dimension {}, k has {}", h0.dim(), k.len())
    });

    if g.type_label == TypeLabel::A {
        let expected = 4 * g.rank + 3;
        c.check(k.len() == expected, || format!("dim k = {} != 4l+3 = {expected}", k.len()));
        let (k_form, perp_form) = explicit_type_a_forms(g.n);
        c.check(span_of(g.ambient_dim(), &k_form).same_span(&k_amb), || {
            "k differs from h_o + sqrt(-1)R E_11 + J(h_o + C E_11)".into()
        });
        let perp_amb = span_of(g.ambient_dim(), &perp.iter().map(|&i| g.basis[i].clone()).collect::<Vec<_>>());
        c.check(span_of(g.ambient_dim(), &perp_form).same_span(&perp_amb), || {
            "h_r^perp differs from sqrt(-1) sum R E_ii + J(h_o + C E_11)".into()
        });
    }
    c
}

/// sigma-homogeneity of the basis, compatibility of the bracket with the
/// sigma-grading, and the J-count parity of nested generator brackets.
pub fn sigma_grading_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("grading");
    let d = g.dim();
    let signs: Vec<i8> = (0..d).map(|k| g.sigma_sign(k)).collect();
    for (k, s) in signs.iter().enumerate() {
        c.check(*s != 0, || format!("basis vector b{k} is not sigma-homogeneous"));
    }
    let plus = signs.iter().filter(|&&s| s == 1).count();
    c.detail("dim_g_plus", plus).detail("dim_g_minus", d - plus);
    for i in 0..d {
        for j in i + 1..d {
            let expect = signs[i] * signs[j];
            let br = g.constants.get(i, j);
            c.check(br.entries().iter().all(|(k, _)| signs[*k] == expect), || {
                format!("[b{i},b{j}] is not in the sigma-eigenspace {expect}")
            });
        }
    }
    let gc = match g.generator_coords() {
        Ok(gc) => gc,
        Err(msg) => {
            c.fail(msg);
            return c;
        }
    };
    let gens: Vec<(String, bool, &SparseVec)> = GenTag::ALL
        .iter()
        .flat_map(|&t| (0..g.rank).map(move |i| (t, i)))
        .map(|(t, i)| (t.label(i), t.is_j(), gc.get(t, i)))
        .collect();
    let parity_ok = |v: &SparseVec, odd: bool| {
        let want = if odd { -1 } else { 1 };
        v.entries().iter().all(|(k, _)| signs[*k] == want)
    };
    let depth3 = gens.len() <= 18;
    let mut nested = 0;
    for (na, ja, a) in &gens {
        for (nb, jb, b) in &gens {
            let ab = g.bracket(a, b);
            nested += 1;
            c.check(parity_ok(&ab, ja ^ jb), || format!("[{na},{nb}] has the wrong sigma parity"));
            if depth3 && !ab.is_zero() {
                for (nc, jc, x) in &gens {
                    let abc = g.bracket(x, &ab);
                    nested += 1;
                    c.check(parity_ok(&abc, ja ^ jb ^ jc), || {
                        format!("[{nc},[{na},{nb}]] has the wrong sigma parity")
                    });
                }
            }
        }
    }
    c.detail("nested_brackets", nested);
    c
}

/// `e = closure(H e_i)` and `f = closure(H f_i)` against the positive and
/// negative weight spaces, and `dim e + dim k + dim f = dim g`.
pub fn triangular_check(g: &QuaternionLieAlgebra) -> CheckResult {
    let mut c = CheckResult::new("triangular");
    let amb = g.ambient_dim();
    let e_side = closure(&h_span(&g.generators.e));
    let f_side = closure(&h_span(&g.generators.f));
    let side = |positive: bool| {
        let idx: Vec<QuatMatrix> = g
            .weight_spaces
            .iter()
            .filter(|w| w.root.is_positive() == positive)
            .flat_map(|w| w.indices.iter().map(|&k| g.basis[k].clone()))
            .collect();
        span_of(amb, &idx)
    };
    let (pos, neg) = (side(true), side(false));
    c.detail("dim_e", e_side.dim()).detail("dim_f", f_side.dim()).detail("dim_k", g.k_part.len());
    c.check(e_side.span.same_span(&pos), || {
        format!("closure of H e_i (dim {}) differs from the positive weight spaces (dim {})", e_side.dim(), pos.dim())
    });
    c.check(f_side.span.same_span(&neg), || {
        format!("closure of H f_i (dim {}) differs from the negative weight spaces (dim {})", f_side.dim(), neg.dim())
    });
    let total = e_side.dim() + g.k_part.len() + f_side.dim();
    let mut all = e_side.span.clone();
    for r in f_side.span.rows() {
        all.insert(r);
    }
    for &k in &g.k_part {
        all.insert(&g.basis[k].to_sparse());
    }
    c.check(total == g.dim() && all.dim() == g.dim(), || {
        format!("dim e + dim k + dim f = {total}, span {} , dim g = {}", all.dim(), g.dim())
    });
    c
}

pub const CHECK_NAMES: [&str; 10] = [
    "dimension",
    "relations",
    "serre",
    "jacobi",
    "conjugations",
    "grading",
    "decomposition",
    "k-structure",
    "triangular",
    "constants",
];

/// Checks recorded by `build`.
pub const BUILD_CHECKS: [&str; 6] = ["dimension", "relations", "serre", "decomposition", "k-structure", "triangular"];

pub fn run_check(g: &QuaternionLieAlgebra, name: &str) -> Result<CheckResult> {
    let r = match name {
        "dimension" => dimension_check(g),
        "relations" => relations_check(g),
        "serre" => serre_check(g),
        "jacobi" => jacobi_check(g),
        "conjugations" => conjugations_check(g),
        "grading" => sigma_grading_check(g),
        "decomposition" => decomposition_check(g),
        "k-structure" => k_structure(g),
        "triangular" => triangular_check(g),
        "constants" => constants_check(g),
        other => return Err(Error::UnknownName(format!("check {other:?}"))),
    };
    Ok(r)
}

/// Closure of named generating sets compared with a named algebra.
pub fn closure_preset(preset: NamedKind, n: usize) -> Result<CheckResult> {
    let amb = 4 * n * n;
    let mut c = CheckResult::new(format!("closure-{preset}"));
    match preset {
        NamedKind::SlH => {
            // sl(n,C) + J sl(n,C) generates sl(n,H)
            let slc = build_named(NamedKind::SlC, n)?;
            let mut gens = slc.basis.clone();
            gens.extend(slc.basis.iter().map(QuatMatrix::apply_j));
            let gen_span = span_of(amb, &gens);
            let cl = closure(&gens);
            let target = build_named(NamedKind::SlH, n)?;
            let equal = cl.dim() == target.basis.len()
                && cl.basis.iter().all(|m| crate::realizations::membership(NamedKind::SlH, n, m).unwrap_or(false));
            c.detail("generators_dim", gen_span.dim())
                .detail("closure_dim", cl.dim())
                .detail("target", NamedKind::SlH.display(n))
                .detail("equals_target", equal);
            c.check(equal, || format!("closure dim {} does not equal sl({n},H)", cl.dim()));
            let i_e22 = QuatMatrix::unit(n, 1, 1, Quaternion::i());
            let j_sum = &QuatMatrix::unit(n, 0, 0, Quaternion::j()) + &QuatMatrix::unit(n, n - 1, n - 1, Quaternion::j());
            for (label, m) in [("sqrt(-1)E_22", i_e22), ("J(E_11+E_nn)", j_sum)] {
                let added = cl.contains(&m) && !gen_span.contains(&m.to_sparse());
                c.check(added, || format!("direction {label} is not a new direction of the closure"));
            }
        }
        other => {
            let alg = build_named(other, n)?;
            let cl = closure(&alg.basis);
            c.detail("dim", alg.basis.len()).detail("expected", other.dimension(n)).detail("closure_dim", cl.dim());
            c.check(alg.basis.len() == other.dimension(n), || "dimension formula".into());
            c.check(cl.dim() == alg.basis.len(), || format!("{} is not bracket-closed", other.display(n)));
            let eq = check_conjugation_equivariance(&alg.basis);
            c.check(eq.span_sigma_invariant && eq.span_tau_invariant, || {
                format!("{} is not sigma/tau invariant", other.display(n))
            });
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn a1() -> &'static QuaternionLieAlgebra {
        static G: OnceLock<QuaternionLieAlgebra> = OnceLock::new();
        G.get_or_init(|| quaternify(TypeLabel::A, 1).unwrap())
    }

    fn a2() -> &'static QuaternionLieAlgebra {
        static G: OnceLock<QuaternionLieAlgebra> = OnceLock::new();
        G.get_or_init(|| quaternify(TypeLabel::A, 2).unwrap())
    }

    #[test]
    fn supported_ranks() {
        assert_eq!(max_rank(TypeLabel::A), 9);
        assert_eq!(max_rank(TypeLabel::B), 4);
        assert_eq!(max_rank(TypeLabel::C), 5);
        assert_eq!(max_rank(TypeLabel::D), 5);
        assert!(quaternify(TypeLabel::A, 10).is_err());
        assert!(quaternify(TypeLabel::D, 2).is_err());
    }

    #[test]
    fn a1_dimensions() {
        let g = a1();
        assert_eq!(g.dim(), 15);
        assert_eq!(g.k_part.len(), 7);
        assert_eq!(g.weight_spaces.len(), 2);
        assert!(g.weight_spaces.iter().all(|w| w.indices.len() == 4));
        assert!(g.residual.is_empty());
        assert!(g.basis.iter().all(|m| crate::realizations::membership(NamedKind::SlH, 2, m).unwrap()));
    }

    #[test]
    fn a2_dimensions_and_weights() {
        let g = a2();
        assert_eq!(g.dim(), 35);
        assert_eq!(g.k_part.len(), 11);
        assert_eq!(g.hr_basis.len(), 2);
        assert_eq!(g.hr_perp_basis.len(), 9);
        let weights: BTreeSet<Vec<i64>> = weight_decomposition(g).into_keys().map(|w| w.values).collect();
        let want: BTreeSet<Vec<i64>> = [[0, 0], [2, -1], [-2, 1], [-1, 2], [1, -2], [1, 1], [-1, -1]]
            .iter()
            .map(|w| w.to_vec())
            .collect();
        assert_eq!(weights, want);
        assert_eq!(g.k_part.len() + 6 * 4, 35);
    }

    #[test]
    fn a1_alpha_space_is_h_times_e() {
        let g = a1();
        let e = &g.generators.e[0];
        let pos = g.weight_spaces.iter().find(|w| w.root.is_positive()).unwrap();
        let span = span_of(16, &pos.indices.iter().map(|&k| g.basis[k].clone()).collect::<Vec<_>>());
        assert!(span.same_span(&span_of(16, &h_span(std::slice::from_ref(e)))));
    }

    #[test]
    fn relation_examples_through_matrices() {
        let g = a1();
        let je = g.generator_matrix(GenTag::JE, 0);
        let jf = g.generator_matrix(GenTag::JF, 0);
        assert_eq!(commutator(&je, &jf), -&g.generators.h[0]);
        let jh = g.generator_matrix(GenTag::JH, 0);
        assert!(commutator(&g.generators.h[0], &jh).is_zero());
        let g = a2();
        let jh1 = g.generator_matrix(GenTag::JH, 0);
        let je2 = g.generator_matrix(GenTag::JE, 1);
        assert_eq!(commutator(&jh1, &je2), g.generators.e[1]);
    }

    #[test]
    fn all_relations_and_serre_pass() {
        for g in [a1(), a2()] {
            let reports = verify_relations(g);
            assert_eq!(reports.len(), 16);
            assert!(reports.iter().all(RelationReport::passed));
            let s = verify_serre(g);
            assert!(s.passed());
            assert_eq!(s.instances_checked, if g.rank == 1 { 0 } else { 2 * 8 });
        }
    }

    #[test]
    fn serre_examples_through_matrices() {
        let g = a2();
        let e1 = &g.generators.e[0];
        let e2 = &g.generators.e[1];
        let je1 = e1.apply_j();
        assert!(commutator(e1, &commutator(e1, e2)).is_zero());
        assert!(commutator(&je1, &commutator(&je1, e2)).is_zero());
        assert!(!commutator(e1, e2).is_zero());
    }

    #[test]
    fn structural_checks_pass_for_type_a() {
        for g in [a1(), a2()] {
            for name in CHECK_NAMES {
                let r = run_check(g, name).unwrap();
                assert!(r.passed, "{name}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn k_structure_reports_dims() {
        let r = k_structure(a1());
        assert_eq!(r.details["dim_k"], json!(7));
        let r = k_structure(a2());
        assert_eq!(r.details["dim_h_r_perp"], json!(9));
        assert_eq!(r.details["dim_kk"], json!(9));
    }

    #[test]
    fn grading_examples() {
        let g = a2();
        let je1 = g.generator_matrix(GenTag::JE, 0);
        assert_eq!(je1.sigma(), -&je1);
        let e1 = &g.generators.e[0];
        let x = commutator(e1, &g.generator_matrix(GenTag::JE, 1));
        assert!(!x.is_zero() && x.sigma() == -&x);
        let y = commutator(&je1, &g.generator_matrix(GenTag::JE, 1));
        assert!(!y.is_zero() && y.sigma() == y);
    }

    #[test]
    fn sign_agnostic_bracket_of_ijh1_jh2() {
        // [sqrt(-1) J h_1, J h_2] lies on the line of sqrt(-1) E_22
        let g = a2();
        let ijh1 = g.generators.h[0].left_scale(&Quaternion::i()).apply_j();
        let jh2 = g.generators.h[1].apply_j();
        let b = commutator(&ijh1, &jh2);
        let line = span_of(36, &[QuatMatrix::unit(3, 1, 1, Quaternion::i())]);
        assert!(!b.is_zero());
        assert!(line.contains(&b.to_sparse()));
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(run_check(a1(), "nope").is_err());
    }

    #[test]
    fn constants_check_names_a_flipped_constant() {
        let mut g = a1().clone();
        let (i, j, k, v) = g.constants.entries().next().map(|(i, j, k, v)| (i, j, k, v.clone())).unwrap();
        let row = g.constants.get(i, j);
        let flipped = row.add_scaled(&(v * rat(-2)), &SparseVec::unit(k));
        g.constants.set(i, j, flipped);
        let r = run_check(&g, "constants").unwrap();
        assert!(!r.passed);
        assert!(r.failures[0].contains(&format!("({i},{j},{k})")));
    }

    #[test]
    fn closure_preset_sl2() {
        let r = closure_preset(NamedKind::SlH, 2).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.details["closure_dim"], json!(15));
        for kind in [NamedKind::SoStar, NamedKind::Sp] {
            assert!(closure_preset(kind, 2).unwrap().passed);
        }
    }

    #[test]
    fn observed_weights_match_roots_for_a2() {
        let (obs, unresolved) = observed_weights(a2());
        assert_eq!(unresolved, 0);
        assert_eq!(obs.len(), 7);
        assert!(obs.iter().all(|(w, m)| if w.is_zero() { *m == 11 } else { *m == 4 }));
    }
}
