//! On-disk format for built algebras. Files are self-describing: type,
//! rank, realization, the basis matrices, the generators and the adapted
//! basis layout all travel with the structure constants, so a reader never
//! has to rebuild anything. Output is deterministic byte for byte.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bracket::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::QuatMatrix;
use crate::quaternification::{QuaternionLieAlgebra, WeightSpace};
use crate::realizations::ChevalleyGenerators;
use crate::report::{Manifest, ARTIFACT_VERSION};
use crate::roots::{cartan_matrix, Root, TypeLabel, Weight};
use crate::scalars::{format_rational, parse_rational, quaternion_from_strings, quaternion_to_strings};

pub const FORMAT: &str = "quatlie-algebra";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuatMatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<[String; 4]>>,
}

impl From<&QuatMatrix> for QuatMatrixJson {
    fn from(m: &QuatMatrix) -> Self {
        Self {
            n: m.n(),
            entries: m.rows().map(|r| r.iter().map(quaternion_to_strings).collect()).collect(),
        }
    }
}

impl TryFrom<&QuatMatrixJson> for QuatMatrix {
    type Error = Error;

    fn try_from(m: &QuatMatrixJson) -> Result<Self> {
        if m.n == 0 || m.entries.len() != m.n || m.entries.iter().any(|r| r.len() != m.n) {
            return Err(Error::MalformedInput(format!("matrix entries are not {0}x{0}", m.n)));
        }
        let rows = m
            .entries
            .iter()
            .map(|r| r.iter().map(|q| quaternion_from_strings(q)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(malformed)?;
        QuatMatrix::from_rows(rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConstantsJson {
    pub dim: usize,
    pub entries: Vec<(usize, usize, usize, String)>,
}

impl From<&StructureConstants> for StructureConstantsJson {
    fn from(sc: &StructureConstants) -> Self {
        Self {
            dim: sc.dim(),
            entries: sc.entries().map(|(i, j, k, c)| (i, j, k, format_rational(c))).collect(),
        }
    }
}

impl TryFrom<&StructureConstantsJson> for StructureConstants {
    type Error = Error;

    fn try_from(s: &StructureConstantsJson) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut parsed = Vec::with_capacity(s.entries.len());
        for (i, j, k, c) in &s.entries {
            let (i, j, k) = (*i, *j, *k);
            if !(i < j && j < s.dim && k < s.dim) {
                return Err(Error::MalformedInput(format!(
                    "structure constant ({i},{j},{k}) needs i < j < dim and k < dim (dim {})",
                    s.dim
                )));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::MalformedInput(format!("structure constant ({i},{j},{k}) listed twice")));
            }
            parsed.push((i, j, k, parse_rational(c).map_err(malformed)?));
        }
        Ok(StructureConstants::from_entries(s.dim, parsed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsJson {
    pub h: Vec<QuatMatrixJson>,
    pub e: Vec<QuatMatrixJson>,
    pub f: Vec<QuatMatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpaceJson {
    pub root: Root,
    pub weight: Weight,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: String,
    pub artifact_version: String,
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
    pub rank: usize,
    pub realization: String,
    pub n: usize,
    pub cartan: Vec<Vec<i64>>,
    pub dim: usize,
    pub basis: Vec<QuatMatrixJson>,
    pub generators: GeneratorsJson,
    pub structure_constants: StructureConstantsJson,
    pub weight_spaces: Vec<WeightSpaceJson>,
    pub k_part: Vec<usize>,
    pub hr_basis: Vec<usize>,
    pub hr_perp_basis: Vec<usize>,
    pub residual: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

fn malformed(e: Error) -> Error {
    match e {
        Error::MalformedInput(_) => e,
        other => Error::MalformedInput(other.to_string()),
    }
}

fn mats(ms: &[QuatMatrix]) -> Vec<QuatMatrixJson> {
    ms.iter().map(QuatMatrixJson::from).collect()
}

fn unmats(ms: &[QuatMatrixJson]) -> Result<Vec<QuatMatrix>> {
    ms.iter().map(QuatMatrix::try_from).collect()
}

impl AlgebraFile {
    /// Timings are stripped from the embedded manifest so that rebuilds are
    /// byte-identical.
    pub fn new(g: &QuaternionLieAlgebra, manifest: Option<&Manifest>) -> Self {
        let manifest = manifest.map(|m| {
            let mut m = m.clone();
            m.timings.clear();
            m
        });
        Self {
            format: FORMAT.into(),
            artifact_version: ARTIFACT_VERSION.into(),
            type_label: g.type_label,
            rank: g.rank,
            realization: g.realization.clone(),
            n: g.n,
            cartan: g.cartan.rows().to_vec(),
            dim: g.dim(),
            basis: mats(&g.basis),
            generators: GeneratorsJson {
                h: mats(&g.generators.h),
                e: mats(&g.generators.e),
                f: mats(&g.generators.f),
            },
            structure_constants: (&g.constants).into(),
            weight_spaces: g
                .weight_spaces
                .iter()
                .map(|w| WeightSpaceJson {
                    root: w.root.clone(),
                    weight: w.weight.clone(),
                    indices: w.indices.clone(),
                })
                .collect(),
            k_part: g.k_part.clone(),
            hr_basis: g.hr_basis.clone(),
            hr_perp_basis: g.hr_perp_basis.clone(),
            residual: g.residual.clone(),
            manifest,
        }
    }

    pub fn into_algebra(self) -> Result<(QuaternionLieAlgebra, Option<Manifest>)> {
        if self.format != FORMAT {
            return Err(Error::MalformedInput(format!("unknown format {:?}", self.format)));
        }
        let cm = cartan_matrix(self.type_label, self.rank).map_err(malformed)?;
        if cm.rows() != self.cartan.as_slice() {
            return Err(Error::MalformedInput(format!(
                "stored Cartan matrix does not match {}{}",
                self.type_label, self.rank
            )));
        }
        if self.n != self.type_label.ambient_n(self.rank) {
            return Err(Error::MalformedInput(format!("n = {} does not match {}{}", self.n, self.type_label, self.rank)));
        }
        if self.dim != self.basis.len() || self.dim != self.structure_constants.dim {
            return Err(Error::MalformedInput(format!(
                "dim {} disagrees with {} basis matrices / structure constants of dim {}",
                self.dim,
                self.basis.len(),
                self.structure_constants.dim
            )));
        }
        let generators = ChevalleyGenerators {
            type_label: self.type_label,
            rank: self.rank,
            ambient_n: self.n,
            h: unmats(&self.generators.h)?,
            e: unmats(&self.generators.e)?,
            f: unmats(&self.generators.f)?,
        };
        let weight_spaces = self
            .weight_spaces
            .into_iter()
            .map(|w| WeightSpace {
                root: w.root,
                weight: w.weight,
                indices: w.indices,
            })
            .collect();
        let g = QuaternionLieAlgebra::from_parts(
            self.type_label,
            self.rank,
            self.realization,
            generators,
            unmats(&self.basis)?,
            (&self.structure_constants).try_into()?,
            weight_spaces,
            self.k_part,
            self.hr_basis,
            self.hr_perp_basis,
            self.residual,
        )
        .map_err(malformed)?;
        Ok((g, self.manifest))
    }
}

pub fn to_json(g: &QuaternionLieAlgebra, manifest: Option<&Manifest>) -> String {
    let mut s = serde_json::to_string(&AlgebraFile::new(g, manifest)).expect("algebra serializes");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<(QuaternionLieAlgebra, Option<Manifest>)> {
    let file: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::MalformedInput(e.to_string()))?;
    file.into_algebra()
}
