// SPDX-License-Identifier: Apache-2.0

//! JSON interchange types. Field order is the emitted key order.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use subclassical_core::classical::{BirkhoffDecomposition, Dilation, StochasticMatrix};
use subclassical_core::numerics::{ComplexMatrix, ProbabilityVector, RealMatrix};
use subclassical_core::qext::{CPMap, SubclassicalClass};
use subclassical_core::trajectories::BipartiteUnitary;
use subclassical_core::Complex64;

use crate::error::CliError;

/// Dense complex matrix, row-major `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), data: m.data().iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Validation(format!(
                "matrix declares {}x{} but carries {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        let data = self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }
}

pub fn real_rows(m: &RealMatrix) -> Vec<Vec<f64>> {
    m.rows().map(|r| r.to_vec()).collect()
}

/// Square real matrix given by rows; `n` is optional on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StochasticJson {
    pub n: Option<usize>,
    pub rows: Vec<Vec<f64>>,
}

impl From<&StochasticMatrix> for StochasticJson {
    fn from(q: &StochasticMatrix) -> Self {
        Self { n: Some(q.n()), rows: q.to_rows() }
    }
}

impl StochasticJson {
    pub fn to_real(&self) -> Result<RealMatrix, CliError> {
        let n = self.rows.len();
        if let Some(declared) = self.n {
            if declared != n {
                return Err(CliError::Validation(format!("n = {declared} but {n} rows given")));
            }
        }
        if n == 0 {
            return Err(CliError::Validation("empty matrix".into()));
        }
        if let Some((i, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(CliError::Validation(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Ok(RealMatrix::from_rows(&self.rows)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilationJson {
    pub sys_size: usize,
    pub env_size: usize,
    pub nu: Vec<f64>,
    /// `forward[x·|F| + y] = x′·|F| + y′` for `T(x, y) = (x′, y′)`.
    pub forward: Vec<usize>,
}

impl From<&Dilation> for DilationJson {
    fn from(d: &Dilation) -> Self {
        Self {
            sys_size: d.sys_size(),
            env_size: d.env_size(),
            nu: d.nu().weights().to_vec(),
            forward: d.t().forward().to_vec(),
        }
    }
}

/// Kraus family, or a Choi matrix on `dim ⊗ dim` (input only).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CPMapJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi: Option<MatrixJson>,
}

/// Choi eigenvalues below minus this are rejected as not completely positive.
pub const CP_VIOLATION: f64 = 1e-6;

impl From<&CPMap> for CPMapJson {
    fn from(m: &CPMap) -> Self {
        Self { dim: m.dim(), kraus: Some(m.kraus().iter().map(MatrixJson::from).collect()), choi: None }
    }
}

impl CPMapJson {
    pub fn to_cpmap(&self) -> Result<CPMap, CliError> {
        let map = match (&self.kraus, &self.choi) {
            (Some(kraus), None) => {
                let ops = kraus.iter().map(MatrixJson::to_matrix).collect::<Result<Vec<_>, _>>()?;
                CPMap::from_kraus(ops)?
            }
            (None, Some(choi)) => CPMap::from_choi(self.dim, &choi.to_matrix()?, CP_VIOLATION)?,
            _ => return Err(CliError::Validation("give exactly one of \"kraus\" and \"choi\"".into())),
        };
        if map.dim() != self.dim {
            return Err(CliError::Validation(format!(
                "dim = {} but the operators act on dimension {}",
                self.dim,
                map.dim()
            )));
        }
        Ok(map)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationJson {
    pub subclassical: bool,
    pub doubly: bool,
    pub measurement: bool,
    pub purely: bool,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
    pub leakage: f64,
    #[serde(rename = "B_norm")]
    pub b_norm: f64,
    #[serde(rename = "C_norm")]
    pub c_norm: f64,
    pub tolerance: f64,
    pub unitality_error: f64,
    pub choi_min_eigenvalue: f64,
    pub warnings: Vec<String>,
}

impl ClassificationJson {
    pub fn new(
        c: &SubclassicalClass,
        tolerance: f64,
        unitality_error: f64,
        choi_min_eigenvalue: f64,
    ) -> Self {
        Self {
            subclassical: c.is_subclassical,
            doubly: c.is_doubly,
            measurement: c.is_measurement,
            purely: c.is_purely,
            q: real_rows(&c.q),
            leakage: c.leakage,
            b_norm: c.b_norm,
            c_norm: c.c_norm,
            tolerance,
            unitality_error,
            choi_min_eigenvalue,
            warnings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteJson {
    pub sys_dim: usize,
    pub env_dim: usize,
    pub u: MatrixJson,
    pub env_state: Vec<f64>,
}

impl BipartiteJson {
    pub fn to_bipartite(&self) -> Result<BipartiteUnitary, CliError> {
        let nu = ProbabilityVector::new(self.env_state.clone())?;
        Ok(BipartiteUnitary::new(self.sys_dim, self.env_dim, self.u.to_matrix()?, nu)?)
    }
}

impl From<&BipartiteUnitary> for BipartiteJson {
    fn from(bu: &BipartiteUnitary) -> Self {
        Self {
            sys_dim: bu.sys_dim(),
            env_dim: bu.env_dim(),
            u: bu.unitary().into(),
            env_state: bu.env_state().weights().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BirkhoffJson {
    pub weights: Vec<f64>,
    pub permutations: Vec<Vec<usize>>,
}

impl From<&BirkhoffDecomposition> for BirkhoffJson {
    fn from(b: &BirkhoffDecomposition) -> Self {
        Self { weights: b.weights().weights().to_vec(), permutations: b.permutations().to_vec() }
    }
}

/// Outcome counts keyed by outcome index, emitted in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct Counts(pub Vec<u64>);

impl Serialize for Counts {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (y, k) in self.0.iter().enumerate() {
            map.serialize_entry(&y.to_string(), k)?;
        }
        map.end()
    }
}
