//! The link-file JSON schema and its conversion into engine types.
//!
//! Integer matrices are arrays of arrays with entries as decimal strings
//! (arbitrary-precision safe); sign-vector keys are strings over `+`/`-`.
//! Three modes: `family` (generalized Seifert matrices), `boundary`
//! (boundary Seifert matrix with genera), and `raw` (a C-complex matrix
//! given directly, entries as polynomial or fraction strings — the output
//! form of `transform`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use blanchfield::linalg::RfMatrix;
use blanchfield::seifert::{BoundarySeifert, CMatrix, IntMatrix, SeifertFamily, SignVec};
use blanchfield::text;
use blanchfield::{Error as CoreError, RatFunc};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Payload {
    Family {
        mu: usize,
        n: usize,
        matrices: BTreeMap<String, Vec<Vec<String>>>,
    },
    Boundary {
        genera: Vec<u32>,
        matrix: Vec<Vec<String>>,
    },
    Raw {
        mu: usize,
        n: usize,
        h: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transform: Option<TransformMeta>,
    },
}

/// Provenance block written by `transform`: the operation and, for the
/// stabilization moves, the witness isometry map (target x source, entries
/// as fraction strings; columns act on source class representatives).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformMeta {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry_map: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry_direction: Option<String>,
}

#[derive(Debug)]
pub enum FileError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Invalid(String),
    Math(CoreError),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Io(e) => write!(f, "io error: {}", e),
            FileError::Json(e) => write!(f, "malformed JSON: {}", e),
            FileError::Invalid(m) => write!(f, "invalid link file: {}", m),
            FileError::Math(e) => write!(f, "{}", e),
        }
    }
}

impl From<CoreError> for FileError {
    fn from(e: CoreError) -> Self {
        FileError::Math(e)
    }
}

fn parse_int_matrix(rows: &[Vec<String>], what: &str) -> Result<IntMatrix, FileError> {
    let mut parsed: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            let v: BigInt = s.trim().parse().map_err(|e| {
                FileError::Invalid(format!("{} entry ({},{}) = {:?}: {}", what, i, j, s, e))
            })?;
            out.push(v);
        }
        parsed.push(out);
    }
    IntMatrix::from_rows(parsed)
        .map_err(|e| FileError::Invalid(format!("{}: {}", what, e)))
}

impl LinkFile {
    pub fn load(path: &std::path::Path) -> Result<LinkFile, FileError> {
        let data = std::fs::read_to_string(path).map_err(FileError::Io)?;
        let file: LinkFile = serde_json::from_str(&data).map_err(FileError::Json)?;
        if file.schema != SCHEMA_VERSION {
            return Err(FileError::Invalid(format!(
                "unsupported schema version {}, expected {}",
                file.schema, SCHEMA_VERSION
            )));
        }
        Ok(file)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), FileError> {
        let data = self.to_json_string()?;
        std::fs::write(path, data).map_err(FileError::Io)
    }

    pub fn to_json_string(&self) -> Result<String, FileError> {
        let mut s = serde_json::to_string_pretty(self).map_err(FileError::Json)?;
        s.push('\n');
        Ok(s)
    }

    pub fn mode_name(&self) -> &'static str {
        match &self.payload {
            Payload::Family { .. } => "family",
            Payload::Boundary { .. } => "boundary",
            Payload::Raw { .. } => "raw",
        }
    }

    pub fn to_family(&self) -> Result<SeifertFamily, FileError> {
        match &self.payload {
            Payload::Family { mu, n, matrices } => {
                let mut mats = BTreeMap::new();
                for (key, rows) in matrices {
                    let sv = SignVec::parse(key)
                        .map_err(|e| FileError::Invalid(format!("sign key {:?}: {}", key, e)))?;
                    if sv.len() != *mu {
                        return Err(FileError::Invalid(format!(
                            "sign key {:?} has length {}, expected mu = {}",
                            key,
                            sv.len(),
                            mu
                        )));
                    }
                    let m = parse_int_matrix(rows, &format!("matrix {:?}", key))?;
                    mats.insert(sv, m);
                }
                SeifertFamily::new(*mu, *n, mats).map_err(FileError::Math)
            }
            _ => Err(FileError::Invalid(format!(
                "expected a family-mode file, got mode {:?}",
                self.mode_name()
            ))),
        }
    }

    pub fn to_boundary(&self) -> Result<BoundarySeifert, FileError> {
        match &self.payload {
            Payload::Boundary { genera, matrix } => {
                let a = parse_int_matrix(matrix, "boundary matrix")?;
                BoundarySeifert::new(genera.clone(), a).map_err(FileError::Math)
            }
            _ => Err(FileError::Invalid(format!(
                "expected a boundary-mode file, got mode {:?}",
                self.mode_name()
            ))),
        }
    }

    /// Assemble / compute the C-complex matrix, whatever the mode.
    pub fn to_c_matrix(&self) -> Result<CMatrix, FileError> {
        match &self.payload {
            Payload::Family { .. } => Ok(self.to_family()?.assemble()?),
            Payload::Boundary { .. } => Ok(self.to_boundary()?.boundary_matrix()?),
            Payload::Raw { mu, n, h, .. } => {
                if h.len() != *n || h.iter().any(|row| row.len() != *n) {
                    return Err(FileError::Invalid(format!(
                        "raw H must be {}x{}",
                        n, n
                    )));
                }
                let mut entries = Vec::with_capacity(n * n);
                for (i, row) in h.iter().enumerate() {
                    for (j, s) in row.iter().enumerate() {
                        let f = text::parse_ratfunc(s, *mu).map_err(|e| {
                            FileError::Invalid(format!("raw H entry ({},{}): {}", i, j, e))
                        })?;
                        entries.push(f);
                    }
                }
                Ok(CMatrix::new(*mu, RfMatrix::new(*n, *n, *mu, entries))?)
            }
        }
    }

    /// Wrap a computed C-complex matrix as a raw-mode file.
    pub fn from_c_matrix(h: &CMatrix, label: Option<String>, transform: Option<TransformMeta>) -> LinkFile {
        let n = h.n();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| h.get(i, j).to_string()).collect())
            .collect();
        LinkFile {
            schema: SCHEMA_VERSION,
            label,
            payload: Payload::Raw {
                mu: h.mu(),
                n,
                h: rows,
                transform,
            },
        }
    }
}

pub fn matrix_to_strings(m: &RfMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn parse_lambda_vector(s: &str, mu: usize, n: usize) -> Result<Vec<RatFunc>, FileError> {
    let v = text::parse_vector(s, mu).map_err(FileError::Math)?;
    if v.len() != n {
        return Err(FileError::Invalid(format!(
            "vector has {} entries, expected {}",
            v.len(),
            n
        )));
    }
    Ok(v)
}
