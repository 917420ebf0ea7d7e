//! JSON algebra spec files.
//!
//! ```json
//! {"dim": 2,
//!  "braiding": {"type": "diagonal", "exponents": [[1, 0], [0, 1]]},
//!  "product": {"constants": [[["0","0"],["0","0"]],[["0","0"],["0","0"]]]},
//!  "unit": ["1", "0"]}
//! ```
//!
//! Dense braidings use `{"type": "dense", "entries": [[scalar, ..], ..]}`; a
//! diagonal braiding may carry `"base": "-q"`. `product` and `unit` are
//! optional; a missing product means `m = 0`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, Braiding, BraidingKind};
use crate::linalg::Matrix;
use crate::products::{AlgebraSpec, ProductError};
use crate::scalar::{scalar_parse, Scalar};

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad scalar at {field}: {message}")]
    Scalar { field: String, message: String },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BraidingFile {
    Diagonal {
        exponents: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<String>,
    },
    Dense {
        entries: Vec<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductFile {
    pub constants: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecFile {
    pub dim: usize,
    pub braiding: BraidingFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

fn parse_at(text: &str, field: impl FnOnce() -> String) -> Result<Scalar, SpecFileError> {
    scalar_parse(text).map_err(|e| SpecFileError::Scalar {
        field: field(),
        message: e.to_string(),
    })
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self, SpecFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, SpecFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// The braiding, not yet certified.
    pub fn braiding(&self) -> Result<Braiding, SpecFileError> {
        let n = self.dim;
        match &self.braiding {
            BraidingFile::Diagonal { exponents, base } => {
                if exponents.len() != n {
                    return Err(SpecFileError::Shape(format!("exponents must be {n}x{n}")));
                }
                let base = match base {
                    Some(b) => parse_at(b, || "braiding.base".into())?,
                    None => Scalar::q(),
                };
                Ok(Braiding::diagonal_with_base(base, exponents.clone())?)
            }
            BraidingFile::Dense { entries } => {
                let mut rows = Vec::with_capacity(entries.len());
                for (r, row) in entries.iter().enumerate() {
                    if row.len() != n * n {
                        return Err(SpecFileError::Shape(format!("dense entries must be {0}x{0}", n * n)));
                    }
                    let parsed = row
                        .iter()
                        .enumerate()
                        .map(|(c, t)| parse_at(t, || format!("braiding.entries[{r}][{c}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(parsed);
                }
                if rows.len() != n * n {
                    return Err(SpecFileError::Shape(format!("dense entries must be {0}x{0}", n * n)));
                }
                Ok(Braiding::dense(n, Matrix::from_rows(rows))?)
            }
        }
    }

    /// Builds the algebra; fails if the braiding violates the braid relation.
    pub fn to_algebra(&self) -> Result<AlgebraSpec, SpecFileError> {
        let n = self.dim;
        let braiding = self.braiding()?;
        let constants = match &self.product {
            None => vec![vec![vec![Scalar::zero(); n]; n]; n],
            Some(p) => {
                let shape_ok = p.constants.len() == n
                    && p.constants.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
                if !shape_ok {
                    return Err(SpecFileError::Shape(format!("product constants must be {n}x{n}x{n}")));
                }
                let mut out = Vec::with_capacity(n);
                for (i, plane) in p.constants.iter().enumerate() {
                    let mut rows = Vec::with_capacity(n);
                    for (j, cell) in plane.iter().enumerate() {
                        rows.push(
                            cell.iter()
                                .enumerate()
                                .map(|(k, t)| parse_at(t, || format!("product.constants[{i}][{j}][{k}]")))
                                .collect::<Result<Vec<_>, _>>()?,
                        );
                    }
                    out.push(rows);
                }
                out
            }
        };
        let unit = match &self.unit {
            None => None,
            Some(u) => {
                if u.len() != n {
                    return Err(SpecFileError::Shape(format!("unit must have {n} entries")));
                }
                Some(
                    u.iter()
                        .enumerate()
                        .map(|(k, t)| parse_at(t, || format!("unit[{k}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
        };
        Ok(AlgebraSpec::new(braiding, constants, unit)?)
    }

    pub fn from_algebra(a: &AlgebraSpec) -> Self {
        let braiding = match a.braiding().kind() {
            BraidingKind::Diagonal { base, exponents } => BraidingFile::Diagonal {
                exponents: exponents.clone(),
                base: (*base != Scalar::q()).then(|| base.to_string()),
            },
            BraidingKind::Dense { matrix } => BraidingFile::Dense {
                entries: matrix
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            },
        };
        let product = (!a.has_zero_product()).then(|| ProductFile {
            constants: a
                .constants()
                .iter()
                .map(|p| p.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
                .collect(),
        });
        Self {
            dim: a.dim(),
            braiding,
            product,
            unit: a.unit().map(|u| u.iter().map(ToString::to_string).collect()),
        }
    }
}

pub fn load_algebra(path: &Path) -> Result<AlgebraSpec, SpecFileError> {
    SpecFile::load(path)?.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ExteriorSpec;

    #[test]
    fn diagonal_without_product() {
        let f = SpecFile::from_json(r#"{"dim":2,"braiding":{"type":"diagonal","exponents":[[1,0],[0,0]]}}"#).unwrap();
        let a = f.to_algebra().unwrap();
        assert!(a.has_zero_product());
        assert!(a.is_yb());
        assert_eq!(a.braiding().diagonal_coefficient(1, 1), Some(&Scalar::q()));
    }

    #[test]
    fn exterior_round_trip() {
        for unital in [false, true] {
            let a = ExteriorSpec::new(2).unital(unital).to_algebra_spec();
            let f = SpecFile::from_algebra(&a);
            let back = SpecFile::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
            let b = back.to_algebra().unwrap();
            assert_eq!(b.constants(), a.constants());
            assert_eq!(b.unit(), a.unit());
            assert_eq!(b.braiding().matrix(), a.braiding().matrix());
            assert!(b.is_yb());
        }
    }

    #[test]
    fn errors_are_located() {
        let e = SpecFile::from_json(r#"{"dim":1,"braiding":{"type":"dense","entries":[["q^"]]}}"#)
            .unwrap()
            .braiding()
            .unwrap_err();
        assert!(e.to_string().contains("braiding.entries[0][0]"), "{e}");
        let e = SpecFile::from_json(r#"{"dim":2,"braiding":{"type":"dense","entries":[["1"]]}}"#)
            .unwrap()
            .braiding()
            .unwrap_err();
        assert!(matches!(e, SpecFileError::Shape(_)));
        assert!(SpecFile::from_json(r#"{"dim":2}"#).is_err());
    }
}
