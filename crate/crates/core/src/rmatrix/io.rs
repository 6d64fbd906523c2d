use serde::{Deserialize, Serialize};

use super::RMatrix;
use crate::error::{Error, Result};
use crate::scalars::QScalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrixEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: QScalar,
}

/// JSON form `{"n": .., "entries": [{"i", "j", "k", "l", "value"}]}`; omitted entries are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrixFile {
    pub n: usize,
    pub entries: Vec<RMatrixEntry>,
}

impl From<&RMatrix> for RMatrixFile {
    fn from(r: &RMatrix) -> Self {
        let entries = r
            .nonzero()
            .map(|((i, j, k, l), v)| RMatrixEntry { i, j, k, l, value: v.clone() })
            .collect();
        RMatrixFile { n: r.n(), entries }
    }
}

impl From<RMatrix> for RMatrixFile {
    fn from(r: RMatrix) -> Self {
        RMatrixFile::from(&r)
    }
}

impl TryFrom<RMatrixFile> for RMatrix {
    type Error = Error;
    fn try_from(f: RMatrixFile) -> Result<Self> {
        RMatrix::try_from(&f)
    }
}

impl TryFrom<&RMatrixFile> for RMatrix {
    type Error = Error;
    fn try_from(f: &RMatrixFile) -> Result<Self> {
        let mut r = RMatrix::zeros(f.n);
        for e in &f.entries {
            if [e.i, e.j, e.k, e.l].iter().any(|&x| x >= f.n) {
                return Err(Error::IndexOutOfRange(format!("entry ({}, {}, {}, {}) with n = {}", e.i, e.j, e.k, e.l, f.n)));
            }
            let cur = r.get(e.i, e.j, e.k, e.l) + &e.value;
            r.set(e.i, e.j, e.k, e.l, cur);
        }
        Ok(r)
    }
}

impl RMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RMatrixFile::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: RMatrixFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        RMatrix::try_from(&f)
    }
}
