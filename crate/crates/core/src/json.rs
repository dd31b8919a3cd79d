//! JSON wire formats. Complex numbers travel as `[re, im]` pairs.
//!
//! * Channel: `{"dim_in": 2, "dim_out": 2, "kraus": [[[re, im], ...], ...]}`,
//!   each Kraus operator flattened row-major.
//! * Path configuration: `{"phi": [[re, im], ...], "channels": [Channel, ...],
//!   "alphas": [[[re, im], ...], ...] | null}`.
//! * Erasure pair: `{"d": 3, "phi": [...], "psi": [...], "omega": [[[re, im],
//!   [re, im]], [[re, im], [re, im]]]}` with `omega` given as nested rows.

use serde::{Deserialize, Serialize};

use crate::channels::Channel;
use crate::ebcert::ErasurePair;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, ComplexVector, DensityMatrix, C64};
use crate::paths::PathConfig;
use crate::switch::ControlState;

pub type ComplexJson = [f64; 2];

pub fn complex_to_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn complex_from_json(z: ComplexJson) -> C64 {
    c(z[0], z[1])
}

pub fn vector_to_json(v: &[C64]) -> Vec<ComplexJson> {
    v.iter().copied().map(complex_to_json).collect()
}

pub fn vector_from_json(v: &[ComplexJson]) -> Vec<C64> {
    v.iter().copied().map(complex_from_json).collect()
}

/// Nested rows, `[[[re, im], ...], ...]`.
pub fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<ComplexJson>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<ComplexJson>]) -> Result<ComplexMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if n == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("matrix rows must be non-empty and of equal length".into()));
    }
    Ok(ComplexMatrix::from_fn(n, m, |i, j| complex_from_json(rows[i][j])))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<Vec<ComplexJson>>,
}

impl ChannelJson {
    pub fn from_channel(ch: &Channel) -> Self {
        let kraus = ch
            .kraus()
            .iter()
            .map(|k| (0..k.nrows()).flat_map(|i| (0..k.ncols()).map(move |j| complex_to_json(k[(i, j)]))).collect())
            .collect();
        ChannelJson {
            dim_in: ch.dim_in(),
            dim_out: ch.dim_out(),
            kraus,
        }
    }

    pub fn to_channel(&self) -> Result<Channel> {
        let len = self.dim_in * self.dim_out;
        let kraus = self
            .kraus
            .iter()
            .map(|flat| {
                if flat.len() != len {
                    return Err(Error::Parse(format!(
                        "Kraus operator has {} entries, expected {}",
                        flat.len(),
                        len
                    )));
                }
                Ok(ComplexMatrix::from_row_iterator(
                    self.dim_out,
                    self.dim_in,
                    flat.iter().copied().map(complex_from_json),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Channel::new(self.dim_in, self.dim_out, kraus)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathConfigJson {
    pub phi: Vec<ComplexJson>,
    pub channels: Vec<ChannelJson>,
    #[serde(default)]
    pub alphas: Option<Vec<Vec<ComplexJson>>>,
}

impl PathConfigJson {
    pub fn from_config(cfg: &PathConfig) -> Self {
        PathConfigJson {
            phi: vector_to_json(cfg.phi()),
            channels: cfg.channels().iter().map(ChannelJson::from_channel).collect(),
            alphas: Some(cfg.alphas().iter().map(|a| vector_to_json(a)).collect()),
        }
    }

    pub fn to_config(&self) -> Result<PathConfig> {
        let channels = self.channels.iter().map(ChannelJson::to_channel).collect::<Result<Vec<_>>>()?;
        let alphas = self.alphas.as_ref().map(|a| a.iter().map(|v| vector_from_json(v)).collect());
        PathConfig::new(channels, vector_from_json(&self.phi), alphas)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErasurePairJson {
    pub d: usize,
    pub phi: Vec<ComplexJson>,
    pub psi: Vec<ComplexJson>,
    pub omega: Vec<Vec<ComplexJson>>,
}

impl ErasurePairJson {
    pub fn from_pair(pair: &ErasurePair) -> Self {
        let as_vec = |v: &ComplexVector| vector_to_json(v.as_slice());
        ErasurePairJson {
            d: pair.d(),
            phi: as_vec(pair.phi()),
            psi: as_vec(pair.psi()),
            omega: matrix_to_rows(pair.omega().matrix()),
        }
    }

    pub fn to_pair(&self) -> Result<ErasurePair> {
        if self.phi.len() != self.d || self.psi.len() != self.d {
            return Err(Error::Parse(format!("phi and psi must have length d = {}", self.d)));
        }
        let omega = ControlState::new(DensityMatrix::new(matrix_from_rows(&self.omega)?)?)?;
        ErasurePair::new(
            ComplexVector::from_vec(vector_from_json(&self.phi)),
            ComplexVector::from_vec(vector_from_json(&self.psi)),
            omega,
        )
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
