//! Coherent superposition of a carrier over `N` alternative channels, each
//! extended to act on the vacuum, and the Kraus-rank argument showing such
//! superpositions of noisy channels never decode perfectly.

use crate::channels::{kraus_rank, Channel};
use crate::error::{Error, Result};
use crate::linalg::{self, c, column, span_rank, tensor, ComplexMatrix, C64};
use crate::tolerance;

#[derive(Clone, Debug)]
pub struct PathConfig {
    channels: Vec<Channel>,
    phi: Vec<C64>,
    alphas: Vec<Vec<C64>>,
}

impl PathConfig {
    /// `alphas` defaults to the uniform vacuum amplitudes `1/√r` per channel.
    pub fn new(channels: Vec<Channel>, phi: Vec<C64>, alphas: Option<Vec<Vec<C64>>>) -> Result<Self> {
        let n = channels.len();
        if n == 0 {
            return Err(Error::Dimension("path superposition needs at least one channel".into()));
        }
        if phi.len() != n {
            return Err(Error::Dimension(format!("{} path amplitudes for {} channels", phi.len(), n)));
        }
        let d = channels[0].dim_in();
        if channels.iter().any(|ch| !ch.is_endomorphic() || ch.dim_in() != d) {
            return Err(Error::Dimension("all paths must carry channels on the same space".into()));
        }
        check_unit("path state", &phi)?;
        let alphas = match alphas {
            Some(a) => a,
            None => channels
                .iter()
                .map(|ch| {
                    let r = ch.kraus().len();
                    vec![c(1.0 / (r as f64).sqrt(), 0.0); r]
                })
                .collect(),
        };
        if alphas.len() != n {
            return Err(Error::Dimension(format!("{} vacuum-amplitude lists for {} channels", alphas.len(), n)));
        }
        for (j, (a, ch)) in alphas.iter().zip(&channels).enumerate() {
            if a.len() != ch.kraus().len() {
                return Err(Error::Dimension(format!(
                    "channel {j} has {} Kraus operators but {} vacuum amplitudes",
                    ch.kraus().len(),
                    a.len()
                )));
            }
            check_unit(&format!("vacuum amplitudes of channel {j}"), a)?;
        }
        Ok(PathConfig { channels, phi, alphas })
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn phi(&self) -> &[C64] {
        &self.phi
    }

    pub fn alphas(&self) -> &[Vec<C64>] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.channels[0].dim_in()
    }

    /// Kraus operator `E_{i₁…i_N}` for the index tuple `idx`.
    pub fn kraus_at(&self, idx: &[usize]) -> ComplexMatrix {
        let d = self.dim();
        let n = self.len();
        let mut out = ComplexMatrix::zeros(n * d, d);
        for j in 0..n {
            let mut amp = self.phi[j];
            for (k, &i) in idx.iter().enumerate() {
                if k != j {
                    amp *= self.alphas[k][i];
                }
            }
            let tag = column(&linalg::basis_ket(n, j));
            out += tensor(&self.channels[j].kraus()[idx[j]], &tag) * amp;
        }
        out
    }
}

fn check_unit(what: &str, v: &[C64]) -> Result<()> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > tolerance::UNIT_NORM {
        return Err(Error::Contract(format!("{what} has norm {norm}, expected 1")));
    }
    Ok(())
}

/// Mixed-radix enumeration of all Kraus index tuples, last index fastest.
fn index_tuples(radices: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = radices.iter().product();
    (0..total)
        .map(|mut flat| {
            let mut idx = vec![0; radices.len()];
            for (slot, &r) in idx.iter_mut().zip(radices).rev() {
                *slot = flat % r;
                flat /= r;
            }
            idx
        })
        .collect()
}

/// The superposition channel `d → N·d`, output ordered `[system, path]`.
pub fn path_superposition(cfg: &PathConfig) -> Result<Channel> {
    let radices: Vec<usize> = cfg.channels.iter().map(|ch| ch.kraus().len()).collect();
    let kraus = index_tuples(&radices).iter().map(|idx| cfg.kraus_at(idx)).collect();
    Channel::new(cfg.dim(), cfg.len() * cfg.dim(), kraus)
}

/// `N + 1` Kraus operators of the superposition that are linearly
/// independent whenever every path is noisy and every `φⱼ ≠ 0`.
pub fn independence_witness(cfg: &PathConfig) -> Result<Vec<ComplexMatrix>> {
    let mut p = Vec::with_capacity(cfg.len());
    let mut q = Vec::with_capacity(cfg.len());
    for (j, ch) in cfg.channels.iter().enumerate() {
        if cfg.phi[j].norm() <= tolerance::PROBABILITY_ZERO {
            return Err(Error::WitnessUnavailable(format!("path {j} has zero amplitude")));
        }
        if kraus_rank(ch) < 2 {
            return Err(Error::WitnessUnavailable(format!("channel on path {j} is noiseless")));
        }
        let pj = argmax_abs(&cfg.alphas[j]);
        let ops = ch.kraus();
        let qj = (0..ops.len())
            .find(|&i| span_rank(&[ops[pj].clone(), ops[i].clone()]) == 2)
            .ok_or_else(|| {
                Error::WitnessUnavailable(format!("no Kraus operator of path {j} is independent of operator {pj}"))
            })?;
        p.push(pj);
        q.push(qj);
    }
    let mut out = vec![cfg.kraus_at(&p)];
    for j in 0..cfg.len() {
        let mut idx = p.clone();
        idx[j] = q[j];
        out.push(cfg.kraus_at(&idx));
    }
    Ok(out)
}

fn argmax_abs(v: &[C64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best })
        .0
}

/// Quantum packing bound `r · d_in ≤ d_out`, necessary for perfect decoding.
pub fn packing_bound_correctable(ch: &Channel) -> bool {
    kraus_rank(ch) * ch.dim_in() <= ch.dim_out()
}
