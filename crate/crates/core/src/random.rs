//! Seeded samplers for states, unitaries and channels.
//!
//! Everything here draws from a caller-supplied RNG so that sweeps stay
//! reproducible; [`rng`] builds the ChaCha stream used across the crate.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::Channel;
use crate::linalg::{c, projector, ComplexMatrix, ComplexVector, DensityMatrix, C64};

/// Deterministic generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Haar-random unit vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| gaussian_complex(rng));
    let n = v.norm();
    v / c(n, 0.0)
}

/// Haar-random isometry `rows × cols` (`rows ≥ cols`), via QR with phase fix.
pub fn isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rng, rows, cols);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..cols {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / c(d.norm(), 0.0) } else { c(1.0, 0.0) };
        for i in 0..rows {
            q[(i, k)] *= phase;
        }
    }
    q
}

pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    isometry(rng, d, d)
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    DensityMatrix::pure(&unit_vector(rng, d)).expect("unit vector")
}

/// Full-rank mixed state from the Hilbert–Schmidt ensemble.
pub fn mixed_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    let g = ginibre(rng, d, d);
    let m = &g * g.adjoint();
    let t = crate::linalg::trace(&m).re;
    DensityMatrix::new(m / c(t, 0.0)).expect("Hilbert-Schmidt sample is a state")
}

/// Random channel with `kraus_count` operators, cut from a Haar isometry.
pub fn channel<R: Rng + ?Sized>(rng: &mut R, dim_in: usize, dim_out: usize, kraus_count: usize) -> Channel {
    let v = isometry(rng, dim_out * kraus_count, dim_in);
    let kraus = (0..kraus_count)
        .map(|k| v.rows(k * dim_out, dim_out).into_owned())
        .collect();
    Channel::new(dim_in, dim_out, kraus).expect("isometry blocks are trace preserving")
}

/// Probability vector drawn uniformly from the simplex.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Remix a Kraus list through an isometry `V` (`Kᵢ' = Σⱼ Vᵢⱼ Kⱼ`).
pub fn remix_kraus<R: Rng + ?Sized>(rng: &mut R, ch: &Channel, extra: usize) -> Channel {
    let n = ch.kraus().len();
    let v = isometry(rng, n + extra, n);
    let kraus = (0..n + extra)
        .map(|i| {
            ch.kraus()
                .iter()
                .enumerate()
                .fold(ComplexMatrix::zeros(ch.dim_out(), ch.dim_in()), |acc, (j, k)| {
                    acc + k * v[(i, j)]
                })
        })
        .collect();
    Channel::new(ch.dim_in(), ch.dim_out(), kraus).expect("isometric remix preserves trace")
}

/// Equal-weight control ket `(|0⟩ + e^{iθ}|1⟩)/√2` with random phase.
pub fn equal_weight_ket<R: Rng + ?Sized>(rng: &mut R) -> ComplexVector {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexVector::from_column_slice(&[c(s, 0.0), C64::from_polar(s, theta)])
}

pub fn density_from_vector(v: &ComplexVector) -> DensityMatrix {
    DensityMatrix::new(projector(v)).expect("normalized vector")
}
