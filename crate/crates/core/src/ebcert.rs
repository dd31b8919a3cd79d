//! Entanglement-breaking certificates for the switch of two complete erasure
//! channels `E₀(ρ) = |φ⟩⟨φ|`, `F₀(ρ) = |ψ⟩⟨ψ|`.
//!
//! The Choi state `Γ` on `A ⊗ B ⊗ C` (reference, system, control) splits as
//! `(2/d) Σ + ((d−2)/d) Θ`. `Θ` is a sum of product terms. `Σ` is an
//! isometric image, acting on `C` only, of a state `Ξ` whose `A` marginal
//! lives on a two-dimensional subspace, so Peres–Horodecki decides its
//! separability.

use crate::channels::{erasure_channel, EbStatus, EbVerdict};
use crate::error::{Error, Result};
use crate::linalg::{
    self, c, column, conjugate, herm_eig, max_abs_diff, max_entangled, partial_transpose, projector, tensor,
    tensor_all, ComplexMatrix, ComplexVector, DensityMatrix, SubsystemDims,
};
use crate::random;
use crate::switch::{switch_channel, ControlState, SwitchedChannel};
use crate::tolerance;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct ErasurePair {
    d: usize,
    phi: ComplexVector,
    psi: ComplexVector,
    omega: ControlState,
}

impl ErasurePair {
    pub fn new(phi: ComplexVector, psi: ComplexVector, omega: ControlState) -> Result<Self> {
        let d = phi.len();
        if d < 2 || psi.len() != d {
            return Err(Error::Dimension(format!(
                "erasure outputs must share a dimension of at least 2, got {} and {}",
                phi.len(),
                psi.len()
            )));
        }
        for v in [&phi, &psi] {
            let norm = v.norm();
            if (norm - 1.0).abs() > tolerance::UNIT_NORM {
                return Err(Error::NotUnitVector { norm });
            }
        }
        Ok(ErasurePair { d, phi, psi, omega })
    }

    /// Haar-random outputs and a Hilbert–Schmidt random control.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Self> {
        let phi = random::unit_vector(rng, d);
        let psi = random::unit_vector(rng, d);
        let omega = ControlState::new(random::mixed_state(rng, 2))?;
        ErasurePair::new(phi, psi, omega)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn phi(&self) -> &ComplexVector {
        &self.phi
    }

    pub fn psi(&self) -> &ComplexVector {
        &self.psi
    }

    pub fn omega(&self) -> &ControlState {
        &self.omega
    }

    pub fn switched(&self) -> Result<SwitchedChannel> {
        let e0 = erasure_channel(&self.phi, self.d)?;
        let f0 = erasure_channel(&self.psi, self.d)?;
        switch_channel(&e0, &f0, &self.omega)
    }
}

/// `Γ = (I_A ⊗ S_ω(E₀, F₀))(|Φ⁺⟩⟨Φ⁺|)`, factors `[A, B, C] = [d, d, 2]`.
pub fn switched_erasure_choi(pair: &ErasurePair) -> Result<DensityMatrix> {
    let d = pair.d;
    let sw = pair.switched()?;
    let bell = DensityMatrix::pure(&max_entangled(d))?;
    sw.base.apply_extended(&bell, &SubsystemDims::new(vec![d, d])?)
}

/// Projector onto `span{φ̄, ψ̄}`, padded to rank two with the computational
/// basis vector farthest from `φ̄` when the two are parallel.
pub fn span_projector(phi_bar: &ComplexVector, psi_bar: &ComplexVector) -> ComplexMatrix {
    let d = phi_bar.len();
    let e1 = phi_bar / c(phi_bar.norm(), 0.0);
    let orth = |v: &ComplexVector| v - &e1 * e1.dotc(v);
    let mut second = orth(psi_bar);
    if second.norm() <= tolerance::RANK.sqrt() {
        second = (0..d)
            .map(|k| orth(&linalg::basis_ket(d, k)))
            .fold(ComplexVector::zeros(d), |best, v| if v.norm() > best.norm() + 1e-12 { v } else { best });
    }
    let e2 = &second / c(second.norm(), 0.0);
    projector(&e1) + projector(&e2)
}

/// `Ξ(ω, φ, ψ)` on `A ⊗ C`.
pub fn xi_matrix(omega: &ComplexMatrix, phi: &ComplexVector, psi: &ComplexVector) -> ComplexMatrix {
    let (phi_bar, psi_bar) = (conjugate(phi), conjugate(psi));
    let p = span_projector(&phi_bar, &psi_bar);
    let ket = |b: usize| column(&linalg::basis_ket(2, b));
    let unit = |a: usize, b: usize| &ket(a) * ket(b).adjoint();
    let cross = column(&phi_bar) * column(&psi_bar).adjoint();
    let half = c(0.5, 0.0);
    (tensor(&p, &unit(0, 0)) * omega[(0, 0)]
        + tensor(&cross, &unit(0, 1)) * omega[(0, 1)]
        + tensor(&cross.adjoint(), &unit(1, 0)) * omega[(1, 0)]
        + tensor(&p, &unit(1, 1)) * omega[(1, 1)])
        * half
}

/// `V = |φ⟩ ⊗ |0⟩⟨0| + |ψ⟩ ⊗ |1⟩⟨1|`, mapping `C` into `B ⊗ C`.
pub fn control_isometry(phi: &ComplexVector, psi: &ComplexVector) -> ComplexMatrix {
    let p0 = projector(&linalg::basis_ket(2, 0));
    let p1 = projector(&linalg::basis_ket(2, 1));
    tensor(&column(phi), &p0) + tensor(&column(psi), &p1)
}

#[derive(Clone, Debug)]
pub struct SigmaTheta {
    pub sigma: ComplexMatrix,
    /// Absent for `d = 2`, where its weight vanishes.
    pub theta: Option<ComplexMatrix>,
    pub xi: ComplexMatrix,
    pub projector: ComplexMatrix,
    pub weights: (f64, f64),
}

pub fn decompose_sigma_theta(pair: &ErasurePair) -> SigmaTheta {
    let d = pair.d;
    let omega = pair.omega.matrix();
    let xi = xi_matrix(omega, &pair.phi, &pair.psi);
    let v = control_isometry(&pair.phi, &pair.psi);
    let lift = tensor(&linalg::identity(d), &v);
    let sigma = &lift * &xi * lift.adjoint();
    let p = span_projector(&conjugate(&pair.phi), &conjugate(&pair.psi));
    let theta = (d > 2).then(|| {
        let rest = (linalg::identity(d) - &p) / c((d - 2) as f64, 0.0);
        let p0 = projector(&linalg::basis_ket(2, 0));
        let p1 = projector(&linalg::basis_ket(2, 1));
        tensor_all(&[rest.clone(), projector(&pair.phi), p0]) * omega[(0, 0)]
            + tensor_all(&[rest, projector(&pair.psi), p1]) * omega[(1, 1)]
    });
    let df = d as f64;
    SigmaTheta {
        sigma,
        theta,
        xi,
        projector: p,
        weights: (2.0 / df, (df - 2.0) / df),
    }
}

#[derive(Clone, Debug)]
pub struct EBCertificate {
    pub gamma: DensityMatrix,
    pub parts: SigmaTheta,
    /// `‖Γ − (2/d)Σ − ((d−2)/d)Θ‖_max`.
    pub reconstruction_residual: f64,
    /// `‖Ξ(ω,φ,ψ)^{T_C} − Ξ(ωᵀ,ψ,φ)‖_max`.
    pub transpose_residual: f64,
    /// `‖V†V − I‖_max`.
    pub isometry_residual: f64,
    pub min_pt_eig: f64,
    pub ppt_ok: bool,
}

impl EBCertificate {
    /// Every check within its threshold.
    pub fn holds(&self) -> bool {
        self.ppt_ok
            && self.reconstruction_residual <= 1e-9
            && self.transpose_residual <= 1e-9
            && self.isometry_residual <= 1e-9
    }
}

pub fn certify_entanglement_breaking(pair: &ErasurePair) -> Result<EBCertificate> {
    let gamma = switched_erasure_choi(pair)?;
    let parts = decompose_sigma_theta(pair);
    let (ws, wt) = parts.weights;
    let mut rebuilt = &parts.sigma * c(ws, 0.0);
    if let Some(theta) = &parts.theta {
        rebuilt += theta * c(wt, 0.0);
    }
    let reconstruction_residual = max_abs_diff(gamma.matrix(), &rebuilt);

    let dims = SubsystemDims::new(vec![pair.d, 2])?;
    let xi_pt = partial_transpose(&parts.xi, &dims, 1)?;
    let swapped = xi_matrix(&pair.omega.matrix().transpose(), &pair.psi, &pair.phi);
    let transpose_residual = max_abs_diff(&xi_pt, &swapped);

    let v = control_isometry(&pair.phi, &pair.psi);
    let isometry_residual = max_abs_diff(&(v.adjoint() * &v), &linalg::identity(2));

    let min_pt_eig = herm_eig(&xi_pt)?.min_value();
    Ok(EBCertificate {
        gamma,
        parts,
        reconstruction_residual,
        transpose_residual,
        isometry_residual,
        min_pt_eig,
        ppt_ok: min_pt_eig >= -tolerance::PPT,
    })
}

/// Entanglement-breaking verdict for the switched pair, via the certificate.
pub fn switched_erasure_verdict(pair: &ErasurePair) -> Result<EbVerdict> {
    let cert = certify_entanglement_breaking(pair)?;
    let status = if cert.holds() { EbStatus::EntanglementBreaking } else { EbStatus::Undetermined };
    Ok(EbVerdict {
        status,
        min_pt_eigenvalue: cert.min_pt_eig,
        witness: None,
    })
}
