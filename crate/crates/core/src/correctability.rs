//! Knill–Laflamme checks, classification of qubit channels whose switched
//! version is correctable, and explicit recovery channels.

use serde::Serialize;

use crate::channels::{is_entanglement_breaking, Channel, EbStatus, EbVerdict};
use crate::error::{Error, Result};
use crate::linalg::{
    self, bloch_operator, c, column, herm_eig, max_abs, max_abs_diff, pauli, tensor, trace, ComplexMatrix,
    ComplexVector,
};
use crate::switch::{switch_channel, switch_kraus, ControlState};
use crate::tolerance;

#[derive(Clone, Debug)]
pub struct KLReport {
    pub satisfied: bool,
    /// `σᵢⱼ = Tr(Kᵢ†Kⱼ)/d`.
    pub sigma: ComplexMatrix,
    /// `maxᵢⱼ ‖Kᵢ†Kⱼ − σᵢⱼ I‖_max`.
    pub residual: f64,
}

pub fn kl_check(kraus: &[ComplexMatrix]) -> Result<KLReport> {
    kl_check_with(kraus, tolerance::KNILL_LAFLAMME)
}

pub fn kl_check_with(kraus: &[ComplexMatrix], threshold: f64) -> Result<KLReport> {
    let first = kraus
        .first()
        .ok_or_else(|| Error::Dimension("Knill-Laflamme check needs at least one operator".into()))?;
    let shape = first.shape();
    if kraus.iter().any(|k| k.shape() != shape) {
        return Err(Error::Dimension("Kraus operators differ in shape".into()));
    }
    let d = shape.1;
    let id = linalg::identity(d);
    let n = kraus.len();
    let mut sigma = ComplexMatrix::zeros(n, n);
    let mut residual: f64 = 0.0;
    for i in 0..n {
        let ki = kraus[i].adjoint();
        for j in 0..n {
            let prod = &ki * &kraus[j];
            let s = trace(&prod) / c(d as f64, 0.0);
            sigma[(i, j)] = s;
            residual = residual.max(max_abs_diff(&prod, &(&id * s)));
        }
    }
    Ok(KLReport {
        satisfied: residual <= threshold,
        sigma,
        residual,
    })
}

/// Knill–Laflamme check of `S_{|γ⟩⟨γ|}(E, E)`.
pub fn switched_kl_check(e: &Channel, gamma: &ComplexVector) -> Result<KLReport> {
    kl_check(&switch_kraus(e, e, gamma)?)
}

/// Correctability of `S_ω(E, E)`: every pure control in the support of `ω`
/// must give a correctable channel, and so must the mixture itself.
pub fn switched_correctable(e: &Channel, omega: &ControlState) -> Result<bool> {
    for (_, gamma) in omega.support() {
        if !switched_kl_check(e, &gamma)?.satisfied {
            return Ok(false);
        }
    }
    let sw = switch_channel(e, e, omega)?;
    Ok(kl_check(sw.base.kraus())?.satisfied)
}

// ---------------------------------------------------------------------------
// Qubit classification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum QubitClassification {
    /// A single unitary Kraus operator (global phase fixed).
    Unitary { u: ComplexMatrix },
    /// `E(ρ) = q (m₁·σ)ρ(m₁·σ) + (1−q)(m₂·σ)ρ(m₂·σ)` with `m₁ ⊥ m₂`, and
    /// `U` the basis change with `UXU† = m₁·σ`, `UYU† = m₂·σ`.
    SelfAdjointPair {
        q: f64,
        m1: [f64; 3],
        m2: [f64; 3],
        u: ComplexMatrix,
    },
    None,
}

impl QubitClassification {
    pub fn kind(&self) -> &'static str {
        match self {
            QubitClassification::Unitary { .. } => "Unitary",
            QubitClassification::SelfAdjointPair { .. } => "SelfAdjointPair",
            QubitClassification::None => "None",
        }
    }

    /// The channel described by the classification.
    pub fn reconstruct(&self) -> Option<Channel> {
        match self {
            QubitClassification::Unitary { u } => Channel::unitary(u.clone()).ok(),
            QubitClassification::SelfAdjointPair { q, m1, m2, .. } => {
                let k1 = bloch_operator(*m1) * c(q.sqrt(), 0.0);
                let k2 = bloch_operator(*m2) * c((1.0 - q).sqrt(), 0.0);
                Channel::new(2, 2, vec![k1, k2]).ok()
            }
            QubitClassification::None => None,
        }
    }
}

/// Process matrix `χ_{μν}` with `E(ρ) = Σ χ_{μν} σ_μ ρ σ_ν`.
pub fn process_matrix(e: &Channel) -> Result<ComplexMatrix> {
    if e.dim_in() != 2 || e.dim_out() != 2 {
        return Err(Error::Dimension(format!(
            "qubit classification needs a 2 -> 2 channel, got {} -> {}",
            e.dim_in(),
            e.dim_out()
        )));
    }
    let paulis: Vec<ComplexMatrix> = (0..4).map(pauli).collect();
    let mut chi = ComplexMatrix::zeros(4, 4);
    for k in e.kraus() {
        let coeffs: Vec<_> = paulis.iter().map(|s| trace(&(s * k)) / c(2.0, 0.0)).collect();
        for mu in 0..4 {
            for nu in 0..4 {
                chi[(mu, nu)] += coeffs[mu] * coeffs[nu].conj();
            }
        }
    }
    Ok(chi)
}

/// Sign gauge: first component with magnitude above 1e-12 is positive.
fn canonical_axis(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let v = v.map(|x| x / n);
    match v.iter().find(|x| x.abs() > 1e-12) {
        Some(&x) if x < 0.0 => v.map(|y| -y),
        _ => v,
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Eigenvector of `n·σ` for eigenvalue `sign`, phase fixed so the first
/// nonzero entry is real positive.
fn bloch_eigenket(n: [f64; 3], sign: f64) -> ComplexVector {
    let eig = herm_eig(&bloch_operator(n)).expect("Bloch operator is Hermitian");
    let v = if sign > 0.0 { eig.vector(0) } else { eig.vector(1) };
    let lead = v.iter().find(|z| z.norm() > 1e-12).copied().unwrap_or(c(1.0, 0.0));
    v * (lead.conj() / c(lead.norm(), 0.0))
}

/// `U` with `U|0⟩ = |n₃+⟩`, `U|1⟩ = e^{iφ}|n₃−⟩`, `n₃ = m₁ × m₂`, and the
/// phase chosen so that `UXU† = m₁·σ`.
pub fn basis_unitary(m1: [f64; 3], m2: [f64; 3]) -> ComplexMatrix {
    let n3 = cross(m1, m2);
    let up = bloch_eigenket(n3, 1.0);
    let down = bloch_eigenket(n3, -1.0);
    let z = up.dotc(&(bloch_operator(m1) * &down));
    let phase = c(0.0, -z.arg()).exp();
    let mut u = ComplexMatrix::zeros(2, 2);
    u.set_column(0, &up);
    u.set_column(1, &(down * phase));
    u
}

/// Orthonormal axes `(m₁, m₂)` of a real symmetric rank-2 block whose two
/// eigenvalues coincide: the channel is invariant under rotations in the
/// plane, so the first coordinate axis with the largest in-plane projection
/// fixes the frame.
fn degenerate_plane_axes(normal: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let mut best = [0.0; 3];
    let mut best_norm = -1.0;
    for k in 0..3 {
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let t = dot(e, normal);
        let proj = [e[0] - t * normal[0], e[1] - t * normal[1], e[2] - t * normal[2]];
        let n = dot(proj, proj).sqrt();
        if n > best_norm + 1e-12 {
            best = proj.map(|x| x / n);
            best_norm = n;
        }
    }
    let m1 = canonical_axis(best);
    let m2 = canonical_axis(cross(normal, m1));
    (m1, m2)
}

/// Unitary, self-adjoint pair with orthogonal Bloch axes, or neither.
pub fn classify(e: &Channel) -> Result<QubitClassification> {
    let chi = process_matrix(e)?;
    let eig = herm_eig(&chi)?;
    let rank = eig.values.iter().filter(|&&l| l > tolerance::RANK).count();
    if rank == 1 {
        let v = eig.vector(0);
        let mut u = (0..4).fold(ComplexMatrix::zeros(2, 2), |acc, mu| acc + pauli(mu) * v[mu]);
        let lead = u.iter().fold(c(0.0, 0.0), |a, &z| if z.norm() > a.norm() + 1e-12 { z } else { a });
        u *= lead.conj() / c(lead.norm(), 0.0);
        let scale = eig.values[0].sqrt();
        return Ok(QubitClassification::Unitary { u: u * c(scale, 0.0) });
    }
    if rank != 2 {
        return Ok(QubitClassification::None);
    }
    let identity_weight = (0..4).map(|mu| chi[(0, mu)].norm()).fold(0.0, f64::max);
    let block = chi.view((1, 1), (3, 3)).into_owned();
    let imaginary = block.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if identity_weight > tolerance::CLASSIFY_STRUCTURE || imaginary > tolerance::CLASSIFY_STRUCTURE {
        return Ok(QubitClassification::None);
    }
    let real = nalgebra::Matrix3::from_fn(|i, j| block[(i, j)].re);
    let sym = nalgebra::SymmetricEigen::new((real + real.transpose()) * 0.5);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| sym.eigenvalues[b].total_cmp(&sym.eigenvalues[a]));
    let col = |k: usize| {
        let v = sym.eigenvectors.column(order[k]);
        [v[0], v[1], v[2]]
    };
    let (l1, l2) = (sym.eigenvalues[order[0]], sym.eigenvalues[order[1]]);
    let q = l1 / (l1 + l2);
    let (m1, m2) = if l1 - l2 <= tolerance::CLASSIFY_STRUCTURE {
        degenerate_plane_axes(canonical_axis(col(2)))
    } else {
        (canonical_axis(col(0)), canonical_axis(col(1)))
    };
    let u = basis_unitary(m1, m2);
    Ok(QubitClassification::SelfAdjointPair { q, m1, m2, u })
}

/// Recovery `2d → d` undoing `S_{|γ⟩⟨γ|}(E, E)` for a classified qubit channel.
pub fn synthesize_recovery(e: &Channel, gamma: &ComplexVector) -> Result<Channel> {
    if gamma.len() != 2 || (gamma.norm() - 1.0).abs() > tolerance::UNIT_NORM {
        return Err(Error::Contract("control must be a unit qubit ket".into()));
    }
    let bra = |v: &ComplexVector| column(v).adjoint();
    match classify(e)? {
        QubitClassification::Unitary { u } => {
            // The switch applies U twice regardless of order and leaves the control alone.
            let inv = (&u * &u).adjoint();
            let kraus = (0..2).map(|b| tensor(&inv, &bra(&linalg::basis_ket(2, b)))).collect();
            Channel::new(4, 2, kraus)
        }
        QubitClassification::SelfAdjointPair { m1, m2, .. } => {
            if (gamma[0].norm() - gamma[1].norm()).abs() > tolerance::UNIT_NORM {
                return Err(Error::NoRecovery(
                    "the control must weight both orders equally for a self-adjoint pair".into(),
                ));
            }
            let k = cross(m1, m2);
            let kn = dot(k, k).sqrt();
            let flip = bloch_operator(k.map(|x| x / kn));
            let gamma_minus = pauli(3) * gamma;
            let kraus = vec![
                tensor(&linalg::identity(2), &bra(gamma)),
                tensor(&flip, &bra(&gamma_minus)),
            ];
            Channel::new(4, 2, kraus)
        }
        QubitClassification::None => Err(Error::NoRecovery(
            "channel is neither unitary nor a pair of traceless self-adjoint unitaries".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ActivationKind {
    MaximalActivation,
    PositiveCapacity,
    NoActivation,
}

#[derive(Clone, Debug)]
pub struct ActivationVerdict {
    pub kind: ActivationKind,
    pub classification: QubitClassification,
    pub eb: EbVerdict,
    /// `1 − h(q)` for a self-adjoint pair.
    pub hashing_bound: Option<f64>,
}

/// Whether the switch turns `E` into a perfect channel, and whether `E` is
/// useless on its own.
pub fn verify_maximal_activation(e: &Channel) -> Result<ActivationVerdict> {
    let classification = classify(e)?;
    let eb = is_entanglement_breaking(e);
    let (kind, hashing_bound) = match &classification {
        QubitClassification::SelfAdjointPair { q, .. } => {
            let h = crate::capacity::hashing_bound(*q);
            let kind = if (q - 0.5).abs() <= tolerance::CLASSIFY_Q && eb.status == EbStatus::EntanglementBreaking {
                ActivationKind::MaximalActivation
            } else if h > 0.0 {
                ActivationKind::PositiveCapacity
            } else {
                ActivationKind::NoActivation
            };
            (kind, Some(h))
        }
        QubitClassification::Unitary { .. } => (ActivationKind::PositiveCapacity, None),
        QubitClassification::None => (ActivationKind::NoActivation, None),
    };
    Ok(ActivationVerdict {
        kind,
        classification,
        eb,
        hashing_bound,
    })
}

/// Max-abs of the identity component and the imaginary 3×3 block of `χ`;
/// both vanish for a self-adjoint pair.
pub fn pair_structure_defect(e: &Channel) -> Result<f64> {
    let chi = process_matrix(e)?;
    let block = chi.view((1, 1), (3, 3)).into_owned().map(|z| c(z.im, 0.0));
    Ok(chi[(0, 0)].norm().max(max_abs(&block)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{choi_distance, pauli_channel, PauliVector};
    use crate::linalg::{basis_ket, hadamard, ket, ket_plus};
    use crate::random;
    use approx::assert_abs_diff_eq;

    fn xy_pair(q: f64) -> Channel {
        pauli_channel(&PauliVector::new([0.0, q, 1.0 - q, 0.0]).unwrap())
    }

    fn assert_recovers(e: &Channel, gamma: &ComplexVector) {
        let sw = switch_channel(e, e, &ControlState::pure(gamma).unwrap()).unwrap();
        let r = synthesize_recovery(e, gamma).unwrap();
        let total = Channel::compose_serial(&r, &sw.base).unwrap();
        assert!(choi_distance(&total, &Channel::identity(2)) <= 1e-8);
    }

    #[test]
    fn kl_single_unitary() {
        let rep = kl_check(&[hadamard()]).unwrap();
        assert!(rep.satisfied);
        assert_abs_diff_eq!(rep.sigma[(0, 0)].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn kl_e_xy_alone_fails() {
        let rep = kl_check(pauli_channel(&PauliVector::xy()).kraus()).unwrap();
        assert!(!rep.satisfied);
        assert_abs_diff_eq!(rep.residual, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn kl_switched_e_xy() {
        let e = xy_pair(0.5);
        assert!(switched_kl_check(&e, &ket_plus()).unwrap().satisfied);
        assert!(!switched_kl_check(&e, &basis_ket(2, 0)).unwrap().satisfied);
        let rep = switched_kl_check(&e, &ket_plus()).unwrap();
        let eig = herm_eig(&rep.sigma).unwrap();
        assert!(eig.min_value() > -1e-8);
        assert_abs_diff_eq!(trace(&rep.sigma).re, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn kl_switched_pair_any_q_equal_weight() {
        let gamma = ket(&[c(std::f64::consts::FRAC_1_SQRT_2, 0.0), c(0.0, std::f64::consts::FRAC_1_SQRT_2)]);
        for q in [0.1, 0.3, 0.5, 0.8] {
            assert!(switched_kl_check(&xy_pair(q), &gamma).unwrap().satisfied);
        }
    }

    #[test]
    fn switched_correctable_examples() {
        let e = xy_pair(0.5);
        assert!(switched_correctable(&e, &ControlState::plus()).unwrap());
        assert!(!switched_correctable(&e, &ControlState::maximally_mixed()).unwrap());
        let u = Channel::unitary(hadamard()).unwrap();
        assert!(switched_correctable(&u, &ControlState::maximally_mixed()).unwrap());
    }

    #[test]
    fn classify_e_xy() {
        match classify(&xy_pair(0.5)).unwrap() {
            QubitClassification::SelfAdjointPair { q, m1, m2, u } => {
                assert_abs_diff_eq!(q, 0.5, epsilon = 1e-12);
                assert_eq!(m1, [1.0, 0.0, 0.0]);
                assert_eq!(m2, [0.0, 1.0, 0.0]);
                assert!(max_abs_diff(&u, &linalg::identity(2)) < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_conjugated_e_xy() {
        let e = xy_pair(0.5).conjugate_by(&hadamard()).unwrap();
        let cls = classify(&e).unwrap();
        let QubitClassification::SelfAdjointPair { q, m1, m2, ref u } = cls else {
            panic!("unexpected {cls:?}");
        };
        assert_abs_diff_eq!(q, 0.5, epsilon = 1e-12);
        // The xy-plane maps to the yz-plane.
        assert!(m1[0].abs() < 1e-12 && m2[0].abs() < 1e-12);
        let x = u * pauli(1) * u.adjoint();
        let y = u * pauli(2) * u.adjoint();
        assert!(max_abs_diff(&x, &bloch_operator(m1)) < 1e-12);
        assert!(max_abs_diff(&y, &bloch_operator(m2)) < 1e-12);
        assert!(choi_distance(&cls.reconstruct().unwrap(), &e) < 1e-12);
    }

    #[test]
    fn classify_other_kinds() {
        assert_eq!(classify(&pauli_channel(&PauliVector::xyz())).unwrap(), QubitClassification::None);
        let noisy_identity = pauli_channel(&PauliVector::new([0.6, 0.4, 0.0, 0.0]).unwrap());
        assert_eq!(classify(&noisy_identity).unwrap(), QubitClassification::None);
        let u = Channel::unitary(hadamard()).unwrap();
        let cls = classify(&u).unwrap();
        assert_eq!(cls.kind(), "Unitary");
        assert!(choi_distance(&cls.reconstruct().unwrap(), &u) < 1e-12);
        assert!(classify(&Channel::identity(3)).is_err());
    }

    #[test]
    fn unequal_weights_give_q_above_half() {
        let cls = classify(&xy_pair(0.3)).unwrap();
        let QubitClassification::SelfAdjointPair { q, m1, m2, .. } = cls else {
            panic!("unexpected {cls:?}");
        };
        assert_abs_diff_eq!(q, 0.7, epsilon = 1e-12);
        assert_eq!((m1, m2), ([0.0, 1.0, 0.0], [1.0, 0.0, 0.0]));
    }

    #[test]
    fn recovery_examples() {
        assert_recovers(&xy_pair(0.5), &ket_plus());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_recovers(&xy_pair(0.3), &ket(&[c(s, 0.0), c(0.0, s)]));
        let mut rng = random::rng(20, 0);
        let u = Channel::unitary(random::unitary(&mut rng, 2)).unwrap();
        assert_recovers(&u, &random::unit_vector(&mut rng, 2));
        let conj = xy_pair(0.5).conjugate_by(&random::unitary(&mut rng, 2)).unwrap();
        assert_recovers(&conj, &random::equal_weight_ket(&mut rng));
    }

    #[test]
    fn recovery_refusals() {
        let gamma = ket(&[c(0.6, 0.0), c(0.8, 0.0)]);
        assert!(matches!(synthesize_recovery(&xy_pair(0.5), &gamma), Err(Error::NoRecovery(_))));
        let xyz = pauli_channel(&PauliVector::xyz());
        assert!(matches!(synthesize_recovery(&xyz, &ket_plus()), Err(Error::NoRecovery(_))));
    }

    #[test]
    fn activation_verdicts() {
        assert_eq!(verify_maximal_activation(&xy_pair(0.5)).unwrap().kind, ActivationKind::MaximalActivation);
        let v = verify_maximal_activation(&xy_pair(0.3)).unwrap();
        assert_eq!(v.kind, ActivationKind::PositiveCapacity);
        assert_abs_diff_eq!(v.hashing_bound.unwrap(), 0.118709, epsilon = 1e-6);
        let xyz = pauli_channel(&PauliVector::xyz());
        let v = verify_maximal_activation(&xyz).unwrap();
        assert_eq!(v.kind, ActivationKind::NoActivation);
        assert_eq!(v.eb.status, EbStatus::EntanglementBreaking);
    }

    #[test]
    fn structure_defect_of_pair_vanishes() {
        assert!(pair_structure_defect(&xy_pair(0.2)).unwrap() < 1e-14);
        assert!(pair_structure_defect(&pauli_channel(&PauliVector::xyz())).unwrap() < 1e-14);
    }
}
