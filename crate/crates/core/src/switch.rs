//! The quantum SWITCH: two channels composed in an order controlled by a
//! qubit, and the closed-form decomposition of switched Pauli channels.
//!
//! The output space of a switched channel is ordered `[system, control]`.

use num_rational::Ratio;

use crate::channels::{choi_of_map, pauli_channel, Channel, PauliVector};
use crate::error::{Error, Result};
use crate::linalg::{
    self, c, column, max_abs_diff, pauli, projector, tensor, ComplexMatrix, ComplexVector,
    DensityMatrix, C64,
};
use crate::tolerance;

/// State `ω` of the control qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlState(DensityMatrix);

impl ControlState {
    pub fn new(omega: DensityMatrix) -> Result<Self> {
        if omega.dim() != 2 {
            return Err(Error::Dimension(format!(
                "control state must be a qubit, got dimension {}",
                omega.dim()
            )));
        }
        Ok(ControlState(omega))
    }

    pub fn pure(gamma: &ComplexVector) -> Result<Self> {
        check_control_ket(gamma)?;
        ControlState::new(DensityMatrix::pure(gamma)?)
    }

    pub fn plus() -> Self {
        ControlState::pure(&linalg::ket_plus()).expect("|+> is a unit qubit ket")
    }

    pub fn minus() -> Self {
        ControlState::pure(&linalg::ket_minus()).expect("|-> is a unit qubit ket")
    }

    pub fn basis(bit: usize) -> Self {
        ControlState::pure(&linalg::basis_ket(2, bit)).expect("basis ket")
    }

    pub fn maximally_mixed() -> Self {
        ControlState(DensityMatrix::maximally_mixed(2))
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    /// Eigenpairs with weight above [`tolerance::PROBABILITY_ZERO`].
    pub fn support(&self) -> Vec<(f64, ComplexVector)> {
        let eig = self.0.eigen();
        eig.values
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > tolerance::PROBABILITY_ZERO)
            .map(|(k, &l)| (l, eig.vector(k)))
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        self.support().len() == 1
    }

    /// `Z ω Z`.
    pub fn z_conjugate(&self) -> ControlState {
        let z = pauli(3);
        ControlState(DensityMatrix::new(&z * self.matrix() * &z).expect("unitary conjugate of a state"))
    }

    /// `ωᵀ` in the computational basis.
    pub fn transpose(&self) -> ControlState {
        ControlState(self.0.transpose())
    }
}

fn check_control_ket(gamma: &ComplexVector) -> Result<()> {
    if gamma.len() != 2 {
        return Err(Error::Dimension(format!("control ket has dimension {}", gamma.len())));
    }
    let norm = gamma.norm();
    if (norm - 1.0).abs() > tolerance::UNIT_NORM {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

fn check_switchable(e: &Channel, f: &Channel) -> Result<usize> {
    if !e.is_endomorphic() || !f.is_endomorphic() || e.dim_in() != f.dim_in() {
        return Err(Error::Dimension(format!(
            "switch needs two channels on the same space, got {}->{} and {}->{}",
            e.dim_in(),
            e.dim_out(),
            f.dim_in(),
            f.dim_out()
        )));
    }
    Ok(e.dim_in())
}

/// Pure-control Kraus operators `K_ij = c₀ EᵢFⱼ ⊗ |0⟩ + c₁ FⱼEᵢ ⊗ |1⟩`,
/// each `2d × d`, ordered with `i` (over `e`) as the slow index.
pub fn switch_kraus(e: &Channel, f: &Channel, gamma: &ComplexVector) -> Result<Vec<ComplexMatrix>> {
    check_switchable(e, f)?;
    check_control_ket(gamma)?;
    let ket0 = column(&linalg::basis_ket(2, 0)) * gamma[0];
    let ket1 = column(&linalg::basis_ket(2, 1)) * gamma[1];
    let mut out = Vec::with_capacity(e.kraus().len() * f.kraus().len());
    for ei in e.kraus() {
        for fj in f.kraus() {
            out.push(tensor(&(ei * fj), &ket0) + tensor(&(fj * ei), &ket1));
        }
    }
    Ok(out)
}

/// `S_ω(E, F)` together with the ingredients that produced it.
#[derive(Clone, Debug)]
pub struct SwitchedChannel {
    pub base: Channel,
    pub e: Channel,
    pub f: Channel,
    pub omega: ControlState,
}

impl SwitchedChannel {
    pub fn channel(&self) -> &Channel {
        &self.base
    }

    pub fn system_dim(&self) -> usize {
        self.e.dim_in()
    }
}

/// Builds `S_ω(E, F)` as a convex combination of pure-control switches over
/// the eigenvectors of `ω`.
pub fn switch_channel(e: &Channel, f: &Channel, omega: &ControlState) -> Result<SwitchedChannel> {
    let d = check_switchable(e, f)?;
    let mut kraus = Vec::new();
    for (weight, gamma) in omega.support() {
        let scale = c(weight.sqrt(), 0.0);
        kraus.extend(switch_kraus(e, f, &gamma)?.into_iter().map(|k| k * scale));
    }
    Ok(SwitchedChannel {
        base: Channel::new(d, 2 * d, kraus)?,
        e: e.clone(),
        f: f.clone(),
        omega: omega.clone(),
    })
}

/// `Σ K_ij (x ⊗ ω) K_ij†` with `K_ij = EᵢFⱼ ⊗ |0⟩⟨0| + FⱼEᵢ ⊗ |1⟩⟨1|`,
/// evaluated literally on the enlarged space.
pub fn switch_apply_direct(e: &Channel, f: &Channel, omega: &ControlState, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = check_switchable(e, f)?;
    if x.shape() != (d, d) {
        return Err(Error::Dimension("input operator does not match the channels".into()));
    }
    let p0 = projector(&linalg::basis_ket(2, 0));
    let p1 = projector(&linalg::basis_ket(2, 1));
    let joint = tensor(x, omega.matrix());
    let mut out = ComplexMatrix::zeros(2 * d, 2 * d);
    for ei in e.kraus() {
        for fj in f.kraus() {
            let k = tensor(&(ei * fj), &p0) + tensor(&(fj * ei), &p1);
            out += &k * &joint * k.adjoint();
        }
    }
    Ok(out)
}

/// Unnormalized Choi matrix of the literal switch evaluation.
pub fn switch_direct_choi(e: &Channel, f: &Channel, omega: &ControlState) -> Result<ComplexMatrix> {
    let d = check_switchable(e, f)?;
    Ok(choi_of_map(d, 2 * d, |x| {
        switch_apply_direct(e, f, omega, x).expect("dimensions checked above")
    }))
}

// ---------------------------------------------------------------------------
// Switched Pauli channels
// ---------------------------------------------------------------------------

/// `S_ω(E_p, E_p)(ρ) = q₊ C₊(ρ) ⊗ ω₊ + q₋ C₋(ρ) ⊗ ω₋`.
#[derive(Clone, Debug)]
pub struct PauliSwitchDecomposition {
    pub q_plus: f64,
    pub q_minus: f64,
    /// Absent when `q₊ = 0`.
    pub c_plus: Option<PauliVector>,
    /// Absent when `q₋ = 0`.
    pub c_minus: Option<PauliVector>,
    pub omega_plus: ControlState,
    pub omega_minus: ControlState,
}

impl PauliSwitchDecomposition {
    pub fn c_plus_channel(&self) -> Option<Channel> {
        self.c_plus.as_ref().map(pauli_channel)
    }

    pub fn c_minus_channel(&self) -> Option<Channel> {
        self.c_minus.as_ref().map(pauli_channel)
    }

    /// Unnormalized Choi matrix of `ρ ↦ q₊ C₊(ρ)⊗ω₊ + q₋ C₋(ρ)⊗ω₋`.
    pub fn reassembled_choi(&self) -> ComplexMatrix {
        let plus = self.c_plus_channel();
        let minus = self.c_minus_channel();
        choi_of_map(2, 4, |x| {
            let mut out = ComplexMatrix::zeros(4, 4);
            if let Some(ch) = &plus {
                out += tensor(&ch.apply_operator(x), self.omega_plus.matrix()) * c(self.q_plus, 0.0);
            }
            if let Some(ch) = &minus {
                out += tensor(&ch.apply_operator(x), self.omega_minus.matrix()) * c(self.q_minus, 0.0);
            }
            out
        })
    }
}

/// `q₋ = 2(p₁p₂ + p₂p₃ + p₃p₁)`, `q₊ = |p⃗|² + 2p₀(p₁ + p₂ + p₃)`.
pub fn pauli_switch_weights(p: &PauliVector) -> (f64, f64) {
    let [p0, p1, p2, p3] = p.probabilities();
    let q_minus = 2.0 * (p1 * p2 + p2 * p3 + p3 * p1);
    let q_plus = p.norm_sq() + 2.0 * p0 * (p1 + p2 + p3);
    (q_plus, q_minus)
}

/// Exact `(q₊, q₋)` for rational Pauli probabilities.
pub fn pauli_switch_weights_exact(p: [Ratio<i64>; 4]) -> Result<(Ratio<i64>, Ratio<i64>)> {
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    if p.iter().any(|x| *x < zero || *x > one) || p.iter().copied().sum::<Ratio<i64>>() != one {
        return Err(Error::InvalidProbabilities(format!("{p:?} is not a probability vector")));
    }
    let two = Ratio::from_integer(2);
    let q_minus = two * (p[1] * p[2] + p[2] * p[3] + p[3] * p[1]);
    Ok((one - q_minus, q_minus))
}

pub fn pauli_switch_decomposition(p: &PauliVector, omega: &ControlState) -> Result<PauliSwitchDecomposition> {
    let [p0, p1, p2, p3] = p.probabilities();
    let (q_plus, q_minus) = pauli_switch_weights(p);
    let normalize = |v: [f64; 4], q: f64| -> Result<Option<PauliVector>> {
        if q <= tolerance::PROBABILITY_ZERO {
            return Ok(None);
        }
        let scaled = v.map(|x| x / q);
        // Re-normalize away the last ulp so the vector passes validation.
        let s: f64 = scaled.iter().sum();
        PauliVector::new(scaled.map(|x| x / s)).map(Some)
    };
    let c_plus = normalize([p.norm_sq(), 2.0 * p0 * p1, 2.0 * p0 * p2, 2.0 * p0 * p3], q_plus)?;
    let c_minus = normalize([0.0, 2.0 * p2 * p3, 2.0 * p1 * p3, 2.0 * p1 * p2], q_minus)?;
    Ok(PauliSwitchDecomposition {
        q_plus,
        q_minus,
        c_plus,
        c_minus,
        omega_plus: omega.clone(),
        omega_minus: omega.z_conjugate(),
    })
}

// ---------------------------------------------------------------------------
// Measuring the control
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ControlBranch {
    pub outcome: ComplexVector,
    pub probability: f64,
    /// Conditional channel; absent when the outcome never occurs.
    pub channel: Option<Channel>,
}

#[derive(Clone, Debug)]
pub struct ControlDecomposition {
    pub branches: Vec<ControlBranch>,
    /// Max-abs of the Choi matrix of the off-diagonal control block.
    pub coherence: f64,
}

impl ControlDecomposition {
    /// Choi distance between `Σ qₖ Cₖ(ρ) ⊗ |bₖ⟩⟨bₖ|` and the switched channel.
    pub fn reassembly_distance(&self, sw: &SwitchedChannel) -> f64 {
        let d = sw.system_dim();
        let rebuilt = choi_of_map(d, 2 * d, |x| {
            self.branches.iter().fold(ComplexMatrix::zeros(2 * d, 2 * d), |acc, b| match &b.channel {
                Some(ch) => acc + tensor(&ch.apply_operator(x), &projector(&b.outcome)) * c(b.probability, 0.0),
                None => acc,
            })
        });
        max_abs_diff(&rebuilt, &sw.base.choi(false).matrix)
    }
}

/// Splits a switched channel into the conditional channels heralded by a
/// control measurement in `basis`.
pub fn condition_on_control(sw: &SwitchedChannel, basis: &[ComplexVector; 2]) -> Result<ControlDecomposition> {
    for b in basis {
        check_control_ket(b)?;
    }
    let overlap = basis[0].dotc(&basis[1]).norm();
    if overlap > tolerance::UNIT_NORM {
        return Err(Error::Contract(format!("control basis is not orthogonal (overlap {overlap:e})")));
    }
    let d = sw.system_dim();
    let id = linalg::identity(d);
    let projected = |b: &ComplexVector| -> Vec<ComplexMatrix> {
        let bra = tensor(&id, &column(b).adjoint());
        sw.base.kraus().iter().map(|k| &bra * k).collect()
    };
    let blocks: Vec<Vec<ComplexMatrix>> = basis.iter().map(projected).collect();

    let mut branches = Vec::with_capacity(2);
    for (b, ops) in basis.iter().zip(&blocks) {
        let effect = ops.iter().fold(ComplexMatrix::zeros(d, d), |acc, l| acc + l.adjoint() * l);
        let q = linalg::trace(&effect).re / d as f64;
        let dev = max_abs_diff(&effect, &(&id * c(q, 0.0)));
        if dev > tolerance::TRACE_PRESERVING {
            return Err(Error::NotDecomposable(format!(
                "outcome probability depends on the input (deviation {dev:.3e})"
            )));
        }
        let channel = if q > tolerance::PROBABILITY_ZERO {
            let s = c(1.0 / q.sqrt(), 0.0);
            Some(Channel::new(d, d, ops.iter().map(|l| l * s).collect())?)
        } else {
            None
        };
        branches.push(ControlBranch {
            outcome: b.clone(),
            probability: q,
            channel,
        });
    }

    let cross = choi_of_map(d, d, |x| {
        blocks[0]
            .iter()
            .zip(&blocks[1])
            .fold(ComplexMatrix::zeros(d, d), |acc, (l0, l1)| acc + l0 * x * l1.adjoint())
    });
    Ok(ControlDecomposition {
        branches,
        coherence: linalg::max_abs(&cross),
    })
}

/// `{|γ⟩, Z|γ⟩}`, orthogonal exactly when `|⟨0|γ⟩| = |⟨1|γ⟩|`.
pub fn gamma_basis(gamma: &ComplexVector) -> [ComplexVector; 2] {
    [gamma.clone(), &pauli(3) * gamma]
}

/// Equal-superposition control ket `(|0⟩ + e^{iθ}|1⟩)/√2`.
pub fn equal_weight_ket(theta: f64) -> ComplexVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    linalg::ket(&[c(s, 0.0), C64::from_polar(s, theta)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::choi_distance;
    use crate::linalg::{basis_ket, herm_eig, ket_minus, ket_plus, I};
    use crate::random;
    use approx::assert_abs_diff_eq;

    fn e_xy() -> Channel {
        pauli_channel(&PauliVector::xy())
    }

    #[test]
    fn identity_switch_single_kraus() {
        let id = Channel::identity(2);
        let ks = switch_kraus(&id, &id, &ket_plus()).unwrap();
        assert_eq!(ks.len(), 1);
        let expected = tensor(&linalg::identity(2), &column(&ket_plus()));
        assert!(max_abs_diff(&ks[0], &expected) < 1e-15);
    }

    #[test]
    fn xy_switch_kraus() {
        let ks = switch_kraus(&e_xy(), &e_xy(), &ket_plus()).unwrap();
        assert_eq!(ks.len(), 4);
        // i = X, j = Y: ½(XY ⊗ c₀|0⟩ + YX ⊗ c₁|1⟩) = ½ iZ ⊗ (|0⟩ − |1⟩)/√2
        let expected = tensor(&(pauli(3) * I), &column(&ket_minus())) * c(0.5, 0.0);
        assert!(max_abs_diff(&ks[1], &expected) < 1e-15);
    }

    #[test]
    fn kraus_count_is_product() {
        let mut rng = random::rng(1, 0);
        let e = random::channel(&mut rng, 2, 2, 3);
        let f = random::channel(&mut rng, 2, 2, 2);
        assert_eq!(switch_kraus(&e, &f, &ket_plus()).unwrap().len(), 6);
        assert!(switch_kraus(&e, &Channel::identity(3), &ket_plus()).is_err());
    }

    #[test]
    fn switched_identity_appends_control() {
        let mut rng = random::rng(2, 0);
        let omega = ControlState::new(random::mixed_state(&mut rng, 2)).unwrap();
        let id = Channel::identity(2);
        let sw = switch_channel(&id, &id, &omega).unwrap();
        let rho = random::mixed_state(&mut rng, 2);
        let out = sw.base.apply(&rho).unwrap();
        assert!(max_abs_diff(out.matrix(), &tensor(rho.matrix(), omega.matrix())) < 1e-14);
    }

    #[test]
    fn definite_order_is_serial_composition() {
        let mut rng = random::rng(3, 0);
        let e = random::channel(&mut rng, 2, 2, 2);
        let f = random::channel(&mut rng, 2, 2, 3);
        let sw = switch_channel(&e, &f, &ControlState::basis(0)).unwrap();
        // Control |0⟩ applies EᵢFⱼ, i.e. F first.
        let serial = Channel::compose_serial(&e, &f).unwrap();
        let p0 = projector(&basis_ket(2, 0));
        let expected = choi_of_map(2, 4, |x| tensor(&serial.apply_operator(x), &p0));
        assert!(max_abs_diff(&sw.base.choi(false).matrix, &expected) < 1e-13);
    }

    #[test]
    fn base_matches_direct_evaluation() {
        let mut rng = random::rng(4, 0);
        for _ in 0..10 {
            let e = random::channel(&mut rng, 2, 2, 2);
            let f = random::channel(&mut rng, 2, 2, 3);
            let omega = ControlState::new(random::mixed_state(&mut rng, 2)).unwrap();
            let sw = switch_channel(&e, &f, &omega).unwrap();
            let direct = switch_direct_choi(&e, &f, &omega).unwrap();
            assert!(max_abs_diff(&sw.base.choi(false).matrix, &direct) < 1e-12);
            assert!(sw.base.validate().pass);
        }
    }

    #[test]
    fn decomposition_of_e_xy() {
        let dec = pauli_switch_decomposition(&PauliVector::xy(), &ControlState::plus()).unwrap();
        assert_abs_diff_eq!(dec.q_plus, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dec.q_minus, 0.5, epsilon = 1e-15);
        assert_eq!(dec.c_plus.unwrap().probabilities(), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(dec.c_minus.unwrap().probabilities(), [0.0, 0.0, 0.0, 1.0]);
        let minus = projector(&ket_minus());
        assert!(max_abs_diff(dec.omega_minus.matrix(), &minus) < 1e-15);
    }

    #[test]
    fn decomposition_of_e_xyz() {
        let dec = pauli_switch_decomposition(&PauliVector::xyz(), &ControlState::plus()).unwrap();
        assert_eq!(dec.q_plus, 1.0 / 3.0);
        assert!(choi_distance(&dec.c_plus_channel().unwrap(), &Channel::identity(2)) < 1e-15);
        let xyz = pauli_channel(&PauliVector::xyz());
        assert!(choi_distance(&dec.c_minus_channel().unwrap(), &xyz) < 1e-15);
    }

    #[test]
    fn decomposition_of_identity_has_no_minus_branch() {
        let p = PauliVector::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        let dec = pauli_switch_decomposition(&p, &ControlState::plus()).unwrap();
        assert_eq!(dec.q_minus, 0.0);
        assert!(dec.c_minus.is_none());
        assert!(choi_distance(&dec.c_plus_channel().unwrap(), &Channel::identity(2)) < 1e-15);
    }

    #[test]
    fn exact_weights() {
        let t = Ratio::new(1, 3);
        let (qp, qm) = pauli_switch_weights_exact([Ratio::from_integer(0), t, t, t]).unwrap();
        assert_eq!(qp, Ratio::new(1, 3));
        assert_eq!(qm, Ratio::new(2, 3));
        assert!(pauli_switch_weights_exact([t, t, t, t]).is_err());
    }

    #[test]
    fn reassembly_matches_switch_for_random_inputs() {
        let mut rng = random::rng(5, 0);
        for _ in 0..20 {
            let p = random::simplex(&mut rng, 4);
            let p = PauliVector::new([p[0], p[1], p[2], p[3]]).unwrap();
            let omega = ControlState::pure(&random::unit_vector(&mut rng, 2)).unwrap();
            let dec = pauli_switch_decomposition(&p, &omega).unwrap();
            let e = pauli_channel(&p);
            let direct = switch_direct_choi(&e, &e, &omega).unwrap();
            assert!(max_abs_diff(&dec.reassembled_choi(), &direct) < 1e-12);
        }
    }

    #[test]
    fn conditioning_switched_e_xy() {
        let sw = switch_channel(&e_xy(), &e_xy(), &ControlState::plus()).unwrap();
        let dec = condition_on_control(&sw, &[ket_plus(), ket_minus()]).unwrap();
        assert_abs_diff_eq!(dec.branches[0].probability, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(dec.branches[1].probability, 0.5, epsilon = 1e-14);
        let id = Channel::identity(2);
        let z = Channel::unitary(pauli(3)).unwrap();
        assert!(choi_distance(dec.branches[0].channel.as_ref().unwrap(), &id) < 1e-14);
        assert!(choi_distance(dec.branches[1].channel.as_ref().unwrap(), &z) < 1e-14);
        assert!(dec.coherence < 1e-14);
        assert!(dec.reassembly_distance(&sw) < 1e-9);
    }

    #[test]
    fn conditioning_switched_e_xyz() {
        let xyz = pauli_channel(&PauliVector::xyz());
        let sw = switch_channel(&xyz, &xyz, &ControlState::plus()).unwrap();
        let dec = condition_on_control(&sw, &[ket_plus(), ket_minus()]).unwrap();
        assert_abs_diff_eq!(dec.branches[0].probability, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dec.branches[1].probability, 2.0 / 3.0, epsilon = 1e-14);
        assert!(choi_distance(dec.branches[0].channel.as_ref().unwrap(), &Channel::identity(2)) < 1e-14);
        assert!(choi_distance(dec.branches[1].channel.as_ref().unwrap(), &xyz) < 1e-14);
        assert!(dec.reassembly_distance(&sw) < 1e-9);
    }

    #[test]
    fn conditioning_switched_identity() {
        let id = Channel::identity(2);
        let gamma = linalg::ket(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let sw = switch_channel(&id, &id, &ControlState::pure(&gamma).unwrap()).unwrap();
        let dec = condition_on_control(&sw, &[ket_plus(), ket_minus()]).unwrap();
        assert_abs_diff_eq!(dec.branches[0].probability, ket_plus().dotc(&gamma).norm_sqr(), epsilon = 1e-14);
        assert_abs_diff_eq!(dec.branches[1].probability, ket_minus().dotc(&gamma).norm_sqr(), epsilon = 1e-14);
        for b in &dec.branches {
            assert!(choi_distance(b.channel.as_ref().unwrap(), &id) < 1e-14);
        }
        // Coherences survive in this basis, so the diagonal reassembly differs.
        assert!(dec.coherence > 0.1);
    }

    #[test]
    fn conditioning_rejects_input_dependent_outcomes() {
        // Switched amplitude damping: the ±-outcome statistics depend on ρ.
        let g: f64 = 0.7;
        let k0 = ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c((1.0 - g).sqrt(), 0.0)]);
        let k1 = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(g.sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let ad = Channel::from_kraus(vec![k0, k1]).unwrap();
        let sw = switch_channel(&ad, &ad, &ControlState::plus()).unwrap();
        assert!(matches!(
            condition_on_control(&sw, &[ket_plus(), ket_minus()]),
            Err(Error::NotDecomposable(_))
        ));
    }

    #[test]
    fn gamma_basis_orthogonal_for_equal_weights() {
        let [a, b] = gamma_basis(&equal_weight_ket(0.9));
        assert!(a.dotc(&b).norm() < 1e-15);
        let [a, b] = gamma_basis(&linalg::ket(&[c(0.6, 0.0), c(0.8, 0.0)]));
        assert!(a.dotc(&b).norm() > 0.2);
    }

    #[test]
    fn mixed_control_eigen_support() {
        let s = ControlState::maximally_mixed();
        assert_eq!(s.support().len(), 2);
        assert!(ControlState::plus().is_pure());
        assert!(herm_eig(s.matrix()).unwrap().min_value() > 0.49);
    }
}
