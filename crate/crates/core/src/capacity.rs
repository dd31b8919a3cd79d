//! Entropic quantities and capacity bounds. Entropies are in bits.

use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channels::{choi_to_kraus, kraus_to_choi, Channel, PauliVector};
use crate::error::{Error, Result};
use crate::linalg::{
    self, c, entropy_of_matrix, entropy_of_spectrum, partial_trace, partial_transpose, trace_norm, ComplexMatrix,
    DensityMatrix, SubsystemDims, C64,
};
use crate::optim::{maximize, OptimizerConfig, OptimizerMeta};
use crate::random;
use crate::switch::{pauli_switch_decomposition, pauli_switch_weights_exact, ControlState};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Exact,
    LowerBound,
    UpperBound,
    HeuristicLower,
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityEstimate {
    pub value: f64,
    pub direction: Direction,
    pub method: String,
    /// Value before clamping at zero, where clamping applies.
    pub unclamped: Option<f64>,
    pub optimizer: Option<OptimizerMeta>,
    pub note: Option<String>,
}

impl CapacityEstimate {
    fn exact(value: f64, method: &str) -> Self {
        CapacityEstimate {
            value,
            direction: Direction::Exact,
            method: method.into(),
            unclamped: None,
            optimizer: None,
            note: None,
        }
    }
}

/// `S(σ_B) − S(σ_AB)` where `A` is the first factor of `dims` and `B` the rest.
pub fn coherent_information_of_state(sigma: &DensityMatrix, dims: &SubsystemDims) -> Result<f64> {
    if dims.total() != sigma.dim() || dims.len() < 2 {
        return Err(Error::Dimension(format!(
            "{:?} does not split a state of dimension {} into A and B",
            dims.dims(),
            sigma.dim()
        )));
    }
    let keep: Vec<usize> = (1..dims.len()).collect();
    let rho_b = partial_trace(sigma.matrix(), dims, &keep)?;
    Ok(entropy_of_matrix(&rho_b) - entropy_of_matrix(sigma.matrix()))
}

/// `x log₂(x / y)` with `0 · log 0 = 0`.
fn xlog(x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * (x / y).log2()
    }
}

/// Coherent information of `S_{|+⟩⟨+|}(E_p, E_p)` at the maximally entangled
/// input, before clamping.
pub fn switched_pauli_formula(p: &PauliVector) -> f64 {
    let [p0, p1, p2, p3] = p.probabilities();
    let q_minus = 2.0 * (p1 * p2 + p2 * p3 + p3 * p1);
    let q_plus = p.norm_sq() + 2.0 * p0 * (p1 + p2 + p3);
    let mut total = 1.0 + xlog(p.norm_sq(), q_plus);
    for pi in [p1, p2, p3] {
        total += xlog(2.0 * p0 * pi, q_plus);
    }
    for (a, b) in [(p1, p2), (p2, p3), (p1, p3)] {
        total += xlog(2.0 * a * b, q_minus);
    }
    total
}

/// Closed-form one-shot coherent information of a switched Pauli channel,
/// clamped at zero.
pub fn switched_pauli_coherent_info(p: &PauliVector) -> CapacityEstimate {
    let raw = switched_pauli_formula(p);
    CapacityEstimate {
        unclamped: Some(raw),
        ..CapacityEstimate::exact(raw.max(0.0), "closed form at the maximally entangled input, control |+>")
    }
}

pub fn binary_entropy(q: f64) -> f64 {
    entropy_of_spectrum(&[q, 1.0 - q])
}

/// `1 − h(q)`.
pub fn hashing_bound(q: f64) -> f64 {
    1.0 - binary_entropy(q)
}

/// Lower bound on the quantum capacity of a Pauli channel: 1 for a unitary,
/// 0 when entanglement breaking, otherwise the hashing bound `1 − H(p)`.
pub fn pauli_capacity_lower_bound(p: &PauliVector) -> f64 {
    let probs = p.probabilities();
    if probs.iter().any(|&x| x >= 1.0 - tolerance::PROBABILITY_ZERO) {
        1.0
    } else if p.max() <= 0.5 + tolerance::PROBABILITY_ZERO {
        0.0
    } else {
        (1.0 - entropy_of_spectrum(&probs)).max(0.0)
    }
}

fn check_orthogonal_branches(omega: &ControlState) -> Result<()> {
    let m = omega.matrix();
    let pure = omega.is_pure();
    let balanced = (m[(0, 0)].re - 0.5).abs() <= tolerance::UNIT_NORM;
    if !(pure && balanced) {
        return Err(Error::Contract(
            "the two switch branches are distinguishable only for a pure control with equal weights".into(),
        ));
    }
    Ok(())
}

/// `Σ_± q_± Q(C_±)` with each `Q(C_±)` replaced by a lower bound.
pub fn two_way_assisted_lower_bound(p: &PauliVector, omega: &ControlState) -> Result<CapacityEstimate> {
    check_orthogonal_branches(omega)?;
    let dec = pauli_switch_decomposition(p, omega)?;
    let branch = |q: f64, c: &Option<PauliVector>| c.as_ref().map_or(0.0, |v| q * pauli_capacity_lower_bound(v));
    let value = branch(dec.q_plus, &dec.c_plus) + branch(dec.q_minus, &dec.c_minus);
    Ok(CapacityEstimate {
        value,
        direction: Direction::LowerBound,
        method: "control measurement, then per-branch capacity lower bounds".into(),
        unclamped: None,
        optimizer: None,
        note: Some("equality is claimed when every branch bound is tight".into()),
    })
}

/// Exact version for rational probabilities; `None` when a branch needs the
/// (irrational) hashing bound.
pub fn two_way_assisted_lower_bound_exact(p: [Ratio<i64>; 4]) -> Result<Option<Ratio<i64>>> {
    let (q_plus, q_minus) = pauli_switch_weights_exact(p)?;
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let half = Ratio::new(1, 2);
    let plus = [p.iter().map(|x| x * x).sum(), two * p[0] * p[1], two * p[0] * p[2], two * p[0] * p[3]];
    let minus = [zero, two * p[2] * p[3], two * p[1] * p[3], two * p[1] * p[2]];
    let branch = |q: Ratio<i64>, v: [Ratio<i64>; 4]| -> Option<Ratio<i64>> {
        if q == zero {
            return Some(zero);
        }
        let max = v.iter().copied().max().unwrap_or(zero) / q;
        if max == one {
            Some(q)
        } else if max <= half {
            Some(zero)
        } else {
            None
        }
    };
    Ok(branch(q_plus, plus).zip(branch(q_minus, minus)).map(|(a, b)| a + b))
}

// ---------------------------------------------------------------------------
// Optimized quantities
// ---------------------------------------------------------------------------

/// Minimal Kraus form, so that Gram matrices stay small.
fn minimal(ch: &Channel) -> Channel {
    choi_to_kraus(&kraus_to_choi(ch, false)).unwrap_or_else(|_| ch.clone())
}

/// Complex vector from interleaved `(re, im)` parameters, normalized.
fn unit_from_params(x: &[f64]) -> Vec<C64> {
    let v: Vec<C64> = x.chunks(2).map(|p| c(p[0], p[1])).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n == 0.0 {
        let mut e = vec![c(0.0, 0.0); v.len()];
        e[0] = c(1.0, 0.0);
        return e;
    }
    v.into_iter().map(|z| z / n).collect()
}

fn random_params(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| random::gaussian_complex(rng).re).collect()
}

/// Parameters of the maximally entangled vector on `d ⊗ d`.
fn mes_params(d: usize) -> Vec<f64> {
    let mut x = vec![0.0; 2 * d * d];
    for i in 0..d {
        x[2 * (i * d + i)] = 1.0;
    }
    x
}

/// Vectors `(I ⊗ K_k)|Ψ⟩` reshaped as `d_ref × d_out` matrices.
fn purified_outputs(ch: &Channel, psi: &[C64]) -> Vec<ComplexMatrix> {
    let d = ch.dim_in();
    let m = ComplexMatrix::from_row_slice(d, d, psi);
    ch.kraus().iter().map(|k| &m * k.transpose()).collect()
}

fn coherent_info_pure(ch: &Channel, psi: &[C64]) -> f64 {
    let w = purified_outputs(ch, psi);
    let d_out = ch.dim_out();
    let rho_b = w.iter().fold(ComplexMatrix::zeros(d_out, d_out), |acc, wk| acc + wk.transpose() * wk.conjugate());
    let n = w.len();
    let joint_dim = ch.dim_in() * d_out;
    let s_rb = if n <= joint_dim {
        let gram = ComplexMatrix::from_fn(n, n, |k, l| w[k].dotc(&w[l]));
        entropy_of_matrix(&gram)
    } else {
        let rho = w.iter().fold(ComplexMatrix::zeros(joint_dim, joint_dim), |acc, wk| {
            let v = ComplexMatrix::from_row_slice(joint_dim, 1, wk.transpose().as_slice());
            acc + &v * v.adjoint()
        });
        entropy_of_matrix(&rho)
    };
    entropy_of_matrix(&rho_b) - s_rb
}

/// `ρ_RB = (I ⊗ N)(|Ψ⟩⟨Ψ|)`, factor order `[reference, output]`.
fn purified_state(ch: &Channel, psi: &[C64]) -> ComplexMatrix {
    let joint_dim = ch.dim_in() * ch.dim_out();
    purified_outputs(ch, psi)
        .iter()
        .fold(ComplexMatrix::zeros(joint_dim, joint_dim), |acc, wk| {
            // Row-major flattening of W gives the [reference, output] ordering.
            let v = ComplexMatrix::from_row_slice(joint_dim, 1, wk.transpose().as_slice());
            acc + &v * v.adjoint()
        })
}

/// `max_Ψ I_c` over pure inputs on reference ⊗ input, clamped at zero.
pub fn one_shot_coherent_info(ch: &Channel, cfg: &OptimizerConfig) -> Result<CapacityEstimate> {
    let d = ch.dim_in();
    if d * d > 64 {
        return Err(Error::TooLarge(format!("input dimension {d} exceeds the optimizer budget")));
    }
    let ch = minimal(ch);
    let n = 2 * d * d;
    let best = maximize(
        cfg,
        |x| coherent_info_pure(&ch, &unit_from_params(x)),
        |r, rng| if r == 0 { mes_params(d) } else { random_params(rng, n) },
    )?;
    Ok(CapacityEstimate {
        value: best.value.max(0.0),
        direction: Direction::HeuristicLower,
        method: "multi-restart Nelder-Mead over pure bipartite inputs".into(),
        unclamped: Some(best.value),
        optimizer: Some(best.meta),
        note: None,
    })
}

/// Holevo quantity over ensembles of `d²` pure states.
pub fn holevo_quantity(ch: &Channel, cfg: &OptimizerConfig) -> Result<CapacityEstimate> {
    let d = ch.dim_in();
    if d > 4 {
        return Err(Error::TooLarge(format!("input dimension {d} exceeds 4")));
    }
    let ch = minimal(ch);
    let m = d * d;
    let state_len = 2 * d;
    let n = m * state_len + m;
    let objective = |x: &[f64]| {
        let logits = &x[m * state_len..];
        let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut avg = ComplexMatrix::zeros(ch.dim_out(), ch.dim_out());
        let mut mean_entropy = 0.0;
        for (k, w) in weights.iter().enumerate() {
            let p = w / total;
            let psi = linalg::ket(&unit_from_params(&x[k * state_len..(k + 1) * state_len]));
            let out = ch.apply_operator(&linalg::projector(&psi));
            mean_entropy += p * entropy_of_matrix(&out);
            avg += out * c(p, 0.0);
        }
        entropy_of_matrix(&avg) - mean_entropy
    };
    let basis_start = |_: usize| {
        let mut x = vec![0.0; n];
        for k in 0..m {
            x[k * state_len + 2 * (k % d)] = 1.0;
        }
        x
    };
    let best = maximize(
        cfg,
        objective,
        |r, rng| if r == 0 { basis_start(r) } else { random_params(rng, n) },
    )?;
    Ok(CapacityEstimate {
        value: best.value.max(0.0),
        direction: Direction::HeuristicLower,
        method: format!("multi-restart Nelder-Mead over ensembles of {m} pure states"),
        unclamped: Some(best.value),
        optimizer: Some(best.meta),
        note: None,
    })
}

/// `log₂ max_Ψ ‖(I ⊗ T∘N)(|Ψ⟩⟨Ψ|)‖₁`.
pub fn transpose_bound(ch: &Channel, cfg: &OptimizerConfig) -> Result<CapacityEstimate> {
    let d = ch.dim_in();
    if d > 4 {
        return Err(Error::TooLarge(format!("input dimension {d} exceeds 4")));
    }
    let ch = minimal(ch);
    let dims = SubsystemDims::new(vec![d, ch.dim_out()])?;
    let n = 2 * d * d;
    let best = maximize(
        cfg,
        |x| {
            let rho = purified_state(&ch, &unit_from_params(x));
            trace_norm(&partial_transpose(&rho, &dims, 1).expect("dims match the purified state"))
        },
        |r, rng| if r == 0 { mes_params(d) } else { random_params(rng, n) },
    )?;
    Ok(CapacityEstimate {
        value: best.value.log2(),
        direction: Direction::UpperBound,
        method: "heuristic estimate of an upper bound: multi-restart Nelder-Mead for the diamond norm of T∘N".into(),
        unclamped: None,
        optimizer: Some(best.meta),
        note: None,
    })
}

/// Coherent information of a channel at one given pure input.
pub fn coherent_info_at(ch: &Channel, psi: &[C64]) -> Result<f64> {
    let d = ch.dim_in();
    if psi.len() != d * d {
        return Err(Error::Dimension(format!("input vector has length {}, expected {}", psi.len(), d * d)));
    }
    Ok(coherent_info_pure(ch, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{erasure_channel, pauli_channel};
    use crate::linalg::{basis_ket, max_entangled, tensor_vec};
    use crate::switch::switch_channel;
    use approx::assert_abs_diff_eq;

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 4,
            max_iters: 800,
            ..OptimizerConfig::with_seed(3)
        }
    }

    fn switched(p: &PauliVector) -> Channel {
        let e = pauli_channel(p);
        switch_channel(&e, &e, &ControlState::plus()).unwrap().base
    }

    #[test]
    fn coherent_info_of_bell_state() {
        let phi = DensityMatrix::pure(&max_entangled(2)).unwrap();
        let dims = SubsystemDims::new(vec![2, 2]).unwrap();
        assert_abs_diff_eq!(coherent_information_of_state(&phi, &dims).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn coherent_info_of_product_is_minus_entropy_of_a() {
        let mut rng = random::rng(30, 0);
        let a = random::mixed_state(&mut rng, 2);
        let b = random::mixed_state(&mut rng, 3);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        let ic = coherent_information_of_state(&a.tensor(&b), &dims).unwrap();
        assert_abs_diff_eq!(ic, -linalg::von_neumann_entropy(&a), epsilon = 1e-12);
    }

    #[test]
    fn switched_xyz_state_coherent_info() {
        let sw = switched(&PauliVector::xyz());
        let rho = sw
            .apply_extended(
                &DensityMatrix::pure(&max_entangled(2)).unwrap(),
                &SubsystemDims::new(vec![2, 2]).unwrap(),
            )
            .unwrap();
        let dims = SubsystemDims::new(vec![2, 2, 2]).unwrap();
        let expected = 1.0 - (2.0 / 3.0) * 3f64.log2();
        assert_abs_diff_eq!(coherent_information_of_state(&rho, &dims).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let est = switched_pauli_coherent_info(&PauliVector::xyz());
        assert_abs_diff_eq!(est.unclamped.unwrap(), -0.0566416671, epsilon = 1e-9);
        assert_eq!(est.value, 0.0);
        assert_eq!(est.direction, Direction::Exact);
        assert_abs_diff_eq!(switched_pauli_coherent_info(&PauliVector::xy()).value, 1.0, epsilon = 1e-15);
        let id = PauliVector::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(switched_pauli_coherent_info(&id).value, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_matches_mes_evaluation() {
        let mut rng = random::rng(31, 0);
        let mes: Vec<C64> = max_entangled(2).iter().copied().collect();
        for _ in 0..20 {
            let s = random::simplex(&mut rng, 4);
            let p = PauliVector::new([s[0], s[1], s[2], s[3]]).unwrap();
            let direct = coherent_info_at(&switched(&p), &mes).unwrap();
            assert_abs_diff_eq!(direct, switched_pauli_formula(&p), epsilon = 1e-10);
        }
    }

    #[test]
    fn hashing_values() {
        assert_abs_diff_eq!(hashing_bound(0.5), 0.0, epsilon = 1e-15);
        assert_eq!(hashing_bound(0.0), 1.0);
        assert_abs_diff_eq!(hashing_bound(0.3), 0.1187091008, epsilon = 1e-9);
    }

    #[test]
    fn two_way_examples() {
        let plus = ControlState::plus();
        let xyz = two_way_assisted_lower_bound(&PauliVector::xyz(), &plus).unwrap();
        assert_eq!(xyz.value, 1.0 / 3.0);
        assert_eq!(xyz.direction, Direction::LowerBound);
        assert_eq!(two_way_assisted_lower_bound(&PauliVector::xy(), &plus).unwrap().value, 1.0);
        let id = PauliVector::new([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(two_way_assisted_lower_bound(&id, &plus).unwrap().value, 1.0);
        assert!(two_way_assisted_lower_bound(&id, &ControlState::basis(0)).is_err());
    }

    #[test]
    fn two_way_exact() {
        let t = Ratio::new(1, 3);
        let z = Ratio::from_integer(0);
        assert_eq!(two_way_assisted_lower_bound_exact([z, t, t, t]).unwrap(), Some(Ratio::new(1, 3)));
        let h = Ratio::new(1, 2);
        assert_eq!(two_way_assisted_lower_bound_exact([z, h, h, z]).unwrap(), Some(Ratio::from_integer(1)));
        let skew = [Ratio::new(9, 10), Ratio::new(1, 10), z, z];
        assert_eq!(two_way_assisted_lower_bound_exact(skew).unwrap(), None);
    }

    #[test]
    fn one_shot_examples() {
        let cfg = quick();
        assert_abs_diff_eq!(one_shot_coherent_info(&Channel::identity(2), &cfg).unwrap().value, 1.0, epsilon = 1e-6);
        let xy = pauli_channel(&PauliVector::xy());
        assert!(one_shot_coherent_info(&xy, &cfg).unwrap().value.abs() <= 1e-6);
        let sw = switched(&PauliVector::xy());
        assert_abs_diff_eq!(one_shot_coherent_info(&sw, &cfg).unwrap().value, 1.0, epsilon = 1e-6);
        let sxyz = switched(&PauliVector::xyz());
        let est = one_shot_coherent_info(&sxyz, &cfg).unwrap();
        assert!(est.value.abs() <= 1e-6);
        assert_eq!(est.direction, Direction::HeuristicLower);
    }

    #[test]
    fn holevo_examples() {
        let cfg = quick();
        let erasure = erasure_channel(&basis_ket(2, 0), 2).unwrap();
        assert!(holevo_quantity(&erasure, &cfg).unwrap().value.abs() <= 1e-6);
        assert_abs_diff_eq!(holevo_quantity(&Channel::identity(2), &cfg).unwrap().value, 1.0, epsilon = 1e-4);
        let xy = pauli_channel(&PauliVector::xy());
        assert_abs_diff_eq!(holevo_quantity(&xy, &cfg).unwrap().value, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn transpose_bound_examples() {
        let cfg = quick();
        assert_abs_diff_eq!(transpose_bound(&Channel::identity(2), &cfg).unwrap().value, 1.0, epsilon = 1e-3);
        let erasure = erasure_channel(&basis_ket(2, 1), 2).unwrap();
        assert_abs_diff_eq!(transpose_bound(&erasure, &cfg).unwrap().value, 0.0, epsilon = 1e-9);
        let sw = switched(&PauliVector::xy());
        assert!(transpose_bound(&sw, &cfg).unwrap().value >= 1.0 - 1e-3);
    }

    #[test]
    fn purified_state_matches_extended_action() {
        let mut rng = random::rng(32, 0);
        let ch = random::channel(&mut rng, 2, 3, 2);
        let psi = random::unit_vector(&mut rng, 4);
        let v: Vec<C64> = psi.iter().copied().collect();
        let direct = ch
            .apply_extended(&DensityMatrix::pure(&psi).unwrap(), &SubsystemDims::new(vec![2, 2]).unwrap())
            .unwrap();
        assert!(linalg::max_abs_diff(&purified_state(&ch, &v), direct.matrix()) < 1e-13);
        let product: Vec<C64> = tensor_vec(&basis_ket(2, 0), &random::unit_vector(&mut rng, 2)).iter().copied().collect();
        assert!(coherent_info_at(&ch, &product).unwrap() <= 1e-12);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::channels::is_entanglement_breaking;
    use crate::channels::EbStatus;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn binary_entropy_is_symmetric(q in 0.0f64..=1.0) {
            prop_assert!((binary_entropy(q) - binary_entropy(1.0 - q)).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn one_shot_is_bounded_and_vanishes_on_eb(seed in any::<u64>(), r in 1usize..5) {
            let mut rng = random::rng(seed, 0);
            let ch = random::channel(&mut rng, 2, 2, r);
            let cfg = OptimizerConfig { restarts: 3, max_iters: 600, ..OptimizerConfig::with_seed(seed) };
            let est = one_shot_coherent_info(&ch, &cfg).unwrap();
            prop_assert!(est.value >= 0.0 && est.value <= 1.0 + 1e-9);
            if is_entanglement_breaking(&ch).status == EbStatus::EntanglementBreaking {
                prop_assert!(est.value <= 1e-6);
            }
        }
    }

    fn small(seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            restarts: 3,
            max_iters: 600,
            ..OptimizerConfig::with_seed(seed)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn holevo_dominates_coherent_info(seed in any::<u64>(), r in 1usize..5) {
            let mut rng = random::rng(seed, 1);
            let ch = random::channel(&mut rng, 2, 2, r);
            let ic = one_shot_coherent_info(&ch, &small(seed)).unwrap().value;
            let chi = holevo_quantity(&ch, &small(seed)).unwrap().value;
            prop_assert!(chi >= ic - 1e-6, "chi {chi} < ic {ic}");
        }

        #[test]
        fn transpose_bound_of_unitaries(seed in any::<u64>(), d in 2usize..4) {
            let mut rng = random::rng(seed, 2);
            let u = Channel::unitary(random::unitary(&mut rng, d)).unwrap();
            let est = transpose_bound(&u, &small(seed)).unwrap();
            prop_assert!(est.value >= (d as f64).log2() - 1e-3);
        }
    }

    #[test]
    fn closed_form_agrees_with_optimizer_on_grid() {
        use crate::channels::pauli_channel;
        use crate::switch::switch_channel;
        let n = 5;
        let mut checked = 0;
        for a in 0..=n {
            for b in 0..=n - a {
                for k in 0..=n - a - b {
                    let p = PauliVector::new([a, b, k, n - a - b - k].map(|x| x as f64 / n as f64)).unwrap();
                    let e = pauli_channel(&p);
                    let sw = switch_channel(&e, &e, &ControlState::plus()).unwrap().base;
                    let opt = one_shot_coherent_info(&sw, &small(checked)).unwrap().value;
                    let formula = switched_pauli_coherent_info(&p).value;
                    assert!((opt - formula).abs() <= 2e-4, "{p:?}: optimizer {opt}, formula {formula}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 50);
    }
}
