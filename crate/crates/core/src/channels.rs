//! Quantum channels stored as Kraus families, their Choi operators, and the
//! named channels used throughout the crate.

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, herm_eig, max_abs_diff, partial_trace, partial_transpose, pauli, tensor, ComplexMatrix,
    ComplexVector, DensityMatrix, SubsystemDims, ONE,
};
use crate::tolerance;

/// Completely positive trace-preserving map `ρ ↦ Σᵢ Kᵢ ρ Kᵢ†`.
#[derive(Clone, Debug)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

/// Outcome of checking `Σᵢ Kᵢ†Kᵢ = I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationReport {
    pub deviation: f64,
    pub pass: bool,
}

/// Checks shapes and trace preservation of a raw Kraus family.
///
/// Shape problems are errors; a trace-preservation failure is reported in
/// the returned value.
pub fn validate(dim_in: usize, dim_out: usize, kraus: &[ComplexMatrix]) -> Result<ValidationReport> {
    if kraus.is_empty() {
        return Err(Error::Dimension("empty Kraus list".into()));
    }
    if dim_in == 0 || dim_out == 0 {
        return Err(Error::Dimension("channel dimensions must be positive".into()));
    }
    let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
    for (idx, k) in kraus.iter().enumerate() {
        if k.shape() != (dim_out, dim_in) {
            return Err(Error::Dimension(format!(
                "Kraus operator {idx} is {}x{}, expected {dim_out}x{dim_in}",
                k.nrows(),
                k.ncols()
            )));
        }
        if !linalg::is_finite(k) {
            return Err(Error::NonFinite);
        }
        sum += k.adjoint() * k;
    }
    let deviation = max_abs_diff(&sum, &linalg::identity(dim_in));
    Ok(ValidationReport {
        deviation,
        pass: deviation <= tolerance::TRACE_PRESERVING,
    })
}

impl Channel {
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let report = validate(dim_in, dim_out, &kraus)?;
        if !report.pass {
            return Err(Error::NotTracePreserving {
                deviation: report.deviation,
            });
        }
        Ok(Channel { dim_in, dim_out, kraus })
    }

    /// Infers dimensions from the first operator.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let (rows, cols) = kraus
            .first()
            .map(|k| k.shape())
            .ok_or_else(|| Error::Dimension("empty Kraus list".into()))?;
        Channel::new(cols, rows, kraus)
    }

    pub fn identity(d: usize) -> Self {
        Channel {
            dim_in: d,
            dim_out: d,
            kraus: vec![linalg::identity(d)],
        }
    }

    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Channel::from_kraus(vec![u])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn into_kraus(self) -> Vec<ComplexMatrix> {
        self.kraus
    }

    pub fn is_endomorphic(&self) -> bool {
        self.dim_in == self.dim_out
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.dim_in, self.dim_out, &self.kraus).expect("channel shapes checked at construction")
    }

    /// Linear action on an arbitrary `dim_in × dim_in` operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.kraus
            .iter()
            .fold(ComplexMatrix::zeros(self.dim_out, self.dim_out), |acc, k| {
                acc + k * x * k.adjoint()
            })
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::Dimension(format!(
                "state has dimension {}, channel expects {}",
                rho.dim(),
                self.dim_in
            )));
        }
        DensityMatrix::new(self.apply_operator(rho.matrix()))
    }

    /// `(I ⊗ E)(ρ)` on a bipartite state whose last factor is the channel input.
    pub fn apply_extended(&self, rho: &DensityMatrix, dims: &SubsystemDims) -> Result<DensityMatrix> {
        let ds = dims.dims();
        if ds.len() != 2 || ds[1] != self.dim_in || dims.total() != rho.dim() {
            return Err(Error::Dimension(format!(
                "extended action needs dims [d_ref, {}] matching the state, got {ds:?}",
                self.dim_in
            )));
        }
        let id = linalg::identity(ds[0]);
        let out = self.kraus.iter().fold(
            ComplexMatrix::zeros(ds[0] * self.dim_out, ds[0] * self.dim_out),
            |acc, k| {
                let big = tensor(&id, k);
                acc + &big * rho.matrix() * big.adjoint()
            },
        );
        DensityMatrix::new(out)
    }

    /// Kraus operators `Fⱼ Eᵢ` of `F ∘ E` (apply `e` first).
    pub fn compose_serial(f: &Channel, e: &Channel) -> Result<Channel> {
        if e.dim_out != f.dim_in {
            return Err(Error::Dimension(format!(
                "cannot feed a {}-dim output into a {}-dim input",
                e.dim_out, f.dim_in
            )));
        }
        let kraus = f
            .kraus
            .iter()
            .flat_map(|fj| e.kraus.iter().map(move |ei| fj * ei))
            .collect();
        Channel::new(e.dim_in, f.dim_out, kraus)
    }

    /// Kraus operators `Eᵢ ⊗ Fⱼ` of `E ⊗ F`.
    pub fn compose_parallel(e: &Channel, f: &Channel) -> Result<Channel> {
        let kraus = e
            .kraus
            .iter()
            .flat_map(|ei| f.kraus.iter().map(move |fj| tensor(ei, fj)))
            .collect();
        Channel::new(e.dim_in * f.dim_in, e.dim_out * f.dim_out, kraus)
    }

    /// Conjugates the channel by a unitary: `ρ ↦ U E(U† ρ U) U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Channel> {
        let kraus = self.kraus.iter().map(|k| u * k * u.adjoint()).collect();
        Channel::new(self.dim_in, self.dim_out, kraus)
    }

    pub fn choi(&self, normalized: bool) -> ChoiOperator {
        kraus_to_choi(self, normalized)
    }

    pub fn kraus_rank(&self) -> usize {
        kraus_rank(self)
    }
}

// ---------------------------------------------------------------------------
// Pauli channels
// ---------------------------------------------------------------------------

/// Probabilities `(p₀, p₁, p₂, p₃)` weighting `I, X, Y, Z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliVector([f64; 4]);

impl PauliVector {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(bad) = p.iter().find(|x| !(0.0..=1.0).contains(*x) || !x.is_finite()) {
            return Err(Error::InvalidProbabilities(format!("entry {bad} outside [0, 1]")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tolerance::PROBABILITY_SUM {
            return Err(Error::InvalidProbabilities(format!("entries sum to {sum}")));
        }
        Ok(PauliVector(p))
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// `|p⃗|² = Σ pᵢ²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// `E_XY = (X·X + Y·Y)/2`.
    pub fn xy() -> Self {
        PauliVector([0.0, 0.5, 0.5, 0.0])
    }

    /// `E_XYZ = (X·X + Y·Y + Z·Z)/3`.
    pub fn xyz() -> Self {
        let t = 1.0 / 3.0;
        PauliVector([0.0, t, t, t])
    }
}

pub fn pauli_channel(p: &PauliVector) -> Channel {
    let kraus = (0..4)
        .filter(|&i| p.get(i) > 0.0)
        .map(|i| pauli(i) * c(p.get(i).sqrt(), 0.0))
        .collect();
    Channel::new(2, 2, kraus).expect("Pauli probabilities sum to one")
}

/// Complete erasure channel `ρ ↦ |φ⟩⟨φ|` with Kraus `|φ⟩⟨n|`.
pub fn erasure_channel(phi: &ComplexVector, dim_in: usize) -> Result<Channel> {
    let norm = phi.norm();
    if (norm - 1.0).abs() > tolerance::UNIT_NORM {
        return Err(Error::NotUnitVector { norm });
    }
    let kraus = (0..dim_in)
        .map(|n| linalg::column(phi) * linalg::basis_ket(dim_in, n).adjoint())
        .collect();
    Channel::new(dim_in, phi.len(), kraus)
}

// ---------------------------------------------------------------------------
// Choi operators
// ---------------------------------------------------------------------------

/// Choi operator `Σᵢ |Kᵢ⟩⟩⟨⟨Kᵢ|` with `|K⟩⟩ = (K ⊗ I)|I⟩⟩`.
///
/// Factor order is `[output, input]`. The normalized variant (Choi state)
/// is divided by `dim_in`.
#[derive(Clone, Debug)]
pub struct ChoiOperator {
    pub dim_in: usize,
    pub dim_out: usize,
    pub matrix: ComplexMatrix,
    pub normalized: bool,
}

impl ChoiOperator {
    pub fn dims(&self) -> SubsystemDims {
        SubsystemDims::new(vec![self.dim_out, self.dim_in]).expect("positive dims")
    }

    /// The unnormalized matrix regardless of the stored convention.
    pub fn unnormalized_matrix(&self) -> ComplexMatrix {
        if self.normalized {
            &self.matrix * c(self.dim_in as f64, 0.0)
        } else {
            self.matrix.clone()
        }
    }
}

/// `|K⟩⟩ = Σₙ K|n⟩ ⊗ |n⟩`.
pub fn vectorize(k: &ComplexMatrix) -> ComplexVector {
    let (d_out, d_in) = k.shape();
    ComplexVector::from_fn(d_out * d_in, |idx, _| k[(idx / d_in, idx % d_in)])
}

pub fn kraus_to_choi(ch: &Channel, normalized: bool) -> ChoiOperator {
    let n = ch.dim_out * ch.dim_in;
    let mut m = ComplexMatrix::zeros(n, n);
    for k in &ch.kraus {
        let v = vectorize(k);
        m += &v * v.adjoint();
    }
    if normalized {
        m /= c(ch.dim_in as f64, 0.0);
    }
    ChoiOperator {
        dim_in: ch.dim_in,
        dim_out: ch.dim_out,
        matrix: m,
        normalized,
    }
}

pub fn choi_to_kraus(choi: &ChoiOperator) -> Result<Channel> {
    let (d_in, d_out) = (choi.dim_in, choi.dim_out);
    if choi.matrix.shape() != (d_in * d_out, d_in * d_out) {
        return Err(Error::Dimension("Choi matrix does not match its dimensions".into()));
    }
    let m = choi.unnormalized_matrix();
    let eig = herm_eig(&m)?;
    let min = eig.min_value();
    if min < -tolerance::TRACE_PRESERVING {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let marginal = partial_trace(&m, &choi.dims(), &[1])?;
    let deviation = max_abs_diff(&marginal, &linalg::identity(d_in));
    if deviation > tolerance::TRACE_PRESERVING {
        return Err(Error::NotTracePreserving { deviation });
    }
    let kraus: Vec<ComplexMatrix> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > tolerance::CHOI_RANK)
        .map(|(k, &l)| {
            let v = eig.vectors.column(k) * c(l.sqrt(), 0.0);
            ComplexMatrix::from_fn(d_out, d_in, |a, n| v[a * d_in + n])
        })
        .collect();
    Channel::new(d_in, d_out, kraus)
}

/// Max-abs distance between unnormalized Choi matrices.
pub fn choi_distance(a: &Channel, b: &Channel) -> f64 {
    if a.dim_in != b.dim_in || a.dim_out != b.dim_out {
        return f64::INFINITY;
    }
    max_abs_diff(&kraus_to_choi(a, false).matrix, &kraus_to_choi(b, false).matrix)
}

/// Unnormalized Choi matrix of an arbitrary linear map, built column by
/// column from its action on `|n⟩⟨m|`. Factor order `[output, input]`.
pub fn choi_of_map<F>(dim_in: usize, dim_out: usize, map: F) -> ComplexMatrix
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    let mut out = ComplexMatrix::zeros(dim_out * dim_in, dim_out * dim_in);
    for n in 0..dim_in {
        for m in 0..dim_in {
            let mut e = ComplexMatrix::zeros(dim_in, dim_in);
            e[(n, m)] = ONE;
            let img = map(&e);
            for a in 0..dim_out {
                for b in 0..dim_out {
                    out[(a * dim_in + n, b * dim_in + m)] += img[(a, b)];
                }
            }
        }
    }
    out
}

pub fn kraus_rank(ch: &Channel) -> usize {
    linalg::span_rank(&ch.kraus)
}

// ---------------------------------------------------------------------------
// Entanglement breaking
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum EbStatus {
    EntanglementBreaking,
    NotEB,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct EbVerdict {
    pub status: EbStatus,
    pub min_pt_eigenvalue: f64,
    pub witness: Option<String>,
}

/// Largest `dim_in · dim_out` for which PPT of the Choi state is equivalent
/// to separability.
pub const PPT_DECISIVE_DIM: usize = 6;

/// Peres–Horodecki test on the normalized Choi state (transpose on the
/// input factor).
pub fn is_entanglement_breaking(ch: &Channel) -> EbVerdict {
    let choi = kraus_to_choi(ch, true);
    let pt = partial_transpose(&choi.matrix, &choi.dims(), 1).expect("Choi dims are consistent");
    let eig = linalg::herm_eig_unchecked(&linalg::hermitian_part(&pt));
    let min = eig.min_value();
    if min < -tolerance::PPT {
        return EbVerdict {
            status: EbStatus::NotEB,
            min_pt_eigenvalue: min,
            witness: Some(format!("partial transpose of the Choi state has eigenvalue {min:.3e}")),
        };
    }
    if ch.dim_in * ch.dim_out <= PPT_DECISIVE_DIM {
        EbVerdict {
            status: EbStatus::EntanglementBreaking,
            min_pt_eigenvalue: min,
            witness: Some("PPT Choi state in dimension <= 6 is separable".into()),
        }
    } else {
        EbVerdict {
            status: EbStatus::Undetermined,
            min_pt_eigenvalue: min,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_ket, projector};
    use crate::random;
    use approx::assert_abs_diff_eq;

    fn e_xy() -> Channel {
        pauli_channel(&PauliVector::xy())
    }

    #[test]
    fn validate_examples() {
        let r = Channel::identity(2).validate();
        assert!(r.pass);
        assert_eq!(r.deviation, 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = validate(2, 2, &[pauli(1) * c(s, 0.0), pauli(2) * c(s, 0.0)]).unwrap();
        assert!(r.pass);
        let r = validate(2, 2, &[pauli(1), pauli(1)]).unwrap();
        assert!(!r.pass);
        assert_abs_diff_eq!(r.deviation, 1.0, epsilon = 1e-15);
        assert!(validate(2, 2, &[pauli(1), linalg::identity(3)]).is_err());
        assert!(Channel::new(2, 2, vec![pauli(1), pauli(1)]).is_err());
    }

    #[test]
    fn pauli_channel_kraus_lists() {
        let id = pauli_channel(&PauliVector::new([1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(id.kraus().len(), 1);
        assert_eq!(id.kraus()[0], linalg::identity(2));
        assert_eq!(e_xy().kraus().len(), 2);
        assert_eq!(pauli_channel(&PauliVector::xyz()).kraus().len(), 3);
        assert!(PauliVector::new([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(PauliVector::new([1.5, -0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn erasure_outputs_constant_state() {
        let phi = basis_ket(2, 0);
        let ch = erasure_channel(&phi, 2).unwrap();
        let out = ch.apply(&DensityMatrix::pure(&basis_ket(2, 1)).unwrap()).unwrap();
        assert!(max_abs_diff(out.matrix(), &projector(&phi)) < 1e-15);
        let out = ch.apply(&DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(max_abs_diff(out.matrix(), &projector(&phi)) < 1e-15);
        assert!(erasure_channel(&(phi * c(2.0, 0.0)), 2).is_err());
    }

    #[test]
    fn e_xy_is_measure_and_reprepare() {
        let out = e_xy().apply(&DensityMatrix::pure(&basis_ket(2, 0)).unwrap()).unwrap();
        assert!(max_abs_diff(out.matrix(), &projector(&basis_ket(2, 1))) < 1e-15);
        // E_XY(ρ) = ⟨0|ρ|0⟩ |1⟩⟨1| + ⟨1|ρ|1⟩ |0⟩⟨0|
        let mut rng = random::rng(3, 0);
        for _ in 0..10 {
            let rho = random::mixed_state(&mut rng, 2);
            let m = rho.matrix();
            let expected = projector(&basis_ket(2, 1)) * m[(0, 0)] + projector(&basis_ket(2, 0)) * m[(1, 1)];
            let out = e_xy().apply(&rho).unwrap();
            assert!(max_abs_diff(out.matrix(), &expected) < 1e-14);
        }
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        assert!(e_xy().apply(&DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn apply_extended_examples() {
        let bell = DensityMatrix::pure(&linalg::max_entangled(2)).unwrap();
        let dims = SubsystemDims::new(vec![2, 2]).unwrap();
        let same = Channel::identity(2).apply_extended(&bell, &dims).unwrap();
        assert!(max_abs_diff(same.matrix(), bell.matrix()) < 1e-15);

        let out = e_xy().apply_extended(&bell, &dims).unwrap();
        let pt = partial_transpose(out.matrix(), &dims, 1).unwrap();
        assert!(herm_eig(&pt).unwrap().min_value() > -1e-12);

        let phi = ComplexVector::from_column_slice(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let out = erasure_channel(&phi, 2).unwrap().apply_extended(&bell, &dims).unwrap();
        let expected = tensor(&(linalg::identity(2) * c(0.5, 0.0)), &projector(&phi));
        assert!(max_abs_diff(out.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn choi_examples() {
        let choi = kraus_to_choi(&Channel::identity(2), false);
        assert_abs_diff_eq!(linalg::trace(&choi.matrix).re, 2.0, epsilon = 1e-15);
        assert_eq!(linalg::span_rank(std::slice::from_ref(&choi.matrix)), 1);
        let expected = projector(&(linalg::max_entangled(2) * c(2f64.sqrt(), 0.0)));
        assert!(max_abs_diff(&choi.matrix, &expected) < 1e-15);

        let xy = kraus_to_choi(&e_xy(), false);
        let eig = herm_eig(&xy.matrix).unwrap();
        assert_eq!(eig.values.iter().filter(|&&l| l > 1e-10).count(), 2);
        let marginal = partial_trace(&xy.matrix, &xy.dims(), &[1]).unwrap();
        assert!(max_abs_diff(&marginal, &linalg::identity(2)) < 1e-15);

        let state = kraus_to_choi(&e_xy(), true);
        assert_abs_diff_eq!(linalg::trace(&state.matrix).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn choi_round_trips() {
        let id = choi_to_kraus(&kraus_to_choi(&Channel::identity(2), false)).unwrap();
        assert_eq!(id.kraus().len(), 1);
        let k = &id.kraus()[0];
        // Single Kraus proportional to I (up to a global phase).
        let phase = k[(0, 0)];
        assert!(max_abs_diff(k, &(linalg::identity(2) * phase)) < 1e-12);
        assert_abs_diff_eq!(phase.norm(), 1.0, epsilon = 1e-12);

        let xyz = pauli_channel(&PauliVector::xyz());
        let choi = kraus_to_choi(&xyz, true);
        let back = choi_to_kraus(&choi).unwrap();
        assert_eq!(back.kraus().len(), 3);
        assert!(choi_distance(&xyz, &back) < 1e-12);
        assert!(max_abs_diff(&kraus_to_choi(&back, true).matrix, &choi.matrix) < 1e-12);
    }

    #[test]
    fn choi_to_kraus_rejects_invalid() {
        let mut bad = kraus_to_choi(&Channel::identity(2), false);
        bad.matrix *= c(2.0, 0.0);
        assert!(matches!(choi_to_kraus(&bad), Err(Error::NotTracePreserving { .. })));
        let mut neg = kraus_to_choi(&Channel::identity(2), false);
        neg.matrix = -neg.matrix;
        assert!(choi_to_kraus(&neg).is_err());
    }

    #[test]
    fn serial_and_parallel_composition() {
        let e = e_xy();
        let same = Channel::compose_serial(&e, &Channel::identity(2)).unwrap();
        assert!(choi_distance(&same, &e) < 1e-15);

        let twice = Channel::compose_serial(&e, &e).unwrap();
        let expected = pauli_channel(&PauliVector::new([0.5, 0.0, 0.0, 0.5]).unwrap());
        assert!(choi_distance(&twice, &expected) < 1e-15);

        let par = Channel::compose_parallel(&e, &Channel::identity(2)).unwrap();
        assert_eq!(par.dim_in(), 4);
        assert_eq!(par.dim_out(), 4);

        assert!(Channel::compose_serial(&Channel::identity(3), &e).is_err());
    }

    #[test]
    fn eb_verdicts() {
        assert_eq!(is_entanglement_breaking(&e_xy()).status, EbStatus::EntanglementBreaking);
        assert_eq!(
            is_entanglement_breaking(&pauli_channel(&PauliVector::xyz())).status,
            EbStatus::EntanglementBreaking
        );
        let id = is_entanglement_breaking(&Channel::identity(2));
        assert_eq!(id.status, EbStatus::NotEB);
        assert_abs_diff_eq!(id.min_pt_eigenvalue, -0.5, epsilon = 1e-12);
        let v = is_entanglement_breaking(&pauli_channel(&PauliVector::new([0.6, 0.4, 0.0, 0.0]).unwrap()));
        assert_eq!(v.status, EbStatus::NotEB);
        // Spectrum of the PT Choi state of a Pauli channel is {½ − pᵢ}: min = −0.1.
        assert_abs_diff_eq!(v.min_pt_eigenvalue, -0.1, epsilon = 1e-12);
    }

    #[test]
    fn eb_is_undetermined_beyond_decisive_dimension() {
        let mut rng = random::rng(7, 0);
        let phi = random::unit_vector(&mut rng, 3);
        let ch = erasure_channel(&phi, 3).unwrap();
        assert_eq!(is_entanglement_breaking(&ch).status, EbStatus::Undetermined);
    }

    #[test]
    fn kraus_rank_examples() {
        assert_eq!(Channel::unitary(linalg::hadamard()).unwrap().kraus_rank(), 1);
        assert_eq!(e_xy().kraus_rank(), 2);
        assert_eq!(pauli_channel(&PauliVector::xyz()).kraus_rank(), 3);
    }

    #[test]
    fn choi_of_map_matches_kraus_choi() {
        let e = pauli_channel(&PauliVector::new([0.1, 0.2, 0.3, 0.4]).unwrap());
        let m = choi_of_map(2, 2, |x| e.apply_operator(x));
        assert!(max_abs_diff(&m, &kraus_to_choi(&e, false).matrix) < 1e-15);
    }
}
