//! Numerical thresholds shared by every module.
//!
//! The CLI echoes these into each report so that a run can be audited
//! against the exact constants that produced it.

/// Max-abs defect of `M - M†` accepted for a Hermitian matrix.
pub const HERMITIAN: f64 = 1e-10;
/// Most negative eigenvalue that is clamped to zero instead of rejected.
pub const PSD: f64 = 1e-10;
/// Trace deviation accepted for a density matrix.
pub const TRACE: f64 = 1e-10;
/// Max-abs deviation of `Σ K†K` from the identity.
pub const TRACE_PRESERVING: f64 = 1e-9;
/// Sum-to-one tolerance for Pauli probability vectors.
pub const PROBABILITY_SUM: f64 = 1e-12;
/// Eigenvalue threshold when counting the rank of a Gram matrix.
pub const RANK: f64 = 1e-9;
/// Knill–Laflamme residual threshold.
pub const KNILL_LAFLAMME: f64 = 1e-8;
/// Tolerance on the mixing probability when matching the q = 1/2 pair.
pub const CLASSIFY_Q: f64 = 1e-6;
/// Tolerance on the structural tests inside qubit classification.
pub const CLASSIFY_STRUCTURE: f64 = 1e-8;
/// Channel-equality threshold on unnormalized Choi matrices.
pub const CHOI_EQUAL: f64 = 1e-8;
/// Eigenvalue threshold used when extracting Kraus operators from a Choi matrix.
pub const CHOI_RANK: f64 = 1e-10;
/// Partial-transpose eigenvalue threshold for PPT decisions.
pub const PPT: f64 = 1e-9;
/// Tolerance on unit-vector normalization.
pub const UNIT_NORM: f64 = 1e-9;
/// Threshold below which an outcome probability is treated as zero.
pub const PROBABILITY_ZERO: f64 = 1e-12;

/// A named bundle of the thresholds used by the reproduction harness.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub profile: String,
    pub trace_preserving: f64,
    pub knill_laflamme: f64,
    pub choi_equal: f64,
    pub ppt: f64,
    pub coherent_info: f64,
    pub classify_q: f64,
    pub transpose_bound: f64,
}

impl Tolerances {
    pub fn default_profile() -> Self {
        Tolerances {
            profile: "default".into(),
            trace_preserving: TRACE_PRESERVING,
            knill_laflamme: KNILL_LAFLAMME,
            choi_equal: CHOI_EQUAL,
            ppt: PPT,
            coherent_info: 1e-6,
            classify_q: CLASSIFY_Q,
            transpose_bound: 1e-3,
        }
    }

    /// Ten times looser on every check; useful on noisy platforms.
    pub fn relaxed_profile() -> Self {
        let d = Self::default_profile();
        Tolerances {
            profile: "relaxed".into(),
            trace_preserving: d.trace_preserving * 10.0,
            knill_laflamme: d.knill_laflamme * 10.0,
            choi_equal: d.choi_equal * 10.0,
            ppt: d.ppt * 10.0,
            coherent_info: d.coherent_info * 10.0,
            classify_q: d.classify_q * 10.0,
            transpose_bound: d.transpose_bound * 10.0,
        }
    }

    pub fn from_profile(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default_profile()),
            "relaxed" => Some(Self::relaxed_profile()),
            _ => None,
        }
    }
}
