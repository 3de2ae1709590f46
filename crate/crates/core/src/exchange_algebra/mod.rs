//! Exact finite-dimensional realization of the interpolating exchange
//! algebra.
//!
//! Exchanging two particles multiplies the many-body state by a Hermitian,
//! unitary operator acting on the particles' shared internal space. Its
//! eigenvalues are ±1, so the internal space splits into a symmetric (+1)
//! and an antisymmetric (−1) sector; the fermionic weight δ is the internal
//! state's squared amplitude on the −1 sector. All operators in this module
//! are real and block-diagonal over the two sectors, which makes every
//! algebraic identity checkable by direct matrix arithmetic:
//!
//! * [`symmetrizer_matrix`] — the sector-resolved projection built from all
//!   N! permutations (symmetrizer on +1, antisymmetrizer on −1),
//! * [`symmetrized_state`] / [`overlap`] — normalized projected product
//!   states and their sector-weighted inner products,
//! * [`FockBasis`] with [`creation_matrix`] / [`annihilation_matrix`] — the
//!   ladder operators on a truncated occupation basis, plus the number and
//!   commutator identity checks,
//! * [`grand_trace_exact`] — brute-force grand-canonical traces used as the
//!   oracle for the closed-form thermodynamics.

mod fock;
mod symmetrizer;
mod trace;

pub use fock::{
    annihilation_matrix, commutator_defect, convention_discrepancy, creation_matrix,
    number_operator_check, AnnihilationConvention, CommutatorReport, FockBasis, SectorDefects,
};
pub use symmetrizer::{
    overlap, symmetrized_state, symmetrizer_matrix, symmetrizer_matrix_with_limit,
    weighted_overlap, SymmetrizedState, DEFAULT_PRODUCT_DIM_LIMIT,
};
pub use trace::{
    grand_trace_exact, grand_trace_terms, grand_trace_terms_with_limit, TraceWeighting,
    DEFAULT_TRACE_LIMIT,
};

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("fermionic weight delta must lie in [0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("product basis dimension {dim} exceeds the configured limit {limit}")]
    BasisTooLarge { dim: usize, limit: usize },
    #[error("enumeration of {size} configurations exceeds the configured limit {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },
    #[error("single-particle label {label} out of range for dimension {dim}")]
    LabelOutOfRange { label: usize, dim: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// The two eigensectors of the exchange operator.
///
/// `Plus` behaves bosonically (exchange eigenvalue +1), `Minus` fermionically
/// (eigenvalue −1). Ordering is `Plus < Minus`, which fixes basis layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    /// Exchange eigenvalue of this sector.
    pub fn sign(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }

    pub const BOTH: [Sector; 2] = [Sector::Plus, Sector::Minus];
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::Plus => write!(f, "+1"),
            Sector::Minus => write!(f, "-1"),
        }
    }
}

/// Internal quantum state shared by all particles, reduced to the fermionic
/// weight δ = (squared amplitude on the −1 sector).
///
/// The degeneracy structure inside each eigensector never enters any observable
/// except through δ, so the state is stored as the amplitude pair
/// `(√(1−δ), √δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalState {
    delta: f64,
}

impl InternalState {
    pub fn new(delta: f64) -> Result<Self, AlgebraError> {
        if !(0.0..=1.0).contains(&delta) || !delta.is_finite() {
            return Err(AlgebraError::InvalidDelta(delta));
        }
        Ok(Self { delta })
    }

    /// Pure +1 sector: ordinary bosons.
    pub fn bose() -> Self {
        Self { delta: 0.0 }
    }

    /// Pure −1 sector: ordinary fermions.
    pub fn fermi() -> Self {
        Self { delta: 1.0 }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Amplitude on the +1 sector, √(1−δ).
    pub fn amp_plus(&self) -> f64 {
        (1.0 - self.delta).sqrt()
    }

    /// Amplitude on the −1 sector, √δ.
    pub fn amp_minus(&self) -> f64 {
        self.delta.sqrt()
    }

    /// Expectation value of the exchange operator, `1 − 2δ`.
    pub fn q_expectation(&self) -> f64 {
        1.0 - 2.0 * self.delta
    }

    /// Weight of one sector in sector-averaged quantities: `1−δ` or `δ`.
    pub fn sector_probability(&self, sector: Sector) -> f64 {
        match sector {
            Sector::Plus => 1.0 - self.delta,
            Sector::Minus => self.delta,
        }
    }
}

/// Per-mode occupation numbers of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationConfig {
    counts: Vec<u32>,
}

impl OccupationConfig {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn mode_count(&self) -> usize {
        self.counts.len()
    }

    /// Total particle number N = Σᵢ nᵢ.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// T: the number of modes occupied by more than one particle.
    pub fn multi_count(&self) -> usize {
        self.counts.iter().filter(|&&n| n >= 2).count()
    }

    /// True when every mode holds at most one particle.
    pub fn is_simple(&self) -> bool {
        self.counts.iter().all(|&n| n <= 1)
    }

    /// Eigenvalue of the configuration-dependent unit operator on one sector:
    /// 1 on the +1 sector, and on the −1 sector 1 for singly-occupied
    /// configurations, 0 otherwise (the projector (1+q)/2 annihilates them).
    pub fn sector_unit(&self, sector: Sector) -> f64 {
        match sector {
            Sector::Plus => 1.0,
            Sector::Minus => {
                if self.is_simple() {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl std::fmt::Display for OccupationConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, n) in self.counts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// Expectation of the configuration-dependent unit operator in the internal
/// state: 1 when all occupations are ≤ 1, otherwise `⟨(1+q)/2⟩ = 1 − δ`.
pub fn unit_weight(config: &OccupationConfig, state: &InternalState) -> f64 {
    if config.is_simple() {
        1.0
    } else {
        1.0 - state.delta()
    }
}

/// Dense real matrix over a fixed basis (all phases in this algebra are ±1).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: Array2<f64>,
}

impl OperatorMatrix {
    pub fn new(entries: Array2<f64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operator must be square");
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: Array2::zeros((dim, dim)),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut Array2<f64> {
        &mut self.entries
    }

    pub fn transpose(&self) -> Self {
        Self {
            entries: self.entries.t().to_owned(),
        }
    }

    pub fn dot(&self, other: &Self) -> Self {
        Self {
            entries: self.entries.dot(&other.entries),
        }
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().sum()
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        let mut max = 0.0f64;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            max = max.max((a - b).abs());
        }
        max
    }

    /// Largest absolute deviation from symmetry, max |M − Mᵀ|.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut max = 0.0f64;
        for r in 0..n {
            for c in (r + 1)..n {
                max = max.max((self.entries[[r, c]] - self.entries[[c, r]]).abs());
            }
        }
        max
    }

    /// Plain-text triplet dump `row col value`, one nonzero entry per line,
    /// row-major order. Used by the CLI's debug export.
    pub fn to_triplets_text(&self) -> String {
        let mut out = String::new();
        for ((r, c), v) in self.entries.indexed_iter() {
            if *v != 0.0 {
                out.push_str(&format!("{r} {c} {v}\n"));
            }
        }
        out
    }
}

/// A value carried separately on the two exchange sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorPair<T> {
    pub plus: T,
    pub minus: T,
}

impl<T> SectorPair<T> {
    pub fn get(&self, sector: Sector) -> &T {
        match sector {
            Sector::Plus => &self.plus,
            Sector::Minus => &self.minus,
        }
    }
}

impl SectorPair<f64> {
    /// Average over sectors with weights `(1−δ, δ)`.
    pub fn weighted(&self, state: &InternalState) -> f64 {
        state.sector_probability(Sector::Plus) * self.plus
            + state.sector_probability(Sector::Minus) * self.minus
    }
}
