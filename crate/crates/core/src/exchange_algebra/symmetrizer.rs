//! Sector-resolved symmetrizer and symmetrized product states on the N-fold
//! tensor product of a d-dimensional single-particle space.
//!
//! The projector is `(1/N!) Σ_P σ(P) P` where σ(P) is 1 on the +1 sector for
//! every permutation and sgn(P) on the −1 sector. Product-space basis states
//! are label tuples `(t₁,…,t_N)` with `t_k ∈ 0..d`, indexed row-major.

use super::{
    AlgebraError, InternalState, OccupationConfig, OperatorMatrix, Sector, SectorPair,
};
use ndarray::Array2;

/// Default cap on the product-space dimension d^N for symmetrizer assembly.
pub const DEFAULT_PRODUCT_DIM_LIMIT: usize = 8192;

/// All permutations of `0..n` with their signs, in a deterministic order.
fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, f64)> {
    let mut perms = vec![(Vec::new(), 1.0)];
    // Build S_k from S_{k-1} by inserting element k-1 at every position;
    // inserting at offset j from the end flips the sign j times.
    for k in 1..=n {
        let mut next = Vec::with_capacity(perms.len() * k);
        for (p, sign) in &perms {
            for slot in 0..k {
                let mut q = p.clone();
                q.insert(slot, k - 1);
                let flips = (k - 1 - slot) as u32;
                let s = if flips.is_multiple_of(2) { *sign } else { -*sign };
                next.push((q, s));
            }
        }
        perms = next;
    }
    perms
}

fn tuple_index(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * d + t)
}

fn checked_product_dim(n: usize, d: usize, limit: usize) -> Result<usize, AlgebraError> {
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim.saturating_mul(d);
        if dim > limit {
            return Err(AlgebraError::BasisTooLarge { dim, limit });
        }
    }
    Ok(dim)
}

/// Builds the projection operator on both sectors of the N-particle product
/// space: the symmetrizer on the +1 sector and the antisymmetrizer on the −1
/// sector. Both matrices are real, symmetric and idempotent.
pub fn symmetrizer_matrix(n: usize, d: usize) -> Result<SectorPair<OperatorMatrix>, AlgebraError> {
    symmetrizer_matrix_with_limit(n, d, DEFAULT_PRODUCT_DIM_LIMIT)
}

/// [`symmetrizer_matrix`] with an explicit cap on d^N.
pub fn symmetrizer_matrix_with_limit(
    n: usize,
    d: usize,
    limit: usize,
) -> Result<SectorPair<OperatorMatrix>, AlgebraError> {
    if n == 0 || d == 0 {
        return Err(AlgebraError::InvalidParam(
            "particle number and dimension must be at least 1".into(),
        ));
    }
    let dim = checked_product_dim(n, d, limit)?;
    let perms = permutations_with_sign(n);
    let norm = 1.0 / perms.len() as f64;

    let mut plus = Array2::<f64>::zeros((dim, dim));
    let mut minus = Array2::<f64>::zeros((dim, dim));
    let mut tuple = vec![0usize; n];
    for col in 0..dim {
        decode_tuple(col, d, &mut tuple);
        let mut permuted = vec![0usize; n];
        for (perm, sign) in &perms {
            for (slot, &src) in perm.iter().enumerate() {
                permuted[slot] = tuple[src];
            }
            let row = tuple_index(&permuted, d);
            plus[[row, col]] += norm;
            minus[[row, col]] += sign * norm;
        }
    }
    Ok(SectorPair {
        plus: OperatorMatrix::new(plus),
        minus: OperatorMatrix::new(minus),
    })
}

fn decode_tuple(mut index: usize, d: usize, tuple: &mut [usize]) {
    for slot in (0..tuple.len()).rev() {
        tuple[slot] = index % d;
        index /= d;
    }
}

/// A normalized projected product state, one vector per sector.
///
/// The vectors are `C_N · (projector) · |t₁…t_N⟩` with
/// `C_N = √(N!/Π nᵢ!)`. Squared norms are 1 on the +1 sector and, on the −1
/// sector, 1 for singly-occupied configurations and 0 otherwise; the
/// `(1−δ, δ)`-weighted norm therefore reproduces [`super::unit_weight`].
#[derive(Debug, Clone)]
pub struct SymmetrizedState {
    dim: usize,
    particles: usize,
    config: OccupationConfig,
    vectors: SectorPair<Vec<f64>>,
}

impl SymmetrizedState {
    pub fn single_particle_dim(&self) -> usize {
        self.dim
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn config(&self) -> &OccupationConfig {
        &self.config
    }

    pub fn vector(&self, sector: Sector) -> &[f64] {
        self.vectors.get(sector)
    }

    pub fn norm_sq(&self) -> SectorPair<f64> {
        SectorPair {
            plus: self.vectors.plus.iter().map(|v| v * v).sum(),
            minus: self.vectors.minus.iter().map(|v| v * v).sum(),
        }
    }

    /// Sector-weighted squared norm, `(1−δ)‖v₊‖² + δ‖v₋‖²`.
    pub fn weighted_norm_sq(&self, state: &InternalState) -> f64 {
        self.norm_sq().weighted(state)
    }
}

/// Projects and normalizes the product state with the given mode assignment
/// (`assignment[k]` is the 0-based single-particle label of particle k).
pub fn symmetrized_state(
    assignment: &[usize],
    d: usize,
) -> Result<SymmetrizedState, AlgebraError> {
    if assignment.is_empty() || d == 0 {
        return Err(AlgebraError::InvalidParam(
            "assignment must be non-empty over a positive dimension".into(),
        ));
    }
    for &label in assignment {
        if label >= d {
            return Err(AlgebraError::LabelOutOfRange { label, dim: d });
        }
    }
    let n = assignment.len();
    let dim = checked_product_dim(n, d, DEFAULT_PRODUCT_DIM_LIMIT)?;

    let mut counts = vec![0u32; d];
    for &label in assignment {
        counts[label] += 1;
    }
    let config = OccupationConfig::new(counts);

    let n_fact = factorial(n as u32);
    let occ_fact: f64 = config.counts().iter().map(|&k| factorial(k)).product();
    let c_n = (n_fact / occ_fact).sqrt();
    let norm = c_n / n_fact;

    let mut plus = vec![0.0f64; dim];
    let mut minus = vec![0.0f64; dim];
    let mut permuted = vec![0usize; n];
    for (perm, sign) in permutations_with_sign(n) {
        for (slot, &src) in perm.iter().enumerate() {
            permuted[slot] = assignment[src];
        }
        let idx = tuple_index(&permuted, d);
        plus[idx] += norm;
        minus[idx] += sign * norm;
    }
    Ok(SymmetrizedState {
        dim: d,
        particles: n,
        config,
        vectors: SectorPair { plus, minus },
    })
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Per-sector inner products of two symmetrized states over the same space.
pub fn overlap(
    a: &SymmetrizedState,
    b: &SymmetrizedState,
) -> Result<SectorPair<f64>, AlgebraError> {
    if a.dim != b.dim || a.particles != b.particles {
        return Err(AlgebraError::InvalidParam(
            "overlap requires equal particle number and single-particle dimension".into(),
        ));
    }
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(u, v)| u * v).sum();
    Ok(SectorPair {
        plus: dot(&a.vectors.plus, &b.vectors.plus),
        minus: dot(&a.vectors.minus, &b.vectors.minus),
    })
}

/// Sector-weighted overlap `(1−δ)⟨a₊|b₊⟩ + δ⟨a₋|b₋⟩`. Vanishes for distinct
/// occupation configurations and reproduces [`super::unit_weight`] for equal
/// ones.
pub fn weighted_overlap(
    a: &SymmetrizedState,
    b: &SymmetrizedState,
    state: &InternalState,
) -> Result<f64, AlgebraError> {
    Ok(overlap(a, b)?.weighted(state))
}
