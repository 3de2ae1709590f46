//! Truncated occupation-number basis and the ladder operators on it.
//!
//! Basis states are `(occupation config, sector)` pairs. On the −1 sector a
//! configuration with any nᵢ ≥ 2 has zero norm and is excluded from the basis
//! outright, so every matrix below acts on genuinely independent states.
//!
//! The creation operator carries the mode-ordering phase `s^(Σ_{l<i} n_l)`
//! (s the sector sign) and the factor √(nᵢ+1); transitions whose target
//! leaves the truncated basis are dropped. Annihilation comes in two
//! conventions: the canonical adjoint of creation, and a literal variant with
//! an extra sector-sign factor that differs from the adjoint on the −1 sector.
//! Both are exposed, together with their elementwise discrepancy.

use super::{AlgebraError, OccupationConfig, OperatorMatrix, Sector, SectorPair};
use ndarray::Array2;
use std::collections::HashMap;

/// Default cap on the number of enumerated basis states.
pub const DEFAULT_FOCK_LIMIT: usize = 200_000;

/// Enumerated truncated occupation basis crossed with the two sectors.
///
/// Ordering is deterministic: lexicographic in the counts vector, then
/// `Plus` before `Minus`.
#[derive(Debug, Clone)]
pub struct FockBasis {
    mode_count: usize,
    max_per_mode: u32,
    max_total: u32,
    states: Vec<(OccupationConfig, Sector)>,
    index: HashMap<(Vec<u32>, Sector), usize>,
}

impl FockBasis {
    /// Enumerates all configurations with `nᵢ ≤ max_per_mode` and
    /// `Σnᵢ ≤ max_total` on both sectors, excluding zero-norm −1-sector
    /// states.
    pub fn new(mode_count: usize, max_per_mode: u32, max_total: u32) -> Result<Self, AlgebraError> {
        Self::with_limit(mode_count, max_per_mode, max_total, DEFAULT_FOCK_LIMIT)
    }

    /// [`FockBasis::new`] with an explicit cap on the basis size.
    pub fn with_limit(
        mode_count: usize,
        max_per_mode: u32,
        max_total: u32,
        limit: usize,
    ) -> Result<Self, AlgebraError> {
        if mode_count == 0 {
            return Err(AlgebraError::InvalidParam(
                "mode count must be at least 1".into(),
            ));
        }
        // Upper bound before enumerating: both sectors of the full box.
        let mut bound: u128 = 2;
        for _ in 0..mode_count {
            bound = bound.saturating_mul(max_per_mode as u128 + 1);
            if bound > 2 * limit as u128 {
                return Err(AlgebraError::EnumerationTooLarge {
                    size: bound,
                    limit: limit as u128,
                });
            }
        }

        let mut states = Vec::new();
        let mut counts = vec![0u32; mode_count];
        enumerate_configs(&mut counts, 0, 0, max_per_mode, max_total, &mut |c| {
            let cfg = OccupationConfig::new(c.to_vec());
            states.push((cfg.clone(), Sector::Plus));
            if cfg.is_simple() {
                states.push((cfg, Sector::Minus));
            }
        });
        if states.len() > limit {
            return Err(AlgebraError::EnumerationTooLarge {
                size: states.len() as u128,
                limit: limit as u128,
            });
        }
        let index = states
            .iter()
            .enumerate()
            .map(|(i, (cfg, s))| ((cfg.counts().to_vec(), *s), i))
            .collect();
        Ok(Self {
            mode_count,
            max_per_mode,
            max_total,
            states,
            index,
        })
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn max_per_mode(&self) -> u32 {
        self.max_per_mode
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[(OccupationConfig, Sector)] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &(OccupationConfig, Sector) {
        &self.states[i]
    }

    pub fn index_of(&self, counts: &[u32], sector: Sector) -> Option<usize> {
        self.index.get(&(counts.to_vec(), sector)).copied()
    }

    fn check_mode(&self, mode: usize) -> Result<(), AlgebraError> {
        if mode >= self.mode_count {
            return Err(AlgebraError::ModeOutOfRange {
                index: mode,
                modes: self.mode_count,
            });
        }
        Ok(())
    }

    fn within_bounds(&self, counts: &[u32]) -> bool {
        counts.iter().all(|&n| n <= self.max_per_mode)
            && counts.iter().sum::<u32>() <= self.max_total
    }

    /// Whether adding one particle in `mode` either stays within the
    /// truncation bounds or is a physical zero (−1 sector, mode already
    /// occupied). Physical zeros are algebra, not truncation artifacts.
    fn creation_closed(&self, counts: &[u32], mode: usize, sector: Sector) -> bool {
        if sector == Sector::Minus && counts[mode] >= 1 {
            return true;
        }
        counts[mode] < self.max_per_mode && counts.iter().sum::<u32>() < self.max_total
    }
}

fn enumerate_configs(
    counts: &mut [u32],
    mode: usize,
    used: u32,
    max_per_mode: u32,
    max_total: u32,
    emit: &mut impl FnMut(&[u32]),
) {
    if mode == counts.len() {
        emit(counts);
        return;
    }
    let cap = max_per_mode.min(max_total - used);
    for n in 0..=cap {
        counts[mode] = n;
        enumerate_configs(counts, mode + 1, used + n, max_per_mode, max_total, emit);
    }
    counts[mode] = 0;
}

/// Mode-ordering phase `s^(Σ_{l<mode} n_l)`.
fn ordering_phase(counts: &[u32], mode: usize, sector: Sector) -> f64 {
    match sector {
        Sector::Plus => 1.0,
        Sector::Minus => {
            let before: u32 = counts[..mode].iter().sum();
            if before.is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        }
    }
}

/// Matrix of the creation operator for one mode over the basis.
///
/// Element from `(n, s)` to `(n+eᵢ, s)` is `s^(Σ_{l<i} n_l) · √(nᵢ+1)`;
/// targets outside the truncated basis (including zero-norm −1-sector
/// configurations) contribute nothing.
pub fn creation_matrix(mode: usize, basis: &FockBasis) -> Result<OperatorMatrix, AlgebraError> {
    basis.check_mode(mode)?;
    let dim = basis.len();
    let mut m = Array2::<f64>::zeros((dim, dim));
    for (col, (cfg, sector)) in basis.states().iter().enumerate() {
        let counts = cfg.counts();
        let mut target = counts.to_vec();
        target[mode] += 1;
        if !basis.within_bounds(&target) {
            continue; // truncation: transition dropped
        }
        let Some(row) = basis.index_of(&target, *sector) else {
            continue; // zero-norm target on the −1 sector
        };
        let coeff = ordering_phase(counts, mode, *sector) * ((counts[mode] + 1) as f64).sqrt();
        m[[row, col]] = coeff;
    }
    Ok(OperatorMatrix::new(m))
}

/// Which definition of the annihilation operator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnihilationConvention {
    /// Conjugate transpose of [`creation_matrix`] — the canonical choice,
    /// required for `n̂ = â†â` and a Hermitian Hamiltonian.
    Adjoint,
    /// Literal action with an extra sector-sign factor:
    /// `s^(Σ_{l<i} n_l) · √nᵢ · s`, the unit operator evaluated on the
    /// target configuration. Disagrees with `Adjoint` in sign on the −1
    /// sector; kept as a diagnostic.
    Literal,
}

/// Matrix of the annihilation operator for one mode.
pub fn annihilation_matrix(
    mode: usize,
    basis: &FockBasis,
    convention: AnnihilationConvention,
) -> Result<OperatorMatrix, AlgebraError> {
    match convention {
        AnnihilationConvention::Adjoint => Ok(creation_matrix(mode, basis)?.transpose()),
        AnnihilationConvention::Literal => {
            basis.check_mode(mode)?;
            let dim = basis.len();
            let mut m = Array2::<f64>::zeros((dim, dim));
            for (col, (cfg, sector)) in basis.states().iter().enumerate() {
                let counts = cfg.counts();
                if counts[mode] == 0 {
                    continue;
                }
                let mut target = counts.to_vec();
                target[mode] -= 1;
                let Some(row) = basis.index_of(&target, *sector) else {
                    continue;
                };
                let coeff = ordering_phase(counts, mode, *sector)
                    * (counts[mode] as f64).sqrt()
                    * sector.sign();
                m[[row, col]] = coeff;
            }
            Ok(OperatorMatrix::new(m))
        }
    }
}

/// Elementwise difference `literal − adjoint` of the two annihilation
/// conventions. Zero on the +1 sector; a sign flip (difference 2·√nᵢ in
/// magnitude) on the −1 sector.
pub fn convention_discrepancy(
    mode: usize,
    basis: &FockBasis,
) -> Result<OperatorMatrix, AlgebraError> {
    let adjoint = annihilation_matrix(mode, basis, AnnihilationConvention::Adjoint)?;
    let literal = annihilation_matrix(mode, basis, AnnihilationConvention::Literal)?;
    Ok(OperatorMatrix::new(literal.entries() - adjoint.entries()))
}

/// Max deviation of the number operator `â†â` from `nᵢ` over all basis
/// states (adjoint convention). Exact up to float rounding, so ≤ 1e−12.
pub fn number_operator_check(mode: usize, basis: &FockBasis) -> Result<f64, AlgebraError> {
    let c = creation_matrix(mode, basis)?;
    let n_op = c.dot(&c.transpose());
    let mut worst = 0.0f64;
    for (i, (cfg, _)) in basis.states().iter().enumerate() {
        let expected = cfg.counts()[mode] as f64;
        worst = worst.max((n_op.entries()[[i, i]] - expected).abs());
    }
    Ok(worst)
}

/// Interior/boundary commutator defects on one sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorDefects {
    /// States on which every ≤2-step ladder sequence stays inside the basis.
    pub interior_count: usize,
    pub boundary_count: usize,
    /// Max deviation of `[âᵢ, âⱼ†]_q − δᵢⱼ·1` over interior columns;
    /// `None` when the sector has no interior states.
    pub defect_mixed: Option<f64>,
    /// Max deviation of `[âᵢ, âⱼ]_q` and `[âᵢ†, âⱼ†]_q` from zero over
    /// interior columns.
    pub defect_aa: Option<f64>,
    /// Largest deviation seen on boundary columns (diagnostic only:
    /// truncation artifacts, not algebra violations).
    pub boundary_max: f64,
}

/// Commutator identity report for a mode pair, resolved by sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorReport {
    pub sectors: SectorPair<SectorDefects>,
}

impl CommutatorReport {
    /// Max interior mixed-bracket defect over sectors that have interior
    /// states; `None` if neither does.
    pub fn defect_mixed(&self) -> Option<f64> {
        max_opt(self.sectors.plus.defect_mixed, self.sectors.minus.defect_mixed)
    }

    /// Max interior pure-bracket defect over sectors with interior states.
    pub fn defect_aa(&self) -> Option<f64> {
        max_opt(self.sectors.plus.defect_aa, self.sectors.minus.defect_aa)
    }
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (Some(x), None) => Some(x),
        (None, y) => y,
    }
}

/// Verifies the deformed commutators on interior states:
/// `âᵢâⱼ† − s·âⱼ†âᵢ = δᵢⱼ` plus the vanishing of `[âᵢ,âⱼ]_q` and
/// `[âᵢ†,âⱼ†]_q`, with `s` the sector sign (adjoint convention).
///
/// A state is interior for `(i, j)` when every ladder sequence of length ≤ 2
/// over modes `{i, j}` keeps the configuration within the truncation bounds;
/// −1-sector double-occupancy targets count as physical zeros, not as
/// truncation. Boundary states are reported, never failed.
pub fn commutator_defect(
    i: usize,
    j: usize,
    basis: &FockBasis,
) -> Result<CommutatorReport, AlgebraError> {
    basis.check_mode(i)?;
    basis.check_mode(j)?;

    let ci = creation_matrix(i, basis)?;
    let cj = creation_matrix(j, basis)?;
    let ai = ci.transpose();
    let aj = cj.transpose();
    let dim = basis.len();

    // Sector sign as a diagonal left factor; products never mix sectors.
    let scale_rows = |m: &OperatorMatrix| {
        let mut out = m.entries().clone();
        for (r, (_, sector)) in basis.states().iter().enumerate() {
            if *sector == Sector::Minus {
                for c in 0..dim {
                    out[[r, c]] = -out[[r, c]];
                }
            }
        }
        OperatorMatrix::new(out)
    };

    // [a_i, a_j†]_q − δ_ij·1^q, the unit operator acting as the sector-
    // resolved eigenvalue u(n, s) (identically 1 on enumerated states, since
    // zero-norm configurations never enter the basis).
    let mut mixed = ai.dot(&cj).entries() - scale_rows(&cj.dot(&ai)).entries();
    if i == j {
        for (k, (cfg, sector)) in basis.states().iter().enumerate() {
            mixed[[k, k]] -= cfg.sector_unit(*sector);
        }
    }
    // [a_i, a_j]_q and [a_i†, a_j†]_q
    let pure_ann = ai.dot(&aj).entries() - scale_rows(&aj.dot(&ai)).entries();
    let pure_cre = ci.dot(&cj).entries() - scale_rows(&cj.dot(&ci)).entries();

    let mut defects = SectorPair {
        plus: SectorDefects {
            interior_count: 0,
            boundary_count: 0,
            defect_mixed: None,
            defect_aa: None,
            boundary_max: 0.0,
        },
        minus: SectorDefects {
            interior_count: 0,
            boundary_count: 0,
            defect_mixed: None,
            defect_aa: None,
            boundary_max: 0.0,
        },
    };

    for (col, (cfg, sector)) in basis.states().iter().enumerate() {
        let col_max = |m: &Array2<f64>| {
            let mut v = 0.0f64;
            for r in 0..dim {
                v = v.max(m[[r, col]].abs());
            }
            v
        };
        let dev_mixed = col_max(&mixed);
        let dev_aa = col_max(&pure_ann).max(col_max(&pure_cre));

        let slot = match sector {
            Sector::Plus => &mut defects.plus,
            Sector::Minus => &mut defects.minus,
        };
        if is_interior(basis, cfg.counts(), i, j, *sector) {
            slot.interior_count += 1;
            slot.defect_mixed = Some(slot.defect_mixed.unwrap_or(0.0).max(dev_mixed));
            slot.defect_aa = Some(slot.defect_aa.unwrap_or(0.0).max(dev_aa));
        } else {
            slot.boundary_count += 1;
            slot.boundary_max = slot.boundary_max.max(dev_mixed.max(dev_aa));
        }
    }
    Ok(CommutatorReport { sectors: defects })
}

/// Two-application closure: every creation reachable in ≤2 ladder steps over
/// `{i, j}` must stay inside the truncation bounds or be a physical zero.
fn is_interior(basis: &FockBasis, counts: &[u32], i: usize, j: usize, sector: Sector) -> bool {
    let modes = if i == j { vec![i] } else { vec![i, j] };
    for &k in &modes {
        if !basis.creation_closed(counts, k, sector) {
            return false;
        }
        // create k, then create l (skip if the first step was a physical zero)
        if !(sector == Sector::Minus && counts[k] >= 1) {
            let mut up = counts.to_vec();
            up[k] += 1;
            for &l in &modes {
                if !basis.creation_closed(&up, l, sector) {
                    return false;
                }
            }
        }
        // annihilate k, then create l
        if counts[k] >= 1 {
            let mut down = counts.to_vec();
            down[k] -= 1;
            for &l in &modes {
                if !basis.creation_closed(&down, l, sector) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_enumeration_single_mode() {
        // States {(0,+),(0,−),(1,+),(1,−),(2,+)}: the (2,−) state has zero norm.
        let basis = FockBasis::new(1, 2, 2).unwrap();
        assert_eq!(basis.len(), 5);
        let counts: Vec<_> = basis
            .states()
            .iter()
            .map(|(c, s)| (c.counts()[0], *s))
            .collect();
        assert_eq!(
            counts,
            vec![
                (0, Sector::Plus),
                (0, Sector::Minus),
                (1, Sector::Plus),
                (1, Sector::Minus),
                (2, Sector::Plus),
            ]
        );
    }

    #[test]
    fn basis_enumeration_two_modes_simple() {
        let basis = FockBasis::new(2, 1, 2).unwrap();
        assert_eq!(basis.len(), 8, "4 configs × 2 sectors");
    }

    #[test]
    fn basis_vacuum_only() {
        let basis = FockBasis::new(1, 0, 4).unwrap();
        assert_eq!(basis.len(), 2, "vacuum on both sectors");
    }

    #[test]
    fn basis_rejects_oversize() {
        let err = FockBasis::with_limit(6, 9, 54, 1000).unwrap_err();
        assert!(matches!(err, AlgebraError::EnumerationTooLarge { .. }));
    }

    #[test]
    fn creation_from_vacuum_is_unity() {
        let basis = FockBasis::new(2, 2, 4).unwrap();
        let c = creation_matrix(0, &basis).unwrap();
        for sector in Sector::BOTH {
            let vac = basis.index_of(&[0, 0], sector).unwrap();
            let one = basis.index_of(&[1, 0], sector).unwrap();
            assert_eq!(c.entries()[[one, vac]], 1.0);
        }
    }

    #[test]
    fn creation_phase_counts_preceding_occupation() {
        // Mode 2 creation on (1,0) in the −1 sector: (−1)^1·√1 = −1.
        let basis = FockBasis::new(2, 2, 4).unwrap();
        let c = creation_matrix(1, &basis).unwrap();
        let src = basis.index_of(&[1, 0], Sector::Minus).unwrap();
        let dst = basis.index_of(&[1, 1], Sector::Minus).unwrap();
        assert_eq!(c.entries()[[dst, src]], -1.0);
        // Same transition on the +1 sector has no phase.
        let srcp = basis.index_of(&[1, 0], Sector::Plus).unwrap();
        let dstp = basis.index_of(&[1, 1], Sector::Plus).unwrap();
        assert_eq!(c.entries()[[dstp, srcp]], 1.0);
    }

    #[test]
    fn pauli_blocked_creation_vanishes() {
        let basis = FockBasis::new(1, 3, 3).unwrap();
        let c = creation_matrix(0, &basis).unwrap();
        let src = basis.index_of(&[1], Sector::Minus).unwrap();
        for r in 0..basis.len() {
            assert_eq!(c.entries()[[r, src]], 0.0);
        }
    }

    #[test]
    fn adjoint_is_exact_transpose() {
        let basis = FockBasis::new(2, 3, 5).unwrap();
        for mode in 0..2 {
            let c = creation_matrix(mode, &basis).unwrap();
            let a = annihilation_matrix(mode, &basis, AnnihilationConvention::Adjoint).unwrap();
            assert_eq!(a.max_abs_diff(&c.transpose()), 0.0);
        }
    }

    #[test]
    fn literal_flips_sign_on_minus_sector() {
        let basis = FockBasis::new(1, 2, 2).unwrap();
        let adj = annihilation_matrix(0, &basis, AnnihilationConvention::Adjoint).unwrap();
        let lit = annihilation_matrix(0, &basis, AnnihilationConvention::Literal).unwrap();
        let vac_m = basis.index_of(&[0], Sector::Minus).unwrap();
        let one_m = basis.index_of(&[1], Sector::Minus).unwrap();
        assert_eq!(adj.entries()[[vac_m, one_m]], 1.0);
        assert_eq!(lit.entries()[[vac_m, one_m]], -1.0);
        let gap = convention_discrepancy(0, &basis).unwrap();
        assert_eq!(gap.entries()[[vac_m, one_m]], -2.0);
        // +1 sector: conventions agree.
        let vac_p = basis.index_of(&[0], Sector::Plus).unwrap();
        let one_p = basis.index_of(&[1], Sector::Plus).unwrap();
        assert_eq!(gap.entries()[[vac_p, one_p]], 0.0);
    }

    #[test]
    fn annihilation_kills_vacuum() {
        let basis = FockBasis::new(2, 2, 4).unwrap();
        for convention in [AnnihilationConvention::Adjoint, AnnihilationConvention::Literal] {
            for mode in 0..2 {
                let a = annihilation_matrix(mode, &basis, convention).unwrap();
                for sector in Sector::BOTH {
                    let vac = basis.index_of(&[0, 0], sector).unwrap();
                    for r in 0..basis.len() {
                        assert_eq!(a.entries()[[r, vac]], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn number_operator_is_exact() {
        for (m, n_max) in [(1usize, 4u32), (2, 3)] {
            let basis = FockBasis::new(m, n_max, m as u32 * n_max).unwrap();
            for mode in 0..m {
                assert!(number_operator_check(mode, &basis).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn commutators_vanish_on_interior() {
        let basis = FockBasis::new(2, 3, 6).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let rep = commutator_defect(i, j, &basis).unwrap();
                assert!(rep.defect_mixed().unwrap() <= 1e-12, "i={i} j={j}");
                assert!(rep.defect_aa().unwrap() <= 1e-12, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn single_mode_limits_reduce_to_bose_and_fermi() {
        let basis = FockBasis::new(1, 4, 4).unwrap();
        let rep = commutator_defect(0, 0, &basis).unwrap();
        // Bosonic sector: [a, a†] = 1 on interior states n ≤ 2.
        assert!(rep.sectors.plus.interior_count >= 3);
        assert!(rep.sectors.plus.defect_mixed.unwrap() <= 1e-12);
        // Fermionic sector: {a, a†} = 1 on the physical states {0, 1}.
        assert_eq!(rep.sectors.minus.interior_count, 2);
        assert!(rep.sectors.minus.defect_mixed.unwrap() <= 1e-12);
    }

    #[test]
    fn truncation_starves_bosonic_interior_at_nmax_one() {
        let basis = FockBasis::new(1, 1, 1).unwrap();
        let rep = commutator_defect(0, 0, &basis).unwrap();
        assert_eq!(rep.sectors.plus.interior_count, 0);
        assert!(rep.sectors.plus.defect_mixed.is_none());
        // The fermionic sector stays fully verifiable.
        assert_eq!(rep.sectors.minus.interior_count, 2);
        assert!(rep.sectors.minus.defect_mixed.unwrap() <= 1e-12);
    }

    #[test]
    fn boundary_states_are_reported_not_failed() {
        let basis = FockBasis::new(1, 3, 3).unwrap();
        let rep = commutator_defect(0, 0, &basis).unwrap();
        assert!(rep.sectors.plus.boundary_count > 0);
        // Truncation makes the bracket visibly wrong at the boundary.
        assert!(rep.sectors.plus.boundary_max > 0.5);
    }
}
