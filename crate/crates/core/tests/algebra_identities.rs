#![allow(clippy::needless_range_loop)] // dense matrix comparisons index both axes

//! Structural identities of the exchange algebra, checked by brute force on
//! small spaces: projector laws, the counting identity behind the
//! symmetrized-state normalization, orthonormality, and the deformed
//! commutators over the full truncation sweep.

use qgas_core::exchange_algebra::{
    annihilation_matrix, commutator_defect, convention_discrepancy, creation_matrix,
    number_operator_check, overlap, symmetrized_state, symmetrizer_matrix, unit_weight,
    AnnihilationConvention, FockBasis, InternalState, OccupationConfig, Sector,
};

const TOL: f64 = 1e-12;

/// All occupation assignments (as sorted label sequences) with n particles
/// in d modes.
fn multisets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, left: usize, d: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for label in start..d {
            current.push(label);
            rec(label, left - 1, d, current, out);
            current.pop();
        }
    }
    rec(0, n, d, &mut current, &mut out);
    out
}

fn tuple_index(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * d + t)
}

/// Parity of a sequence of distinct labels, by inversion count.
fn inversion_sign(tuple: &[usize]) -> f64 {
    let mut inversions = 0;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            if tuple[i] > tuple[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Distinct arrangements of a sorted assignment (plain next-permutation walk).
fn distinct_arrangements(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut arrangement = sorted.to_vec();
    let mut out = vec![arrangement.clone()];
    loop {
        // next lexicographic permutation
        let n = arrangement.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| arrangement[i] < arrangement[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| arrangement[j] > arrangement[i]).unwrap();
        arrangement.swap(i, j);
        arrangement[i + 1..].reverse();
        out.push(arrangement.clone());
    }
    out
}

#[test]
fn projector_laws_full_sweep() {
    // Idempotence and symmetry for all N ≤ 5, d ≤ 4.
    for n in 1..=5usize {
        for d in 1..=4usize {
            let q = symmetrizer_matrix(n, d).unwrap();
            for sector in Sector::BOTH {
                let m = q.get(sector);
                assert!(m.asymmetry() <= TOL, "Q ≠ Qᵀ at N={n}, d={d}, {sector}");
                assert!(
                    m.dot(m).max_abs_diff(m) <= TOL,
                    "Q² ≠ Q at N={n}, d={d}, {sector}"
                );
            }
        }
    }
}

#[test]
fn sector_blocks_equal_independent_projectors() {
    // Independent constructions: the symmetric projector from normalized
    // multiset vectors, the antisymmetric one from determinant-style vectors.
    for n in 2..=4usize {
        for d in 2..=3usize {
            let dim = d.pow(n as u32);
            let q = symmetrizer_matrix(n, d).unwrap();

            let mut sym = vec![vec![0.0f64; dim]; dim];
            for assignment in multisets(n, d) {
                let arrangements = distinct_arrangements(&assignment);
                let norm = 1.0 / (arrangements.len() as f64).sqrt();
                let mut v = vec![0.0f64; dim];
                for a in &arrangements {
                    v[tuple_index(a, d)] = norm;
                }
                for r in 0..dim {
                    for c in 0..dim {
                        sym[r][c] += v[r] * v[c];
                    }
                }
            }
            let mut worst = 0.0f64;
            for r in 0..dim {
                for c in 0..dim {
                    worst = worst.max((q.plus.entries()[[r, c]] - sym[r][c]).abs());
                }
            }
            assert!(worst <= TOL, "symmetric block N={n} d={d}: {worst}");

            let mut anti = vec![vec![0.0f64; dim]; dim];
            for assignment in multisets(n, d) {
                if assignment.windows(2).any(|w| w[0] == w[1]) {
                    continue; // repeated label: no antisymmetric vector
                }
                let arrangements = distinct_arrangements(&assignment);
                let norm = 1.0 / (arrangements.len() as f64).sqrt();
                let mut v = vec![0.0f64; dim];
                for a in &arrangements {
                    v[tuple_index(a, d)] = inversion_sign(a) * norm;
                }
                for r in 0..dim {
                    for c in 0..dim {
                        anti[r][c] += v[r] * v[c];
                    }
                }
            }
            let mut worst = 0.0f64;
            for r in 0..dim {
                for c in 0..dim {
                    worst = worst.max((q.minus.entries()[[r, c]] - anti[r][c]).abs());
                }
            }
            assert!(worst <= TOL, "antisymmetric block N={n} d={d}: {worst}");
        }
    }
}

#[test]
fn counting_identity_by_direct_expansion() {
    // Q applied to a product state equals (Π nᵢ!)/N! times the signed sum
    // over distinct arrangements, and vanishes on the −1 sector as soon as
    // any mode is multiply occupied.
    for n in 1..=4usize {
        for d in 2..=3usize {
            let q = symmetrizer_matrix(n, d).unwrap();
            let n_fact: f64 = (1..=n).map(|k| k as f64).product();
            for assignment in multisets(n, d) {
                let dim = d.pow(n as u32);
                let col = tuple_index(&assignment, d);
                let mut counts = vec![0u32; d];
                for &l in &assignment {
                    counts[l] += 1;
                }
                let occ_fact: f64 = counts
                    .iter()
                    .map(|&c| (1..=c as u64).map(|k| k as f64).product::<f64>())
                    .product();
                let repeated = counts.iter().any(|&c| c >= 2);
                let arrangements = distinct_arrangements(&assignment);

                let mut expect_plus = vec![0.0f64; dim];
                let mut expect_minus = vec![0.0f64; dim];
                for a in &arrangements {
                    let idx = tuple_index(a, d);
                    expect_plus[idx] = occ_fact / n_fact;
                    if !repeated {
                        expect_minus[idx] = inversion_sign(a) / n_fact;
                    }
                }
                for r in 0..dim {
                    assert!(
                        (q.plus.entries()[[r, col]] - expect_plus[r]).abs() <= TOL,
                        "plus column N={n} d={d} {assignment:?}"
                    );
                    assert!(
                        (q.minus.entries()[[r, col]] - expect_minus[r]).abs() <= TOL,
                        "minus column N={n} d={d} {assignment:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn norms_and_overlaps_over_all_small_configs() {
    let deltas = [0.0, 0.17, 0.5, 0.83, 1.0];
    for n in 1..=4usize {
        for d in 2..=3usize {
            let states: Vec<_> = multisets(n, d)
                .into_iter()
                .map(|a| symmetrized_state(&a, d).unwrap())
                .collect();
            for &delta in &deltas {
                let internal = InternalState::new(delta).unwrap();
                for (i, a) in states.iter().enumerate() {
                    let expect = unit_weight(a.config(), &internal);
                    assert!(
                        (a.weighted_norm_sq(&internal) - expect).abs() <= TOL,
                        "norm N={n} d={d} δ={delta} config {}",
                        a.config()
                    );
                    for b in states.iter().skip(i + 1) {
                        let s = overlap(a, b).unwrap();
                        let w = s.weighted(&internal);
                        assert!(
                            w.abs() <= TOL,
                            "distinct configs must be orthogonal: {} vs {}",
                            a.config(),
                            b.config()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn ladder_adjointness_everywhere() {
    for modes in 1..=3usize {
        let basis = FockBasis::new(modes, 3, 3 * modes as u32).unwrap();
        for mode in 0..modes {
            let c = creation_matrix(mode, &basis).unwrap();
            let a = annihilation_matrix(mode, &basis, AnnihilationConvention::Adjoint).unwrap();
            assert_eq!(a.max_abs_diff(&c.transpose()), 0.0);
        }
    }
}

#[test]
fn literal_convention_differs_only_on_minus_sector() {
    let basis = FockBasis::new(2, 3, 6).unwrap();
    for mode in 0..2 {
        let gap = convention_discrepancy(mode, &basis).unwrap();
        for (col, (_, sector)) in basis.states().iter().enumerate() {
            for row in 0..basis.len() {
                let v = gap.entries()[[row, col]];
                match sector {
                    Sector::Plus => assert_eq!(v, 0.0, "conventions agree on +1"),
                    Sector::Minus => {
                        // Any nonzero gap is a pure sign flip: −2·(adjoint).
                        if v != 0.0 {
                            let adj =
                                annihilation_matrix(mode, &basis, AnnihilationConvention::Adjoint)
                                    .unwrap();
                            assert!((v + 2.0 * adj.entries()[[row, col]]).abs() <= TOL);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn number_and_commutator_sweep() {
    // Number-operator identity and interior commutator defects over the full
    // truncation range M ≤ 3, n_max ≤ 4.
    for modes in 1..=3usize {
        for n_max in 1..=4u32 {
            let basis = FockBasis::new(modes, n_max, n_max * modes as u32).unwrap();
            for mode in 0..modes {
                assert!(
                    number_operator_check(mode, &basis).unwrap() <= TOL,
                    "number operator M={modes} n_max={n_max} mode={mode}"
                );
            }
            for i in 0..modes {
                for j in 0..modes {
                    let rep = commutator_defect(i, j, &basis).unwrap();
                    for (sector, defects) in [
                        (Sector::Plus, rep.sectors.plus),
                        (Sector::Minus, rep.sectors.minus),
                    ] {
                        if let Some(dev) = defects.defect_mixed {
                            assert!(
                                dev <= TOL,
                                "mixed defect M={modes} n_max={n_max} ({i},{j}) {sector}: {dev}"
                            );
                        }
                        if let Some(dev) = defects.defect_aa {
                            assert!(
                                dev <= TOL,
                                "pure defect M={modes} n_max={n_max} ({i},{j}) {sector}: {dev}"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zero_norm_states_never_enumerated() {
    let basis = FockBasis::new(3, 2, 6).unwrap();
    for (cfg, sector) in basis.states() {
        if *sector == Sector::Minus {
            assert!(
                cfg.counts().iter().all(|&c| c <= 1),
                "zero-norm state {cfg} on −1 sector"
            );
        }
    }
    // And the index lookup agrees with enumeration order.
    for (i, (cfg, s)) in basis.states().iter().enumerate() {
        assert_eq!(basis.index_of(cfg.counts(), *s), Some(i));
    }
    assert_eq!(
        basis.index_of(&[2, 0, 0], Sector::Minus),
        None,
        "excluded state must not be indexed"
    );
}

#[test]
fn configs_recompute_consistently() {
    let cfg = OccupationConfig::new(vec![0, 3, 1, 2, 0, 1]);
    assert_eq!(cfg.total(), 7);
    assert_eq!(cfg.multi_count(), 2);
    let simple = OccupationConfig::new(vec![1, 0, 1]);
    assert_eq!(simple.multi_count(), 0);
    assert!(simple.is_simple());
}
