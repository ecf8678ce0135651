//! Randomized invariant checks over the simulation core: gate algebra,
//! transform identities, window normalization, readout bookkeeping, and
//! response-polynomial structure.

use num_complex::Complex64;
use proptest::prelude::*;

use qpelab::qpe::{
    coalesce_bins, emulate_qpe, inverse_qft, miss_probability, quantum_fourier_transform, run_qpe,
    success_probability,
};
use qpelab::qsp::{qsp_response, qsp_unitary};
use qpelab::qsvt::{run_qsvt_qpe, QsvtQpeConfig};
use qpelab::statevector::{GateSpec, StateVector};
use qpelab::sweep::spearman;
use qpelab::window::{make_window, WindowKind};

const NORM_TOL: f64 = 1e-12;
const EQUIV_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Strategies.
// ---------------------------------------------------------------------------

fn arb_window() -> impl Strategy<Value = WindowKind> {
    prop_oneof![
        Just(WindowKind::Rectangular),
        Just(WindowKind::Cosine),
        Just(WindowKind::Sine),
        (0.0..60.0f64).prop_map(|alpha| WindowKind::Kaiser { alpha }),
    ]
}

/// Abstract gate descriptor mapped onto concrete qubits inside each test.
#[derive(Debug, Clone, Copy)]
struct GatePick {
    kind: u8,
    target: usize,
    control: usize,
    theta: f64,
    controlled: bool,
}

fn arb_gate() -> impl Strategy<Value = GatePick> {
    (0u8..5, 0usize..32, 0usize..32, -1.0..1.0f64, any::<bool>()).prop_map(
        |(kind, target, control, theta, controlled)| GatePick {
            kind,
            target,
            control,
            theta,
            controlled,
        },
    )
}

fn realize(pick: GatePick, num_qubits: usize) -> GateSpec {
    let target = pick.target % num_qubits;
    let base = match pick.kind {
        0 => GateSpec::h(target),
        1 => GateSpec::x(target),
        2 => GateSpec::phase_turns(pick.theta, target),
        3 => GateSpec::ry(pick.theta, target),
        _ => GateSpec::z_pair(pick.theta, target),
    };
    if pick.controlled && num_qubits > 1 {
        let control = (target + 1 + pick.control % (num_qubits - 1)) % num_qubits;
        base.controlled(control)
    } else {
        base
    }
}

// ---------------------------------------------------------------------------
// Gate algebra.
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn random_circuits_preserve_the_norm(
        num_qubits in 1usize..=5,
        picks in prop::collection::vec(arb_gate(), 1..12),
        seed_index in 0usize..32,
    ) {
        let dim = 1usize << num_qubits;
        let mut sv = StateVector::new_basis_state(num_qubits, seed_index % dim).unwrap();
        for pick in picks {
            sv.apply_gate(&realize(pick, num_qubits)).unwrap();
        }
        prop_assert!((sv.norm_sqr() - 1.0).abs() < NORM_TOL);
    }

    #[test]
    fn a_gate_followed_by_its_dagger_is_the_identity(
        num_qubits in 1usize..=5,
        prep in prop::collection::vec(arb_gate(), 0..6),
        pick in arb_gate(),
    ) {
        let mut sv = StateVector::zero_state(num_qubits).unwrap();
        for p in prep {
            sv.apply_gate(&realize(p, num_qubits)).unwrap();
        }
        let before: Vec<Complex64> = (0..sv.dim()).map(|i| sv.amplitude(i)).collect();
        let gate = realize(pick, num_qubits);
        sv.apply_gate(&gate).unwrap();
        sv.apply_gate(&gate.dagger()).unwrap();
        for (i, want) in before.iter().enumerate() {
            prop_assert!((sv.amplitude(i) - want).norm() < NORM_TOL);
        }
    }

    #[test]
    fn marginals_are_probability_distributions(
        num_qubits in 2usize..=5,
        picks in prop::collection::vec(arb_gate(), 1..10),
        keep_mask in 1usize..31,
    ) {
        let mut sv = StateVector::zero_state(num_qubits).unwrap();
        for pick in picks {
            sv.apply_gate(&realize(pick, num_qubits)).unwrap();
        }
        let keep: Vec<usize> = (0..num_qubits).filter(|q| keep_mask & (1 << q) != 0).collect();
        prop_assume!(!keep.is_empty());
        let probs = sv.register_marginal(&keep).unwrap();
        let total: f64 = probs.iter().sum();
        prop_assert!((total - 1.0).abs() < NORM_TOL);
        prop_assert!(probs.iter().all(|&p| (-NORM_TOL..=1.0 + NORM_TOL).contains(&p)));
    }

    #[test]
    fn transform_then_inverse_is_the_identity(
        num_qubits in 1usize..=6,
        basis in 0usize..64,
    ) {
        let dim = 1usize << num_qubits;
        let basis = basis % dim;
        let mut sv = StateVector::new_basis_state(num_qubits, basis).unwrap();
        sv.apply_circuit(&quantum_fourier_transform(num_qubits)).unwrap();
        sv.apply_circuit(&inverse_qft(num_qubits)).unwrap();
        for i in 0..dim {
            let want = if i == basis { 1.0 } else { 0.0 };
            prop_assert!((sv.amplitude(i) - Complex64::new(want, 0.0)).norm() < 1e-11);
        }
    }
}

// ---------------------------------------------------------------------------
// Windows.
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn windows_are_normalized_and_non_negative(
        kind in arb_window(),
        num_qubits in 1usize..=10,
    ) {
        let w = make_window(kind, num_qubits).unwrap();
        prop_assert_eq!(w.len(), 1usize << num_qubits);
        let total: f64 = w.iter().map(|v| v * v).sum();
        prop_assert!((total - 1.0).abs() < NORM_TOL);
        prop_assert!(w.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn even_profiles_are_symmetric_about_the_signed_origin(
        kind in prop_oneof![
            Just(WindowKind::Rectangular),
            Just(WindowKind::Cosine),
            (0.0..60.0f64).prop_map(|alpha| WindowKind::Kaiser { alpha }),
        ],
        num_qubits in 2usize..=9,
    ) {
        let w = make_window(kind, num_qubits).unwrap();
        let n = w.len();
        for k in 1..n / 2 {
            prop_assert!((w[n / 2 + k] - w[n / 2 - k]).abs() < NORM_TOL);
        }
    }
}

// ---------------------------------------------------------------------------
// Readout estimation.
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuit_and_emulator_agree_pointwise(
        kind in arb_window(),
        num_qubits in 1usize..=6,
        phi in 0.0..1.0f64,
    ) {
        let circuit = run_qpe(kind, num_qubits, phi).unwrap();
        let transform = emulate_qpe(kind, num_qubits, phi).unwrap();
        for (a, b) in circuit.iter().zip(&transform) {
            prop_assert!((a - b).abs() < EQUIV_TOL);
        }
    }

    #[test]
    fn readout_is_a_distribution_and_success_is_a_probability(
        kind in arb_window(),
        num_qubits in 1usize..=8,
        phi in 0.0..1.0f64,
    ) {
        let probs = emulate_qpe(kind, num_qubits, phi).unwrap();
        let total: f64 = probs.iter().sum();
        prop_assert!((total - 1.0).abs() < NORM_TOL);
        let success = success_probability(&probs, phi).unwrap();
        prop_assert!((0.0..=1.0 + NORM_TOL).contains(&success));
    }

    #[test]
    fn shifting_the_phase_by_whole_bins_rotates_the_readout(
        kind in arb_window(),
        num_qubits in 1usize..=7,
        phi in 0.0..1.0f64,
        shift in 1usize..64,
    ) {
        let n = 1usize << num_qubits;
        let shift = shift % n;
        let base = emulate_qpe(kind, num_qubits, phi).unwrap();
        let moved = emulate_qpe(kind, num_qubits, (phi + shift as f64 / n as f64).fract()).unwrap();
        for y in 0..n {
            prop_assert!((moved[(y + shift) % n] - base[y]).abs() < EQUIV_TOL);
        }
    }

    #[test]
    fn exactly_representable_phases_read_out_perfectly_through_a_flat_window(
        num_qubits in 1usize..=8,
        bin in 0usize..256,
    ) {
        let n = 1usize << num_qubits;
        let bin = bin % n;
        let probs = emulate_qpe(WindowKind::Rectangular, num_qubits, bin as f64 / n as f64).unwrap();
        prop_assert!((probs[bin] - 1.0).abs() < EQUIV_TOL);
    }

    #[test]
    fn distance_and_cell_pair_criteria_agree_without_padding(
        kind in arb_window(),
        num_qubits in 1usize..=7,
        cell in 0usize..128,
        offset in 0.1..0.9f64,
    ) {
        // With no padding the tolerated ball of radius one around the scaled
        // phase contains exactly the two nearest readout cells, so both
        // figures of merit must coincide (away from exact phases, where the
        // cell-pair rule is a convention).
        let n = 1usize << num_qubits;
        let phi = ((cell % n) as f64 + offset) / n as f64;
        let fine = emulate_qpe(kind, num_qubits, phi).unwrap();
        let success = success_probability(&fine, phi).unwrap();
        let miss = miss_probability(&fine, phi, num_qubits).unwrap();
        prop_assert!((success - (1.0 - miss)).abs() < 1e-12);
    }

    #[test]
    fn coalescing_preserves_probability_chunk_by_chunk(
        weights in prop::collection::vec(0.0..1.0f64, 2..=256),
        coarse_bits in 1usize..=8,
    ) {
        let n = weights.len().next_power_of_two();
        let mut fine = weights;
        fine.resize(n, 0.0);
        let total: f64 = fine.iter().sum();
        prop_assume!(total > 1e-9);
        for v in &mut fine {
            *v /= total;
        }
        let total_bits = n.trailing_zeros() as usize;
        let m = coarse_bits.min(total_bits);
        let coarse = coalesce_bins(&fine, m).unwrap();
        let span = n >> m;
        for (c, got) in coarse.iter().enumerate() {
            let want: f64 = fine[c * span..(c + 1) * span].iter().sum();
            prop_assert!((got - want).abs() < NORM_TOL);
        }
        let sum: f64 = coarse.iter().sum();
        prop_assert!((sum - 1.0).abs() < NORM_TOL);
    }
}

// ---------------------------------------------------------------------------
// Response polynomials and the bit cascade.
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn response_matrices_are_unitary(
        phases in prop::collection::vec(-1.6..1.6f64, 3..=13),
        x in 0.0..=1.0f64,
    ) {
        prop_assume!(phases.len() % 2 == 1); // even degree = odd phase count
        let u = qsp_unitary(&phases, x);
        let dot_cols =
            u[0][0].conj() * u[0][1] + u[1][0].conj() * u[1][1];
        let col0 = u[0][0].norm_sqr() + u[1][0].norm_sqr();
        let col1 = u[0][1].norm_sqr() + u[1][1].norm_sqr();
        prop_assert!((col0 - 1.0).abs() < EQUIV_TOL);
        prop_assert!((col1 - 1.0).abs() < EQUIV_TOL);
        prop_assert!(dot_cols.norm() < EQUIV_TOL);
        prop_assert!(qsp_response(&phases, x).abs() <= 1.0 + EQUIV_TOL);
    }

    #[test]
    fn zero_phases_reproduce_chebyshev_polynomials(
        half_degree in 1usize..=7,
        x in 0.0..=1.0f64,
    ) {
        let degree = 2 * half_degree;
        let phases = vec![0.0; degree + 1];
        let want = (degree as f64 * x.acos()).cos();
        prop_assert!((qsp_response(&phases, x) - want).abs() < 1e-9);
    }

    #[test]
    fn cascade_readout_never_exceeds_unit_mass(
        num_bits in 1usize..=3,
        half_degree in 1usize..=3,
        phi in 0.0..1.0f64,
    ) {
        // Zero phases give a valid (Chebyshev) filter, exercising the full
        // circuit path without an optimizer in the loop.
        let phases = vec![0.0; 2 * half_degree + 1];
        let config = QsvtQpeConfig::new(num_bits, phases, phi).unwrap();
        let probs = run_qsvt_qpe(&config).unwrap();
        prop_assert_eq!(probs.len(), 1 << num_bits);
        let total: f64 = probs.iter().sum();
        prop_assert!(total <= 1.0 + 1e-9);
        prop_assert!(probs.iter().all(|&p| (-NORM_TOL..=1.0 + NORM_TOL).contains(&p)));
    }
}

// ---------------------------------------------------------------------------
// Rank statistics.
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn rank_correlation_stays_in_bounds(
        pairs in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 3..40),
    ) {
        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        if let Ok(rho) = spearman(&xs, &ys) {
            prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&rho));
        }
    }

    #[test]
    fn monotone_pairs_have_extreme_rank_correlation(
        increments in prop::collection::vec(0.001..1.0f64, 3..30),
    ) {
        let xs: Vec<f64> = (0..increments.len()).map(|i| i as f64).collect();
        let mut running = 0.0;
        let ys: Vec<f64> = increments
            .iter()
            .map(|d| {
                running += d;
                running
            })
            .collect();
        prop_assert!((spearman(&xs, &ys).unwrap() - 1.0).abs() < 1e-12);
        let reversed: Vec<f64> = ys.iter().rev().copied().collect();
        prop_assert!((spearman(&xs, &reversed).unwrap() + 1.0).abs() < 1e-12);
    }
}
