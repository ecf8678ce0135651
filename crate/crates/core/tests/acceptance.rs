//! Acceptance suite: every release-gating check in one target, one printed
//! pass/fail line per criterion with the measured values inline.
//!
//! Heavy shared artifacts (the degree-64 filter phases) are optimized once
//! and reused across criteria.

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use qpelab::qpe::{emulate_qpe, run_qpe, success_probability, windowed_query_cost};
use qpelab::qsp::{optimize_phases, qsp_top_left, OptimizedPhases, TARGET_DELTA, TARGET_KAPPA};
use qpelab::qsvt::{qsvt_query_cost, qsvt_sequence_gates, QsvtStepContext};
use qpelab::spectrum::{window_spectrum, DEFAULT_PAD_FACTOR};
use qpelab::statevector::StateVector;
use qpelab::sweep::{
    qsvt_m_series, qsvt_popcount_study, run_sweep, scaling_study, windowed_m_series, SweepConfig,
};
use qpelab::window::WindowKind;

/// Seed for every optimizer invocation in this suite.
const PHASE_SEED: u64 = 7;

/// Degree-64 phases shared by the headline, certification, register-scaling,
/// and bit-bias criteria.
static PHASES64: Lazy<OptimizedPhases> = Lazy::new(|| {
    optimize_phases(64, TARGET_DELTA, TARGET_KAPPA, PHASE_SEED)
        .expect("the degree-64 filter must certify")
});

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

/// Criterion 1 — textbook floor: a flat window with no padding keeps at
/// least 8/pi^2 success at every phase, and not much more at the worst one.
#[test]
fn criterion_1_textbook_bound() {
    let config = SweepConfig::windowed(WindowKind::Rectangular, 5, 0).with_points(10_000);
    let sweep = run_sweep(&config).unwrap();
    let floor = 8.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let lo = floor - 0.01;
    let hi = floor + 0.05;
    let ok = sweep.min_success >= lo && sweep.min_success <= hi;
    report(
        "1",
        ok,
        &format!(
            "rect m=5 p=0 min success {:.6} within [{:.6}, {:.6}]",
            sweep.min_success, lo, hi
        ),
    );
}

/// Criterion 2 — taper trade-off at m=4, phi=0.84375: moderate concentration
/// wins; a flat-like window pays in side lobes, an overtapered one in
/// main-lobe width.
#[test]
fn criterion_2_taper_tradeoff() {
    let m = 4;
    let phi = 0.84375;
    let alphas = [1e-5, 25.0, 200.0];
    let mut successes = Vec::new();
    let mut spectra = Vec::new();
    for &alpha in &alphas {
        let kind = WindowKind::Kaiser { alpha };
        let probs = emulate_qpe(kind, m, phi).unwrap();
        successes.push(success_probability(&probs, phi).unwrap());
        spectra.push(window_spectrum(kind, m, DEFAULT_PAD_FACTOR).unwrap());
    }
    let moderate_wins = successes[1] > successes[0] && successes[1] > successes[2];
    // "Visibly taller" side lobes: at least 20 dB of headroom.
    let taller_lobes = spectra[0].max_side_lobe_db >= spectra[1].max_side_lobe_db + 20.0;
    // "Comparable" main-lobe width: within a factor of four (the overtapered
    // profile is ~8x wider and fails this very comparison).
    let width_ratio = spectra[1].main_lobe_half_width / spectra[0].main_lobe_half_width;
    let comparable_width = (1.0..4.0).contains(&width_ratio);
    let ok = moderate_wins && taller_lobes && comparable_width;
    report(
        "2",
        ok,
        &format!(
            "success {:.6}/{:.6}/{:.6} (alpha 1e-5/25/200), side lobes {:.2}/{:.2} dB, \
             main-lobe width ratio {:.2}",
            successes[0],
            successes[1],
            successes[2],
            spectra[0].max_side_lobe_db,
            spectra[1].max_side_lobe_db,
            width_ratio
        ),
    );
}

/// Criterion 3 — headline worst-case failures at m=5, 10 000 points:
/// windows on period grids, the cascade on the full interval.
#[test]
fn criterion_3_headline_failures() {
    let points = 10_000;
    let cases: [(&str, SweepConfig, f64, f64); 4] = [
        (
            "rect p=5",
            SweepConfig::windowed(WindowKind::Rectangular, 5, 5).with_points(points),
            -2.2,
            0.3,
        ),
        (
            "cos p=4",
            SweepConfig::windowed(WindowKind::Cosine, 5, 4).with_points(points),
            -5.07,
            0.3,
        ),
        (
            "kaiser a=51 p=4",
            SweepConfig::windowed(WindowKind::Kaiser { alpha: 51.0 }, 5, 4).with_points(points),
            -7.28,
            0.5,
        ),
        (
            "cascade d=64",
            SweepConfig::qsvt(5, PHASES64.phases.clone()).with_points(points),
            -2.28,
            0.5,
        ),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (label, config, target, tol) in cases {
        let sweep = run_sweep(&config).unwrap();
        let log_fail = sweep.max_failure.log10();
        let hit = (log_fail - target).abs() <= tol;
        ok &= hit;
        details.push(format!("{label} {log_fail:+.3} (want {target:+.2}±{tol})"));
    }
    report("3", ok, &format!("log10 max failure: {}", details.join(", ")));
}

/// Criterion 4 — query budgets are exact; the published figure of 127 for
/// tapered windows is documented in the README rather than reproduced, since
/// the cost model here counts 2^(m+p) - 1 = 511 controlled applications.
#[test]
fn criterion_4_query_costs() {
    let cascade = qsvt_query_cost(5, 64);
    let rect = windowed_query_cost(5 + 5);
    let cos = windowed_query_cost(5 + 4);
    let kaiser = windowed_query_cost(5 + 4);
    let ok = cascade == 1984 && rect == 1023 && cos == 511 && kaiser == 511;
    report(
        "4",
        ok,
        &format!(
            "cascade {cascade} (want 1984), rect {rect} (want 1023), cos {cos} (want 511), \
             kaiser {kaiser} (want 511); the 127-query figure is documented, not reproduced"
        ),
    );
}

/// Criterion 5 — padding scaling laws at m=5: cosine failure falls
/// monotonically to 10^-6.5 by p=6; Kaiser reaches 10^-7 by p=4, is
/// precision-limited from p=5, and follows a doubly-exponential law better
/// than an exponential one.
#[test]
fn criterion_5_padding_scaling() {
    let points = 10_000;
    let cos = scaling_study(WindowKind::Cosine, 5, 1..=6, points).unwrap();
    let cos_failures: Vec<f64> = cos.points.iter().map(|pt| pt.max_failure).collect();
    let cos_monotone = cos_failures.windows(2).all(|w| w[1] < w[0]);
    let cos_deep = *cos_failures.last().unwrap() <= 10f64.powf(-6.5);

    let kaiser = scaling_study(WindowKind::Kaiser { alpha: 0.0 }, 5, 1..=5, points).unwrap();
    let kaiser_p4 = kaiser.points.iter().find(|pt| pt.padding == 4).unwrap();
    let kaiser_deep = kaiser_p4.max_failure <= 1e-7;
    let flags_ok = kaiser
        .points
        .iter()
        .all(|pt| pt.precision_limited == (pt.padding >= 5));
    let log_fit = kaiser.log_fit.expect("kaiser log fit");
    let loglog_fit = kaiser.loglog_fit.expect("kaiser loglog fit");
    let loglog_wins = loglog_fit.residual_norm < log_fit.residual_norm;

    let ok = cos_monotone && cos_deep && kaiser_deep && flags_ok && loglog_wins;
    report(
        "5",
        ok,
        &format!(
            "cos monotone {cos_monotone}, cos p=6 log10 {:.2}, kaiser p=4 log10 {:.2}, \
             precision flags from p=5 {flags_ok}, kaiser residuals loglog {:.4} < log {:.4}: {loglog_wins}",
            cos_failures.last().unwrap().log10(),
            kaiser_p4.max_failure.log10(),
            loglog_fit.residual_norm,
            log_fit.residual_norm
        ),
    );
}

/// Criterion 6 — register scaling: the windowed headline configuration has
/// m-independent statistics to 1e-6 across m=1..14, while the cascade's
/// success declines geometrically, consistent with a per-step failure law
/// within a factor of three in failure.
#[test]
fn criterion_6_register_scaling() {
    let grid_points = 1024;
    let kaiser = windowed_m_series(WindowKind::Kaiser { alpha: 51.0 }, 4, 1..=14, grid_points)
        .unwrap();
    let spread = |get: &dyn Fn(&qpelab::sweep::MSeriesPoint) -> f64| -> f64 {
        let values: Vec<f64> = kaiser.points.iter().map(get).collect();
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    };
    let mean_spread = spread(&|pt| pt.mean_success);
    let std_spread = spread(&|pt| pt.std_success);
    let windowed_flat = mean_spread <= 1e-6 && std_spread <= 1e-6;

    // Context: the same constancy probe on the other headline windows. Their
    // absolute failure sits above 1e-6, so the m=1 register (whose tolerance
    // ball covers the whole fine circle, forcing zero failure) already
    // spreads them past the constancy budget.
    for (label, kind, padding, top) in [
        ("cos p=4", WindowKind::Cosine, 4usize, 10usize),
        ("rect p=5", WindowKind::Rectangular, 5, 10),
    ] {
        let series = windowed_m_series(kind, padding, 1..=top, grid_points).unwrap();
        let means: Vec<f64> = series.points.iter().map(|pt| pt.mean_success).collect();
        let spread = means.iter().cloned().fold(f64::MIN, f64::max)
            - means.iter().cloned().fold(f64::MAX, f64::min);
        println!(
            "criterion 6 context: {label} mean-success spread {spread:.3e} over m=1..{top} \
             (above the 1e-6 constancy budget, as expected for its failure scale)"
        );
    }

    let cascade = qsvt_m_series(&PHASES64.phases, 3..=8, 500).unwrap();
    let strictly_decreasing = cascade
        .points
        .windows(2)
        .all(|w| w[1].mean_success < w[0].mean_success);
    let fit = cascade.fit.expect("decline fit");
    let decline_consistent = fit.max_factor < 3.0;

    let ok = windowed_flat && strictly_decreasing && decline_consistent;
    report(
        "6",
        ok,
        &format!(
            "kaiser a=51 p=4 spreads mean {mean_spread:.3e} / std {std_spread:.3e} over m=1..14 \
             (budget 1e-6); cascade strictly decreasing m=3..8 {strictly_decreasing}, per-step \
             failure {:.3e} consistent within factor {:.2} (budget 3)",
            fit.delta_eff, fit.max_factor
        ),
    );
}

/// Criterion 7 — oracle equivalence: the circuit and transform readouts
/// agree pointwise, and one cascade readout block reproduces the processed
/// response polynomial exactly.
#[test]
fn criterion_7_oracle_equivalence() {
    const CASES: usize = 100;
    const TOL: f64 = 1e-10;

    let mut rng = ChaCha20Rng::seed_from_u64(0x0E0_1CE);
    let mut worst_readout = 0.0f64;
    for _ in 0..CASES {
        let num_qubits = rng.gen_range(1..=8);
        let kind = match rng.gen_range(0..4) {
            0 => WindowKind::Rectangular,
            1 => WindowKind::Cosine,
            2 => WindowKind::Sine,
            _ => WindowKind::Kaiser {
                alpha: rng.gen_range(0.0..60.0),
            },
        };
        let phi: f64 = rng.gen_range(0.0..1.0);
        let circuit = run_qpe(kind, num_qubits, phi).unwrap();
        let transform = emulate_qpe(kind, num_qubits, phi).unwrap();
        for (a, b) in circuit.iter().zip(&transform) {
            worst_readout = worst_readout.max((a - b).abs());
        }
    }
    let readout_ok = worst_readout <= TOL;

    // One readout-conditioned cascade block (no readout-bit mixing) must
    // equal the top-left response entry at the block's signal value.
    let mut worst_block = 0.0f64;
    for _ in 0..CASES {
        let degree = 2 * rng.gen_range(1..=4);
        let phases: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-0.8..0.8)).collect();
        let phi: f64 = rng.gen_range(0.0..1.0);
        let sigma = (std::f64::consts::PI * phi).cos().abs();
        let ctx = QsvtStepContext::new(0, 1).unwrap();
        let gates = qsvt_sequence_gates(&ctx, &phases, phi).unwrap();
        // Readout bit high, ancilla low, eigenstate marked: basis 0b101.
        let mut sv = StateVector::new_basis_state(3, 0b101).unwrap();
        sv.apply_circuit(&gates).unwrap();
        let block = sv.amplitude(0b101);
        worst_block = worst_block.max((block - qsp_top_left(&phases, sigma)).norm());
    }
    let block_ok = worst_block <= TOL;

    report(
        "7",
        readout_ok && block_ok,
        &format!(
            "worst circuit-vs-transform deviation {worst_readout:.3e}, worst block-vs-response \
             deviation {worst_block:.3e} over {CASES} cases each (budget {TOL:.0e})"
        ),
    );
}

/// Criterion 8 — filter certification: degree 64 meets the deviation budget
/// on the tenfold verification grid; degree 16 does not reach the deep
/// failure regime, and its sweep proves it.
#[test]
fn criterion_8_filter_certification() {
    let d64_ok = PHASES64.achieved_delta <= TARGET_DELTA;

    let d16 = optimize_phases(16, TARGET_DELTA, TARGET_KAPPA, PHASE_SEED).unwrap();
    let sweep = run_sweep(&SweepConfig::qsvt(5, d16.phases.clone()).with_points(500)).unwrap();
    let d16_shallow = sweep.max_failure > 1e-7;

    report(
        "8",
        d64_ok && d16_shallow,
        &format!(
            "degree 64 certified deviation {:.6} <= {TARGET_DELTA}; degree 16 achieved {:.6} and \
             its m=5 sweep max failure {:.3e} stays above 1e-7",
            PHASES64.achieved_delta, d16.achieved_delta, sweep.max_failure
        ),
    );
}

/// Criterion 9 — bit bias: across all 32 exactly representable 5-bit phases,
/// failure grows with the number of set bits, and the all-zeros phase beats
/// the all-ones phase.
#[test]
fn criterion_9_bit_bias() {
    let study = qsvt_popcount_study(5, &PHASES64.phases).unwrap();
    let zeros = study.rows.iter().find(|r| r.value == 0).unwrap();
    let ones = study.rows.iter().find(|r| r.value == 31).unwrap();
    let ok = study.spearman > 0.0 && zeros.success > ones.success;
    report(
        "9",
        ok,
        &format!(
            "spearman(popcount, failure) {:+.3} > 0; all-zeros success {:.6} > all-ones {:.6}",
            study.spearman, zeros.success, ones.success
        ),
    );
}
