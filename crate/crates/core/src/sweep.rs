//! Phase sweeps, scaling studies, and readout-bias statistics.
//!
//! Everything here is deterministic: grids are fixed functions of the point
//! count, estimator outputs are pure functions of their inputs, and CSV
//! renderings format floats with full round-trip precision, so repeated runs
//! are bit-identical.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qpe::{
    emulate_qpe_with_window, miss_probability, success_probability, windowed_query_cost,
};
use crate::qsvt::{run_qsvt_qpe, QsvtQpeConfig};
use crate::window::{best_alpha, make_window, WindowKind};

/// Default number of phase points per sweep.
pub const DEFAULT_SWEEP_POINTS: usize = 10_000;

/// Failures below this are considered indistinguishable from double-precision
/// round-off accumulated across the transform, and are flagged rather than
/// trusted.
pub const PRECISION_FLOOR: f64 = 1e-12;

/// Fractional offset of full-interval grids: `(3 - sqrt(5)) / 2`.
///
/// Grid points `(i + offset) / points` never coincide with an exactly
/// representable register phase, which would otherwise contaminate summary
/// statistics with atypically perfect readouts (midpoint grids hit e.g.
/// `1/8` whenever `points` is divisible by 4 after reduction).
pub const FULL_GRID_OFFSET: f64 = 0.381_966_011_250_105_1;

/// Success-probability threshold used when selecting minimal resources.
pub const RETENTION_THRESHOLD: f64 = 0.99;

/// Which estimator a sweep drives.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepMethod {
    /// Windowed estimation on `m + p` register qubits, read through the
    /// transform emulator.
    Windowed {
        window: WindowKind,
        num_bits: usize,
        padding: usize,
    },
    /// Bit-cascade estimation with the given filter phases on `m` readout
    /// qubits, run as a full statevector circuit.
    Qsvt { num_bits: usize, phases: Vec<f64> },
}

/// Phase grid for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepGrid {
    /// Midpoint grid over one fine readout period `[0, 2^-n)`.  Windowed
    /// success is exactly periodic in the fine cell, so this grid sees every
    /// distinct behavior of the estimator.
    Period { points: usize },
    /// Offset grid over the whole unit interval `[0, 1)`.  The bit cascade
    /// is *not* fine-cell periodic — its corrections couple all bits — so
    /// it must be swept here.
    Full { points: usize },
}

impl SweepGrid {
    pub fn points(&self) -> usize {
        match *self {
            SweepGrid::Period { points } | SweepGrid::Full { points } => points,
        }
    }
}

/// A complete sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub method: SweepMethod,
    pub grid: SweepGrid,
}

impl SweepConfig {
    /// Windowed sweep over one fine period with the default point count.
    pub fn windowed(window: WindowKind, num_bits: usize, padding: usize) -> Self {
        Self {
            method: SweepMethod::Windowed {
                window,
                num_bits,
                padding,
            },
            grid: SweepGrid::Period {
                points: DEFAULT_SWEEP_POINTS,
            },
        }
    }

    /// Bit-cascade sweep over the unit interval with the default point count.
    pub fn qsvt(num_bits: usize, phases: Vec<f64>) -> Self {
        Self {
            method: SweepMethod::Qsvt { num_bits, phases },
            grid: SweepGrid::Full {
                points: DEFAULT_SWEEP_POINTS,
            },
        }
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.grid = match self.grid {
            SweepGrid::Period { .. } => SweepGrid::Period { points },
            SweepGrid::Full { .. } => SweepGrid::Full { points },
        };
        self
    }
}

/// One sweep sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub phi: f64,
    pub success: f64,
}

/// Sweep summary.  `max_failure` is `1 - min_success` by construction, with
/// the failure side accumulated directly from rejected readout bins so that
/// values near the precision floor are not differences of near-unit numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub per_phase: Vec<SweepPoint>,
    pub min_success: f64,
    pub mean_success: f64,
    pub std_success: f64,
    pub max_failure: f64,
    pub precision_limited: bool,
}

fn summarize(per_phase: Vec<SweepPoint>, failures: &[f64]) -> SweepResult {
    let max_failure = failures.iter().cloned().fold(0.0f64, f64::max);
    let successes: Vec<f64> = per_phase.iter().map(|pt| pt.success).collect();
    let count = successes.len() as f64;
    let mean = successes.iter().sum::<f64>() / count;
    let var = successes.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / count;
    SweepResult {
        min_success: 1.0 - max_failure,
        mean_success: mean,
        std_success: var.sqrt(),
        max_failure,
        precision_limited: max_failure < PRECISION_FLOOR,
        per_phase,
    }
}

fn period_grid(points: usize, register_qubits: usize) -> Vec<f64> {
    let cell = (1u64 << register_qubits) as f64;
    (0..points)
        .map(|i| (i as f64 + 0.5) / points as f64 / cell)
        .collect()
}

fn full_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| (i as f64 + FULL_GRID_OFFSET) / points as f64)
        .collect()
}

/// Runs a sweep and reduces it to summary statistics.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    let points = config.grid.points();
    if points == 0 {
        return Err(Error::InvalidArgument("sweep needs at least one point".into()));
    }
    match &config.method {
        SweepMethod::Windowed {
            window,
            num_bits,
            padding,
        } => {
            if *num_bits == 0 {
                return Err(Error::InvalidArgument(
                    "windowed sweep needs at least one result bit".into(),
                ));
            }
            let register = num_bits + padding;
            let profile = make_window(*window, register)?;
            let phis = match config.grid {
                SweepGrid::Period { .. } => period_grid(points, register),
                SweepGrid::Full { .. } => full_grid(points),
            };
            let samples: Result<Vec<(f64, f64)>> = phis
                .par_iter()
                .map(|&phi| {
                    let fine = emulate_qpe_with_window(&profile, phi)?;
                    let miss = miss_probability(&fine, phi, *num_bits)?;
                    Ok((phi, miss))
                })
                .collect();
            let samples = samples?;
            let failures: Vec<f64> = samples.iter().map(|&(_, miss)| miss).collect();
            let per_phase = samples
                .iter()
                .map(|&(phi, miss)| SweepPoint {
                    phi,
                    success: 1.0 - miss,
                })
                .collect();
            Ok(summarize(per_phase, &failures))
        }
        SweepMethod::Qsvt { num_bits, phases } => {
            if !matches!(config.grid, SweepGrid::Full { .. }) {
                return Err(Error::InvalidArgument(
                    "bit-cascade sweeps must cover the full unit interval; the cascade's \
                     bit corrections make it aperiodic in the fine cell"
                        .into(),
                ));
            }
            let phis = full_grid(points);
            let samples: Result<Vec<(f64, f64)>> = phis
                .par_iter()
                .map(|&phi| {
                    let cfg = QsvtQpeConfig::new(*num_bits, phases.clone(), phi)?;
                    let probs = run_qsvt_qpe(&cfg)?;
                    let success = success_probability(&probs, phi)?;
                    Ok((phi, success))
                })
                .collect();
            let samples = samples?;
            let failures: Vec<f64> = samples.iter().map(|&(_, s)| 1.0 - s).collect();
            let per_phase = samples
                .iter()
                .map(|&(phi, success)| SweepPoint { phi, success })
                .collect();
            Ok(summarize(per_phase, &failures))
        }
    }
}

/// Renders a sweep as CSV (`phi,success` rows).
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("# format_version=1\nphi,success\n");
    for pt in &result.per_phase {
        out.push_str(&format!("{:.17e},{:.17e}\n", pt.phi, pt.success));
    }
    out
}

/// One padding setting in a scaling study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub padding: usize,
    /// Concentration parameter actually used (0 for fixed-shape windows).
    pub alpha: f64,
    pub max_failure: f64,
    pub min_success: f64,
    pub precision_limited: bool,
    pub query_cost: u64,
}

/// Scaling-law model fitted to `y = log10(1 / max_failure)` versus padding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// `y ≈ intercept + slope · p` — failure shrinking exponentially in `p`.
    LogInvDelta,
    /// `log10(y) ≈ intercept + slope · p` — failure shrinking doubly
    /// exponentially in `p`.
    LogLogInvDelta,
}

impl FitModel {
    pub fn name(&self) -> &'static str {
        match self {
            FitModel::LogInvDelta => "log_inv_delta",
            FitModel::LogLogInvDelta => "loglog_inv_delta",
        }
    }
}

/// Least-squares fit of a scaling model, with the residual norm measured in
/// `log10(1/failure)` units for both models so they can be compared head to
/// head.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub model: FitModel,
    pub intercept: f64,
    pub slope: f64,
    pub residual_norm: f64,
}

/// Fits `model` to points `(x_i, y_i)` with `y = log10(1/max_failure)`.
///
/// Refuses fewer than three points: two points always fit a line exactly and
/// say nothing about the functional form.
pub fn fit_scaling(xs: &[f64], ys: &[f64], model: FitModel) -> Result<ScalingFit> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "mismatched fit data: {} x values, {} y values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::FitRefused(format!(
            "need at least 3 points to identify a scaling law, got {}",
            xs.len()
        )));
    }
    if ys.iter().any(|&y| y <= 0.0) {
        return Err(Error::FitRefused(
            "scaling fit requires positive log-failure magnitudes".into(),
        ));
    }
    let targets: Vec<f64> = match model {
        FitModel::LogInvDelta => ys.to_vec(),
        FitModel::LogLogInvDelta => ys.iter().map(|y| y.log10()).collect(),
    };
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let st: f64 = targets.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxt: f64 = xs.iter().zip(&targets).map(|(x, t)| x * t).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::FitRefused(
            "degenerate abscissa: all points share one x value".into(),
        ));
    }
    let slope = (n * sxt - sx * st) / denom;
    let intercept = (st - slope * sx) / n;
    let residual_norm = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let predicted_log = match model {
                FitModel::LogInvDelta => intercept + slope * x,
                FitModel::LogLogInvDelta => 10f64.powf(intercept + slope * x),
            };
            (y - predicted_log) * (y - predicted_log)
        })
        .sum::<f64>()
        .sqrt();
    Ok(ScalingFit {
        model,
        intercept,
        slope,
        residual_norm,
    })
}

/// Failure-versus-padding study for one window family at fixed `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingStudy {
    pub window: WindowKind,
    pub num_bits: usize,
    pub points: Vec<ScalingPoint>,
    /// Fit of `log10(1/failure)` linear in `p`, over non-flagged points.
    pub log_fit: Option<ScalingFit>,
    /// Fit of `log10(log10(1/failure))` linear in `p`, over the same points.
    pub loglog_fit: Option<ScalingFit>,
}

/// Sweeps one window family across a padding range and fits both scaling
/// models to the non-precision-limited points.
///
/// For concentration-tunable windows the per-padding tuning table supplies
/// the shape parameter; any parameter inside `window` is ignored.
pub fn scaling_study(
    window: WindowKind,
    num_bits: usize,
    paddings: std::ops::RangeInclusive<usize>,
    points: usize,
) -> Result<ScalingStudy> {
    let mut rows = Vec::new();
    for p in paddings {
        let kind = match window {
            WindowKind::Kaiser { .. } => WindowKind::Kaiser {
                alpha: best_alpha(p),
            },
            other => other,
        };
        let config = SweepConfig::windowed(kind, num_bits, p).with_points(points);
        let sweep = run_sweep(&config)?;
        let alpha = match kind {
            WindowKind::Kaiser { alpha } => alpha,
            _ => 0.0,
        };
        rows.push(ScalingPoint {
            padding: p,
            alpha,
            max_failure: sweep.max_failure,
            min_success: sweep.min_success,
            precision_limited: sweep.precision_limited,
            query_cost: windowed_query_cost(num_bits + p),
        });
    }
    let xs: Vec<f64> = rows
        .iter()
        .filter(|r| !r.precision_limited)
        .map(|r| r.padding as f64)
        .collect();
    let ys: Vec<f64> = rows
        .iter()
        .filter(|r| !r.precision_limited)
        .map(|r| -r.max_failure.log10())
        .collect();
    let log_fit = fit_scaling(&xs, &ys, FitModel::LogInvDelta).ok();
    let loglog_fit = fit_scaling(&xs, &ys, FitModel::LogLogInvDelta).ok();
    Ok(ScalingStudy {
        window,
        num_bits,
        points: rows,
        log_fit,
        loglog_fit,
    })
}

/// Renders a scaling study as CSV.
pub fn scaling_csv(study: &ScalingStudy) -> String {
    let mut out =
        String::from("# format_version=1\npadding,alpha,max_failure,min_success,precision_limited,query_cost\n");
    for row in &study.points {
        out.push_str(&format!(
            "{},{:.17e},{:.17e},{:.17e},{},{}\n",
            row.padding,
            row.alpha,
            row.max_failure,
            row.min_success,
            row.precision_limited,
            row.query_cost
        ));
    }
    out
}

/// Success statistics of one estimator at one register size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MSeriesPoint {
    pub num_bits: usize,
    pub mean_success: f64,
    pub std_success: f64,
    pub min_success: f64,
}

/// Windowed success statistics across result-register sizes at fixed padding.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedSeries {
    pub window: WindowKind,
    pub padding: usize,
    pub points: Vec<MSeriesPoint>,
}

/// Sweeps a window across `m` values at fixed padding (emulator only).
pub fn windowed_m_series(
    window: WindowKind,
    padding: usize,
    num_bits_range: std::ops::RangeInclusive<usize>,
    points: usize,
) -> Result<WindowedSeries> {
    let mut series = Vec::new();
    for m in num_bits_range {
        let config = SweepConfig::windowed(window, m, padding).with_points(points);
        let sweep = run_sweep(&config)?;
        series.push(MSeriesPoint {
            num_bits: m,
            mean_success: sweep.mean_success,
            std_success: sweep.std_success,
            min_success: sweep.min_success,
        });
    }
    Ok(WindowedSeries {
        window,
        padding,
        points: series,
    })
}

/// One-parameter decline law fitted to a bit-cascade series.
///
/// Models mean success as `(1 - delta_eff)^m`; `max_factor` is the largest
/// multiplicative disagreement between measured and modeled mean *failure*
/// across the series (always ≥ 1), minimized over the choice of rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeclineFit {
    pub delta_eff: f64,
    pub max_factor: f64,
}

/// Bit-cascade success statistics across register sizes, with decline fit.
#[derive(Debug, Clone, PartialEq)]
pub struct QsvtSeries {
    pub points: Vec<MSeriesPoint>,
    pub fit: Option<DeclineFit>,
}

/// Fits `mean_success(m) = (1 - delta)^m`, choosing the rate that minimizes
/// the worst multiplicative disagreement in mean *failure*.
///
/// A log-space least-squares estimate seeds the search; the reported
/// `max_factor` is the minimized worst ratio, so it measures the decline
/// itself rather than an estimator choice: `max_factor <= F` holds exactly
/// when some single per-step rate tracks every measured failure within a
/// factor of `F`.
pub fn fit_decline(points: &[MSeriesPoint]) -> Result<DeclineFit> {
    if points.len() < 2 {
        return Err(Error::FitRefused(format!(
            "need at least 2 register sizes to fit a decline law, got {}",
            points.len()
        )));
    }
    if points.iter().any(|pt| pt.mean_success <= 0.0 || pt.mean_success >= 1.0) {
        return Err(Error::FitRefused(
            "decline fit needs mean success strictly inside (0, 1)".into(),
        ));
    }
    let seed: f64 = points
        .iter()
        .map(|pt| pt.num_bits as f64 * pt.mean_success.ln())
        .sum::<f64>()
        / points
            .iter()
            .map(|pt| (pt.num_bits * pt.num_bits) as f64)
            .sum::<f64>();
    let worst = |log_retention: f64| -> f64 {
        let mut worst = 1.0f64;
        for pt in points {
            let modeled_failure = 1.0 - (pt.num_bits as f64 * log_retention).exp();
            let measured_failure = 1.0 - pt.mean_success;
            let ratio = measured_failure / modeled_failure;
            worst = worst.max(ratio.max(1.0 / ratio));
        }
        worst
    };
    // Each per-size ratio is monotone in the log-retention, so its
    // max-with-inverse is V-shaped and the pointwise maximum is quasiconvex:
    // a ternary search finds the global minimizer. The seed is negative, so
    // the bracket stays strictly below zero and modeled failure stays
    // positive throughout.
    let mut lo = seed * 4.0;
    let mut hi = seed * 0.25;
    for _ in 0..200 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if worst(a) < worst(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let log_retention = 0.5 * (lo + hi);
    Ok(DeclineFit {
        delta_eff: 1.0 - log_retention.exp(),
        max_factor: worst(log_retention),
    })
}

/// Sweeps the bit cascade across register sizes on full-interval grids.
pub fn qsvt_m_series(
    phases: &[f64],
    num_bits_range: std::ops::RangeInclusive<usize>,
    points: usize,
) -> Result<QsvtSeries> {
    let mut series = Vec::new();
    for m in num_bits_range {
        let config = SweepConfig::qsvt(m, phases.to_vec()).with_points(points);
        let sweep = run_sweep(&config)?;
        series.push(MSeriesPoint {
            num_bits: m,
            mean_success: sweep.mean_success,
            std_success: sweep.std_success,
            min_success: sweep.min_success,
        });
    }
    let fit = fit_decline(&series).ok();
    Ok(QsvtSeries { points: series, fit })
}

/// Renders an `m`-series as CSV.
pub fn m_series_csv(points: &[MSeriesPoint]) -> String {
    let mut out = String::from("# format_version=1\nnum_bits,mean_success,std_success,min_success\n");
    for pt in points {
        out.push_str(&format!(
            "{},{:.17e},{:.17e},{:.17e}\n",
            pt.num_bits, pt.mean_success, pt.std_success, pt.min_success
        ));
    }
    out
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "mismatched correlation data: {} vs {} values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "correlation needs at least two samples".into(),
        ));
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::InvalidArgument(
            "correlation undefined: a variable is constant".into(),
        ));
    }
    Ok(cov / (vx * vy).sqrt())
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Ranks are 1-based; tied entries share the average of their span.
        let shared = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

/// Success of one exactly representable register value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopcountRow {
    pub value: usize,
    pub popcount: u32,
    pub success: f64,
}

/// Readout bias across all exactly representable phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PopcountStudy {
    pub rows: Vec<PopcountRow>,
    /// Spearman correlation between popcount and *failure* probability.
    pub spearman: f64,
}

/// Runs the bit cascade at every exactly representable `m`-bit phase and
/// correlates failure with the number of one-bits in the true value.
pub fn qsvt_popcount_study(num_bits: usize, phases: &[f64]) -> Result<PopcountStudy> {
    let count = 1usize << num_bits;
    let rows: Result<Vec<PopcountRow>> = (0..count)
        .into_par_iter()
        .map(|value| {
            let phi = value as f64 / count as f64;
            let cfg = QsvtQpeConfig::new(num_bits, phases.to_vec(), phi)?;
            let probs = run_qsvt_qpe(&cfg)?;
            let success = success_probability(&probs, phi)?;
            Ok(PopcountRow {
                value,
                popcount: (value as u32).count_ones(),
                success,
            })
        })
        .collect();
    let rows = rows?;
    let pops: Vec<f64> = rows.iter().map(|r| f64::from(r.popcount)).collect();
    let failures: Vec<f64> = rows.iter().map(|r| 1.0 - r.success).collect();
    let corr = spearman(&pops, &failures)?;
    Ok(PopcountStudy {
        rows,
        spearman: corr,
    })
}

/// Same bias probe for a windowed estimator (the control arm: readout cost
/// there depends on distance to the nearest bin, not on bit patterns).
pub fn windowed_popcount_study(
    window: WindowKind,
    num_bits: usize,
    padding: usize,
) -> Result<PopcountStudy> {
    let register = num_bits + padding;
    let profile = make_window(window, register)?;
    let count = 1usize << num_bits;
    let mut rows = Vec::with_capacity(count);
    for value in 0..count {
        let phi = value as f64 / count as f64;
        let fine = emulate_qpe_with_window(&profile, phi)?;
        let success = 1.0 - miss_probability(&fine, phi, num_bits)?;
        rows.push(PopcountRow {
            value,
            popcount: (value as u32).count_ones(),
            success,
        });
    }
    let pops: Vec<f64> = rows.iter().map(|r| f64::from(r.popcount)).collect();
    let failures: Vec<f64> = rows.iter().map(|r| 1.0 - r.success).collect();
    let corr = spearman(&pops, &failures)?;
    Ok(PopcountStudy {
        rows,
        spearman: corr,
    })
}

/// Renders a popcount study as CSV.
pub fn popcount_csv(study: &PopcountStudy) -> String {
    let mut out = String::from("# format_version=1\nvalue,popcount,success\n");
    for row in &study.rows {
        out.push_str(&format!(
            "{},{},{:.17e}\n",
            row.value, row.popcount, row.success
        ));
    }
    out
}

/// Smallest padding at which a window retains `threshold` success at every
/// swept phase, scanning `0..=max_padding`.  Returns `None` when no padding
/// in range reaches the threshold.
pub fn minimal_padding(
    window: WindowKind,
    num_bits: usize,
    threshold: f64,
    max_padding: usize,
    points: usize,
) -> Result<Option<usize>> {
    for p in 0..=max_padding {
        let kind = match window {
            WindowKind::Kaiser { .. } => WindowKind::Kaiser {
                alpha: best_alpha(p),
            },
            other => other,
        };
        let config = SweepConfig::windowed(kind, num_bits, p).with_points(points);
        let sweep = run_sweep(&config)?;
        if sweep.min_success >= threshold {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsvt::qsvt_query_cost;

    /// Worst-case success of unpadded rectangular estimation.
    const TEXTBOOK_FLOOR: f64 = 8.0 / (std::f64::consts::PI * std::f64::consts::PI);

    #[test]
    fn textbook_bound_for_unpadded_rectangular() {
        let config =
            SweepConfig::windowed(WindowKind::Rectangular, 5, 0).with_points(2000);
        let res = run_sweep(&config).unwrap();
        assert!(
            res.min_success >= TEXTBOOK_FLOOR - 0.01,
            "min success {} below textbook floor",
            res.min_success
        );
        assert!(
            res.min_success <= TEXTBOOK_FLOOR + 0.05,
            "min success {} unexpectedly far above floor",
            res.min_success
        );
    }

    #[test]
    fn period_grid_stays_inside_one_fine_cell() {
        let config =
            SweepConfig::windowed(WindowKind::Rectangular, 3, 1).with_points(64);
        let res = run_sweep(&config).unwrap();
        let cell = 1.0 / 16.0;
        assert_eq!(res.per_phase.len(), 64);
        for pt in &res.per_phase {
            assert!(pt.phi > 0.0 && pt.phi < cell);
        }
    }

    #[test]
    fn full_grid_avoids_exactly_representable_phases() {
        let phis = full_grid(500);
        for phi in phis {
            let scaled = phi * 256.0;
            assert!(
                (scaled - scaled.round()).abs() > 1e-9,
                "{phi} is 8-bit representable"
            );
        }
    }

    #[test]
    fn tapered_window_beats_rectangular() {
        let rect = run_sweep(
            &SweepConfig::windowed(WindowKind::Rectangular, 3, 2).with_points(400),
        )
        .unwrap();
        let cos = run_sweep(
            &SweepConfig::windowed(WindowKind::Cosine, 3, 2).with_points(400),
        )
        .unwrap();
        assert!(
            cos.max_failure < rect.max_failure,
            "cosine {} should beat rectangular {}",
            cos.max_failure,
            rect.max_failure
        );
    }

    #[test]
    fn summary_identities_hold() {
        let res = run_sweep(
            &SweepConfig::windowed(WindowKind::Cosine, 4, 2).with_points(300),
        )
        .unwrap();
        let direct_min = res
            .per_phase
            .iter()
            .map(|pt| pt.success)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(res.min_success, direct_min);
        assert_eq!(res.min_success, 1.0 - res.max_failure);
        assert!(res.mean_success >= res.min_success);
        assert!(res.std_success >= 0.0);
    }

    #[test]
    fn strongly_concentrated_window_hits_precision_floor() {
        let config = SweepConfig::windowed(
            WindowKind::Kaiser {
                alpha: best_alpha(5),
            },
            1,
            5,
        )
        .with_points(64);
        let res = run_sweep(&config).unwrap();
        assert!(
            res.precision_limited,
            "max failure {} should sit below the precision floor",
            res.max_failure
        );
    }

    #[test]
    fn cascade_sweep_requires_full_grid() {
        let config = SweepConfig {
            method: SweepMethod::Qsvt {
                num_bits: 2,
                phases: vec![0.0; 19],
            },
            grid: SweepGrid::Period { points: 16 },
        };
        assert!(run_sweep(&config).is_err());
    }

    #[test]
    fn cascade_sweep_summary_is_consistent() {
        let config = SweepConfig::qsvt(2, vec![0.0; 19]).with_points(48);
        let res = run_sweep(&config).unwrap();
        assert_eq!(res.per_phase.len(), 48);
        assert_eq!(res.min_success, 1.0 - res.max_failure);
        assert!(res.mean_success > 0.0 && res.mean_success <= 1.0);
    }

    #[test]
    fn spearman_handles_ties_with_average_ranks() {
        let xs = [1.0, 2.0, 2.0, 3.0];
        let ys = [1.0, 2.0, 3.0, 4.0];
        let r = spearman(&xs, &ys).unwrap();
        assert!((r - 0.948_683_298_050_513_8).abs() < 1e-12, "r = {r}");
    }

    #[test]
    fn spearman_detects_perfect_monotone_relations() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let up = [0.1, 0.2, 0.3, 0.4, 0.5];
        let down = [5.0, 4.0, 3.0, 2.0, 1.0];
        assert!((spearman(&xs, &up).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&xs, &down).unwrap() + 1.0).abs() < 1e-12);
        assert!(spearman(&xs, &[1.0, 1.0, 1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn scaling_fit_recovers_synthetic_laws() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let linear: Vec<f64> = xs.iter().map(|p| 2.0 + 0.9 * p).collect();
        let fit = fit_scaling(&xs, &linear, FitModel::LogInvDelta).unwrap();
        assert!((fit.slope - 0.9).abs() < 1e-12);
        assert!((fit.intercept - 2.0).abs() < 1e-12);
        assert!(fit.residual_norm < 1e-12);

        let doubly: Vec<f64> = xs.iter().map(|p| 10f64.powf(0.1 + 0.25 * p)).collect();
        let fit2 = fit_scaling(&xs, &doubly, FitModel::LogLogInvDelta).unwrap();
        assert!((fit2.slope - 0.25).abs() < 1e-10);
        assert!(fit2.residual_norm < 1e-9);
    }

    #[test]
    fn scaling_fit_refuses_underdetermined_data() {
        assert!(matches!(
            fit_scaling(&[1.0, 2.0], &[1.0, 2.0], FitModel::LogInvDelta),
            Err(Error::FitRefused(_))
        ));
        assert!(fit_scaling(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0], FitModel::LogInvDelta).is_err());
    }

    #[test]
    fn decline_fit_recovers_synthetic_rate() {
        let delta = 1e-3f64;
        let points: Vec<MSeriesPoint> = (3..=8)
            .map(|m| MSeriesPoint {
                num_bits: m,
                mean_success: (1.0 - delta).powi(m as i32),
                std_success: 0.0,
                min_success: 0.0,
            })
            .collect();
        let fit = fit_decline(&points).unwrap();
        assert!((fit.delta_eff - delta).abs() < 1e-9, "delta {}", fit.delta_eff);
        assert!(fit.max_factor < 1.0 + 1e-6, "factor {}", fit.max_factor);
    }

    #[test]
    fn scaling_study_covers_padding_range_and_fits() {
        let study =
            scaling_study(WindowKind::Cosine, 2, 1..=4, 200).unwrap();
        assert_eq!(study.points.len(), 4);
        for (row, p) in study.points.iter().zip(1..=4usize) {
            assert_eq!(row.padding, p);
            assert_eq!(row.query_cost, (1u64 << (2 + p)) - 1);
        }
        assert!(study.log_fit.is_some());
        assert!(study.loglog_fit.is_some());
        let failures: Vec<f64> = study.points.iter().map(|r| r.max_failure).collect();
        for pair in failures.windows(2) {
            assert!(pair[1] < pair[0], "failure should fall with padding");
        }
    }

    #[test]
    fn concentration_parameter_follows_tuning_table() {
        let study = scaling_study(
            WindowKind::Kaiser { alpha: 1.0 },
            2,
            1..=3,
            100,
        )
        .unwrap();
        for row in &study.points {
            assert_eq!(row.alpha, best_alpha(row.padding));
        }
    }

    #[test]
    fn windowed_series_is_register_size_independent() {
        let series = windowed_m_series(
            WindowKind::Kaiser {
                alpha: best_alpha(4),
            },
            4,
            2..=4,
            256,
        )
        .unwrap();
        let means: Vec<f64> = series.points.iter().map(|pt| pt.mean_success).collect();
        let spread = means.iter().cloned().fold(f64::MIN, f64::max)
            - means.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-6, "mean success drifted by {spread}");
    }

    #[test]
    fn popcount_study_covers_every_register_value() {
        // An imperfect filter (arbitrary smooth phases) so successes vary and
        // the rank correlation is well defined.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(0xB1A5);
        let phases: Vec<f64> = (0..=8)
            .map(|_| rng.gen_range(-0.3..0.3))
            .collect();
        let study = qsvt_popcount_study(3, &phases).unwrap();
        assert_eq!(study.rows.len(), 8);
        for (value, row) in study.rows.iter().enumerate() {
            assert_eq!(row.value, value);
            assert_eq!(row.popcount, (value as u32).count_ones());
        }
        assert!(study.spearman.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn windowed_minimal_padding_matches_direct_scan() {
        let rect = minimal_padding(WindowKind::Rectangular, 3, RETENTION_THRESHOLD, 6, 400)
            .unwrap();
        assert_eq!(rect, Some(5));
        let cos = minimal_padding(WindowKind::Cosine, 3, RETENTION_THRESHOLD, 6, 400).unwrap();
        assert_eq!(cos, Some(1));
        let kaiser = minimal_padding(
            WindowKind::Kaiser { alpha: 0.0 },
            3,
            RETENTION_THRESHOLD,
            6,
            400,
        )
        .unwrap();
        assert_eq!(kaiser, Some(2));
    }

    #[test]
    fn csv_rendering_is_deterministic() {
        let config = SweepConfig::windowed(WindowKind::Cosine, 3, 1).with_points(100);
        let a = sweep_csv(&run_sweep(&config).unwrap());
        let b = sweep_csv(&run_sweep(&config).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("# format_version=1\nphi,success\n"));
    }

    #[test]
    fn query_cost_ordering_at_headline_settings() {
        let rect = windowed_query_cost(5 + 5);
        let cos = windowed_query_cost(5 + 4);
        let kaiser = windowed_query_cost(5 + 4);
        let cascade = qsvt_query_cost(5, 64);
        assert_eq!(kaiser, cos);
        assert!(cos < rect);
        assert!(rect < cascade);
        assert_eq!((rect, cos, cascade), (1023, 511, 1984));
    }
}
