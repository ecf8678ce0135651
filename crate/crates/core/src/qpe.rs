//! Windowed phase estimation on a dense statevector, plus a fast
//! transform-based emulator that computes the same readout distribution
//! without simulating gates.
//!
//! The estimation register has `n = m + p` qubits: `m` result qubits plus
//! `p` padding qubits. A window profile is loaded onto the register, each
//! qubit `k` picks up the kickback phase of the unitary power `2^(n-1-k)`,
//! and an inverse Fourier transform maps the accumulated phases to a readout
//! value `y` whose top `m` bits estimate the phase.

use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::statevector::{GateSpec, StateVector};
use crate::window::{window_amplitudes, WindowKind};

/// Largest register simulated as a full circuit (`2^16` amplitudes keeps
/// every per-point cost well under a second).
pub const MAX_REGISTER_QUBITS: usize = 16;

/// Largest register handled by the transform-based emulator, which only ever
/// holds one complex array of `2^n` entries.
pub const MAX_EMULATED_QUBITS: usize = 20;

static FFT_PLANS: Lazy<Mutex<FftPlanner<f64>>> = Lazy::new(|| Mutex::new(FftPlanner::new()));

fn forward_fft(len: usize) -> Arc<dyn Fft<f64>> {
    FFT_PLANS.lock().unwrap().plan_fft_forward(len)
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_REGISTER_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "estimation register of {num_qubits} qubits outside supported range 1..={MAX_REGISTER_QUBITS}"
        )));
    }
    Ok(())
}

/// Discrete Fourier transform circuit: `|x⟩ ↦ N^{-1/2} Σ_y e^{+2πixy/N}|y⟩`.
pub fn quantum_fourier_transform(num_qubits: usize) -> Vec<GateSpec> {
    let mut gates = Vec::new();
    for j in 0..num_qubits {
        gates.push(GateSpec::h(j));
        for k in 2..=(num_qubits - j) {
            gates.push(
                GateSpec::phase_turns(1.0 / (1u64 << k) as f64, j).controlled(j + k - 1),
            );
        }
    }
    for q in 0..num_qubits / 2 {
        gates.extend(GateSpec::swap(q, num_qubits - 1 - q));
    }
    gates
}

/// Inverse transform circuit: `|x⟩ ↦ N^{-1/2} Σ_y e^{-2πixy/N}|y⟩`.
pub fn inverse_qft(num_qubits: usize) -> Vec<GateSpec> {
    quantum_fourier_transform(num_qubits)
        .iter()
        .rev()
        .map(GateSpec::dagger)
        .collect()
}

/// Runs windowed phase estimation as a statevector circuit and returns the
/// readout distribution `P(y)` over the `2^n` register values.
///
/// The window is loaded with its signed coordinate centered mid-range
/// (basis state `u = x + N/2`); the half-range offset only contributes a
/// global phase per outcome, so the distribution matches the signed-sum
/// kernel exactly.
pub fn run_qpe(kind: WindowKind, num_qubits: usize, phi: f64) -> Result<Vec<f64>> {
    check_register(num_qubits)?;
    let qubits: Vec<usize> = (0..num_qubits).collect();
    let mut sv = StateVector::zero_state(num_qubits)?;
    sv.inject_register_state(&qubits, &window_amplitudes(kind, num_qubits)?)?;
    for k in 0..num_qubits {
        let power = (1u64 << (num_qubits - 1 - k)) as f64;
        sv.apply_gate(&GateSpec::phase_turns((power * phi).fract(), k))?;
    }
    sv.apply_circuit(&inverse_qft(num_qubits))?;
    sv.register_marginal(&qubits)
}

/// Computes the same readout distribution as [`run_qpe`] by direct
/// transform: `P(y) = |Σ_x w(x) e^{2πix(φ - y/N)}|²` over the signed window
/// coordinate, evaluated as one FFT per call.
pub fn emulate_qpe(kind: WindowKind, num_qubits: usize, phi: f64) -> Result<Vec<f64>> {
    if num_qubits == 0 || num_qubits > MAX_EMULATED_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "emulated register of {num_qubits} qubits outside supported range 1..={MAX_EMULATED_QUBITS}"
        )));
    }
    let w = crate::window::make_window(kind, num_qubits)?;
    emulate_qpe_with_window(&w, phi)
}

/// Transform-based readout distribution for an already-built window profile,
/// letting sweeps reuse one window across thousands of phase points.
pub fn emulate_qpe_with_window(window: &[f64], phi: f64) -> Result<Vec<f64>> {
    let n = window.len();
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "window length {n} is not a power of two"
        )));
    }
    let half = (n / 2) as i64;
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (u, v) in window.iter().enumerate() {
        let x = (u as i64 - half) as f64;
        buf[u] = Complex64::from_polar(*v, std::f64::consts::TAU * x * phi);
    }
    // The signed coordinate sits at basis slot u = x + N/2; undoing that
    // offset in the transform index is a modulus-1 factor, so the forward
    // FFT of the basis-ordered array already gives |amplitude(y)| directly
    // up to the index shift y ↦ y + N/2 absorbed below.
    forward_fft(n).process(&mut buf);
    // FFT output k corresponds to Σ_u g[u] e^{-2πiuk/N}; with u = x + N/2
    // the signed kernel picks up e^{-2πi(N/2)k/N} = (-1)^k, a pure phase.
    Ok(buf.iter().map(|a| a.norm_sqr() / n as f64).collect())
}

/// Sums fine readout probabilities into `2^m` coarse cells keyed by the top
/// `m` bits of the readout value.
pub fn coalesce_bins(fine: &[f64], coarse_qubits: usize) -> Result<Vec<f64>> {
    let n = fine.len();
    if !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "fine distribution length {n} is not a power of two"
        )));
    }
    let total_qubits = n.trailing_zeros() as usize;
    if coarse_qubits == 0 || coarse_qubits > total_qubits {
        return Err(Error::InvalidArgument(format!(
            "cannot coalesce {total_qubits} qubits into {coarse_qubits}"
        )));
    }
    let shift = total_qubits - coarse_qubits;
    let mut coarse = vec![0.0f64; 1usize << coarse_qubits];
    for (y, p) in fine.iter().enumerate() {
        coarse[y >> shift] += p;
    }
    Ok(coarse)
}

/// Probability that a coarse readout lands in one of the two cells nearest
/// the true phase: `c = ⌊2^m φ⌋` and its successor, cyclically.
pub fn success_probability(coarse: &[f64], phi: f64) -> Result<f64> {
    let m = coarse.len();
    if !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "coarse distribution length {m} is not a power of two"
        )));
    }
    let phi = phi.rem_euclid(1.0);
    let lower = (phi * m as f64).floor() as usize % m;
    let upper = (lower + 1) % m;
    Ok(coarse[lower] + coarse[upper])
}

/// Probability that the fine readout `y` misses the scaled phase `2^n φ` by
/// more than `2^p` cyclic fine bins (`p = n - m` padding qubits), i.e. that
/// the top `m` bits land outside the tolerated cell pair.
///
/// The rejected bins are summed directly so values near the noise floor are
/// not computed as a difference of two near-unit numbers.
pub fn miss_probability(fine: &[f64], phi: f64, coarse_qubits: usize) -> Result<f64> {
    let n = fine.len();
    if !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "fine distribution length {n} is not a power of two"
        )));
    }
    let total_qubits = n.trailing_zeros() as usize;
    if coarse_qubits == 0 || coarse_qubits > total_qubits {
        return Err(Error::InvalidArgument(format!(
            "{coarse_qubits} result qubits do not fit in {total_qubits}"
        )));
    }
    let radius = (1usize << (total_qubits - coarse_qubits)) as f64;
    let target = phi.rem_euclid(1.0) * n as f64;
    let mut miss = 0.0;
    for (y, p) in fine.iter().enumerate() {
        let raw = (y as f64 - target).rem_euclid(n as f64);
        let dist = raw.min(n as f64 - raw);
        if dist > radius {
            miss += p;
        }
    }
    Ok(miss)
}

/// Oracle calls consumed by one windowed estimation run: every register
/// value `x` applies the unitary `x` times, so the largest power dominates
/// and the total is `2^n - 1`.
pub fn windowed_query_cost(num_qubits: usize) -> u64 {
    (1u64 << num_qubits) - 1
}
