//! Register window shapes for phase readout.
//!
//! A window is a real amplitude profile loaded onto the readout register
//! before phase kickback. Profiles are defined on the signed coordinate
//! `x ∈ [-N/2, N/2)` with `N = 2^n` the register dimension, and stored in
//! basis order `u = x + N/2`, so the profile peak sits mid-range. Loading the
//! peak at mid-range keeps the signed-coordinate interference pattern of the
//! readout intact (the half-range offset contributes only a per-outcome
//! global phase).

use num_complex::Complex64;

use crate::bessel::bessel_i0_ln;
use crate::error::{Error, Result};
use crate::statevector::{GateSpec, MAX_QUBITS};

/// Largest deviation from unit norm tolerated in a constructed profile.
const WINDOW_NORM_TOL: f64 = 1e-12;

/// Shape of the readout-register amplitude profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowKind {
    /// Uniform amplitudes; the plain-readout baseline.
    Rectangular,
    /// Half-cosine taper `cos(πx/N)`, zero at the lower signed edge.
    Cosine,
    /// `sin(π(u+1)/(N+1))` on the unsigned index, zero just off both edges.
    Sine,
    /// Tapered-exponential profile `I₀(α√(1-(x/N)²))/I₀(α)`.
    Kaiser {
        /// Concentration parameter; larger values trade main-lobe width for
        /// faster tail decay. Zero recovers the rectangular profile.
        alpha: f64,
    },
}

impl WindowKind {
    /// Short machine-friendly name (`rect`, `cos`, `sine`, `kaiser`).
    pub fn name(&self) -> &'static str {
        match self {
            WindowKind::Rectangular => "rect",
            WindowKind::Cosine => "cos",
            WindowKind::Sine => "sine",
            WindowKind::Kaiser { .. } => "kaiser",
        }
    }
}

impl std::fmt::Display for WindowKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WindowKind::Kaiser { alpha } => write!(f, "kaiser:{alpha}"),
            other => f.write_str(other.name()),
        }
    }
}

impl std::str::FromStr for WindowKind {
    type Err = Error;

    /// Parses `rect`, `cos`, `sine`, or `kaiser:<alpha>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" | "rectangular" => Ok(WindowKind::Rectangular),
            "cos" | "cosine" => Ok(WindowKind::Cosine),
            "sine" => Ok(WindowKind::Sine),
            other => {
                if let Some(a) = other.strip_prefix("kaiser:") {
                    let alpha: f64 = a
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad window parameter {a:?}")))?;
                    if !alpha.is_finite() || alpha < 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "window parameter must be finite and non-negative, got {alpha}"
                        )));
                    }
                    Ok(WindowKind::Kaiser { alpha })
                } else {
                    Err(Error::Parse(format!("unknown window kind {other:?}")))
                }
            }
        }
    }
}

/// Concentration parameter used for the tapered-exponential profile at each
/// number of padding qubits `p = 0..=6`, chosen per padding budget.
pub const BEST_ALPHA: [f64; 7] = [0.0, 6.0, 13.0, 25.0, 51.0, 100.0, 100.0];

/// Looks up the tuned concentration parameter for `p` padding qubits.
///
/// Values above the table range saturate at the last entry.
pub fn best_alpha(padding_qubits: usize) -> f64 {
    BEST_ALPHA[padding_qubits.min(BEST_ALPHA.len() - 1)]
}

/// Builds the unit-norm window profile for an `n`-qubit register, in basis
/// order (`amps[u]` with `u = x + N/2`).
pub fn make_window(kind: WindowKind, num_qubits: usize) -> Result<Vec<f64>> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "window register of {num_qubits} qubits outside supported range 1..={MAX_QUBITS}"
        )));
    }
    let n = 1usize << num_qubits;
    let half = (n / 2) as i64;
    let mut w = vec![0.0f64; n];
    match kind {
        WindowKind::Rectangular => {
            w.fill(1.0);
        }
        WindowKind::Cosine => {
            for u in 0..n {
                let x = u as i64 - half;
                w[u] = (std::f64::consts::PI * x as f64 / n as f64).cos();
            }
        }
        WindowKind::Sine => {
            for (u, slot) in w.iter_mut().enumerate() {
                *slot = (std::f64::consts::PI * (u as f64 + 1.0) / (n as f64 + 1.0)).sin();
            }
        }
        WindowKind::Kaiser { alpha } => {
            if !alpha.is_finite() || alpha < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "window parameter must be finite and non-negative, got {alpha}"
                )));
            }
            let ln_denom = bessel_i0_ln(alpha);
            for u in 0..n {
                let x = (u as i64 - half) as f64 / n as f64;
                let arg = alpha * (1.0 - x * x).max(0.0).sqrt();
                w[u] = (bessel_i0_ln(arg) - ln_denom).exp();
            }
        }
    }
    let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut w {
        *v /= norm;
    }
    debug_assert!(
        (w.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < WINDOW_NORM_TOL,
        "window normalization drifted"
    );
    Ok(w)
}

/// Window profile as complex amplitudes, ready for register injection.
pub fn window_amplitudes(kind: WindowKind, num_qubits: usize) -> Result<Vec<Complex64>> {
    Ok(make_window(kind, num_qubits)?
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect())
}

/// Builds a gate sequence preparing the given non-negative real amplitude
/// profile from `|0…0⟩` on a `num_qubits` register (qubit indices
/// `qubits[0]` = most significant).
///
/// The circuit is a binary tree of multi-controlled `R_y` rotations: the
/// rotation on level `k` conditioned on prefix `b` moves probability between
/// the two halves of the sub-range selected by `b`. Profiles with negative
/// entries are rejected.
pub fn prepare_profile_circuit(profile: &[f64], qubits: &[usize]) -> Result<Vec<GateSpec>> {
    let k = qubits.len();
    if profile.len() != 1usize << k {
        return Err(Error::InvalidArgument(format!(
            "profile of length {} does not fill {k} qubits",
            profile.len()
        )));
    }
    if profile.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "profile amplitudes must be finite and non-negative".into(),
        ));
    }
    // subtree_mass[level][b] = total probability under prefix b of length `level`.
    let mut mass: Vec<Vec<f64>> = vec![Vec::new(); k + 1];
    mass[k] = profile.iter().map(|v| v * v).collect();
    for level in (0..k).rev() {
        let lower = std::mem::take(&mut mass[level + 1]);
        mass[level] = lower.chunks(2).map(|c| c[0] + c[1]).collect();
        mass[level + 1] = lower;
    }
    let total = mass[0][0];
    if (total - 1.0).abs() > WINDOW_NORM_TOL {
        return Err(Error::State(format!(
            "profile has squared norm {total:.17}, not 1"
        )));
    }
    let mut gates = Vec::with_capacity((1usize << k) - 1);
    for level in 0..k {
        for b in 0..(1usize << level) {
            let parent = mass[level][b];
            if parent <= 0.0 {
                continue;
            }
            let right = mass[level + 1][2 * b + 1];
            // R_y(θ) sends |0⟩ to cos(θ/2)|0⟩ + sin(θ/2)|1⟩.
            let theta = 2.0 * (right / parent).sqrt().min(1.0).asin();
            let mut gate = GateSpec::ry(theta, qubits[level]);
            for bit in 0..level {
                let wanted = (b >> (level - 1 - bit)) & 1 == 1;
                gate.controls.push((qubits[bit], wanted));
            }
            gates.push(gate);
        }
    }
    Ok(gates)
}

/// Serializes a window profile as CSV with signed and basis indexing.
pub fn window_csv(kind: WindowKind, num_qubits: usize) -> Result<String> {
    let w = make_window(kind, num_qubits)?;
    let half = (w.len() / 2) as i64;
    let mut out = String::from("# format_version=1\nsigned_index,basis_state,amplitude\n");
    for (u, v) in w.iter().enumerate() {
        let x = u as i64 - half;
        out.push_str(&format!("{x},{u},{v:.17e}\n"));
    }
    Ok(out)
}
