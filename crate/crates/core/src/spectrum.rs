//! Frequency response of window profiles.
//!
//! The readout distribution of a windowed register is the squared magnitude
//! of the window's discrete-time Fourier transform sampled at the outcome
//! frequencies, so lobe structure in this spectrum is what decides tail
//! failure rates: the main-lobe width sets how much probability lands on the
//! nearest outcomes, and the side-lobe level sets how slowly the remainder
//! decays.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::window::{make_window, WindowKind};

/// Default oversampling used to resolve lobe structure.
pub const DEFAULT_PAD_FACTOR: usize = 64;

/// Floor applied before converting power to decibels, so exact spectral
/// nulls stay finite.
const POWER_FLOOR: f64 = 1e-300;

/// Oversampled power spectrum of a window, normalized to a 0 dB peak.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Signed frequency of each bin in cycles per sample, ascending from
    /// -1/2 to just below +1/2.
    pub frequencies: Vec<f64>,
    /// Power at each frequency relative to the peak, in dB.
    pub power_db: Vec<f64>,
    /// Frequency of the first null beyond the peak (half the main-lobe
    /// width), in cycles per sample.
    pub main_lobe_half_width: f64,
    /// Largest power outside the main lobe, in dB relative to the peak.
    pub max_side_lobe_db: f64,
}

/// Computes the oversampled spectrum of the given window.
///
/// The window's signed coordinate is mapped onto the transform by wrapping
/// negative positions to the top of the padded array, which keeps the
/// spectral phase centered; magnitudes are insensitive to this choice.
pub fn window_spectrum(
    kind: WindowKind,
    num_qubits: usize,
    pad_factor: usize,
) -> Result<Spectrum> {
    if pad_factor == 0 {
        return Err(Error::InvalidArgument("pad factor must be positive".into()));
    }
    let w = make_window(kind, num_qubits)?;
    let n = w.len();
    let len = n
        .checked_mul(pad_factor)
        .ok_or_else(|| Error::ResourceLimit("padded spectrum length overflows".into()))?;
    if len > 1 << 26 {
        return Err(Error::ResourceLimit(format!(
            "padded spectrum length {len} exceeds supported size"
        )));
    }
    let half = (n / 2) as i64;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (u, v) in w.iter().enumerate() {
        let x = u as i64 - half;
        let slot = x.rem_euclid(len as i64) as usize;
        buf[slot] = Complex64::new(*v, 0.0);
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);

    let power: Vec<f64> = buf.iter().map(|a| a.norm_sqr()).collect();
    let peak = power[0];
    if peak <= 0.0 {
        return Err(Error::State("window spectrum has no peak".into()));
    }

    // Walk outward from the peak to the first rise; the bin before it is the
    // first null.
    let mut i = 1usize;
    while i + 1 < len / 2 && power[i + 1] < power[i] {
        i += 1;
    }
    let first_null = i;
    let max_side = power[first_null + 1..=len / 2]
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);

    let to_db = |p: f64| 10.0 * (p.max(POWER_FLOOR) / peak).log10();
    let mut frequencies = Vec::with_capacity(len);
    let mut power_db = Vec::with_capacity(len);
    for j in 0..len {
        let idx = (j + len / 2) % len; // rotate so f = -1/2 comes first
        frequencies.push((j as f64 - (len / 2) as f64) / len as f64);
        power_db.push(to_db(power[idx]));
    }

    Ok(Spectrum {
        frequencies,
        power_db,
        main_lobe_half_width: first_null as f64 / len as f64,
        max_side_lobe_db: to_db(max_side),
    })
}

/// Serializes a spectrum as CSV.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("# format_version=1\nfrequency,power_db\n");
    for (f, p) in spectrum.frequencies.iter().zip(&spectrum.power_db) {
        out.push_str(&format!("{f:.12},{p:.8}\n"));
    }
    out
}
