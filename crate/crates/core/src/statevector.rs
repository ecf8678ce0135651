//! Dense statevector simulation.
//!
//! Conventions used throughout the crate:
//!
//! - Qubit 0 is the **most significant bit** of a basis index, so on an
//!   `n`-qubit register the basis state `|b0 b1 … b(n-1)⟩` has index
//!   `b0·2^(n-1) + … + b(n-1)·2^0`.
//! - Amplitudes are stored as one dense `Vec<Complex64>` of length `2^n`.
//! - Gates are single-qubit matrices plus an arbitrary set of control
//!   qubits, each with a required polarity (control-on-one or
//!   control-on-zero). Multi-qubit primitives such as SWAP are expressed as
//!   short controlled-gate sequences.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register the dense simulator will allocate (16 MiB of amplitudes
/// per 20 qubits; 24 qubits is a 256 MiB state).
pub const MAX_QUBITS: usize = 24;

/// Maximum tolerated deviation of `U†U` from the identity.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Maximum tolerated deviation of an injected register state from unit norm.
pub const INJECTION_NORM_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A single-qubit unitary together with its wiring: one target qubit and any
/// number of polarity-tagged control qubits.
///
/// The gate acts as `matrix` on the target whenever every control qubit
/// holds its required value, and as the identity otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    /// Row-major 2×2 unitary applied to the target qubit.
    pub matrix: [[Complex64; 2]; 2],
    /// Target qubit (0 = most significant).
    pub target: usize,
    /// Control qubits as `(qubit, required_value)` pairs.
    pub controls: Vec<(usize, bool)>,
}

impl GateSpec {
    /// Arbitrary single-qubit gate on `target` with no controls.
    pub fn single(matrix: [[Complex64; 2]; 2], target: usize) -> Self {
        GateSpec {
            matrix,
            target,
            controls: Vec::new(),
        }
    }

    /// Hadamard gate.
    pub fn h(target: usize) -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::single([[s, s], [s, -s]], target)
    }

    /// Pauli X.
    pub fn x(target: usize) -> Self {
        Self::single([[ZERO, ONE], [ONE, ZERO]], target)
    }

    /// Phase gate `P(φ) = diag(1, e^{2πiφ})` with `phi` given in turns.
    ///
    /// This is the eigenphase-kickback primitive: `|1⟩ ↦ e^{2πiφ}|1⟩`.
    pub fn phase_turns(phi: f64, target: usize) -> Self {
        let ph = Complex64::from_polar(1.0, std::f64::consts::TAU * phi);
        Self::single([[ONE, ZERO], [ZERO, ph]], target)
    }

    /// Rotation `R_y(θ) = exp(-iθY/2)`; real matrix, used for amplitude
    /// trees.
    pub fn ry(theta: f64, target: usize) -> Self {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new((theta / 2.0).sin(), 0.0);
        Self::single([[c, -s], [s, c]], target)
    }

    /// Symmetric z-axis phase pair `diag(e^{iθ}, e^{-iθ})`.
    ///
    /// Unlike a conventional `R_z` this fixes the global phase, which is
    /// observable once the gate is controlled.
    pub fn z_pair(theta: f64, target: usize) -> Self {
        let p = Complex64::from_polar(1.0, theta);
        Self::single([[p, ZERO], [ZERO, p.conj()]], target)
    }

    /// Adds a control-on-one qubit.
    pub fn controlled(mut self, qubit: usize) -> Self {
        self.controls.push((qubit, true));
        self
    }

    /// Adds a control-on-zero qubit.
    pub fn anti_controlled(mut self, qubit: usize) -> Self {
        self.controls.push((qubit, false));
        self
    }

    /// SWAP of two qubits as three controlled-X gates.
    pub fn swap(a: usize, b: usize) -> [GateSpec; 3] {
        [
            GateSpec::x(b).controlled(a),
            GateSpec::x(a).controlled(b),
            GateSpec::x(b).controlled(a),
        ]
    }

    /// Hermitian conjugate of the gate (same wiring).
    pub fn dagger(&self) -> Self {
        let m = &self.matrix;
        GateSpec {
            matrix: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    fn check_unitary(&self) -> Result<()> {
        let m = &self.matrix;
        // Entries of U†U.
        let g00 = m[0][0].conj() * m[0][0] + m[1][0].conj() * m[1][0];
        let g01 = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
        let g11 = m[0][1].conj() * m[0][1] + m[1][1].conj() * m[1][1];
        let dev = (g00 - ONE)
            .norm()
            .max(g01.norm())
            .max((g11 - ONE).norm());
        if dev > UNITARITY_TOL {
            return Err(Error::Gate(format!(
                "matrix is not unitary (deviation {dev:.3e})"
            )));
        }
        Ok(())
    }
}

/// Dense statevector over `num_qubits` qubits.
#[derive(Debug, Clone)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn new_basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "register of {num_qubits} qubits outside supported range 1..={MAX_QUBITS}"
            )));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// All-zeros state `|0…0⟩`.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        Self::new_basis_state(num_qubits, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Squared 2-norm of the state.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit mask selecting `qubit` within a basis index.
    fn bit(&self, qubit: usize) -> usize {
        1usize << (self.num_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::Gate(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Applies one controlled single-qubit gate.
    ///
    /// The gate matrix must be unitary within [`UNITARITY_TOL`]; the target
    /// and all controls must be distinct in-range qubits.
    pub fn apply_gate(&mut self, gate: &GateSpec) -> Result<()> {
        gate.check_unitary()?;
        self.check_qubit(gate.target)?;
        let mut cmask = 0usize;
        let mut cval = 0usize;
        for &(q, v) in &gate.controls {
            self.check_qubit(q)?;
            if q == gate.target {
                return Err(Error::Gate(format!(
                    "qubit {q} used as both target and control"
                )));
            }
            let b = self.bit(q);
            if cmask & b != 0 {
                return Err(Error::Gate(format!("duplicate control on qubit {q}")));
            }
            cmask |= b;
            if v {
                cval |= b;
            }
        }
        let tbit = self.bit(gate.target);
        let m = gate.matrix;
        // Walk every index with target bit 0; mix with its partner when the
        // controls are satisfied.
        for i in 0..self.amps.len() {
            if i & tbit != 0 || i & cmask != cval {
                continue;
            }
            let j = i | tbit;
            let a0 = self.amps[i];
            let a1 = self.amps[j];
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(())
    }

    /// Applies a sequence of gates in order.
    pub fn apply_circuit(&mut self, gates: &[GateSpec]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Probability distribution over the bitstrings of a qubit register.
    ///
    /// `qubits[0]` becomes the most significant bit of the readout value.
    /// Non-register qubits are traced out.
    pub fn register_marginal(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        let mut seen = 0usize;
        let mut bits = Vec::with_capacity(qubits.len());
        for &q in qubits {
            self.check_qubit(q)?;
            let b = self.bit(q);
            if seen & b != 0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate qubit {q} in register"
                )));
            }
            seen |= b;
            bits.push(b);
        }
        let mut probs = vec![0.0f64; 1usize << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut y = 0usize;
            for &b in &bits {
                y = (y << 1) | usize::from(i & b != 0);
            }
            probs[y] += p;
        }
        Ok(probs)
    }

    /// Replaces the state of a register currently in `|0…0⟩` with the given
    /// amplitude vector (length `2^k`, unit norm within
    /// [`INJECTION_NORM_TOL`]); `amps[v]` multiplies the branch in which the
    /// register reads bitstring `v`, with `qubits[0]` its most significant
    /// bit.
    ///
    /// Unnormalized inputs are rejected, never rescaled.
    pub fn inject_register_state(
        &mut self,
        qubits: &[usize],
        amps: &[Complex64],
    ) -> Result<()> {
        let k = qubits.len();
        if amps.len() != 1usize << k {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector of length {} does not fill {k} qubits",
                amps.len()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > INJECTION_NORM_TOL {
            return Err(Error::State(format!(
                "injected amplitudes have squared norm {norm:.17}, not 1"
            )));
        }
        let mut reg_mask = 0usize;
        let mut bits = Vec::with_capacity(k);
        for &q in qubits {
            self.check_qubit(q)?;
            let b = self.bit(q);
            if reg_mask & b != 0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate qubit {q} in register"
                )));
            }
            reg_mask |= b;
            bits.push(b);
        }
        // The register must hold |0…0⟩ exactly (factorized), i.e. no weight
        // on any index with a register bit set.
        let stray: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & reg_mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if stray > INJECTION_NORM_TOL * INJECTION_NORM_TOL {
            return Err(Error::State(format!(
                "register is not in |0…0⟩ (stray weight {stray:.3e})"
            )));
        }
        // Index offset for register value v.
        let spread = |v: usize| -> usize {
            let mut off = 0usize;
            for (t, &b) in bits.iter().enumerate() {
                if v & (1 << (k - 1 - t)) != 0 {
                    off |= b;
                }
            }
            off
        };
        let offsets: Vec<usize> = (0..amps.len()).map(spread).collect();
        for i in 0..self.amps.len() {
            if i & reg_mask != 0 {
                continue;
            }
            let base = self.amps[i];
            for (v, &off) in offsets.iter().enumerate() {
                self.amps[i | off] = base * amps[v];
            }
        }
        Ok(())
    }
}
