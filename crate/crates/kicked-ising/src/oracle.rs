//! Brute-force reference in the full 2^N Hilbert space.
//!
//! Everything here exists to validate the compressed-subspace pipeline:
//! the kick factorizes into N single-qubit rotations (the σ^y terms
//! commute), the Ising phase is diagonal in the computational basis, and
//! partial traces are taken by explicit index arithmetic. Capped at N = 12
//! so the reference stays trivially correct and fast.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::entanglement::ReducedDensityMatrix;
use crate::error::{Error, Result};
use crate::symbasis::{binomial, CoherentStateParams, SymmetricState};

/// Hard cap on the full-space qubit count (4096 amplitudes).
pub const MAX_ORACLE_QUBITS: usize = 12;

/// A pure state of N ≤ 12 qubits over the computational basis.
///
/// Qubit 0 is the most significant bit of the basis index.
#[derive(Debug, Clone)]
pub struct FullState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl FullState {
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
        }
        if n_qubits > MAX_ORACLE_QUBITS {
            return Err(Error::CapacityExceeded { got: n_qubits, max: MAX_ORACLE_QUBITS });
        }
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch { expected: 1 << n_qubits, got: amplitudes.len() });
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("full state norm {norm} is not 1")));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// |0…0⟩.
    pub fn all_zero(n_qubits: usize) -> Result<Self> {
        Self::from_coherent(&CoherentStateParams::all_zero(), n_qubits)
    }

    /// The product state ⊗(cos(θ0/2)|0⟩ + e^{−iφ0} sin(θ0/2)|1⟩).
    pub fn from_coherent(params: &CoherentStateParams, n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_ORACLE_QUBITS {
            return Err(Error::CapacityExceeded { got: n_qubits, max: MAX_ORACLE_QUBITS });
        }
        let (a, b) = params.qubit_amplitudes();
        let dim = 1usize << n_qubits;
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        for (idx, amp) in amplitudes.iter_mut().enumerate() {
            let ones = (idx as u32).count_ones() as usize;
            let mut z = C64::new(1.0, 0.0);
            for _ in 0..(n_qubits - ones) {
                z *= a;
            }
            for _ in 0..ones {
                z *= b;
            }
            *amp = z;
        }
        Self::new(n_qubits, amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// One Floquet period in the full space: the kick as N sequential
/// single-qubit rotations, then the diagonal Ising phase per basis state.
pub fn full_floquet_apply(state: &FullState, tau: f64) -> Result<FullState> {
    if !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("tau = {tau} is not finite")));
    }
    let n = state.n_qubits;
    let dim = 1usize << n;
    let mut amps = state.amplitudes.clone();

    // exp(−iτ σ^y) = [[cos τ, −sin τ], [sin τ, cos τ]]
    let (s, c) = tau.sin_cos();
    for qubit in 0..n {
        let bit = 1usize << (n - 1 - qubit);
        for idx in 0..dim {
            if idx & bit == 0 {
                let a0 = amps[idx];
                let a1 = amps[idx | bit];
                amps[idx] = c * a0 - s * a1;
                amps[idx | bit] = s * a0 + c * a1;
            }
        }
    }
    // Σ_{l<l'} z_l z_{l'} = (s² − N)/2 with s = N − 2·popcount
    for (idx, amp) in amps.iter_mut().enumerate() {
        let m = n as f64 - 2.0 * (idx as u32).count_ones() as f64;
        *amp *= C64::from_polar(1.0, -tau * (m * m - n as f64) / 2.0);
    }
    FullState::new(n, amps)
}

/// Overlap of a full state with the symmetric subspace.
#[derive(Debug, Clone)]
pub struct SymmetricProjection {
    /// Inner products ⟨w_q|ψ⟩, q = 0..=N (not normalized).
    pub coefficients: DVector<C64>,
    /// Norm of the component outside the symmetric subspace.
    pub residual: f64,
}

impl SymmetricProjection {
    /// Normalize the in-subspace component into a state. Fails when the
    /// state has (numerically) no symmetric component.
    pub fn to_state(&self, n_qubits: usize) -> Result<SymmetricState> {
        SymmetricState::from_unnormalized(n_qubits, self.coefficients.clone())
    }
}

/// Project onto the Dicke states: c_q = ⟨w_q|ψ⟩.
pub fn project_symmetric(state: &FullState) -> SymmetricProjection {
    let n = state.n_qubits;
    let mut sums = vec![C64::new(0.0, 0.0); n + 1];
    for (idx, amp) in state.amplitudes.iter().enumerate() {
        sums[(idx as u32).count_ones() as usize] += amp;
    }
    let coefficients = DVector::from_fn(n + 1, |q, _| sums[q] / binomial(n, q).sqrt());
    // The in-subspace component has the class-mean amplitude on every basis
    // state of its excitation class; subtracting it entrywise avoids the
    // cancellation that √(‖ψ‖² − ‖Pψ‖²) would suffer.
    let mut out_sq = 0.0_f64;
    for (idx, amp) in state.amplitudes.iter().enumerate() {
        let q = (idx as u32).count_ones() as usize;
        let mean = sums[q] / binomial(n, q);
        out_sq += (amp - mean).norm_sqr();
    }
    SymmetricProjection { coefficients, residual: out_sq.sqrt() }
}

/// Exact partial trace onto one or two kept qubits.
///
/// `keep` lists distinct qubit indices; `keep[0]` becomes the high bit of
/// the reduced matrix index.
pub fn full_partial_trace(state: &FullState, keep: &[usize]) -> Result<ReducedDensityMatrix> {
    let n = state.n_qubits;
    if keep.is_empty() || keep.len() > 2 {
        return Err(Error::InvalidParameter(format!(
            "can keep one or two qubits, got {}",
            keep.len()
        )));
    }
    if keep.iter().any(|&q| q >= n) {
        return Err(Error::InvalidParameter(format!("qubit index out of range in {keep:?}")));
    }
    if keep.len() == 2 && keep[0] == keep[1] {
        return Err(Error::InvalidParameter("kept qubit indices must be distinct".into()));
    }
    let k = keep.len();
    let keep_bits: Vec<usize> = keep.iter().map(|&q| n - 1 - q).collect();
    let rest_bits: Vec<usize> = (0..n).filter(|b| !keep_bits.contains(b)).collect();

    let dim_r = 1usize << k;
    let mut rho = DMatrix::<C64>::zeros(dim_r, dim_r);
    for rest in 0..(1usize << (n - k)) {
        let mut base = 0usize;
        for (pos, &b) in rest_bits.iter().enumerate() {
            if rest & (1 << pos) != 0 {
                base |= 1 << b;
            }
        }
        let mut indices = [0usize; 4];
        for (r, slot) in indices.iter_mut().enumerate().take(dim_r) {
            let mut idx = base;
            for (pos, &b) in keep_bits.iter().enumerate() {
                // keep[0] is the high bit of r
                if r & (1 << (k - 1 - pos)) != 0 {
                    idx |= 1 << b;
                }
            }
            *slot = idx;
        }
        for r1 in 0..dim_r {
            for r2 in 0..dim_r {
                rho[(r1, r2)] += state.amplitudes[indices[r1]] * state.amplitudes[indices[r2]].conj();
            }
        }
    }
    ReducedDensityMatrix::new(rho)
}
