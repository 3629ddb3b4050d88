//! Permutation-symmetric (Dicke) basis, SU(2) coherent states, and the
//! parity-symmetric basis.
//!
//! States of N qubits that are symmetric under every permutation live in an
//! (N+1)-dimensional subspace spanned by the Dicke states |w_q⟩, q = 0..N,
//! where q counts qubits in |1⟩. The conjugate state |w̄_q⟩ is stored as
//! index N−q. The parity operator Π = ⊗σ^y acts inside this subspace as the
//! antidiagonal Π|w_q⟩ = i^N (−1)^q |w_{N−q}⟩, and the parity basis {φ_q^±}
//! diagonalizes it, splitting every parity-commuting operator into two blocks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{identity_deviation, ipow};

/// Unit-norm tolerance enforced on construction and after evolution steps.
pub const NORM_TOL: f64 = 1e-12;

/// Binomial coefficient as f64; exact well past N = 400.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// A pure state of N qubits in the symmetric subspace.
///
/// Amplitudes are coefficients of the Dicke states |w_q⟩; the vector has
/// length N+1 and unit norm within [`NORM_TOL`].
#[derive(Debug, Clone)]
pub struct SymmetricState {
    n_qubits: usize,
    amplitudes: DVector<C64>,
}

impl SymmetricState {
    /// Wrap an amplitude vector, checking length and normalization.
    pub fn new(n_qubits: usize, amplitudes: DVector<C64>) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
        }
        if amplitudes.len() != n_qubits + 1 {
            return Err(Error::DimensionMismatch { expected: n_qubits + 1, got: amplitudes.len() });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state norm {norm} deviates from 1 by more than {NORM_TOL:.0e}"
            )));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Normalize an arbitrary nonzero vector into a state.
    pub fn from_unnormalized(n_qubits: usize, mut amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        amplitudes /= C64::new(norm, 0.0);
        Self::new(n_qubits, amplitudes)
    }

    /// The product state |0…0⟩ = |w_0⟩.
    pub fn all_zero(n_qubits: usize) -> Result<Self> {
        coherent_state(&CoherentStateParams::all_zero(), n_qubits)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Subspace dimension N+1.
    pub fn dim(&self) -> usize {
        self.n_qubits + 1
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    /// Coefficient of |w_q⟩.
    pub fn amplitude(&self, q: usize) -> C64 {
        self.amplitudes[q]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &SymmetricState) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok((self.amplitudes.adjoint() * &other.amplitudes)[(0, 0)])
    }
}

/// Bloch-sphere angles of an SU(2) coherent state ⊗(cos(θ0/2)|0⟩ + e^{−iφ0} sin(θ0/2)|1⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentStateParams {
    theta0: f64,
    phi0: f64,
}

impl CoherentStateParams {
    /// θ0 must lie in [0, π]; φ0 is wrapped into (−π, π].
    pub fn new(theta0: f64, phi0: f64) -> Result<Self> {
        if !theta0.is_finite() {
            return Err(Error::InvalidParameter(format!("theta0 = {theta0} is not finite")));
        }
        if !phi0.is_finite() {
            return Err(Error::InvalidParameter(format!("phi0 = {phi0} is not finite")));
        }
        if !(0.0..=PI).contains(&theta0) {
            return Err(Error::InvalidParameter(format!("theta0 = {theta0} outside [0, π]")));
        }
        Ok(Self { theta0, phi0: crate::linalg::wrap_phase(phi0) })
    }

    /// (θ0, φ0) = (0, 0): the |0…0⟩ trajectory.
    pub fn all_zero() -> Self {
        Self { theta0: 0.0, phi0: 0.0 }
    }

    /// (θ0, φ0) = (π/2, −π/2): the ⊗|+⟩_y trajectory.
    pub fn plus_y() -> Self {
        Self { theta0: PI / 2.0, phi0: -PI / 2.0 }
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    /// Single-qubit amplitudes (⟨0|ψ⟩, ⟨1|ψ⟩).
    pub fn qubit_amplitudes(&self) -> (C64, C64) {
        let c = (self.theta0 / 2.0).cos();
        let s = (self.theta0 / 2.0).sin();
        (C64::new(c, 0.0), C64::from_polar(1.0, -self.phi0) * s)
    }
}

/// Expand an SU(2) coherent state over the Dicke basis:
/// c_q = √C(N,q) · cos(θ0/2)^{N−q} · (e^{−iφ0} sin(θ0/2))^q.
pub fn coherent_state(params: &CoherentStateParams, n_qubits: usize) -> Result<SymmetricState> {
    if n_qubits < 1 {
        return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
    }
    let (a, b) = params.qubit_amplitudes();
    let mut c = DVector::<C64>::zeros(n_qubits + 1);
    for q in 0..=n_qubits {
        let mut amp = C64::new(binomial(n_qubits, q).sqrt(), 0.0);
        for _ in 0..(n_qubits - q) {
            amp *= a;
        }
        for _ in 0..q {
            amp *= b;
        }
        c[q] = amp;
    }
    // the expansion is normalized up to roundoff; tidy it
    SymmetricState::from_unnormalized(n_qubits, c)
}

/// Π = ⊗σ^y restricted to the symmetric subspace: Π|w_q⟩ = i^N (−1)^q |w_{N−q}⟩.
pub fn parity_operator(n_qubits: usize) -> Result<DMatrix<C64>> {
    if n_qubits < 1 {
        return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
    }
    let dim = n_qubits + 1;
    let mut p = DMatrix::<C64>::zeros(dim, dim);
    for q in 0..dim {
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        p[(n_qubits - q, q)] = ipow(n_qubits as i64) * sign;
    }
    Ok(p)
}

/// Change of basis from the Dicke basis to the ordered parity basis.
///
/// Columns are φ_0^+, φ_1^+, …, then φ_0^−, φ_1^−, …; the even-N half-filled
/// state φ_{N/2}^+ closes the plus block. Coefficient vectors transform with
/// [`ParityDecomposition::to_parity`] / [`ParityDecomposition::from_parity`].
#[derive(Debug, Clone)]
pub struct ParityDecomposition {
    n_qubits: usize,
    basis_matrix: DMatrix<C64>,
    plus_dim: usize,
    minus_dim: usize,
}

/// Build the parity basis.
///
/// Odd N: φ_q^± = (|w_q⟩ ± i^{N−2q} |w̄_q⟩)/√2 for q = 0..(N−1)/2.
/// Even N: φ_r^± = (|w_r⟩ ± (−1)^{N/2−r} |w̄_r⟩)/√2 for r = 0..N/2−1, plus the
/// unpaired φ_{N/2}^+ = |w_{N/2}⟩. Phases are kept exactly as written: the
/// printed block matrices used as regression targets are phase-sensitive.
pub fn build_parity_basis(n_qubits: usize) -> Result<ParityDecomposition> {
    if n_qubits < 1 {
        return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
    }
    let dim = n_qubits + 1;
    let inv_sqrt2 = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut basis = DMatrix::<C64>::zeros(dim, dim);
    let (plus_dim, minus_dim);
    let mut col = 0;

    if n_qubits % 2 == 1 {
        let half = (n_qubits + 1) / 2;
        plus_dim = half;
        minus_dim = half;
        for sign in [1.0, -1.0] {
            for q in 0..half {
                let phase = ipow((n_qubits - 2 * q) as i64) * sign;
                basis[(q, col)] = inv_sqrt2;
                basis[(n_qubits - q, col)] = phase * inv_sqrt2;
                col += 1;
            }
        }
    } else {
        let half = n_qubits / 2;
        plus_dim = half + 1;
        minus_dim = half;
        for q in 0..half {
            let phase = if (half - q) % 2 == 0 { 1.0 } else { -1.0 };
            basis[(q, col)] = inv_sqrt2;
            basis[(n_qubits - q, col)] = C64::new(phase, 0.0) * inv_sqrt2;
            col += 1;
        }
        basis[(half, col)] = C64::new(1.0, 0.0);
        col += 1;
        for q in 0..half {
            let phase = if (half - q) % 2 == 0 { -1.0 } else { 1.0 };
            basis[(q, col)] = inv_sqrt2;
            basis[(n_qubits - q, col)] = C64::new(phase, 0.0) * inv_sqrt2;
            col += 1;
        }
    }
    debug_assert_eq!(col, dim);
    debug_assert!(identity_deviation(&(basis.adjoint() * &basis)) < 1e-14);

    Ok(ParityDecomposition { n_qubits, basis_matrix: basis, plus_dim, minus_dim })
}

impl ParityDecomposition {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.n_qubits + 1
    }

    pub fn plus_dim(&self) -> usize {
        self.plus_dim
    }

    pub fn minus_dim(&self) -> usize {
        self.minus_dim
    }

    pub fn basis_matrix(&self) -> &DMatrix<C64> {
        &self.basis_matrix
    }

    /// Dicke amplitudes → parity-basis coefficients (plus block first).
    pub fn to_parity(&self, state: &SymmetricState) -> Result<DVector<C64>> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.dim() });
        }
        Ok(self.basis_matrix.adjoint() * state.amplitudes())
    }

    /// Parity-basis coefficients → a symmetric state.
    pub fn from_parity(&self, coefficients: &DVector<C64>) -> Result<SymmetricState> {
        if coefficients.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coefficients.len() });
        }
        SymmetricState::new(self.n_qubits, &self.basis_matrix * coefficients)
    }

    /// Residual of the parity eigenvector property: max_j ‖Π φ_j^± ∓ φ_j^±‖.
    pub fn parity_residual(&self) -> Result<f64> {
        let pi = parity_operator(self.n_qubits)?;
        let image = pi * &self.basis_matrix;
        let mut res = 0.0_f64;
        for j in 0..self.dim() {
            let sign = if j < self.plus_dim { 1.0 } else { -1.0 };
            let diff = image.column(j) - self.basis_matrix.column(j) * C64::new(sign, 0.0);
            res = res.max(diff.norm());
        }
        Ok(res)
    }
}
