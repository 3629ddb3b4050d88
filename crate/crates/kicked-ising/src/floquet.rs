//! The one-period evolution operator of the kicked infinite-range Ising
//! system, built directly in the Dicke basis.
//!
//! One period applies a global y-rotation (the kick) followed by the
//! all-to-all Ising phase: U(τ) = D(τ)·R(τ) with
//!
//!   D(τ) = diag exp(−iτ[(N−2q)² − N]/2)      (Ising term; Σ_{l<l'} σ^z σ^z)
//!   R(τ) = exp(−i·2τ·J_y)                     (kick; Σ_l σ^y = 2 J_y)
//!
//! The −N/2 additive term in the Ising exponent is kept: the operator-period
//! claims tested downstream are sensitive to this global phase. J_y is
//! diagonalized once per construction; a diagonal similarity by i^q turns it
//! into a real symmetric tridiagonal matrix, so only real symmetric and
//! Hermitian eigensolvers are ever needed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{self, ipow, max_abs_entry, unitary_eigen, wrap_phase};
use crate::symbasis::{ParityDecomposition, SymmetricState};

/// Off-block residual above which parity-block extraction reports a failure.
pub const BLOCK_RESIDUAL_TOL: f64 = 1e-11;

/// Degenerate-eigenspace threshold for the unitary eigendecomposition.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-9;

/// Norm drift above which evolution renormalizes a state.
pub const EVOLVE_DRIFT_TOL: f64 = 1e-12;

/// Dense Floquet operator for N qubits at kick period τ.
#[derive(Debug, Clone)]
pub struct FloquetOperator {
    n_qubits: usize,
    tau: f64,
    matrix: DMatrix<C64>,
}

/// Build U(N, τ) = D(τ)·R(τ).
pub fn build_floquet(n_qubits: usize, tau: f64) -> Result<FloquetOperator> {
    if n_qubits < 1 {
        return Err(Error::InvalidQubitCount { got: n_qubits, min: 1 });
    }
    if !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("tau = {tau} is not finite")));
    }
    let dim = n_qubits + 1;

    // i^q similarity maps J_y to a real symmetric tridiagonal matrix with
    // off-diagonals sqrt((q+1)(N−q))/2.
    let mut t = DMatrix::<C64>::zeros(dim, dim);
    for q in 0..n_qubits {
        let c = C64::new((((q + 1) * (n_qubits - q)) as f64).sqrt() / 2.0, 0.0);
        t[(q + 1, q)] = c;
        t[(q, q + 1)] = c;
    }
    let (jy_vals, v) = linalg::hermitian_eigen(&t);
    let mut lam_vt = v.adjoint();
    for k in 0..dim {
        let phase = C64::from_polar(1.0, -2.0 * tau * jy_vals[k]);
        for j in 0..dim {
            lam_vt[(k, j)] *= phase;
        }
    }
    let core = &v * lam_vt;

    let phase_col: Vec<C64> = (0..dim).map(|q| ipow(q as i64)).collect();
    let ising: Vec<C64> = (0..dim)
        .map(|q| {
            let m = n_qubits as f64 - 2.0 * q as f64;
            C64::from_polar(1.0, -tau * (m * m - n_qubits as f64) / 2.0)
        })
        .collect();

    let mut matrix = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        let row_phase = ising[i] * phase_col[i];
        for j in 0..dim {
            matrix[(i, j)] = row_phase * core[(i, j)] * phase_col[j].conj();
        }
    }
    Ok(FloquetOperator { n_qubits, tau, matrix })
}

impl FloquetOperator {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.n_qubits + 1
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Max-entry deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        linalg::unitarity_deviation(&self.matrix)
    }

    /// Max-entry norm of the commutator [U, Π].
    pub fn parity_commutator_norm(&self) -> Result<f64> {
        let pi = crate::symbasis::parity_operator(self.n_qubits)?;
        Ok(max_abs_entry(&(&self.matrix * &pi - &pi * &self.matrix)))
    }

    /// U^n via the eigendecomposition U = V Λ V†; n = 0 gives the identity.
    pub fn power(&self, n: u64) -> Result<DMatrix<C64>> {
        let eig = unitary_eigen(&self.matrix, EIGEN_CLUSTER_TOL)?;
        Ok(eig.power(n))
    }

    /// Split U into its parity blocks (U_+, U_−).
    ///
    /// Transforms U into the parity basis and slices the two diagonal blocks;
    /// the off-block residual must stay below [`BLOCK_RESIDUAL_TOL`] or the
    /// operator and basis do not belong together.
    pub fn parity_blocks(
        &self,
        decomp: &ParityDecomposition,
    ) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
        if decomp.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: decomp.dim() });
        }
        let b = decomp.basis_matrix().adjoint() * &self.matrix * decomp.basis_matrix();
        let p = decomp.plus_dim();
        let m = decomp.minus_dim();
        let mut residual = 0.0_f64;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let same_block = (i < p && j < p) || (i >= p && j >= p);
                if !same_block {
                    residual = residual.max(b[(i, j)].norm());
                }
            }
        }
        if residual > BLOCK_RESIDUAL_TOL {
            return Err(Error::ParityLeakage { residual, tol: BLOCK_RESIDUAL_TOL });
        }
        let plus = b.view((0, 0), (p, p)).clone_owned();
        let minus = b.view((p, p), (m, m)).clone_owned();
        Ok((plus, minus))
    }

    /// Eigenphase spectrum with degeneracy grouping.
    pub fn quasienergy_spectrum(&self, grouping_tol: f64) -> Result<SpectrumReport> {
        if !grouping_tol.is_finite() || grouping_tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "grouping tolerance must be positive, got {grouping_tol}"
            )));
        }
        let eig = unitary_eigen(&self.matrix, EIGEN_CLUSTER_TOL)?;
        SpectrumReport::from_phases(eig.phases, grouping_tol)
    }

    /// Apply U to a state n_steps times by repeated matrix-vector products.
    ///
    /// Long trajectories stay O(n·N²) this way and avoid compounding
    /// eigensolver error. The norm is renormalized only when drift exceeds
    /// [`EVOLVE_DRIFT_TOL`]; the largest drift seen is reported.
    pub fn evolve(&self, state: &SymmetricState, n_steps: usize) -> Result<Evolution> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: state.dim() });
        }
        let mut amps: DVector<C64> = state.amplitudes().clone();
        let mut max_drift = 0.0_f64;
        let mut renormalizations = 0usize;
        for _ in 0..n_steps {
            amps = &self.matrix * amps;
            let norm = amps.norm();
            let drift = (norm - 1.0).abs();
            max_drift = max_drift.max(drift);
            if drift > EVOLVE_DRIFT_TOL {
                amps /= C64::new(norm, 0.0);
                renormalizations += 1;
            }
        }
        Ok(Evolution {
            state: SymmetricState::new(self.n_qubits, amps)?,
            max_drift,
            renormalizations,
        })
    }

    /// One evolution step.
    pub fn apply(&self, state: &SymmetricState) -> Result<SymmetricState> {
        Ok(self.evolve(state, 1)?.state)
    }
}

/// Outcome of [`FloquetOperator::evolve`].
#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: SymmetricState,
    /// Largest single-step deviation of the norm from 1.
    pub max_drift: f64,
    /// How many steps needed renormalization.
    pub renormalizations: usize,
}

/// One degeneracy group of the eigenphase spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGroup {
    /// Representative phase in (−π, π].
    pub center: f64,
    pub multiplicity: usize,
}

/// Sorted eigenphases with degeneracy grouping.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Eigenphases in (−π, π], ascending.
    pub eigenphases: Vec<f64>,
    /// Groups of phases equal within the grouping tolerance, wrap at ±π handled.
    pub groups: Vec<PhaseGroup>,
    pub grouping_tol: f64,
}

impl SpectrumReport {
    fn from_phases(mut phases: Vec<f64>, grouping_tol: f64) -> Result<Self> {
        phases.sort_by(f64::total_cmp);
        let n = phases.len();

        // gap-based grouping on the sorted circle
        let mut bounds: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && phases[end] - phases[end - 1] < grouping_tol {
                end += 1;
            }
            bounds.push((start, end));
            start = end;
        }
        // wrap: a group touching +π continues at −π
        let mut wrapped_first = false;
        if bounds.len() > 1 {
            let (fs, fe) = bounds[0];
            let (ls, le) = *bounds.last().unwrap();
            if (phases[fs] + 2.0 * std::f64::consts::PI) - phases[le - 1] < grouping_tol {
                bounds[0] = (ls, le + (fe - fs));
                bounds.pop();
                wrapped_first = true;
            }
        }

        let mut groups = Vec::with_capacity(bounds.len());
        for (idx, &(s, e)) in bounds.iter().enumerate() {
            let wrap = idx == 0 && wrapped_first;
            let members: Vec<f64> = if wrap {
                // shift the members taken from the front by +2π so the mean
                // is computed on one contiguous arc
                let head = e - n;
                phases[s..n]
                    .iter()
                    .copied()
                    .chain(phases[0..head].iter().map(|p| p + 2.0 * std::f64::consts::PI))
                    .collect()
            } else {
                phases[s..e].to_vec()
            };
            let diameter = members.last().unwrap() - members.first().unwrap();
            if diameter > grouping_tol {
                return Err(Error::Numerical(format!(
                    "degeneracy group spans {diameter:.3e}, wider than the grouping tolerance {grouping_tol:.1e}; spectrum is not cleanly clustered at this tolerance"
                )));
            }
            let mean = members.iter().sum::<f64>() / members.len() as f64;
            groups.push(PhaseGroup { center: wrap_phase(mean), multiplicity: members.len() });
        }
        groups.sort_by(|a, b| a.center.total_cmp(&b.center));

        debug_assert_eq!(groups.iter().map(|g| g.multiplicity).sum::<usize>(), n);
        Ok(SpectrumReport { eigenphases: phases, groups, grouping_tol })
    }

    /// Largest circular distance from any eigenphase to the grid {k·step}.
    pub fn max_deviation_from_grid(&self, step: f64) -> f64 {
        self.eigenphases
            .iter()
            .map(|&p| {
                let r = p.rem_euclid(step);
                r.min(step - r)
            })
            .fold(0.0, f64::max)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).max().unwrap_or(0)
    }
}
