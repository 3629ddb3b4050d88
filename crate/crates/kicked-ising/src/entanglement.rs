//! Reduced density matrices of symmetric states, linear entropy, and
//! Wootters concurrence.
//!
//! Both reductions contract the Dicke amplitudes directly (O(N) per matrix
//! entry) instead of expanding to the 2^N product space, which is what makes
//! trajectories at N in the hundreds affordable. The combinatorial weights
//! come from splitting one or two qubits off a Dicke state:
//!
//!   |w_q^{(N)}⟩ = √((N−q)/N) |0⟩|w_q^{(N−1)}⟩ + √(q/N) |1⟩|w_{q−1}^{(N−1)}⟩
//!
//! and the two-qubit analogue with weights √(C(2,k)·C(N−2,q−k)/C(N,q)).
//! Index orientation was pinned against the brute-force partial trace in the
//! oracle module; the tests keep it pinned.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::symbasis::{binomial, SymmetricState};

/// Hermiticity and unit-trace tolerance for a valid reduced density matrix.
pub const RDM_TOL: f64 = 1e-12;

/// Eigenvalues above this floor count as nonnegative.
pub const PSD_FLOOR: f64 = -1e-10;

/// A one-qubit (2×2) or two-qubit (4×4) reduced density matrix.
///
/// Guaranteed Hermitian within [`RDM_TOL`], unit trace within [`RDM_TOL`],
/// and positive semidefinite down to [`PSD_FLOOR`].
#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    matrix: DMatrix<C64>,
}

impl ReducedDensityMatrix {
    /// Validate and wrap a candidate density matrix.
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let dim = matrix.nrows();
        if (dim != 2 && dim != 4) || matrix.ncols() != dim {
            return Err(Error::InvalidParameter(format!(
                "density matrix must be 2×2 or 4×4, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = crate::linalg::max_abs_entry(&(&matrix - matrix.adjoint()));
        if herm > 2.0 * RDM_TOL {
            return Err(Error::Numerical(format!("density matrix not Hermitian: defect {herm:.3e}")));
        }
        let trace: C64 = (0..dim).map(|i| matrix[(i, i)]).sum();
        if (trace - C64::new(1.0, 0.0)).norm() > RDM_TOL * 10.0 {
            return Err(Error::Numerical(format!("density matrix trace {trace} is not 1")));
        }
        let (vals, _) = hermitian_eigen(&matrix);
        if vals[0] < PSD_FLOOR {
            return Err(Error::Numerical(format!(
                "density matrix has negative eigenvalue {:.3e}",
                vals[0]
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Real eigenvalues, ascending, roundoff negatives clipped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (vals, _) = hermitian_eigen(&self.matrix);
        vals.iter().map(|&v| v.max(0.0)).collect()
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        let prod = &self.matrix * &self.matrix;
        (0..self.dim()).map(|i| prod[(i, i)].re).sum()
    }
}

/// One-qubit reduction of a symmetric state.
pub fn rdm1(state: &SymmetricState) -> ReducedDensityMatrix {
    let n = state.n_qubits();
    let c = state.amplitudes();
    let nf = n as f64;
    let mut p00 = 0.0_f64;
    let mut p11 = 0.0_f64;
    let mut coh = C64::new(0.0, 0.0);
    for q in 0..=n {
        let w = c[q].norm_sqr();
        p00 += w * (n - q) as f64 / nf;
        p11 += w * q as f64 / nf;
        if q < n {
            coh += c[q] * c[q + 1].conj() * (((q + 1) * (n - q)) as f64).sqrt() / nf;
        }
    }
    let mut m = DMatrix::<C64>::zeros(2, 2);
    m[(0, 0)] = C64::new(p00, 0.0);
    m[(1, 1)] = C64::new(p11, 0.0);
    m[(0, 1)] = coh;
    m[(1, 0)] = coh.conj();
    ReducedDensityMatrix::new(m).expect("one-qubit reduction of a unit-norm state is a valid density matrix")
}

/// Weight of the k-ones two-qubit symmetric component inside |w_q^{(N)}⟩.
fn split_weight(n: usize, q: usize, k: usize) -> f64 {
    if q < k || q - k > n - 2 {
        return 0.0;
    }
    (binomial(2, k) * binomial(n - 2, q - k) / binomial(n, q)).sqrt()
}

/// Two-qubit reduction of a symmetric state; needs N ≥ 2.
pub fn rdm2(state: &SymmetricState) -> Result<ReducedDensityMatrix> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::InvalidQubitCount { got: n, min: 2 });
    }
    let c = state.amplitudes();
    // 3×3 block over the symmetric two-qubit states (|00⟩, (|01⟩+|10⟩)/√2, |11⟩)
    let mut m = [[C64::new(0.0, 0.0); 3]; 3];
    for k in 0..3 {
        for kp in 0..3 {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..=(n - 2) {
                let (qk, qkp) = (p + k, p + kp);
                if qk > n || qkp > n {
                    continue;
                }
                acc += c[qk] * split_weight(n, qk, k) * (c[qkp] * split_weight(n, qkp, kp)).conj();
            }
            m[k][kp] = acc;
        }
    }
    // expand the symmetric pair state back to the |01⟩/|10⟩ doublet
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut rho = DMatrix::<C64>::zeros(4, 4);
    rho[(0, 0)] = m[0][0];
    rho[(0, 1)] = m[0][1] * s;
    rho[(0, 2)] = m[0][1] * s;
    rho[(0, 3)] = m[0][2];
    rho[(1, 0)] = m[1][0] * s;
    rho[(1, 1)] = m[1][1] * 0.5;
    rho[(1, 2)] = m[1][1] * 0.5;
    rho[(1, 3)] = m[1][2] * s;
    rho[(2, 0)] = m[1][0] * s;
    rho[(2, 1)] = m[1][1] * 0.5;
    rho[(2, 2)] = m[1][1] * 0.5;
    rho[(2, 3)] = m[1][2] * s;
    rho[(3, 0)] = m[2][0];
    rho[(3, 1)] = m[2][1] * s;
    rho[(3, 2)] = m[2][1] * s;
    rho[(3, 3)] = m[2][2];
    ReducedDensityMatrix::new(rho)
}

/// Linear entropy 1 − Tr ρ². For a one-qubit matrix this is 2λ(1−λ).
pub fn linear_entropy(rdm: &ReducedDensityMatrix) -> f64 {
    1.0 - rdm.purity()
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// C = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄) where the λ are eigenvalues of
/// (σ_y⊗σ_y)ρ(σ_y⊗σ_y)ρ* in decreasing order, with conjugation in the
/// computational basis. The λ are obtained as eigenvalues of the Hermitian
/// matrix ρ̃^{1/2} ρ ρ̃^{1/2} with ρ̃ = (σ_y⊗σ_y)ρ*(σ_y⊗σ_y), which shares
/// the nonzero spectrum of the non-Hermitian product but keeps the
/// eigenvalues real and nonnegative by construction.
pub fn concurrence(rdm: &ReducedDensityMatrix) -> Result<f64> {
    if rdm.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rdm.dim() });
    }
    let rho = rdm.matrix();
    let spun = spin_flip(rho);
    // Hermitian square root of ρ̃. Eigenvalues below the double-precision
    // noise floor are zeroed before the square root: √(1e-16 of noise) would
    // otherwise pollute everything downstream at the 1e-8 level.
    let (mut vals, vecs) = hermitian_eigen(&spun);
    clamp_noise_floor(vals.as_mut_slice())?;
    let mut sqrt_lam_vt = vecs.adjoint();
    for k in 0..4 {
        let root = C64::new(vals[k].sqrt(), 0.0);
        for j in 0..4 {
            sqrt_lam_vt[(k, j)] *= root;
        }
    }
    let root = &vecs * sqrt_lam_vt;
    let h = &root * rho * &root;
    let (mut lams, _) = hermitian_eigen(&h);
    clamp_noise_floor(lams.as_mut_slice())?;
    // ascending from the solver; Wootters wants decreasing
    let c = lams[3].sqrt() - lams[2].sqrt() - lams[1].sqrt() - lams[0].sqrt();
    Ok(c.max(0.0))
}

/// Zero out eigenvalues indistinguishable from zero at double precision;
/// report genuinely negative ones.
///
/// The floor is both relative (1e-13 of the largest eigenvalue) and absolute
/// (1e-14): the spectra here come from unit-trace density matrices whose
/// entries are only known to ~1e-15, so smaller values carry no information
/// and their square roots would only inject noise.
fn clamp_noise_floor(vals: &mut [f64]) -> Result<()> {
    let max = vals.iter().fold(0.0_f64, |a, &b| a.max(b));
    let floor = (max * 1e-13).max(1e-14);
    for v in vals.iter_mut() {
        if *v < PSD_FLOOR {
            return Err(Error::Numerical(format!(
                "eigenvalue {v:.3e} below the roundoff floor in the concurrence solve"
            )));
        }
        if *v <= floor {
            *v = 0.0;
        }
    }
    Ok(())
}

/// ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y) without building the Pauli matrices:
/// σ_y⊗σ_y is the antidiagonal (−1, 1, 1, −1).
fn spin_flip(rho: &DMatrix<C64>) -> DMatrix<C64> {
    let sign = |i: usize| if i == 0 || i == 3 { -1.0 } else { 1.0 };
    DMatrix::from_fn(4, 4, |i, j| rho[(3 - i, 3 - j)].conj() * sign(i) * sign(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::build_floquet;
    use crate::symbasis::{coherent_state, CoherentStateParams};
    use nalgebra::DVector;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_state_reductions_are_pure() {
        let s = SymmetricState::all_zero(6).unwrap();
        let r1 = rdm1(&s);
        assert!((r1.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(r1.matrix()[(1, 1)].norm() < 1e-14);
        assert!(linear_entropy(&r1).abs() < 1e-14);
        let r2 = rdm2(&s).unwrap();
        assert!((r2.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(concurrence(&r2).unwrap() < 1e-12);
    }

    #[test]
    fn five_qubit_second_step_is_maximally_mixed() {
        // λ_2 = [6 + 2cos(4π/3) + cos(8π/3)]/9 = 1/2
        let op = build_floquet(5, PI / 4.0).unwrap();
        let s = SymmetricState::all_zero(5).unwrap();
        let psi2 = op.evolve(&s, 2).unwrap().state;
        let r1 = rdm1(&psi2);
        assert!((r1.matrix()[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!(r1.matrix()[(0, 1)].norm() < 1e-12);
        assert!((linear_entropy(&r1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn even_step_two_qubit_reduction_is_x_state() {
        let op = build_floquet(5, PI / 4.0).unwrap();
        let s = SymmetricState::all_zero(5).unwrap();
        for m in 1..=3 {
            let psi = op.evolve(&s, 2 * m).unwrap().state;
            let r2 = rdm2(&psi).unwrap();
            let rho = r2.matrix();
            for (i, j) in [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (2, 3), (3, 1), (3, 2)] {
                assert!(rho[(i, j)].norm() < 1e-12, "entry ({i},{j}) at n = {}", 2 * m);
            }
        }
    }

    #[test]
    fn linear_entropy_of_mixed_qubit() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)]));
        let r = ReducedDensityMatrix::new(m).unwrap();
        assert!((linear_entropy(&r) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eight_qubit_plus_y_entropy_alternates() {
        // S(n) = (1/2)[1 − cos²(nπ/2)]: 1/2 at odd n, 0 at even n
        let op = build_floquet(8, PI / 4.0).unwrap();
        let mut state = coherent_state(&CoherentStateParams::plus_y(), 8).unwrap();
        let mut series = Vec::new();
        for _ in 0..5 {
            state = op.apply(&state).unwrap();
            series.push(linear_entropy(&rdm1(&state)));
        }
        for (idx, s) in series.iter().enumerate() {
            let n = idx + 1;
            let expected = if n % 2 == 1 { 0.5 } else { 0.0 };
            assert!((s - expected).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn bell_state_concurrence_is_one() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = DVector::from_vec(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        let rho = DMatrix::from_fn(4, 4, |i, j| bell[i] * bell[j].conj());
        let r = ReducedDensityMatrix::new(rho).unwrap();
        assert!((concurrence(&r).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_diagonal_state_has_zero_concurrence() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ]));
        let r = ReducedDensityMatrix::new(m).unwrap();
        assert!(concurrence(&r).unwrap() < 1e-12);
    }

    #[test]
    fn five_qubit_trajectory_concurrence_vanishes() {
        // the spin-flip spectrum stays in {(0,0,0,0), (1/4,1/4,0,0)} so the
        // concurrence is identically zero
        let op = build_floquet(5, PI / 4.0).unwrap();
        let mut state = SymmetricState::all_zero(5).unwrap();
        for n in 1..=12 {
            state = op.apply(&state).unwrap();
            let r2 = rdm2(&state).unwrap();
            assert!(concurrence(&r2).unwrap() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn consecutive_odd_even_entropy_equal() {
        for n in 5..=11 {
            let op = build_floquet(n, PI / 4.0).unwrap();
            let mut state = SymmetricState::all_zero(n).unwrap();
            let mut series = vec![0.0];
            for _ in 1..=24 {
                state = op.apply(&state).unwrap();
                series.push(linear_entropy(&rdm1(&state)));
            }
            for m in 1..=12usize {
                assert!(
                    (series[2 * m - 1] - series[2 * m]).abs() < 1e-10,
                    "N = {n}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn rdm2_needs_two_qubits() {
        let s = SymmetricState::all_zero(1).unwrap();
        assert!(matches!(rdm2(&s), Err(Error::InvalidQubitCount { .. })));
    }

    #[test]
    fn concurrence_rejects_single_qubit_matrix() {
        let s = SymmetricState::all_zero(3).unwrap();
        let r1 = rdm1(&s);
        assert!(concurrence(&r1).is_err());
    }

    #[test]
    fn rdm_validity_along_trajectories() {
        for (n, tau) in [(5usize, PI / 4.0), (9, 0.3), (11, 1.0)] {
            let op = build_floquet(n, tau).unwrap();
            let mut state = coherent_state(&CoherentStateParams::plus_y(), n).unwrap();
            for _ in 0..16 {
                state = op.apply(&state).unwrap();
                let r1 = rdm1(&state);
                let r2 = rdm2(&state).unwrap();
                for r in [&r1, &r2] {
                    let evs = r.eigenvalues();
                    assert!(evs.iter().all(|&v| v >= 0.0));
                    let tr: f64 = (0..r.dim()).map(|i| r.matrix()[(i, i)].re).sum();
                    assert!((tr - 1.0).abs() < 1e-12);
                }
                // two-qubit reduction of a symmetric state is swap-invariant
                let rho = r2.matrix();
                assert!((rho[(1, 1)] - rho[(2, 2)]).norm() < 1e-13);
                assert!((rho[(0, 1)] - rho[(0, 2)]).norm() < 1e-13);
            }
        }
    }
}
