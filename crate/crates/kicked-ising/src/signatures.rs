//! Integrability diagnostics: operator deviation δ(n), operator-period and
//! entanglement-period detection, and the combined signature suite.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::entanglement::{linear_entropy, rdm1};
use crate::error::{Error, Result};
use crate::floquet::{FloquetOperator, SpectrumReport};
use crate::linalg::identity_deviation;
use crate::symbasis::{coherent_state, CoherentStateParams};

/// Tolerances used by the signature suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureTolerances {
    /// Max-entry threshold for |U^T − I| when detecting the operator period.
    pub period_tol: f64,
    /// Pointwise threshold for |S(n+T) − S(n)| when detecting the entropy
    /// period. Looser than machine epsilon: S(n) passes through an RDM
    /// eigensolve.
    pub entropy_tol: f64,
    /// Eigenphase degeneracy-grouping tolerance.
    pub grouping_tol: f64,
}

impl Default for SignatureTolerances {
    fn default() -> Self {
        Self { period_tol: 1e-9, entropy_tol: 1e-9, grouping_tol: 1e-8 }
    }
}

/// Parameters of a signature-suite run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureConfig {
    /// δ(n) and S(n) are computed for n up to this bound.
    pub n_max: usize,
    /// Operator periods are searched up to this bound.
    pub max_period: usize,
    pub tolerances: SignatureTolerances,
}

impl Default for SignatureConfig {
    fn default() -> Self {
        Self { n_max: 64, max_period: 64, tolerances: SignatureTolerances::default() }
    }
}

/// δ(n) = Σ_{p,q} |(U^n)_{pq} − U_{pq}| / (2N) for n = 2..=n_max.
///
/// δ(1) = 0 by definition, so the series starts at n = 2; entry k of the
/// result corresponds to n = k + 2. Powers are accumulated by incremental
/// multiplication.
pub fn delta_deviation(op: &FloquetOperator, n_max: usize) -> Result<Vec<f64>> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 2, got {n_max}")));
    }
    let u = op.matrix();
    let scale = 2.0 * op.n_qubits() as f64;
    let mut power = u * u;
    let mut series = Vec::with_capacity(n_max - 1);
    series.push(entrywise_l1_distance(&power, u) / scale);
    for _ in 3..=n_max {
        power = &power * u;
        series.push(entrywise_l1_distance(&power, u) / scale);
    }
    Ok(series)
}

fn entrywise_l1_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).sum()
}

/// Smallest T ≤ max_period with max-entry |U^T − I| < tol, if any.
///
/// By unitarity U^T = I is equivalent to U^{n+T} = U^n for every n.
pub fn detect_operator_period(
    op: &FloquetOperator,
    max_period: usize,
    tol: f64,
) -> Option<usize> {
    let mut power = DMatrix::<C64>::identity(op.dim(), op.dim());
    for t in 1..=max_period {
        power = &power * op.matrix();
        if identity_deviation(&power) < tol {
            return Some(t);
        }
    }
    None
}

/// Smallest T ≥ 1 with |S(n+T) − S(n)| < tol over the whole window, if any.
///
/// Candidates run up to len/3 so every reported period is covered by at
/// least three repetitions of the data.
pub fn detect_entropy_period(series: &[f64], tol: f64) -> Result<Option<usize>> {
    let len = series.len();
    if len < 3 {
        return Err(Error::SeriesTooShort { needed: 3, got: len });
    }
    for t in 1..=(len / 3) {
        if (0..len - t).all(|n| (series[n + t] - series[n]).abs() < tol) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Combined diagnostics for one (N, τ, initial state) configuration.
#[derive(Debug, Clone)]
pub struct SignatureReport {
    pub n_qubits: usize,
    pub tau: f64,
    pub theta0: f64,
    pub phi0: f64,
    /// δ(n) for n = 2..=n_max.
    pub delta_series: Vec<f64>,
    /// Sample mean of the δ series over the run window (reported, not asserted).
    pub delta_mean: f64,
    /// Operator period T1, verified at 2×T1, when one exists within bounds.
    pub operator_period: Option<usize>,
    /// Entanglement period T, verified on a doubled window, when found.
    pub entropy_period: Option<usize>,
    pub spectrum: SpectrumReport,
    /// Largest operator power that was examined.
    pub max_period_checked: usize,
    pub tolerances: SignatureTolerances,
}

/// Run all three diagnostics for one configuration.
///
/// Detected periods are re-verified on a doubled window before being
/// reported: |U^{2T} − I| must stay below 2×tol, and the entropy series must
/// repeat at 2T as well.
pub fn run_signature_suite(
    n_qubits: usize,
    tau: f64,
    initial: &CoherentStateParams,
    config: &SignatureConfig,
) -> Result<SignatureReport> {
    if config.n_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "n_max must be at least 2, got {}",
            config.n_max
        )));
    }
    let op = crate::floquet::build_floquet(n_qubits, tau)?;

    let delta_series = delta_deviation(&op, config.n_max)?;
    let delta_mean = delta_series.iter().sum::<f64>() / delta_series.len() as f64;

    let tol = config.tolerances;
    let mut operator_period = detect_operator_period(&op, config.max_period, tol.period_tol);
    if let Some(t) = operator_period {
        let ut = op.power(t as u64)?;
        let u2t = &ut * &ut;
        if identity_deviation(&u2t) >= 2.0 * tol.period_tol {
            operator_period = None;
        }
    }

    // entropy series over the doubled window: detect on the first half,
    // verify on the rest
    let mut state = coherent_state(initial, n_qubits)?;
    let mut entropy = Vec::with_capacity(config.n_max + 1);
    entropy.push(linear_entropy(&rdm1(&state)));
    for _ in 1..=config.n_max {
        state = op.apply(&state)?;
        entropy.push(linear_entropy(&rdm1(&state)));
    }
    let half_len = (entropy.len() / 2 + 1).max(3).min(entropy.len());
    let mut entropy_period = detect_entropy_period(&entropy[..half_len], tol.entropy_tol)?;
    if let Some(t) = entropy_period {
        let full_ok = (0..entropy.len() - t).all(|n| (entropy[n + t] - entropy[n]).abs() < tol.entropy_tol);
        let doubled_ok = 2 * t >= entropy.len()
            || (0..entropy.len() - 2 * t)
                .all(|n| (entropy[n + 2 * t] - entropy[n]).abs() < 2.0 * tol.entropy_tol);
        if !full_ok || !doubled_ok {
            entropy_period = None;
        }
    }

    let spectrum = op.quasienergy_spectrum(tol.grouping_tol)?;

    Ok(SignatureReport {
        n_qubits,
        tau,
        theta0: initial.theta0(),
        phi0: initial.phi0(),
        delta_series,
        delta_mean,
        operator_period,
        entropy_period,
        spectrum,
        max_period_checked: config.max_period,
        tolerances: tol,
    })
}
