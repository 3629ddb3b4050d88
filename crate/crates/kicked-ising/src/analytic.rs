//! Closed-form reference library: exact linear-entropy expressions for
//! N = 5..11, the exact 5-qubit parity-block powers, and the known period
//! constants. These serve as regression oracles for the numerical pipeline.
//!
//! The expressions are transcribed as printed, including the odd/even-step
//! case splits for N = 5, 7, 9, 11 with the |0…0⟩ start; no algebraic
//! simplification is applied. Trig arguments are integer multiples of π/den
//! and are reduced modulo 2π before evaluation, which makes the declared
//! periodicity bit-exact (see `linalg::cospi_ratio`).
//!
//! For even steps n = 2m the 5-qubit eigenvalue is written with cos(8mπ/3)
//! in one place and cos(2mπ/3) in another; the two agree for integer m
//! (the arguments differ by 2mπ), and the former is transcribed here.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{cospi_ratio as cosp, sinpi_ratio as sinp};
use crate::symbasis::CoherentStateParams;

/// The two initial states with closed-form trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// ⊗^N |0⟩, i.e. (θ0, φ0) = (0, 0).
    AllZero,
    /// ⊗^N |+⟩_y, i.e. (θ0, φ0) = (π/2, −π/2).
    AllPlusY,
}

impl InitialState {
    pub fn params(self) -> CoherentStateParams {
        match self {
            InitialState::AllZero => CoherentStateParams::all_zero(),
            InitialState::AllPlusY => CoherentStateParams::plus_y(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            InitialState::AllZero => "all-zero",
            InitialState::AllPlusY => "plus-y",
        }
    }
}

/// A closed-form linear-entropy trajectory with its period constants.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticFormula {
    pub n_qubits: usize,
    pub initial_state: InitialState,
    pub entropy_period: usize,
    pub operator_period: usize,
    /// Which closed form this is, for reports.
    pub source: &'static str,
}

impl AnalyticFormula {
    /// Look up the formula for (N, state); N must be in 5..=11.
    pub fn lookup(n_qubits: usize, state: InitialState) -> Result<Self> {
        if !(5..=11).contains(&n_qubits) {
            return Err(Error::UnsupportedCase { n_qubits, state: state.label() });
        }
        let (entropy_period, operator_period) = exact_periods(n_qubits, state);
        let source = match state {
            InitialState::AllZero => "closed form, start ⊗|0⟩",
            InitialState::AllPlusY => "closed form, start ⊗|+⟩_y",
        };
        Ok(Self { n_qubits, initial_state: state, entropy_period, operator_period, source })
    }

    /// S(n) evaluated from the printed expression.
    pub fn entropy(&self, n: u64) -> f64 {
        let n = n as i64;
        match (self.n_qubits, self.initial_state) {
            (5, InitialState::AllZero) => s5_zero(n),
            (5, InitialState::AllPlusY) => s5_plus(n),
            (6, InitialState::AllZero) => s6_zero(n),
            (6, InitialState::AllPlusY) => s6_plus(n),
            (7, InitialState::AllZero) => s7_zero(n),
            (7, InitialState::AllPlusY) => s7_plus(n),
            (8, InitialState::AllZero) => s8_zero(n),
            (8, InitialState::AllPlusY) => s8_plus(n),
            (9, InitialState::AllZero) => s9_zero(n),
            (9, InitialState::AllPlusY) => s9_plus(n),
            (10, InitialState::AllZero) => s10_zero(n),
            (10, InitialState::AllPlusY) => s10_plus(n),
            (11, InitialState::AllZero) => s11_zero(n),
            (11, InitialState::AllPlusY) => s11_plus(n),
            _ => unreachable!("lookup() bounds N"),
        }
    }
}

/// Convenience wrapper around [`AnalyticFormula::lookup`] + `entropy`.
pub fn analytic_entropy(n_qubits: usize, state: InitialState, n: u64) -> Result<f64> {
    Ok(AnalyticFormula::lookup(n_qubits, state)?.entropy(n))
}

// ---- per-size closed forms -------------------------------------------------

fn s_from_lambda(lambda: f64) -> f64 {
    2.0 * lambda * (1.0 - lambda)
}

fn s5_zero(n: i64) -> f64 {
    if n % 2 == 0 {
        let m = n / 2;
        let lambda = (6.0 + 2.0 * cosp(4 * m, 3) + cosp(8 * m, 3)) / 9.0;
        s_from_lambda(lambda)
    } else {
        // n = 2m − 1
        let k = n; // the (2m−1) combination
        let under = 27.0 - 17.0 * cosp(2 * k, 3) - 10.0 * cosp(4 * k, 3)
            - 17.0 * 3.0_f64.sqrt() * sinp(2 * k, 3)
            + 10.0 * 3.0_f64.sqrt() * sinp(4 * k, 3);
        let lambda = (9.0 - under.max(0.0).sqrt()) / 18.0;
        s_from_lambda(lambda)
    }
}

fn s5_plus(n: i64) -> f64 {
    let lambda = (3.0 - 2.0 * cosp(2 * n, 3) - cosp(4 * n, 3)) / 9.0;
    s_from_lambda(lambda)
}

fn s6_zero(n: i64) -> f64 {
    let a = 1.0 - cosp(n, 2) + sinp(n, 2);
    let b = 284.0 + 229.0 * (cosp(n, 2) - sinp(n, 2)) - 96.0 * sinp(n, 1)
        - 9.0 * (cosp(3 * n, 2) + sinp(3 * n, 2));
    a * a * b / 512.0
}

fn s6_plus(n: i64) -> f64 {
    let c = 1.0 + cosp(n, 1);
    0.5 * (1.0 - 0.25 * c * c)
}

fn s7_zero(n: i64) -> f64 {
    if n % 2 == 0 {
        let m = n / 2;
        (7.0 + 2.0 * cosp(4 * m, 3))
            * (12.0 + 5.0 * cosp(4 * m, 3) + cosp(2 * m, 3))
            * sinp(2 * m, 3).powi(2)
            / 81.0
    } else {
        let k = n;
        let w = -4.0 * 3.0_f64.sqrt() * cosp(k, 3) + 3.0_f64.sqrt() * cosp(k, 1)
            + 6.0 * sinp(k, 3)
            + sinp(k, 1);
        0.5 * (1.0 - sinp(k, 3).powi(2) * w * w / 81.0)
    }
}

fn s7_plus(n: i64) -> f64 {
    let w = 3.0 + 5.0 * cosp(2 * n, 3) + cosp(4 * n, 3);
    0.5 * (1.0 - w * w / 81.0)
}

fn s8_zero(n: i64) -> f64 {
    let a = 1.0 - cosp(n, 2) + sinp(n, 2);
    let b = 1212.0 - 448.0 * sinp(n, 1) + 1005.0 * (cosp(n, 2) - sinp(n, 2))
        - 49.0 * (sinp(3 * n, 2) + cosp(3 * n, 2));
    a * a * b / 2048.0
}

fn s8_plus(n: i64) -> f64 {
    0.5 * (1.0 - cosp(n, 2).powi(2))
}

fn s9_zero(n: i64) -> f64 {
    if n % 2 == 0 {
        let m = n / 2;
        8.0 * (2.0 + cosp(4 * m, 3))
            * (6.0 + 2.0 * cosp(4 * m, 3) + cosp(2 * m, 3))
            * sinp(2 * m, 3).powi(2)
            / 81.0
    } else {
        let k = n;
        let w = 2.0 + cosp(2 * k, 3) - 3.0_f64.sqrt() * sinp(2 * k, 3);
        0.5 - 8.0 * sinp(k, 3).powi(4) * w * w / 81.0
    }
}

fn s9_plus(n: i64) -> f64 {
    let w = 1.0 + 2.0 * cosp(2 * n, 3);
    0.5 * (1.0 - w.powi(4) / 81.0)
}

fn s10_zero(n: i64) -> f64 {
    let a = 17.0 / 32.0 * cosp(n, 4) + cosp(5 * n, 4) + 15.0 / 32.0 * cosp(9 * n, 4);
    let b = 17.0 * (cosp(3 * n, 4) + sinp(3 * n, 4)) - 15.0 * (cosp(7 * n, 4) + sinp(7 * n, 4));
    1.0 - (4.0 + a * a) / 8.0 - sinp(n, 2).powi(2) * b * b / 4096.0
}

fn s10_plus(n: i64) -> f64 {
    let c = 1.0 + cosp(n, 1);
    0.5 * (1.0 - 0.25 * c * c)
}

fn s11_zero(n: i64) -> f64 {
    if n % 2 == 0 {
        let m = n / 2;
        (11.0 + 6.0 * cosp(4 * m, 3))
            * (16.0 + 5.0 * cosp(4 * m, 3) + 3.0 * cosp(2 * m, 3))
            * sinp(2 * m, 3).powi(2)
            / 144.0
    } else {
        let k = n;
        let w = -2.0 * 3.0_f64.sqrt() * cosp(k, 3)
            + 8.0 * sinp(k, 3)
            + 3.0 * (3.0_f64.sqrt() * cosp(k, 1) + sinp(k, 1));
        0.5 * (1.0 - sinp(k, 3).powi(2) * w * w / 144.0)
    }
}

fn s11_plus(n: i64) -> f64 {
    let w = 4.0 + 5.0 * cosp(2 * n, 3) + 3.0 * cosp(4 * n, 3);
    0.5 * (1.0 - w * w / 144.0)
}

// ---- exact 5-qubit block powers --------------------------------------------

/// The exact parity-block powers (U_+^n, U_−^n) for N = 5 at τ = π/4:
/// U_±^n = (±1)^n e^{±inπ/4} M_±(n) with trig entries in n.
pub fn analytic_u5_blocks(n: u64) -> (DMatrix<C64>, DMatrix<C64>) {
    let n = n as i64;
    let c23 = cosp(2 * n, 3);
    let s23 = sinp(2 * n, 3);
    let s13sq = sinp(n, 3).powi(2);
    let m11 = (1.0 + 5.0 * c23) / 6.0;
    let m22 = (5.0 + c23) / 6.0;
    let m12 = 5.0_f64.sqrt() * s13sq / 3.0;
    let m13 = -(5.0_f64 / 6.0).sqrt() * s23;
    let m23 = s23 / 6.0_f64.sqrt();

    let block = |plus: bool| -> DMatrix<C64> {
        let sign = if plus { 1.0 } else { -1.0 };
        let i = C64::new(0.0, 1.0);
        // (±1)^n e^{±inπ/4}, with the exponent reduced mod 8 first
        let parity = if plus || n % 2 == 0 { 1.0 } else { -1.0 };
        let reduced = (if plus { n } else { -n }).rem_euclid(8);
        let front = C64::from_polar(1.0, reduced as f64 * std::f64::consts::PI / 4.0) * parity;
        let mut m = DMatrix::<C64>::zeros(3, 3);
        m[(0, 0)] = C64::new(m11, 0.0);
        m[(0, 1)] = i * (sign * m12);
        m[(0, 2)] = C64::new(m13, 0.0);
        m[(1, 0)] = -i * (sign * m12);
        m[(1, 1)] = C64::new(m22, 0.0);
        m[(1, 2)] = -i * (sign * m23);
        m[(2, 0)] = C64::new(-m13, 0.0);
        m[(2, 1)] = -i * (sign * m23);
        m[(2, 2)] = C64::new(c23, 0.0);
        m.map(|z| z * front)
    };
    (block(true), block(false))
}

// ---- period constants -------------------------------------------------------

/// Period claims: exact for N = 5..11, parity-based conjecture beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodClaim {
    pub entropy_period: usize,
    pub operator_period: usize,
    /// True when the value extrapolates the N ≤ 11 pattern rather than an
    /// exact solution.
    pub conjectured: bool,
}

fn exact_periods(n_qubits: usize, state: InitialState) -> (usize, usize) {
    let entropy = match (n_qubits % 2 == 0, state) {
        (false, InitialState::AllZero) => 6,
        (false, InitialState::AllPlusY) => 3,
        (true, InitialState::AllZero) => 4,
        (true, InitialState::AllPlusY) => 2,
    };
    let operator = if n_qubits % 2 == 0 {
        8
    } else if n_qubits % 4 == 1 {
        24 // N = 5, 9
    } else {
        12 // N = 7, 11
    };
    (entropy, operator)
}

/// Expected periods for any N ≥ 5. Values for N > 11 extrapolate the
/// parity pattern and are flagged `conjectured`.
pub fn expected_periods(n_qubits: usize, state: InitialState) -> Result<PeriodClaim> {
    if n_qubits < 5 {
        return Err(Error::UnsupportedCase { n_qubits, state: state.label() });
    }
    let (entropy_period, operator_period) = exact_periods(n_qubits, state);
    Ok(PeriodClaim { entropy_period, operator_period, conjectured: n_qubits > 11 })
}

// ---- expected failures -------------------------------------------------------

/// A closed-form table entry known to disagree with direct simulation.
#[derive(Debug, Clone, Copy)]
pub struct ExpectedFailure {
    pub n_qubits: usize,
    pub state: InitialState,
    pub note: &'static str,
}

/// Table entries that direct simulation contradicts (suspected misprints).
///
/// Empty: every transcribed expression, including the N = 10 all-zero row
/// with its unusual algebraic shape, agrees with the numerical pipeline to
/// better than 1e-10 over n = 0..=48. The mechanism stays in place so a
/// future discrepancy is reported with both values instead of being patched.
pub fn expected_failures() -> &'static [ExpectedFailure] {
    &[]
}

/// True when (N, state) is on the expected-failure list.
pub fn is_expected_failure(n_qubits: usize, state: InitialState) -> bool {
    expected_failures()
        .iter()
        .any(|f| f.n_qubits == n_qubits && f.state == state)
}
