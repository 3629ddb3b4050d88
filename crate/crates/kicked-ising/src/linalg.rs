//! Small dense linear-algebra helpers shared by the physics modules.
//!
//! The one nontrivial routine here is [`unitary_eigen`]: an eigendecomposition
//! of a unitary matrix built from two Hermitian eigensolves. A unitary U is
//! normal, so its Hermitian and anti-Hermitian parts A = (U + U†)/2 and
//! B = (U − U†)/2i commute and share an eigenbasis with U. Diagonalizing A
//! alone is not enough: eigenvalue pairs e^{±iθ} have the same real part, and
//! a Hermitian solver is free to mix them. Diagonalizing B restricted to each
//! degenerate eigenspace of A separates those pairs and yields an orthonormal
//! eigenbasis of U itself.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest entrywise modulus of a complex matrix; 0 for an empty matrix.
pub fn max_abs_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Max-entry deviation of `m` from the identity.
pub fn identity_deviation(m: &DMatrix<C64>) -> f64 {
    let mut dev = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            dev = dev.max((m[(i, j)] - target).norm());
        }
    }
    dev
}

/// Max-entry deviation of `U†U` from the identity.
pub fn unitarity_deviation(u: &DMatrix<C64>) -> f64 {
    identity_deviation(&(u.adjoint() * u))
}

/// Wrap an angle into (−π, π].
pub fn wrap_phase(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// i^k for integer k (exact, no trig).
pub fn ipow(k: i64) -> C64 {
    match k.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// cos(num·π/den) for integers, with the argument reduced mod 2π first.
///
/// The reduction keeps trig of rational multiples of π bit-stable under
/// n → n + period, which the closed-form entropy library relies on.
pub fn cospi_ratio(num: i64, den: i64) -> f64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(2 * den);
    (r as f64 * PI / den as f64).cos()
}

/// sin(num·π/den) for integers, reduced like [`cospi_ratio`].
pub fn sinpi_ratio(num: i64, den: i64) -> f64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(2 * den);
    (r as f64 * PI / den as f64).sin()
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
///
/// Returns `(eigenvalues, eigenvectors)`; column k of the matrix belongs to
/// eigenvalue k. Eigenvectors are orthonormal.
///
/// Cyclic Jacobi with a threshold sweep strategy. The spectra this crate
/// cares about are massively degenerate (that is the physics being tested),
/// and Jacobi keeps full accuracy on clustered eigenvalues where QL-style
/// solvers were observed to lose five digits in the eigenvectors.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    let mut a = m.clone();
    let mut v = DMatrix::<C64>::identity(n, n);

    let scale = a.iter().fold(0.0_f64, |acc, z| acc.max(z.norm())).max(1e-300);
    let tol = scale * 1e-15 * n as f64;

    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        // rotate away every off-diagonal element above the sweep threshold
        let threshold = (off / 3.0).max(tol);
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < threshold {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s; // s·e^{iφ}

                a[(p, p)] = C64::new(alpha - t * r, 0.0);
                a[(q, q)] = C64::new(gamma + t * r, 0.0);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * c - akq * s_phase.conj();
                    let new_kq = akp * s_phase + akq * c;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s_phase.conj();
                    v[(k, q)] = vkp * s_phase + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = DVector::from_fn(n, |k, _| a[(order[k], order[k])].re);
    let vectors = DMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    (values, vectors)
}

/// Eigendecomposition of a unitary matrix.
pub struct UnitaryEigen {
    /// Eigenphases in (−π, π], ascending.
    pub phases: Vec<f64>,
    /// Orthonormal eigenvectors, column k for phase k.
    pub vectors: DMatrix<C64>,
}

impl UnitaryEigen {
    /// Reassemble U^n = V diag(e^{inθ}) V†. `n = 0` gives the identity.
    pub fn power(&self, n: u64) -> DMatrix<C64> {
        let dim = self.phases.len();
        let mut lam_v = self.vectors.adjoint();
        for (k, &theta) in self.phases.iter().enumerate() {
            let phase = C64::from_polar(1.0, (n as f64 * theta) % (2.0 * PI));
            for j in 0..dim {
                lam_v[(k, j)] *= phase;
            }
        }
        &self.vectors * lam_v
    }
}

/// Decompose a unitary matrix via the commuting Hermitian pair.
///
/// `cluster_tol` is the threshold below which eigenvalues of A = (U + U†)/2
/// are treated as degenerate (the stage where B takes over).
pub fn unitary_eigen(u: &DMatrix<C64>, cluster_tol: f64) -> Result<UnitaryEigen> {
    let dim = u.nrows();
    if dim == 0 || u.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: u.ncols() });
    }
    let half = C64::new(0.5, 0.0);
    let half_over_i = C64::new(0.0, -0.5);
    let a = (u + u.adjoint()).map(|z| z * half);
    let b = (u - u.adjoint()).map(|z| z * half_over_i);

    let (a_vals, a_vecs) = hermitian_eigen(&a);

    let mut pairs: Vec<(f64, DVector<C64>)> = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && a_vals[end] - a_vals[end - 1] < cluster_tol {
            end += 1;
        }
        let k = end - start;
        let vk = a_vecs.columns(start, k).clone_owned();
        if k == 1 {
            let v = vk.column(0).clone_owned();
            let mu = rayleigh(u, &v);
            pairs.push((mu.arg(), v));
        } else {
            // B restricted to the degenerate eigenspace of A
            let mut bk = vk.adjoint() * &b * &vk;
            let bk_star = bk.adjoint();
            bk = (bk + bk_star).map(|z| z * half);
            let (_, w) = hermitian_eigen(&bk);
            let refined = &vk * w;
            for j in 0..k {
                let v = refined.column(j).clone_owned();
                let mu = rayleigh(u, &v);
                pairs.push((mu.arg(), v));
            }
        }
        start = end;
    }

    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let phases: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let vectors = DMatrix::from_fn(dim, dim, |i, k| pairs[k].1[i]);

    // residual check: U V = V diag(e^{iθ})
    let mut recon = vectors.clone();
    for (k, &theta) in phases.iter().enumerate() {
        let phase = C64::from_polar(1.0, theta);
        for i in 0..dim {
            recon[(i, k)] *= phase;
        }
    }
    let residual = max_abs_entry(&(u * &vectors - recon));
    let orth = identity_deviation(&(vectors.adjoint() * &vectors));
    if residual > 1e-8 || orth > 1e-8 {
        return Err(Error::Numerical(format!(
            "unitary eigendecomposition did not converge: residual {residual:.3e}, orthogonality defect {orth:.3e} (dim {dim}, cluster tolerance {cluster_tol:.1e})"
        )));
    }
    Ok(UnitaryEigen { phases, vectors })
}

fn rayleigh(u: &DMatrix<C64>, v: &DVector<C64>) -> C64 {
    (v.adjoint() * (u * v))[(0, 0)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_unitary(dim: usize, seed: u64) -> DMatrix<C64> {
        // deterministic pseudo-random Hermitian, exponentiated by eigendecomposition
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut h = DMatrix::<C64>::zeros(dim, dim);
        for i in 0..dim {
            h[(i, i)] = C64::new(next(), 0.0);
            for j in (i + 1)..dim {
                let z = C64::new(next(), next());
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let (vals, vecs) = hermitian_eigen(&h);
        let mut lam_v = vecs.adjoint();
        for k in 0..dim {
            let phase = C64::from_polar(1.0, vals[k]);
            for j in 0..dim {
                lam_v[(k, j)] *= phase;
            }
        }
        &vecs * lam_v
    }

    #[test]
    fn unitary_eigen_reconstructs() {
        for dim in [2, 5, 9] {
            let u = random_unitary(dim, 41 + dim as u64);
            let eig = unitary_eigen(&u, 1e-9).unwrap();
            let back = eig.power(1);
            assert!(max_abs_entry(&(&back - &u)) < 1e-11);
        }
    }

    #[test]
    fn unitary_eigen_handles_identity() {
        let u = DMatrix::<C64>::identity(4, 4);
        let eig = unitary_eigen(&u, 1e-9).unwrap();
        for &p in &eig.phases {
            assert!(p.abs() < 1e-12);
        }
        assert!(identity_deviation(&eig.power(17)) < 1e-12);
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let u = random_unitary(6, 7);
        let eig = unitary_eigen(&u, 1e-9).unwrap();
        let mut acc = DMatrix::<C64>::identity(6, 6);
        for _ in 0..13 {
            acc = &acc * &u;
        }
        assert!(max_abs_entry(&(eig.power(13) - acc)) < 1e-10);
    }

    #[test]
    fn wrap_phase_range() {
        for x in [-7.0, -PI, 0.0, PI, 3.5, 12.0] {
            let w = wrap_phase(x);
            assert!(w > -PI - 1e-15 && w <= PI + 1e-15);
            assert!(((w - x) / (2.0 * PI)).fract().abs() < 1e-12);
        }
    }

    #[test]
    fn cospi_ratio_is_periodic_bitwise() {
        for n in 0..200i64 {
            assert_eq!(cospi_ratio(4 * n, 3), cospi_ratio(4 * (n + 3), 3));
            assert_eq!(sinpi_ratio(n, 2), sinpi_ratio(n + 4, 2));
        }
    }
}
