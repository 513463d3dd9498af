//! Internal numerical kernels: quaternion Hermitian solves through the
//! complex adjoint embedding, and real polynomial roots through a balanced
//! companion matrix.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::quat::Quaternion;

/// Writes `q = α + β j` with `α = w + x i`, `β = y + z i`.
fn complex_parts(q: Quaternion) -> (Complex64, Complex64) {
    (Complex64::new(q.w, q.x), Complex64::new(q.y, q.z))
}

fn from_complex_parts(alpha: Complex64, beta: Complex64) -> Quaternion {
    Quaternion::new(alpha.re, alpha.im, beta.re, beta.im)
}

/// Solves the right-linear system `Σ_k G[r][k] x_k = b[r]` over the
/// quaternions for Hermitian `G`, through the standard embedding of each
/// entry into a 2×2 complex block. Returns `None` when the embedded system
/// is singular.
///
/// The embedded matrix of a Hermitian quaternion matrix is complex
/// Hermitian, and positive definite exactly when the original is, so a
/// Cholesky factorization is attempted first with an LU fallback.
pub(crate) fn solve_hermitian(g: &[Vec<Quaternion>], b: &[Quaternion]) -> Option<Vec<Quaternion>> {
    let m = b.len();
    let mut mat = DMatrix::<Complex64>::zeros(2 * m, 2 * m);
    for r in 0..m {
        for c in 0..m {
            let (alpha, beta) = complex_parts(g[r][c]);
            mat[(2 * r, 2 * c)] = alpha;
            mat[(2 * r, 2 * c + 1)] = beta;
            mat[(2 * r + 1, 2 * c)] = -beta.conj();
            mat[(2 * r + 1, 2 * c + 1)] = alpha.conj();
        }
    }
    let mut rhs = DVector::<Complex64>::zeros(2 * m);
    for r in 0..m {
        let (alpha, beta) = complex_parts(b[r]);
        rhs[2 * r] = alpha;
        rhs[2 * r + 1] = -beta.conj();
    }
    let sol = match mat.clone().cholesky() {
        Some(chol) => chol.solve(&rhs),
        None => mat.lu().solve(&rhs)?,
    };
    let mut out = Vec::with_capacity(m);
    for r in 0..m {
        let alpha = sol[2 * r];
        let beta = -sol[2 * r + 1].conj();
        let q = from_complex_parts(alpha, beta);
        if !q.is_finite() {
            return None;
        }
        out.push(q);
    }
    Some(out)
}

/// Parlett–Reinsch balancing (radix 2): diagonal similarity scaling that
/// roughly equalizes row and column norms before the eigensolve.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let radix: f64 = 2.0;
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / radix;
            let mut f = 1.0;
            let s = c + r;
            let mut c_scaled = c;
            while c_scaled < g {
                f *= radix;
                c_scaled *= sqrdx;
            }
            g = r * radix;
            while c_scaled > g {
                f /= radix;
                c_scaled /= sqrdx;
            }
            if (c_scaled + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a real-coefficient polynomial `Σ coeffs[n] q^n`,
/// via the balanced companion matrix, each polished by two Newton steps.
/// Constant polynomials have no roots.
pub(crate) fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    // strip a (numerically) vanishing leading coefficient
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-14 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut companion = DMatrix::<f64>::zeros(deg, deg);
    for r in 1..deg {
        companion[(r, r - 1)] = 1.0;
    }
    for r in 0..deg {
        companion[(r, deg - 1)] = -coeffs[r] / lead;
    }
    balance(&mut companion);
    let eigen = companion.complex_eigenvalues();
    eigen
        .iter()
        .map(|&root| {
            let mut z = root;
            for _ in 0..2 {
                let (p, dp) = eval_with_derivative(&coeffs[..=deg], z);
                if dp.norm() > 1e-300 {
                    let step = p / dp;
                    if step.norm().is_finite() {
                        z -= step;
                    }
                }
            }
            z
        })
        .collect()
}
