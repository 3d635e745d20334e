//! Damped Newton solver for the gluing equations.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::equations::EquationSystem;

#[derive(Clone, Debug)]
pub struct ShapeSolution {
    pub shapes: Vec<Complex64>,
    pub residual: f64,
    /// All shapes have imaginary part above the degeneracy threshold.
    pub geometric: bool,
    /// Some shape came out flat (contributes no volume).
    pub flat_warning: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("Newton iteration did not converge")]
    Divergence,
    #[error("iteration reached a degenerate shape")]
    Degenerate,
}

pub const REGULAR_SHAPE: Complex64 = Complex64::new(0.5, 0.866_025_403_784_438_6);

/// Default initial guess: the regular shape with small seeded offsets, so
/// convergence is exercised rather than assumed.
pub fn perturbed_regular(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let dx: f64 = rng.gen_range(-1.0..1.0);
            let dy: f64 = rng.gen_range(-1.0..1.0);
            REGULAR_SHAPE + Complex64::new(1e-3 * dx, 1e-3 * dy)
        })
        .collect()
}

const MAX_ITERS: usize = 60;
const IM_THRESHOLD: f64 = 1e-9;

/// Least-squares Newton on the (overdetermined) log equations, with step
/// halving whenever a full step fails to decrease the residual.
pub fn solve_shapes(
    sys: &EquationSystem,
    initial: &[Complex64],
    tol: f64,
) -> Result<ShapeSolution, SolveError> {
    let n = sys.tets;
    assert_eq!(initial.len(), n);
    let mut z = initial.to_vec();
    let degenerate = |z: &[Complex64]| {
        z.iter().any(|w| {
            !w.re.is_finite() || !w.im.is_finite() || w.norm() < 1e-9 || (1.0 - w).norm() < 1e-9
        })
    };
    if degenerate(&z) {
        return Err(SolveError::Degenerate);
    }
    let mut res = sys.residual(&z);
    for _ in 0..MAX_ITERS {
        if res < tol {
            let geometric = z.iter().all(|w| w.im > IM_THRESHOLD);
            let flat_warning = z.iter().any(|w| w.im.abs() <= IM_THRESHOLD);
            return Ok(ShapeSolution { shapes: z, residual: res, geometric, flat_warning });
        }
        let f = sys.evaluate(&z);
        let jac = sys.jacobian(&z);
        // Normal equations J^H J d = -J^H f.
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        for (row, fr) in jac.iter().zip(&f) {
            for i in 0..n {
                let ci = row[i].conj();
                for j in 0..n {
                    a[i][j] += ci * row[j];
                }
                rhs[i] -= ci * fr;
            }
        }
        let step = solve_linear(&mut a, &mut rhs).ok_or(SolveError::Degenerate)?;
        // Step halving.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<Complex64> =
                z.iter().zip(&step).map(|(w, d)| w + lambda * d).collect();
            if !degenerate(&trial) {
                let trial_res = sys.residual(&trial);
                if trial_res < res {
                    z = trial;
                    res = trial_res;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(SolveError::Divergence);
        }
    }
    if res < tol {
        let geometric = z.iter().all(|w| w.im > IM_THRESHOLD);
        let flat_warning = z.iter().any(|w| w.im.abs() <= IM_THRESHOLD);
        Ok(ShapeSolution { shapes: z, residual: res, geometric, flat_warning })
    } else {
        Err(SolveError::Divergence)
    }
}

/// Gaussian elimination with partial pivoting; consumes its inputs.
fn solve_linear(a: &mut [Vec<Complex64>], rhs: &mut [Complex64]) -> Option<Vec<Complex64>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap()
        })?;
        if a[pivot][col].norm() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for i in col + 1..n {
            let factor = a[i][col] / a[col][col];
            for j in col..n {
                let sub = factor * a[col][j];
                a[i][j] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[i] -= sub;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut sum = rhs[i];
        for j in i + 1..n {
            sum -= a[i][j] * x[j];
        }
        x[i] = sum / a[i][i];
    }
    Some(x)
}
