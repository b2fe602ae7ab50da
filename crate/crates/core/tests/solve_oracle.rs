//! Static-solve oracle: the Cholesky route against a plain Gaussian
//! elimination with partial pivoting written independently in test
//! code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tabutruss_core::fem::{solve_static, Matrix};

/// Textbook row-reduction solver, no reuse of the production kernels.
#[allow(clippy::needless_range_loop)]
fn gaussian_elimination(a: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = a.size();
    let mut m = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = a[(i, j)];
        }
        m[i][n] = b[i];
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&p, &q| m[p][col].abs().partial_cmp(&m[q][col].abs()).unwrap())
            .unwrap();
        m.swap(col, pivot_row);
        let pivot = m[col][col];
        assert!(pivot.abs() > 0.0, "singular test matrix");
        for row in (col + 1)..n {
            let factor = m[row][col] / pivot;
            for k in col..=n {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut sum = m[row][n];
        for k in (row + 1)..n {
            sum -= m[row][k] * x[k];
        }
        x[row] = sum / m[row][row];
    }
    x
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    // A = B Bᵀ + n·I is symmetric positive definite
    let mut b = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = rng.gen_range(-1.0..1.0);
        }
    }
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut sum = if i == j { n as f64 } else { 0.0 };
            for k in 0..n {
                sum += b[(i, k)] * b[(j, k)];
            }
            a[(i, j)] = sum;
        }
    }
    a
}

#[test]
fn cholesky_solve_matches_elimination_oracle_on_random_spd_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let a = random_spd(&mut rng, 8);
        let b: Vec<f64> = (0..8).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let ours = solve_static(&a, &b).unwrap();
        let oracle = gaussian_elimination(&a, &b);
        for (x, y) in ours.iter().zip(&oracle) {
            let scale = y.abs().max(1.0);
            assert!(
                (x - y).abs() / scale <= 1e-10,
                "solution mismatch: {x} vs {y}"
            );
        }
    }
}
