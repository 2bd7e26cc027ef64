#![allow(dead_code)]

use lcpath_core::{LcpInstance, Matrix};
use rand::Rng;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Matrix {
    let data = (0..n * n).map(|_| rng.gen_range(-scale..scale)).collect();
    Matrix::new(n, n, data).unwrap()
}

/// Random instance with `q` picked so that `x0` is strictly feasible.
pub fn random_feasible<R: Rng>(rng: &mut R, n: usize) -> (LcpInstance, Vec<f64>) {
    let a = random_matrix(rng, n, 2.0);
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
    let ax0 = a.mul_vec(&x0);
    let q = ax0.iter().map(|v| -v + rng.gen_range(0.1..2.0)).collect();
    (LcpInstance::new(a, q).unwrap(), x0)
}

/// `I + E`, `E` uniform in (-0.4, 0.4), then strictly row diagonally dominant.
pub fn random_p_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut a = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] += rng.gen_range(-0.4..0.4);
        }
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
        if a[(i, i)] <= off {
            a[(i, i)] = off + 0.1;
        }
    }
    a
}
