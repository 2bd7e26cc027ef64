#![allow(dead_code)]

use lcpath_core::{KktHomotopy, LcpInstance};

pub struct Example {
    pub name: &'static str,
    pub a: Vec<Vec<f64>>,
    pub q: Vec<f64>,
    pub x0: Vec<f64>,
    pub expected: Vec<f64>,
    pub reported_iterations: usize,
}

impl Example {
    pub fn instance(&self) -> LcpInstance {
        LcpInstance::from_rows(&self.a, &self.q).unwrap()
    }

    pub fn kkt(&self) -> KktHomotopy {
        KktHomotopy::with_unit_multipliers(self.instance(), self.x0.clone()).unwrap()
    }
}

pub fn examples() -> Vec<Example> {
    vec![
        Example {
            name: "ex4_1",
            a: vec![vec![-1.0, 2.0], vec![3.0, -1.0]],
            q: vec![1.0, -0.5],
            x0: vec![0.4, 0.1],
            expected: vec![1.0, 0.0],
            reported_iterations: 20,
        },
        Example {
            name: "ex4_2",
            a: vec![vec![1.0, -1.0], vec![-1.0, 1.0]],
            q: vec![-0.5, 2.0],
            x0: vec![2.0, 1.0],
            expected: vec![0.5, 0.0],
            reported_iterations: 22,
        },
        Example {
            name: "ex4_3",
            a: vec![vec![1.0, 1.0], vec![0.0, 0.0]],
            q: vec![-1.0, 1.0],
            x0: vec![1.0, 0.2],
            expected: vec![1.0, 0.0],
            reported_iterations: 15,
        },
        Example {
            name: "ex4_4",
            a: vec![vec![-1.0, 2.0, 1.0], vec![1.0, -0.5, -0.25], vec![-0.5, -1.0, -1.0]],
            q: vec![-0.25, -0.1, 3.0],
            x0: vec![2.3, 1.0, 0.7],
            expected: vec![1.8333, 0.0, 2.0833],
            reported_iterations: 17,
        },
        Example {
            name: "ex4_5",
            a: vec![vec![1.0, -2.0, 0.0], vec![0.0, 1.0, -2.0], vec![-2.0, 0.0, 1.0]],
            q: vec![-1.0, 1.0, 7.0],
            x0: vec![3.0, 0.5, 0.5],
            expected: vec![1.0, 0.0, 0.0],
            reported_iterations: 24,
        },
        Example {
            name: "ex4_6",
            a: vec![
                vec![-1.0, 1.0, 1.0, 1.0],
                vec![1.0, 0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0, -1.0],
                vec![1.0, 0.0, -1.0, 0.0],
            ],
            q: vec![-1.0, 1.0, -1.0, 1.0],
            x0: vec![4.0, 4.0, 1.0, 1.0],
            expected: vec![1.0, 0.0, 2.0, 0.0],
            reported_iterations: 17,
        },
        Example {
            name: "ex4_7",
            a: vec![
                vec![0.0, 0.0, 0.0, 1.0, 2.0],
                vec![0.0, 0.0, -1.0, -1.0, 2.0],
                vec![0.0, -1.0, 0.0, -1.0, 1.0],
                vec![1.0, -1.0, -1.0, 0.0, 0.0],
                vec![2.0, 1.0, 0.0, 0.0, 0.0],
            ],
            q: vec![-2.0, -1.0, 7.0, 2.0, -1.0],
            x0: vec![3.0, 1.0, 1.0, 1.0, 3.0],
            expected: vec![0.5, 0.0, 0.0, 0.0, 1.0],
            reported_iterations: 27,
        },
    ]
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

use lcpath_core::Matrix;
use rand::Rng;

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Matrix {
    let data = (0..n * n).map(|_| rng.gen_range(-scale..scale)).collect();
    Matrix::new(n, n, data).unwrap()
}

/// Random instance together with a strictly feasible `x0`: `q` is chosen so
/// that `A x0 + q` is positive.
pub fn random_feasible<R: Rng>(rng: &mut R, n: usize) -> (LcpInstance, Vec<f64>) {
    let a = random_matrix(rng, n, 2.0);
    let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..3.0)).collect();
    let ax0 = a.mul_vec(&x0);
    let q = ax0.iter().map(|v| -v + rng.gen_range(0.1..2.0)).collect();
    (LcpInstance::new(a, q).unwrap(), x0)
}

/// `I + E` with small `E`, then made strictly row diagonally dominant.
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

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
