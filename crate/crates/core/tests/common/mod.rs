//! Reference implementations used only by the integration tests. Nothing here
//! calls into the simulator or optimizer under test.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<Complex64>>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Cut value of `z` by direct edge enumeration.
pub fn cut_of(edges: &[(usize, usize)], z: usize) -> f64 {
    edges
        .iter()
        .filter(|&&(a, b)| ((z >> a) & 1) != ((z >> b) & 1))
        .count() as f64
}

/// Best cut by enumerating every bitstring.
pub fn brute_max_cut(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..1usize << n).map(|z| cut_of(edges, z) as usize).max().unwrap_or(0)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|r| (0..dim).map(|c| if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for r in 0..dim {
        for k in 0..dim {
            let ark = a[r][k];
            if ark == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..dim {
                out[r][c] += ark * b[k][c];
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `exp(-i gamma C)` as a full diagonal matrix.
pub fn cost_unitary(n: usize, edges: &[(usize, usize)], gamma: f64) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (z, row) in m.iter_mut().enumerate() {
        row[z] = (-I * gamma * cut_of(edges, z)).exp();
    }
    m
}

/// Tensor product of `exp(-i beta X)` on every qubit, built entry by entry.
pub fn mixer_unitary(n: usize, beta: f64) -> Matrix {
    let single = [
        [Complex64::new(beta.cos(), 0.0), -I * beta.sin()],
        [-I * beta.sin(), Complex64::new(beta.cos(), 0.0)],
    ];
    let dim = 1 << n;
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| (0..n).fold(Complex64::new(1.0, 0.0), |acc, q| acc * single[(r >> q) & 1][(c >> q) & 1]))
                .collect()
        })
        .collect()
}

/// `sum_q X_q` as a dense matrix.
pub fn mixer_hamiltonian(n: usize) -> Matrix {
    let dim = 1 << n;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (r, row) in m.iter_mut().enumerate() {
        for q in 0..n {
            row[r ^ (1 << q)] += Complex64::new(1.0, 0.0);
        }
    }
    m
}

pub fn plus_state(n: usize) -> Vec<Complex64> {
    let dim = 1 << n;
    vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim]
}

/// Full circuit unitary `prod_k U_M(beta_k) U_C(gamma_k)` as one matrix.
pub fn circuit_unitary(n: usize, edges: &[(usize, usize)], gammas: &[f64], betas: &[f64]) -> Matrix {
    let mut u = identity(1 << n);
    for (&g, &b) in gammas.iter().zip(betas) {
        u = matmul(&cost_unitary(n, edges, g), &u);
        u = matmul(&mixer_unitary(n, b), &u);
    }
    u
}

pub fn dense_state(n: usize, edges: &[(usize, usize)], gammas: &[f64], betas: &[f64]) -> Vec<Complex64> {
    matvec(&circuit_unitary(n, edges, gammas, betas), &plus_state(n))
}

pub fn dense_expectation(n: usize, edges: &[(usize, usize)], gammas: &[f64], betas: &[f64]) -> f64 {
    dense_state(n, edges, gammas, betas)
        .iter()
        .enumerate()
        .map(|(z, a)| a.norm_sqr() * cut_of(edges, z))
        .sum()
}

/// Exact gradient of the expected cut with respect to `[gammas.., betas..]`.
/// Each partial derivative applies the layer's generator `-i H` right after
/// that layer and takes `2 Re <psi| C |d psi>`.
pub fn dense_gradient(n: usize, edges: &[(usize, usize)], gammas: &[f64], betas: &[f64]) -> Vec<f64> {
    let p = gammas.len();
    let dim = 1 << n;
    let cost_diag: Vec<f64> = (0..dim).map(|z| cut_of(edges, z)).collect();
    let mixer_h = mixer_hamiltonian(n);
    let psi = dense_state(n, edges, gammas, betas);

    let run = |insert_at: usize, on_mixer: bool| -> Vec<Complex64> {
        let mut s = plus_state(n);
        for k in 0..p {
            s = matvec(&cost_unitary(n, edges, gammas[k]), &s);
            if k == insert_at && !on_mixer {
                s = s.iter().zip(&cost_diag).map(|(a, c)| -I * c * a).collect();
            }
            s = matvec(&mixer_unitary(n, betas[k]), &s);
            if k == insert_at && on_mixer {
                s = matvec(&mixer_h, &s).iter().map(|a| -I * a).collect();
            }
        }
        s
    };
    let partial = |d_psi: Vec<Complex64>| -> f64 {
        2.0 * psi
            .iter()
            .zip(&d_psi)
            .zip(&cost_diag)
            .map(|((a, b), c)| (a.conj() * c * b).re)
            .sum::<f64>()
    };
    let mut grad = Vec::with_capacity(2 * p);
    for k in 0..p {
        grad.push(partial(run(k, false)));
    }
    for k in 0..p {
        grad.push(partial(run(k, true)));
    }
    grad
}

/// Every graph on `n` vertices that is connected, as edge lists.
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for subset in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| subset >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let mut seen = 1usize;
        loop {
            let before = seen;
            for &(a, b) in &edges {
                if (seen >> a) & 1 == 1 || (seen >> b) & 1 == 1 {
                    seen |= (1 << a) | (1 << b);
                }
            }
            if seen == before {
                break;
            }
        }
        if seen == (1 << n) - 1 {
            out.push(edges);
        }
    }
    out
}

/// Swarm hyperparameters for the reference trajectories below.
#[derive(Clone, Debug)]
pub struct RefSwarm {
    pub size: usize,
    pub iters: usize,
    pub w_max: f64,
    pub w_min: f64,
    pub c: f64,
    pub eta: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub h: f64,
    pub lo: f64,
    pub hi: f64,
    pub seed: u64,
    pub with_adam: bool,
}

/// Straight-line swarm loop returning the global-best loss after each
/// iteration and the final global best.
pub fn reference_swarm(f: &dyn Fn(&[f64]) -> f64, dim: usize, cfg: &RefSwarm) -> (Vec<f64>, Vec<f64>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x: Vec<Vec<f64>> = Vec::new();
    let mut loss_best = Vec::new();
    for _ in 0..cfg.size {
        let p: Vec<f64> = (0..dim).map(|_| rng.gen_range(cfg.lo..=cfg.hi)).collect();
        loss_best.push(f(&p));
        x.push(p);
    }
    let mut v = vec![vec![0.0; dim]; cfg.size];
    let mut best = x.clone();
    let mut m1 = vec![vec![0.0; dim]; cfg.size];
    let mut m2 = vec![vec![0.0; dim]; cfg.size];
    let mut steps = vec![0i32; cfg.size];
    let mut g = 0;
    for i in 1..cfg.size {
        if loss_best[i] < loss_best[g] {
            g = i;
        }
    }
    let mut g_pos = best[g].clone();
    let mut g_loss = loss_best[g];
    let mut trace = Vec::new();

    for t in 1..=cfg.iters {
        let w = cfg.w_max - (t as f64 / cfg.iters as f64) * (cfg.w_max - cfg.w_min);
        for i in 0..cfg.size {
            let r: Vec<f64> = (0..cfg.size).map(|_| rng.gen::<f64>()).collect();
            let mut cand = vec![0.0; dim];
            for d in 0..dim {
                let mut s = 0.0;
                for j in 0..cfg.size {
                    s += r[j] * (best[j][d] - x[i][d]);
                }
                v[i][d] = w * v[i][d] + cfg.c / cfg.size as f64 * s;
                cand[d] = x[i][d] + v[i][d];
            }
            if cfg.with_adam {
                let mut grad = vec![0.0; dim];
                for d in 0..dim {
                    let mut up = cand.clone();
                    up[d] += cfg.h;
                    let mut down = cand.clone();
                    down[d] -= cfg.h;
                    grad[d] = (f(&up) - f(&down)) / (2.0 * cfg.h);
                }
                steps[i] += 1;
                for d in 0..dim {
                    m1[i][d] = cfg.beta1 * m1[i][d] + (1.0 - cfg.beta1) * grad[d];
                    m2[i][d] = cfg.beta2 * m2[i][d] + (1.0 - cfg.beta2) * grad[d] * grad[d];
                    let mh = m1[i][d] / (1.0 - cfg.beta1.powi(steps[i]));
                    let vh = m2[i][d] / (1.0 - cfg.beta2.powi(steps[i]));
                    cand[d] -= cfg.eta * mh / (vh.sqrt() + cfg.eps);
                }
            }
            for d in 0..dim {
                cand[d] = cand[d].clamp(cfg.lo, cfg.hi);
                v[i][d] = cand[d] - x[i][d];
            }
            let l = f(&cand);
            x[i] = cand;
            if l < loss_best[i] {
                loss_best[i] = l;
                best[i] = x[i].clone();
                if l < g_loss {
                    g_loss = l;
                    g_pos = x[i].clone();
                }
            }
        }
        trace.push(g_loss);
    }
    (trace, g_pos, g_loss)
}
