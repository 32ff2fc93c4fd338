use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    finite_diff_grad, swarm_influence_grad, AdamMoments, Mode, OptimizeResult, QaoaObjective,
    SwarmConfig,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_loss: f64,
    pub adam: AdamMoments,
}

/// `2p` independent uniform draws in `[-pi, pi]`.
pub fn random_params<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Vec<f64> {
    (0..2 * p).map(|_| rng.gen_range(-PI..=PI)).collect()
}

fn finite_or_err(value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numerical(format!("objective returned {value}")))
    }
}

/// Minimises `f` over a `dim`-dimensional box with the swarm described by `cfg`.
pub fn minimize<F>(f: F, dim: usize, cfg: &SwarmConfig) -> Result<OptimizeResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    minimize_with_observer(f, dim, cfg, |_, _| {})
}

/// [`minimize`], calling `observer(t, particles)` after each iteration `t`
/// (1-based) once every particle has moved.
pub fn minimize_with_observer<F, O>(
    mut f: F,
    dim: usize,
    cfg: &SwarmConfig,
    mut observer: O,
) -> Result<OptimizeResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
    O: FnMut(usize, &[Particle]),
{
    cfg.validate()?;
    if dim == 0 {
        return Err(Error::InvalidArgument("search space must have at least one dimension".into()));
    }
    let bounds = cfg.resolve_bounds(dim)?;
    let adam = cfg.adam();
    let size = cfg.swarm_size;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], evaluations: &mut usize| -> Result<f64> {
        *evaluations += 1;
        finite_or_err(f(x)?)
    };

    let mut swarm = Vec::with_capacity(size);
    for _ in 0..size {
        let position: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
        let loss = eval(&position, &mut evaluations)?;
        swarm.push(Particle {
            velocity: vec![0.0; dim],
            pbest_position: position.clone(),
            pbest_loss: loss,
            position,
            adam: AdamMoments::zeros(dim),
        });
    }
    let mut gbest = 0;
    for (i, p) in swarm.iter().enumerate() {
        if p.pbest_loss < swarm[gbest].pbest_loss {
            gbest = i;
        }
    }
    let mut gbest_position = swarm[gbest].pbest_position.clone();
    let mut gbest_loss = swarm[gbest].pbest_loss;

    let mut trace = Vec::with_capacity(cfg.max_iters);
    let social = cfg.c / size as f64;
    for t in 1..=cfg.max_iters {
        let w = cfg.w_max - (t as f64 / cfg.max_iters as f64) * (cfg.w_max - cfg.w_min);
        for i in 0..size {
            let mut candidate = match cfg.mode {
                Mode::AdamFd | Mode::FipsoPlain => {
                    let r: Vec<f64> = (0..size).map(|_| rng.gen::<f64>()).collect();
                    let particle = &swarm[i];
                    let mut pull = vec![0.0; dim];
                    for (other, rj) in swarm.iter().zip(&r) {
                        for d in 0..dim {
                            pull[d] += rj * (other.pbest_position[d] - particle.position[d]);
                        }
                    }
                    let particle = &mut swarm[i];
                    for d in 0..dim {
                        particle.velocity[d] = w * particle.velocity[d] + social * pull[d];
                    }
                    let mut candidate: Vec<f64> = particle
                        .position
                        .iter()
                        .zip(&particle.velocity)
                        .map(|(x, v)| x + v)
                        .collect();
                    if cfg.mode == Mode::AdamFd {
                        let grad = finite_diff_grad(|x| eval(x, &mut evaluations), &candidate, cfg.fd_step)?;
                        let step = swarm[i].adam.update(&grad, &adam).step;
                        candidate.iter_mut().zip(&step).for_each(|(x, s)| *x -= s);
                    }
                    candidate
                }
                Mode::AdamSwarm => {
                    let pbests: Vec<Vec<f64>> = swarm.iter().map(|p| p.pbest_position.clone()).collect();
                    let pull = swarm_influence_grad(&swarm[i].position, &pbests, cfg.c, &mut rng);
                    let particle = &mut swarm[i];
                    let out = particle.adam.update(&pull, &adam);
                    for d in 0..dim {
                        particle.velocity[d] = w * particle.velocity[d]
                            + adam.eta * out.m_hat[d] / (out.v_hat[d].sqrt() + adam.epsilon);
                    }
                    particle
                        .position
                        .iter()
                        .zip(&particle.velocity)
                        .map(|(x, v)| x + v)
                        .collect()
                }
            };
            for (x, &(lo, hi)) in candidate.iter_mut().zip(&bounds) {
                *x = x.clamp(lo, hi);
            }

            let loss = eval(&candidate, &mut evaluations)?;
            let particle = &mut swarm[i];
            for d in 0..dim {
                particle.velocity[d] = candidate[d] - particle.position[d];
            }
            particle.position = candidate;
            if loss < particle.pbest_loss {
                particle.pbest_loss = loss;
                particle.pbest_position = particle.position.clone();
                if loss < gbest_loss {
                    gbest_loss = loss;
                    gbest_position = particle.position.clone();
                }
            }
        }
        trace.push(gbest_loss);
        observer(t, &swarm);
    }

    Ok(OptimizeResult {
        best_position: gbest_position,
        best_loss: gbest_loss,
        best_expectation: None,
        trace,
        evaluations,
    })
}

/// Searches the `2p` QAOA angles of graph `g` for an expected cut near `c_target`.
pub fn adam_fipso_optimize(g: &Graph, p: usize, c_target: f64, cfg: &SwarmConfig) -> Result<OptimizeResult> {
    if p == 0 {
        return Err(Error::InvalidArgument("QAOA depth must be at least 1".into()));
    }
    let objective = QaoaObjective::new(g, c_target, cfg.lambda)?;
    let mut result = minimize(|theta| objective.evaluate(theta), 2 * p, cfg)?;
    result.best_expectation = Some(objective.expectation(&result.best_position)?);
    Ok(result)
}
