use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qaoasim::QaoaSimulator;

/// Approximation ratio `c_hat / c_target`, or 0 when the target is 0.
pub fn approx_ratio(c_hat: f64, c_target: f64) -> f64 {
    if c_target != 0.0 {
        c_hat / c_target
    } else {
        0.0
    }
}

/// Loss for an expected cut `c_hat`:
/// `(c_hat - c_target)^2 + lambda * (1 - AR)^2`.
pub fn loss(c_hat: f64, c_target: f64, lambda: f64) -> Result<f64> {
    if !(c_target >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "target cut must be non-negative, got {c_target}"
        )));
    }
    let mse = (c_hat - c_target).powi(2);
    let penalty = (1.0 - approx_ratio(c_hat, c_target)).powi(2);
    Ok(mse + lambda * penalty)
}

/// The swarm's loss over QAOA parameters for one graph.
///
/// Holds the cut spectrum so repeated evaluations only redo the circuit.
#[derive(Debug, Clone)]
pub struct QaoaObjective {
    sim: QaoaSimulator,
    c_target: f64,
    lambda: f64,
}

impl QaoaObjective {
    pub fn new(g: &Graph, c_target: f64, lambda: f64) -> Result<Self> {
        // validates c_target
        loss(0.0, c_target, lambda)?;
        Ok(Self {
            sim: QaoaSimulator::new(g)?,
            c_target,
            lambda,
        })
    }

    pub fn simulator(&self) -> &QaoaSimulator {
        &self.sim
    }

    pub fn c_target(&self) -> f64 {
        self.c_target
    }

    /// Expected cut at `theta = [gamma.., beta..]`.
    pub fn expectation(&self, theta: &[f64]) -> Result<f64> {
        self.sim.expectation_vec(theta)
    }

    pub fn evaluate(&self, theta: &[f64]) -> Result<f64> {
        loss(self.expectation(theta)?, self.c_target, self.lambda)
    }
}

/// One-shot loss evaluation at `theta` on graph `g`.
pub fn objective(theta: &[f64], g: &Graph, c_target: f64, lambda: f64) -> Result<f64> {
    QaoaObjective::new(g, c_target, lambda)?.evaluate(theta)
}
