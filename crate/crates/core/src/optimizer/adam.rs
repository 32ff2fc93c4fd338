/// Per-particle Adam moment accumulators.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamMoments {
    /// First moment.
    pub m: Vec<f64>,
    /// Second (raw, uncentred) moment. Named apart from the particle velocity.
    pub v2: Vec<f64>,
    /// Number of updates applied so far.
    pub t: u32,
}

/// Output of one [`AdamMoments::update`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdamStep {
    /// `eta * m_hat / (sqrt(v_hat) + epsilon)`, to be subtracted for descent.
    pub step: Vec<f64>,
    pub m_hat: Vec<f64>,
    pub v_hat: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamHyper {
    pub beta1: f64,
    pub beta2: f64,
    pub eta: f64,
    pub epsilon: f64,
}

impl AdamMoments {
    pub fn zeros(dim: usize) -> Self {
        Self {
            m: vec![0.0; dim],
            v2: vec![0.0; dim],
            t: 0,
        }
    }

    /// Folds `grad` into the moments, advances `t`, and returns the
    /// bias-corrected step.
    pub fn update(&mut self, grad: &[f64], hp: &AdamHyper) -> AdamStep {
        self.t += 1;
        let (step, m, v2) = adam_update(&self.m, &self.v2, self.t, grad, hp);
        let correction1 = 1.0 - hp.beta1.powi(self.t as i32);
        let correction2 = 1.0 - hp.beta2.powi(self.t as i32);
        self.m = m;
        self.v2 = v2;
        AdamStep {
            step,
            m_hat: self.m.iter().map(|m| m / correction1).collect(),
            v_hat: self.v2.iter().map(|v| v / correction2).collect(),
        }
    }
}

/// Stateless Adam update at step `t >= 1`. Returns `(step, m', v2')`.
pub fn adam_update(
    m: &[f64],
    v2: &[f64],
    t: u32,
    grad: &[f64],
    hp: &AdamHyper,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    assert!(t >= 1, "Adam bias correction needs t >= 1");
    let correction1 = 1.0 - hp.beta1.powi(t as i32);
    let correction2 = 1.0 - hp.beta2.powi(t as i32);
    let mut step = Vec::with_capacity(grad.len());
    let mut m_next = Vec::with_capacity(grad.len());
    let mut v_next = Vec::with_capacity(grad.len());
    for ((&g, &m), &v) in grad.iter().zip(m).zip(v2) {
        let m = hp.beta1 * m + (1.0 - hp.beta1) * g;
        let v = hp.beta2 * v + (1.0 - hp.beta2) * g * g;
        let m_hat = m / correction1;
        let v_hat = v / correction2;
        step.push(hp.eta * m_hat / (v_hat.sqrt() + hp.epsilon));
        m_next.push(m);
        v_next.push(v);
    }
    (step, m_next, v_next)
}
