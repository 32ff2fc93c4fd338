use rand::Rng;

use crate::error::{Error, Result};

/// Central-difference gradient: `(f(x + h e_d) - f(x - h e_d)) / 2h` per dimension.
///
/// Costs `2 * theta.len()` evaluations, taken in dimension order (+h before -h).
pub fn finite_diff_grad<F>(mut f: F, theta: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let mut probe = theta.to_vec();
    let mut grad = Vec::with_capacity(theta.len());
    for d in 0..theta.len() {
        probe[d] = theta[d] + h;
        let plus = f(&probe)?;
        probe[d] = theta[d] - h;
        let minus = f(&probe)?;
        probe[d] = theta[d];
        if !plus.is_finite() || !minus.is_finite() {
            return Err(Error::Numerical(format!(
                "objective is not finite near dimension {d}: f(+h) = {plus}, f(-h) = {minus}"
            )));
        }
        grad.push((plus - minus) / (2.0 * h));
    }
    Ok(grad)
}

/// Fully informed swarm pull on a particle, with explicit weights `r[j]`:
/// `mean_j c * r[j] * (pbest_j - position)`.
pub fn swarm_influence_with(position: &[f64], pbests: &[Vec<f64>], c: f64, r: &[f64]) -> Vec<f64> {
    debug_assert_eq!(pbests.len(), r.len());
    let count = pbests.len() as f64;
    let mut pull = vec![0.0; position.len()];
    for (best, &rj) in pbests.iter().zip(r) {
        for ((acc, &b), &x) in pull.iter_mut().zip(best).zip(position) {
            *acc += c * rj * (b - x);
        }
    }
    pull.iter_mut().for_each(|acc| *acc /= count);
    pull
}

/// [`swarm_influence_with`] drawing one `U(0, 1)` weight per informant, in order.
pub fn swarm_influence_grad<R: Rng + ?Sized>(
    position: &[f64],
    pbests: &[Vec<f64>],
    c: f64,
    rng: &mut R,
) -> Vec<f64> {
    let r: Vec<f64> = (0..pbests.len()).map(|_| rng.gen::<f64>()).collect();
    swarm_influence_with(position, pbests, c, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fd_examples() {
        let g = finite_diff_grad(|x| Ok(x[0] * x[0]), &[1.0], 1e-3).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-6);

        let g = finite_diff_grad(|_| Ok(4.2), &[0.3, -1.0, 2.0], 1e-3).unwrap();
        assert_eq!(g, vec![0.0; 3]);

        let g = finite_diff_grad(|x| Ok(3.0 * x[0] + 5.0 * x[1]), &[0.0, 0.0], 1e-3).unwrap();
        assert!((g[0] - 3.0).abs() < 1e-9 && (g[1] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn fd_errors() {
        assert!(finite_diff_grad(|_| Ok(0.0), &[0.0], 0.0).is_err());
        let err = finite_diff_grad(|x| Ok(1.0 / x[0]), &[1e-3], 1e-3).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)), "{err:?}");
    }

    #[test]
    fn influence_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let here = vec![0.5, -0.25];
        let g = swarm_influence_grad(&here, &[here.clone(), here.clone()], 2.0, &mut rng);
        assert_eq!(g, vec![0.0, 0.0]);
        let g = swarm_influence_grad(&here, &[here.clone()], 2.0, &mut rng);
        assert_eq!(g, vec![0.0, 0.0]);

        let g = swarm_influence_with(&[0.0], &[vec![1.0], vec![-1.0]], 1.0, &[1.0, 1.0]);
        assert_eq!(g, vec![0.0]);
        let g = swarm_influence_with(&[0.0], &[vec![1.0], vec![3.0]], 2.0, &[1.0, 0.5]);
        assert_eq!(g, vec![2.5]);
    }

    #[test]
    fn influence_is_deterministic_per_rng_state() {
        let pbests = vec![vec![1.0, 2.0], vec![-1.0, 0.5], vec![0.3, 0.3]];
        let a = swarm_influence_grad(&[0.0, 0.0], &pbests, 2.0, &mut ChaCha8Rng::seed_from_u64(5));
        let b = swarm_influence_grad(&[0.0, 0.0], &pbests, 2.0, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }
}
