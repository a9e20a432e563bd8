//! Levenberg-Marquardt for small dense least-squares problems.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop once `½‖r‖² ≤ target_cost`.
    pub target_cost: f64,
    /// Stop when an accepted step lowers the cost by less than this fraction.
    pub min_relative_decrease: f64,
    pub initial_damping: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            target_cost: 0.0,
            min_relative_decrease: 1e-12,
            initial_damping: 1e-3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LmOutcome {
    pub x: DVector<f64>,
    pub cost: f64,
    pub iterations: usize,
}

/// Minimizes `½‖r(x)‖²`; `eval` returns the residual and its Jacobian.
pub fn levenberg_marquardt<F>(x0: DVector<f64>, opts: LmOptions, mut eval: F) -> LmOutcome
where
    F: FnMut(&DVector<f64>) -> (DVector<f64>, DMatrix<f64>),
{
    let mut x = x0;
    let (mut r, mut jac) = eval(&x);
    let mut cost = 0.5 * r.norm_squared();
    let mut damping = opts.initial_damping;
    let mut iterations = 0;
    let mut stalls = 0;
    while iterations < opts.max_iter && cost > opts.target_cost {
        iterations += 1;
        let jt = jac.transpose();
        let grad = &jt * &r;
        if grad.amax() == 0.0 {
            break;
        }
        let normal = &jt * &jac;
        let scale = normal.diagonal().map(|d| d.max(1e-12));
        let mut accepted = false;
        for _ in 0..30 {
            let mut lhs = normal.clone();
            for i in 0..lhs.nrows() {
                lhs[(i, i)] += damping * scale[i];
            }
            let step = match lhs.cholesky() {
                Some(ch) => ch.solve(&(-&grad)),
                None => {
                    damping *= 10.0;
                    continue;
                }
            };
            let trial = &x + &step;
            let (tr, tj) = eval(&trial);
            let trial_cost = 0.5 * tr.norm_squared();
            if trial_cost < cost {
                let decrease = (cost - trial_cost) / cost;
                x = trial;
                r = tr;
                jac = tj;
                cost = trial_cost;
                damping = (damping / 3.0).max(1e-12);
                accepted = true;
                stalls = if decrease < opts.min_relative_decrease { stalls + 1 } else { 0 };
                break;
            }
            damping *= 4.0;
        }
        if !accepted || stalls >= 3 {
            break;
        }
    }
    LmOutcome { x, cost, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let out = levenberg_marquardt(
            DVector::from_vec(vec![-1.2, 1.0]),
            LmOptions {
                max_iter: 500,
                ..Default::default()
            },
            |x| {
                let r = DVector::from_vec(vec![10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]]);
                let j = DMatrix::from_row_slice(2, 2, &[-20.0 * x[0], 10.0, -1.0, 0.0]);
                (r, j)
            },
        );
        assert!((out.x[0] - 1.0).abs() < 1e-8 && (out.x[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn hinge_feasibility() {
        // max(0, x + 1) with x0 = 3 reaches zero cost.
        let out = levenberg_marquardt(DVector::from_vec(vec![3.0]), LmOptions::default(), |x| {
            let v = x[0] + 1.0;
            if v > 0.0 {
                (DVector::from_vec(vec![v]), DMatrix::from_element(1, 1, 1.0))
            } else {
                (DVector::from_vec(vec![0.0]), DMatrix::from_element(1, 1, 0.0))
            }
        });
        assert_eq!(out.cost, 0.0);
    }
}
