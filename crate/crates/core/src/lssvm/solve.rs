//! Dense solve of the bordered kernel system with a condition guard.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Systems whose estimated 1-norm condition number exceeds this are rejected.
pub const CONDITION_LIMIT: f64 = 1e14;

#[derive(Debug)]
pub(crate) struct Solution {
    pub x: DVector<f64>,
    pub condition: f64,
}

/// Solves the symmetric system `a · x = rhs` by LU with partial pivoting,
/// followed by one step of iterative refinement.
pub(crate) fn solve_symmetric(a: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<Solution> {
    let lu = a.clone().lu();
    let mut x = lu.solve(rhs).ok_or_else(|| Error::Numerical {
        message: "kernel system is singular".into(),
        condition: f64::INFINITY,
    })?;

    let condition = one_norm(a) * inverse_one_norm_estimate(&|b| lu.solve(b), a.nrows());
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::Numerical {
            message: format!("kernel system is ill-conditioned (limit {CONDITION_LIMIT:e})"),
            condition,
        });
    }

    let residual = rhs - a * &x;
    if let Some(dx) = lu.solve(&residual) {
        x += dx;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical {
            message: "kernel system solution is not finite".into(),
            condition,
        });
    }
    Ok(Solution { x, condition })
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Hager–Higham estimate of `‖A⁻¹‖₁` for symmetric `A`, where `solve`
/// applies `A⁻¹`. Symmetry lets the same solve stand in for `A⁻ᵀ`.
fn inverse_one_norm_estimate(
    solve: &dyn Fn(&DVector<f64>) -> Option<DVector<f64>>,
    n: usize,
) -> f64 {
    let l1 = |v: &DVector<f64>| v.iter().map(|x| x.abs()).sum::<f64>();
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut estimate = 0.0;
    let mut last_j = usize::MAX;

    for _ in 0..5 {
        let Some(y) = solve(&x) else {
            return f64::INFINITY;
        };
        estimate = l1(&y);
        let sign = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let Some(z) = solve(&sign) else {
            return f64::INFINITY;
        };
        let (j, zmax) = z
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| {
                if v.abs() > acc.1 {
                    (i, v.abs())
                } else {
                    acc
                }
            });
        if zmax <= z.dot(&x) || j == last_j {
            break;
        }
        last_j = j;
        x = DVector::zeros(n);
        x[j] = 1.0;
    }

    // Alternating test vector guards against the estimator's known blind spots.
    let alt = DVector::from_fn(n, |i, _| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sign * (1.0 + i as f64 / (n.max(2) - 1) as f64)
    });
    if let Some(y) = solve(&alt) {
        estimate = estimate.max(2.0 * l1(&y) / (3.0 * n as f64));
    }
    estimate
}
