use nalgebra::{DMatrix, DVector};

use super::kernel::{check_rows, gram_unchecked, KernelSpec};
use super::solve::solve_symmetric;
use crate::error::{Error, Result};

/// Validated `n × p` inputs with `n` targets.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl TrainingSet {
    pub fn new(inputs: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::input("training set is empty"));
        }
        let p = check_rows(&inputs)?;
        if p == 0 {
            return Err(Error::input("training inputs have no columns"));
        }
        if inputs.len() != targets.len() {
            return Err(Error::input(format!(
                "{} input rows but {} targets",
                inputs.len(),
                targets.len()
            )));
        }
        if targets.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("targets contain non-finite values"));
        }
        Ok(Self { inputs, targets })
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.inputs[0].len()
    }
}

/// Trained least-squares SVM regressor.
///
/// Predictions are `f(x) = Σᵢ aᵢ K(x, xᵢ) + b` over the stored training
/// inputs. `lambda` is `1 / reg_c`, the ridge added to the Gram diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LssvmModel {
    kernel: KernelSpec,
    reg_c: f64,
    lambda: f64,
    alphas: Vec<f64>,
    bias: f64,
    train_inputs: Vec<Vec<f64>>,
    condition: Option<f64>,
}

impl LssvmModel {
    /// Rebuilds a model from stored parts, checking shapes and the
    /// zero-sum constraint on the dual coefficients.
    pub fn from_parts(
        kernel: KernelSpec,
        reg_c: f64,
        alphas: Vec<f64>,
        bias: f64,
        train_inputs: Vec<Vec<f64>>,
    ) -> Result<Self> {
        kernel.validate()?;
        validate_reg_c(reg_c)?;
        if train_inputs.is_empty() {
            return Err(Error::input("model has no training inputs"));
        }
        let p = check_rows(&train_inputs)?;
        if p == 0 {
            return Err(Error::input("model training inputs have no columns"));
        }
        if alphas.len() != train_inputs.len() {
            return Err(Error::input(format!(
                "model has {} alphas for {} training rows",
                alphas.len(),
                train_inputs.len()
            )));
        }
        if !bias.is_finite() || alphas.iter().any(|a| !a.is_finite()) {
            return Err(Error::input("model coefficients are not finite"));
        }
        Ok(Self {
            kernel,
            reg_c,
            lambda: 1.0 / reg_c,
            alphas,
            bias,
            train_inputs,
            condition: None,
        })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn reg_c(&self) -> f64 {
        self.reg_c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn train_inputs(&self) -> &[Vec<f64>] {
        &self.train_inputs
    }

    pub fn n_features(&self) -> usize {
        self.train_inputs[0].len()
    }

    /// Condition estimate of the system solved at training time, if this
    /// model was trained in-process.
    pub fn condition(&self) -> Option<f64> {
        self.condition
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features() {
            return Err(Error::input(format!(
                "expected {} features, got {}",
                self.n_features(),
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("prediction input contains non-finite values"));
        }
        Ok(self.predict_unchecked(x))
    }

    pub fn predict_many(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|r| self.predict(r)).collect()
    }

    fn predict_unchecked(&self, x: &[f64]) -> f64 {
        self.alphas
            .iter()
            .zip(&self.train_inputs)
            .map(|(a, xi)| a * self.kernel.eval_unchecked(x, xi))
            .sum::<f64>()
            + self.bias
    }
}

fn validate_reg_c(reg_c: f64) -> Result<()> {
    if !(reg_c.is_finite() && reg_c > 0.0) {
        return Err(Error::input(format!(
            "regularization C must be positive and finite, got {reg_c}"
        )));
    }
    Ok(())
}

/// Assembles the bordered system `[[0, 1ᵀ], [1, K + λI]]`.
pub fn kkt_matrix(kernel: &KernelSpec, inputs: &[Vec<f64>], reg_c: f64) -> DMatrix<f64> {
    let n = inputs.len();
    let lambda = 1.0 / reg_c;
    let gram = gram_unchecked(kernel, inputs);
    DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => 0.0,
        (0, _) | (_, 0) => 1.0,
        _ if i == j => gram[i - 1][j - 1] + lambda,
        _ => gram[i - 1][j - 1],
    })
}

/// Trains an LSSVM by solving the bordered dual system for `(b, a)`.
pub fn train(data: &TrainingSet, kernel: KernelSpec, reg_c: f64) -> Result<LssvmModel> {
    kernel.validate()?;
    validate_reg_c(reg_c)?;

    let n = data.len();
    let a = kkt_matrix(&kernel, data.inputs(), reg_c);
    let rhs = DVector::from_fn(n + 1, |i, _| if i == 0 { 0.0 } else { data.targets()[i - 1] });
    let sol = solve_symmetric(&a, &rhs)?;

    Ok(LssvmModel {
        kernel,
        reg_c,
        lambda: 1.0 / reg_c,
        alphas: sol.x.iter().skip(1).copied().collect(),
        bias: sol.x[0],
        train_inputs: data.inputs().to_vec(),
        condition: Some(sol.condition),
    })
}

/// Max-norm residual of the bordered system at the model's `(b, a)`.
pub fn system_residual(model: &LssvmModel, targets: &[f64]) -> f64 {
    let n = model.alphas.len();
    let a = kkt_matrix(&model.kernel, &model.train_inputs, model.reg_c);
    let x = DVector::from_fn(n + 1, |i, _| if i == 0 { model.bias } else { model.alphas[i - 1] });
    let rhs = DVector::from_fn(n + 1, |i, _| if i == 0 { 0.0 } else { targets[i - 1] });
    (a * x - rhs).amax()
}
