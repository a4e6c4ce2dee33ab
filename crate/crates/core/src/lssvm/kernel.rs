use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Kernel function and its parameters.
///
/// Serialized as a tagged object, e.g. `{"type":"rbf","sigma2":0.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum KernelSpec {
    /// `K(x, z) = zᵀx`
    Linear,
    /// `K(x, z) = (1 + zᵀx / scale)^degree`
    Polynomial { degree: u32, scale: f64 },
    /// `K(x, z) = exp(-‖x - z‖² / sigma2)`
    Rbf { sigma2: f64 },
    /// `K(x, z) = tanh(slope · zᵀx + offset)`. Not positive semidefinite in general.
    Mlp { slope: f64, offset: f64 },
}

impl KernelSpec {
    pub fn rbf(sigma2: f64) -> Self {
        KernelSpec::Rbf { sigma2 }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Linear => Ok(()),
            KernelSpec::Polynomial { degree, scale } => {
                if degree < 1 {
                    return Err(Error::input("polynomial kernel degree must be >= 1"));
                }
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::input(format!(
                        "polynomial kernel scale must be positive and finite, got {scale}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Rbf { sigma2 } => {
                if !(sigma2.is_finite() && sigma2 > 0.0) {
                    return Err(Error::input(format!(
                        "rbf kernel sigma2 must be positive and finite, got {sigma2}"
                    )));
                }
                Ok(())
            }
            KernelSpec::Mlp { slope, offset } => {
                if !(slope.is_finite() && offset.is_finite()) {
                    return Err(Error::input("mlp kernel parameters must be finite"));
                }
                Ok(())
            }
        }
    }

    /// Kernel name as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Linear => "linear",
            KernelSpec::Polynomial { .. } => "poly",
            KernelSpec::Rbf { .. } => "rbf",
            KernelSpec::Mlp { .. } => "mlp",
        }
    }

    /// Evaluates the kernel without checking inputs. Callers guarantee equal
    /// lengths and finite entries.
    #[inline]
    pub(crate) fn eval_unchecked(&self, x: &[f64], z: &[f64]) -> f64 {
        match *self {
            KernelSpec::Linear => dot(x, z),
            KernelSpec::Polynomial { degree, scale } => {
                (1.0 + dot(x, z) / scale).powi(degree as i32)
            }
            KernelSpec::Rbf { sigma2 } => {
                let d2: f64 = x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum();
                (-d2 / sigma2).exp()
            }
            KernelSpec::Mlp { slope, offset } => (slope * dot(x, z) + offset).tanh(),
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Linear => write!(f, "linear"),
            KernelSpec::Polynomial { degree, scale } => {
                write!(f, "poly(degree={degree}, scale={scale})")
            }
            KernelSpec::Rbf { sigma2 } => write!(f, "rbf(sigma2={sigma2})"),
            KernelSpec::Mlp { slope, offset } => write!(f, "mlp(slope={slope}, offset={offset})"),
        }
    }
}

#[inline]
fn dot(x: &[f64], z: &[f64]) -> f64 {
    x.iter().zip(z).map(|(a, b)| a * b).sum()
}

/// Evaluates `K(x, z)` for the selected kernel.
pub fn kernel_eval(spec: &KernelSpec, x: &[f64], z: &[f64]) -> Result<f64> {
    if x.len() != z.len() {
        return Err(Error::input(format!(
            "kernel arguments differ in length: {} vs {}",
            x.len(),
            z.len()
        )));
    }
    if x.iter().chain(z).any(|v| !v.is_finite()) {
        return Err(Error::input("kernel arguments contain non-finite values"));
    }
    Ok(spec.eval_unchecked(x, z))
}

/// Pairwise kernel matrix over the rows of `inputs`.
///
/// Only the upper triangle is evaluated; the lower one is mirrored so the
/// result is exactly symmetric.
pub fn gram_matrix(spec: &KernelSpec, inputs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_rows(inputs)?;
    Ok(gram_unchecked(spec, inputs))
}

pub(crate) fn gram_unchecked(spec: &KernelSpec, inputs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = inputs.len();
    let mut k = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = spec.eval_unchecked(&inputs[i], &inputs[j]);
            k[i][j] = v;
            k[j][i] = v;
        }
    }
    k
}

pub(crate) fn check_rows(inputs: &[Vec<f64>]) -> Result<usize> {
    let p = inputs.first().map_or(0, Vec::len);
    for (i, row) in inputs.iter().enumerate() {
        if row.len() != p {
            return Err(Error::input(format!(
                "row {i} has {} columns, expected {p}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::input(format!("row {i} contains non-finite values")));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rbf_self_similarity_is_one() {
        for s in [1e-3, 0.5, 1.0, 1e3] {
            assert_eq!(kernel_eval(&KernelSpec::rbf(s), &[1.5, -2.0], &[1.5, -2.0]).unwrap(), 1.0);
        }
    }

    #[test]
    fn linear_is_dot_product() {
        assert_eq!(kernel_eval(&KernelSpec::Linear, &[1.0, 2.0], &[3.0, 4.0]).unwrap(), 11.0);
    }

    #[test]
    fn polynomial_degree_two() {
        let k = KernelSpec::Polynomial { degree: 2, scale: 1.0 };
        assert_eq!(kernel_eval(&k, &[1.0], &[1.0]).unwrap(), 4.0);
    }

    #[test]
    fn mlp_at_zero_is_zero() {
        let k = KernelSpec::Mlp { slope: 1.0, offset: 0.0 };
        assert_eq!(kernel_eval(&k, &[0.0], &[5.0]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            kernel_eval(&KernelSpec::Linear, &[1.0], &[1.0, 2.0]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            kernel_eval(&KernelSpec::Linear, &[f64::NAN], &[1.0]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn validate_params() {
        assert!(KernelSpec::rbf(0.0).validate().is_err());
        assert!(KernelSpec::rbf(-1.0).validate().is_err());
        assert!(KernelSpec::Polynomial { degree: 0, scale: 1.0 }.validate().is_err());
        assert!(KernelSpec::Polynomial { degree: 3, scale: 0.0 }.validate().is_err());
        assert!(KernelSpec::Mlp { slope: -1.0, offset: 0.3 }.validate().is_ok());
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&KernelSpec::Linear, &[vec![1.0], vec![2.0]]).unwrap();
        assert_eq!(g, vec![vec![1.0, 2.0], vec![2.0, 4.0]]);

        let g = gram_matrix(&KernelSpec::rbf(1.0), &[vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(g[0][0], 1.0);
        assert_eq!(g[1][1], 1.0);
        assert!((g[0][1] - 0.367_879_441_171_442_3).abs() < 1e-15);
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&KernelSpec::rbf(0.25)).unwrap();
        assert_eq!(s, r#"{"type":"rbf","sigma2":0.25}"#);
        let s = serde_json::to_string(&KernelSpec::Linear).unwrap();
        assert_eq!(s, r#"{"type":"linear"}"#);
    }

    fn any_kernel() -> impl Strategy<Value = KernelSpec> {
        prop_oneof![
            Just(KernelSpec::Linear),
            (1u32..6, 1e-3f64..1e3).prop_map(|(degree, scale)| KernelSpec::Polynomial { degree, scale }),
            (1e-6f64..1e6).prop_map(KernelSpec::rbf),
            (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(slope, offset)| KernelSpec::Mlp { slope, offset }),
        ]
    }

    proptest! {
        #[test]
        fn serialization_round_trips(k in any_kernel()) {
            let text = serde_json::to_string(&k).unwrap();
            let back: KernelSpec = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, k);
        }

        #[test]
        fn symmetric_kernels(
            x in prop::collection::vec(-100.0f64..100.0, 3),
            z in prop::collection::vec(-100.0f64..100.0, 3),
            sigma2 in 1e-3f64..1e3,
        ) {
            for k in [KernelSpec::Linear, KernelSpec::Polynomial { degree: 3, scale: 2.0 }, KernelSpec::rbf(sigma2)] {
                prop_assert_eq!(kernel_eval(&k, &x, &z).unwrap(), kernel_eval(&k, &z, &x).unwrap());
            }
        }
    }
}
