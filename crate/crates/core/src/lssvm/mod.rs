//! Least-squares SVM regression.
//!
//! Training reduces to one dense linear system in the bias `b` and the dual
//! coefficients `a`:
//!
//! ```text
//! [ 0   1ᵀ       ] [ b ]   [ 0 ]
//! [ 1   K + λI   ] [ a ] = [ y ]
//! ```
//!
//! where `K` is the Gram matrix of the training inputs and `λ = 1/C`.

mod io;
mod kernel;
mod model;
mod solve;

pub use io::{parse_model, serialize_model, ModelFile, FORMAT_VERSION};
pub use kernel::{gram_matrix, kernel_eval, KernelSpec};
pub use model::{kkt_matrix, system_residual, train, LssvmModel, TrainingSet};
pub use solve::CONDITION_LIMIT;
