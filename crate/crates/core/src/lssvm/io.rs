//! Model file: one JSON document holding the trained model plus the feature
//! names and standardization it expects at prediction time.

use serde::{Deserialize, Serialize};

use super::kernel::KernelSpec;
use super::model::LssvmModel;
use crate::dataset::Scaler;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: LssvmModel,
    pub feature_names: Vec<String>,
    pub scaler: Option<Scaler>,
}

impl ModelFile {
    pub fn new(model: LssvmModel) -> Self {
        Self {
            model,
            feature_names: Vec::new(),
            scaler: None,
        }
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Self {
        self.feature_names = names;
        self
    }

    pub fn with_scaler(mut self, scaler: Option<Scaler>) -> Self {
        self.scaler = scaler;
        self
    }
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    format_version: u32,
    kernel: KernelSpec,
    reg_c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    alphas: Vec<f64>,
    bias: f64,
    train_inputs: Vec<Vec<f64>>,
    #[serde(default)]
    feature_names: Vec<String>,
    #[serde(default)]
    scaler: Option<Scaler>,
}

/// Renders a model file. Floats use the shortest representation that parses
/// back to the identical bits.
pub fn serialize_model(file: &ModelFile) -> String {
    let m = &file.model;
    let raw = RawModel {
        format_version: FORMAT_VERSION,
        kernel: *m.kernel(),
        reg_c: m.reg_c(),
        lambda: Some(m.lambda()),
        alphas: m.alphas().to_vec(),
        bias: m.bias(),
        train_inputs: m.train_inputs().to_vec(),
        feature_names: file.feature_names.clone(),
        scaler: file.scaler.clone(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("model is always serializable");
    text.push('\n');
    text
}

pub fn parse_model(text: &str) -> Result<ModelFile> {
    let raw: RawModel =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("model file: {e}")))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(Error::parse(format!(
            "model file: field `format_version` is {}, expected {FORMAT_VERSION}",
            raw.format_version
        )));
    }
    let model = LssvmModel::from_parts(raw.kernel, raw.reg_c, raw.alphas, raw.bias, raw.train_inputs)
        .map_err(|e| Error::parse(format!("model file: {e}")))?;
    if let Some(lambda) = raw.lambda {
        if lambda.to_bits() != model.lambda().to_bits() {
            return Err(Error::parse(format!(
                "model file: field `lambda` ({lambda}) is not 1/reg_c"
            )));
        }
    }
    let p = model.n_features();
    if !raw.feature_names.is_empty() && raw.feature_names.len() != p {
        return Err(Error::parse(format!(
            "model file: field `feature_names` has {} entries for {p} features",
            raw.feature_names.len()
        )));
    }
    if let Some(s) = &raw.scaler {
        if s.means.len() != p || s.stds.len() != p {
            return Err(Error::parse(format!(
                "model file: field `scaler` does not match {p} features"
            )));
        }
    }
    Ok(ModelFile {
        model,
        feature_names: raw.feature_names,
        scaler: raw.scaler,
    })
}
