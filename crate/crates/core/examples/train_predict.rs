//! Fit an LSSVM with each kernel family, then save and reload one model.
//!
//! ```text
//! cargo run --example train_predict
//! ```

use swarm_lssvm::lssvm::{parse_model, serialize_model, system_residual, ModelFile};
use swarm_lssvm::prelude::*;

fn main() -> Result<()> {
    // y = x₀² − x₁ on a small grid.
    let inputs: Vec<Vec<f64>> = (0..25).map(|i| vec![(i % 5) as f64 / 2.0 - 1.0, (i / 5) as f64 / 2.0 - 1.0]).collect();
    let targets: Vec<f64> = inputs.iter().map(|x| x[0] * x[0] - x[1]).collect();
    let data = TrainingSet::new(inputs, targets.clone())?;
    let probe = [0.25, -0.4];

    for kernel in [
        KernelSpec::Linear,
        KernelSpec::Polynomial { degree: 2, scale: 1.0 },
        KernelSpec::rbf(1.0),
        KernelSpec::Mlp { slope: 0.5, offset: 0.0 },
    ] {
        let model = train(&data, kernel, 100.0)?;
        println!(
            "{:<28} f({probe:?}) = {:+.4}  (true {:+.4})  residual {:.1e}  cond ~{:.1e}",
            kernel.to_string(),
            model.predict(&probe)?,
            probe[0] * probe[0] - probe[1],
            system_residual(&model, &targets),
            model.condition().unwrap_or(f64::NAN),
        );
    }

    let model = train(&data, KernelSpec::rbf(1.0), 100.0)?;
    let text = serialize_model(&ModelFile::new(model.clone()).with_feature_names(vec!["x0".into(), "x1".into()]));
    let back = parse_model(&text)?.model;
    assert_eq!(model.predict(&probe)?, back.predict(&probe)?);
    println!("model file round-trips ({} bytes)", text.len());
    Ok(())
}
