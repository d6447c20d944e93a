use std::path::Path;

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use super::activation::Activation;
use super::mlp::{Layer, Mlp};
use crate::error::{Error, Result};

pub const SNAPSHOT_FORMAT: &str = "lagan-mlp";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub rows: usize,
    pub cols: usize,
    pub activation: Activation,
    /// Row-major `rows × cols`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpSnapshot {
    pub format: String,
    pub version: u32,
    pub layers: Vec<LayerRecord>,
}

impl From<&Mlp> for MlpSnapshot {
    fn from(net: &Mlp) -> Self {
        Self {
            format: SNAPSHOT_FORMAT.into(),
            version: SNAPSHOT_VERSION,
            layers: net
                .layers()
                .iter()
                .map(|l| LayerRecord {
                    rows: l.fan_in(),
                    cols: l.fan_out(),
                    activation: l.activation,
                    weights: l.weights.iter().copied().collect(),
                    biases: l.biases.to_vec(),
                })
                .collect(),
        }
    }
}

impl MlpSnapshot {
    pub fn into_mlp(self) -> Result<Mlp> {
        if self.format != SNAPSHOT_FORMAT || self.version != SNAPSHOT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported snapshot {} v{} (expected {SNAPSHOT_FORMAT} v{SNAPSHOT_VERSION})",
                self.format, self.version
            )));
        }
        let layers = self
            .layers
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                let weights = Array2::from_shape_vec((r.rows, r.cols), r.weights)
                    .map_err(|e| Error::Shape(format!("layer {i}: {e}")))?;
                Ok(Layer {
                    weights,
                    biases: Array1::from(r.biases),
                    activation: r.activation,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Mlp::from_layers(layers)
    }
}

impl Mlp {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&MlpSnapshot::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<MlpSnapshot>(text)?.into_mlp()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_exact() {
        let net = Mlp::init(&[3, 4, 1], &[Activation::LeakyRelu { slope: 0.3 }, Activation::Sigmoid], 5).unwrap();
        let back = Mlp::from_json(&net.to_json().unwrap()).unwrap();
        assert_eq!(net, back);
    }

    #[test]
    fn rejects_bad_shapes_and_versions() {
        let net = Mlp::init(&[2, 1], &[Activation::Identity], 0).unwrap();
        let mut snap = MlpSnapshot::from(&net);
        snap.layers[0].weights.pop();
        assert!(snap.into_mlp().is_err());
        let mut snap = MlpSnapshot::from(&net);
        snap.version = 99;
        assert!(snap.into_mlp().is_err());
    }
}
