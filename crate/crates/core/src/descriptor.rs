//! JSON descriptors for groups, maps and the structured inputs.
//!
//! ```json
//! {"kind": "cayley", "table": [[0, 1], [1, 0]]}
//! {"kind": "permutation", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}
//! {"kind": "builtin", "name": "dihedral", "params": [4]}
//! {"kind": "builtin", "name": "direct_product", "params": [{"kind": "builtin", "name": "cyclic", "params": [2]}, ...]}
//! {"generators": [1], "images": [2]}
//! {"image": [0, 2, 1]}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::{AbelianEndo, AbelianError, FgAbelianGroup};
use crate::extension::{ExtensionEndo, ExtensionError, LatticeExtensionGroup};
use crate::group::{endo_from_images, BuiltinGroup, FiniteGroup, GroupConfig, GroupError, GroupMap};
use crate::intmat::IntegerMatrix;
use crate::ReidemeisterNumber;

#[derive(Debug, thiserror::Error)]
pub enum DescriptorError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Builtin {
        name: String,
        #[serde(default)]
        params: Vec<Value>,
    },
}

impl GroupDescriptor {
    pub fn builtin(group: &BuiltinGroup) -> Self {
        let (name, params): (&str, Vec<Value>) = match group {
            BuiltinGroup::Cyclic(n) => ("cyclic", vec![(*n).into()]),
            BuiltinGroup::Dihedral(n) => ("dihedral", vec![(*n).into()]),
            BuiltinGroup::Symmetric(n) => ("symmetric", vec![(*n).into()]),
            BuiltinGroup::Alternating(n) => ("alternating", vec![(*n).into()]),
            BuiltinGroup::Quaternion8 => ("quaternion8", vec![]),
            BuiltinGroup::DirectProduct(a, b) => (
                "direct_product",
                vec![
                    serde_json::to_value(Self::builtin(a)).expect("descriptor"),
                    serde_json::to_value(Self::builtin(b)).expect("descriptor"),
                ],
            ),
            BuiltinGroup::Abelian(ds) => ("abelian", vec![ds.clone().into()]),
        };
        GroupDescriptor::Builtin { name: name.to_string(), params }
    }

    pub fn build(&self, config: &GroupConfig) -> Result<FiniteGroup, DescriptorError> {
        match self {
            GroupDescriptor::Cayley { table, labels } => {
                Ok(FiniteGroup::from_cayley_with(table, labels.clone(), config)?)
            }
            GroupDescriptor::Permutation { degree, generators } => {
                Ok(FiniteGroup::from_permutations_with(*degree, generators, config)?)
            }
            GroupDescriptor::Builtin { name, params } if name == "direct_product" => {
                let [a, b] = params.as_slice() else {
                    return Err(invalid_params(name, "expected two group descriptors"));
                };
                let a: GroupDescriptor = serde_json::from_value(a.clone())?;
                let b: GroupDescriptor = serde_json::from_value(b.clone())?;
                let (a, b) = (a.build(config)?, b.build(config)?);
                if a.order().saturating_mul(b.order()) > config.order_cap {
                    return Err(GroupError::OrderLimitExceeded { limit: config.order_cap }.into());
                }
                Ok(FiniteGroup::direct_product(&a, &b))
            }
            GroupDescriptor::Builtin { name, params } => Ok(parse_builtin(name, params)?.build_with(config)?),
        }
    }
}

fn invalid_params(name: &str, reason: &str) -> DescriptorError {
    GroupError::InvalidParams { name: name.to_string(), reason: reason.to_string() }.into()
}

fn parse_builtin(name: &str, params: &[Value]) -> Result<BuiltinGroup, DescriptorError> {
    let single = || -> Result<usize, DescriptorError> {
        match params {
            [v] => v.as_u64().map(|n| n as usize).ok_or_else(|| invalid_params(name, "expected one non-negative integer")),
            _ => Err(invalid_params(name, "expected one non-negative integer")),
        }
    };
    Ok(match name {
        "cyclic" => BuiltinGroup::Cyclic(single()?),
        "dihedral" => BuiltinGroup::Dihedral(single()?),
        "symmetric" => BuiltinGroup::Symmetric(single()?),
        "alternating" => BuiltinGroup::Alternating(single()?),
        "quaternion8" => {
            if !params.is_empty() {
                return Err(invalid_params(name, "takes no parameters"));
            }
            BuiltinGroup::Quaternion8
        }
        "abelian" => {
            // either [[2, 4]] or [2, 4]
            let list = match params {
                [Value::Array(inner)] => inner.as_slice(),
                other => other,
            };
            let ds = list
                .iter()
                .map(|v| v.as_u64().map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| invalid_params(name, "invariants must be non-negative integers"))?;
            BuiltinGroup::Abelian(ds)
        }
        other => return Err(GroupError::UnknownName(other.to_string()).into()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDescriptor {
    Images { generators: Vec<usize>, images: Vec<usize> },
    Total { image: Vec<usize> },
}

impl MapDescriptor {
    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<GroupMap, DescriptorError> {
        Ok(match self {
            MapDescriptor::Images { generators, images } => endo_from_images(group, generators, images)?,
            MapDescriptor::Total { image } => GroupMap::from_total(group, image)?,
        })
    }
}

/// `{"group": ..., "map": ...}`; a missing map means the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMapInput {
    pub group: GroupDescriptor,
    #[serde(default)]
    pub map: Option<MapDescriptor>,
}

impl GroupMapInput {
    pub fn build(&self, config: &GroupConfig) -> Result<GroupMap, DescriptorError> {
        let group = Arc::new(self.group.build(config)?);
        match &self.map {
            Some(m) => m.build(&group),
            None => Ok(GroupMap::identity(&group)),
        }
    }
}

/// `{"rank": r, "torsion": [...], "matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianInput {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    pub matrix: IntegerMatrix,
}

impl AbelianInput {
    pub fn build(&self) -> Result<AbelianEndo, DescriptorError> {
        let group = FgAbelianGroup::new(self.rank, self.torsion.clone())?;
        Ok(AbelianEndo::new(&group, self.matrix.clone())?)
    }
}

/// `{"k": 2, "theta": [[...]], "B": [[...]], "eps": -1}`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionInput {
    #[serde(default)]
    pub k: Option<usize>,
    pub theta: IntegerMatrix,
    #[serde(rename = "B")]
    pub b: IntegerMatrix,
    pub eps: i64,
}

impl ExtensionInput {
    pub fn build(&self) -> Result<(LatticeExtensionGroup, ExtensionEndo), DescriptorError> {
        if let Some(k) = self.k {
            if self.theta.rows() != k {
                return Err(DescriptorError::Invalid(format!("k = {k} but theta has {} rows", self.theta.rows())));
            }
        }
        let group = LatticeExtensionGroup::new(self.theta.clone())?;
        let phi = ExtensionEndo::new(&group, self.b.clone(), self.eps)?;
        Ok((group, phi))
    }
}

/// `{"matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusInput {
    pub matrix: IntegerMatrix,
}

impl TorusInput {
    pub fn validate(&self) -> Result<(), DescriptorError> {
        if !self.matrix.is_square() {
            return Err(DescriptorError::Invalid(format!(
                "torus matrix must be square, got {}x{}",
                self.matrix.rows(),
                self.matrix.cols()
            )));
        }
        Ok(())
    }
}

/// Input of the congruence check: an explicit sequence, a torus matrix, or a
/// finite group with an endomorphism.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum CongruenceInput {
    Sequence { sequence: Vec<ReidemeisterNumber> },
    Torus { matrix: IntegerMatrix },
    Group(GroupMapInput),
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DescriptorError> {
    Ok(serde_json::from_str(text)?)
}
