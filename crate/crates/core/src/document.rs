//! JSON system descriptions.
//!
//! ```json
//! { "n": 3, "k1": 2, "k2": 3,
//!   "components": [ [[0.3,0.4,0.3],[0.2,0.5,0.3],[0.1,0.3,0.6]], ... ] }
//! ```
//!
//! Exactly one of `components` (one matrix per component), `homogeneous`
//! (one matrix for all) or `segments` (`from`/`to`/`matrix` runs, 1-based and
//! inclusive) must be present. The optional `start` (0, 1 or 2, default 2)
//! is the predecessor state of component 1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::model::{ComponentChain, ComponentState, Segment, SystemSpec, TransitionMatrix};

pub type Rows = [[f64; 3]; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawSegment {
    pub from: usize,
    pub to: usize,
    pub matrix: Rows,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<RawSegment>>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Invalid {
        field: String,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Shape(String),
}

fn invalid(field: impl Into<String>) -> impl FnOnce(Error) -> DocumentError {
    let field = field.into();
    move |source| DocumentError::Invalid { field, source }
}

/// A validated chain and system.
#[derive(Debug, Clone, PartialEq)]
pub struct System {
    pub chain: ComponentChain,
    pub spec: SystemSpec,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn resolve(&self) -> Result<System, DocumentError> {
        let present = [
            self.components.is_some(),
            self.homogeneous.is_some(),
            self.segments.is_some(),
        ];
        match present.iter().filter(|p| **p).count() {
            1 => {}
            0 => {
                return Err(DocumentError::Shape(
                    "one of `components`, `homogeneous` or `segments` is required".into(),
                ))
            }
            _ => {
                return Err(DocumentError::Shape(
                    "only one of `components`, `homogeneous` or `segments` may be given".into(),
                ))
            }
        }
        let spec = SystemSpec::new(self.n, self.k1, self.k2).map_err(|e| {
            let field = match &e {
                Error::InvalidThreshold { name, .. } => *name,
                _ => "n",
            };
            invalid(field)(e)
        })?;

        let chain = if let Some(list) = &self.components {
            if list.len() != self.n {
                return Err(invalid("components")(Error::LengthMismatch {
                    spec: self.n,
                    chain: list.len(),
                }));
            }
            let matrices = list
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    TransitionMatrix::new(*rows).map_err(invalid(format!("components[{}] (component {})", i, i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            ComponentChain::new(matrices).map_err(invalid("components"))?
        } else if let Some(rows) = &self.homogeneous {
            let m = TransitionMatrix::new(*rows).map_err(invalid("homogeneous"))?;
            ComponentChain::homogeneous(m, self.n).map_err(invalid("homogeneous"))?
        } else {
            let raw = self.segments.as_deref().unwrap_or_default();
            let segments = raw
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    TransitionMatrix::new(s.matrix)
                        .map(|m| Segment::new(s.from, s.to, m))
                        .map_err(invalid(format!("segments[{i}].matrix")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            ComponentChain::segmented(&segments, self.n).map_err(invalid("segments"))?
        };

        let chain = match self.start {
            Some(code) => chain.with_start(ComponentState::try_from(code).map_err(invalid("start"))?),
            None => chain,
        };
        Ok(System { chain, spec })
    }
}

/// Parses and validates in one step.
pub fn load_system(text: &str) -> Result<System, DocumentError> {
    SpecDocument::parse(text)?.resolve()
}
