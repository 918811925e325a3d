//! Solution certificates: a cyclic vertex order plus how it was found,
//! re-checkable against the instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, VertexId};
use crate::paths::LooseCycle;

pub const CERTIFICATE_KIND: &str = "loose-hamilton-cycle";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageLog {
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub n: usize,
    /// Cyclic vertex order; consecutive odd windows are the cycle edges.
    pub order: Vec<VertexId>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<StageLog>,
}

impl Certificate {
    pub fn exact(h: &Hypergraph3, cycle: &LooseCycle) -> Certificate {
        Certificate {
            kind: CERTIFICATE_KIND.into(),
            n: h.n(),
            order: cycle.order().to_vec(),
            method: "exact".into(),
            seed: None,
            stages: Vec::new(),
        }
    }

    pub fn pipeline(
        h: &Hypergraph3,
        order: Vec<VertexId>,
        seed: u64,
        stages: Vec<StageLog>,
    ) -> Certificate {
        Certificate {
            kind: CERTIFICATE_KIND.into(),
            n: h.n(),
            order,
            method: "pipeline".into(),
            seed: Some(seed),
            stages,
        }
    }

    /// Re-validates the certificate against the instance.
    pub fn verify(&self, h: &Hypergraph3) -> Result<()> {
        if self.kind != CERTIFICATE_KIND {
            return Err(Error::InvalidArgument(format!(
                "unknown certificate kind {:?}",
                self.kind
            )));
        }
        if self.n != h.n() {
            return Err(Error::InvalidArgument(format!(
                "certificate is for n = {}, instance has n = {}",
                self.n,
                h.n()
            )));
        }
        LooseCycle::hamilton(h, self.order.clone())
            .map_err(|v| Error::InvalidArgument(format!("cycle check failed: {}", v)))?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }
}
