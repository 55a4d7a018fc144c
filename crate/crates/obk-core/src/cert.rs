//! Certificate files: self-contained JSON documents that state a host, a
//! claimed cycle-length pair, provenance, and the full factor list as vertex
//! tokens. Certificates are meant to be re-verified, diffed, and archived;
//! serialization is canonical, so serialize -> parse -> serialize is
//! byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{HostSpec, Vertex};
use crate::path::{DiCycle, TwoFactor};

pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("unsupported certificate version {0}")]
    Version(u32),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Host descriptor as serialized into certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostDescriptor {
    CompleteSymmetric { n: u32, split: bool },
    Circulant { m: u32, distances: Vec<u32> },
    CirculantOneThreeEven { m: u32 },
    BlownCycle { columns: Vec<u32>, vertical: bool },
    WStar { two_m: u32 },
}

impl HostDescriptor {
    pub fn from_host(host: &HostSpec) -> Self {
        match host {
            HostSpec::CompleteSymmetric { n, split } => HostDescriptor::CompleteSymmetric {
                n: *n,
                split: *split,
            },
            HostSpec::Circulant { m, distances } => HostDescriptor::Circulant {
                m: *m,
                distances: distances.iter().copied().collect(),
            },
            HostSpec::CirculantOneThreeEven { m } => {
                HostDescriptor::CirculantOneThreeEven { m: *m }
            }
            HostSpec::BlownCycle { columns, vertical } => HostDescriptor::BlownCycle {
                columns: columns.clone(),
                vertical: *vertical,
            },
            HostSpec::WStar { two_m } => HostDescriptor::WStar { two_m: *two_m },
        }
    }

    pub fn to_host(&self) -> Result<HostSpec, CertError> {
        let host = match self {
            HostDescriptor::CompleteSymmetric { n, split: false } => {
                HostSpec::complete_symmetric(*n)
            }
            HostDescriptor::CompleteSymmetric { n, split: true } => {
                HostSpec::complete_symmetric_split(*n)
            }
            HostDescriptor::Circulant { m, distances } => {
                HostSpec::circulant(*m, distances.iter().copied())
            }
            HostDescriptor::CirculantOneThreeEven { m } => HostSpec::circulant_one_three_even(*m),
            HostDescriptor::BlownCycle { columns, vertical } => {
                HostSpec::blown_cycle(columns, *vertical)
            }
            HostDescriptor::WStar { two_m } => HostSpec::w_star(*two_m),
        };
        host.map_err(|e| CertError::Malformed(e.to_string()))
    }
}

/// Summary of the complete-graph split that fed a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmSummary {
    pub m: u32,
    pub reserved: String,
    pub ham_cycles: u32,
}

/// How a certificate was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// "construction" for the pipeline, "oracle_search" for the brute-force
    /// oracle.
    pub method: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// True when the factor set came from a shipped whole factorization
    /// rather than seed-tuple assembly.
    pub special_case: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub km_split: Option<KmSummary>,
    pub data_checksums: BTreeMap<String, String>,
}

/// A serializable, independently re-verifiable factorization claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub host: HostDescriptor,
    pub lengths: Vec<u32>,
    pub provenance: Provenance,
    /// factors -> cycles -> vertex tokens.
    pub factors: Vec<Vec<Vec<String>>>,
}

impl Certificate {
    pub fn new(
        host: &HostSpec,
        lengths: Vec<u32>,
        provenance: Provenance,
        factors: &[TwoFactor],
    ) -> Self {
        let factors = factors
            .iter()
            .map(|factor| {
                factor
                    .cycles()
                    .iter()
                    .map(|cycle| cycle.vertices().iter().map(|v| v.to_string()).collect())
                    .collect()
            })
            .collect();
        Certificate {
            version: CERT_VERSION,
            host: HostDescriptor::from_host(host),
            lengths,
            provenance,
            factors,
        }
    }

    /// Parses the factor token lists back into cycles.
    pub fn factor_cycles(&self) -> Result<Vec<Vec<DiCycle>>, CertError> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, factor)| {
                factor
                    .iter()
                    .map(|tokens| {
                        let vertices: Option<Vec<Vertex>> =
                            tokens.iter().map(|t| Vertex::parse(t)).collect();
                        let vertices = vertices.ok_or_else(|| {
                            CertError::Malformed(format!("factor {i}: bad vertex token"))
                        })?;
                        DiCycle::new(vertices)
                            .map_err(|e| CertError::Malformed(format!("factor {i}: {e}")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Canonical JSON rendering (pretty, two-space indent, fixed field
    /// order).
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("certificate serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, CertError> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| CertError::Malformed(e.to_string()))?;
        if cert.version != CERT_VERSION {
            return Err(CertError::Version(cert.version));
        }
        Ok(cert)
    }

    pub fn write_to(&self, path: &std::path::Path) -> Result<(), CertError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read_from(path: &std::path::Path) -> Result<Self, CertError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}
