//! The JSON instance file.
//!
//! ```json
//! {
//!   "kind": "hamiltonian",
//!   "num_vertices": 4,
//!   "subgraphs": [[[0, 1]], [[1, 2]], [[2, 3]], [[0, 3]]],
//!   "planted": { "edges": [[0, 1], [1, 2], [2, 3], [0, 3]], "colors": [0, 1, 2, 3] },
//!   "metadata": { "model": "planted-ham" }
//! }
//! ```
//!
//! Colors are the positions in `subgraphs`. A `perfect_matching` file on
//! `2n` vertices has `n` subgraphs; vertices `0..n` are `x_0..x_{n-1}` and
//! `n..2n` are `y_0..y_{n-1}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use transversals::{
    validate_family, validate_transversal, Edge, FamilyKind, SubgraphFamily, Transversal, TransversalKind, Vertex,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Hamiltonian,
    PerfectMatching,
}

impl InstanceKind {
    pub fn family_kind(self) -> FamilyKind {
        match self {
            InstanceKind::Hamiltonian => FamilyKind::Hamiltonian,
            InstanceKind::PerfectMatching => FamilyKind::Matching,
        }
    }

    fn from_family_kind(kind: FamilyKind) -> InstanceKind {
        match kind {
            FamilyKind::Hamiltonian => InstanceKind::Hamiltonian,
            FamilyKind::Matching => InstanceKind::PerfectMatching,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Planted {
    pub edges: Vec<(Vertex, Vertex)>,
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    pub num_vertices: usize,
    pub subgraphs: Vec<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted: Option<Planted>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

/// A parsed and validated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub family: SubgraphFamily,
    pub planted: Option<Transversal>,
}

impl Instance {
    pub fn planted(&self) -> Result<&Transversal, CliError> {
        self.planted.as_ref().ok_or_else(|| CliError::Input("instance has no planted transversal".into()))
    }
}

impl InstanceFile {
    pub fn from_family(
        family: &SubgraphFamily,
        planted: Option<&Transversal>,
        metadata: BTreeMap<String, String>,
    ) -> InstanceFile {
        let planted = planted.map(|t| {
            let (edges, colors) = t.pairs().iter().map(|&(e, c)| (e.endpoints(), c)).unzip();
            Planted { edges, colors }
        });
        InstanceFile {
            kind: InstanceKind::from_family_kind(family.kind()),
            num_vertices: family.num_vertices(),
            subgraphs: family.edge_lists(),
            planted,
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<InstanceFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed instance file: {e}")))
    }

    pub fn read(path: &Path) -> Result<InstanceFile, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        InstanceFile::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("instance serializes");
        fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    /// Builds and validates the family and the planted transversal.
    pub fn to_instance(&self) -> Result<Instance, CliError> {
        let kind = self.kind.family_kind();
        let expected = kind.expected_subgraphs(self.num_vertices);
        if kind == FamilyKind::Matching && self.num_vertices % 2 == 1 {
            return Err(CliError::Input(format!(
                "perfect matching instance with odd num_vertices {}",
                self.num_vertices
            )));
        }
        if self.subgraphs.len() != expected {
            return Err(CliError::Input(format!(
                "expected {expected} subgraphs for {} vertices, found {}",
                self.num_vertices,
                self.subgraphs.len()
            )));
        }
        let family = SubgraphFamily::from_edge_lists(self.num_vertices, &self.subgraphs, kind)
            .map_err(|e| CliError::Input(format!("bad subgraph: {e}")))?;
        let report = validate_family(&family);
        if !report.is_valid() {
            return Err(CliError::Input(format!("invalid family: {}", report.messages().join("; "))));
        }
        let planted = match &self.planted {
            None => None,
            Some(p) => {
                if p.edges.len() != p.colors.len() {
                    return Err(CliError::Input("planted edges and colors differ in length".into()));
                }
                let mut pairs = Vec::with_capacity(p.edges.len());
                for (&(a, b), &c) in p.edges.iter().zip(&p.colors) {
                    let e = Edge::try_new(a, b).ok_or_else(|| CliError::Input(format!("planted loop at {a}")))?;
                    pairs.push((e, c));
                }
                let tkind = match kind {
                    FamilyKind::Hamiltonian => TransversalKind::Cycle,
                    FamilyKind::Matching => TransversalKind::Matching,
                };
                let t = Transversal::new(tkind, pairs);
                let report = validate_transversal(&family, &t);
                if !report.is_valid() {
                    return Err(CliError::Input(format!(
                        "invalid planted transversal: {}",
                        report.messages().join("; ")
                    )));
                }
                Some(t)
            }
        };
        Ok(Instance { family, planted })
    }
}
