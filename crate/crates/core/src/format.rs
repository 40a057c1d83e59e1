//! JSON documents read and written by the command-line tool. Every document
//! carries `"schema_version": 1`; rationals are `"p/q"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cycles::{CandidateSet, CornerVector};
use crate::debruijn::{unpack_double_label, BitLabel, DoubleVertex, ShiftGraph};
use crate::decomposition::Cycle;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::oracle::EnclosureReport;
use crate::rational::{format_rational, parse_rational, serde_one, serde_vec, Rational};
use crate::reconstruct::{HullPoint, Realization};
use crate::Kind;

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// A polytope as emitted by `corners` and `project`, and read back by
/// `project --from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub d: usize,
    pub kind: Kind,
    /// The shifts `x_1 < … < x_d` the coordinates refer to.
    pub points: Vec<usize>,
    /// True when the corner list is the unminimized candidate list.
    pub raw: bool,
    pub corners: Vec<CornerVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDocument>,
}

impl PolytopeDocument {
    pub fn new(kind: Kind, points: Vec<usize>, raw: bool, corners: Vec<CornerVector>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            d: points.len(),
            kind,
            points,
            raw,
            corners,
            graph: None,
        }
    }

    pub fn polytope(&self) -> Result<Polytope> {
        if self.points.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: self.points.len(),
            });
        }
        Polytope::new(self.d, self.corners.clone())
    }
}

/// Vertex labels and edges of `G` or `G′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    /// Appended symbol for `G`; `"st"` (prepended, appended) for `G′`.
    pub label: String,
}

pub fn vertex_name(kind: Kind, d: usize, v: usize) -> String {
    match kind {
        Kind::Diff => BitLabel::new(d, v).map(|l| l.to_string()).unwrap_or_default(),
        Kind::Sum => DoubleVertex::from_index(d, v).to_string(),
    }
}

pub fn graph_document<G: ShiftGraph>(kind: Kind, graph: &G) -> GraphDocument {
    let dg = graph.digraph();
    let d = graph.d();
    let vertices = (0..dg.vertex_count()).map(|v| vertex_name(kind, d, v)).collect();
    let edges = dg
        .edges()
        .map(|e| GraphEdge {
            source: e.source,
            target: dg.target(e),
            label: match kind {
                Kind::Diff => e.label.to_string(),
                Kind::Sum => {
                    let (s, t) = unpack_double_label(e.label);
                    format!("{s}{t}")
                }
            },
        })
        .collect();
    GraphDocument { vertices, edges }
}

/// Raw candidates keep their source cycle; minimized corners drop nothing.
pub fn candidates_document(c: &CandidateSet) -> PolytopeDocument {
    PolytopeDocument::new(c.kind, (1..=c.d).collect(), true, c.corners.clone())
}

/// One row of the `verify` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: usize,
    pub cloud_size: usize,
    #[serde(with = "serde_one")]
    pub forward_max: Rational,
    #[serde(with = "serde_one")]
    pub forward_scaled: Rational,
    #[serde(with = "serde_one")]
    pub converse_max: Rational,
    #[serde(with = "serde_one")]
    pub converse_scaled: Rational,
    pub exact: bool,
}

impl From<&EnclosureReport> for VerifyRow {
    fn from(r: &EnclosureReport) -> Self {
        Self {
            n: r.n,
            cloud_size: r.cloud_size,
            forward_max: r.forward_max.clone(),
            forward_scaled: r.forward_scaled.clone(),
            converse_max: r.converse_max.clone(),
            converse_scaled: r.converse_scaled.clone(),
            exact: r.all_exact(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub d: usize,
    pub kind: Kind,
    pub points: Vec<usize>,
    pub corners: usize,
    /// Largest `forward_scaled` over the rows.
    #[serde(with = "serde_one")]
    pub constant: Rational,
    pub rows: Vec<VerifyRow>,
}

impl VerifyDocument {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,cloud_size,forward_max,forward_scaled,converse_max,converse_scaled,exact\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n,
                r.cloud_size,
                format_rational(&r.forward_max),
                format_rational(&r.forward_scaled),
                format_rational(&r.converse_max),
                format_rational(&r.converse_scaled),
                r.exact
            ));
        }
        out
    }
}

/// `{"<cycle index>": "p/q", …}`; missing indices have weight zero.
pub type LambdaFile = BTreeMap<String, String>;

pub fn parse_lambdas(file: &LambdaFile, cycle_count: usize, n: usize) -> Result<HullPoint> {
    let mut lambdas = vec![Rational::from_integer(0.into()); cycle_count];
    for (key, value) in file {
        let index: usize = key
            .trim()
            .parse()
            .map_err(|_| Error::InvalidWeights(format!("cycle index {key:?} is not a number")))?;
        let slot = lambdas.get_mut(index).ok_or_else(|| {
            Error::InvalidWeights(format!("cycle index {index} out of range 0..{cycle_count}"))
        })?;
        *slot = parse_rational(value)?;
    }
    HullPoint::new(lambdas, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructDocument {
    pub schema_version: u32,
    pub d: usize,
    pub kind: Kind,
    pub n: usize,
    pub set: Vec<i64>,
    #[serde(with = "serde_vec")]
    pub achieved: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub target: Vec<Rational>,
    #[serde(with = "serde_one")]
    pub linf_error: Rational,
    #[serde(with = "serde_one")]
    pub bound: Rational,
}

impl ReconstructDocument {
    pub fn new(kind: Kind, d: usize, n: usize, r: Realization) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            d,
            kind,
            n,
            set: r.set.elements().to_vec(),
            achieved: r.achieved,
            target: r.target,
            linf_error: r.linf_error,
            bound: r.bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    /// Vertex labels in canonical rotation.
    pub cycle: Vec<String>,
    pub length: usize,
    pub n: u64,
}

impl DecompositionEntry {
    pub fn new(kind: Kind, d: usize, cycle: &Cycle, n: u64) -> Self {
        Self {
            cycle: cycle.vertices().into_iter().map(|v| vertex_name(kind, d, v)).collect(),
            length: cycle.len(),
            n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeDocument {
    pub schema_version: u32,
    pub d: usize,
    pub kind: Kind,
    pub n: usize,
    pub set: Vec<i64>,
    /// Vertices on the closed walk, so `walk_length - 1 = total_weight`.
    pub walk_length: usize,
    pub total_weight: u64,
    pub decomposition: Vec<DecompositionEntry>,
}
