//! Graph file formats.
//!
//! Two interchangeable formats are supported:
//!
//! * **Edge list** (plain text): first non-comment line is the node
//!   count `N`, then one `u v` pair per line. Lines starting with `#`
//!   are ignored. Carries no leaders, weights, or labels.
//! * **Structured document** (JSON): field names are fixed as
//!   `num_nodes`, `edges`, and optionally `leaders`, `weights` (one
//!   value per edge, in edge order), `w_min`, `w_max`, and `labels`
//!   (one string per node). Round-trips losslessly.
//!
//! Format detection on read: content starting with `{` is parsed as the
//! structured document, anything else as an edge list.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use diffnet_core::construct::MConstruction;
use diffnet_core::graph::{EdgeWeights, Graph};
use diffnet_core::ssc::LeaderSet;

/// The structured graph document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub num_nodes: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            num_nodes: g.num_nodes(),
            edges: g.edges().collect(),
            leaders: None,
            weights: None,
            w_min: None,
            w_max: None,
            labels: None,
        }
    }

    pub fn from_construction(c: &MConstruction) -> Self {
        let mut doc = Self::from_graph(&c.graph);
        doc.leaders = Some(c.leaders.as_slice().to_vec());
        doc.labels = Some(c.labels.roles().iter().map(|r| r.label()).collect());
        doc
    }

    pub fn with_weights(mut self, w: &EdgeWeights) -> Self {
        self.weights = Some(
            self.edges
                .iter()
                .map(|&(u, v)| w.get(u, v).expect("weights cover edges"))
                .collect(),
        );
        self.w_min = Some(w.w_min());
        self.w_max = Some(w.w_max());
        self
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.num_nodes, &self.edges).context("invalid graph document")
    }

    /// Leaders declared in the document, validated against `num_nodes`.
    pub fn leader_set(&self) -> Result<Option<LeaderSet>> {
        match &self.leaders {
            None => Ok(None),
            Some(l) => Ok(Some(
                LeaderSet::new(l.clone(), self.num_nodes).context("invalid leaders")?,
            )),
        }
    }

    /// Edge weights declared in the document; `None` when absent.
    pub fn edge_weights(&self, g: &Graph) -> Result<Option<EdgeWeights>> {
        let Some(values) = &self.weights else {
            return Ok(None);
        };
        if values.len() != self.edges.len() {
            bail!(
                "weights length {} does not match edge count {}",
                values.len(),
                self.edges.len()
            );
        }
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (&(u, v), &w) in self.edges.iter().zip(values.iter()) {
            let key = if u <= v { (u, v) } else { (v, u) };
            if let Some(prev) = map.insert(key, w) {
                if prev != w {
                    bail!("conflicting weights for edge ({u}, {v})");
                }
            }
        }
        let w_min = self
            .w_min
            .unwrap_or_else(|| values.iter().copied().fold(f64::INFINITY, f64::min));
        let w_max = self
            .w_max
            .unwrap_or_else(|| values.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        let weights = EdgeWeights::from_fn(g, w_min, w_max, |u, v| map[&(u, v)])
            .context("invalid weights")?;
        Ok(Some(weights))
    }
}

/// Serialize a graph as the plain edge-list text format.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.num_nodes());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse the plain edge-list text format.
pub fn parse_edge_list(text: &str) -> Result<GraphDocument> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .context("empty edge list")?
        .parse()
        .context("first line must be the node count")?;
    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let u: usize = parts
            .next()
            .context("missing endpoint")?
            .parse()
            .with_context(|| format!("bad edge line: {line}"))?;
        let v: usize = parts
            .next()
            .with_context(|| format!("bad edge line: {line}"))?
            .parse()
            .with_context(|| format!("bad edge line: {line}"))?;
        if parts.next().is_some() {
            bail!("bad edge line: {line}");
        }
        edges.push((u, v));
    }
    Ok(GraphDocument {
        num_nodes: n,
        edges,
        leaders: None,
        weights: None,
        w_min: None,
        w_max: None,
        labels: None,
    })
}

/// Read a graph file in either format.
pub fn read_graph_file(path: &Path) -> Result<GraphDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_text(&text)
}

pub fn parse_graph_text(text: &str) -> Result<GraphDocument> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).context("invalid graph document")
    } else {
        parse_edge_list(text)
    }
}

/// Write a document as JSON (pretty-printed, trailing newline).
pub fn write_json(doc: &GraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}
