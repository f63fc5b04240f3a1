//! Directed graphs with named nodes, and their lowering to matrices.
//!
//! The ingestion format is TSV: one `from<TAB>to<TAB>weight` edge per
//! line, with blank lines and `#` comments skipped. Nodes are indexed
//! by first appearance, which keeps every downstream output
//! reproducible.

use std::collections::HashMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::semiring::SemiringDescriptor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Named nodes plus weighted directed edges.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a node name, assigning indices by first appearance.
    pub fn add_node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, from: &str, to: &str, weight: f64) {
        let from = self.add_node(from);
        let to = self.add_node(to);
        self.edges.push(Edge { from, to, weight });
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Parses the TSV edge-list format. Duplicate edges are retained;
    /// they combine by `⊕` during lowering.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.trim_end_matches(['\r', '\n']).split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "expected 'from<TAB>to<TAB>weight', got {} field(s)",
                        fields.len()
                    ),
                });
            }
            let from = fields[0].trim();
            let to = fields[1].trim();
            if from.is_empty() || to.is_empty() {
                return Err(Error::Parse { line: line_no, message: "empty node name".into() });
            }
            let weight: f64 = fields[2].trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight '{}'", fields[2].trim()),
            })?;
            g.add_edge(from, to, weight);
        }
        Ok(g)
    }

    /// Lowers to an adjacency matrix over `s`: absent edges become `0̄`,
    /// parallel edges combine by `⊕`, self-loops are kept.
    pub fn to_matrix<T: Scalar>(&self, s: &SemiringDescriptor<T>) -> Result<Matrix<T>> {
        self.lower(s, |weight| {
            s.embed_real(T::from_f64(weight).ok_or_else(|| {
                Error::Domain(format!("weight {weight} is not representable"))
            })?)
        })
    }

    /// Lowers to a reachability matrix: every edge becomes `1̄`,
    /// regardless of weight.
    pub fn to_adjacency<T: Scalar>(&self, s: &SemiringDescriptor<T>) -> Result<Matrix<T>> {
        self.lower(s, |_| Ok(s.one()))
    }

    fn lower<T: Scalar>(
        &self,
        s: &SemiringDescriptor<T>,
        embed: impl Fn(f64) -> Result<Element<T>>,
    ) -> Result<Matrix<T>> {
        let n = self.node_count();
        if n == 0 {
            return Err(Error::Domain("cannot lower an empty graph".into()));
        }
        let mut m = Matrix::zeros(*s, n, n);
        for e in &self.edges {
            let w = embed(e.weight)?;
            let combined = s.add(m.get(e.from, e.to), w)?;
            m.set(e.from, e.to, combined)?;
        }
        Ok(m)
    }

    /// Unit column vector: `1̄` at `node`, `0̄` elsewhere.
    pub fn unit_vector<T: Scalar>(
        &self,
        s: &SemiringDescriptor<T>,
        node: usize,
    ) -> Result<Matrix<T>> {
        let n = self.node_count();
        let mut v = Matrix::zeros(*s, n, 1);
        v.set(node, 0, s.one())?;
        Ok(v)
    }
}
