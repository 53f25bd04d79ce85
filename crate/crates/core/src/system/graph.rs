use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSetOb};

use super::{Kind, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphEdge {
    pub src: usize,
    pub tgt: usize,
}

/// A directed multigraph `s, t: E -> N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    nodes: FinSetOb,
    edges: Vec<GraphEdge>,
}

impl Graph {
    pub fn from_arrows(nodes: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let edges = arrows.iter().map(|&(src, tgt)| GraphEdge { src, tgt }).collect();
        Graph::from_parts(FinSetOb::new(nodes), edges)
    }

    /// Builds a graph from its source and target functions.
    pub fn from_functions(src: &FinFunction, tgt: &FinFunction) -> Result<Self> {
        if src.dom() != tgt.dom() || src.cod() != tgt.cod() {
            return Err(Error::InvalidSystem(format!("source {src} and target {tgt} disagree")));
        }
        let edges = src
            .table()
            .iter()
            .zip(tgt.table())
            .map(|(&src, &tgt)| GraphEdge { src, tgt })
            .collect();
        Graph::from_parts(src.cod(), edges)
    }

    pub fn nodes(&self) -> FinSetOb {
        self.nodes
    }

    pub fn src(&self) -> FinFunction {
        FinFunction::new(self.edges.iter().map(|e| e.src).collect(), self.nodes).unwrap()
    }

    pub fn tgt(&self) -> FinFunction {
        FinFunction::new(self.edges.iter().map(|e| e.tgt).collect(), self.nodes).unwrap()
    }
}

fn check_endpoints(nodes: FinSetOb, e: usize, src: usize, tgt: usize) -> Result<()> {
    if src >= nodes.size || tgt >= nodes.size {
        return Err(Error::InvalidSystem(format!(
            "edge {e} runs {src} -> {tgt} but there are only {} nodes",
            nodes.size
        )));
    }
    Ok(())
}

impl System for Graph {
    type Edge = GraphEdge;

    const KIND: Kind = Kind::Graph;

    fn vertices(&self) -> FinSetOb {
        self.nodes
    }

    fn edge_list(&self) -> &[GraphEdge] {
        &self.edges
    }

    fn from_parts(nodes: FinSetOb, edges: Vec<GraphEdge>) -> Result<Self> {
        for (e, edge) in edges.iter().enumerate() {
            check_endpoints(nodes, e, edge.src, edge.tgt)?;
        }
        Ok(Graph { nodes, edges })
    }

    fn relabel_edge(edge: &GraphEdge, f: &FinFunction) -> GraphEdge {
        GraphEdge { src: f.apply(edge.src), tgt: f.apply(edge.tgt) }
    }

    fn incidences(edge: &GraphEdge) -> Vec<(usize, u8, u32)> {
        vec![(edge.src, 0, 1), (edge.tgt, 1, 1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledEdge {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A graph with a label on every edge. Labels are compared as strings;
/// circuits store component values as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    nodes: FinSetOb,
    edges: Vec<LabeledEdge>,
}

impl LabeledGraph {
    pub fn from_arrows(nodes: usize, arrows: &[(usize, usize, &str)]) -> Result<Self> {
        let edges = arrows
            .iter()
            .map(|&(src, tgt, label)| LabeledEdge { src, tgt, label: label.to_owned() })
            .collect();
        LabeledGraph::from_parts(FinSetOb::new(nodes), edges)
    }

    pub fn graph(&self) -> Graph {
        let edges = self.edges.iter().map(|e| GraphEdge { src: e.src, tgt: e.tgt }).collect();
        Graph { nodes: self.nodes, edges }
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.label.as_str())
    }
}

impl System for LabeledGraph {
    type Edge = LabeledEdge;

    const KIND: Kind = Kind::Lgraph;

    fn vertices(&self) -> FinSetOb {
        self.nodes
    }

    fn edge_list(&self) -> &[LabeledEdge] {
        &self.edges
    }

    fn from_parts(nodes: FinSetOb, edges: Vec<LabeledEdge>) -> Result<Self> {
        for (e, edge) in edges.iter().enumerate() {
            check_endpoints(nodes, e, edge.src, edge.tgt)?;
        }
        Ok(LabeledGraph { nodes, edges })
    }

    fn relabel_edge(edge: &LabeledEdge, f: &FinFunction) -> LabeledEdge {
        LabeledEdge { src: f.apply(edge.src), tgt: f.apply(edge.tgt), label: edge.label.clone() }
    }

    fn incidences(edge: &LabeledEdge) -> Vec<(usize, u8, u32)> {
        vec![(edge.src, 0, 1), (edge.tgt, 1, 1)]
    }
}
