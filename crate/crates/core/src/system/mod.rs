//! Concrete categories of systems: graphs, labeled graphs, Petri nets and
//! Petri nets with rates.
//!
//! Every system here has the same skeleton: a finite set of vertices (nodes or
//! places) and a list of edges (edges or transitions) whose data mentions
//! vertices. Morphisms, coproducts, pushouts and reindexing are written once
//! against the [`System`] trait; each kind only says how its edge data moves
//! along a vertex map.

mod graph;
mod petri;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSetOb};

pub use graph::{Graph, GraphEdge, LabeledEdge, LabeledGraph};
pub use petri::{PetriNet, RatedPetriNet, RatedTransition, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Graph,
    Lgraph,
    Petri,
    PetriRates,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Graph, Kind::Lgraph, Kind::Petri, Kind::PetriRates];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::Lgraph => "lgraph",
            Kind::Petri => "petri",
            Kind::PetriRates => "petri_rates",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown system kind `{s}`"))
    }
}

/// A failed law, with the coordinates where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub at: String,
    pub message: String,
}

impl Violation {
    pub fn new(at: impl Into<String>, message: impl Into<String>) -> Self {
        Violation { at: at.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.message, self.at)
    }
}

/// A morphism of systems: a vertex map and an edge map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemMorphism {
    pub vertex_map: FinFunction,
    pub edge_map: FinFunction,
}

impl SystemMorphism {
    pub fn new(vertex_map: FinFunction, edge_map: FinFunction) -> Self {
        SystemMorphism { vertex_map, edge_map }
    }

    pub fn identity<S: System>(sys: &S) -> Self {
        SystemMorphism {
            vertex_map: FinFunction::identity(sys.vertices()),
            edge_map: FinFunction::identity(sys.edges()),
        }
    }

    /// The leg `L(a) -> x` picked out by a vertex map; discrete sources have no edges.
    pub fn from_discrete(vertex_map: FinFunction, target_edges: FinSetOb) -> Self {
        SystemMorphism { vertex_map, edge_map: FinFunction::initial(target_edges) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SystemMorphism) -> Result<SystemMorphism> {
        Ok(SystemMorphism {
            vertex_map: finset::compose(&self.vertex_map, &first.vertex_map)?,
            edge_map: finset::compose(&self.edge_map, &first.edge_map)?,
        })
    }

    pub fn sum(&self, other: &SystemMorphism) -> SystemMorphism {
        SystemMorphism {
            vertex_map: self.vertex_map.sum(&other.vertex_map),
            edge_map: self.edge_map.sum(&other.edge_map),
        }
    }
}

/// A category of systems over finite sets of vertices.
///
/// `vertices` is the forgetful functor to finite sets; [`discrete`] is its
/// left adjoint, whose unit is the identity.
pub trait System: Clone + fmt::Debug + PartialEq + Send + Sync + Sized {
    type Edge: Clone + fmt::Debug + PartialEq + Send + Sync;

    const KIND: Kind;

    fn vertices(&self) -> FinSetOb;

    fn edge_list(&self) -> &[Self::Edge];

    /// Assembles a system, checking every edge only mentions `vertices`.
    fn from_parts(vertices: FinSetOb, edges: Vec<Self::Edge>) -> Result<Self>;

    /// Moves an edge along a vertex map.
    fn relabel_edge(edge: &Self::Edge, f: &FinFunction) -> Self::Edge;

    /// Whether a relabeled edge is carried onto `target` by a morphism.
    fn edge_lands_on(relabeled: &Self::Edge, target: &Self::Edge) -> bool {
        relabeled == target
    }

    /// `(vertex, role, multiplicity)` for every vertex an edge touches.
    fn incidences(edge: &Self::Edge) -> Vec<(usize, u8, u32)>;

    /// Checks beyond the per-edge squares (rate sums, for rated nets).
    fn extra_morphism_laws(_m: &SystemMorphism, _src: &Self, _tgt: &Self, _out: &mut Vec<Violation>) {}

    /// Whether pushouts may identify edges.
    fn allows_edge_gluing() -> bool {
        true
    }

    fn edges(&self) -> FinSetOb {
        FinSetOb::new(self.edge_list().len())
    }

    fn edge(&self, e: usize) -> &Self::Edge {
        &self.edge_list()[e]
    }

    fn is_discrete(&self) -> bool {
        self.edge_list().is_empty()
    }
}

/// `L(n)`: `n` vertices and no edges.
pub fn discrete<S: System>(n: impl Into<FinSetOb>) -> S {
    S::from_parts(n.into(), Vec::new()).expect("edgeless systems are always valid")
}

/// All violations of the morphism laws for `m: src -> tgt`.
pub fn validate_morphism<S: System>(m: &SystemMorphism, src: &S, tgt: &S) -> Result<Vec<Violation>> {
    let mut out = structural_violations(m, src, tgt)?;
    S::extra_morphism_laws(m, src, tgt, &mut out);
    Ok(out)
}

/// Violations of the per-edge squares only.
///
/// For rated nets this checks the underlying Petri net morphism and skips the
/// rate-sum law, which coprojections and legs out of discrete nets never
/// satisfy once a transition has a nonzero rate.
pub fn structural_violations<S: System>(m: &SystemMorphism, src: &S, tgt: &S) -> Result<Vec<Violation>> {
    check_shape(m, src, tgt)?;
    let mut out = Vec::new();
    for (e, edge) in src.edge_list().iter().enumerate() {
        let image = m.edge_map.apply(e);
        let moved = S::relabel_edge(edge, &m.vertex_map);
        if !S::edge_lands_on(&moved, tgt.edge(image)) {
            out.push(Violation::new(
                format!("edge {e} -> {image}"),
                "square does not commute",
            ));
        }
    }
    Ok(out)
}

pub fn is_morphism<S: System>(m: &SystemMorphism, src: &S, tgt: &S) -> bool {
    matches!(validate_morphism(m, src, tgt), Ok(v) if v.is_empty())
}

fn check_shape<S: System>(m: &SystemMorphism, src: &S, tgt: &S) -> Result<()> {
    let expect = |what: &str, f: &FinFunction, dom: FinSetOb, cod: FinSetOb| {
        if f.dom() != dom || f.cod() != cod {
            Err(Error::MorphismShape(format!(
                "{what} map is {} -> {}, expected {dom} -> {cod}",
                f.dom(),
                f.cod()
            )))
        } else {
            Ok(())
        }
    };
    expect("vertex", &m.vertex_map, src.vertices(), tgt.vertices())?;
    expect("edge", &m.edge_map, src.edges(), tgt.edges())
}

/// `F(f)`: the same edges with their vertices moved along `f`.
pub fn reindex<S: System>(sys: &S, f: &FinFunction) -> Result<S> {
    if f.dom() != sys.vertices() {
        return Err(Error::MorphismShape(format!(
            "cannot reindex a system on {} along {f}",
            sys.vertices()
        )));
    }
    let edges = sys.edge_list().iter().map(|e| S::relabel_edge(e, f)).collect();
    S::from_parts(f.cod(), edges)
}

/// A system with its two coprojections or pushout injections.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocone<S> {
    pub apex: S,
    pub left: SystemMorphism,
    pub right: SystemMorphism,
}

/// Disjoint union: vertices and edges of `x` first, then those of `y`.
pub fn coproduct<S: System>(x: &S, y: &S) -> Cocone<S> {
    let v = finset::coproduct(x.vertices(), y.vertices());
    let e = finset::coproduct(x.edges(), y.edges());
    let edges = x
        .edge_list()
        .iter()
        .map(|edge| S::relabel_edge(edge, &v.left))
        .chain(y.edge_list().iter().map(|edge| S::relabel_edge(edge, &v.right)))
        .collect();
    let apex = S::from_parts(v.ob, edges).expect("coproduct of valid systems is valid");
    Cocone {
        apex,
        left: SystemMorphism::new(v.left, e.left),
        right: SystemMorphism::new(v.right, e.right),
    }
}

/// Pushout of `left <-f- dom -g-> right`.
///
/// Vertices and edges are glued separately in finite sets; each glued edge
/// takes its data from its smallest representative.
pub fn pushout<S: System>(
    dom: &S,
    f: &SystemMorphism,
    left: &S,
    g: &SystemMorphism,
    right: &S,
) -> Result<Cocone<S>> {
    for (name, m, tgt) in [("left", f, left), ("right", g, right)] {
        let violations = structural_violations(m, dom, tgt)?;
        if let Some(v) = violations.first() {
            return Err(Error::MorphismShape(format!("{name} leg of the span is not a morphism: {v}")));
        }
    }
    if !S::allows_edge_gluing() && !dom.is_discrete() {
        return Err(Error::UnsupportedGluing(format!(
            "{} systems can only be glued along discrete systems, span domain has {} edges",
            S::KIND,
            dom.edges().size
        )));
    }
    let pv = finset::pushout(&f.vertex_map, &g.vertex_map)?;
    let pe = finset::pushout(&f.edge_map, &g.edge_map)?;

    let left_count = left.edges().size;
    let mut edges: Vec<Option<S::Edge>> = vec![None; pe.apex.size];
    for x in 0..pe.quotient.dom().size {
        let moved = if x < left_count {
            S::relabel_edge(left.edge(x), &pv.left)
        } else {
            S::relabel_edge(right.edge(x - left_count), &pv.right)
        };
        let class = pe.quotient.apply(x);
        match &edges[class] {
            None => edges[class] = Some(moved),
            Some(rep) if rep != &moved => {
                return Err(Error::NotACocone(format!("glued edge {class} has inconsistent data")));
            }
            Some(_) => {}
        }
    }
    let edges = edges.into_iter().map(|e| e.expect("quotient is surjective")).collect();
    let apex = S::from_parts(pv.apex, edges)?;
    Ok(Cocone {
        apex,
        left: SystemMorphism::new(pv.left, pe.left),
        right: SystemMorphism::new(pv.right, pe.right),
    })
}

/// Per-vertex incidence profile; isomorphisms preserve it.
pub(crate) fn vertex_profiles<S: System>(sys: &S) -> Vec<Vec<(u8, u32)>> {
    let mut profiles = vec![Vec::new(); sys.vertices().size];
    for edge in sys.edge_list() {
        for (v, role, k) in S::incidences(edge) {
            profiles[v].push((role, k));
        }
    }
    for p in &mut profiles {
        p.sort_unstable();
    }
    profiles
}

/// A bijection on edges carrying `F(h)(x)` onto `y`, if one exists.
///
/// Edges are matched greedily; since matching is by equality this finds a
/// bijection whenever the two edge multisets agree.
pub fn match_edges<S: System>(x: &S, h: &FinFunction, y: &S) -> Option<FinFunction> {
    if x.edges() != y.edges() {
        return None;
    }
    let mut used = vec![false; y.edges().size];
    let mut table = Vec::with_capacity(used.len());
    for edge in x.edge_list() {
        let moved = S::relabel_edge(edge, h);
        let j = (0..used.len()).find(|&j| !used[j] && y.edge(j) == &moved)?;
        used[j] = true;
        table.push(j);
    }
    FinFunction::new(table, y.edges()).ok()
}

/// Whether every edge with all its vertices assigned has a possible image.
pub(crate) fn partial_edges_plausible<S: System>(
    x: &S,
    y: &S,
    partial: &finset::PartialBijection,
) -> bool {
    x.edge_list().iter().all(|edge| {
        let inc = S::incidences(edge);
        if !inc.iter().all(|&(v, _, _)| partial.get(v).is_some()) {
            return true;
        }
        let table: Vec<usize> =
            (0..x.vertices().size).map(|v| partial.get(v).unwrap_or(0)).collect();
        let h = FinFunction::new(table, y.vertices()).expect("partial bijection in range");
        let moved = S::relabel_edge(edge, &h);
        y.edge_list().iter().any(|e| e == &moved)
    })
}

/// An isomorphism `x ≅ y`, optionally pinning some vertex pairs.
pub fn find_system_iso<S: System>(
    x: &S,
    y: &S,
    pins: &[(usize, usize)],
    budget: u64,
) -> Result<Option<SystemMorphism>> {
    if x.vertices() != y.vertices() || x.edges() != y.edges() {
        return Ok(None);
    }
    let px = vertex_profiles(x);
    let py = vertex_profiles(y);
    let witness = finset::find_iso(x.vertices(), y.vertices(), pins, budget, |partial| {
        let profiles_ok = (0..px.len()).all(|v| match partial.get(v) {
            Some(w) => px[v] == py[w],
            None => true,
        });
        profiles_ok && partial_edges_plausible(x, y, partial) && {
            !partial.is_complete() || {
                let table = (0..px.len()).map(|v| partial.get(v).unwrap()).collect();
                let h = FinFunction::new(table, y.vertices()).unwrap();
                match_edges(x, &h, y).is_some()
            }
        }
    })?;
    Ok(witness.map(|h| {
        let edges = match_edges(x, &h, y).expect("accepted witness has an edge matching");
        SystemMorphism::new(h, edges)
    }))
}
