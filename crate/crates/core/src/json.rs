//! File formats: systems, fields, open models and simulation configs.
//!
//! Output is canonical JSON: object keys sorted, no whitespace, reals in
//! their shortest round-trip form, so equal models serialize to identical
//! bytes. Input rejects unknown fields. Malformed files raise
//! [`Error::Parse`]; well-formed files describing invalid mathematics raise
//! the domain error that the constructors report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cospan::{Cospan, DecoratedCospan, StructuredCospan};
use crate::decoration::Decoration;
use crate::dynam::{FlowSchedule, OpenDynam, PiecewiseConstant, PolyVectorField, Polynomial, Trajectory};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSetOb};
use crate::models::Names;
use crate::multiset::Multiset;
use crate::system::{
    self, Graph, GraphEdge, LabeledEdge, LabeledGraph, PetriNet, RatedPetriNet, RatedTransition, System,
    SystemMorphism, Transition,
};

pub const FORMAT_VERSION: &str = "1";

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(parse_err)
}

/// Compact JSON with sorted keys.
pub fn to_canonical_string(v: &Value) -> String {
    // serde_json's map is ordered by key unless `preserve_order` is enabled
    serde_json::to_string(v).expect("values always serialize")
}

/// A decoration with a JSON shape.
pub trait JsonDecoration: Decoration {
    /// The `kind` tag of model files.
    const TAG: &'static str;

    fn to_json(&self) -> Value;

    fn from_json(v: Value) -> Result<Self>;
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    nodes: usize,
    edges: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabeledGraph {
    nodes: usize,
    edges: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    labels: Vec<String>,
}

fn check_edge_count(edges: usize, lists: &[(&str, usize)]) -> Result<()> {
    for (name, len) in lists {
        if *len != edges {
            return Err(Error::InvalidSystem(format!("{edges} edges but {len} entries in `{name}`")));
        }
    }
    Ok(())
}

impl JsonDecoration for Graph {
    const TAG: &'static str = "graph";

    fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes().size,
            "edges": self.edges().size,
            "src": self.edge_list().iter().map(|e| e.src).collect::<Vec<_>>(),
            "tgt": self.edge_list().iter().map(|e| e.tgt).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: Value) -> Result<Self> {
        let raw: RawGraph = from_value(v)?;
        check_edge_count(raw.edges, &[("src", raw.src.len()), ("tgt", raw.tgt.len())])?;
        let edges = raw.src.into_iter().zip(raw.tgt).map(|(src, tgt)| GraphEdge { src, tgt }).collect();
        Graph::from_parts(FinSetOb::new(raw.nodes), edges)
    }
}

impl JsonDecoration for LabeledGraph {
    const TAG: &'static str = "lgraph";

    fn to_json(&self) -> Value {
        let es = self.edge_list();
        json!({
            "nodes": self.vertices().size,
            "edges": es.len(),
            "src": es.iter().map(|e| e.src).collect::<Vec<_>>(),
            "tgt": es.iter().map(|e| e.tgt).collect::<Vec<_>>(),
            "labels": es.iter().map(|e| e.label.clone()).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: Value) -> Result<Self> {
        let raw: RawLabeledGraph = from_value(v)?;
        check_edge_count(
            raw.edges,
            &[("src", raw.src.len()), ("tgt", raw.tgt.len()), ("labels", raw.labels.len())],
        )?;
        let edges = raw
            .src
            .into_iter()
            .zip(raw.tgt)
            .zip(raw.labels)
            .map(|((src, tgt), label)| LabeledEdge { src, tgt, label })
            .collect();
        LabeledGraph::from_parts(FinSetOb::new(raw.nodes), edges)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    src: BTreeMap<String, u32>,
    tgt: BTreeMap<String, u32>,
    rate: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPetri {
    places: usize,
    transitions: Vec<RawTransition>,
}

fn multiset_to_json(m: &Multiset) -> Value {
    Value::Object(m.support().map(|(p, k)| (p.to_string(), json!(k))).collect())
}

fn multiset_from_json(places: usize, raw: BTreeMap<String, u32>) -> Result<Multiset> {
    let pairs = raw
        .into_iter()
        .map(|(k, n)| k.parse::<usize>().map(|p| (p, n)).map_err(|_| parse_err(format!("place key `{k}` is not an index"))))
        .collect::<Result<Vec<_>>>()?;
    Multiset::from_pairs(FinSetOb::new(places), pairs)
}

fn transition_json(t: &Transition) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("src".into(), multiset_to_json(&t.src));
    m.insert("tgt".into(), multiset_to_json(&t.tgt));
    m
}

type ParsedNet = (FinSetOb, Vec<(Transition, Option<f64>)>);

fn parse_petri(v: Value) -> Result<ParsedNet> {
    let raw: RawPetri = from_value(v)?;
    let ts = raw
        .transitions
        .into_iter()
        .map(|t| {
            Ok((
                Transition { src: multiset_from_json(raw.places, t.src)?, tgt: multiset_from_json(raw.places, t.tgt)? },
                t.rate,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((FinSetOb::new(raw.places), ts))
}

impl JsonDecoration for PetriNet {
    const TAG: &'static str = "petri";

    fn to_json(&self) -> Value {
        let ts: Vec<Value> = self.transitions().iter().map(|t| Value::Object(transition_json(t))).collect();
        json!({ "places": self.places().size, "transitions": ts })
    }

    fn from_json(v: Value) -> Result<Self> {
        let (places, ts) = parse_petri(v)?;
        let ts = ts
            .into_iter()
            .enumerate()
            .map(|(i, (t, rate))| match rate {
                None => Ok(t),
                Some(_) => Err(parse_err(format!("transition {i} has a rate, but petri nets are unrated"))),
            })
            .collect::<Result<_>>()?;
        PetriNet::from_parts(places, ts)
    }
}

impl JsonDecoration for RatedPetriNet<f64> {
    const TAG: &'static str = "petri_rates";

    fn to_json(&self) -> Value {
        let ts: Vec<Value> = self
            .transitions()
            .iter()
            .map(|t| {
                let mut m = transition_json(&t.transition);
                m.insert("rate".into(), json!(t.rate));
                Value::Object(m)
            })
            .collect();
        json!({ "places": self.places().size, "transitions": ts })
    }

    fn from_json(v: Value) -> Result<Self> {
        let (places, ts) = parse_petri(v)?;
        let ts = ts
            .into_iter()
            .enumerate()
            .map(|(i, (transition, rate))| match rate {
                Some(rate) => Ok(RatedTransition { transition, rate }),
                None => Err(parse_err(format!("transition {i} has no rate"))),
            })
            .collect::<Result<_>>()?;
        RatedPetriNet::from_parts(places, ts)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coefficient: f64,
    exponents: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    places: usize,
    components: Vec<Vec<RawTerm>>,
}

impl JsonDecoration for PolyVectorField<f64> {
    const TAG: &'static str = "dynam";

    fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components()
            .iter()
            .map(|p| {
                Value::Array(
                    p.terms()
                        .iter()
                        .map(|(e, c)| json!({ "coefficient": c, "exponents": e }))
                        .collect(),
                )
            })
            .collect();
        json!({ "places": self.over().size, "components": components })
    }

    fn from_json(v: Value) -> Result<Self> {
        let raw: RawField = from_value(v)?;
        if raw.components.len() != raw.places {
            return Err(Error::Dimension { expected: raw.places, found: raw.components.len() });
        }
        let components = raw
            .components
            .into_iter()
            .map(|terms| Polynomial::from_terms(raw.places, terms.into_iter().map(|t| (t.exponents, t.coefficient))))
            .collect::<Result<_>>()?;
        PolyVectorField::new(components)
    }
}

/// Either representation of an open system over the same decorations.
#[derive(Clone, Debug, PartialEq)]
pub enum Cospans<S> {
    Decorated(DecoratedCospan<S>),
    Structured(StructuredCospan<S>),
}

impl<S> Cospans<S> {
    pub fn representation(&self) -> &'static str {
        match self {
            Cospans::Decorated(_) => "decorated",
            Cospans::Structured(_) => "structured",
        }
    }
}

/// The payload of a model file.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Graph(Cospans<Graph>),
    Lgraph(Cospans<LabeledGraph>),
    Petri(Cospans<PetriNet>),
    PetriRates(Cospans<RatedPetriNet<f64>>),
    Dynam(OpenDynam<f64>),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Graph(_) => <Graph as JsonDecoration>::TAG,
            Model::Lgraph(_) => <LabeledGraph as JsonDecoration>::TAG,
            Model::Petri(_) => <PetriNet as JsonDecoration>::TAG,
            Model::PetriRates(_) => <RatedPetriNet<f64> as JsonDecoration>::TAG,
            Model::Dynam(_) => <PolyVectorField<f64> as JsonDecoration>::TAG,
        }
    }

    pub fn representation(&self) -> &'static str {
        match self {
            Model::Graph(c) => c.representation(),
            Model::Lgraph(c) => c.representation(),
            Model::Petri(c) => c.representation(),
            Model::PetriRates(c) => c.representation(),
            Model::Dynam(_) => "decorated",
        }
    }

    /// `(left foot, apex, right foot)` sizes.
    pub fn shape(&self) -> (usize, usize, usize) {
        fn of<C: Cospan>(c: &C) -> (usize, usize, usize) {
            (c.left_foot().size, c.apex().size, c.right_foot().size)
        }
        fn either<S: System>(c: &Cospans<S>) -> (usize, usize, usize) {
            match c {
                Cospans::Decorated(d) => of(d),
                Cospans::Structured(s) => of(s),
            }
        }
        match self {
            Model::Graph(c) => either(c),
            Model::Lgraph(c) => either(c),
            Model::Petri(c) => either(c),
            Model::PetriRates(c) => either(c),
            Model::Dynam(d) => of(d),
        }
    }
}

/// A model with optional presentation names.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub model: Model,
    pub names: Names,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawModel {
    version: String,
    kind: String,
    representation: String,
    #[serde(default)]
    foot_left: Option<Value>,
    #[serde(default)]
    foot_right: Option<Value>,
    #[serde(default)]
    leg_left: Option<Value>,
    #[serde(default)]
    leg_right: Option<Value>,
    system: Value,
    #[serde(default)]
    names: Option<RawNames>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNames {
    #[serde(default)]
    apex: Vec<String>,
    #[serde(default)]
    left: Vec<String>,
    #[serde(default)]
    right: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLeg {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

/// A foot: a size (discrete) or a whole system.
enum Foot<S> {
    Discrete(usize),
    System(S),
}

fn parse_foot<S: JsonDecoration>(v: Option<Value>, side: &str) -> Result<Foot<S>> {
    match v {
        None => Ok(Foot::Discrete(0)),
        Some(Value::Number(n)) => n
            .as_u64()
            .map(|n| Foot::Discrete(n as usize))
            .ok_or_else(|| parse_err(format!("foot{side} must be a nonnegative integer"))),
        Some(v @ Value::Object(_)) => S::from_json(v).map(Foot::System),
        Some(_) => Err(parse_err(format!("foot{side} must be an integer or a system object"))),
    }
}

/// A leg: a vertex table alone, or vertex and edge tables.
enum Leg {
    Vertices(Vec<usize>),
    Full(RawLeg),
}

fn parse_leg(v: Option<Value>, side: &str) -> Result<Leg> {
    match v {
        None => Ok(Leg::Vertices(Vec::new())),
        Some(v @ Value::Array(_)) => from_value(v).map(Leg::Vertices),
        Some(v @ Value::Object(_)) => from_value(v).map(Leg::Full),
        Some(_) => Err(parse_err(format!("leg{side} must be an array or an object"))),
    }
}

fn vertex_leg(table: Vec<usize>, foot: usize, apex: FinSetOb, side: &str) -> Result<FinFunction> {
    if table.len() != foot {
        return Err(Error::InvalidCospan(format!(
            "leg{side} has {} entries for a foot of size {foot}",
            table.len()
        )));
    }
    FinFunction::new(table, apex)
}

fn parse_decorated<D: JsonDecoration>(raw: RawModel) -> Result<DecoratedCospan<D>> {
    let deco = D::from_json(raw.system)?;
    let apex = deco.carrier();
    let mut legs = Vec::new();
    for (side, foot, leg) in [("Left", raw.foot_left, raw.leg_left), ("Right", raw.foot_right, raw.leg_right)] {
        let n = match parse_foot::<D>(foot, side)? {
            Foot::Discrete(n) => n,
            Foot::System(_) => return Err(parse_err(format!("decorated foot{side} must be an integer"))),
        };
        let table = match parse_leg(leg, side)? {
            Leg::Vertices(t) => t,
            Leg::Full(_) => return Err(parse_err(format!("decorated leg{side} must be an array"))),
        };
        legs.push(vertex_leg(table, n, apex, side)?);
    }
    let right = legs.pop().expect("two legs");
    let left = legs.pop().expect("two legs");
    DecoratedCospan::new(left, right, deco)
}

fn parse_structured<S: JsonDecoration + System>(raw: RawModel) -> Result<StructuredCospan<S>> {
    let apex = S::from_json(raw.system)?;
    let mut sides = Vec::new();
    for (side, foot, leg) in [("Left", raw.foot_left, raw.leg_left), ("Right", raw.foot_right, raw.leg_right)] {
        let foot: S = match parse_foot::<S>(foot, side)? {
            Foot::Discrete(n) => system::discrete(n),
            Foot::System(s) => s,
        };
        let m = match parse_leg(leg, side)? {
            Leg::Vertices(t) if foot.is_discrete() => {
                SystemMorphism::from_discrete(vertex_leg(t, foot.vertices().size, apex.vertices(), side)?, apex.edges())
            }
            Leg::Vertices(_) => {
                return Err(parse_err(format!("leg{side} out of a foot with edges needs an `edges` table")))
            }
            Leg::Full(RawLeg { vertices, edges }) => SystemMorphism::new(
                vertex_leg(vertices, foot.vertices().size, apex.vertices(), side)?,
                vertex_leg(edges, foot.edges().size, apex.edges(), side)?,
            ),
        };
        sides.push((foot, m));
    }
    let (right_foot, right) = sides.pop().expect("two sides");
    let (left_foot, left) = sides.pop().expect("two sides");
    StructuredCospan::new(left_foot, left, apex, right, right_foot)
}

fn parse_cospans<S: JsonDecoration + System>(raw: RawModel) -> Result<Cospans<S>> {
    match raw.representation.as_str() {
        "decorated" => parse_decorated(raw).map(Cospans::Decorated),
        "structured" => parse_structured(raw).map(Cospans::Structured),
        other => Err(parse_err(format!("unknown representation `{other}`"))),
    }
}

fn check_names(names: &Names, shape: (usize, usize, usize)) -> Result<()> {
    for (what, list, n) in [("left", &names.left, shape.0), ("apex", &names.apex, shape.1), ("right", &names.right, shape.2)] {
        if !list.is_empty() && list.len() != n {
            return Err(Error::InvalidCospan(format!("{} {what} names for {n} elements", list.len())));
        }
    }
    Ok(())
}

impl ModelFile {
    pub fn new(model: Model) -> Self {
        ModelFile { model, names: Names::default() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(text).map_err(parse_err)?;
        if raw.version != FORMAT_VERSION {
            return Err(parse_err(format!("unsupported version `{}`, expected `{FORMAT_VERSION}`", raw.version)));
        }
        let names = raw
            .names
            .as_ref()
            .map(|n| Names { apex: n.apex.clone(), left: n.left.clone(), right: n.right.clone() })
            .unwrap_or_default();
        let model = match raw.kind.as_str() {
            "graph" => Model::Graph(parse_cospans(raw)?),
            "lgraph" => Model::Lgraph(parse_cospans(raw)?),
            "petri" => Model::Petri(parse_cospans(raw)?),
            "petri_rates" => Model::PetriRates(parse_cospans(raw)?),
            "dynam" => {
                if raw.representation != "decorated" {
                    return Err(parse_err("open dynamical systems are only stored decorated"));
                }
                Model::Dynam(parse_decorated(raw)?)
            }
            other => return Err(parse_err(format!("unknown kind `{other}`"))),
        };
        check_names(&names, model.shape())?;
        Ok(ModelFile { model, names })
    }

    pub fn to_value(&self) -> Value {
        let mut out = match &self.model {
            Model::Graph(c) => cospans_value(c),
            Model::Lgraph(c) => cospans_value(c),
            Model::Petri(c) => cospans_value(c),
            Model::PetriRates(c) => cospans_value(c),
            Model::Dynam(d) => decorated_value(d),
        };
        out.insert("version".into(), json!(FORMAT_VERSION));
        out.insert("kind".into(), json!(self.model.kind()));
        out.insert("representation".into(), json!(self.model.representation()));
        let n = &self.names;
        if !(n.apex.is_empty() && n.left.is_empty() && n.right.is_empty()) {
            let mut m = Map::new();
            for (k, list) in [("apex", &n.apex), ("left", &n.left), ("right", &n.right)] {
                if !list.is_empty() {
                    m.insert(k.into(), json!(list));
                }
            }
            out.insert("names".into(), Value::Object(m));
        }
        Value::Object(out)
    }

    pub fn to_canonical_string(&self) -> String {
        to_canonical_string(&self.to_value())
    }
}

fn decorated_value<D: JsonDecoration>(d: &DecoratedCospan<D>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("footLeft".into(), json!(d.left_foot().size));
    m.insert("footRight".into(), json!(d.right_foot().size));
    m.insert("legLeft".into(), json!(d.left_leg().table()));
    m.insert("legRight".into(), json!(d.right_leg().table()));
    m.insert("system".into(), d.decoration().to_json());
    m
}

fn structured_value<S: JsonDecoration + System>(s: &StructuredCospan<S>) -> Map<String, Value> {
    let mut m = Map::new();
    let sides = [
        ("Left", s.left_foot_system(), s.left_morphism()),
        ("Right", s.right_foot_system(), s.right_morphism()),
    ];
    for (side, foot, leg) in sides {
        if foot.is_discrete() {
            m.insert(format!("foot{side}"), json!(foot.vertices().size));
            m.insert(format!("leg{side}"), json!(leg.vertex_map.table()));
        } else {
            m.insert(format!("foot{side}"), foot.to_json());
            m.insert(
                format!("leg{side}"),
                json!({ "vertices": leg.vertex_map.table(), "edges": leg.edge_map.table() }),
            );
        }
    }
    m.insert("system".into(), s.system().to_json());
    m
}

fn cospans_value<S: JsonDecoration + System>(c: &Cospans<S>) -> Map<String, Value> {
    match c {
        Cospans::Decorated(d) => decorated_value(d),
        Cospans::Structured(s) => structured_value(s),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    #[serde(default)]
    pub inflows: BTreeMap<String, Vec<(f64, f64)>>,
    #[serde(default)]
    pub outflows: BTreeMap<String, Vec<(f64, f64)>>,
}

/// Simulation settings, with places and foot elements named by their
/// presentation names or by index.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SimConfig {
    pub t0: f64,
    pub t1: f64,
    pub dt: f64,
    #[serde(default)]
    pub initial_state: BTreeMap<String, f64>,
    #[serde(default)]
    pub schedule: ScheduleConfig,
}

fn resolve(names: &[String], size: usize, key: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == key)
        .or_else(|| key.parse::<usize>().ok().filter(|&i| i < size))
        .ok_or_else(|| Error::InvalidSimulation(format!("unknown {what} `{key}`")))
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    /// Initial state (unnamed places start at zero) and flow schedule.
    pub fn resolve(&self, sys: &OpenDynam<f64>, names: &Names) -> Result<(Vec<f64>, FlowSchedule<f64>)> {
        let n = sys.apex().size;
        let mut c0 = vec![0.0; n];
        for (k, &v) in &self.initial_state {
            c0[resolve(&names.apex, n, k, "place")?] = v;
        }
        let mut sched = FlowSchedule::zero(sys.left_foot().size, sys.right_foot().size);
        for (k, steps) in &self.schedule.inflows {
            let i = resolve(&names.left, sched.inflows.len(), k, "input")?;
            sched.inflows[i] = PiecewiseConstant::new(steps.clone())?;
        }
        for (k, steps) in &self.schedule.outflows {
            let o = resolve(&names.right, sched.outflows.len(), k, "output")?;
            sched.outflows[o] = PiecewiseConstant::new(steps.clone())?;
        }
        Ok((c0, sched))
    }
}

/// `t,<place>,...` then one row per sample, reals to 17 significant digits.
pub fn trajectory_csv(traj: &Trajectory<f64>, places: &[String]) -> String {
    let width = traj.states.first().map_or(places.len(), Vec::len);
    let mut out = String::from("t");
    for p in 0..width {
        out.push(',');
        match places.get(p) {
            Some(name) => out.push_str(name),
            None => out.push_str(&p.to_string()),
        }
    }
    out.push('\n');
    for (t, c) in traj.rows() {
        write!(out, "{t:.16e}").expect("writing to a string");
        for x in c {
            write!(out, ",{x:.16e}").expect("writing to a string");
        }
        out.push('\n');
    }
    out
}
