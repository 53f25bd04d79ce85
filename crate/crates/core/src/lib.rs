//! Open systems as structured and decorated cospans.
//!
//! Open graphs, open labeled graphs (circuits) and open Petri nets with rates
//! are cospans whose apex carries a system. They compose by pushout and
//! tensor by disjoint union. Open Petri nets with rates gray-box into open
//! polynomial dynamical systems through the law of mass action, which can
//! then be integrated numerically.
//!
//! * [`finset`]: skeletal finite sets with chosen coproducts and pushouts.
//! * [`system`]: graphs, labeled graphs, Petri nets, rated Petri nets.
//! * [`decoration`]: decoration theories over finite sets.
//! * [`cospan`]: the double-category operations, in both representations.
//! * [`dynam`]: polynomial vector fields, gray-boxing and simulation.
//! * [`json`]: the file formats.
//!
//! The dynamics are generic over the scalar type; the aliases at the crate
//! root fix it to `f64` or `f32`.

pub mod cospan;
pub mod decoration;
pub mod dynam;
pub mod error;
pub mod finset;
pub mod json;
pub mod models;
pub mod multiset;
pub mod scalar;
pub mod system;

pub use cospan::{Cospan, DecoratedCospan, StructuredCospan, TwoMorphism};
pub use decoration::Decoration;
pub use dynam::{FlowSchedule, OpenDynam, OpenRatedNet, PolyVectorField, Polynomial};
pub use error::{Error, Result};
pub use finset::{FinFunction, FinSetOb};
pub use multiset::Multiset;
pub use scalar::Scalar;
pub use system::{Graph, Kind, LabeledGraph, PetriNet, RatedPetriNet, System, SystemMorphism};

pub type Polynomial64 = Polynomial<f64>;
pub type Polynomial32 = Polynomial<f32>;
pub type PolyVectorField64 = PolyVectorField<f64>;
pub type PolyVectorField32 = PolyVectorField<f32>;
pub type RatedPetriNet64 = RatedPetriNet<f64>;
pub type RatedPetriNet32 = RatedPetriNet<f32>;
pub type OpenRatedNet64 = OpenRatedNet<f64>;
pub type OpenRatedNet32 = OpenRatedNet<f32>;
pub type OpenDynam64 = OpenDynam<f64>;
pub type OpenDynam32 = OpenDynam<f32>;
pub type FlowSchedule64 = FlowSchedule<f64>;
pub type FlowSchedule32 = FlowSchedule<f32>;
