//! Decoration theories: a category of decorations `F(n)` over every finite
//! set, reindexing `F(f)`, the laxator `φ` and its unit `φ₀`.
//!
//! A type implementing [`Decoration`] is an object of some fiber `F(n)`, with
//! `n = carrier()`. Systems decorate their vertex sets; polynomial vector
//! fields decorate their coordinate sets.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSetOb};
use crate::system::{self, System, SystemMorphism, Violation};

pub trait Decoration: Clone + Debug + PartialEq + Send + Sync + Sized {
    /// Morphisms inside a single fiber.
    type FiberMorphism: Clone + Debug + PartialEq + Send + Sync;

    fn carrier(&self) -> FinSetOb;

    /// `F(f)`, defined when `f.dom() == self.carrier()`.
    fn reindex(&self, f: &FinFunction) -> Result<Self>;

    /// `φ_{m,n}: F(m) × F(n) -> F(m + n)`.
    fn laxator(&self, other: &Self) -> Self;

    /// `φ₀`: the decoration of the empty set.
    fn unit() -> Self;

    /// `I_a = F(!)(φ₀)`, the initial object of `F(a)`.
    fn trivial(a: FinSetOb) -> Self {
        Self::unit()
            .reindex(&FinFunction::initial(a))
            .expect("the empty map reindexes the unit")
    }

    fn fiber_identity(&self) -> Self::FiberMorphism;

    /// Violations of `tau: from -> to` being a morphism of the fiber.
    fn fiber_violations(tau: &Self::FiberMorphism, from: &Self, to: &Self) -> Result<Vec<Violation>>;

    /// `second ∘ first`. Reindexing acts trivially on fiber-morphism data for
    /// every theory in this crate, so no reindexing step is needed.
    fn fiber_compose(first: &Self::FiberMorphism, second: &Self::FiberMorphism) -> Result<Self::FiberMorphism>;

    /// `φ` on morphisms.
    fn fiber_sum(a: &Self::FiberMorphism, b: &Self::FiberMorphism) -> Self::FiberMorphism;

    /// An isomorphism `self ≅ other` within one fiber.
    fn fiber_iso(&self, other: &Self) -> Option<Self::FiberMorphism>;

    /// The unique morphism `I_a -> self`, if the trivial decoration is initial.
    #[allow(clippy::wrong_self_convention)]
    fn from_trivial(&self) -> Option<Self::FiberMorphism>;

    /// A bijection `h` of carriers honouring `pins`, with a fiber iso
    /// `F(h)(self) ≅ other`. The default tries bijections in lexicographic order.
    fn find_iso_pinned(
        &self,
        other: &Self,
        pins: &[(usize, usize)],
        budget: u64,
    ) -> Result<Option<(FinFunction, Self::FiberMorphism)>> {
        let mut fiber = None;
        let h = finset::find_iso(self.carrier(), other.carrier(), pins, budget, |partial| {
            if !partial.is_complete() {
                return true;
            }
            let table = self.carrier().elements().map(|x| partial.get(x).unwrap()).collect();
            let h = FinFunction::new(table, other.carrier()).expect("bijection in range");
            fiber = self.reindex(&h).ok().and_then(|moved| moved.fiber_iso(other));
            fiber.is_some()
        })?;
        Ok(h.map(|h| (h, fiber.expect("accepted witness has a fiber iso"))))
    }
}

impl<S: System> Decoration for S {
    type FiberMorphism = FinFunction;

    fn carrier(&self) -> FinSetOb {
        self.vertices()
    }

    fn reindex(&self, f: &FinFunction) -> Result<Self> {
        system::reindex(self, f)
    }

    fn laxator(&self, other: &Self) -> Self {
        system::coproduct(self, other).apex
    }

    fn unit() -> Self {
        system::discrete(0)
    }

    fn trivial(a: FinSetOb) -> Self {
        system::discrete(a)
    }

    fn fiber_identity(&self) -> FinFunction {
        FinFunction::identity(self.edges())
    }

    fn fiber_violations(tau: &FinFunction, from: &Self, to: &Self) -> Result<Vec<Violation>> {
        if from.vertices() != to.vertices() {
            return Err(Error::MorphismShape(format!(
                "fiber morphisms need a shared carrier, found {} and {}",
                from.vertices(),
                to.vertices()
            )));
        }
        let m = SystemMorphism::new(FinFunction::identity(from.vertices()), tau.clone());
        system::validate_morphism(&m, from, to)
    }

    fn fiber_compose(first: &FinFunction, second: &FinFunction) -> Result<FinFunction> {
        second.after(first)
    }

    fn fiber_sum(a: &FinFunction, b: &FinFunction) -> FinFunction {
        a.sum(b)
    }

    fn fiber_iso(&self, other: &Self) -> Option<FinFunction> {
        if self.vertices() != other.vertices() {
            return None;
        }
        system::match_edges(self, &FinFunction::identity(self.vertices()), other)
    }

    fn from_trivial(&self) -> Option<FinFunction> {
        let tau = FinFunction::initial(self.edges());
        let trivial = system::discrete::<S>(self.vertices());
        match Self::fiber_violations(&tau, &trivial, self) {
            Ok(v) if v.is_empty() => Some(tau),
            _ => None,
        }
    }

    fn find_iso_pinned(
        &self,
        other: &Self,
        pins: &[(usize, usize)],
        budget: u64,
    ) -> Result<Option<(FinFunction, FinFunction)>> {
        Ok(system::find_system_iso(self, other, pins, budget)?.map(|m| (m.vertex_map, m.edge_map)))
    }
}
