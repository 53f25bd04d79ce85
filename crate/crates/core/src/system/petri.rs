use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSetOb};
use crate::multiset::Multiset;
use crate::scalar::{approx_eq_rel, Scalar};

use super::{Kind, System, SystemMorphism, Violation};

/// Relative tolerance for the rate-sum law on morphisms.
pub const RATE_SUM_TOLERANCE: f64 = 1e-9;

/// A transition with input and output multisets of places.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: Multiset,
    pub tgt: Multiset,
}

impl Transition {
    fn relabel(&self, f: &FinFunction) -> Transition {
        Transition { src: self.src.pushforward(f), tgt: self.tgt.pushforward(f) }
    }

    fn incidences(&self) -> Vec<(usize, u8, u32)> {
        self.src
            .support()
            .map(|(p, k)| (p, 0, k))
            .chain(self.tgt.support().map(|(p, k)| (p, 1, k)))
            .collect()
    }

    fn check(&self, places: FinSetOb, t: usize) -> Result<()> {
        if self.src.over() != places || self.tgt.over() != places {
            return Err(Error::InvalidSystem(format!(
                "transition {t} is not over the {} places of its net",
                places.size
            )));
        }
        Ok(())
    }
}

/// A Petri net `s, t: T -> ℕ[S]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PetriNet {
    places: FinSetOb,
    transitions: Vec<Transition>,
}

impl PetriNet {
    pub fn places(&self) -> FinSetOb {
        self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn with_rates<T: Scalar>(&self, rates: &[T]) -> Result<RatedPetriNet<T>> {
        if rates.len() != self.transitions.len() {
            return Err(Error::InvalidSystem(format!(
                "{} rates for {} transitions",
                rates.len(),
                self.transitions.len()
            )));
        }
        let ts = self
            .transitions
            .iter()
            .zip(rates)
            .map(|(t, &rate)| RatedTransition { transition: t.clone(), rate })
            .collect();
        RatedPetriNet::from_parts(self.places, ts)
    }
}

impl System for PetriNet {
    type Edge = Transition;

    const KIND: Kind = Kind::Petri;

    fn vertices(&self) -> FinSetOb {
        self.places
    }

    fn edge_list(&self) -> &[Transition] {
        &self.transitions
    }

    fn from_parts(places: FinSetOb, transitions: Vec<Transition>) -> Result<Self> {
        for (t, tr) in transitions.iter().enumerate() {
            tr.check(places, t)?;
        }
        Ok(PetriNet { places, transitions })
    }

    fn relabel_edge(edge: &Transition, f: &FinFunction) -> Transition {
        edge.relabel(f)
    }

    fn incidences(edge: &Transition) -> Vec<(usize, u8, u32)> {
        edge.incidences()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatedTransition<T> {
    pub transition: Transition,
    pub rate: T,
}

/// A Petri net with a nonnegative rate constant on every transition.
///
/// A morphism `(f, g)` must send each transition's rate into a sum: the rate
/// of `τ'` is the total rate of the transitions `g` sends to it.
#[derive(Clone, Debug, PartialEq)]
pub struct RatedPetriNet<T = f64> {
    places: FinSetOb,
    transitions: Vec<RatedTransition<T>>,
}

impl<T: Scalar> RatedPetriNet<T> {
    pub fn places(&self) -> FinSetOb {
        self.places
    }

    pub fn transitions(&self) -> &[RatedTransition<T>] {
        &self.transitions
    }

    pub fn rates(&self) -> impl Iterator<Item = T> + '_ {
        self.transitions.iter().map(|t| t.rate)
    }

    pub fn total_rate(&self) -> T {
        self.rates().fold(T::zero(), |a, r| a + r)
    }

    pub fn net(&self) -> PetriNet {
        PetriNet {
            places: self.places,
            transitions: self.transitions.iter().map(|t| t.transition.clone()).collect(),
        }
    }

    /// Pushes the net forward along a place map and a transition map, summing
    /// the rates of merged transitions. Fails if merged transitions disagree.
    pub fn pushforward(&self, m: &SystemMorphism) -> Result<RatedPetriNet<T>> {
        if m.vertex_map.dom() != self.places || m.edge_map.dom() != self.edges() {
            return Err(Error::MorphismShape(format!(
                "cannot push a net on {} places and {} transitions along {} / {}",
                self.places.size,
                self.transitions.len(),
                m.vertex_map,
                m.edge_map
            )));
        }
        let mut out: Vec<Option<RatedTransition<T>>> = vec![None; m.edge_map.cod().size];
        for (t, tr) in self.transitions.iter().enumerate() {
            let moved = tr.transition.relabel(&m.vertex_map);
            let slot = &mut out[m.edge_map.apply(t)];
            match slot {
                None => *slot = Some(RatedTransition { transition: moved, rate: tr.rate }),
                Some(acc) if acc.transition == moved => acc.rate += tr.rate,
                Some(_) => {
                    return Err(Error::InvalidSystem(format!(
                        "transition {t} is merged with a transition of different shape"
                    )))
                }
            }
        }
        let transitions = out
            .into_iter()
            .enumerate()
            .map(|(t, tr)| {
                tr.ok_or_else(|| {
                    Error::InvalidSystem(format!("transition {t} of the image has no preimage"))
                })
            })
            .collect::<Result<_>>()?;
        RatedPetriNet::from_parts(m.vertex_map.cod(), transitions)
    }
}

impl<T: Scalar> System for RatedPetriNet<T> {
    type Edge = RatedTransition<T>;

    const KIND: Kind = Kind::PetriRates;

    fn vertices(&self) -> FinSetOb {
        self.places
    }

    fn edge_list(&self) -> &[RatedTransition<T>] {
        &self.transitions
    }

    fn from_parts(places: FinSetOb, transitions: Vec<RatedTransition<T>>) -> Result<Self> {
        for (t, tr) in transitions.iter().enumerate() {
            tr.transition.check(places, t)?;
            if !(tr.rate.is_finite() && tr.rate >= T::zero()) {
                return Err(Error::InvalidSystem(format!(
                    "transition {t} has rate {}, rates must be finite and nonnegative",
                    tr.rate
                )));
            }
        }
        Ok(RatedPetriNet { places, transitions })
    }

    fn relabel_edge(edge: &RatedTransition<T>, f: &FinFunction) -> RatedTransition<T> {
        RatedTransition { transition: edge.transition.relabel(f), rate: edge.rate }
    }

    fn edge_lands_on(relabeled: &RatedTransition<T>, target: &RatedTransition<T>) -> bool {
        relabeled.transition == target.transition
    }

    fn incidences(edge: &RatedTransition<T>) -> Vec<(usize, u8, u32)> {
        edge.transition.incidences()
    }

    fn extra_morphism_laws(m: &SystemMorphism, src: &Self, tgt: &Self, out: &mut Vec<Violation>) {
        let mut sums = vec![T::zero(); tgt.transitions.len()];
        for (t, tr) in src.transitions.iter().enumerate() {
            sums[m.edge_map.apply(t)] += tr.rate;
        }
        let tol = T::from_f64_lossy(RATE_SUM_TOLERANCE);
        for (t, (sum, tr)) in sums.into_iter().zip(&tgt.transitions).enumerate() {
            if !approx_eq_rel(sum, tr.rate, tol) {
                out.push(Violation::new(format!("transition {t}"), "rate sum mismatch"));
            }
        }
    }

    fn allows_edge_gluing() -> bool {
        false
    }
}
