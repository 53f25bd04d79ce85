//! Small named models used in examples, tests and the CLI fixtures.

use crate::cospan::DecoratedCospan;
use crate::dynam::OpenRatedNet;
use crate::finset::{FinFunction, FinSetOb};
use crate::multiset::Multiset;
use crate::scalar::Scalar;
use crate::system::{Graph, PetriNet, RatedPetriNet, System, Transition};

/// Names for apex elements and foot elements, for presentation only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub apex: Vec<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Names {
    pub fn new(apex: &[&str], left: &[&str], right: &[&str]) -> Self {
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        Names { apex: own(apex), left: own(left), right: own(right) }
    }
}

fn leg(table: &[usize], cod: usize) -> FinFunction {
    FinFunction::new(table.to_vec(), cod).expect("fixture legs are in range")
}

fn transition(places: usize, src: &[(usize, u32)], tgt: &[(usize, u32)]) -> Transition {
    let over = FinSetOb::new(places);
    Transition {
        src: Multiset::from_pairs(over, src.iter().copied()).expect("fixture places are in range"),
        tgt: Multiset::from_pairs(over, tgt.iter().copied()).expect("fixture places are in range"),
    }
}

fn rated<T: Scalar>(places: usize, ts: Vec<Transition>, rates: &[T]) -> RatedPetriNet<T> {
    PetriNet::from_parts(FinSetOb::new(places), ts)
        .and_then(|n| n.with_rates(rates))
        .expect("fixture nets are valid")
}

/// The diamond-shaped open graph on nodes `n1..n4` with five edges, input at
/// `n1` and output at `n4`.
pub fn intro_graph() -> DecoratedCospan<Graph> {
    let g = Graph::from_arrows(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)]).expect("fixture graph");
    DecoratedCospan::new(leg(&[0], 4), leg(&[3], 4), g).expect("legs land in the nodes")
}

pub fn intro_graph_names() -> Names {
    Names::new(&["n1", "n2", "n3", "n4"], &["1"], &["2"])
}

/// Places `S, I, R`; infection `S + I -> 2I` at `r1` and recovery `I -> R` at
/// `r2`; inputs `i1, i2 -> S`, `i3 -> I`, output `o1 <- R`.
pub fn sir<T: Scalar>(r1: T, r2: T) -> OpenRatedNet<T> {
    let net = rated(
        3,
        vec![transition(3, &[(0, 1), (1, 1)], &[(1, 2)]), transition(3, &[(1, 1)], &[(2, 1)])],
        &[r1, r2],
    );
    DecoratedCospan::new(leg(&[0, 0, 1], 3), leg(&[2], 3), net).expect("legs land in the places")
}

pub fn sir_names() -> Names {
    Names::new(&["S", "I", "R"], &["i1", "i2", "i3"], &["o1"])
}

/// The infection half of [`sir`], with `I` exposed on the right.
pub fn sir_left<T: Scalar>(r1: T) -> OpenRatedNet<T> {
    let net = rated(2, vec![transition(2, &[(0, 1), (1, 1)], &[(1, 2)])], &[r1]);
    DecoratedCospan::new(leg(&[0, 0, 1], 2), leg(&[1], 2), net).expect("legs land in the places")
}

/// The recovery half of [`sir`], with `I` exposed on the left.
pub fn sir_right<T: Scalar>(r2: T) -> OpenRatedNet<T> {
    let net = rated(2, vec![transition(2, &[(0, 1)], &[(1, 1)])], &[r2]);
    DecoratedCospan::new(leg(&[0], 2), leg(&[1], 2), net).expect("legs land in the places")
}

/// `2H + O -> H2O` at rate `r`, over places `H, O, H2O`.
pub fn water<T: Scalar>(r: T) -> RatedPetriNet<T> {
    rated(3, vec![transition(3, &[(0, 2), (1, 1)], &[(2, 1)])], &[r])
}

/// One place `P` draining at rate `k`, exposed on both sides.
pub fn decay<T: Scalar>(k: T) -> OpenRatedNet<T> {
    let net = rated(1, vec![transition(1, &[(0, 1)], &[])], &[k]);
    DecoratedCospan::new(leg(&[0], 1), leg(&[0], 1), net).expect("legs land in the places")
}

pub fn decay_names() -> Names {
    Names::new(&["P"], &["in"], &["out"])
}
