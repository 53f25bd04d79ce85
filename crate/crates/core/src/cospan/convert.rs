//! The isomorphism between decorated cospans over a system's vertex set and
//! L-structured cospans of systems.
//!
//! A system over `m` is the same thing as an object `(m, s)` of the total
//! category of its decoration theory, and `L(a) = (a, I_a)` is the discrete
//! system. Both directions keep every table unchanged, so round trips are
//! identities on the nose.

use crate::error::{Error, Result};
use crate::system::{System, SystemMorphism};

use super::{Cospan, DecoratedCospan, StructuredCospan};

/// `(a -i-> m <-o- b, s)` to `(a, I_a) -(i, !)-> (m, s) <-(o, !)- (b, I_b)`.
pub fn to_structured<S: System>(d: &DecoratedCospan<S>) -> StructuredCospan<S> {
    StructuredCospan::from_vertex_legs(d.left_leg().clone(), d.decoration().clone(), d.right_leg().clone())
        .expect("decorated legs land in the decoration's vertices")
}

/// The inverse of [`to_structured`]; feet must be discrete.
pub fn to_decorated<S: System>(s: &StructuredCospan<S>) -> Result<DecoratedCospan<S>> {
    for (name, foot) in [("left", s.left_foot_system()), ("right", s.right_foot_system())] {
        if !foot.is_discrete() {
            return Err(Error::NotInImageOfL(format!("{name} foot has {} edges", foot.edges().size)));
        }
    }
    debug_assert!([s.left_morphism(), s.right_morphism()]
        .iter()
        .all(|m: &&SystemMorphism| m.edge_map.dom().is_empty()));
    DecoratedCospan::new(s.left_leg().clone(), s.right_leg().clone(), s.system().clone())
}
