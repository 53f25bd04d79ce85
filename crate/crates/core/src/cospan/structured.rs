use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSetOb, Pushout};
use crate::system::{self, System, SystemMorphism};

use super::Cospan;

/// A cospan `x <- apex -> y` in a category of systems, with both legs
/// system morphisms.
///
/// It is *L-structured* when both feet are discrete, i.e. of the form
/// `L(a)`. Legs are checked as morphisms of the underlying structure; for
/// rated nets that is the underlying Petri net. Composition is a pushout of systems along the shared foot, which
/// also works for non-discrete feet whenever the system kind can glue edges.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredCospan<S> {
    left_foot: S,
    right_foot: S,
    apex: S,
    left_leg: SystemMorphism,
    right_leg: SystemMorphism,
}

impl<S: System> StructuredCospan<S> {
    pub fn new(left_foot: S, left_leg: SystemMorphism, apex: S, right_leg: SystemMorphism, right_foot: S) -> Result<Self> {
        for (name, leg, foot) in [("left", &left_leg, &left_foot), ("right", &right_leg, &right_foot)] {
            let violations = system::structural_violations(leg, foot, &apex)?;
            if let Some(v) = violations.first() {
                return Err(Error::InvalidCospan(format!("{name} leg is not a morphism: {v}")));
            }
        }
        Ok(StructuredCospan { left_foot, right_foot, apex, left_leg, right_leg })
    }

    /// `L(a) -> x <- L(b)` from the underlying vertex maps of the legs.
    pub fn from_vertex_legs(left: FinFunction, apex: S, right: FinFunction) -> Result<Self> {
        let edges = apex.edges();
        let (left_foot, right_foot) = (system::discrete(left.dom()), system::discrete(right.dom()));
        StructuredCospan::new(
            left_foot,
            SystemMorphism::from_discrete(left, edges),
            apex,
            SystemMorphism::from_discrete(right, edges),
            right_foot,
        )
    }

    pub fn left_foot_system(&self) -> &S {
        &self.left_foot
    }

    pub fn right_foot_system(&self) -> &S {
        &self.right_foot
    }

    pub fn system(&self) -> &S {
        &self.apex
    }

    pub fn left_morphism(&self) -> &SystemMorphism {
        &self.left_leg
    }

    pub fn right_morphism(&self) -> &SystemMorphism {
        &self.right_leg
    }

    pub fn is_l_structured(&self) -> bool {
        self.left_foot.is_discrete() && self.right_foot.is_discrete()
    }
}

impl<S: System> Cospan for StructuredCospan<S> {
    type Deco = S;

    fn left_foot(&self) -> FinSetOb {
        self.left_foot.vertices()
    }

    fn right_foot(&self) -> FinSetOb {
        self.right_foot.vertices()
    }

    fn left_leg(&self) -> &FinFunction {
        &self.left_leg.vertex_map
    }

    fn right_leg(&self) -> &FinFunction {
        &self.right_leg.vertex_map
    }

    fn decoration(&self) -> &S {
        &self.apex
    }

    fn trivial(left: FinFunction, right: FinFunction) -> Result<Self> {
        let apex = system::discrete(left.cod());
        StructuredCospan::from_vertex_legs(left, apex, right)
    }

    fn compose_with_pushout(&self, next: &Self) -> Result<(Self, Pushout)> {
        if self.right_foot != next.left_foot {
            return Err(Error::Composability {
                right: self.right_foot().size,
                left: next.left_foot().size,
            });
        }
        let glued = system::pushout(&self.right_foot, &self.right_leg, &self.apex, &next.left_leg, &next.apex)?;
        let composite = StructuredCospan {
            left_foot: self.left_foot.clone(),
            right_foot: next.right_foot.clone(),
            left_leg: glued.left.after(&self.left_leg)?,
            right_leg: glued.right.after(&next.right_leg)?,
            apex: glued.apex,
        };
        // the vertex part of a system pushout is the pushout of vertex maps
        let p = finset::pushout(&self.right_leg.vertex_map, &next.left_leg.vertex_map)?;
        debug_assert_eq!(p.left, glued.left.vertex_map);
        Ok((composite, p))
    }

    fn tensor(&self, other: &Self) -> Result<Self> {
        let feet_l = system::coproduct(&self.left_foot, &other.left_foot);
        let feet_r = system::coproduct(&self.right_foot, &other.right_foot);
        let apex = system::coproduct(&self.apex, &other.apex);
        Ok(StructuredCospan {
            left_foot: feet_l.apex,
            right_foot: feet_r.apex,
            apex: apex.apex,
            left_leg: self.left_leg.sum(&other.left_leg),
            right_leg: self.right_leg.sum(&other.right_leg),
        })
    }

    fn reverse(&self) -> Self {
        StructuredCospan {
            left_foot: self.right_foot.clone(),
            right_foot: self.left_foot.clone(),
            apex: self.apex.clone(),
            left_leg: self.right_leg.clone(),
            right_leg: self.left_leg.clone(),
        }
    }
}
