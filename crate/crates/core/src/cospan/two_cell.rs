use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::finset::{self, FinFunction};
use crate::system::Violation;

use super::Cospan;

/// A 2-morphism between cospans: vertical maps on the two feet, a map of
/// apexes `h`, and a fiber morphism `τ: F(h)(s) -> s'`.
///
/// For structured cospans `(h, τ)` is exactly the apex system morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoMorphism<M> {
    pub left: FinFunction,
    pub right: FinFunction,
    pub apex: FinFunction,
    pub fiber: M,
}

type FiberOf<C> = <<C as Cospan>::Deco as Decoration>::FiberMorphism;

impl<M: Clone + PartialEq> TwoMorphism<M> {
    /// The identity 2-morphism on a cospan.
    pub fn identity<C>(cell: &C) -> TwoMorphism<M>
    where
        C: Cospan,
        C::Deco: Decoration<FiberMorphism = M>,
    {
        TwoMorphism {
            left: FinFunction::identity(cell.left_foot()),
            right: FinFunction::identity(cell.right_foot()),
            apex: FinFunction::identity(cell.apex()),
            fiber: cell.decoration().fiber_identity(),
        }
    }

    /// `U_f: U_a ⇒ U_b`, the horizontal identity on a vertical map.
    pub fn unit_on<D>(f: &FinFunction) -> TwoMorphism<M>
    where
        D: Decoration<FiberMorphism = M>,
    {
        TwoMorphism {
            left: f.clone(),
            right: f.clone(),
            apex: f.clone(),
            fiber: D::trivial(f.cod()).fiber_identity(),
        }
    }

    pub fn is_globular(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// Checks `self: src ⇒ tgt`: the two leg squares commute and `τ` is a
    /// fiber morphism `F(h)(s) -> s'`.
    pub fn validate<C>(&self, src: &C, tgt: &C) -> Result<Vec<Violation>>
    where
        C: Cospan,
        C::Deco: Decoration<FiberMorphism = M>,
    {
        let shapes = [
            ("left", &self.left, src.left_foot(), tgt.left_foot()),
            ("right", &self.right, src.right_foot(), tgt.right_foot()),
            ("apex", &self.apex, src.apex(), tgt.apex()),
        ];
        for (name, f, dom, cod) in shapes {
            if f.dom() != dom || f.cod() != cod {
                return Err(Error::Boundary(format!(
                    "{name} map is {} -> {}, expected {dom} -> {cod}",
                    f.dom(),
                    f.cod()
                )));
            }
        }
        let mut out = Vec::new();
        let squares = [
            ("left", src.left_leg(), tgt.left_leg(), &self.left),
            ("right", src.right_leg(), tgt.right_leg(), &self.right),
        ];
        for (name, leg, leg2, vertical) in squares {
            for x in leg.dom().elements() {
                if self.apex.apply(leg.apply(x)) != leg2.apply(vertical.apply(x)) {
                    out.push(Violation::new(format!("{name} foot element {x}"), "leg square does not commute"));
                }
            }
        }
        let moved = src.decoration().reindex(&self.apex)?;
        for v in C::Deco::fiber_violations(&self.fiber, &moved, tgt.decoration())? {
            out.push(Violation::new(format!("decoration {}", v.at), v.message));
        }
        Ok(out)
    }
}

impl<M: Clone + PartialEq> TwoMorphism<M> {
    /// `next · self`: stack `next` below `self`.
    pub fn compose_v<D>(&self, next: &TwoMorphism<M>) -> Result<TwoMorphism<M>>
    where
        D: Decoration<FiberMorphism = M>,
    {
        let boundary = |e: Error| Error::Boundary(format!("vertical composite: {e}"));
        Ok(TwoMorphism {
            left: finset::compose(&next.left, &self.left).map_err(boundary)?,
            right: finset::compose(&next.right, &self.right).map_err(boundary)?,
            apex: finset::compose(&next.apex, &self.apex).map_err(boundary)?,
            fiber: D::fiber_compose(&self.fiber, &next.fiber).map_err(boundary)?,
        })
    }
}

/// `self ⊙ other` for 2-morphisms `self: m ⇒ m2` and `other: n ⇒ n2`: the apex
/// map is induced on pushouts and the fiber parts are summed.
pub fn compose_h<C: Cospan>(
    first: &TwoMorphism<FiberOf<C>>,
    second: &TwoMorphism<FiberOf<C>>,
    src: (&C, &C),
    tgt: (&C, &C),
) -> Result<TwoMorphism<FiberOf<C>>> {
    if first.right != second.left {
        return Err(Error::Boundary(format!(
            "shared vertical maps differ: {} vs {}",
            first.right, second.left
        )));
    }
    let (_, p) = src.0.compose_with_pushout(src.1)?;
    let (_, q) = tgt.0.compose_with_pushout(tgt.1)?;
    let u = finset::compose(&q.left, &first.apex)?;
    let v = finset::compose(&q.right, &second.apex)?;
    let apex = p.mediate(&u, &v).map_err(|e| Error::Boundary(format!("apex maps do not agree on the glued foot: {e}")))?;
    Ok(TwoMorphism {
        left: first.left.clone(),
        right: second.right.clone(),
        apex,
        fiber: C::Deco::fiber_sum(&first.fiber, &second.fiber),
    })
}

/// `λ: U_a ⊙ M ⇒ M`.
pub fn left_unitor<C: Cospan>(m: &C) -> Result<TwoMorphism<FiberOf<C>>> {
    let unit = C::identity(m.left_foot());
    let (composite, p) = unit.compose_with_pushout(m)?;
    let apex = p.mediate(m.left_leg(), &FinFunction::identity(m.apex()))?;
    unitor_from(&composite, m, apex)
}

/// `ρ: M ⊙ U_b ⇒ M`.
pub fn right_unitor<C: Cospan>(m: &C) -> Result<TwoMorphism<FiberOf<C>>> {
    let unit = C::identity(m.right_foot());
    let (composite, p) = m.compose_with_pushout(&unit)?;
    let apex = p.mediate(&FinFunction::identity(m.apex()), m.right_leg())?;
    unitor_from(&composite, m, apex)
}

fn unitor_from<C: Cospan>(composite: &C, m: &C, apex: FinFunction) -> Result<TwoMorphism<FiberOf<C>>> {
    let fiber = composite
        .decoration()
        .reindex(&apex)?
        .fiber_iso(m.decoration())
        .ok_or_else(|| Error::InvalidCospan("unitor apex map does not carry the decoration".into()))?;
    Ok(TwoMorphism {
        left: FinFunction::identity(m.left_foot()),
        right: FinFunction::identity(m.right_foot()),
        apex,
        fiber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::DecoratedCospan;
    use crate::finset::FinSetOb;
    use crate::system::Graph;

    fn fun(table: &[usize], cod: usize) -> FinFunction {
        FinFunction::new(table.to_vec(), cod).unwrap()
    }

    fn edge() -> DecoratedCospan<Graph> {
        DecoratedCospan::new(fun(&[0], 2), fun(&[1], 2), Graph::from_arrows(2, &[(0, 1)]).unwrap()).unwrap()
    }

    #[test]
    fn identity_two_morphisms_compose_to_identity() {
        let m = edge();
        let id = TwoMorphism::identity(&m);
        assert!(id.validate(&m, &m).unwrap().is_empty());
        assert_eq!(id.compose_v::<Graph>(&id).unwrap(), id);
        let hh = compose_h(&id, &id, (&m, &m), (&m, &m)).unwrap();
        assert_eq!(hh, TwoMorphism::identity(&m.compose(&m).unwrap()));
    }

    #[test]
    fn unitors_are_valid_isomorphisms() {
        let m = edge();
        let lam = left_unitor(&m).unwrap();
        let rho = right_unitor(&m).unwrap();
        let um = DecoratedCospan::identity(m.left_foot()).compose(&m).unwrap();
        let mu = m.compose(&DecoratedCospan::identity(m.right_foot())).unwrap();
        assert!(lam.validate(&um, &m).unwrap().is_empty());
        assert!(rho.validate(&mu, &m).unwrap().is_empty());
        assert!(lam.apex.is_bijection() && rho.apex.is_bijection());
    }

    #[test]
    fn collapsing_two_morphism_validates() {
        // two parallel edges onto one edge between the same feet
        let two = DecoratedCospan::new(fun(&[0], 2), fun(&[1], 2), Graph::from_arrows(2, &[(0, 1), (0, 1)]).unwrap()).unwrap();
        let one = edge();
        let alpha = TwoMorphism {
            left: FinFunction::identity(1),
            right: FinFunction::identity(1),
            apex: FinFunction::identity(2),
            fiber: fun(&[0, 0], 1),
        };
        assert!(alpha.validate(&two, &one).unwrap().is_empty());
        let broken = TwoMorphism { apex: fun(&[1, 0], 2), ..alpha };
        assert!(!broken.validate(&two, &one).unwrap().is_empty());
    }

    #[test]
    fn boundary_mismatch_is_reported() {
        let m = edge();
        let id = TwoMorphism::identity(&m);
        let wide = TwoMorphism::identity(&DecoratedCospan::<Graph>::identity(FinSetOb::new(2)));
        assert!(matches!(id.compose_v::<Graph>(&wide), Err(Error::Boundary(_))));
        assert!(matches!(id.validate(&m, &DecoratedCospan::identity(FinSetOb::new(1))), Err(Error::Boundary(_))));
    }
}
