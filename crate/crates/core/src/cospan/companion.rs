//! Companions and conjoints of vertical maps, and a checker for their two
//! defining equations.

use crate::decoration::Decoration;
use crate::error::Result;
use crate::finset::FinFunction;
use crate::system::Violation;

use super::two_cell::compose_h;
use super::{left_unitor, right_unitor, Cospan, TwoMorphism};

type Fiber<C> = <<C as Cospan>::Deco as Decoration>::FiberMorphism;

/// A horizontal cell packaging a vertical map `f: a -> b`, with its two
/// structure 2-morphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct Companion<C: Cospan> {
    pub function: FinFunction,
    pub cell: C,
    /// `cell ⇒ U_b`.
    pub to_unit: TwoMorphism<Fiber<C>>,
    /// `U_a ⇒ cell`.
    pub from_unit: TwoMorphism<Fiber<C>>,
}

/// `f̂ = (a -f-> b <-1- b, I_b)`.
pub fn companion<C: Cospan>(f: &FinFunction) -> Result<Companion<C>> {
    let (a, b) = (f.dom(), f.cod());
    let cell = C::trivial(f.clone(), FinFunction::identity(b))?;
    let ib = C::Deco::trivial(b).fiber_identity();
    Ok(Companion {
        function: f.clone(),
        to_unit: TwoMorphism {
            left: f.clone(),
            right: FinFunction::identity(b),
            apex: FinFunction::identity(b),
            fiber: ib.clone(),
        },
        from_unit: TwoMorphism {
            left: FinFunction::identity(a),
            right: f.clone(),
            apex: f.clone(),
            fiber: ib,
        },
        cell,
    })
}

/// `f̌ = (b -1-> b <-f- a, I_b)`, the companion with its legs swapped.
pub fn conjoint<C: Cospan>(f: &FinFunction) -> Result<Companion<C>> {
    let (a, b) = (f.dom(), f.cod());
    let cell = C::trivial(FinFunction::identity(b), f.clone())?;
    let ib = C::Deco::trivial(b).fiber_identity();
    Ok(Companion {
        function: f.clone(),
        to_unit: TwoMorphism {
            left: FinFunction::identity(b),
            right: f.clone(),
            apex: FinFunction::identity(b),
            fiber: ib.clone(),
        },
        from_unit: TwoMorphism {
            left: f.clone(),
            right: FinFunction::identity(a),
            apex: f.clone(),
            fiber: ib,
        },
        cell,
    })
}

/// Outcome of checking the companion (or conjoint) equations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompanionReport {
    pub structure_cells_valid: bool,
    /// The vertical composite of the two structure cells is `U_f`.
    pub vertical_equation: bool,
    /// The horizontal composite, followed by a unitor, is the other unitor.
    pub unitor_equation: bool,
    pub violations: Vec<Violation>,
}

impl CompanionReport {
    pub fn passed(&self) -> bool {
        self.structure_cells_valid && self.vertical_equation && self.unitor_equation
    }
}

fn unit_on<C: Cospan>(f: &FinFunction) -> TwoMorphism<Fiber<C>> {
    TwoMorphism::unit_on::<C::Deco>(f)
}

fn collect<C: Cospan>(
    report: &mut CompanionReport,
    name: &str,
    cell: &TwoMorphism<Fiber<C>>,
    src: &C,
    tgt: &C,
) -> Result<bool> {
    let vs = cell.validate(src, tgt)?;
    let ok = vs.is_empty();
    report
        .violations
        .extend(vs.into_iter().map(|v| Violation::new(format!("{name}: {}", v.at), v.message)));
    Ok(ok)
}

/// `then · across == expected`, where `across: src ⇒ mid` may have failed to exist.
fn unitor_equation<C: Cospan>(
    report: &mut CompanionReport,
    across: Result<TwoMorphism<Fiber<C>>>,
    src: &C,
    mid: &C,
    then: &TwoMorphism<Fiber<C>>,
    expected: &TwoMorphism<Fiber<C>>,
) -> Result<bool> {
    let across = match across {
        Ok(a) => a,
        Err(e) => {
            report.violations.push(Violation::new("horizontal composite", e.to_string()));
            return Ok(false);
        }
    };
    let across_ok = collect(report, "horizontal composite", &across, src, mid)?;
    let equal = across.compose_v::<C::Deco>(then).map(|lhs| &lhs == expected).unwrap_or(false);
    if !equal {
        report.violations.push(Violation::new("unitor equation", "composite with the unitor differs from the other unitor"));
    }
    Ok(across_ok && equal)
}

/// Checks `to_unit · from_unit = U_f` and `ρ · (from_unit ⊙ to_unit) = λ`.
pub fn check_companion<C: Cospan>(c: &Companion<C>) -> Result<CompanionReport> {
    let f = &c.function;
    let ua = C::identity(f.dom());
    let ub = C::identity(f.cod());
    let mut report = CompanionReport::default();

    let a_ok = collect(&mut report, "to_unit", &c.to_unit, &c.cell, &ub)?;
    let b_ok = collect(&mut report, "from_unit", &c.from_unit, &ua, &c.cell)?;
    report.structure_cells_valid = a_ok && b_ok;

    let vertical = c.from_unit.compose_v::<C::Deco>(&c.to_unit)?;
    report.vertical_equation = vertical == unit_on::<C>(f);
    if !report.vertical_equation {
        report.violations.push(Violation::new("vertical composite", "differs from U_f"));
    }

    // U_a ⊙ f̂ ⇒ f̂ ⊙ U_b ⇒ f̂ against U_a ⊙ f̂ ⇒ f̂
    let across = compose_h(&c.from_unit, &c.to_unit, (&ua, &c.cell), (&c.cell, &ub));
    let src = ua.compose(&c.cell)?;
    let mid = c.cell.compose(&ub)?;
    let rho = right_unitor(&c.cell)?;
    let lambda = left_unitor(&c.cell)?;
    report.unitor_equation = unitor_equation(&mut report, across, &src, &mid, &rho, &lambda)?;
    Ok(report)
}

/// The companion equations read in the horizontally reversed double category.
pub fn check_conjoint<C: Cospan>(c: &Companion<C>) -> Result<CompanionReport> {
    let f = &c.function;
    let ua = C::identity(f.dom());
    let ub = C::identity(f.cod());
    let mut report = CompanionReport::default();

    let a_ok = collect(&mut report, "to_unit", &c.to_unit, &c.cell, &ub)?;
    let b_ok = collect(&mut report, "from_unit", &c.from_unit, &ua, &c.cell)?;
    report.structure_cells_valid = a_ok && b_ok;

    let vertical = c.from_unit.compose_v::<C::Deco>(&c.to_unit)?;
    report.vertical_equation = vertical == unit_on::<C>(f);
    if !report.vertical_equation {
        report.violations.push(Violation::new("vertical composite", "differs from U_f"));
    }

    // f̌ ⊙ U_a ⇒ U_b ⊙ f̌ ⇒ f̌ against f̌ ⊙ U_a ⇒ f̌
    let across = compose_h(&c.to_unit, &c.from_unit, (&c.cell, &ua), (&ub, &c.cell));
    let src = c.cell.compose(&ua)?;
    let mid = ub.compose(&c.cell)?;
    let lambda = left_unitor(&c.cell)?;
    let rho = right_unitor(&c.cell)?;
    report.unitor_equation = unitor_equation(&mut report, across, &src, &mid, &lambda, &rho)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::{DecoratedCospan, StructuredCospan};
    use crate::finset::FinSetOb;
    use crate::system::{Graph, PetriNet};

    #[test]
    fn companion_of_identity_is_the_identity_cell() {
        let id = FinFunction::identity(3);
        let c = companion::<DecoratedCospan<Graph>>(&id).unwrap();
        assert_eq!(c.cell, DecoratedCospan::identity(FinSetOb::new(3)));
        assert_eq!(c.to_unit, TwoMorphism::identity(&c.cell));
        assert_eq!(c.from_unit, TwoMorphism::identity(&c.cell));
        assert!(check_companion(&c).unwrap().passed());
    }

    #[test]
    fn collapsing_map_has_a_companion() {
        let f = FinFunction::new(vec![0, 0], 1).unwrap();
        let c = companion::<DecoratedCospan<Graph>>(&f).unwrap();
        assert_eq!(c.cell.apex().size, 1);
        let report = check_companion(&c).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        let s = companion::<StructuredCospan<PetriNet>>(&f).unwrap();
        assert!(check_companion(&s).unwrap().passed());
    }

    #[test]
    fn conjoint_swaps_the_companion_legs() {
        let f = FinFunction::new(vec![1, 0, 1], 2).unwrap();
        let hat = companion::<DecoratedCospan<Graph>>(&f).unwrap();
        let check = conjoint::<DecoratedCospan<Graph>>(&f).unwrap();
        assert_eq!(check.cell, hat.cell.reverse());
        assert!(check_conjoint(&check).unwrap().passed());
    }

    #[test]
    fn wrong_structure_cell_is_caught() {
        let f = FinFunction::new(vec![1, 0], 2).unwrap();
        let mut c = companion::<DecoratedCospan<Graph>>(&f).unwrap();
        c.from_unit.apex = FinFunction::identity(2);
        let report = check_companion(&c).unwrap();
        assert!(!report.passed());
        assert!(!report.structure_cells_valid);
    }
}
