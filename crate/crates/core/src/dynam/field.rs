use crate::decoration::Decoration;
use crate::error::{Error, Result};
use crate::finset::{self, FinFunction, FinSetOb, PartialBijection};
use crate::scalar::Scalar;
use crate::system::{RatedPetriNet, Violation};

use super::poly::Polynomial;

/// An algebraic vector field `v: ℝ^S -> ℝ^S`, one polynomial per coordinate.
#[derive(Clone, Debug)]
pub struct PolyVectorField<T = f64> {
    over: FinSetOb,
    components: Vec<Polynomial<T>>,
}

impl<T: Scalar> PartialEq for PolyVectorField<T> {
    fn eq(&self, other: &Self) -> bool {
        self.over == other.over && self.components == other.components
    }
}

impl<T: Scalar> PolyVectorField<T> {
    pub fn new(components: Vec<Polynomial<T>>) -> Result<Self> {
        let n = components.len();
        if let Some(p) = components.iter().find(|p| p.vars() != n) {
            return Err(Error::Dimension { expected: n, found: p.vars() });
        }
        Ok(PolyVectorField { over: FinSetOb::new(n), components })
    }

    pub fn zero(over: impl Into<FinSetOb>) -> Self {
        let over = over.into();
        PolyVectorField { over, components: vec![Polynomial::zero(over.size); over.size] }
    }

    pub fn over(&self) -> FinSetOb {
        self.over
    }

    pub fn components(&self) -> &[Polynomial<T>] {
        &self.components
    }

    pub fn component(&self, p: usize) -> &Polynomial<T> {
        &self.components[p]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn eval(&self, c: &[T]) -> Result<Vec<T>> {
        if c.len() != self.over.size {
            return Err(Error::Dimension { expected: self.over.size, found: c.len() });
        }
        Ok(self.components.iter().map(|p| p.eval_unchecked(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.over != other.over {
            return Err(Error::Dimension { expected: self.over.size, found: other.over.size });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(PolyVectorField { over: self.over, components })
    }

    /// `D(f)(v) = f_* ∘ v ∘ f^*`: substitute along `f`, then sum each fiber.
    pub fn pushforward(&self, f: &FinFunction) -> Result<Self> {
        if f.dom() != self.over {
            return Err(Error::Dimension { expected: self.over.size, found: f.dom().size });
        }
        let mut out = PolyVectorField::zero(f.cod());
        for (s, p) in self.components.iter().enumerate() {
            let slot = &mut out.components[f.apply(s)];
            *slot = slot.add(&p.pullback(f)?)?;
        }
        Ok(out)
    }

    /// The direct sum on `S + S'`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, total) = (self.over.size, self.over.size + other.over.size);
        let components = self
            .components
            .iter()
            .map(|p| p.embed(0, total))
            .chain(other.components.iter().map(|p| p.embed(m, total)))
            .collect();
        PolyVectorField { over: FinSetOb::new(total), components }
    }

    pub fn to_f64(&self) -> PolyVectorField<f64> {
        PolyVectorField { over: self.over, components: self.components.iter().map(Polynomial::to_f64).collect() }
    }
}

/// `pushforwardField(f, v)`.
pub fn pushforward_field<T: Scalar>(f: &FinFunction, v: &PolyVectorField<T>) -> Result<PolyVectorField<T>> {
    v.pushforward(f)
}

/// The law of mass action: `v(c) = Σ_τ r(τ) (t(τ) - s(τ)) c^{s(τ)}`.
pub fn mass_action<T: Scalar>(net: &RatedPetriNet<T>) -> PolyVectorField<T> {
    let n = net.places().size;
    let mut per_place: Vec<Vec<(Vec<u32>, T)>> = vec![Vec::new(); n];
    for tr in net.transitions() {
        let (src, tgt) = (&tr.transition.src, &tr.transition.tgt);
        let monomial = src.counts().to_vec();
        for (p, terms) in per_place.iter_mut().enumerate() {
            let net_change = i64::from(tgt.count(p)) - i64::from(src.count(p));
            if net_change != 0 {
                let k = T::from_i64(net_change).expect("small integers are representable");
                terms.push((monomial.clone(), tr.rate * k));
            }
        }
    }
    let components = per_place
        .into_iter()
        .map(|terms| Polynomial::from_terms(n, terms).expect("monomials are over the places"))
        .collect();
    PolyVectorField { over: FinSetOb::new(n), components }
}

/// Whether `(∅, v_∅) -> (S, v)` exists in the category of elements of `D`,
/// i.e. whether `v` is the pushforward of the empty field along `!: ∅ -> S`.
/// Only the zero field qualifies, so `(∅, v_∅)` is not initial and the
/// forgetful functor has no left adjoint.
pub fn check_no_left_adjoint_witness<T: Scalar>(v: &PolyVectorField<T>) -> bool {
    let empty = PolyVectorField::<T>::zero(FinSetOb::EMPTY);
    empty.pushforward(&FinFunction::initial(v.over())).map(|w| w == *v).unwrap_or(false)
}

/// `p` with each variable `x` renamed to `h(x)`, if `h` covers every variable `p` uses.
fn rename_partial<T: Scalar>(p: &Polynomial<T>, h: &PartialBijection) -> Option<Polynomial<T>> {
    let n = p.vars();
    let mut terms = Vec::with_capacity(p.terms().len());
    for (exps, c) in p.terms() {
        let mut moved = vec![0; n];
        for (x, &k) in exps.iter().enumerate().filter(|(_, &k)| k > 0) {
            moved[h.get(x)?] = k;
        }
        terms.push((moved, *c));
    }
    Polynomial::from_terms(n, terms).ok()
}

/// Fields form a discrete fiber: the only morphisms are identities.
impl<T: Scalar> Decoration for PolyVectorField<T> {
    type FiberMorphism = ();

    fn carrier(&self) -> FinSetOb {
        self.over
    }

    fn reindex(&self, f: &FinFunction) -> Result<Self> {
        self.pushforward(f)
    }

    fn laxator(&self, other: &Self) -> Self {
        self.direct_sum(other)
    }

    fn unit() -> Self {
        PolyVectorField::zero(FinSetOb::EMPTY)
    }

    fn trivial(a: FinSetOb) -> Self {
        PolyVectorField::zero(a)
    }

    fn fiber_identity(&self) {}

    fn fiber_violations(_tau: &(), from: &Self, to: &Self) -> Result<Vec<Violation>> {
        if from.over != to.over {
            return Err(Error::MorphismShape(format!(
                "fiber morphisms need a shared carrier, found {} and {}",
                from.over, to.over
            )));
        }
        Ok(from
            .components
            .iter()
            .zip(&to.components)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(p, _)| Violation::new(format!("component {p}"), "fields differ"))
            .collect())
    }

    fn fiber_compose(_first: &(), _second: &()) -> Result<()> {
        Ok(())
    }

    fn fiber_sum(_a: &(), _b: &()) {}

    fn fiber_iso(&self, other: &Self) -> Option<()> {
        (self == other).then_some(())
    }

    fn from_trivial(&self) -> Option<()> {
        self.is_zero().then_some(())
    }

    /// Prunes as soon as an assigned component with all its variables
    /// assigned fails to land on its image component.
    fn find_iso_pinned(
        &self,
        other: &Self,
        pins: &[(usize, usize)],
        budget: u64,
    ) -> Result<Option<(FinFunction, ())>> {
        let h = finset::find_iso(self.over, other.over, pins, budget, |partial| {
            self.components.iter().enumerate().all(|(x, p)| match partial.get(x) {
                None => true,
                Some(y) => {
                    let q = &other.components[y];
                    match rename_partial(p, partial) {
                        Some(moved) => moved == *q,
                        None => p.terms().len() == q.terms().len() && p.degree() == q.degree(),
                    }
                }
            })
        })?;
        Ok(h.map(|h| (h, ())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::Multiset;
    use crate::system::{PetriNet, System, Transition};

    fn x(vars: usize, i: usize) -> Polynomial<f64> {
        Polynomial::variable(vars, i).unwrap()
    }

    fn net(places: usize, ts: &[(&[u32], &[u32])], rates: &[f64]) -> RatedPetriNet<f64> {
        let ts = ts
            .iter()
            .map(|(s, t)| Transition { src: Multiset::from_counts(s.to_vec()), tgt: Multiset::from_counts(t.to_vec()) })
            .collect();
        PetriNet::from_parts(FinSetOb::new(places), ts).unwrap().with_rates(rates).unwrap()
    }

    #[test]
    fn water_net_mass_action() {
        // places H, O, H2O; 2H + O -> H2O at rate r
        let r = 0.7;
        let v = mass_action(&net(3, &[(&[2, 1, 0], &[0, 0, 1])], &[r]));
        let m = |c| Polynomial::monomial(3, vec![2, 1, 0], c).unwrap();
        assert_eq!(v.components(), &[m(-2.0 * r), m(-r), m(r)]);
    }

    #[test]
    fn no_transitions_gives_the_zero_field() {
        assert!(mass_action(&net(2, &[], &[])).is_zero());
    }

    #[test]
    fn swapped_field_collapses_to_twice_the_variable() {
        let v = PolyVectorField::new(vec![x(2, 1), x(2, 0)]).unwrap();
        let f = FinFunction::new(vec![0, 0], 1).unwrap();
        let w = v.pushforward(&f).unwrap();
        assert_eq!(w.components(), &[x(1, 0).scale(2.0)]);
        assert_eq!(v.pushforward(&FinFunction::identity(2)).unwrap(), v);
    }

    #[test]
    fn no_left_adjoint_witness() {
        assert!(check_no_left_adjoint_witness(&PolyVectorField::<f64>::zero(2)));
        assert!(!check_no_left_adjoint_witness(&PolyVectorField::new(vec![x(1, 0)]).unwrap()));
    }

    #[test]
    fn trivial_field_is_initial_only_for_zero() {
        let v = PolyVectorField::new(vec![x(1, 0)]).unwrap();
        assert!(v.from_trivial().is_none());
        assert!(PolyVectorField::<f64>::trivial(FinSetOb::new(3)).from_trivial().is_some());
        assert_eq!(PolyVectorField::<f64>::trivial(FinSetOb::new(2)), PolyVectorField::zero(2));
    }

    #[test]
    fn generic_over_f32() {
        let v: PolyVectorField<f32> = mass_action(&net(1, &[(&[1], &[0])], &[0.5]).to_f32());
        assert_eq!(v.eval(&[2.0]).unwrap(), vec![-1.0f32]);
    }

    trait ToF32 {
        fn to_f32(&self) -> RatedPetriNet<f32>;
    }

    impl ToF32 for RatedPetriNet<f64> {
        fn to_f32(&self) -> RatedPetriNet<f32> {
            let rates: Vec<f32> = self.rates().map(|r| r as f32).collect();
            self.net().with_rates(&rates).unwrap()
        }
    }

    #[test]
    fn iso_search_finds_a_relabeling() {
        // x0' = x1, x1' = 2 x0 x1 against the same field with coordinates swapped
        let v = PolyVectorField::new(vec![x(2, 1), Polynomial::monomial(2, vec![1, 1], 2.0).unwrap()]).unwrap();
        let w = PolyVectorField::new(vec![Polynomial::monomial(2, vec![1, 1], 2.0).unwrap(), x(2, 0)]).unwrap();
        let (h, ()) = v.find_iso_pinned(&w, &[], 100).unwrap().unwrap();
        assert_eq!(h.table(), &[1, 0]);
        assert_eq!(v.reindex(&h).unwrap(), w);
        assert!(v.find_iso_pinned(&w, &[(0, 0)], 100).unwrap().is_none());
    }

    #[test]
    fn edges_are_irrelevant_to_the_field_carrier() {
        let n = net(2, &[(&[1, 0], &[0, 1])], &[1.0]);
        assert_eq!(mass_action(&n).over(), n.vertices());
    }
}
