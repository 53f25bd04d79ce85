mod common;

use common::*;
use opencospan::cospan::{compose_h, iso_cospan, to_decorated, to_structured, Cospan, DecoratedCospan, TwoMorphism};
use opencospan::decoration::Decoration;
use opencospan::finset::{self, DEFAULT_ISO_BUDGET};
use opencospan::{FinFunction, Graph, PetriNet, System};
use proptest::prelude::*;
use rand::Rng;

type OpenGraph = DecoratedCospan<Graph>;

fn block_swap(m: usize, n: usize) -> FinFunction {
    FinFunction::new((0..m).map(|x| x + n).chain(0..n).collect(), m + n).unwrap()
}

/// `m ⇒ m'` where `m'` has its apex pushed along a random map and the
/// decoration carried with the identity on edges.
fn push_apex(r: &mut TestRng, m: &OpenGraph) -> (TwoMorphism<FinFunction>, OpenGraph) {
    let n = m.apex().size;
    let k = r.gen_range(1..=n.max(1));
    let h = fin_fn(r, n, k);
    let deco = m.decoration().reindex(&h).unwrap();
    let target = DecoratedCospan::new(
        finset::compose(&h, m.left_leg()).unwrap(),
        finset::compose(&h, m.right_leg()).unwrap(),
        deco.clone(),
    )
    .unwrap();
    let cell = TwoMorphism {
        left: FinFunction::identity(m.left_foot()),
        right: FinFunction::identity(m.right_foot()),
        apex: h,
        fiber: FinFunction::identity(deco.edges()),
    };
    (cell, target)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative_and_unital_up_to_iso(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs = chain(&mut r, 3, 5, |r, n| graph(r, n, 4));
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        let ab_c = a.compose(b).unwrap().compose(c).unwrap();
        let a_bc = a.compose(&b.compose(c).unwrap()).unwrap();
        prop_assert!(iso_cospan(&ab_c, &a_bc, DEFAULT_ISO_BUDGET).unwrap().is_some());
        let lu = OpenGraph::identity(a.left_foot()).compose(a).unwrap();
        let ru = a.compose(&OpenGraph::identity(a.right_foot())).unwrap();
        prop_assert!(iso_cospan(&lu, a, DEFAULT_ISO_BUDGET).unwrap().is_some());
        prop_assert!(iso_cospan(&ru, a, DEFAULT_ISO_BUDGET).unwrap().is_some());
    }

    #[test]
    fn tensor_is_symmetric_via_the_block_swap(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let (x, y) = (petri(&mut r, p, 3), petri(&mut r, q, 3));
        let m = open(&mut r, x, 3);
        let n = open(&mut r, y, 3);
        let mn = m.tensor(&n).unwrap();
        let nm = n.tensor(&m).unwrap();
        let apex = block_swap(m.apex().size, n.apex().size);
        let moved = mn.decoration().reindex(&apex).unwrap();
        let fiber = moved.fiber_iso(nm.decoration());
        prop_assert!(fiber.is_some());
        let cell = TwoMorphism {
            left: block_swap(m.left_foot().size, n.left_foot().size),
            right: block_swap(m.right_foot().size, n.right_foot().size),
            apex,
            fiber: fiber.unwrap(),
        };
        prop_assert!(cell.validate(&mn, &nm).unwrap().is_empty());
    }

    #[test]
    fn composite_two_morphisms_validate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs = chain(&mut r, 2, 5, |r, n| graph(r, n, 4));
        let (m, n) = (&xs[0], &xs[1]);
        let (alpha, m2) = push_apex(&mut r, m);
        let (beta, n2) = push_apex(&mut r, n);
        prop_assert!(alpha.validate(m, &m2).unwrap().is_empty());
        prop_assert!(beta.validate(n, &n2).unwrap().is_empty());

        let across = compose_h(&alpha, &beta, (m, n), (&m2, &n2)).unwrap();
        let (src, tgt) = (m.compose(n).unwrap(), m2.compose(&n2).unwrap());
        prop_assert!(across.validate(&src, &tgt).unwrap().is_empty());

        let (gamma, m3) = push_apex(&mut r, &m2);
        let down = alpha.compose_v::<Graph>(&gamma).unwrap();
        prop_assert!(down.validate(m, &m3).unwrap().is_empty());

        let f = fin_fn(&mut r, 3, 2);
        let unit = TwoMorphism::<FinFunction>::unit_on::<Graph>(&f);
        prop_assert!(unit.validate(&OpenGraph::identity(f.dom()), &OpenGraph::identity(f.cod())).unwrap().is_empty());
    }

    #[test]
    fn to_structured_is_injective_and_strict(seed in any::<u64>()) {
        let mut r = rng(seed);
        let xs = chain(&mut r, 2, 5, |r, n| petri(r, n, 3));
        let (m, n) = (&xs[0], &xs[1]);
        prop_assert_eq!(&to_decorated(&to_structured(m)).unwrap(), m);
        prop_assert_eq!(
            to_structured(&m.compose(n).unwrap()),
            to_structured(m).compose(&to_structured(n)).unwrap()
        );
        prop_assert_eq!(
            to_structured(&m.tensor(n).unwrap()),
            to_structured(m).tensor(&to_structured(n)).unwrap()
        );
        prop_assert_eq!(to_structured(m) == to_structured(n), m == n);
    }

    #[test]
    fn reversal_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let x: PetriNet = petri(&mut r, n, 3);
        let m = open(&mut r, x, 3);
        prop_assert_eq!(m.reverse().reverse(), m.clone());
        prop_assert_eq!(m.reverse().left_foot(), m.right_foot());
        prop_assert_eq!(m.decoration().vertices(), m.apex());
    }
}
