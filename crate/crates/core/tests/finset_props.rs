mod common;

use common::*;
use opencospan::finset::{self, coproduct, FinFunction, FinSetOb};
use proptest::prelude::*;
use rand::Rng;

fn compose(g: &FinFunction, f: &FinFunction) -> FinFunction {
    finset::compose(g, f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pushout_square_commutes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = span(&mut r, 8);
        let p = finset::pushout(&f, &g).unwrap();
        prop_assert_eq!(compose(&p.left, &f), compose(&p.right, &g));
    }

    #[test]
    fn pushout_matches_the_closure_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = span(&mut r, 8);
        let p = finset::pushout(&f, &g).unwrap();
        let off = f.cod().size;
        let pairs: Vec<_> = (0..f.dom().size).map(|a| (f.apply(a), g.apply(a) + off)).collect();
        prop_assert!(same_partition(p.quotient.table(), &closure_classes(off + g.cod().size, &pairs)));
    }

    #[test]
    fn mediators_exist_exactly_for_cocones(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = span(&mut r, 5);
        let p = finset::pushout(&f, &g).unwrap();
        let q = 2;
        let mut commuting = 0u32;
        for u in all_functions(f.cod().size, q) {
            for v in all_functions(g.cod().size, q) {
                let commutes = (0..f.dom().size).all(|a| u[f.apply(a)] == v[g.apply(a)]);
                let m = p.mediate(&FinFunction::new(u.clone(), q).unwrap(), &FinFunction::new(v.clone(), q).unwrap());
                prop_assert_eq!(commutes, m.is_ok());
                if let Ok(m) = m {
                    commuting += 1;
                    prop_assert_eq!(compose(&m, &p.left).table().to_vec(), u.clone());
                    prop_assert_eq!(compose(&m, &p.right).table().to_vec(), v.clone());
                }
            }
        }
        prop_assert_eq!(commuting, (q as u32).pow(p.apex.size as u32));
    }

    #[test]
    fn swapped_span_has_an_isomorphic_apex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = span(&mut r, 8);
        let p = finset::pushout(&f, &g).unwrap();
        let q = finset::pushout(&g, &f).unwrap();
        // the iso must carry the left injection of one onto the right injection of the other
        let iso = finset::find_iso(p.apex, q.apex, &[], finset::DEFAULT_ISO_BUDGET, |partial| {
            (0..f.cod().size).all(|b| partial.get(p.left.apply(b)).is_none_or(|y| y == q.right.apply(b)))
                && (0..g.cod().size).all(|c| partial.get(p.right.apply(c)).is_none_or(|y| y == q.left.apply(c)))
        })
        .unwrap();
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().is_bijection());
    }

    #[test]
    fn coproduct_is_unital_and_associative(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let (a, b, c) = (FinSetOb::new(a), FinSetOb::new(b), FinSetOb::new(c));
        let unit = coproduct(a, FinSetOb::EMPTY);
        prop_assert!(unit.left.is_identity());
        prop_assert!(coproduct(FinSetOb::EMPTY, a).right.is_identity());

        let ab_c = coproduct(coproduct(a, b).ob, c);
        let a_bc = coproduct(a, coproduct(b, c).ob);
        prop_assert_eq!(ab_c.ob, a_bc.ob);
        // the canonical renumbering is the identity on a skeleton
        let (ab, bc) = (coproduct(a, b), coproduct(b, c));
        prop_assert_eq!(compose(&ab_c.left, &ab.left), a_bc.left.clone());
        prop_assert_eq!(compose(&ab_c.left, &ab.right), compose(&a_bc.right, &bc.left));
        prop_assert_eq!(ab_c.right.clone(), compose(&a_bc.right, &bc.right));
    }

    #[test]
    fn copair_and_sum_agree_with_pointwise_definitions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = fin_fn(&mut r, 3, 4);
        let g = fin_fn(&mut r, 2, 4);
        let h = f.copair(&g).unwrap();
        let expected: Vec<usize> = f.table().iter().chain(g.table()).copied().collect();
        prop_assert_eq!(h.table(), &expected[..]);
        let s = f.sum(&g);
        let expected: Vec<usize> = f.table().iter().copied().chain(g.table().iter().map(|x| x + 4)).collect();
        prop_assert_eq!(s.table(), &expected[..]);
    }

    #[test]
    fn find_iso_agrees_with_permutation_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 4;
        let colors_a: Vec<u8> = (0..n).map(|_| r.gen_range(0..3)).collect();
        let mut colors_b = colors_a.clone();
        if r.gen_bool(0.3) {
            colors_b[0] = (colors_b[0] + 1) % 3;
        }
        shuffle(&mut r, &mut colors_b);
        let brute = all_permutations(n).into_iter().find(|p| (0..n).all(|x| colors_a[x] == colors_b[p[x]]));
        let found = finset::find_iso(FinSetOb::new(n), FinSetOb::new(n), &[], 1000, |partial| {
            (0..n).all(|x| partial.get(x).is_none_or(|y| colors_a[x] == colors_b[y]))
        })
        .unwrap();
        // both searches are lexicographic, so they find the same witness
        prop_assert_eq!(found.map(|f| f.table().to_vec()), brute);
    }
}
