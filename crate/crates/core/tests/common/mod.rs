//! Seeded generators and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's own algorithms: equivalence
//! classes come from a boolean transitive closure, permutations and functions
//! are enumerated directly, and fiber sums are accumulated by scanning.

#![allow(dead_code)]

use opencospan::cospan::Cospan;
use opencospan::dynam::{PolyVectorField, Polynomial};
use opencospan::multiset::Multiset;
use opencospan::system::{RatedTransition, Transition};
use opencospan::{DecoratedCospan, FinFunction, FinSetOb, Graph, PetriNet, RatedPetriNet, System};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random function `dom -> cod`. Needs `cod > 0` unless `dom == 0`.
pub fn fin_fn(rng: &mut TestRng, dom: usize, cod: usize) -> FinFunction {
    let table = (0..dom).map(|_| rng.gen_range(0..cod)).collect();
    FinFunction::new(table, cod).unwrap()
}

/// A random surjection `dom -> cod` with `dom >= cod`.
pub fn surjection(rng: &mut TestRng, dom: usize, cod: usize) -> FinFunction {
    assert!(dom >= cod);
    let mut table: Vec<usize> = (0..cod).collect();
    table.extend((cod..dom).map(|_| rng.gen_range(0..cod.max(1))));
    shuffle(rng, &mut table);
    FinFunction::new(table, cod).unwrap()
}

pub fn shuffle<T>(rng: &mut TestRng, xs: &mut [T]) {
    for i in (1..xs.len()).rev() {
        let j = rng.gen_range(0..=i);
        xs.swap(i, j);
    }
}

pub fn permutation(rng: &mut TestRng, n: usize) -> FinFunction {
    let mut table: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut table);
    FinFunction::new(table, n).unwrap()
}

/// A span `B <-f- A -g-> C` with all three sizes at most `max`.
pub fn span(rng: &mut TestRng, max: usize) -> (FinFunction, FinFunction) {
    let b = rng.gen_range(1..=max);
    let c = rng.gen_range(1..=max);
    let a = rng.gen_range(0..=max);
    (fin_fn(rng, a, b), fin_fn(rng, a, c))
}

pub fn graph(rng: &mut TestRng, nodes: usize, max_edges: usize) -> Graph {
    let count = if nodes == 0 { 0 } else { rng.gen_range(0..=max_edges) };
    let arrows: Vec<(usize, usize)> =
        (0..count).map(|_| (rng.gen_range(0..nodes), rng.gen_range(0..nodes))).collect();
    Graph::from_arrows(nodes, &arrows).unwrap()
}

pub fn multiset(rng: &mut TestRng, places: usize, max_total: u32) -> Multiset {
    let mut counts = vec![0u32; places];
    if places > 0 {
        for _ in 0..rng.gen_range(0..=max_total) {
            counts[rng.gen_range(0..places)] += 1;
        }
    }
    Multiset::from_counts(counts)
}

pub fn transition(rng: &mut TestRng, places: usize) -> Transition {
    Transition { src: multiset(rng, places, 3), tgt: multiset(rng, places, 3) }
}

pub fn petri(rng: &mut TestRng, places: usize, max_transitions: usize) -> PetriNet {
    let count = if places == 0 { 0 } else { rng.gen_range(0..=max_transitions) };
    let ts = (0..count).map(|_| transition(rng, places)).collect();
    PetriNet::from_parts(FinSetOb::new(places), ts).unwrap()
}

pub fn rate(rng: &mut TestRng) -> f64 {
    rng.gen_range(0.0..=5.0)
}

pub fn rated(rng: &mut TestRng, places: usize, max_transitions: usize) -> RatedPetriNet<f64> {
    let net = petri(rng, places, max_transitions);
    let rates: Vec<f64> = (0..net.transitions().len()).map(|_| rate(rng)).collect();
    net.with_rates(&rates).unwrap()
}

/// Wraps a system in random legs from feet of at most `max_foot` elements.
pub fn open<S: System>(rng: &mut TestRng, sys: S, max_foot: usize) -> DecoratedCospan<S> {
    let n = sys.vertices().size;
    let cap = if n == 0 { 0 } else { max_foot };
    let (a, b) = (rng.gen_range(0..=cap), rng.gen_range(0..=cap));
    DecoratedCospan::new(fin_fn(rng, a, n), fin_fn(rng, b, n), sys).unwrap()
}

/// Like [`open`] with a prescribed left foot.
pub fn open_from<S: System>(rng: &mut TestRng, sys: S, left: usize, max_foot: usize) -> DecoratedCospan<S> {
    let n = sys.vertices().size;
    assert!(n > 0 || left == 0);
    let b = if n == 0 { 0 } else { rng.gen_range(0..=max_foot) };
    DecoratedCospan::new(fin_fn(rng, left, n), fin_fn(rng, b, n), sys).unwrap()
}

/// A chain of `len` composable open systems with apexes in `1..=max_apex`.
pub fn chain<S: System>(
    rng: &mut TestRng,
    len: usize,
    max_apex: usize,
    mut make: impl FnMut(&mut TestRng, usize) -> S,
) -> Vec<DecoratedCospan<S>> {
    let mut out: Vec<DecoratedCospan<S>> = Vec::new();
    for _ in 0..len {
        let apex = rng.gen_range(1..=max_apex);
        let sys = make(rng, apex);
        let left = match out.last() {
            Some(prev) => prev.right_foot().size,
            None => rng.gen_range(0..=3),
        };
        out.push(open_from(rng, sys, left, 3));
    }
    out
}

pub fn polynomial(rng: &mut TestRng, vars: usize, max_degree: u32, max_terms: usize) -> Polynomial<f64> {
    let terms: Vec<(Vec<u32>, f64)> = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            let mut exps = vec![0u32; vars];
            let degree = rng.gen_range(0..=max_degree);
            if vars > 0 {
                for _ in 0..degree {
                    exps[rng.gen_range(0..vars)] += 1;
                }
            }
            (exps, rng.gen_range(-3.0..3.0))
        })
        .collect();
    Polynomial::from_terms(vars, terms).unwrap()
}

pub fn field(rng: &mut TestRng, vars: usize, max_degree: u32) -> PolyVectorField<f64> {
    PolyVectorField::new((0..vars).map(|_| polynomial(rng, vars, max_degree, 4)).collect()).unwrap()
}

/// Equivalence classes of the relation generated by `pairs` on `0..n`, by
/// boolean transitive closure. Returns a class label per element, labels
/// numbered by first appearance.
pub fn closure_classes(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        rel[a][b] = true;
        rel[b][a] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                let via = rel[k].clone();
                for (slot, reach) in rel[i].iter_mut().zip(via) {
                    *slot |= reach;
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if label[i] == usize::MAX {
            for j in 0..n {
                if rel[i][j] {
                    label[j] = next;
                }
            }
            next += 1;
        }
    }
    label
}

/// Whether two labelings of the same set induce the same partition, i.e. the
/// quotients agree up to a (necessarily unique) bijection of labels.
pub fn same_partition(x: &[usize], y: &[usize]) -> bool {
    x.len() == y.len()
        && (0..x.len()).all(|i| (0..x.len()).all(|j| (x[i] == x[j]) == (y[i] == y[j])))
}

/// Every function `dom -> cod` as a table, in lexicographic order.
pub fn all_functions(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if cod == 0 {
        if dom == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut table = vec![0usize; dom];
    loop {
        out.push(table.clone());
        let mut i = dom;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < cod {
                break;
            }
            table[i] = 0;
        }
    }
}

/// Every permutation of `0..n`.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    all_functions(n, n)
        .into_iter()
        .filter(|t| {
            let mut seen = vec![false; n];
            t.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
        .collect()
}

/// Per target transition, the total rate of the source transitions sent to it.
pub fn fiber_rate_sums(rates: &[f64], edge_map: &[usize], targets: usize) -> Vec<f64> {
    let mut sums = vec![0.0; targets];
    for (t, &r) in rates.iter().enumerate() {
        sums[edge_map[t]] += r;
    }
    sums
}

/// Counts of a multiset moved along a place map, by scanning.
pub fn moved_counts(counts: &[u32], map: &[usize], cod: usize) -> Vec<u32> {
    let mut out = vec![0u32; cod];
    for (p, &k) in counts.iter().enumerate() {
        out[map[p]] += k;
    }
    out
}

/// `f_* ∘ v ∘ f^*` evaluated numerically at `y`.
pub fn numeric_pushforward(v: &PolyVectorField<f64>, f: &FinFunction, y: &[f64]) -> Vec<f64> {
    let pulled: Vec<f64> = (0..f.dom().size).map(|s| y[f.apply(s)]).collect();
    let values = v.eval(&pulled).unwrap();
    let mut out = vec![0.0; f.cod().size];
    for (s, x) in values.into_iter().enumerate() {
        out[f.apply(s)] += x;
    }
    out
}

/// `|a - b| <= rel * max(|a|, |b|, 1)`.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

pub fn rated_transition(src: &[u32], tgt: &[u32], rate: f64) -> RatedTransition<f64> {
    RatedTransition {
        transition: Transition { src: Multiset::from_counts(src.to_vec()), tgt: Multiset::from_counts(tgt.to_vec()) },
        rate,
    }
}
