//! Skeletal finite sets and functions between them, with chosen colimits.
//!
//! A finite set is just its cardinality `n`; its elements are `0..n`. Every
//! colimit below is computed by a fixed recipe so that the same inputs always
//! produce the same table, bit for bit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default node budget for [`find_iso`].
pub const DEFAULT_ISO_BUDGET: u64 = 1_000_000;

/// A finite set `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetOb {
    pub size: usize,
}

impl FinSetOb {
    pub const EMPTY: FinSetOb = FinSetOb { size: 0 };

    pub const fn new(size: usize) -> Self {
        FinSetOb { size }
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_empty(self) -> bool {
        self.size == 0
    }
}

impl From<usize> for FinSetOb {
    fn from(size: usize) -> Self {
        FinSetOb { size }
    }
}

impl fmt::Display for FinSetOb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", self.size)
    }
}

/// A total function `dom -> cod`, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinFunction", into = "RawFinFunction")]
pub struct FinFunction {
    dom: FinSetOb,
    cod: FinSetOb,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinFunction {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl TryFrom<RawFinFunction> for FinFunction {
    type Error = Error;

    fn try_from(raw: RawFinFunction) -> Result<Self> {
        if raw.table.len() != raw.dom {
            return Err(Error::InvalidFunction(format!(
                "table has {} entries but domain has {}",
                raw.table.len(),
                raw.dom
            )));
        }
        FinFunction::new(raw.table, raw.cod)
    }
}

impl From<FinFunction> for RawFinFunction {
    fn from(f: FinFunction) -> Self {
        RawFinFunction { dom: f.dom.size, cod: f.cod.size, table: f.table }
    }
}

impl FinFunction {
    /// Builds a function from its table; the domain is `table.len()`.
    pub fn new(table: Vec<usize>, cod: impl Into<FinSetOb>) -> Result<Self> {
        let cod = cod.into();
        if let Some((x, &y)) = table.iter().enumerate().find(|(_, &y)| y >= cod.size) {
            return Err(Error::InvalidFunction(format!(
                "element {x} maps to {y}, outside codomain of size {}",
                cod.size
            )));
        }
        Ok(FinFunction { dom: FinSetOb::new(table.len()), cod, table })
    }

    pub fn identity(n: impl Into<FinSetOb>) -> Self {
        let n = n.into();
        FinFunction { dom: n, cod: n, table: n.elements().collect() }
    }

    /// The unique function out of the empty set.
    pub fn initial(cod: impl Into<FinSetOb>) -> Self {
        FinFunction { dom: FinSetOb::EMPTY, cod: cod.into(), table: Vec::new() }
    }

    pub fn constant(dom: impl Into<FinSetOb>, cod: impl Into<FinSetOb>, value: usize) -> Result<Self> {
        FinFunction::new(vec![value; dom.into().size], cod)
    }

    pub fn dom(&self) -> FinSetOb {
        self.dom
    }

    pub fn cod(&self) -> FinSetOb {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        compose(self, f)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFunction> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.cod.size];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinFunction { dom: self.cod, cod: self.dom, table: inv })
    }

    /// Elements of the domain sent to `y`, in ascending order.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.table.iter().enumerate().filter(move |(_, &v)| v == y).map(|(x, _)| x)
    }

    /// `self + other : dom + dom' -> cod + cod'`.
    pub fn sum(&self, other: &FinFunction) -> FinFunction {
        let offset = self.cod.size;
        let table = self
            .table
            .iter()
            .copied()
            .chain(other.table.iter().map(|&y| y + offset))
            .collect();
        FinFunction {
            dom: FinSetOb::new(self.dom.size + other.dom.size),
            cod: FinSetOb::new(self.cod.size + other.cod.size),
            table,
        }
    }

    /// The copairing `[self, other] : dom + dom' -> cod`.
    pub fn copair(&self, other: &FinFunction) -> Result<FinFunction> {
        if self.cod != other.cod {
            return Err(Error::InvalidFunction(format!(
                "copairing needs a shared codomain, found {} and {}",
                self.cod, other.cod
            )));
        }
        let table = self.table.iter().chain(other.table.iter()).copied().collect();
        FinFunction::new(table, self.cod)
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} -> {}", self.table, self.dom, self.cod)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    if f.cod != g.dom {
        return Err(Error::Composition { dom: f.cod.size, cod: g.dom.size });
    }
    Ok(FinFunction {
        dom: f.dom,
        cod: g.cod,
        table: f.table.iter().map(|&y| g.table[y]).collect(),
    })
}

/// A coproduct `a + b` with its two injections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub ob: FinSetOb,
    pub left: FinFunction,
    pub right: FinFunction,
}

/// `a + b`, with `a` placed first and `b` offset by `|a|`.
pub fn coproduct(a: FinSetOb, b: FinSetOb) -> Coproduct {
    let ob = FinSetOb::new(a.size + b.size);
    Coproduct {
        ob,
        left: FinFunction { dom: a, cod: ob, table: a.elements().collect() },
        right: FinFunction { dom: b, cod: ob, table: b.elements().map(|x| x + a.size).collect() },
    }
}

/// The pushout of a span `B <-f- A -g-> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub apex: FinSetOb,
    /// `B -> B +_A C`
    pub left: FinFunction,
    /// `C -> B +_A C`
    pub right: FinFunction,
    /// The quotient `B + C -> B +_A C`.
    pub quotient: FinFunction,
}

impl Pushout {
    /// The unique map out of the apex induced by a cocone `u: B -> Q`, `v: C -> Q`.
    ///
    /// Fails if the cocone does not commute with the span the pushout was built from.
    pub fn mediate(&self, u: &FinFunction, v: &FinFunction) -> Result<FinFunction> {
        if u.dom != self.left.dom || v.dom != self.right.dom || u.cod != v.cod {
            return Err(Error::NotACocone(format!(
                "cocone legs {u} and {v} do not match the pushout boundary"
            )));
        }
        let mut table: Vec<Option<usize>> = vec![None; self.apex.size];
        let legs = u.table.iter().chain(v.table.iter());
        for (x, &target) in legs.enumerate() {
            let class = self.quotient.table[x];
            match table[class] {
                None => table[class] = Some(target),
                Some(prev) if prev != target => {
                    return Err(Error::NotACocone(format!(
                        "class {class} is sent to both {prev} and {target}"
                    )))
                }
                Some(_) => {}
            }
        }
        let table = table.into_iter().map(|t| t.expect("quotient is surjective")).collect();
        FinFunction::new(table, u.cod)
    }
}

/// Disjoint-set forest over `0..n`, path-halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Dense class labels, numbered by ascending minimum element.
    pub(crate) fn classes(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out.push(label[r]);
        }
        (next, out)
    }
}

/// The coequalizer of `f, g: A -> B`, as a surjection out of `B`.
pub(crate) fn coequalize(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> FinFunction {
    let mut uf = UnionFind::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let (count, table) = uf.classes();
    FinFunction { dom: FinSetOb::new(n), cod: FinSetOb::new(count), table }
}

/// Pushout of `B <-f- A -g-> C`: glue `f(x) ~ g(x)` inside `B + C`.
pub fn pushout(f: &FinFunction, g: &FinFunction) -> Result<Pushout> {
    if f.dom != g.dom {
        return Err(Error::Span { left: f.dom.size, right: g.dom.size });
    }
    let sum = coproduct(f.cod, g.cod);
    let offset = f.cod.size;
    let quotient = coequalize(
        sum.ob.size,
        f.table.iter().zip(&g.table).map(|(&b, &c)| (b, c + offset)),
    );
    let left = compose(&quotient, &sum.left)?;
    let right = compose(&quotient, &sum.right)?;
    Ok(Pushout { apex: quotient.cod, left, right, quotient })
}

/// A bijection under construction during [`find_iso`].
#[derive(Clone, Debug)]
pub struct PartialBijection {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl PartialBijection {
    fn new(n: usize) -> Self {
        PartialBijection { forward: vec![None; n], backward: vec![None; n] }
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.forward[x]
    }

    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.backward[y]
    }

    pub fn is_complete(&self) -> bool {
        self.forward.iter().all(Option::is_some)
    }

    fn assign(&mut self, x: usize, y: usize) {
        self.forward[x] = Some(y);
        self.backward[y] = Some(x);
    }

    fn unassign(&mut self, x: usize) {
        if let Some(y) = self.forward[x].take() {
            self.backward[y] = None;
        }
    }

    fn to_function(&self) -> FinFunction {
        let n = self.forward.len();
        let table = self.forward.iter().map(|y| y.expect("complete bijection")).collect();
        FinFunction { dom: FinSetOb::new(n), cod: FinSetOb::new(n), table }
    }
}

/// Backtracking search for a bijection `a -> b`.
///
/// `fixed` pins pairs `x ↦ y` up front; inconsistent pins mean no witness.
/// `accept` is consulted after every assignment and must return `false` as soon
/// as the partial bijection can no longer be extended to an acceptable one; on
/// a complete bijection it is the final verdict. The witness returned is the
/// lexicographically smallest acceptable table.
pub fn find_iso<P>(
    a: FinSetOb,
    b: FinSetOb,
    fixed: &[(usize, usize)],
    budget: u64,
    mut accept: P,
) -> Result<Option<FinFunction>>
where
    P: FnMut(&PartialBijection) -> bool,
{
    if a.size != b.size {
        return Ok(None);
    }
    let n = a.size;
    let mut partial = PartialBijection::new(n);
    for &(x, y) in fixed {
        if x >= n || y >= n {
            return Ok(None);
        }
        match (partial.forward[x], partial.backward[y]) {
            (None, None) => partial.assign(x, y),
            (Some(prev), _) if prev == y => {}
            _ => return Ok(None),
        }
    }
    if !accept(&partial) {
        return Ok(None);
    }
    let free: Vec<usize> = (0..n).filter(|&x| partial.forward[x].is_none()).collect();
    let mut nodes = 0u64;
    if search(&free, 0, &mut partial, &mut accept, &mut nodes, budget)? {
        Ok(Some(partial.to_function()))
    } else {
        Ok(None)
    }
}

fn search<P>(
    free: &[usize],
    depth: usize,
    partial: &mut PartialBijection,
    accept: &mut P,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool>
where
    P: FnMut(&PartialBijection) -> bool,
{
    let Some(&x) = free.get(depth) else {
        return Ok(true);
    };
    for y in 0..partial.backward.len() {
        if partial.backward[y].is_some() {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        partial.assign(x, y);
        if accept(partial) && search(free, depth + 1, partial, accept, nodes, budget)? {
            return Ok(true);
        }
        partial.unassign(x);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fun(table: &[usize], cod: usize) -> FinFunction {
        FinFunction::new(table.to_vec(), cod).unwrap()
    }

    #[test]
    fn identity_is_a_unit_for_composition() {
        let f = fun(&[2, 0, 1, 1], 3);
        assert_eq!(compose(&FinFunction::identity(3), &f).unwrap(), f);
        assert_eq!(compose(&f, &FinFunction::identity(4)).unwrap(), f);
    }

    #[test]
    fn constant_absorbs_a_permutation() {
        let f = fun(&[1, 0], 2);
        let g = fun(&[0, 0], 1);
        assert_eq!(compose(&g, &f).unwrap().table(), &[0, 0]);
    }

    #[test]
    fn composition_rejects_mismatched_boundaries() {
        let f = fun(&[0, 1], 2);
        let g = fun(&[0, 0, 0], 1);
        assert!(matches!(compose(&g, &f), Err(Error::Composition { .. })));
    }

    #[test]
    fn out_of_range_tables_are_rejected() {
        assert!(FinFunction::new(vec![0, 3], 3).is_err());
        let raw = r#"{"dom":3,"cod":2,"table":[0,1]}"#;
        assert!(serde_json::from_str::<FinFunction>(raw).is_err());
    }

    #[test]
    fn coproduct_uses_offset_convention() {
        let c = coproduct(FinSetOb::new(2), FinSetOb::new(3));
        assert_eq!(c.ob.size, 5);
        assert_eq!(c.left.table(), &[0, 1]);
        assert_eq!(c.right.table(), &[2, 3, 4]);

        let c = coproduct(FinSetOb::EMPTY, FinSetOb::new(4));
        assert!(c.right.is_identity());
    }

    #[test]
    fn pushout_glues_one_point() {
        let f = fun(&[0], 2);
        let g = fun(&[0], 1);
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.apex.size, 2);
        assert_eq!(p.left.table(), &[0, 1]);
        assert_eq!(p.right.table(), &[0]);
    }

    #[test]
    fn pushout_of_identities_is_trivial() {
        let id = FinFunction::identity(4);
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.apex.size, 4);
        assert!(p.left.is_identity());
        assert!(p.right.is_identity());
    }

    #[test]
    fn pushout_over_empty_is_coproduct() {
        let f = FinFunction::initial(2);
        let g = FinFunction::initial(3);
        let p = pushout(&f, &g).unwrap();
        let c = coproduct(FinSetOb::new(2), FinSetOb::new(3));
        assert_eq!(p.apex, c.ob);
        assert_eq!(p.left, c.left);
        assert_eq!(p.right, c.right);
    }

    #[test]
    fn pushout_rejects_non_span() {
        let f = fun(&[0], 1);
        let g = fun(&[0, 0], 1);
        assert!(matches!(pushout(&f, &g), Err(Error::Span { .. })));
    }

    #[test]
    fn classes_are_numbered_by_minimum_representative() {
        // B = {0,1,2}, C = {0,1}; glue b2 ~ c0 and b0 ~ c1
        let f = fun(&[2, 0], 3);
        let g = fun(&[0, 1], 2);
        let p = pushout(&f, &g).unwrap();
        assert_eq!(p.quotient.table(), &[0, 1, 2, 2, 0]);
    }

    #[test]
    fn mediate_rejects_non_commuting_cocones() {
        let f = fun(&[0], 1);
        let g = fun(&[0], 1);
        let p = pushout(&f, &g).unwrap();
        assert!(p.mediate(&fun(&[0], 2), &fun(&[1], 2)).is_err());
        assert_eq!(p.mediate(&fun(&[1], 2), &fun(&[1], 2)).unwrap().table(), &[1]);
    }

    #[test]
    fn find_iso_returns_identity_first() {
        let w = find_iso(3.into(), 3.into(), &[], DEFAULT_ISO_BUDGET, |_| true).unwrap();
        assert!(w.unwrap().is_identity());
    }

    #[test]
    fn find_iso_needs_equal_sizes() {
        let w = find_iso(2.into(), 3.into(), &[], DEFAULT_ISO_BUDGET, |_| true).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn find_iso_honours_pins() {
        let w = find_iso(3.into(), 3.into(), &[(0, 2)], DEFAULT_ISO_BUDGET, |_| true).unwrap();
        assert_eq!(w.unwrap().table(), &[2, 0, 1]);
        let w = find_iso(3.into(), 3.into(), &[(0, 2), (1, 2)], DEFAULT_ISO_BUDGET, |_| true).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn find_iso_reports_budget_exhaustion() {
        let r = find_iso(8.into(), 8.into(), &[], 100, |p| !p.is_complete());
        assert_eq!(r, Err(Error::BudgetExceeded { budget: 100 }));
    }
}
