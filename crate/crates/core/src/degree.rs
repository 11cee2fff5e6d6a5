//! Degree of a finite-to-one one-block code via subset graphs.
//!
//! The forward graph `G` lives on nonempty subsets of fibers; from `A` over
//! `b` and a next letter `b'`, the unique successor is the set of symbols of
//! the fiber of `b'` that follow some member of `A`. The backward graph `G'`
//! is the mirror image using predecessors. `S` is everything reachable in `G`
//! from a full fiber, `S'` everything that reaches a full fiber in `G'`, and
//! the degree is the least nonzero `|A ∩ A'|` over `A ∈ S`, `A' ∈ S'`.
//!
//! Neither graph is materialized on the full power set: both closures are
//! grown on demand from the full fibers.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::DegreeError;
use crate::finiteness::find_diamond;
use crate::language::fiber_sets;
use crate::set::SymbolSet;
use crate::triple::FactorTriple;

/// A nonempty subset of a single fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetVertex {
    pub y: usize,
    pub members: SymbolSet,
}

impl SubsetVertex {
    pub fn full_fiber(t: &FactorTriple, y: usize) -> Self {
        SubsetVertex { y, members: t.fiber(y).clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// The reachable part of `G` (forward) or `G'` (backward).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetGraph {
    pub direction: Direction,
    pub vertices: BTreeSet<SubsetVertex>,
    pub edges: BTreeSet<(SubsetVertex, SubsetVertex)>,
}

pub fn forward_successor(t: &FactorTriple, a: &SubsetVertex, next: usize) -> Option<SubsetVertex> {
    let mut members = SymbolSet::empty(t.nx());
    for s in a.members.iter() {
        members.union_with(t.x().successors(s));
    }
    members.intersect_with(t.fiber(next));
    (!members.is_empty()).then_some(SubsetVertex { y: next, members })
}

pub fn backward_predecessor(t: &FactorTriple, a: &SubsetVertex, prev: usize) -> Option<SubsetVertex> {
    let mut members = SymbolSet::empty(t.nx());
    for s in a.members.iter() {
        members.union_with(t.x().predecessors(s));
    }
    members.intersect_with(t.fiber(prev));
    (!members.is_empty()).then_some(SubsetVertex { y: prev, members })
}

/// Closure of the full fibers, each vertex tagged with its shortest, then
/// lexicographically least, label word.
fn closure(t: &FactorTriple, direction: Direction) -> BTreeMap<SubsetVertex, Vec<usize>> {
    let mut found: BTreeMap<SubsetVertex, Vec<usize>> = BTreeMap::new();
    let mut frontier: BTreeMap<SubsetVertex, Vec<usize>> =
        (0..t.ny()).map(|y| (SubsetVertex::full_fiber(t, y), vec![y])).collect();
    while !frontier.is_empty() {
        let mut next: BTreeMap<SubsetVertex, Vec<usize>> = BTreeMap::new();
        for (v, word) in &frontier {
            for b in 0..t.ny() {
                let (w, step) = match direction {
                    Direction::Forward => {
                        let mut w = word.clone();
                        w.push(b);
                        (w, forward_successor(t, v, b))
                    }
                    Direction::Backward => {
                        let mut w = Vec::with_capacity(word.len() + 1);
                        w.push(b);
                        w.extend_from_slice(word);
                        (w, backward_predecessor(t, v, b))
                    }
                };
                let Some(u) = step else { continue };
                if found.contains_key(&u) || frontier.contains_key(&u) {
                    continue;
                }
                match next.get_mut(&u) {
                    Some(existing) if w < *existing => *existing = w,
                    Some(_) => {}
                    None => {
                        next.insert(u, w);
                    }
                }
            }
        }
        found.append(&mut frontier);
        frontier = next;
    }
    found
}

/// `S`: vertices reachable in `G` from a full fiber (paths of length 0 count).
pub fn reachable_s(t: &FactorTriple) -> BTreeSet<SubsetVertex> {
    closure(t, Direction::Forward).into_keys().collect()
}

/// `S'`: vertices from which a full fiber is reachable in `G'`.
pub fn coreachable_s_prime(t: &FactorTriple) -> BTreeSet<SubsetVertex> {
    closure(t, Direction::Backward).into_keys().collect()
}

pub fn subset_graph(t: &FactorTriple, direction: Direction) -> SubsetGraph {
    let vertices: BTreeSet<SubsetVertex> = closure(t, direction).into_keys().collect();
    let mut edges = BTreeSet::new();
    for v in &vertices {
        for b in 0..t.ny() {
            match direction {
                Direction::Forward => {
                    if let Some(u) = forward_successor(t, v, b) {
                        edges.insert((v.clone(), u));
                    }
                }
                Direction::Backward => {
                    if let Some(u) = backward_predecessor(t, v, b) {
                        edges.insert((u, v.clone()));
                    }
                }
            }
        }
    }
    SubsetGraph { direction, vertices, edges }
}

/// A `Y` word and coordinate whose fiber set has the claimed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicBlockCert {
    pub word: Vec<usize>,
    pub coordinate: usize,
    pub witness: SymbolSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    pub degree: usize,
    pub certificate: MagicBlockCert,
    pub s_size: usize,
    pub s_prime_size: usize,
}

impl Degree {
    /// Word-length horizon at which the brute-force minimum must already
    /// agree with the degree.
    pub fn oracle_horizon(&self) -> usize {
        2 * (self.s_size + self.s_prime_size) + 2
    }
}

pub fn degree(t: &FactorTriple) -> Result<Degree, DegreeError> {
    if !t.x().is_irreducible() {
        return Err(DegreeError::NotIrreducible);
    }
    if let Some(d) = find_diamond(t) {
        return Err(DegreeError::NotFiniteToOne(d));
    }
    let forward = closure(t, Direction::Forward);
    let backward = closure(t, Direction::Backward);

    let mut best: Option<(usize, &SubsetVertex, &SubsetVertex, SymbolSet)> = None;
    for a in forward.keys() {
        for b in backward.keys().filter(|b| b.y == a.y) {
            let meet = a.members.intersection(&b.members);
            if meet.is_empty() {
                continue;
            }
            // keys iterate in (y, members) order, so the first hit of a size wins ties
            if best.as_ref().is_none_or(|(n, ..)| meet.len() < *n) {
                best = Some((meet.len(), a, b, meet));
            }
        }
    }
    let (d, a, b, witness) = best.expect("full fibers of the same letter always meet");
    let prefix = &forward[a];
    let suffix = &backward[b];
    let mut word = prefix.clone();
    word.extend_from_slice(&suffix[1..]);
    let certificate = MagicBlockCert { word, coordinate: prefix.len() - 1, witness };
    debug_assert!(verify_magic_cert(t, &certificate, d));
    Ok(Degree { degree: d, certificate, s_size: forward.len(), s_prime_size: backward.len() })
}

pub fn verify_magic_cert(t: &FactorTriple, cert: &MagicBlockCert, d: usize) -> bool {
    let Ok(sets) = fiber_sets(t, &cert.word) else { return false };
    let Some(set) = sets.get(cert.coordinate) else { return false };
    set.len() == d && *set == cert.witness
}
