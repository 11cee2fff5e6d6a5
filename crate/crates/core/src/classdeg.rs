//! Class degree through endpoint pairings.
//!
//! The pairing of a `Y` word `w` is the relation `{(U_0, U_last)}` over all
//! preimage blocks `U` of `w`. For a one-step SFT, pairings compose along
//! joined words, and a block `(W, n, M)` is a transition block exactly when
//! every endpoint pair of `W` has a route `(a, m, c)` with `m ∈ M`, where
//! `(a, m)` is in the pairing of the prefix up to `n` and `(m, c)` in that of
//! the suffix from `n`. So the least depth depends only on the two half
//! pairings, and the set of pairings reachable by extension is finite.
//!
//! The search enumerates that reachable set, then takes the minimum exact
//! routing set over every composable pair.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::error::{PairingError, WordError};
use crate::exec::Exec;
use crate::hitting::{greedy_hitting_set_size, min_hitting_set};
use crate::set::SymbolSet;
use crate::triple::FactorTriple;

/// A binary relation on `X` symbols stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<SymbolSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![SymbolSet::empty(n); n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.rows[a].insert(b);
        }
        r
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn row(&self, a: usize) -> &SymbolSet {
        &self.rows[a]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(SymbolSet::is_empty)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(SymbolSet::len).sum()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows.iter().enumerate().flat_map(|(a, r)| r.iter().map(move |b| (a, b))).collect()
    }

    pub fn domain(&self) -> SymbolSet {
        let n = self.rows.len();
        SymbolSet::from_indices(n, (0..n).filter(|&a| !self.rows[a].is_empty()))
    }

    pub fn range(&self) -> SymbolSet {
        let mut out = SymbolSet::empty(self.rows.len());
        for r in &self.rows {
            out.union_with(r);
        }
        out
    }

    /// `self` followed by `next`: `{(a, c) : (a, m) ∈ self, (m, c) ∈ next}`.
    pub fn then(&self, next: &Relation) -> Relation {
        let n = self.rows.len();
        let mut out = Relation::empty(n);
        for (a, row) in self.rows.iter().enumerate() {
            for m in row.iter() {
                out.rows[a].union_with(&next.rows[m]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Relation {
        let n = self.rows.len();
        let mut out = Relation::empty(n);
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.iter() {
                out.rows[b].insert(a);
            }
        }
        out
    }
}

/// The endpoint pairing of a witness word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairingRelation {
    pub first_y: usize,
    pub last_y: usize,
    pub relation: Relation,
    pub witness: Vec<usize>,
}

impl PairingRelation {
    pub fn steps(&self) -> usize {
        self.witness.len() - 1
    }

    /// Identity of the pairing, ignoring its witness.
    pub fn form(&self) -> (usize, usize, &Relation) {
        (self.first_y, self.last_y, &self.relation)
    }
}

/// `{(a, a') : aa' allowed, a over b, a' over b'}`.
pub fn edge_relation(t: &FactorTriple, b: usize, b2: usize) -> Relation {
    let mut r = Relation::empty(t.nx());
    for a in t.fiber(b).iter() {
        r.rows[a] = t.x().successors(a).intersection(t.fiber(b2));
    }
    r
}

pub fn word_pairing(t: &FactorTriple, w: &[usize]) -> Result<PairingRelation, PairingError> {
    if w.len() < 2 {
        return Err(PairingError::TooShort(w.len()));
    }
    if let Some(&b) = w.iter().find(|&&b| b >= t.ny()) {
        return Err(WordError::BadSymbol(b).into());
    }
    let mut rel = edge_relation(t, w[0], w[1]);
    if rel.is_empty() {
        return Err(WordError::NotAWord { position: 1 }.into());
    }
    for (i, pair) in w.windows(2).enumerate().skip(1) {
        rel = rel.then(&edge_relation(t, pair[0], pair[1]));
        if rel.is_empty() {
            return Err(WordError::NotAWord { position: i + 1 }.into());
        }
    }
    Ok(PairingRelation { first_y: w[0], last_y: w[w.len() - 1], relation: rel, witness: w.to_vec() })
}

/// Composes two pairings along a shared junction letter.
pub fn join_pairings(
    r1: &PairingRelation,
    r2: &PairingRelation,
) -> Result<PairingRelation, PairingError> {
    if r1.last_y != r2.first_y {
        return Err(PairingError::JunctionMismatch { left: r1.last_y, right: r2.first_y });
    }
    let relation = r1.relation.then(&r2.relation);
    if relation.is_empty() {
        return Err(PairingError::EmptyComposition);
    }
    let mut witness = r1.witness.clone();
    witness.extend_from_slice(&r2.witness[1..]);
    Ok(PairingRelation { first_y: r1.first_y, last_y: r2.last_y, relation, witness })
}

/// Every pairing realized by a `Y` word of length ≥ 2, each with its
/// shortest (then lexicographically least) witness, in witness order.
pub fn achievable_pairings(t: &FactorTriple) -> Vec<PairingRelation> {
    let ny = t.ny();
    let edges: Vec<Vec<Relation>> =
        (0..ny).map(|b| (0..ny).map(|b2| edge_relation(t, b, b2)).collect()).collect();
    let mut seen: HashSet<(usize, usize, Relation)> = HashSet::new();
    let mut out: Vec<PairingRelation> = Vec::new();
    let mut frontier: Vec<PairingRelation> = Vec::new();
    for (b, row) in edges.iter().enumerate() {
        for (b2, rel) in row.iter().enumerate() {
            if !rel.is_empty() && seen.insert((b, b2, rel.clone())) {
                frontier.push(PairingRelation {
                    first_y: b,
                    last_y: b2,
                    relation: rel.clone(),
                    witness: vec![b, b2],
                });
            }
        }
    }
    // frontier stays sorted by witness, and appending letters in order keeps
    // the next level sorted, so first discovery is the least witness
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for (b, step) in edges[p.last_y].iter().enumerate() {
                let rel = p.relation.then(step);
                if rel.is_empty() {
                    continue;
                }
                if !seen.insert((p.first_y, b, rel.clone())) {
                    continue;
                }
                let mut witness = p.witness.clone();
                witness.push(b);
                next.push(PairingRelation { first_y: p.first_y, last_y: b, relation: rel, witness });
            }
        }
        out.append(&mut frontier);
        frontier = next;
    }
    out
}

/// For each composed endpoint pair `(a, c)`, the set of middles `m` with
/// `(a, m) ∈ r1` and `(m, c) ∈ r2`.
fn route_sets(r1: &Relation, r2: &Relation) -> Vec<SymbolSet> {
    let cols = r2.transpose();
    let comp = r1.then(r2);
    comp.pairs().into_iter().map(|(a, c)| r1.row(a).intersection(cols.row(c))).collect()
}

/// The smallest set of middles covering every route of the composition, least
/// in lexicographic order among those of minimum size; `None` when the
/// composition is empty.
pub fn min_routing_set(
    r1: &PairingRelation,
    r2: &PairingRelation,
) -> Result<Option<SymbolSet>, PairingError> {
    if r1.last_y != r2.first_y {
        return Err(PairingError::JunctionMismatch { left: r1.last_y, right: r2.first_y });
    }
    let sets = route_sets(&r1.relation, &r2.relation);
    if sets.is_empty() {
        return Ok(None);
    }
    let n = r1.relation.rows.len();
    Ok(min_hitting_set(n, &sets, None))
}

/// A transition block `(word, n, M)`: every preimage of `word` can be
/// rerouted through a member of `M` at position `n`, keeping its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionBlockCert {
    pub word: Vec<usize>,
    pub n: usize,
    pub routing: SymbolSet,
}

impl TransitionBlockCert {
    pub fn depth(&self) -> usize {
        self.routing.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDegree {
    pub class_degree: usize,
    pub certificate: TransitionBlockCert,
    /// Set when `X` is reducible; the value is still the least depth of a
    /// transition block.
    pub reducible_warning: bool,
    pub pairing_count: usize,
}

pub fn class_degree(t: &FactorTriple) -> ClassDegree {
    class_degree_with(t, Exec::default())
}

/// Sort key of a candidate certificate among those of equal depth: joined
/// length, then joined word, then routing coordinate.
fn candidate_key(p: &[usize], s: &[usize]) -> (usize, Vec<usize>, usize) {
    let word: Vec<usize> = p.iter().chain(s[1..].iter()).copied().collect();
    (word.len(), word, p.len())
}

/// Least middle lying on every route of the composition.
fn common_middle(r1: &Relation, r2: &Relation, cols2: &Relation) -> Option<usize> {
    let mut common: Option<SymbolSet> = None;
    for (a, c) in r1.then(r2).pairs() {
        let routes = r1.row(a).intersection(cols2.row(c));
        match &mut common {
            None => common = Some(routes),
            Some(m) => m.intersect_with(&routes),
        }
        if common.as_ref().is_some_and(SymbolSet::is_empty) {
            return None;
        }
    }
    common?.iter().next()
}

const SCAN_CHUNK: usize = 4096;

pub fn class_degree_with(t: &FactorTriple, exec: Exec) -> ClassDegree {
    let pairings = achievable_pairings(t);
    let n = t.nx();
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); t.ny()];
    for (j, p) in pairings.iter().enumerate() {
        by_first[p.first_y].push(j);
    }
    let mut pairs: Vec<(usize, usize)> = pairings
        .iter()
        .enumerate()
        .flat_map(|(i, p)| by_first[p.last_y].iter().map(move |&j| (i, j)))
        .collect();
    pairs.sort_by_cached_key(|&(i, j)| candidate_key(&pairings[i].witness, &pairings[j].witness));
    let cols: Vec<Relation> = pairings.iter().map(|p| p.relation.transpose()).collect();

    let finish = |(i, j): (usize, usize), routing: SymbolSet| {
        let c = routing.len();
        let mut word = pairings[i].witness.clone();
        word.extend_from_slice(&pairings[j].witness[1..]);
        let certificate = TransitionBlockCert { word, n: pairings[i].steps(), routing };
        debug_assert!(verify_transition_cert(t, &certificate, c));
        ClassDegree {
            class_degree: c,
            certificate,
            reducible_warning: !t.x().is_irreducible(),
            pairing_count: pairings.len(),
        }
    };

    // depth 1 is the floor, so the first candidate reaching it wins outright
    for chunk in pairs.chunks(SCAN_CHUNK) {
        let hits = exec.map(chunk, |&(i, j)| common_middle(&pairings[i].relation, &pairings[j].relation, &cols[j]));
        if let Some((k, m)) = hits.into_iter().enumerate().find_map(|(k, m)| m.map(|m| (k, m))) {
            return finish(chunk[k], SymbolSet::from_indices(n, [m]));
        }
    }

    let routes = |&(i, j): &(usize, usize)| route_sets(&pairings[i].relation, &pairings[j].relation);
    let upper = exec
        .map(&pairs, |ij| {
            let sets = routes(ij);
            if sets.is_empty() {
                None
            } else {
                greedy_hitting_set_size(n, &sets)
            }
        })
        .into_iter()
        .flatten()
        .min()
        .expect("every Y letter pair extends to a composable pairing pair");

    let exact = exec.map(&pairs, |ij| {
        let sets = routes(ij);
        if sets.is_empty() {
            None
        } else {
            min_hitting_set(n, &sets, Some(upper))
        }
    });

    // pairs are in candidate order, so the first of least size wins ties
    let mut best: Option<(usize, SymbolSet)> = None;
    for (k, m) in exact.into_iter().enumerate() {
        let Some(m) = m else { continue };
        if best.as_ref().is_none_or(|(_, bm)| m.len() < bm.len()) {
            best = Some((k, m));
        }
    }
    let (k, routing) = best.expect("at least one composable pair");
    finish(pairs[k], routing)
}

pub fn verify_transition_cert(t: &FactorTriple, cert: &TransitionBlockCert, c: usize) -> bool {
    let len = cert.word.len();
    if len < 3 || cert.n == 0 || cert.n + 1 >= len || cert.routing.len() != c {
        return false;
    }
    if cert.routing.universe() != t.nx() {
        return false;
    }
    let (Ok(r1), Ok(r2)) = (word_pairing(t, &cert.word[..=cert.n]), word_pairing(t, &cert.word[cert.n..]))
    else {
        return false;
    };
    let mids = r1.relation.range().intersection(&r2.relation.domain());
    if !cert.routing.is_subset(&mids) {
        return false;
    }
    let sets = route_sets(&r1.relation, &r2.relation);
    !sets.is_empty() && sets.iter().all(|s| !s.is_disjoint(&cert.routing))
}

/// `|A(Y)| · 2^(f² + f + 1)` with `f` the largest fiber size.
pub fn theorem_length_bound(t: &FactorTriple) -> BigUint {
    let f = t.max_fiber() as u64;
    BigUint::from(t.ny()) << (f * f + f + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{preimage_blocks, y_words_of_length};
    use crate::reference::{t1, t2, t3};
    use std::collections::HashSet;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied())
    }

    fn endpoint_relation(t: &FactorTriple, w: &[usize]) -> Relation {
        Relation::from_pairs(t.nx(), preimage_blocks(t, w).iter().map(|u| (u[0], u[u.len() - 1])))
    }

    #[test]
    fn word_pairing_examples() {
        assert_eq!(word_pairing(&t1(), &[0, 1]).unwrap().relation, rel(2, &[(0, 1)]));
        assert_eq!(
            word_pairing(&t2(), &[0, 0]).unwrap().relation,
            rel(2, &[(0, 0), (0, 1), (1, 0), (1, 1)])
        );
        // T3 "00": 00>00 and 11>11
        assert_eq!(word_pairing(&t3(), &[0, 0]).unwrap().relation, rel(4, &[(0, 0), (3, 3)]));
        assert_eq!(word_pairing(&t1(), &[0]), Err(PairingError::TooShort(1)));
        assert_eq!(
            word_pairing(&t1(), &[0, 1, 1]),
            Err(PairingError::Word(WordError::NotAWord { position: 2 }))
        );
    }

    #[test]
    fn join_examples() {
        let t = t2();
        let full = word_pairing(&t, &[0, 0]).unwrap();
        let j = join_pairings(&full, &full).unwrap();
        assert_eq!(j.witness, vec![0, 0, 0]);
        assert_eq!(j.relation, full.relation);

        let t = t3();
        let a = word_pairing(&t, &[0, 0]).unwrap();
        let b = word_pairing(&t, &[0, 1]).unwrap();
        let j = join_pairings(&a, &b).unwrap();
        assert_eq!(j.witness, vec![0, 0, 1]);
        assert_eq!(j.relation, rel(4, &[(0, 1), (3, 2)]));
        assert_eq!(j.relation, endpoint_relation(&t, &[0, 0, 1]));
        assert!(matches!(join_pairings(&b, &b), Err(PairingError::JunctionMismatch { .. })));

        let t = t1();
        let ab = word_pairing(&t, &[0, 1]).unwrap();
        let ba = word_pairing(&t, &[1, 0]).unwrap();
        let j = join_pairings(&ab, &ba).unwrap();
        assert_eq!((j.witness.clone(), j.relation.clone()), (vec![0, 1, 0], rel(2, &[(0, 0)])));
        assert_eq!(join_pairings(&ba, &ba).unwrap_err(), PairingError::JunctionMismatch { left: 0, right: 1 });
        let bab = join_pairings(&ba, &ab).unwrap();
        assert_eq!(bab.witness, vec![1, 0, 1]);
    }

    #[test]
    fn join_empty_composition() {
        // "yx" only ends in a, "xy" only starts from b, so "yxy" is no word of Y
        let t = crate::triple::triple_from_strs(
            &["a", "b", "c"],
            &[("c", "a"), ("a", "a"), ("b", "b"), ("b", "c")],
            &[("a", "x"), ("b", "x"), ("c", "y")],
        )
        .unwrap();
        let yx = word_pairing(&t, &[1, 0]).unwrap();
        let xy = word_pairing(&t, &[0, 1]).unwrap();
        assert_eq!(join_pairings(&yx, &xy), Err(PairingError::EmptyComposition));
        assert_eq!(min_routing_set(&yx, &xy), Ok(None));
    }

    /// Distinct endpoint relations of all Y words of length 2..=max_len,
    /// computed from explicit preimage blocks.
    fn enumerated_forms(t: &FactorTriple, max_len: usize) -> HashSet<(usize, usize, Relation)> {
        let mut out = HashSet::new();
        for len in 2..=max_len {
            for w in y_words_of_length(t, len) {
                out.insert((w[0], w[len - 1], endpoint_relation(t, &w)));
            }
        }
        out
    }

    #[test]
    fn achievable_matches_enumeration() {
        // counts frozen from the enumeration oracle (words up to length 6)
        for (t, expect) in [(t1(), 4), (t2(), 1), (t3(), 8)] {
            let got: HashSet<_> =
                achievable_pairings(&t).into_iter().map(|p| (p.first_y, p.last_y, p.relation)).collect();
            let forms = enumerated_forms(&t, 6);
            assert_eq!(got, forms);
            assert_eq!(got.len(), expect);
        }
        for p in achievable_pairings(&t3()) {
            assert_eq!(p.relation.len(), 2);
            assert_eq!(p.relation.domain().len(), 2);
            assert_eq!(p.relation.range().len(), 2);
        }
    }

    #[test]
    fn witnesses_are_shortest_then_least() {
        for t in [t1(), t2(), t3()] {
            let ps = achievable_pairings(&t);
            for p in &ps {
                assert_eq!(word_pairing(&t, &p.witness).unwrap().relation, p.relation);
                for len in 2..=p.witness.len() {
                    for w in y_words_of_length(&t, len) {
                        if w.len() == p.witness.len() && w >= p.witness {
                            break;
                        }
                        let r = word_pairing(&t, &w).unwrap();
                        assert_ne!(r.form(), p.form(), "{w:?} beats {:?}", p.witness);
                    }
                }
            }
        }
    }

    #[test]
    fn routing_examples() {
        let t = t2();
        let full = word_pairing(&t, &[0, 0]).unwrap();
        assert_eq!(min_routing_set(&full, &full).unwrap(), Some(SymbolSet::from_indices(2, [0])));

        let t = t1();
        let ab = word_pairing(&t, &[0, 1]).unwrap();
        let ba = word_pairing(&t, &[1, 0]).unwrap();
        assert_eq!(min_routing_set(&ab, &ba).unwrap(), Some(SymbolSet::from_indices(2, [1])));
        assert!(min_routing_set(&ab, &ab).is_err());

        let t = t3();
        let id = word_pairing(&t, &[0, 0]).unwrap();
        let swap = word_pairing(&t, &[0, 1]).unwrap();
        let m = min_routing_set(&id, &swap).unwrap().unwrap();
        assert_eq!(m, SymbolSet::from_indices(4, [0, 3]));
    }

    #[test]
    fn reference_class_degrees() {
        let c2 = class_degree(&t2());
        assert_eq!(c2.class_degree, 1);
        assert_eq!(
            c2.certificate,
            TransitionBlockCert { word: vec![0, 0, 0], n: 1, routing: SymbolSet::from_indices(2, [0]) }
        );
        let c1 = class_degree(&t1());
        assert_eq!(c1.class_degree, 1);
        assert_eq!(c1.certificate.word, vec![0, 0, 0]);
        let c3 = class_degree(&t3());
        assert_eq!(c3.class_degree, 2);
        for (t, c) in [(t1(), c1), (t2(), c2), (t3(), c3)] {
            assert!(verify_transition_cert(&t, &c.certificate, c.class_degree));
            assert!(!c.reducible_warning);
            assert_eq!(class_degree_with(&t, Exec::Sequential), c);
        }
    }

    #[test]
    fn verify_rejections() {
        let t = t2();
        let p = SymbolSet::from_indices(2, [0]);
        let good = TransitionBlockCert { word: vec![0, 0, 0], n: 1, routing: p.clone() };
        assert!(verify_transition_cert(&t, &good, 1));
        let empty = TransitionBlockCert { routing: SymbolSet::empty(2), ..good.clone() };
        assert!(!verify_transition_cert(&t, &empty, 0));
        let last = TransitionBlockCert { n: 2, ..good.clone() };
        assert!(!verify_transition_cert(&t, &last, 1));
        assert!(!verify_transition_cert(&t, &good, 2));
        // T3: a single middle never covers both routes
        let t = t3();
        let one = TransitionBlockCert { word: vec![0, 0, 0], n: 1, routing: SymbolSet::from_indices(4, [0]) };
        assert!(!verify_transition_cert(&t, &one, 1));
    }

    #[test]
    fn reducible_input_is_flagged() {
        let t = crate::triple::triple_from_strs(
            &["p", "q"],
            &[("p", "p"), ("p", "q"), ("q", "q")],
            &[("p", "u"), ("q", "u")],
        )
        .unwrap();
        let c = class_degree(&t);
        assert!(c.reducible_warning);
        assert!(verify_transition_cert(&t, &c.certificate, c.class_degree));
    }

    #[test]
    fn length_bound_values() {
        assert_eq!(theorem_length_bound(&t2()), BigUint::from(128u32));
        assert_eq!(theorem_length_bound(&t1()), BigUint::from(16u32));
        assert_eq!(theorem_length_bound(&t3()), BigUint::from(256u32));
    }
}
