//! Finite-to-one testing by diamond detection on the pair graph.
//!
//! States are ordered pairs of `X` symbols with equal image. A diamond is a
//! pair-graph path that starts and ends on the diagonal and leaves it in
//! between; the code is finite-to-one iff no such path exists.

use std::collections::{BTreeMap, HashSet};

use crate::triple::FactorTriple;

/// Two distinct `X` words with equal image and equal endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diamond {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Diamond {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn is_valid(&self, t: &FactorTriple) -> bool {
        let (l, r) = (&self.left, &self.right);
        let legal = |w: &[usize]| w.windows(2).all(|p| t.x().allowed(p[0], p[1]));
        l.len() == r.len()
            && l.len() >= 3
            && legal(l)
            && legal(r)
            && t.image(l) == t.image(r)
            && l[0] == r[0]
            && l[l.len() - 1] == r[r.len() - 1]
            && l != r
    }
}

type Path = Vec<(usize, usize)>;

/// A shortest diamond, least in lexicographic order of its pair sequence, or
/// `None` when the code is finite-to-one.
pub fn find_diamond(t: &FactorTriple) -> Option<Diamond> {
    let x = t.x();
    let mut seen: HashSet<(usize, usize, bool)> = HashSet::new();
    let mut frontier: BTreeMap<(usize, usize, bool), Path> = BTreeMap::new();
    for a in 0..t.nx() {
        seen.insert((a, a, false));
        frontier.insert((a, a, false), vec![(a, a)]);
    }
    while !frontier.is_empty() {
        let mut next: BTreeMap<(usize, usize, bool), Path> = BTreeMap::new();
        let mut best: Option<Path> = None;
        for (&(a, a2, off), path) in &frontier {
            for b in x.successors(a).iter() {
                for b2 in x.successors(a2).iter() {
                    if t.code(b) != t.code(b2) {
                        continue;
                    }
                    let flag = off || b != b2;
                    let mut p = path.clone();
                    p.push((b, b2));
                    if flag && b == b2 {
                        if best.as_ref().is_none_or(|q| p < *q) {
                            best = Some(p);
                        }
                        continue;
                    }
                    let key = (b, b2, flag);
                    if seen.contains(&key) {
                        continue;
                    }
                    next.entry(key)
                        .and_modify(|q| {
                            if p < *q {
                                *q = p.clone();
                            }
                        })
                        .or_insert(p);
                }
            }
        }
        if let Some(p) = best {
            let (left, right) = p.into_iter().unzip();
            return Some(Diamond { left, right });
        }
        for k in next.keys() {
            seen.insert(*k);
        }
        frontier = next;
    }
    None
}

pub fn is_finite_to_one(t: &FactorTriple) -> bool {
    find_diamond(t).is_none()
}
