//! Exact minimum hitting sets over small universes.

use itertools::Itertools;

use crate::set::SymbolSet;

/// The lexicographically least hitting set of minimum size, if one of size at
/// most `cap` exists. An empty family is hit by the empty set; a family that
/// contains the empty set cannot be hit.
///
/// Elements forced by singleton sets are taken first. Because forced elements
/// belong to every hitting set, this does not disturb the tie-break: sets of
/// equal size compare by the least element of their symmetric difference.
pub fn min_hitting_set(universe: usize, sets: &[SymbolSet], cap: Option<usize>) -> Option<SymbolSet> {
    if sets.iter().any(SymbolSet::is_empty) {
        return None;
    }
    let cap = cap.unwrap_or(universe);
    let mut chosen = SymbolSet::empty(universe);
    for s in sets.iter().filter(|s| s.len() == 1) {
        chosen.union_with(s);
    }
    if chosen.len() > cap {
        return None;
    }
    let mut rest: Vec<&SymbolSet> = sets.iter().filter(|s| s.is_disjoint(&chosen)).collect();
    if rest.is_empty() {
        return Some(chosen);
    }
    rest.sort();
    rest.dedup();
    let mut candidates = SymbolSet::empty(universe);
    for s in &rest {
        candidates.union_with(s);
    }
    let candidates = candidates.to_vec();
    let budget = (cap - chosen.len()).min(candidates.len());
    let lower = disjoint_packing(&rest);
    for k in lower.max(1)..=budget {
        for combo in candidates.iter().copied().combinations(k) {
            if rest.iter().all(|s| combo.iter().any(|&m| s.contains(m))) {
                for m in combo {
                    chosen.insert(m);
                }
                return Some(chosen);
            }
        }
    }
    None
}

/// Size of a greedily built family of pairwise disjoint members; a lower
/// bound on any hitting set.
fn disjoint_packing(sets: &[&SymbolSet]) -> usize {
    let mut by_size: Vec<&SymbolSet> = sets.to_vec();
    by_size.sort_by_key(|s| s.len());
    let mut used: Option<SymbolSet> = None;
    let mut count = 0;
    for s in by_size {
        match &mut used {
            None => {
                used = Some(s.clone());
                count = 1;
            }
            Some(u) if u.is_disjoint(s) => {
                u.union_with(s);
                count += 1;
            }
            Some(_) => {}
        }
    }
    count
}

/// Size of a greedy hitting set (most-covering element first, lowest index on
/// ties); an upper bound on the minimum. `None` when some set is empty.
pub fn greedy_hitting_set_size(universe: usize, sets: &[SymbolSet]) -> Option<usize> {
    if sets.iter().any(SymbolSet::is_empty) {
        return None;
    }
    let mut open: Vec<&SymbolSet> = sets.iter().collect();
    let mut size = 0;
    while !open.is_empty() {
        let best = (0..universe).max_by_key(|&m| {
            (open.iter().filter(|s| s.contains(m)).count(), std::cmp::Reverse(m))
        })?;
        open.retain(|s| !s.contains(best));
        size += 1;
    }
    Some(size)
}
