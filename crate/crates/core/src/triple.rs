//! Shifts of finite type, one-block factor codes, and their normalization.
//!
//! Symbols are addressed by index into the canonical (declaration) order.
//! Every ordered iteration in the crate follows that order.

use std::collections::HashSet;

use crate::error::TripleError;
use crate::set::SymbolSet;

/// Checks the token rules for symbol names: nonempty, printable, and free of
/// whitespace and the reserved characters `>`, `:`, `#`.
pub fn is_valid_symbol_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !c.is_control() && !matches!(c, '>' | ':' | '#'))
}

/// A one-step vertex shift: a symbol alphabet plus the allowed two-letter words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftOfFiniteType {
    names: Vec<String>,
    succ: Vec<SymbolSet>,
    pred: Vec<SymbolSet>,
}

impl ShiftOfFiniteType {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, TripleError> {
        if names.is_empty() {
            return Err(TripleError::EmptyAlphabet);
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !is_valid_symbol_name(n) {
                return Err(TripleError::InvalidSymbol(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(TripleError::DuplicateSymbol(n.clone()));
            }
        }
        let len = names.len();
        let mut succ = vec![SymbolSet::empty(len); len];
        let mut pred = vec![SymbolSet::empty(len); len];
        for &(u, v) in edges {
            if u >= len || v >= len {
                return Err(TripleError::UnknownSymbol(format!("#{}", u.max(v))));
            }
            succ[u].insert(v);
            pred[v].insert(u);
        }
        Ok(ShiftOfFiniteType { names, succ, pred })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn allowed(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn successors(&self, a: usize) -> &SymbolSet {
        &self.succ[a]
    }

    pub fn predecessors(&self, a: usize) -> &SymbolSet {
        &self.pred[a]
    }

    /// Allowed pairs in (source, target) canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.succ[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(SymbolSet::len).sum()
    }

    /// Every symbol has an allowed successor and an allowed predecessor.
    pub fn is_essential(&self) -> bool {
        (0..self.len()).all(|a| !self.succ[a].is_empty() && !self.pred[a].is_empty())
    }

    /// Strong connectivity of the transition graph.
    pub fn is_irreducible(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let all = |next: &[SymbolSet]| {
            let mut seen = SymbolSet::empty(self.len());
            let mut stack = vec![0];
            seen.insert(0);
            while let Some(a) = stack.pop() {
                for b in next[a].iter() {
                    if !seen.contains(b) {
                        seen.insert(b);
                        stack.push(b);
                    }
                }
            }
            seen.len() == self.len()
        };
        all(&self.succ) && all(&self.pred)
    }
}

/// An SFT `X`, a symbol-to-symbol code map, and the image alphabet `Y`.
///
/// `Y` is always the image of the map, listed in order of first appearance
/// along the canonical `X` order, so the code is onto by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorTriple {
    x: ShiftOfFiniteType,
    code: Vec<usize>,
    y_names: Vec<String>,
    fibers: Vec<SymbolSet>,
}

impl FactorTriple {
    /// Builds a triple from an SFT and one `Y` label per `X` symbol.
    pub fn new(x: ShiftOfFiniteType, labels: Vec<String>) -> Result<Self, TripleError> {
        if labels.len() != x.len() {
            let missing = x.names().get(labels.len()).cloned().unwrap_or_default();
            return Err(TripleError::MissingMapEntry(missing));
        }
        let mut y_names: Vec<String> = Vec::new();
        let mut code = Vec::with_capacity(labels.len());
        for label in labels {
            if !is_valid_symbol_name(&label) {
                return Err(TripleError::InvalidSymbol(label));
            }
            let idx = match y_names.iter().position(|n| *n == label) {
                Some(i) => i,
                None => {
                    y_names.push(label);
                    y_names.len() - 1
                }
            };
            code.push(idx);
        }
        let mut fibers = vec![SymbolSet::empty(x.len()); y_names.len()];
        for (a, &b) in code.iter().enumerate() {
            fibers[b].insert(a);
        }
        Ok(FactorTriple { x, code, y_names, fibers })
    }

    pub fn x(&self) -> &ShiftOfFiniteType {
        &self.x
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y_names.len()
    }

    pub fn y_names(&self) -> &[String] {
        &self.y_names
    }

    pub fn y_name(&self, b: usize) -> &str {
        &self.y_names[b]
    }

    pub fn y_index_of(&self, name: &str) -> Option<usize> {
        self.y_names.iter().position(|n| n == name)
    }

    /// Image of an `X` symbol.
    pub fn code(&self, a: usize) -> usize {
        self.code[a]
    }

    pub fn code_map(&self) -> &[usize] {
        &self.code
    }

    /// The fiber of `b`: all `X` symbols mapping to it.
    pub fn fiber(&self, b: usize) -> &SymbolSet {
        &self.fibers[b]
    }

    pub fn fibers(&self) -> &[SymbolSet] {
        &self.fibers
    }

    /// Largest fiber cardinality.
    pub fn max_fiber(&self) -> usize {
        self.fibers.iter().map(SymbolSet::len).max().unwrap_or(0)
    }

    /// Whether `bb'` has an allowed preimage pair.
    pub fn y_pair_allowed(&self, b: usize, b2: usize) -> bool {
        self.fibers[b].iter().any(|a| !self.x.successors(a).is_disjoint(&self.fibers[b2]))
    }

    /// Letterwise image of an `X` word.
    pub fn image(&self, word: &[usize]) -> Vec<usize> {
        word.iter().map(|&a| self.code[a]).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.x.is_essential()
    }
}

/// Removes dead-end symbols until every remaining symbol has an allowed
/// successor and predecessor. `Y` is recomputed from the surviving image.
pub fn normalize(t: &FactorTriple) -> Result<FactorTriple, TripleError> {
    let n = t.nx();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            let has_succ = t.x.successors(a).iter().any(|b| alive[b]);
            let has_pred = t.x.predecessors(a).iter().any(|b| alive[b]);
            if !has_succ || !has_pred {
                alive[a] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if alive.iter().all(|&v| v) {
        return Ok(t.clone());
    }
    let kept: Vec<usize> = (0..n).filter(|&a| alive[a]).collect();
    if kept.is_empty() {
        return Err(TripleError::EmptyShift);
    }
    restrict(t, &kept)
}

/// The subtriple on `kept` (ascending indices), with induced edges.
pub(crate) fn restrict(t: &FactorTriple, kept: &[usize]) -> Result<FactorTriple, TripleError> {
    let mut new_index = vec![usize::MAX; t.nx()];
    for (i, &a) in kept.iter().enumerate() {
        new_index[a] = i;
    }
    let names = kept.iter().map(|&a| t.x.name(a).to_string()).collect();
    let edges: Vec<(usize, usize)> = t
        .x
        .edges()
        .into_iter()
        .filter(|&(u, v)| new_index[u] != usize::MAX && new_index[v] != usize::MAX)
        .map(|(u, v)| (new_index[u], new_index[v]))
        .collect();
    let x = ShiftOfFiniteType::new(names, &edges)?;
    let labels = kept.iter().map(|&a| t.y_name(t.code(a)).to_string()).collect();
    FactorTriple::new(x, labels)
}

/// Convenience constructor from string slices; used heavily by tests.
pub fn triple_from_strs(
    x_names: &[&str],
    edges: &[(&str, &str)],
    map: &[(&str, &str)],
) -> Result<FactorTriple, TripleError> {
    let names: Vec<String> = x_names.iter().map(|s| s.to_string()).collect();
    ShiftOfFiniteType::new(names.clone(), &[])?;
    let idx = |s: &str| {
        names.iter().position(|n| n == s).ok_or_else(|| TripleError::UnknownSymbol(s.to_string()))
    };
    let mut e = Vec::new();
    for (u, v) in edges {
        e.push((idx(u)?, idx(v)?));
    }
    let mut labels: Vec<Option<String>> = vec![None; names.len()];
    for (a, b) in map {
        let i = idx(a)?;
        if labels[i].is_some() {
            return Err(TripleError::DuplicateMapEntry(a.to_string()));
        }
        labels[i] = Some(b.to_string());
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| TripleError::MissingMapEntry(names[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let x = ShiftOfFiniteType::new(names, &e)?;
    FactorTriple::new(x, labels)
}
