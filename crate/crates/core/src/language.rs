//! Membership and preimages of `Y` words.

use crate::error::WordError;
use crate::set::SymbolSet;
use crate::triple::FactorTriple;

fn check_letters(t: &FactorTriple, word: &[usize]) -> Result<(), WordError> {
    if word.is_empty() {
        return Err(WordError::Empty);
    }
    match word.iter().find(|&&b| b >= t.ny()) {
        Some(&b) => Err(WordError::BadSymbol(b)),
        None => Ok(()),
    }
}

/// Ending symbols of preimages of each prefix: position `i` holds the symbols
/// `a` such that some preimage of `word[..=i]` ends in `a`.
pub fn forward_trace(t: &FactorTriple, word: &[usize]) -> Vec<SymbolSet> {
    let mut out: Vec<SymbolSet> = Vec::with_capacity(word.len());
    for (i, &b) in word.iter().enumerate() {
        let set = if i == 0 {
            t.fiber(b).clone()
        } else {
            let mut next = SymbolSet::empty(t.nx());
            for a in out[i - 1].iter() {
                next.union_with(t.x().successors(a));
            }
            next.intersect_with(t.fiber(b));
            next
        };
        out.push(set);
    }
    out
}

/// Starting symbols of preimages of each suffix `word[i..]`.
pub fn backward_trace(t: &FactorTriple, word: &[usize]) -> Vec<SymbolSet> {
    let n = word.len();
    let mut out = vec![SymbolSet::empty(t.nx()); n];
    for i in (0..n).rev() {
        out[i] = if i + 1 == n {
            t.fiber(word[i]).clone()
        } else {
            let mut prev = SymbolSet::empty(t.nx());
            for a in out[i + 1].iter() {
                prev.union_with(t.x().predecessors(a));
            }
            prev.intersect_with(t.fiber(word[i]));
            prev
        };
    }
    out
}

/// The position-wise symbol sets of all preimages of `word`.
///
/// Errors exactly when `word` is not a word of `Y`.
pub fn fiber_sets(t: &FactorTriple, word: &[usize]) -> Result<Vec<SymbolSet>, WordError> {
    check_letters(t, word)?;
    let fwd = forward_trace(t, word);
    if let Some(position) = fwd.iter().position(SymbolSet::is_empty) {
        return Err(WordError::NotAWord { position });
    }
    let bwd = backward_trace(t, word);
    Ok(fwd.into_iter().zip(bwd).map(|(f, b)| f.intersection(&b)).collect())
}

pub fn is_y_word(t: &FactorTriple, word: &[usize]) -> bool {
    fiber_sets(t, word).is_ok()
}

/// All legal `X` words whose image is `word`, in lexicographic order.
///
/// Output size can be exponential in `word.len()`.
pub fn preimage_blocks(t: &FactorTriple, word: &[usize]) -> Vec<Vec<usize>> {
    if word.is_empty() || word.iter().any(|&b| b >= t.ny()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(word.len());
    extend_preimages(t, word, &mut current, &mut out);
    out
}

fn extend_preimages(
    t: &FactorTriple,
    word: &[usize],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = current.len();
    if i == word.len() {
        out.push(current.clone());
        return;
    }
    for a in t.fiber(word[i]).iter() {
        if i > 0 && !t.x().allowed(current[i - 1], a) {
            continue;
        }
        current.push(a);
        extend_preimages(t, word, current, out);
        current.pop();
    }
}

/// Every `Y` word of exactly `len` letters, in lexicographic order.
pub fn y_words_of_length(t: &FactorTriple, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut stack: Vec<(Vec<usize>, SymbolSet)> =
        (0..t.ny()).rev().map(|b| (vec![b], t.fiber(b).clone())).collect();
    while let Some((w, ends)) = stack.pop() {
        if w.len() == len {
            out.push(w);
            continue;
        }
        let mut follow = SymbolSet::empty(t.nx());
        for a in ends.iter() {
            follow.union_with(t.x().successors(a));
        }
        for b in (0..t.ny()).rev() {
            let next = follow.intersection(t.fiber(b));
            if !next.is_empty() {
                let mut w2 = w.clone();
                w2.push(b);
                stack.push((w2, next));
            }
        }
    }
    out
}
