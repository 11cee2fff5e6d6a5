//! Higher-block presentations.

use std::collections::{HashMap, HashSet};

use crate::error::TripleError;
use crate::triple::{FactorTriple, ShiftOfFiniteType};

/// The block map realizing the conjugacy between a triple and its higher-block
/// presentation: new symbol `i` stands for the original word `words[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockConjugacy {
    pub block_len: usize,
    pub words: Vec<Vec<usize>>,
}

impl BlockConjugacy {
    /// Image of an original `X` word (length ≥ `block_len`) under the sliding
    /// block map.
    pub fn encode(&self, word: &[usize]) -> Option<Vec<usize>> {
        if word.len() < self.block_len {
            return None;
        }
        let index: HashMap<&[usize], usize> =
            self.words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        word.windows(self.block_len).map(|w| index.get(w).copied()).collect()
    }

    /// Inverse one-block map: each block symbol back to its first letter.
    pub fn decode(&self, word: &[usize]) -> Vec<usize> {
        word.iter().map(|&i| self.words[i][0]).collect()
    }
}

fn legal_words(x: &ShiftOfFiniteType, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..x.len()).rev().map(|a| vec![a]).collect();
    while let Some(w) = stack.pop() {
        if w.len() == k {
            out.push(w);
            continue;
        }
        let last = *w.last().unwrap();
        let succ: Vec<usize> = x.successors(last).iter().collect();
        for &b in succ.iter().rev() {
            let mut w2 = w.clone();
            w2.push(b);
            stack.push(w2);
        }
    }
    out
}

fn block_names(x: &ShiftOfFiniteType, words: &[Vec<usize>]) -> Vec<String> {
    for sep in ["", "."] {
        let names: Vec<String> =
            words.iter().map(|w| w.iter().map(|&a| x.name(a)).collect::<Vec<_>>().join(sep)).collect();
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() == names.len() {
            return names;
        }
    }
    (0..words.len()).map(|i| format!("w{i}")).collect()
}

/// The `k`-th higher-block triple. Symbols are the legal `k`-words in
/// lexicographic order; `u>v` is allowed iff `u` and `v` overlap in `k-1`
/// letters; each block maps to the image of its first letter.
pub fn higher_block_recode(
    t: &FactorTriple,
    k: usize,
) -> Result<(FactorTriple, BlockConjugacy), TripleError> {
    if k == 0 {
        return Err(TripleError::BadBlockLength(k));
    }
    if k == 1 {
        let words = (0..t.nx()).map(|a| vec![a]).collect();
        return Ok((t.clone(), BlockConjugacy { block_len: 1, words }));
    }
    let words = legal_words(t.x(), k);
    let by_prefix: HashMap<&[usize], Vec<usize>> = words.iter().enumerate().fold(
        HashMap::new(),
        |mut m, (i, w)| {
            m.entry(&w[..k - 1]).or_insert_with(Vec::new).push(i);
            m
        },
    );
    let mut edges = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if let Some(next) = by_prefix.get(&w[1..]) {
            edges.extend(next.iter().map(|&j| (i, j)));
        }
    }
    let names = block_names(t.x(), &words);
    let x = ShiftOfFiniteType::new(names, &edges)?;
    let labels = words.iter().map(|w| t.y_name(t.code(w[0])).to_string()).collect();
    let recoded = FactorTriple::new(x, labels)?;
    Ok((recoded, BlockConjugacy { block_len: k, words }))
}
