//! Test-side oracles. Everything here is computed from whole `X` words
//! enumerated by brute force, never from the library's traces or relations.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use factor_degree::classdeg::{join_pairings, verify_transition_cert, word_pairing};
use factor_degree::oracle::is_transition_block_by_enumeration;
use factor_degree::{FactorTriple, TransitionBlockCert};

/// Every legal `X` word of length `len`, by filtering all `nx^len` strings.
pub fn x_words(t: &FactorTriple, len: usize) -> Vec<Vec<usize>> {
    let n = t.nx();
    let total = n.checked_pow(len as u32).expect("too many strings");
    (0..total)
        .map(|mut code| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            w
        })
        .filter(|w| w.windows(2).all(|p| t.x().allowed(p[0], p[1])))
        .collect()
}

pub fn preimages(t: &FactorTriple, y: &[usize]) -> Vec<Vec<usize>> {
    x_words(t, y.len()).into_iter().filter(|u| t.image(u) == y).collect()
}

/// All `Y` words of length `len`, as images of legal `X` words.
pub fn y_words(t: &FactorTriple, len: usize) -> BTreeSet<Vec<usize>> {
    x_words(t, len).iter().map(|u| t.image(u)).collect()
}

pub fn projections(t: &FactorTriple, y: &[usize]) -> Vec<BTreeSet<usize>> {
    let pre = preimages(t, y);
    (0..y.len()).map(|i| pre.iter().map(|u| u[i]).collect()).collect()
}

pub fn endpoints(t: &FactorTriple, y: &[usize]) -> BTreeSet<(usize, usize)> {
    preimages(t, y).iter().map(|u| (u[0], u[u.len() - 1])).collect()
}

/// Deterministic xorshift stream for test-side sampling.
pub struct WordRng(u64);

impl WordRng {
    pub fn new(seed: u64) -> Self {
        WordRng(seed.wrapping_mul(0x2545_F491_4F6C_DD1D) | 1)
    }

    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Image of a random walk of `len` symbols in `X`.
pub fn random_y_word(t: &FactorTriple, rng: &mut WordRng, len: usize) -> Vec<usize> {
    let mut a = rng.below(t.nx());
    let mut walk = vec![a];
    while walk.len() < len {
        let succ: Vec<usize> = t.x().successors(a).iter().collect();
        a = succ[rng.below(succ.len())];
        walk.push(a);
    }
    t.image(&walk)
}

/// Join law for one split of a `Y` word: the pairings of the halves join to
/// the pairing of the whole, and that pairing is the brute-force endpoint
/// relation.
pub fn join_law_at(t: &FactorTriple, w: &[usize], n: usize) -> Result<(), String> {
    let r1 = word_pairing(t, &w[..=n]).map_err(|e| format!("left half {w:?}: {e}"))?;
    let r2 = word_pairing(t, &w[n..]).map_err(|e| format!("right half {w:?}: {e}"))?;
    let joined = join_pairings(&r1, &r2).map_err(|e| format!("join {w:?} at {n}: {e}"))?;
    let whole = word_pairing(t, w).map_err(|e| format!("whole {w:?}: {e}"))?;
    if joined != whole {
        return Err(format!("join of {w:?} at {n} differs from its pairing"));
    }
    let pairs: BTreeSet<(usize, usize)> = whole.relation.pairs().into_iter().collect();
    if pairs != endpoints(t, w) {
        return Err(format!("pairing of {w:?} differs from its endpoint relation"));
    }
    Ok(())
}

/// Joining two pairings fails with an empty composition exactly when the
/// concatenated witness is not a `Y` word.
pub fn join_rejects_non_words(t: &FactorTriple, u: &[usize], v: &[usize]) -> Result<(), String> {
    if u.last() != v.first() {
        return Ok(());
    }
    let (Ok(r1), Ok(r2)) = (word_pairing(t, u), word_pairing(t, v)) else {
        return Err(format!("{u:?} or {v:?} should be words"));
    };
    let mut cat = u.to_vec();
    cat.extend_from_slice(&v[1..]);
    let is_word = !preimages(t, &cat).is_empty();
    match (join_pairings(&r1, &r2), is_word) {
        (Ok(_), true) | (Err(_), false) => Ok(()),
        (Ok(_), false) => Err(format!("{cat:?} joined but is not a word")),
        (Err(e), true) => Err(format!("{cat:?} is a word but the join failed: {e}")),
    }
}

fn last_fiber_set(t: &FactorTriple, prefix: &[usize]) -> BTreeSet<usize> {
    projections(t, prefix).pop().unwrap_or_default()
}

/// Excision law over every pair of prefix ends `k < r` of `w`. Returns how
/// many excisions applied.
pub fn excision_law(t: &FactorTriple, w: &[usize]) -> Result<usize, String> {
    let whole = endpoints(t, w);
    let mut applied = 0;
    for k in 1..w.len() {
        for r in k + 1..w.len() {
            let (p1, p2) = (&w[..=k], &w[..=r]);
            let (Ok(a), Ok(b)) = (word_pairing(t, p1), word_pairing(t, p2)) else {
                return Err(format!("prefixes of {w:?} should be words"));
            };
            if a.form() != b.form() || last_fiber_set(t, p1) != last_fiber_set(t, p2) {
                continue;
            }
            let mut cut = p1.to_vec();
            cut.extend_from_slice(&w[r + 1..]);
            let pairs = endpoints(t, &cut);
            if pairs.is_empty() {
                return Err(format!("excising {w:?} at ({k},{r}) leaves a non-word"));
            }
            if pairs != whole {
                return Err(format!("excising {w:?} at ({k},{r}) changes the endpoint pairing"));
            }
            applied += 1;
        }
    }
    Ok(applied)
}

/// First letter, last letter and endpoint relation of a word.
pub type FormKey = (usize, usize, Vec<(usize, usize)>);
pub type Forms = BTreeMap<FormKey, Vec<Vec<usize>>>;

fn form_key(t: &FactorTriple, w: &[usize]) -> FormKey {
    (w[0], w[w.len() - 1], endpoints(t, w).into_iter().collect())
}

/// Words of length `2..=max_len` grouped by first letter, last letter and
/// endpoint relation.
pub fn words_by_form(t: &FactorTriple, max_len: usize) -> Forms {
    let mut out = Forms::new();
    for len in 2..=max_len {
        for w in y_words(t, len) {
            out.entry(form_key(t, &w)).or_default().push(w);
        }
    }
    out
}

/// Substitution law: swapping either half of a transition block for any word
/// with the same pairing leaves a transition block of the same depth.
/// Returns the number of substitutions tried.
pub fn substitution_law(
    t: &FactorTriple,
    cert: &TransitionBlockCert,
    depth: usize,
    forms: &Forms,
    cap: usize,
) -> Result<usize, String> {
    let key = |w: &[usize]| form_key(t, w);
    let (h1, h2) = (&cert.word[..=cert.n], &cert.word[cert.n..]);
    let empty = Vec::new();
    let alts1 = forms.get(&key(h1)).unwrap_or(&empty);
    let alts2 = forms.get(&key(h2)).unwrap_or(&empty);
    let mut tried = 0;
    for a1 in alts1.iter().chain([&h1.to_vec()]).take(cap) {
        for a2 in alts2.iter().chain([&h2.to_vec()]).take(cap) {
            let mut word = a1.clone();
            word.extend_from_slice(&a2[1..]);
            let mutated = TransitionBlockCert { word, n: a1.len() - 1, routing: cert.routing.clone() };
            if !verify_transition_cert(t, &mutated, depth) || !is_transition_block_by_enumeration(t, &mutated) {
                return Err(format!("substituted block {mutated:?} is not a transition block"));
            }
            tried += 1;
        }
    }
    Ok(tried)
}
