//! Brute-force references for the degree and the class degree.
//!
//! Both oracles work from explicitly enumerated preimage blocks and share no
//! machinery with [`crate::degree`] or [`crate::classdeg`] beyond word
//! enumeration. Their cost is exponential; [`Limits`] keeps calls at desk
//! scale unless overridden.

use std::sync::atomic::{AtomicUsize, Ordering};

use itertools::Itertools;

use crate::classdeg::{class_degree_with, verify_transition_cert, TransitionBlockCert};
use crate::degree::{degree, verify_magic_cert};
use crate::error::{DegreeError, OracleError};
use crate::exec::Exec;
use crate::finiteness::is_finite_to_one;
use crate::language::{preimage_blocks, y_words_of_length};
use crate::set::SymbolSet;
use crate::triple::FactorTriple;

/// Size guard rails for oracle calls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_symbols: usize,
    pub max_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_symbols: 6, max_len: 8 }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { max_symbols: usize::MAX, max_len: usize::MAX }
    }

    fn check(&self, t: &FactorTriple, max_len: usize) -> Result<(), OracleError> {
        if t.nx() > self.max_symbols {
            return Err(OracleError::TooLarge(format!(
                "{} X symbols exceeds the limit of {}",
                t.nx(),
                self.max_symbols
            )));
        }
        if max_len > self.max_len {
            return Err(OracleError::TooLarge(format!(
                "word length {max_len} exceeds the limit of {}",
                self.max_len
            )));
        }
        Ok(())
    }
}

fn positional_min(t: &FactorTriple, blocks: &[Vec<usize>], len: usize) -> usize {
    (0..len)
        .map(|i| SymbolSet::from_indices(t.nx(), blocks.iter().map(|u| u[i])).len())
        .min()
        .unwrap_or(usize::MAX)
}

fn degree_dfs(
    t: &FactorTriple,
    blocks: Vec<Vec<usize>>,
    max_len: usize,
    best: &AtomicUsize,
) {
    if best.load(Ordering::Relaxed) == 1 {
        return;
    }
    let len = blocks[0].len();
    best.fetch_min(positional_min(t, &blocks, len), Ordering::Relaxed);
    if len == max_len {
        return;
    }
    for b in 0..t.ny() {
        let mut next = Vec::new();
        for u in &blocks {
            let last = u[len - 1];
            for a in t.fiber(b).iter().filter(|&a| t.x().allowed(last, a)) {
                let mut v = u.clone();
                v.push(a);
                next.push(v);
            }
        }
        if !next.is_empty() {
            degree_dfs(t, next, max_len, best);
        }
    }
}

/// Least `|{U_i : U preimage of w}|` over `Y` words `w` with `|w| ≤ max_len`
/// and coordinates `i`.
pub fn brute_force_degree(t: &FactorTriple, max_len: usize, limits: Limits) -> Result<usize, OracleError> {
    brute_force_degree_with(t, max_len, limits, Exec::default())
}

pub fn brute_force_degree_with(
    t: &FactorTriple,
    max_len: usize,
    limits: Limits,
    exec: Exec,
) -> Result<usize, OracleError> {
    limits.check(t, max_len)?;
    if max_len == 0 {
        return Err(OracleError::Precondition("max_len must be at least 1".into()));
    }
    if !t.is_normalized() || !t.x().is_irreducible() {
        return Err(OracleError::Precondition("X must be essential and irreducible".into()));
    }
    if !is_finite_to_one(t) {
        return Err(OracleError::Precondition("the code must be finite-to-one".into()));
    }
    let best = AtomicUsize::new(usize::MAX);
    for b in 0..t.ny() {
        best.fetch_min(t.fiber(b).len(), Ordering::Relaxed);
    }
    if max_len >= 2 {
        // every length-2 word seeds one independent search
        let seeds = y_words_of_length(t, 2);
        exec.map(&seeds, |w| degree_dfs(t, preimage_blocks(t, w), max_len, &best));
    }
    Ok(best.into_inner())
}

/// Least depth of a transition block in one word, with its coordinate and
/// routing set; coordinates ascend and routing sets go by size then
/// lexicographic order.
fn best_block_in_word(t: &FactorTriple, word: &[usize]) -> Option<(usize, usize, SymbolSet)> {
    let blocks = preimage_blocks(t, word);
    if blocks.is_empty() {
        return None;
    }
    let p = word.len() - 1;
    let mut best: Option<(usize, usize, SymbolSet)> = None;
    for n in 1..p {
        let mids: Vec<usize> = blocks.iter().map(|u| u[n]).sorted().dedup().collect();
        let limit = best.as_ref().map_or(mids.len(), |(d, ..)| d - 1);
        let routable = |u: &Vec<usize>, m: usize| {
            blocks.iter().any(|v| v[0] == u[0] && v[n] == m && v[p] == u[p])
        };
        'sizes: for k in 1..=limit.min(mids.len()) {
            for combo in mids.iter().copied().combinations(k) {
                if blocks.iter().all(|u| combo.iter().any(|&m| routable(u, m))) {
                    best = Some((k, n, SymbolSet::from_indices(t.nx(), combo)));
                    break 'sizes;
                }
            }
        }
        if best.as_ref().is_some_and(|(d, ..)| *d == 1) {
            break;
        }
    }
    best
}

/// Least depth over transition blocks `(W, n, M)` with `|W| ≤ max_len`, with
/// the certificate that is least by (length, word, coordinate, routing set).
pub fn brute_force_class_degree(
    t: &FactorTriple,
    max_len: usize,
    limits: Limits,
) -> Result<(usize, TransitionBlockCert), OracleError> {
    brute_force_class_degree_with(t, max_len, limits, Exec::default())
}

pub fn brute_force_class_degree_with(
    t: &FactorTriple,
    max_len: usize,
    limits: Limits,
    exec: Exec,
) -> Result<(usize, TransitionBlockCert), OracleError> {
    limits.check(t, max_len)?;
    let mut best: Option<(usize, TransitionBlockCert)> = None;
    for len in 3..=max_len {
        let words = y_words_of_length(t, len);
        let found = exec.map(&words, |w| best_block_in_word(t, w));
        for (w, f) in words.into_iter().zip(found) {
            let Some((d, n, routing)) = f else { continue };
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, TransitionBlockCert { word: w, n, routing }));
            }
        }
        if best.as_ref().is_some_and(|(d, _)| *d == 1) {
            break;
        }
    }
    best.ok_or(OracleError::NoTransitionBlock(max_len))
}

/// Outcome of running every algorithm and oracle on one triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub degree: Option<usize>,
    pub degree_oracle: Option<usize>,
    pub class_degree: usize,
    pub class_degree_oracle: Option<usize>,
    pub certificates_ok: bool,
    pub skipped: Vec<String>,
    pub disagreements: Vec<String>,
}

impl CrossCheckReport {
    pub fn agrees(&self) -> bool {
        self.certificates_ok && self.disagreements.is_empty()
    }

    /// `KEY=VALUE` lines.
    pub fn render(&self) -> String {
        let opt = |v: Option<usize>| v.map_or("skipped".to_string(), |d| d.to_string());
        let mut out = String::new();
        out.push_str(&format!("degree={}\n", opt(self.degree)));
        out.push_str(&format!("degree_oracle={}\n", opt(self.degree_oracle)));
        out.push_str(&format!("class_degree={}\n", self.class_degree));
        out.push_str(&format!("class_degree_oracle={}\n", opt(self.class_degree_oracle)));
        out.push_str(&format!("certificates={}\n", if self.certificates_ok { "ok" } else { "fail" }));
        let skipped = if self.skipped.is_empty() { "none".to_string() } else { self.skipped.join(",") };
        out.push_str(&format!("skipped={skipped}\n"));
        out.push_str(&format!("agreement={}\n", if self.agrees() { "ok" } else { "fail" }));
        out
    }
}

/// Runs both algorithms and both oracles, verifies every certificate, and
/// compares values wherever the preconditions allow.
///
/// The degree oracle runs at the degree's own horizon; `limits` then only
/// bounds the alphabet size for it. The class-degree oracle runs at
/// `max_len`, and its value is exact only when the main certificate fits.
pub fn cross_check(t: &FactorTriple, max_len: usize, limits: Limits, exec: Exec) -> CrossCheckReport {
    let mut report = CrossCheckReport {
        degree: None,
        degree_oracle: None,
        class_degree: 0,
        class_degree_oracle: None,
        certificates_ok: true,
        skipped: Vec::new(),
        disagreements: Vec::new(),
    };
    let cd = class_degree_with(t, exec);
    report.class_degree = cd.class_degree;
    report.certificates_ok &= verify_transition_cert(t, &cd.certificate, cd.class_degree);

    match degree(t) {
        Ok(d) => {
            report.degree = Some(d.degree);
            report.certificates_ok &= verify_magic_cert(t, &d.certificate, d.degree);
            if d.degree != cd.class_degree {
                report.disagreements.push("class_degree != degree".into());
            }
            let degree_limits = Limits { max_len: usize::MAX, ..limits };
            match brute_force_degree_with(t, d.oracle_horizon(), degree_limits, exec) {
                Ok(o) => {
                    report.degree_oracle = Some(o);
                    if o != d.degree {
                        report.disagreements.push("degree != degree_oracle".into());
                    }
                }
                Err(_) => report.skipped.push("degree_oracle".into()),
            }
        }
        Err(DegreeError::NotFiniteToOne(_)) | Err(DegreeError::NotIrreducible) => {
            report.skipped.push("degree".into());
            report.skipped.push("degree_oracle".into());
        }
    }

    match brute_force_class_degree_with(t, max_len, limits, exec) {
        Ok((c, cert)) => {
            report.class_degree_oracle = Some(c);
            report.certificates_ok &= verify_transition_cert(t, &cert, c);
            let exact = cd.certificate.word.len() <= max_len;
            if (exact && c != cd.class_degree) || c < cd.class_degree {
                report.disagreements.push("class_degree != class_degree_oracle".into());
            }
        }
        Err(_) => report.skipped.push("class_degree_oracle".into()),
    }
    report
}

/// Checks `(word, n, M)` straight from the block-level definition: every
/// preimage block of `word` has a preimage block with the same endpoints
/// passing through a member of `M` at `n`.
pub fn is_transition_block_by_enumeration(t: &FactorTriple, cert: &TransitionBlockCert) -> bool {
    let len = cert.word.len();
    if len < 3 || cert.n == 0 || cert.n + 1 >= len {
        return false;
    }
    let blocks = preimage_blocks(t, &cert.word);
    let p = len - 1;
    let mids = SymbolSet::from_indices(t.nx(), blocks.iter().map(|u| u[cert.n]));
    !blocks.is_empty()
        && cert.routing.is_subset(&mids)
        && blocks.iter().all(|u| {
            blocks
                .iter()
                .any(|v| v[0] == u[0] && v[p] == u[p] && cert.routing.contains(v[cert.n]))
        })
}

/// Endpoint pairs `(u_0, u_last)` over the preimage blocks of `word`.
pub fn endpoint_pairs_by_enumeration(t: &FactorTriple, word: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> =
        preimage_blocks(t, word).iter().map(|u| (u[0], u[u.len() - 1])).collect();
    pairs.sort();
    pairs.dedup();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{t1, t2, t3};

    #[test]
    fn degree_oracle_examples() {
        assert_eq!(brute_force_degree(&t3(), 4, Limits::default()), Ok(2));
        assert_eq!(brute_force_degree(&t3(), 1, Limits::default()), Ok(2));
        assert_eq!(brute_force_degree(&t1(), 2, Limits::default()), Ok(1));
        assert!(matches!(brute_force_degree(&t2(), 3, Limits::default()), Err(OracleError::Precondition(_))));
        assert!(matches!(brute_force_degree(&t3(), 9, Limits::default()), Err(OracleError::TooLarge(_))));
        assert_eq!(brute_force_degree(&t3(), 10, Limits::unbounded()), Ok(2));
    }

    #[test]
    fn class_oracle_examples() {
        let (c, cert) = brute_force_class_degree(&t2(), 3, Limits::default()).unwrap();
        assert_eq!(c, 1);
        assert_eq!(cert, TransitionBlockCert { word: vec![0, 0, 0], n: 1, routing: SymbolSet::from_indices(2, [0]) });
        let (c, cert) = brute_force_class_degree(&t1(), 3, Limits::default()).unwrap();
        assert_eq!(c, 1);
        assert_eq!(cert.word.len(), 3);
        let (c, cert) = brute_force_class_degree(&t3(), 4, Limits::default()).unwrap();
        assert_eq!(c, 2);
        assert!(verify_transition_cert(&t3(), &cert, 2));
        assert!(is_transition_block_by_enumeration(&t3(), &cert));
        assert_eq!(brute_force_class_degree(&t1(), 2, Limits::default()), Err(OracleError::NoTransitionBlock(2)));
    }

    #[test]
    fn t2_all_eight_blocks_route_through_p() {
        // each u0 u1 u2 over zzz reroutes via u0 p u2
        let cert = TransitionBlockCert { word: vec![0, 0, 0], n: 1, routing: SymbolSet::from_indices(2, [0]) };
        assert_eq!(preimage_blocks(&t2(), &cert.word).len(), 8);
        assert!(is_transition_block_by_enumeration(&t2(), &cert));
    }

    #[test]
    fn cross_check_reports() {
        let r = cross_check(&t1(), 6, Limits::default(), Exec::default());
        assert!(r.agrees(), "{r:?}");
        assert_eq!((r.degree, r.degree_oracle, r.class_degree, r.class_degree_oracle), (Some(1), Some(1), 1, Some(1)));

        let r = cross_check(&t2(), 6, Limits::default(), Exec::default());
        assert!(r.agrees());
        assert_eq!(r.degree, None);
        assert_eq!(r.skipped, vec!["degree", "degree_oracle"]);
        assert_eq!(r.class_degree_oracle, Some(1));

        let r = cross_check(&t3(), 6, Limits::default(), Exec::default());
        assert!(r.agrees());
        assert_eq!(r.degree, Some(2));
        assert_eq!(r.degree_oracle, Some(2));
        assert_eq!(r.class_degree, 2);
        assert_eq!(
            r.render(),
            "degree=2\ndegree_oracle=2\nclass_degree=2\nclass_degree_oracle=2\ncertificates=ok\nskipped=none\nagreement=ok\n"
        );
    }

    #[test]
    fn modes_agree() {
        for t in [t1(), t2(), t3()] {
            assert_eq!(
                brute_force_class_degree_with(&t, 6, Limits::default(), Exec::Sequential),
                brute_force_class_degree_with(&t, 6, Limits::default(), Exec::Parallel)
            );
        }
        assert_eq!(
            brute_force_degree_with(&t3(), 8, Limits::default(), Exec::Sequential),
            brute_force_degree_with(&t3(), 8, Limits::default(), Exec::Parallel)
        );
    }
}
