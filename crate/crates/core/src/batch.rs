//! Seeded corpora and whole-corpus evaluation.

use crate::classdeg::class_degree;
use crate::degree::degree;
use crate::exec::Exec;
use crate::gen::{random_triple, Density, GenParams};
use crate::oracle::{cross_check, CrossCheckReport, Limits};
use crate::triple::FactorTriple;

pub const DENSITIES: [(u64, u64); 3] = [(3, 10), (5, 10), (8, 10)];

/// Parameters for seed `seed` of a corpus over `2..=max_nx` symbols.
///
/// `nx` cycles fastest, then the density, then `ny` steps down from `nx - 1`
/// through at most three values.
pub fn corpus_params(seed: u64, max_nx: usize) -> GenParams {
    let span = (max_nx.max(2) - 1) as u64;
    let nx = 2 + (seed % span) as usize;
    let (num, den) = DENSITIES[(seed / span % 3) as usize];
    let drop = 1 + (seed / (3 * span) % 3) as usize;
    let ny = nx.saturating_sub(drop).max(1);
    GenParams::new(nx, ny, Density::new(num, den).expect("fixed densities are valid"), seed)
}

/// The first `count` triples, in seed order, produced by [`corpus_params`]
/// with the given flags. Seeds whose retries run out are passed over.
pub fn corpus(count: usize, max_nx: usize, finite_to_one: bool, irreducible: bool) -> Vec<(GenParams, FactorTriple)> {
    corpus_with(count, max_nx, finite_to_one, irreducible, Exec::default())
}

pub fn corpus_with(
    count: usize,
    max_nx: usize,
    finite_to_one: bool,
    irreducible: bool,
    exec: Exec,
) -> Vec<(GenParams, FactorTriple)> {
    let mut out = Vec::with_capacity(count);
    let mut next = 0u64;
    while out.len() < count {
        let chunk = (count - out.len()).max(16);
        let found = exec.map_range(chunk, |i| {
            let mut p = corpus_params(next + i as u64, max_nx);
            p.require_finite_to_one = finite_to_one;
            p.require_irreducible = irreducible;
            random_triple(&p).ok().map(|t| (p, t))
        });
        out.extend(found.into_iter().flatten().take(count - out.len()));
        next += chunk as u64;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub degree: Option<usize>,
    pub class_degree: usize,
    pub certificate_len: usize,
}

pub fn evaluate(t: &FactorTriple) -> Evaluation {
    let cd = class_degree(t);
    Evaluation {
        degree: degree(t).ok().map(|d| d.degree),
        class_degree: cd.class_degree,
        certificate_len: cd.certificate.word.len(),
    }
}

pub fn evaluate_corpus(triples: &[FactorTriple], exec: Exec) -> Vec<Evaluation> {
    exec.map(triples, evaluate)
}

pub fn cross_check_corpus(triples: &[FactorTriple], max_len: usize, limits: Limits, exec: Exec) -> Vec<CrossCheckReport> {
    // the outer fan-out already saturates the pool
    exec.map(triples, |t| cross_check(t, max_len, limits, Exec::Sequential))
}
