mod common;

use std::collections::BTreeSet;

use factor_degree::classdeg::{class_degree_with, theorem_length_bound, verify_transition_cert};
use factor_degree::degree::{coreachable_s_prime, reachable_s, verify_magic_cert};
use factor_degree::format::{parse_triple, serialize_triple};
use factor_degree::gen::{random_triple, Density, GenParams};
use factor_degree::language::fiber_sets;
use factor_degree::oracle::{brute_force_degree, Limits};
use factor_degree::recode::higher_block_recode;
use factor_degree::triple::triple_from_strs;
use factor_degree::{class_degree, degree, find_diamond, normalize, Exec, FactorTriple, ShiftOfFiniteType};
use proptest::prelude::*;

use common::*;

const DENSITIES: [(u64, u64); 3] = [(3, 10), (1, 2), (4, 5)];

prop_compose! {
    fn params(max_nx: usize)(nx in 1..=max_nx, d in 0..3usize, seed in any::<u64>(), shrink in 0..3usize)
        -> GenParams {
        let (num, den) = DENSITIES[d];
        GenParams::new(nx, nx.saturating_sub(shrink).max(1), Density::new(num, den).unwrap(), seed)
    }
}

fn triple(max_nx: usize) -> impl Strategy<Value = FactorTriple> {
    params(max_nx).prop_filter_map("retries exhausted", |p| random_triple(&p).ok())
}

fn finite_to_one_triple(max_nx: usize) -> impl Strategy<Value = FactorTriple> {
    params(max_nx).prop_filter_map("retries exhausted", |p| random_triple(&p.finite_to_one().irreducible()).ok())
}

/// An arbitrary one-step graph and labeling, not necessarily essential.
fn raw_triple() -> impl Strategy<Value = FactorTriple> {
    (1..=5usize).prop_flat_map(|nx| {
        (proptest::collection::vec(any::<bool>(), nx * nx), proptest::collection::vec(0..3usize, nx)).prop_map(
            move |(bits, labels)| {
                let names: Vec<String> = (0..nx).map(|i| format!("s{i}")).collect();
                let edges: Vec<(usize, usize)> =
                    (0..nx * nx).filter(|&k| bits[k]).map(|k| (k / nx, k % nx)).collect();
                let x = ShiftOfFiniteType::new(names, &edges).unwrap();
                FactorTriple::new(x, labels.iter().map(|l| format!("y{l}")).collect()).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fiber_sets_match_preimage_projection(t in triple(5), seed in any::<u64>(), len in 1..=6usize) {
        let w = random_y_word(&t, &mut WordRng::new(seed), len);
        let sets = fiber_sets(&t, &w).unwrap();
        let oracle = projections(&t, &w);
        for (i, s) in sets.iter().enumerate() {
            prop_assert_eq!(s.iter().collect::<BTreeSet<_>>(), oracle[i].clone());
            prop_assert!(s.is_subset(t.fiber(w[i])));
        }
    }

    #[test]
    fn fiber_sets_fail_exactly_on_non_words(t in triple(4), w in proptest::collection::vec(0..4usize, 1..=5)) {
        let w: Vec<usize> = w.into_iter().map(|b| b % t.ny()).collect();
        let is_word = !preimages(&t, &w).is_empty();
        prop_assert_eq!(fiber_sets(&t, &w).is_ok(), is_word);
    }

    #[test]
    fn normalize_is_idempotent(t in raw_triple()) {
        if let Ok(n) = normalize(&t) {
            prop_assert!(n.is_normalized());
            prop_assert_eq!(normalize(&n).unwrap(), n.clone());
            let text = serialize_triple(&n);
            prop_assert_eq!(parse_triple(&text).unwrap(), n);
        }
    }

    #[test]
    fn recoding_preserves_both_degrees(t in triple(4), k in 1..=3usize) {
        let (r, conj) = higher_block_recode(&t, k).unwrap();
        prop_assert_eq!(class_degree(&r).class_degree, class_degree(&t).class_degree);
        prop_assert_eq!(degree(&r).ok().map(|d| d.degree), degree(&t).ok().map(|d| d.degree));
        for u in x_words(&t, k + 2) {
            let v = conj.encode(&u).unwrap();
            prop_assert_eq!(r.image(&v), t.image(&u[..v.len()]));
            prop_assert_eq!(conj.decode(&v), u[..v.len()].to_vec());
        }
    }

    #[test]
    fn diamonds_pump(t in triple(4), k in 1..=3usize) {
        match find_diamond(&t) {
            None => {
                // no two preimages share both endpoints
                for len in 2..=6 {
                    for w in y_words(&t, len) {
                        let pre = preimages(&t, &w);
                        let ends: BTreeSet<_> = pre.iter().map(|u| (u[0], u[len - 1])).collect();
                        prop_assert_eq!(pre.len(), ends.len());
                    }
                }
            }
            Some(d) => {
                prop_assert!(d.is_valid(&t));
                let (s, e) = (d.left[0], d.left[d.len() - 1]);
                let link = x_path(&t, e, s);
                prop_assume!(k == 1 || link.is_some());
                let link = link.unwrap_or_default();
                let mut template = d.left.clone();
                for _ in 1..k {
                    template.extend_from_slice(&link[1..]);
                    template.extend_from_slice(&d.left[1..]);
                }
                let y = t.image(&template);
                let pinned = preimages(&t, &y).into_iter().filter(|u| u[0] == s && u[y.len() - 1] == e).count();
                prop_assert!(pinned >= 1 << k, "{} < {}", pinned, 1 << k);
            }
        }
    }

    #[test]
    fn degree_agrees_with_oracle(t in finite_to_one_triple(5)) {
        let d = degree(&t).unwrap();
        prop_assert!(verify_magic_cert(&t, &d.certificate, d.degree));
        prop_assert_eq!(d.s_size, reachable_s(&t).len());
        prop_assert_eq!(d.s_prime_size, coreachable_s_prime(&t).len());
        let mut last = usize::MAX;
        for len in 1..=d.oracle_horizon().min(7) {
            let o = brute_force_degree(&t, len, Limits::unbounded()).unwrap();
            prop_assert!(o <= last && o >= d.degree);
            last = o;
        }
        prop_assert_eq!(brute_force_degree(&t, d.oracle_horizon(), Limits::unbounded()).unwrap(), d.degree);
        prop_assert_eq!(class_degree(&t).class_degree, d.degree);
    }

    #[test]
    fn class_degree_certificates(t in triple(5)) {
        let cd = class_degree_with(&t, Exec::Sequential);
        prop_assert_eq!(&cd, &class_degree_with(&t, Exec::Parallel));
        prop_assert!(verify_transition_cert(&t, &cd.certificate, cd.class_degree));
        prop_assert!(cd.class_degree >= 1 && cd.class_degree <= t.max_fiber());
        prop_assert!(theorem_length_bound(&t) >= cd.certificate.word.len().into());
        prop_assert_eq!(cd.reducible_warning, !t.x().is_irreducible());
    }

    #[test]
    fn join_law_on_random_words(t in triple(4), seed in any::<u64>(), len in 3..=7usize) {
        let w = random_y_word(&t, &mut WordRng::new(seed), len);
        for n in 1..len - 1 {
            prop_assert_eq!(join_law_at(&t, &w, n), Ok(()));
        }
    }

    #[test]
    fn joins_reject_non_words(t in triple(4), seed in any::<u64>()) {
        let mut rng = WordRng::new(seed);
        let (lu, lv) = (2 + rng.below(3), 2 + rng.below(3));
        let u = random_y_word(&t, &mut rng, lu);
        let mut v = random_y_word(&t, &mut rng, lv);
        v[0] = *u.last().unwrap();
        if !preimages(&t, &v).is_empty() {
            prop_assert_eq!(join_rejects_non_words(&t, &u, &v), Ok(()));
        }
    }

    #[test]
    fn excision_law_on_random_words(t in triple(4), seed in any::<u64>(), len in 3..=9usize) {
        let w = random_y_word(&t, &mut WordRng::new(seed), len);
        prop_assert!(excision_law(&t, &w).is_ok());
    }

    #[test]
    fn substitution_law_on_certificates(t in triple(4)) {
        let cd = class_degree(&t);
        let forms = words_by_form(&t, 5);
        prop_assert!(substitution_law(&t, &cd.certificate, cd.class_degree, &forms, 6).is_ok());
    }

    #[test]
    fn generation_is_deterministic(p in params(6)) {
        let a = random_triple(&p).map(|t| serialize_triple(&t));
        let b = random_triple(&p).map(|t| serialize_triple(&t));
        prop_assert_eq!(&a, &b);
        if let Ok(text) = a {
            let t = parse_triple(&text).unwrap();
            prop_assert!(t.is_normalized());
            prop_assert_eq!(t.ny(), p.ny);
        }
    }
}

/// A shortest `X` path from `a` to `b` (just `[a]` when equal).
fn x_path(t: &FactorTriple, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; t.nx()];
    let mut queue = std::collections::VecDeque::from([a]);
    prev[a] = a;
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            while *path.last().unwrap() != a {
                path.push(prev[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for v in t.x().successors(u).iter() {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

#[test]
fn golden_mean_two_blocks() {
    let t = triple_from_strs(&["g0", "g1"], &[("g0", "g0"), ("g0", "g1"), ("g1", "g0")], &[("g0", "a"), ("g1", "b")])
        .unwrap();
    let (r, _) = higher_block_recode(&t, 2).unwrap();
    assert_eq!(r.x().names(), ["g0g0", "g0g1", "g1g0"]);
}
