//! Solvers against the exhaustive references on small random inputs.

use mimicnet::constrained::{find_constrained_cut, is_valid_constrained_cut, ConstrainedSpec};
use mimicnet::gen::{random_graph, random_sndp};
use mimicnet::graph::{from_capacitated, pendant_view, MultiGraph, TerminalSet, Vertex};
use mimicnet::important::enumerate_important_cuts;
use mimicnet::linkage::{build_mimicking_network, find_violating_cut, Linkage};
use mimicnet::oracle::{
    oracle_constrained_cut, oracle_cut_equivalence, oracle_important_cuts, oracle_sndp, oracle_violating_cut,
    Equivalence,
};
use mimicnet::sndp::{prepare_decomposition, solve_sndp};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_graph(seed: u64, n: usize, extra: usize, c: u32) -> MultiGraph {
    let gi = random_graph(n, n - 1 + extra, 0, c, seed).unwrap();
    from_capacitated(gi.n, &gi.edges, c).unwrap()
}

/// Random split of the vertices into `X`, `Y` and the rest.
fn split(seed: u64, n: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(&mut r);
    let nx = r.random_range(1..=2.min(n - 1));
    let ny = r.random_range(1..=2.min(n - nx));
    let mut x = vs[..nx].to_vec();
    let mut y = vs[nx..nx + ny].to_vec();
    x.sort_unstable();
    y.sort_unstable();
    (x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn important_cuts_match(seed in any::<u64>(), n in 3usize..=10, extra in 0usize..=8, ell in 0u64..=4) {
        let g = small_graph(seed, n, extra, 2);
        let (x, y) = split(seed, n);
        let mut got: Vec<Vec<Vertex>> = enumerate_important_cuts(&g, &x, &y, ell)
            .unwrap()
            .into_iter()
            .map(|c| c.cut.side0)
            .collect();
        let mut want: Vec<Vec<Vertex>> = oracle_important_cuts(&g, &x, &y, ell)
            .unwrap()
            .into_iter()
            .map(|c| c.side0)
            .collect();
        got.sort();
        want.sort();
        prop_assert_eq!(&got, &want);
        prop_assert!(got.len() as u64 <= 4u64.pow(ell as u32));
    }

    #[test]
    fn constrained_cuts_match(
        seed in any::<u64>(),
        n in 3usize..=10,
        extra in 0usize..=6,
        k in 1usize..=5,
        c0 in 0u32..=3,
        c1 in 0u32..=3,
        ell in 0u64..=3,
        nq0 in 0usize..=1,
        nq1 in 0usize..=1,
    ) {
        let g = small_graph(seed, n, extra, 2);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut vs: Vec<Vertex> = (0..n).collect();
        vs.shuffle(&mut r);
        let k = k.min(n);
        let t = TerminalSet::new(vs[..k].to_vec());
        let rest = &vs[k..];
        let nq0 = nq0.min(rest.len());
        let nq1 = nq1.min(rest.len() - nq0);
        let spec = ConstrainedSpec {
            q0: rest[..nq0].to_vec(),
            q1: rest[nq0..nq0 + nq1].to_vec(),
            c0,
            c1,
            ell,
        };
        let got = find_constrained_cut(&g, &t, &spec).unwrap();
        let want = oracle_constrained_cut(&g, &t, &spec).unwrap();
        prop_assert_eq!(got.is_some(), want.is_some(), "spec {:?} terminals {:?}", spec, t);
        if let Some(cut) = got {
            prop_assert!(is_valid_constrained_cut(&g, &t, &spec, &cut));
        }
    }

    #[test]
    fn linkedness_matches(seed in any::<u64>(), n in 4usize..=12, extra in 0usize..=10, q in 1u32..=3, size in 2usize..=8) {
        let g = small_graph(seed, n, extra, 3);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut vs: Vec<Vertex> = (0..n).collect();
        vs.shuffle(&mut r);
        let mut x = vs[..size.min(n - 1)].to_vec();
        x.sort_unstable();
        let pv = pendant_view(&g, &x).unwrap();
        let linked = find_violating_cut(&pv.graph, &pv.terminals, q).unwrap() == Linkage::Linked;
        let brute = oracle_violating_cut(&g, &x, q as u64).unwrap().is_none();
        prop_assert_eq!(linked, brute, "X = {:?}, q = {}", x, q);
    }

    #[test]
    fn sparsifier_is_exact(seed in any::<u64>(), n in 2usize..=14, extra in 0usize..=14, k in 1usize..=3, c in 1u32..=3) {
        let k = k.min(n);
        let gi = random_graph(n, n - 1 + extra, k, c, seed).unwrap();
        let net = build_mimicking_network(gi.n, &gi.edges, &gi.terminals, c).unwrap();
        prop_assert!(net.graph.vertex_count() as u64 <= net.size_bound());
        let eq = oracle_cut_equivalence(&net.normalized, &net.graph, &net.input_terminals(), &net.terminals(), c).unwrap();
        prop_assert!(matches!(eq, Equivalence::Equal { .. }), "{:?}", eq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sndp_matches(seed in any::<u64>(), n in 2usize..=7, extra in 0usize..=5, k in 0usize..=3, c in 1u32..=2) {
        let m = (n - 1 + extra).min(12);
        let inst = random_sndp(n, m, k.min(n), c, seed).unwrap();
        let td = prepare_decomposition(&inst, None).unwrap();
        let got = solve_sndp(&inst, &td, c).unwrap();
        let want = oracle_sndp(&inst, c).unwrap();
        prop_assert_eq!(got.as_ref().map(|s| s.cost), want.map(|s| s.cost));
        if let Some(s) = got {
            prop_assert!(inst.is_feasible(&s.edges).unwrap());
        }
    }
}
