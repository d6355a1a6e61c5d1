//! Seeded random instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::sndp::{Demand, SndpInstance};

/// A capacitated graph with terminals, as read from or written to a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphInstance {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex, u64)>,
    pub terminals: Vec<Vertex>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected multigraph with `m` edges: a random spanning tree plus
/// uniformly random extra edges, capacities in `[1, 2c]`, `k` distinct
/// terminals.
pub fn random_graph(n: usize, m: usize, k: usize, c: u32, seed: u64) -> Result<GraphInstance> {
    check(n, m, k, c)?;
    let mut r = rng(seed);
    let top = 2 * c as u64;
    let edges = random_edges(n, m, &mut r)
        .into_iter()
        .map(|(u, v)| (u, v, r.random_range(1..=top)))
        .collect();
    let terminals = sorted_sample(&mut r, n, k);
    Ok(GraphInstance { n, edges, terminals })
}

/// Same graph shape with costs in `[1, 10]`, a random root and up to `k`
/// demands on other vertices with requirements in `[1, c]`.
pub fn random_sndp(n: usize, m: usize, k: usize, c: u32, seed: u64) -> Result<SndpInstance> {
    check(n, m, k, c)?;
    let mut r = rng(seed);
    let edges = random_edges(n, m, &mut r)
        .into_iter()
        .map(|(u, v)| (u, v, r.random_range(1..=10)))
        .collect();
    let root = r.random_range(0..n);
    let count = r.random_range(0..=k.min(n - 1));
    let others: Vec<Vertex> = (0..n).filter(|&v| v != root).collect();
    let demands = sorted_sample(&mut r, others.len(), count)
        .into_iter()
        .map(|i| Demand {
            vertex: others[i],
            req: r.random_range(1..=c),
        })
        .collect();
    Ok(SndpInstance {
        n,
        edges,
        root,
        demands,
    })
}

fn check(n: usize, m: usize, k: usize, c: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if m + 1 < n {
        return Err(Error::invalid(format!("{m} edges cannot connect {n} vertices")));
    }
    if n == 1 && m > 0 {
        return Err(Error::invalid("a single vertex admits no edges"));
    }
    if k > n {
        return Err(Error::invalid(format!("{k} terminals requested from {n} vertices")));
    }
    if c == 0 {
        return Err(Error::invalid("threshold c must be at least 1"));
    }
    Ok(())
}

fn random_edges(n: usize, m: usize, r: &mut ChaCha8Rng) -> Vec<(Vertex, Vertex)> {
    let order = sample(r, n, n).into_vec();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let j = r.random_range(0..i);
        edges.push(ordered(order[i], order[j]));
    }
    while edges.len() < m {
        let u = r.random_range(0..n);
        let v = r.random_range(0..n);
        if u != v {
            edges.push(ordered(u, v));
        }
    }
    edges
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

fn sorted_sample(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut v = sample(r, n, k).into_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::from_capacitated;

    #[test]
    fn same_seed_same_instance() {
        assert_eq!(
            random_graph(30, 60, 4, 2, 7).unwrap(),
            random_graph(30, 60, 4, 2, 7).unwrap()
        );
        assert_ne!(
            random_graph(30, 60, 4, 2, 7).unwrap(),
            random_graph(30, 60, 4, 2, 8).unwrap()
        );
    }

    #[test]
    fn graphs_are_connected_with_bounded_capacities() {
        for seed in 0..20 {
            let g = random_graph(15, 20, 3, 2, seed).unwrap();
            assert_eq!(g.edges.len(), 20);
            assert!(g.edges.iter().all(|&(u, v, cap)| u < v && (1..=4).contains(&cap)));
            assert!(from_capacitated(g.n, &g.edges, 2).unwrap().is_connected());
        }
    }

    #[test]
    fn sndp_instances_validate() {
        for seed in 0..20 {
            let s = random_sndp(8, 12, 3, 2, seed).unwrap();
            s.validate(2).unwrap();
            assert!(s.demands.len() <= 3);
            assert!(s.demands.iter().all(|d| d.vertex != s.root));
        }
    }

    #[test]
    fn rejects_impossible_parameters() {
        assert!(random_graph(5, 3, 2, 2, 0).is_err());
        assert!(random_graph(5, 6, 6, 2, 0).is_err());
    }
}
