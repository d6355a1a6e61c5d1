//! Linked sets and the sparsifier built from them.
//!
//! `X` is connectivity-`q` linked when every bipartition `(A, B)` of `X` is
//! crossed by at least `min(|∂A ∩ ∂X|, |∂B ∩ ∂X|, q)` edges. Contracting a
//! linked set leaves every thresholded terminal cut unchanged, so the
//! sparsifier is the graph with every cluster of a decomposition into linked
//! sets contracted.
//!
//! All functions here take a pendant graph: the vertices of `X` plus one
//! degree-one terminal per unit of boundary multiplicity.

mod connectivity2;

pub use connectivity2::connectivity2_decompose;

use std::collections::BTreeMap;

use crate::constrained::{find_constrained_cut, ConstrainedSpec};
use crate::error::{Error, Result};
use crate::graph::{from_capacitated, normalize_terminals, pendant_view_mask, Cut, MultiGraph, TerminalSet, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatingCut {
    /// Bipartition of the pendant graph; every pendant sits with its
    /// attachment vertex.
    pub cut: Cut,
    pub q: u32,
}

impl ViolatingCut {
    /// Re-checks `crossing < min(pendants on side 0, pendants on side 1, q)`.
    pub fn is_violating(&self, gp: &MultiGraph, t: &TerminalSet) -> bool {
        let side0 = self.cut.side0_mask(gp.vertex_count());
        let mut internal = 0u64;
        let mut pend = [0u64; 2];
        for e in gp.edges() {
            let (tu, tv) = (t.contains(e.u), t.contains(e.v));
            if !tu && !tv {
                if side0[e.u] != side0[e.v] {
                    internal += e.mult as u64;
                }
            } else if tu != tv {
                let inner = if tu { e.v } else { e.u };
                pend[usize::from(!side0[inner])] += e.mult as u64;
            }
        }
        internal < pend[0].min(pend[1]).min(self.q as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Linkage {
    Linked,
    Violated(ViolatingCut),
}

/// Looks for a violating cut of value `ell = 0, 1, .., q - 1` in turn, each
/// as an `(∅, ∅, ell + 1, ell + 1, ell)`-constrained cut.
pub fn find_violating_cut(gp: &MultiGraph, t: &TerminalSet, q: u32) -> Result<Linkage> {
    if q == 0 {
        return Err(Error::invalid("connectivity level must be at least 1"));
    }
    for ell in 0..q as u64 {
        let Some(cut) = find_constrained_cut(gp, t, &ConstrainedSpec::balanced(ell))? else {
            continue;
        };
        let mut side0 = cut.side0_mask(gp.vertex_count());
        for p in t.iter() {
            if let Some(&(w, _)) = gp.neighbors(p).first() {
                if gp.neighbors(p).len() == 1 {
                    side0[p] = side0[w];
                }
            }
        }
        let found = ViolatingCut {
            cut: Cut::from_mask(gp, &side0),
            q,
        };
        assert!(
            found.is_violating(gp, t),
            "constrained cut did not yield a violating cut"
        );
        return Ok(Linkage::Violated(found));
    }
    Ok(Linkage::Linked)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Disjoint sets covering the non-terminal vertices, sorted.
    pub clusters: Vec<Vec<Vertex>>,
    pub certified_q: u32,
}

/// Splits the non-terminal vertices of `gp` into connectivity-`q` linked
/// clusters.
pub fn mark_clusters(gp: &MultiGraph, t: &TerminalSet, q: u32) -> Result<Decomposition> {
    if q == 0 {
        return Err(Error::invalid("connectivity level must be at least 1"));
    }
    let n = gp.vertex_count();
    let core: Vec<Vertex> = (0..n).filter(|&v| !t.contains(v)).collect();
    let mut clusters = Vec::new();
    mark(gp, core, q, &mut clusters)?;
    for c in &mut clusters {
        c.sort_unstable();
    }
    clusters.sort();
    Ok(Decomposition {
        clusters,
        certified_q: q,
    })
}

fn mark(top: &MultiGraph, x: Vec<Vertex>, q: u32, out: &mut Vec<Vec<Vertex>>) -> Result<()> {
    if x.is_empty() {
        return Ok(());
    }
    let mut inside = vec![false; top.vertex_count()];
    x.iter().for_each(|&v| inside[v] = true);
    let comps = top.components_of_mask(&inside);
    if comps.len() > 1 {
        // Separate components form a violating cut with no crossing edges.
        for comp in comps {
            mark(top, comp, q, out)?;
        }
        return Ok(());
    }
    if q == 1 {
        out.push(x);
        return Ok(());
    }
    let pv = pendant_view_mask(top, &inside);
    let k = pv.terminals.len() as u32;
    let lift = |vs: &[Vertex]| vs.iter().map(|&v| pv.origin[v]).collect::<Vec<_>>();
    if k <= 1 {
        out.push(x);
    } else if q == 2 {
        let d = connectivity2_decompose(&pv.graph, &pv.terminals)?;
        out.extend(d.clusters.iter().map(|c| lift(c)));
    } else if k < 2 * q {
        // With at most 2q - 1 boundary edges one side of any bipartition has
        // fewer than q of them, so the q and q - 1 conditions coincide.
        mark(top, x, q - 1, out)?;
    } else {
        match find_violating_cut(&pv.graph, &pv.terminals, q)? {
            Linkage::Linked => out.push(x),
            Linkage::Violated(v) => {
                let core = pv.core_len();
                let (a, b): (Vec<Vertex>, Vec<Vertex>) =
                    (0..core).partition(|&i| v.cut.side0.binary_search(&i).is_ok());
                mark(top, lift(&a), q, out)?;
                mark(top, lift(&b), q, out)?;
            }
        }
    }
    Ok(())
}

/// Per connected component of the non-terminal part of the normalised
/// graph: its pendant terminal count and the clusters it was split into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub terminals: usize,
    pub clusters: usize,
}

/// A graph whose thresholded terminal cuts equal those of the input.
#[derive(Clone, Debug)]
pub struct MimickingNetwork {
    pub graph: MultiGraph,
    pub c: u32,
    /// Original terminal to its copies in `graph`, ascending.
    pub terminal_map: BTreeMap<Vertex, Vec<Vertex>>,
    /// Vertex of the normalised input to its image in `graph`; `None` for
    /// vertices in components without terminals, which are dropped.
    pub provenance: Vec<Option<Vertex>>,
    /// Clusters in normalised-input ids.
    pub clusters: Vec<Vec<Vertex>>,
    pub components: Vec<ComponentReport>,
    /// The input after capping and terminal normalisation.
    pub normalized: MultiGraph,
    /// Pendant terminals of `normalized`, grouped by original terminal.
    pub normalized_terminals: BTreeMap<Vertex, Vec<Vertex>>,
}

impl MimickingNetwork {
    /// All terminal copies of `graph`, ordered by original terminal.
    pub fn terminals(&self) -> Vec<Vertex> {
        self.terminal_map.values().flatten().copied().collect()
    }

    /// The matching pendant terminals of the normalised input.
    pub fn input_terminals(&self) -> Vec<Vertex> {
        self.normalized_terminals.values().flatten().copied().collect()
    }

    /// `3^c · c · k` for `k` original terminals, saturating.
    pub fn size_bound(&self) -> u64 {
        size_bound(self.c, self.terminal_map.len())
    }
}

pub fn size_bound(c: u32, k: usize) -> u64 {
    3u64.saturating_pow(c).saturating_mul(c as u64).saturating_mul(k as u64)
}

/// Caps capacities at `c` and sparsifies.
pub fn build_mimicking_network(
    n: usize,
    edges: &[(Vertex, Vertex, u64)],
    terminals: &[Vertex],
    c: u32,
) -> Result<MimickingNetwork> {
    let g = from_capacitated(n, edges, c)?;
    sparsify(&g, &TerminalSet::new(terminals.to_vec()), c)
}

/// Connectivity-`c` mimicking network of a multigraph.
pub fn sparsify(g: &MultiGraph, t: &TerminalSet, c: u32) -> Result<MimickingNetwork> {
    if c == 0 {
        return Err(Error::invalid("threshold c must be at least 1"));
    }
    let norm = normalize_terminals(g, t, c)?;
    let gn = &norm.graph;
    let n = gn.vertex_count();
    let is_term = norm.terminals.mask(n);
    let rest: Vec<bool> = is_term.iter().map(|&b| !b).collect();

    let mut clusters = Vec::new();
    let mut components = Vec::new();
    for comp in gn.components_of_mask(&rest) {
        let mut inside = vec![false; n];
        comp.iter().for_each(|&v| inside[v] = true);
        let pv = pendant_view_mask(gn, &inside);
        let k = pv.terminals.len();
        if k == 0 {
            continue;
        }
        let found = if c == 1 {
            vec![comp]
        } else {
            let d = mark_clusters(&pv.graph, &pv.terminals, c)?;
            d.clusters
                .iter()
                .map(|cl| cl.iter().map(|&v| pv.origin[v]).collect())
                .collect()
        };
        components.push(ComponentReport {
            terminals: k,
            clusters: found.len(),
        });
        clusters.extend(found);
    }

    let mut group = vec![usize::MAX; n];
    for (i, cl) in clusters.iter().enumerate() {
        cl.iter().for_each(|&v| group[v] = i);
    }
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut group_label = vec![None; clusters.len()];
    let mut next = 0;
    for v in 0..n {
        labels[v] = if is_term[v] {
            next += 1;
            Some(next - 1)
        } else if group[v] != usize::MAX {
            let gl = group_label[group[v]].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            Some(*gl)
        } else {
            None
        };
    }
    let graph = gn.quotient(&labels, next);

    let mut terminal_map = BTreeMap::new();
    let mut normalized_terminals = BTreeMap::new();
    for (orig, copies) in &norm.copies {
        terminal_map.insert(*orig, copies.iter().map(|&p| labels[p].unwrap()).collect());
        normalized_terminals.insert(*orig, copies.clone());
    }
    let net = MimickingNetwork {
        graph,
        c,
        terminal_map,
        provenance: labels,
        clusters,
        components,
        normalized: norm.graph,
        normalized_terminals,
    };
    assert!(
        net.graph.vertex_count() as u64 <= net.size_bound(),
        "sparsifier exceeds the 3^c·c·k size bound"
    );
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pendant_view;
    use crate::oracle::{oracle_cut_equivalence, oracle_violating_cut, Equivalence};

    fn double_star() -> MultiGraph {
        MultiGraph::from_edges(6, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (1, 5, 1)]).unwrap()
    }

    #[test]
    fn connected_set_is_linked_at_level_one() {
        let pv = pendant_view(&double_star(), &[0, 1]).unwrap();
        assert_eq!(
            find_violating_cut(&pv.graph, &pv.terminals, 1).unwrap(),
            Linkage::Linked
        );
    }

    #[test]
    fn bridge_violates_level_two() {
        let pv = pendant_view(&double_star(), &[0, 1]).unwrap();
        let Linkage::Violated(v) = find_violating_cut(&pv.graph, &pv.terminals, 2).unwrap() else {
            panic!("expected a violating cut");
        };
        assert_eq!(v.cut.size, 1);
        let core_side: Vec<Vertex> = v.cut.side0.iter().copied().filter(|&i| i < 2).collect();
        assert_eq!(core_side.len(), 1);
        assert!(oracle_violating_cut(&double_star(), &[0, 1], 2).unwrap().is_some());
    }

    #[test]
    fn cycle_with_three_pendants_is_linked() {
        // Cycle 0-1-2 with one outside neighbour each.
        let g = MultiGraph::from_edges(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1)]).unwrap();
        let pv = pendant_view(&g, &[0, 1, 2]).unwrap();
        assert_eq!(
            find_violating_cut(&pv.graph, &pv.terminals, 2).unwrap(),
            Linkage::Linked
        );
    }

    #[test]
    fn single_boundary_edge_is_one_cluster() {
        let g = MultiGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let pv = pendant_view(&g, &[1, 2, 3]).unwrap();
        let d = mark_clusters(&pv.graph, &pv.terminals, 3).unwrap();
        assert_eq!(d.clusters.len(), 1);
    }

    #[test]
    fn long_path_sparsifies_exactly() {
        let edges: Vec<(Vertex, Vertex, u64)> = (0..49).map(|i| (i, i + 1, 1)).collect();
        let net = build_mimicking_network(50, &edges, &[0, 49], 2).unwrap();
        assert!(net.graph.vertex_count() <= 36);
        let eq =
            oracle_cut_equivalence(&net.normalized, &net.graph, &net.input_terminals(), &net.terminals(), 2).unwrap();
        assert!(matches!(eq, Equivalence::Equal { .. }));
    }

    #[test]
    fn star_of_terminals_keeps_its_shape() {
        let edges: Vec<(Vertex, Vertex, u64)> = (1..4).map(|t| (0, t, 1)).collect();
        let net = build_mimicking_network(4, &edges, &[1, 2, 3], 2).unwrap();
        // Centre and leaves each see three boundary edges: nothing merges.
        assert_eq!(net.clusters.len(), 4);
        assert_eq!(net.graph.vertex_count(), 4 + 6);
    }

    #[test]
    fn terminal_free_components_are_dropped() {
        let edges = [(0, 1, 1), (2, 3, 1)];
        let net = build_mimicking_network(4, &edges, &[0], 2).unwrap();
        assert!(net.provenance[2].is_none() && net.provenance[3].is_none());
        assert_eq!(net.components.len(), 1);
    }
}
