//! Decomposition into connectivity-2 linked sets.
//!
//! Contract the 2-edge-connected components of `G[X]`; what remains is a
//! tree whose leaves include the pendant terminals. Tree nodes of degree at
//! most two are then merged into a neighbour until every remaining node has
//! degree three or more, which leaves at most `k - 2` nodes for `k >= 3`
//! terminals.

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, TerminalSet, Vertex};

use super::Decomposition;

pub fn connectivity2_decompose(gp: &MultiGraph, t: &TerminalSet) -> Result<Decomposition> {
    let n = gp.vertex_count();
    let is_term = t.mask(n);
    let core: Vec<bool> = (0..n).map(|v| !is_term[v]).collect();
    let comps = gp.components_of_mask(&core);
    match comps.len() {
        0 => {
            return Ok(Decomposition {
                clusters: Vec::new(),
                certified_q: 2,
            })
        }
        1 => {}
        _ => return Err(Error::invalid("connectivity-2 decomposition needs a connected set")),
    }

    let bridge = bridges(gp, &core);
    let mut not_bridge = vec![true; gp.edge_count()];
    for &id in &bridge {
        not_bridge[id] = false;
    }
    let node_of = two_edge_components(gp, &core, &not_bridge);
    let count = node_of.iter().filter_map(|&x| x).max().map_or(0, |m| m + 1);

    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); count];
    for v in 0..n {
        if let Some(x) = node_of[v] {
            members[x].push(v);
        }
    }
    let mut degree = vec![0u64; count];
    for e in gp.edges() {
        match (node_of[e.u], node_of[e.v]) {
            (Some(a), None) => degree[a] += e.mult as u64,
            (None, Some(b)) => degree[b] += e.mult as u64,
            _ => {}
        }
    }
    let mut tree: Vec<Vec<usize>> = vec![Vec::new(); count];
    for &id in &bridge {
        let e = gp.edge(id);
        let (a, b) = (node_of[e.u].unwrap(), node_of[e.v].unwrap());
        tree[a].push(b);
        tree[b].push(a);
        degree[a] += 1;
        degree[b] += 1;
    }

    // Nodes are keyed by their smallest vertex, which is the order they were
    // created in. A merged node keeps the key of the surviving neighbour.
    let mut alive = vec![true; count];
    loop {
        let pick = (0..count).find(|&x| alive[x] && degree[x] <= 2 && !tree[x].is_empty());
        let Some(x) = pick else { break };
        let y = *tree[x].iter().min().unwrap();
        let moved = std::mem::take(&mut members[x]);
        members[y].extend(moved);
        degree[y] = degree[y] + degree[x] - 2;
        let nbrs = std::mem::take(&mut tree[x]);
        tree[y].retain(|&z| z != x);
        for z in nbrs {
            if z == y {
                continue;
            }
            for w in tree[z].iter_mut() {
                if *w == x {
                    *w = y;
                }
            }
            tree[y].push(z);
        }
        alive[x] = false;
    }

    let mut clusters: Vec<Vec<Vertex>> = (0..count)
        .filter(|&x| alive[x])
        .map(|x| {
            let mut m = std::mem::take(&mut members[x]);
            m.sort_unstable();
            m
        })
        .collect();
    clusters.sort();
    Ok(Decomposition {
        clusters,
        certified_q: 2,
    })
}

/// Bridges of `G[core]`. Edge records of multiplicity two or more are never
/// bridges.
fn bridges(g: &MultiGraph, core: &[bool]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // Frames: (vertex, edge used to enter, next neighbour index).
    let mut stack: Vec<(Vertex, usize, usize)> = Vec::new();
    for root in 0..n {
        if !core[root] || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, via, i) = *frame;
            if let Some(&(w, id)) = g.neighbors(v).get(i) {
                frame.2 += 1;
                if !core[w] || id == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] && g.edge(via).mult == 1 {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn two_edge_components(g: &MultiGraph, core: &[bool], usable: &[bool]) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut label = vec![None; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if !core[s] || label[s].is_some() {
            continue;
        }
        label[s] = Some(next);
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &(y, id) in g.neighbors(x) {
                if core[y] && usable[id] && label[y].is_none() {
                    label[y] = Some(next);
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pendant_view;

    fn decompose(g: &MultiGraph, x: &[Vertex]) -> Vec<Vec<Vertex>> {
        let pv = pendant_view(g, x).unwrap();
        let d = connectivity2_decompose(&pv.graph, &pv.terminals).unwrap();
        d.clusters
            .iter()
            .map(|c| c.iter().map(|&v| pv.origin[v]).collect())
            .collect()
    }

    #[test]
    fn path_between_two_pendants_is_one_cluster() {
        // 0 and 5 play the terminals; X = 1..=4.
        let g = MultiGraph::from_edges(6, (0..5).map(|i| (i, i + 1, 1))).unwrap();
        assert_eq!(decompose(&g, &[1, 2, 3, 4]), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn star_is_one_cluster() {
        let g = MultiGraph::from_edges(6, (1..6).map(|t| (0, t, 1))).unwrap();
        assert_eq!(decompose(&g, &[0]), vec![vec![0]]);
    }

    #[test]
    fn triangles_joined_by_a_bridge() {
        // Triangles {0,1,2} and {3,4,5}, bridge 2-3, pendants 6,7 on 0 and
        // 8,9 on 5.
        let g = MultiGraph::from_edges(
            10,
            [
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (3, 5, 1),
                (2, 3, 1),
                (0, 6, 1),
                (0, 7, 1),
                (5, 8, 1),
                (5, 9, 1),
            ],
        )
        .unwrap();
        assert_eq!(decompose(&g, &[0, 1, 2, 3, 4, 5]), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        let g = MultiGraph::from_edges(4, [(0, 1, 1), (1, 2, 2), (2, 3, 1)]).unwrap();
        assert_eq!(bridges(&g, &[true; 4]), vec![0, 2]);
    }

    #[test]
    fn disconnected_set_is_rejected() {
        let g = MultiGraph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        let pv = pendant_view(&g, &[0, 3]).unwrap();
        assert!(connectivity2_decompose(&pv.graph, &pv.terminals).is_err());
    }
}
