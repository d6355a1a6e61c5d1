//! Bounded augmenting-path flows between vertex sets.
//!
//! Every query in this crate asks for flow values up to a small threshold,
//! so plain BFS augmentation is both the simplest and the fastest option.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedCut {
    Cut(Cut),
    AtLeastBound,
}

/// Flow on each edge record, positive in direction `u -> v`.
#[derive(Clone, Debug)]
pub struct Flow {
    pub value: u64,
    pub on_edge: Vec<i64>,
}

impl Flow {
    #[inline]
    fn residual(&self, g: &MultiGraph, id: usize, from: Vertex) -> u64 {
        let e = g.edge(id);
        let f = self.on_edge[id];
        if from == e.u {
            (e.mult as i64 - f) as u64
        } else {
            (e.mult as i64 + f) as u64
        }
    }

    /// Vertices reachable from `src` in the residual graph; the source side
    /// of the minimum cut closest to the sources.
    pub(crate) fn source_reach(&self, g: &MultiGraph, src: &[bool], scope: Scope) -> Vec<bool> {
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = VecDeque::new();
        for v in 0..g.vertex_count() {
            if src[v] && scope.vertex(v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &(y, id) in g.neighbors(x) {
                if !seen[y] && scope.edge(id) && scope.vertex(y) && self.residual(g, id, x) > 0 {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Vertices that can still push flow into `snk`; the complement is the
    /// source side of the minimum cut furthest from the sources.
    pub(crate) fn sink_reach(&self, g: &MultiGraph, snk: &[bool], scope: Scope) -> Vec<bool> {
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = VecDeque::new();
        for v in 0..g.vertex_count() {
            if snk[v] && scope.vertex(v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &(y, id) in g.neighbors(x) {
                if !seen[y] && scope.edge(id) && scope.vertex(y) && self.residual(g, id, y) > 0 {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// Restricts a flow computation to a subset of vertices and edges.
#[derive(Clone, Copy, Default)]
pub(crate) struct Scope<'a> {
    pub active: Option<&'a [bool]>,
    pub disabled: Option<&'a [bool]>,
}

impl Scope<'_> {
    #[inline]
    fn vertex(&self, v: Vertex) -> bool {
        self.active.is_none_or(|a| a[v])
    }

    #[inline]
    fn edge(&self, id: usize) -> bool {
        self.disabled.is_none_or(|d| !d[id])
    }
}

/// Augments from `src` to `snk` until the value reaches `bound` or no path
/// is left. BFS order follows ascending neighbor ids.
pub(crate) fn max_flow(g: &MultiGraph, src: &[bool], snk: &[bool], bound: u64, scope: Scope) -> Flow {
    let n = g.vertex_count();
    let mut flow = Flow {
        value: 0,
        on_edge: vec![0; g.edge_count()],
    };
    let starts: Vec<Vertex> = (0..n).filter(|&v| src[v] && scope.vertex(v)).collect();
    if starts.is_empty() || !(0..n).any(|v| snk[v] && scope.vertex(v)) {
        return flow;
    }
    let mut parent: Vec<(Vertex, usize)> = vec![(usize::MAX, usize::MAX); n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    while flow.value < bound {
        seen.iter_mut().for_each(|s| *s = false);
        queue.clear();
        for &s in &starts {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut hit = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &(y, id) in g.neighbors(x) {
                if seen[y] || !scope.edge(id) || !scope.vertex(y) || flow.residual(g, id, x) == 0 {
                    continue;
                }
                seen[y] = true;
                parent[y] = (x, id);
                if snk[y] {
                    hit = Some(y);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        let Some(end) = hit else { break };
        let mut push = bound - flow.value;
        let mut y = end;
        while !src[y] {
            let (x, id) = parent[y];
            push = push.min(flow.residual(g, id, x));
            y = x;
        }
        let mut y = end;
        while !src[y] {
            let (x, id) = parent[y];
            if x == g.edge(id).u {
                flow.on_edge[id] += push as i64;
            } else {
                flow.on_edge[id] -= push as i64;
            }
            y = x;
        }
        flow.value += push;
    }
    flow
}

pub(crate) fn disjoint_masks(g: &MultiGraph, a: &[Vertex], b: &[Vertex]) -> Result<(Vec<bool>, Vec<bool>)> {
    let ma = g.mask(a)?;
    let mb = g.mask(b)?;
    if let Some(v) = (0..g.vertex_count()).find(|&v| ma[v] && mb[v]) {
        return Err(Error::OverlappingSets(v));
    }
    Ok((ma, mb))
}

/// A minimum `A`-`B` cut if one with fewer than `bound` edges exists. The
/// returned source side is the residual closure of `A`.
pub fn bounded_mincut(g: &MultiGraph, a: &[Vertex], b: &[Vertex], bound: u64) -> Result<BoundedCut> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("bounded_mincut needs non-empty vertex sets"));
    }
    let (ma, mb) = disjoint_masks(g, a, b)?;
    let flow = max_flow(g, &ma, &mb, bound, Scope::default());
    if flow.value >= bound {
        return Ok(BoundedCut::AtLeastBound);
    }
    let side = flow.source_reach(g, &ma, Scope::default());
    Ok(BoundedCut::Cut(Cut::from_mask(g, &side)))
}

/// `min(c, mincut(A, B))`; zero when either side is empty.
pub fn thresholded_mincut(g: &MultiGraph, a: &[Vertex], b: &[Vertex], c: u32) -> Result<u32> {
    let (ma, mb) = disjoint_masks(g, a, b)?;
    Ok(max_flow(g, &ma, &mb, c as u64, Scope::default()).value as u32)
}

/// Flow of value `min(bound, mincut(A, B))` as a certificate.
pub fn flow_witness(g: &MultiGraph, a: &[Vertex], b: &[Vertex], bound: u64) -> Result<Flow> {
    let (ma, mb) = disjoint_masks(g, a, b)?;
    Ok(max_flow(g, &ma, &mb, bound, Scope::default()))
}

/// Checks capacity and conservation at every vertex outside `A ∪ B`, and
/// that the net flow out of `A` equals the claimed value.
pub fn is_valid_flow(g: &MultiGraph, a: &[Vertex], b: &[Vertex], flow: &Flow) -> bool {
    let Ok((ma, mb)) = disjoint_masks(g, a, b) else {
        return false;
    };
    let mut net = vec![0i64; g.vertex_count()];
    for (id, e) in g.edges().iter().enumerate() {
        let f = flow.on_edge[id];
        if f.unsigned_abs() > e.mult as u64 {
            return false;
        }
        net[e.u] += f;
        net[e.v] -= f;
    }
    let out: i64 = (0..g.vertex_count()).filter(|&v| ma[v]).map(|v| net[v]).sum();
    (0..g.vertex_count()).all(|v| ma[v] || mb[v] || net[v] == 0) && out == flow.value as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        let mut e = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                e.push((a, b, 1));
            }
        }
        MultiGraph::from_edges(4, e).unwrap()
    }

    #[test]
    fn path_cut() {
        let g = MultiGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        match bounded_mincut(&g, &[0], &[2], 5).unwrap() {
            BoundedCut::Cut(cut) => {
                assert_eq!(cut.size, 1);
                assert_eq!(cut.cutset.len(), 1);
                assert_eq!(cut.side0, vec![0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_reaches_bound() {
        assert_eq!(bounded_mincut(&k4(), &[0], &[3], 2).unwrap(), BoundedCut::AtLeastBound);
        assert_eq!(thresholded_mincut(&k4(), &[0], &[3], 2).unwrap(), 2);
        assert_eq!(thresholded_mincut(&k4(), &[0], &[3], 5).unwrap(), 3);
    }

    #[test]
    fn multiplicity_counts() {
        let g = MultiGraph::from_edges(2, [(0, 1, 2)]).unwrap();
        let BoundedCut::Cut(cut) = bounded_mincut(&g, &[0], &[1], 5).unwrap() else {
            panic!()
        };
        assert_eq!(cut.size, 2);
        assert_eq!(cut.cutset.len(), 1);
    }

    #[test]
    fn empty_and_disconnected() {
        assert_eq!(thresholded_mincut(&k4(), &[], &[1], 3).unwrap(), 0);
        let g = MultiGraph::from_edges(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(thresholded_mincut(&g, &[0], &[3], 3).unwrap(), 0);
    }

    #[test]
    fn overlap_rejected() {
        assert!(matches!(
            thresholded_mincut(&k4(), &[0, 1], &[1], 2),
            Err(Error::OverlappingSets(1))
        ));
        assert!(bounded_mincut(&k4(), &[], &[1], 2).is_err());
    }

    #[test]
    fn furthest_side_of_path() {
        let g = MultiGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let src = [true, false, false];
        let snk = [false, false, true];
        let flow = max_flow(&g, &src, &snk, 5, Scope::default());
        assert_eq!(flow.source_reach(&g, &src, Scope::default()), vec![true, false, false]);
        assert_eq!(flow.sink_reach(&g, &snk, Scope::default()), vec![false, false, true]);
    }
}
