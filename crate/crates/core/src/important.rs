//! Enumeration of important cuts by bounded search.
//!
//! A cut `(S, V - S)` with `X ⊆ S` and `Y ∩ S = ∅` is important when no
//! strictly larger source side has at most as many crossing edges.
//! Equivalently, `S` is the furthest minimum `(S, Y)`-cut and its size is
//! the `(S, Y)` flow value, which gives a one-flow test.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, Vertex};
use crate::mincut::{disjoint_masks, max_flow, Scope};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImportantCut {
    pub cut: Cut,
    pub size: u64,
}

/// All important `(X, Y)`-cuts with at most `ell` crossing edges, sorted by
/// size and then by source side.
pub fn enumerate_important_cuts(g: &MultiGraph, x: &[Vertex], y: &[Vertex], ell: u64) -> Result<Vec<ImportantCut>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::invalid("important cuts need non-empty X and Y"));
    }
    let (xm, ym) = disjoint_masks(g, x, y)?;
    Ok(important_cuts_mask(g, &xm, &ym, ell))
}

pub(crate) fn important_cuts_mask(g: &MultiGraph, xm: &[bool], ym: &[bool], ell: u64) -> Vec<ImportantCut> {
    let mut search = Search {
        g,
        found: BTreeSet::new(),
    };
    let disabled = vec![false; g.edge_count()];
    search.branch(xm.to_vec(), ym.to_vec(), disabled, ell);

    let mut out: Vec<ImportantCut> = search
        .found
        .into_iter()
        .filter_map(|side| {
            let cut = Cut::from_mask(g, &side);
            (cut.size <= ell && is_important_mask(g, &side, ym)).then_some(ImportantCut { size: cut.size, cut })
        })
        .collect();
    out.sort_by(|a, b| (a.size, &a.cut.side0).cmp(&(b.size, &b.cut.side0)));
    out
}

struct Search<'g> {
    g: &'g MultiGraph,
    found: BTreeSet<Vec<bool>>,
}

impl Search<'_> {
    // Invariant: every important cut of the input that is still reachable
    // from this node contains `xm`, avoids `ym`, and crosses every disabled
    // edge; its size in the current graph is within `budget`.
    fn branch(&mut self, xm: Vec<bool>, ym: Vec<bool>, disabled: Vec<bool>, budget: u64) {
        let g = self.g;
        let scope = Scope {
            active: None,
            disabled: Some(&disabled),
        };
        let flow = max_flow(g, &xm, &ym, budget + 1, scope);
        if flow.value > budget {
            return;
        }
        let reach = flow.sink_reach(g, &ym, scope);
        let r: Vec<bool> = reach.iter().map(|&b| !b).collect();
        self.found.insert(r.clone());
        if budget == 0 {
            return;
        }

        if flow.value > 0 {
            // Any important cut strictly above `r` either absorbs the far
            // endpoint of a boundary edge of `r` or cuts that edge.
            let (v, id) = (0..g.vertex_count())
                .filter(|&u| r[u])
                .flat_map(|u| g.neighbors(u).iter().copied())
                .find(|&(v, id)| !r[v] && !disabled[id])
                .expect("positive flow leaves the source side");
            if !ym[v] {
                let mut grown = r.clone();
                grown[v] = true;
                self.branch(grown, ym.clone(), disabled.clone(), budget);
            }
            let mult = g.edge(id).mult as u64;
            if mult <= budget {
                let mut cut_off = disabled;
                cut_off[id] = true;
                self.branch(r, ym, cut_off, budget - mult);
            }
        } else {
            // The source side is already separated; a larger source side has
            // to take some vertex that is connected to Y.
            let Some(v) = (0..g.vertex_count()).find(|&v| !r[v] && !ym[v]) else {
                return;
            };
            let mut grown = r.clone();
            grown[v] = true;
            self.branch(grown, ym.clone(), disabled.clone(), budget);
            let mut blocked = ym;
            blocked[v] = true;
            self.branch(r, blocked, disabled, budget);
        }
    }
}

/// Whether `cut` is an important `(X, Y)`-cut.
pub fn is_important(g: &MultiGraph, x: &[Vertex], y: &[Vertex], cut: &Cut) -> Result<bool> {
    let (xm, ym) = disjoint_masks(g, x, y)?;
    if !cut.is_consistent(g) {
        return Err(Error::invalid("cut does not match the graph"));
    }
    let side = cut.side0_mask(g.vertex_count());
    if (0..g.vertex_count()).any(|v| (xm[v] && !side[v]) || (ym[v] && side[v])) {
        return Err(Error::invalid("cut does not separate X from Y"));
    }
    Ok(is_important_mask(g, &side, &ym))
}

pub(crate) fn is_important_mask(g: &MultiGraph, side: &[bool], ym: &[bool]) -> bool {
    let size: u64 = g.boundary_of_mask(side).iter().map(|&id| g.edge(id).mult as u64).sum();
    let flow = max_flow(g, side, ym, size + 1, Scope::default());
    if flow.value != size {
        return false;
    }
    let reach = flow.sink_reach(g, ym, Scope::default());
    (0..g.vertex_count()).all(|v| side[v] != reach[v])
}
