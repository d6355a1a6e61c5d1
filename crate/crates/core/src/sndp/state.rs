//! States of the dynamic program: small graphs whose first `b` vertices are
//! the bag, compared by their thresholded cut function on the bag.

use std::collections::HashMap;

use crate::graph::{MultiGraph, TerminalSet, Vertex};
use crate::linkage::sparsify;
use crate::mincut::thresholded_mincut;

/// `mincut^c(S1, S2)` for every disjoint pair of bag subsets, indexed by the
/// base-3 code of the pair (digit 1: `S1`, digit 2: `S2`, low digit first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSignature {
    pub bag_len: usize,
    pub values: Vec<u8>,
}

impl StateSignature {
    pub fn value(&self, s1: &[usize], s2: &[usize]) -> u8 {
        let mut code = 0;
        for &i in s1 {
            code += 3usize.pow(i as u32);
        }
        for &i in s2 {
            code += 2 * 3usize.pow(i as u32);
        }
        self.values[code]
    }
}

/// Signature of `graph` on `bag` (ids in `graph`).
pub fn state_signature(graph: &MultiGraph, bag: &[Vertex], c: u32) -> StateSignature {
    let b = bag.len();
    let total = 3usize.pow(b as u32);
    let mut values = vec![0u8; total];
    let mut s1 = Vec::with_capacity(b);
    let mut s2 = Vec::with_capacity(b);
    for (code, slot) in values.iter_mut().enumerate() {
        s1.clear();
        s2.clear();
        let mut x = code;
        for &v in bag {
            match x % 3 {
                1 => s1.push(v),
                2 => s2.push(v),
                _ => {}
            }
            x /= 3;
        }
        if s1.is_empty() || s2.is_empty() {
            continue;
        }
        // Swapping S1 and S2 gives the same value; compute one of each pair.
        if mirror_code(code, b) < code {
            continue;
        }
        *slot = thresholded_mincut(graph, &s1, &s2, c).expect("bag ids are in range and disjoint") as u8;
    }
    for code in 0..total {
        let mirror = mirror_code(code, b);
        if mirror < code {
            values[code] = values[mirror];
        }
    }
    StateSignature { bag_len: b, values }
}

fn mirror_code(code: usize, b: usize) -> usize {
    let (mut x, mut out, mut p) = (code, 0, 1);
    for _ in 0..b {
        out += p * match x % 3 {
            1 => 2,
            2 => 1,
            _ => 0,
        };
        x /= 3;
        p *= 3;
    }
    out
}

/// A graph whose vertices `0..bag_len` stand for the bag in order.
#[derive(Clone, Debug)]
pub(crate) struct State {
    pub sig: StateSignature,
    pub rep: MultiGraph,
}

impl State {
    pub fn empty(b: usize, c: u32) -> State {
        let rep = MultiGraph::empty(b);
        State {
            sig: state_signature(&rep, &(0..b).collect::<Vec<_>>(), c),
            rep,
        }
    }
}

/// One ingredient of a union: a representative and the global ids of its
/// bag positions.
pub(crate) struct Part<'a> {
    pub bag: &'a [Vertex],
    pub graph: &'a MultiGraph,
}

/// Glues the parts on shared bag vertices and returns a compacted state on
/// `target`. Vertices of a part's bag outside `target` become internal;
/// internal vertices of different parts stay apart.
pub(crate) fn glue(target: &[Vertex], parts: &[Part], extra: &[(Vertex, Vertex)], c: u32) -> State {
    let g = union(target, parts, extra);
    let bag: Vec<usize> = (0..target.len()).collect();
    let sig = state_signature(&g, &bag, c);
    State {
        sig,
        rep: compact(g, target.len(), c),
    }
}

/// The glued graph itself, with `target` at positions `0..target.len()`.
pub(crate) fn union(target: &[Vertex], parts: &[Part], extra: &[(Vertex, Vertex)]) -> MultiGraph {
    let mut ids: HashMap<Vertex, usize> = target.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut next = target.len();
    fn id_of(v: Vertex, ids: &mut HashMap<Vertex, usize>, next: &mut usize) -> usize {
        *ids.entry(v).or_insert_with(|| {
            *next += 1;
            *next - 1
        })
    }
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for &(u, v) in extra {
        let a = id_of(u, &mut ids, &mut next);
        let b = id_of(v, &mut ids, &mut next);
        edges.push((a, b, 1));
    }
    let mut local = Vec::new();
    for part in parts {
        let b = part.bag.len();
        local.clear();
        for &v in part.bag {
            local.push(id_of(v, &mut ids, &mut next));
        }
        let inner_base = next;
        next += part.graph.vertex_count() - b;
        let map = |x: usize| if x < b { local[x] } else { inner_base + x - b };
        edges.extend(part.graph.edges().iter().map(|e| (map(e.u), map(e.v), e.mult)));
    }
    MultiGraph::from_edges(next, edges).expect("ids are in range")
}

/// Replaces everything outside the bag by a mimicking network, keeping the
/// result only when it is smaller.
fn compact(g: MultiGraph, b: usize, c: u32) -> MultiGraph {
    // Drop internal vertices that no edge touches.
    let used: Vec<bool> = (0..g.vertex_count()).map(|v| v < b || g.degree(v) > 0).collect();
    let g = if used.iter().all(|&x| x) {
        g
    } else {
        let mut labels = vec![None; g.vertex_count()];
        let mut next = 0;
        for v in 0..g.vertex_count() {
            if used[v] {
                labels[v] = Some(next);
                next += 1;
            }
        }
        g.quotient(&labels, next)
    };
    if g.vertex_count() <= b + 1 {
        return g;
    }
    let net = sparsify(&g, &TerminalSet::new((0..b).collect()), c).expect("bag ids are valid terminals");
    // Fold the pendant copies of each bag vertex back into one vertex.
    let h = &net.graph;
    let mut labels: Vec<Option<usize>> = vec![None; h.vertex_count()];
    for (&orig, copies) in &net.terminal_map {
        copies.iter().for_each(|&p| labels[p] = Some(orig));
    }
    let mut next = b;
    for slot in labels.iter_mut().filter(|l| l.is_none()) {
        *slot = Some(next);
        next += 1;
    }
    let folded = h.quotient(&labels, next);
    if folded.vertex_count() < g.vertex_count() {
        folded
    } else {
        g
    }
}
