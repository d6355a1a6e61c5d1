//! Undirected multigraphs with merged parallel edges, plus the reductions
//! every solver starts from: capacity capping, pendant terminals, boundaries,
//! induced subgraphs and contraction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// One record per unordered vertex pair. `u < v` always holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub mult: u32,
}

impl Edge {
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph on vertices `0..n`. Parallel records are summed, loops
    /// and zero multiplicities are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut merged: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
        for (a, b, mult) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if a == b || mult == 0 {
                continue;
            }
            let key = (a.min(b), a.max(b));
            let slot = merged.entry(key).or_insert(0);
            *slot = slot.saturating_add(mult);
        }
        Ok(Self::from_sorted(n, merged))
    }

    fn from_sorted(n: usize, merged: BTreeMap<(Vertex, Vertex), u32>) -> Self {
        let edges: Vec<Edge> = merged.into_iter().map(|((u, v), mult)| Edge { u, v, mult }).collect();
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        MultiGraph { n, edges, adj }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edge records (parallel edges count once).
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.mult as u64).sum()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Neighbors with the connecting edge record, ascending by neighbor.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.adj[v].iter().map(|&(_, id)| self.edges[id].mult as u64).sum()
    }

    pub fn find_edge(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Membership flags for `set`, rejecting out-of-range ids.
    pub fn mask(&self, set: &[Vertex]) -> Result<Vec<bool>> {
        let mut m = vec![false; self.n];
        for &v in set {
            self.check_vertex(v)?;
            m[v] = true;
        }
        Ok(m)
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn boundary(&self, x: &[Vertex]) -> Result<Vec<EdgeId>> {
        let inside = self.mask(x)?;
        Ok(self.boundary_of_mask(&inside))
    }

    pub(crate) fn boundary_of_mask(&self, inside: &[bool]) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| inside[e.u] != inside[e.v])
            .map(|(id, _)| id)
            .collect()
    }

    pub fn boundary_size(&self, x: &[Vertex]) -> Result<u64> {
        let ids = self.boundary(x)?;
        Ok(ids.iter().map(|&id| self.edges[id].mult as u64).sum())
    }

    /// The cut with `side0` on one side and every other vertex on the other.
    pub fn cut(&self, side0: &[Vertex]) -> Result<Cut> {
        let inside = self.mask(side0)?;
        Ok(Cut::from_mask(self, &inside))
    }

    /// `G[x]` with vertices renumbered in ascending order of `x`. The second
    /// value maps new ids back to ids of `self`.
    pub fn induced(&self, x: &[Vertex]) -> Result<(MultiGraph, Vec<Vertex>)> {
        let inside = self.mask(x)?;
        Ok(self.induced_mask(&inside))
    }

    pub(crate) fn induced_mask(&self, inside: &[bool]) -> (MultiGraph, Vec<Vertex>) {
        let origin: Vec<Vertex> = (0..self.n).filter(|&v| inside[v]).collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let mut merged = BTreeMap::new();
        for e in &self.edges {
            if inside[e.u] && inside[e.v] {
                merged.insert((local[e.u], local[e.v]), e.mult);
            }
        }
        (Self::from_sorted(origin.len(), merged), origin)
    }

    /// Merges vertices with equal labels. Vertices labelled `None` are
    /// deleted together with their edges. Labels must be dense in
    /// `0..count`.
    pub(crate) fn quotient(&self, labels: &[Option<usize>], count: usize) -> MultiGraph {
        let mut merged: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
        for e in &self.edges {
            if let (Some(a), Some(b)) = (labels[e.u], labels[e.v]) {
                if a != b {
                    let slot = merged.entry((a.min(b), a.max(b))).or_insert(0);
                    *slot = slot.saturating_add(e.mult);
                }
            }
        }
        Self::from_sorted(count, merged)
    }

    /// Contracts every connected component of `G[x]` into one vertex.
    pub fn contract(&self, x: &[Vertex]) -> Result<(MultiGraph, ContractionMap)> {
        let inside = self.mask(x)?;
        let groups = self.components_of_mask(&inside);
        Ok(self.contract_groups(&groups))
    }

    /// Contracts each group into one vertex. Groups must be disjoint; they
    /// need not be connected. New ids follow the smallest original member.
    pub fn contract_groups(&self, groups: &[Vec<Vertex>]) -> (MultiGraph, ContractionMap) {
        let mut group_of = vec![usize::MAX; self.n];
        for (gi, g) in groups.iter().enumerate() {
            for &v in g {
                group_of[v] = gi;
            }
        }
        let mut labels = vec![None; self.n];
        let mut group_label = vec![usize::MAX; groups.len()];
        let mut next = 0;
        for v in 0..self.n {
            let gi = group_of[v];
            let label = if gi == usize::MAX {
                next += 1;
                next - 1
            } else {
                if group_label[gi] == usize::MAX {
                    group_label[gi] = next;
                    next += 1;
                }
                group_label[gi]
            };
            labels[v] = Some(label);
        }
        let graph = self.quotient(&labels, next);
        let map = labels.into_iter().map(|l| l.unwrap()).collect();
        (graph, ContractionMap { map })
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_of_mask(&vec![true; self.n])
    }

    /// Connected components of `G[inside]`.
    pub(crate) fn components_of_mask(&self, inside: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if !inside[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &(y, _) in &self.adj[x] {
                    if inside[y] && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Caps every capacity at `c`, merges parallel records and caps the merged
/// multiplicity at `c` again. Thresholded cuts are unchanged by both steps.
pub fn from_capacitated(n: usize, edges: &[(Vertex, Vertex, u64)], c: u32) -> Result<MultiGraph> {
    if c == 0 {
        return Err(Error::invalid("threshold c must be at least 1"));
    }
    let mut merged: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
    for &(a, b, cap) in edges {
        for x in [a, b] {
            if x >= n {
                return Err(Error::UnknownVertex(x));
            }
        }
        if cap == 0 {
            return Err(Error::ZeroCapacity { u: a, v: b });
        }
        if a == b {
            continue;
        }
        let slot = merged.entry((a.min(b), a.max(b))).or_insert(0);
        *slot = (*slot + cap.min(c as u64) as u32).min(c);
    }
    Ok(MultiGraph::from_sorted(n, merged))
}

/// Sorted, duplicate-free set of terminal vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TerminalSet(Vec<Vertex>);

impl TerminalSet {
    pub fn new(mut vs: Vec<Vertex>) -> Self {
        vs.sort_unstable();
        vs.dedup();
        TerminalSet(vs)
    }

    #[inline]
    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &t in &self.0 {
            m[t] = true;
        }
        m
    }
}

impl FromIterator<Vertex> for TerminalSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        TerminalSet::new(iter.into_iter().collect())
    }
}

/// A bipartition of all vertices of a graph with its crossing edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub side0: Vec<Vertex>,
    pub side1: Vec<Vertex>,
    pub cutset: Vec<EdgeId>,
    pub size: u64,
}

impl Cut {
    pub(crate) fn from_mask(g: &MultiGraph, inside: &[bool]) -> Cut {
        let mut side0 = Vec::new();
        let mut side1 = Vec::new();
        for v in 0..g.vertex_count() {
            if inside[v] {
                side0.push(v);
            } else {
                side1.push(v);
            }
        }
        let cutset = g.boundary_of_mask(inside);
        let size = cutset.iter().map(|&id| g.edge(id).mult as u64).sum();
        Cut {
            side0,
            side1,
            cutset,
            size,
        }
    }

    pub fn side0_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.side0 {
            m[v] = true;
        }
        m
    }

    pub fn swapped(&self) -> Cut {
        Cut {
            side0: self.side1.clone(),
            side1: self.side0.clone(),
            cutset: self.cutset.clone(),
            size: self.size,
        }
    }

    /// Checks the stored fields against `g`.
    pub fn is_consistent(&self, g: &MultiGraph) -> bool {
        let mut seen = vec![0u8; g.vertex_count()];
        for &v in self.side0.iter().chain(&self.side1) {
            if v >= g.vertex_count() {
                return false;
            }
            seen[v] += 1;
        }
        if seen.iter().any(|&s| s != 1) {
            return false;
        }
        let fresh = Cut::from_mask(g, &self.side0_mask(g.vertex_count()));
        fresh == *self
    }
}

/// Total map from original vertex ids to contracted ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub map: Vec<Vertex>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap { map: (0..n).collect() }
    }

    #[inline]
    pub fn image(&self, v: Vertex) -> Vertex {
        self.map[v]
    }

    pub fn target_count(&self) -> usize {
        self.map.iter().max().map_or(0, |&m| m + 1)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ContractionMap) -> ContractionMap {
        ContractionMap {
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        }
    }
}

/// Result of attaching pendant terminals to the original terminals.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    /// For each original terminal in ascending order, its pendant copies.
    pub copies: Vec<(Vertex, Vec<Vertex>)>,
}

/// Gives each terminal `c` new degree-one neighbours, which become the
/// terminals. The originals stay as ordinary vertices.
pub fn normalize_terminals(g: &MultiGraph, t: &TerminalSet, c: u32) -> Result<Normalized> {
    for v in t.iter() {
        g.check_vertex(v)?;
    }
    let n = g.vertex_count();
    let total = n + t.len() * c as usize;
    let mut edges: Vec<(Vertex, Vertex, u32)> = g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect();
    let mut copies = Vec::with_capacity(t.len());
    let mut next = n;
    for v in t.iter() {
        let ids: Vec<Vertex> = (next..next + c as usize).collect();
        next += c as usize;
        for &p in &ids {
            edges.push((v, p, 1));
        }
        copies.push((v, ids));
    }
    let graph = MultiGraph::from_edges(total, edges)?;
    let terminals = TerminalSet::new((n..total).collect());
    Ok(Normalized {
        graph,
        terminals,
        copies,
    })
}

/// `G[X]` with one fresh degree-one terminal per unit of boundary
/// multiplicity.
#[derive(Clone, Debug)]
pub struct PendantView {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    /// Ids of `self.graph` in `0..origin.len()` are the vertices of `X`,
    /// `origin[i]` being the id in the parent graph.
    pub origin: Vec<Vertex>,
    /// For each pendant (in terminal order) the parent boundary edge.
    pub pendant_edge: Vec<EdgeId>,
}

impl PendantView {
    pub fn core_len(&self) -> usize {
        self.origin.len()
    }

    /// The vertex of `X` a pendant hangs from.
    pub fn attachment(&self, pendant: Vertex) -> Vertex {
        self.graph.neighbors(pendant)[0].0
    }
}

pub fn pendant_view(g: &MultiGraph, x: &[Vertex]) -> Result<PendantView> {
    let inside = g.mask(x)?;
    Ok(pendant_view_mask(g, &inside))
}

pub(crate) fn pendant_view_mask(g: &MultiGraph, inside: &[bool]) -> PendantView {
    let (core, origin) = g.induced_mask(inside);
    let k = origin.len();
    let mut edges: Vec<(Vertex, Vertex, u32)> = core.edges().iter().map(|e| (e.u, e.v, e.mult)).collect();
    let mut pendant_edge = Vec::new();
    let mut next = k;
    for (i, &v) in origin.iter().enumerate() {
        for &(w, id) in g.neighbors(v) {
            if inside[w] {
                continue;
            }
            for _ in 0..g.edge(id).mult {
                edges.push((i, next, 1));
                pendant_edge.push(id);
                next += 1;
            }
        }
    }
    let graph = MultiGraph::from_edges(next, edges).expect("ids in range");
    PendantView {
        graph,
        terminals: TerminalSet::new((k..next).collect()),
        origin,
        pendant_edge,
    }
}
