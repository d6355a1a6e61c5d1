//! Rooted binary tree decompositions with the root vertex in every bag and
//! every edge introduced at exactly one node.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Vertex;

use super::SndpInstance;

/// A decomposition as supplied by the user, e.g. read from a `.td` file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted bags.
    pub bags: Vec<Vec<Vertex>>,
    /// Either empty or exactly two children.
    pub children: Vec<Vec<usize>>,
    pub root: usize,
    /// Edge indices of the instance introduced at each node.
    pub edges_at: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Nodes with every child before its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            order.push(t);
            stack.extend(self.children[t].iter().rev());
        }
        order
    }

    /// Edge indices introduced in the subtree of each node.
    pub fn subtree_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for t in self.postorder() {
            let mut all = self.edges_at[t].clone();
            for &ch in &self.children[t] {
                all.extend_from_slice(&out[ch]);
            }
            all.sort_unstable();
            out[t] = all;
        }
        out
    }

    /// Checks every structural invariant against `inst`.
    pub fn check(&self, inst: &SndpInstance) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidDecomposition(m));
        let k = self.node_count();
        if k == 0 || self.root >= k {
            return fail("no root node".into());
        }
        let order = self.preorder();
        if order.len() != k || order.iter().collect::<BTreeSet<_>>().len() != k {
            return fail("nodes do not form a tree under the root".into());
        }
        for t in 0..k {
            match self.children[t].len() {
                0 if !self.edges_at[t].is_empty() => return fail(format!("leaf {t} introduces edges")),
                0 | 2 => {}
                _ => return fail(format!("node {t} does not have exactly two children")),
            }
            if self.bags[t].binary_search(&inst.root).is_err() {
                return fail(format!("bag {t} misses the root vertex"));
            }
        }
        let mut seen = vec![0usize; inst.edges.len()];
        for t in 0..k {
            for &e in &self.edges_at[t] {
                let (u, v, _) = inst.edges[e];
                if self.bags[t].binary_search(&u).is_err() || self.bags[t].binary_search(&v).is_err() {
                    return fail(format!("edge {e} introduced at node {t} whose bag misses an endpoint"));
                }
                seen[e] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&s| s != 1) {
            return fail(format!("edge {e} is introduced {} times", seen[e]));
        }
        let mut parent = vec![usize::MAX; k];
        for t in 0..k {
            for &ch in &self.children[t] {
                parent[ch] = t;
            }
        }
        check_vertex_subtrees(inst.n, &self.bags, &parent, self.root)
    }
}

/// Each vertex's bags must form one connected subtree: exactly one of them
/// has a parent that misses the vertex.
fn check_vertex_subtrees(n: usize, bags: &[Vec<Vertex>], parent: &[usize], root: usize) -> Result<()> {
    let mut tops = vec![0usize; n];
    for (t, bag) in bags.iter().enumerate() {
        for &v in bag {
            let p = parent[t];
            if t == root || p == usize::MAX || bags[p].binary_search(&v).is_err() {
                tops[v] += 1;
            }
        }
    }
    if let Some(v) = tops.iter().position(|&x| x == 0) {
        return Err(Error::InvalidDecomposition(format!("vertex {v} is in no bag")));
    }
    if let Some(v) = tops.iter().position(|&x| x > 1) {
        return Err(Error::InvalidDecomposition(format!(
            "bags containing vertex {v} are not connected"
        )));
    }
    Ok(())
}

/// Builds a normalised decomposition of the instance graph, from `raw` when
/// given and otherwise with the min-degree heuristic.
pub fn prepare_decomposition(inst: &SndpInstance, raw: Option<&RawDecomposition>) -> Result<TreeDecomposition> {
    let owned;
    let raw = match raw {
        Some(r) => {
            validate_raw(inst, r)?;
            r
        }
        None => {
            if inst.n > 40 {
                return Err(Error::GuardExceeded {
                    what: "vertices for the built-in decomposition",
                    limit: 40,
                    actual: inst.n,
                });
            }
            owned = min_degree(inst);
            &owned
        }
    };
    let td = normalise(inst, raw);
    td.check(inst)?;
    Ok(td)
}

fn validate_raw(inst: &SndpInstance, raw: &RawDecomposition) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidDecomposition(m));
    let k = raw.bags.len();
    if k == 0 {
        return fail("no bags".into());
    }
    for bag in &raw.bags {
        if let Some(&v) = bag.iter().find(|&&v| v >= inst.n) {
            return fail(format!("bag mentions unknown vertex {v}"));
        }
    }
    if raw.tree_edges.len() != k - 1 {
        return fail(format!("{} tree edges for {k} bags", raw.tree_edges.len()));
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &raw.tree_edges {
        if a >= k || b >= k {
            return fail(format!("tree edge ({a}, {b}) names a missing bag"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let parent = bfs_parents(&adj, 0);
    if parent.iter().skip(1).any(|&p| p == usize::MAX) {
        return fail("tree edges do not connect all bags".into());
    }
    let sorted: Vec<Vec<Vertex>> = raw.bags.iter().map(|b| sorted(b.iter().copied())).collect();
    for (i, &(u, v, _)) in inst.edges.iter().enumerate() {
        if !sorted
            .iter()
            .any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok())
        {
            return fail(format!("edge {i} ({u}, {v}) is in no bag"));
        }
    }
    check_vertex_subtrees(inst.n, &sorted, &parent, 0)
}

fn bfs_parents(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent
}

fn sorted(it: impl Iterator<Item = Vertex>) -> Vec<Vertex> {
    let mut v: Vec<Vertex> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Eliminates a minimum-degree vertex at a time (ties to the smaller id).
fn min_degree(inst: &SndpInstance) -> RawDecomposition {
    let n = inst.n;
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for &(u, v, _) in &inst.edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].len(), v)).unwrap();
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        alive[v] = false;
        order.push(v);
        bags.push(sorted(nb.iter().copied().chain([v])));
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Each bag hangs below the bag of its first-eliminated later neighbour;
    // component roots are chained together.
    let mut tree_edges = Vec::new();
    let mut last_root = None;
    for (i, bag) in bags.iter().enumerate() {
        let next = bag.iter().filter(|&&u| u != order[i]).map(|&u| position[u]).min();
        match next {
            Some(j) => tree_edges.push((i, j)),
            None => {
                if let Some(r) = last_root {
                    tree_edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    if n == 0 {
        bags.push(Vec::new());
    }
    RawDecomposition { bags, tree_edges }
}

fn normalise(inst: &SndpInstance, raw: &RawDecomposition) -> TreeDecomposition {
    let k = raw.bags.len();
    let bags: Vec<Vec<Vertex>> = raw
        .bags
        .iter()
        .map(|b| sorted(b.iter().copied().chain((inst.n > 0).then_some(inst.root))))
        .collect();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &raw.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let parent = bfs_parents(&adj, 0);
    let mut depth = vec![0usize; k];
    let mut kids = vec![Vec::new(); k];
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        let mut ch: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x && y != 0).collect();
        ch.sort_unstable();
        for &y in &ch {
            depth[y] = depth[x] + 1;
            order.push(y);
        }
        kids[x] = ch;
    }
    let mut edges_at = vec![Vec::new(); k];
    for (e, &(u, v, _)) in inst.edges.iter().enumerate() {
        let home = (0..k)
            .filter(|&t| bags[t].binary_search(&u).is_ok() && bags[t].binary_search(&v).is_ok())
            .min_by_key(|&t| (depth[t], t))
            .expect("validated: every edge lies in a bag");
        edges_at[home].push(e);
    }

    let mut out = TreeDecomposition {
        bags: Vec::new(),
        children: Vec::new(),
        root: 0,
        edges_at: Vec::new(),
    };
    let add = |out: &mut TreeDecomposition, bag: &Vec<Vertex>, edges: Vec<usize>| {
        out.bags.push(bag.clone());
        out.children.push(Vec::new());
        out.edges_at.push(edges);
        out.bags.len() - 1
    };
    // Work list of (old node, new node id, children still to attach).
    let root = add(&mut out, &bags[0], std::mem::take(&mut edges_at[0]));
    let mut stack = vec![(0usize, root)];
    while let Some((old, new)) = stack.pop() {
        let ch = &kids[old];
        let mut attach = |out: &mut TreeDecomposition, child_old: usize, stack: &mut Vec<(usize, usize)>| {
            let id = add(out, &bags[child_old], std::mem::take(&mut edges_at[child_old]));
            stack.push((child_old, id));
            id
        };
        let mut at = new;
        match ch.len() {
            0 => {
                if !out.edges_at[new].is_empty() {
                    let a = add(&mut out, &bags[old], Vec::new());
                    let b = add(&mut out, &bags[old], Vec::new());
                    out.children[new] = vec![a, b];
                }
            }
            1 => {
                let a = attach(&mut out, ch[0], &mut stack);
                let b = add(&mut out, &bags[old], Vec::new());
                out.children[new] = vec![a, b];
            }
            _ => {
                // A chain of edge-free copies of the bag, one child each.
                for (j, &c) in ch.iter().enumerate() {
                    let a = attach(&mut out, c, &mut stack);
                    if j + 2 == ch.len() {
                        let b = attach(&mut out, ch[j + 1], &mut stack);
                        out.children[at] = vec![a, b];
                        break;
                    }
                    let dup = add(&mut out, &bags[old], Vec::new());
                    out.children[at] = vec![a, dup];
                    at = dup;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(Vertex, Vertex)], root: Vertex) -> SndpInstance {
        SndpInstance {
            n,
            edges: edges.iter().map(|&(u, v)| (u, v, 1)).collect(),
            root,
            demands: Vec::new(),
        }
    }

    #[test]
    fn path_has_width_one_before_root_augmentation() {
        let p = inst(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 0);
        let raw = min_degree(&p);
        assert_eq!(raw.bags.iter().map(Vec::len).max(), Some(2));
        let td = prepare_decomposition(&p, None).unwrap();
        td.check(&p).unwrap();
        assert!(td.width() <= 2);
    }

    #[test]
    fn binarises_a_three_way_split() {
        let star = inst(4, &[(0, 1), (0, 2), (0, 3)], 0);
        let raw = RawDecomposition {
            bags: vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]],
            tree_edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        let td = prepare_decomposition(&star, Some(&raw)).unwrap();
        td.check(&star).unwrap();
        for bag in &raw.bags {
            assert!(td.bags.contains(bag));
        }
    }

    #[test]
    fn tree_bags_have_at_most_three_vertices() {
        let t = inst(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)], 6);
        let td = prepare_decomposition(&t, None).unwrap();
        td.check(&t).unwrap();
        assert!(td.bags.iter().all(|b| b.len() <= 3));
    }

    #[test]
    fn rejects_broken_raw_decompositions() {
        let p = inst(3, &[(0, 1), (1, 2)], 0);
        let missing_edge = RawDecomposition {
            bags: vec![vec![0, 1], vec![2]],
            tree_edges: vec![(0, 1)],
        };
        let err = prepare_decomposition(&p, Some(&missing_edge)).unwrap_err();
        assert!(err.to_string().contains("edge 1"));
        let split = RawDecomposition {
            bags: vec![vec![0, 1], vec![2, 0], vec![1, 2]],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        let err = prepare_decomposition(&p, Some(&split)).unwrap_err();
        assert!(err.to_string().contains("vertex 1"));
    }

    #[test]
    fn disconnected_graph_gets_one_tree() {
        let g = inst(4, &[(0, 1), (2, 3)], 0);
        let td = prepare_decomposition(&g, None).unwrap();
        td.check(&g).unwrap();
    }
}
