//! The table `D[t, Γ, Δ]`, filled in three passes.
//!
//! 1. Bottom-up, the Γ states reachable at each node from some edge choice
//!    below it, with the transitions `(Y, Γ1, Γ2) -> Γ`.
//! 2. Top-down, the reachable Δ states: `Δ1 = Y ∪ Δ ∪ Γ2` and
//!    `Δ2 = Y ∪ Δ ∪ Γ1` for every parent Δ and transition ingredients.
//! 3. Bottom-up, the costs over reachable `(Γ, Δ)` pairs, dropping pairs
//!    whose union misses a demand in the bag.
//!
//! States with equal signatures are interchangeable, so each signature keeps
//! the first representative that produced it.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::mincut::thresholded_mincut;

use super::state::{glue, union, Part, State, StateSignature};
use super::{SndpInstance, SndpSolution, TreeDecomposition};

/// Largest number of edges introduced at one node.
/// Cap on the edge subsets worth trying at one node, after parallel copies
/// beyond `c` are dropped.
const MAX_CHOICES_AT_NODE: usize = 1 << 16;

/// The states chosen at one node by a reconstructed solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeTrace {
    pub node: usize,
    pub gamma: StateSignature,
    pub delta: StateSignature,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SndpTrace {
    pub nodes: Vec<NodeTrace>,
    /// Distinct `(Γ, Δ)` pairs with a finite entry, summed over nodes.
    pub finite_entries: usize,
}

pub fn solve_sndp(inst: &SndpInstance, td: &TreeDecomposition, c: u32) -> Result<Option<SndpSolution>> {
    Ok(solve_sndp_traced(inst, td, c)?.map(|(s, _)| s))
}

pub fn solve_sndp_traced(
    inst: &SndpInstance,
    td: &TreeDecomposition,
    c: u32,
) -> Result<Option<(SndpSolution, SndpTrace)>> {
    inst.validate(c)?;
    td.check(inst)?;
    for t in 0..td.node_count() {
        let n = choice_count(inst, &td.edges_at[t], c);
        if n > MAX_CHOICES_AT_NODE {
            return Err(Error::GuardExceeded {
                what: "edge subsets at one decomposition node",
                limit: MAX_CHOICES_AT_NODE,
                actual: n,
            });
        }
    }
    let mut dp = Dp::new(inst, td, c);
    dp.gammas();
    dp.deltas();
    dp.costs();
    let Some((cost, g)) = dp.best_root() else {
        return Ok(None);
    };
    let mut edges = Vec::new();
    let mut trace = SndpTrace {
        finite_entries: dp.table.iter().map(|m| m.len()).sum(),
        ..Default::default()
    };
    dp.reconstruct(td.root, g, 0, &mut edges, &mut trace);
    edges.sort_unstable();
    trace.nodes.sort_by_key(|n| n.node);
    let solution = SndpSolution { cost, edges };
    assert_eq!(
        inst.cost_of(&solution.edges),
        cost,
        "reconstructed cost differs from the table"
    );
    assert!(
        inst.is_feasible(&solution.edges)?,
        "reconstructed edge set misses a demand"
    );
    Ok(Some((solution, trace)))
}

/// Cheapest edge subset per distinct multigraph on the bag.
struct YChoice {
    pairs: Vec<(Vertex, Vertex)>,
    edges: Vec<usize>,
    cost: u64,
}

struct Transition {
    y: usize,
    g1: usize,
    g2: usize,
    g: usize,
}

#[derive(Clone, Copy)]
struct Entry {
    cost: u64,
    transition: usize,
    d1: usize,
    d2: usize,
}

#[derive(Default)]
struct StateSet {
    states: Vec<State>,
    index: HashMap<StateSignature, usize>,
}

impl StateSet {
    fn insert(&mut self, s: State) -> usize {
        if let Some(&i) = self.index.get(&s.sig) {
            return i;
        }
        self.index.insert(s.sig.clone(), self.states.len());
        self.states.push(s);
        self.states.len() - 1
    }
}

struct Dp<'a> {
    inst: &'a SndpInstance,
    td: &'a TreeDecomposition,
    c: u32,
    ys: Vec<Vec<YChoice>>,
    gamma: Vec<StateSet>,
    delta: Vec<StateSet>,
    trans: Vec<Vec<Transition>>,
    /// Per internal node: `(Δ, y, Γ2) -> Δ1` and `(Δ, y, Γ1) -> Δ2`.
    to_d1: Vec<HashMap<(usize, usize, usize), usize>>,
    to_d2: Vec<HashMap<(usize, usize, usize), usize>>,
    /// `(Γ, Δ) -> entry`, finite entries only.
    table: Vec<BTreeMap<(usize, usize), Entry>>,
}

impl<'a> Dp<'a> {
    fn new(inst: &'a SndpInstance, td: &'a TreeDecomposition, c: u32) -> Self {
        let k = td.node_count();
        let ys = (0..k).map(|t| y_choices(inst, &td.edges_at[t], c)).collect();
        Dp {
            inst,
            td,
            c,
            ys,
            gamma: (0..k).map(|_| StateSet::default()).collect(),
            delta: (0..k).map(|_| StateSet::default()).collect(),
            trans: (0..k).map(|_| Vec::new()).collect(),
            to_d1: vec![HashMap::new(); k],
            to_d2: vec![HashMap::new(); k],
            table: vec![BTreeMap::new(); k],
        }
    }

    fn kids(&self, t: usize) -> Option<(usize, usize)> {
        match self.td.children[t][..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    fn gammas(&mut self) {
        for t in self.td.postorder() {
            let bag = &self.td.bags[t];
            let Some((t1, t2)) = self.kids(t) else {
                self.gamma[t].insert(State::empty(bag.len(), self.c));
                continue;
            };
            let mut set = StateSet::default();
            let mut trans = Vec::new();
            for (y, choice) in self.ys[t].iter().enumerate() {
                for (g1, s1) in self.gamma[t1].states.iter().enumerate() {
                    for (g2, s2) in self.gamma[t2].states.iter().enumerate() {
                        let parts = [
                            Part {
                                bag: &self.td.bags[t1],
                                graph: &s1.rep,
                            },
                            Part {
                                bag: &self.td.bags[t2],
                                graph: &s2.rep,
                            },
                        ];
                        let g = set.insert(glue(bag, &parts, &choice.pairs, self.c));
                        trans.push(Transition { y, g1, g2, g });
                    }
                }
            }
            self.gamma[t] = set;
            self.trans[t] = trans;
        }
    }

    fn deltas(&mut self) {
        let root = self.td.root;
        let b = self.td.bags[root].len();
        self.delta[root].insert(State::empty(b, self.c));
        for t in self.td.preorder() {
            let Some((t1, t2)) = self.kids(t) else { continue };
            let bag = &self.td.bags[t];
            for (side, (child, sibling)) in [(t1, t2), (t2, t1)].into_iter().enumerate() {
                let mut map = HashMap::new();
                let mut set = std::mem::take(&mut self.delta[child]);
                for (d, ds) in self.delta[t].states.iter().enumerate() {
                    for (y, choice) in self.ys[t].iter().enumerate() {
                        for (gs, ss) in self.gamma[sibling].states.iter().enumerate() {
                            let parts = [
                                Part { bag, graph: &ds.rep },
                                Part {
                                    bag: &self.td.bags[sibling],
                                    graph: &ss.rep,
                                },
                            ];
                            let idx = set.insert(glue(&self.td.bags[child], &parts, &choice.pairs, self.c));
                            map.insert((d, y, gs), idx);
                        }
                    }
                }
                self.delta[child] = set;
                if side == 0 {
                    self.to_d1[t] = map;
                } else {
                    self.to_d2[t] = map;
                }
            }
        }
    }

    /// Demands located in the bag hold in `Γ ∪ Δ`.
    fn demands_hold(&self, t: usize, g: usize, d: usize) -> bool {
        let bag = &self.td.bags[t];
        let root = bag.binary_search(&self.inst.root).expect("root is in every bag");
        let local: Vec<(usize, u32)> = self
            .inst
            .demands
            .iter()
            .filter(|dm| dm.vertex != self.inst.root)
            .filter_map(|dm| bag.binary_search(&dm.vertex).ok().map(|i| (i, dm.req)))
            .collect();
        if local.is_empty() {
            return true;
        }
        let parts = [
            Part {
                bag,
                graph: &self.gamma[t].states[g].rep,
            },
            Part {
                bag,
                graph: &self.delta[t].states[d].rep,
            },
        ];
        let h = union(bag, &parts, &[]);
        local
            .iter()
            .all(|&(v, req)| thresholded_mincut(&h, &[root], &[v], req).expect("distinct bag positions") >= req)
    }

    fn costs(&mut self) {
        for t in self.td.postorder() {
            let mut table: BTreeMap<(usize, usize), Entry> = BTreeMap::new();
            let nd = self.delta[t].states.len();
            let Some((t1, t2)) = self.kids(t) else {
                for d in 0..nd {
                    if self.demands_hold(t, 0, d) {
                        let e = Entry {
                            cost: 0,
                            transition: usize::MAX,
                            d1: 0,
                            d2: 0,
                        };
                        table.insert((0, d), e);
                    }
                }
                self.table[t] = table;
                continue;
            };
            let mut holds: HashMap<(usize, usize), bool> = HashMap::new();
            for d in 0..nd {
                for (i, tr) in self.trans[t].iter().enumerate() {
                    let d1 = self.to_d1[t][&(d, tr.y, tr.g2)];
                    let d2 = self.to_d2[t][&(d, tr.y, tr.g1)];
                    let (Some(e1), Some(e2)) = (self.table[t1].get(&(tr.g1, d1)), self.table[t2].get(&(tr.g2, d2)))
                    else {
                        continue;
                    };
                    let cost = self.ys[t][tr.y].cost + e1.cost + e2.cost;
                    if table.get(&(tr.g, d)).is_some_and(|e| e.cost <= cost) {
                        continue;
                    }
                    let ok = *holds.entry((tr.g, d)).or_insert_with(|| self.demands_hold(t, tr.g, d));
                    if ok {
                        table.insert(
                            (tr.g, d),
                            Entry {
                                cost,
                                transition: i,
                                d1,
                                d2,
                            },
                        );
                    }
                }
            }
            self.table[t] = table;
        }
    }

    /// Cheapest root entry with the empty Δ (index 0 at the root).
    fn best_root(&self) -> Option<(u64, usize)> {
        self.table[self.td.root]
            .iter()
            .filter(|((_, d), _)| *d == 0)
            .min_by_key(|((g, _), e)| (e.cost, *g))
            .map(|((g, _), e)| (e.cost, *g))
    }

    fn reconstruct(&self, t: usize, g: usize, d: usize, edges: &mut Vec<usize>, trace: &mut SndpTrace) {
        trace.nodes.push(NodeTrace {
            node: t,
            gamma: self.gamma[t].states[g].sig.clone(),
            delta: self.delta[t].states[d].sig.clone(),
        });
        let Some((t1, t2)) = self.kids(t) else { return };
        let e = self.table[t][&(g, d)];
        let tr = &self.trans[t][e.transition];
        edges.extend_from_slice(&self.ys[t][tr.y].edges);
        self.reconstruct(t1, tr.g1, e.d1, edges, trace);
        self.reconstruct(t2, tr.g2, e.d2, edges, trace);
    }
}

/// Edges at a node grouped by endpoint pair, cheapest first, with at most
/// `c` copies kept per pair. Loops never help and are left out.
fn pair_groups(inst: &SndpInstance, at: &[usize], c: u32) -> Vec<((Vertex, Vertex), Vec<usize>)> {
    let mut groups: BTreeMap<(Vertex, Vertex), Vec<usize>> = BTreeMap::new();
    for &e in at {
        let (u, v, _) = inst.edges[e];
        if u != v {
            groups.entry((u.min(v), u.max(v))).or_default().push(e);
        }
    }
    groups
        .into_iter()
        .map(|(p, mut es)| {
            es.sort_by_key(|&e| (inst.edges[e].2, e));
            es.truncate(c as usize);
            (p, es)
        })
        .collect()
}

fn choice_count(inst: &SndpInstance, at: &[usize], c: u32) -> usize {
    pair_groups(inst, at, c)
        .iter()
        .try_fold(1usize, |acc, (_, es)| acc.checked_mul(es.len() + 1))
        .unwrap_or(usize::MAX)
}

/// Every multiplicity vector over the pairs, each realised by its cheapest
/// copies. Taking more than `c` copies of a pair cannot change a
/// thresholded cut, so nothing is lost.
fn y_choices(inst: &SndpInstance, at: &[usize], c: u32) -> Vec<YChoice> {
    let groups = pair_groups(inst, at, c);
    let mut out = vec![YChoice {
        pairs: Vec::new(),
        edges: Vec::new(),
        cost: 0,
    }];
    for (pair, es) in &groups {
        let mut next = Vec::with_capacity(out.len() * (es.len() + 1));
        for y in &out {
            for j in 0..=es.len() {
                let mut z = YChoice {
                    pairs: y.pairs.clone(),
                    edges: y.edges.clone(),
                    cost: y.cost,
                };
                for &e in &es[..j] {
                    z.pairs.push(*pair);
                    z.edges.push(e);
                    z.cost += inst.edges[e].2;
                }
                next.push(z);
            }
        }
        out = next;
    }
    for y in &mut out {
        y.edges.sort_unstable();
    }
    out
}
