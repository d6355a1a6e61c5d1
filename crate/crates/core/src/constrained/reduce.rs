//! One reduction step for instances where both quotas are positive.
//!
//! Take a minimum cut `(A'0, A'1)` that respects the forced sets and has a
//! terminal on each side. If it already meets both quotas we are done.
//! Otherwise let `d` be a side whose quota is not met. Every vertex of
//! `A'd` whose side matters to the rest of the graph is either a terminal of
//! `A'd` or an endpoint of a crossing edge, and there are few of them, so we
//! try every assignment of those vertices to sides. Each assignment fixes a
//! minimum cut inside `A'd` and leaves a smaller instance on `A'o` with
//! reduced quotas.

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, TerminalSet, Vertex};
use crate::mincut::{max_flow, Scope};

use super::{solve, ConstrainedSpec, Instance, Side, SolveStats};

/// Outcome of a single reduction step.
#[derive(Clone, Debug)]
pub enum ReduceStep {
    /// No cut with a terminal on each side fits the budget.
    NoSolution,
    /// The minimum split already meets both quotas.
    Done(Cut),
    /// Sub-instances on the non-deficient side; any solved one combines
    /// into a solution, and a solution exists only if one of them is
    /// solvable.
    Branches { deficient: Side, branches: Vec<Branch> },
}

/// A sub-instance on `G[A'o]` plus the fixed part of the cut inside `A'd`.
#[derive(Clone, Debug)]
pub struct Branch {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    /// Forced sets may contain terminals pinned by the guess.
    pub spec: ConstrainedSpec,
    /// Maps sub-instance vertices to the parent graph.
    pub origin: Vec<Vertex>,
    /// Parent vertices outside the sub-instance that end up on side 0.
    pub fixed_side0: Vec<Vertex>,
    /// Crossing edges paid for by the guess plus the cut inside `A'd`.
    pub fixed_cost: u64,
}

impl Branch {
    pub fn combine(&self, parent: &MultiGraph, sub: &Cut) -> Cut {
        let mut side0 = vec![false; parent.vertex_count()];
        for &v in &self.fixed_side0 {
            side0[v] = true;
        }
        for &v in &sub.side0 {
            side0[self.origin[v]] = true;
        }
        Cut::from_mask(parent, &side0)
    }
}

/// Performs one reduction step on a public spec with both quotas positive.
pub fn reduce_step(g: &MultiGraph, t: &TerminalSet, spec: &ConstrainedSpec) -> Result<ReduceStep> {
    spec.validate(g, t)?;
    if spec.c0 == 0 || spec.c1 == 0 {
        return Err(Error::invalid("reduction needs both quotas positive"));
    }
    let inst = Instance::from_spec(g, t, spec);
    let Some(split) = min_split(&inst) else {
        return Ok(ReduceStep::NoSolution);
    };
    let Some(plan) = Plan::new(&inst, split.clone()) else {
        return Ok(ReduceStep::Done(Cut::from_mask(g, &split)));
    };
    let mut branches = Vec::new();
    for mask in 0..plan.mask_count() {
        let Some(b) = plan.branch(&inst, mask) else {
            continue;
        };
        let n_sub = plan.sub_graph.vertex_count();
        let pick = |m: &[bool]| (0..n_sub).filter(|&v| m[v]).collect::<Vec<_>>();
        branches.push(Branch {
            graph: plan.sub_graph.clone(),
            terminals: TerminalSet::new(pick(&plan.sub_term)),
            spec: ConstrainedSpec {
                q0: pick(&b.q0),
                q1: pick(&b.q1),
                c0: b.c0,
                c1: b.c1,
                ell: b.ell,
            },
            origin: plan.origin.clone(),
            fixed_side0: (0..g.vertex_count()).filter(|&v| b.fixed_side0[v]).collect(),
            fixed_cost: b.fixed_cost,
        });
    }
    Ok(ReduceStep::Branches {
        deficient: plan.deficient,
        branches,
    })
}

pub(super) fn solve_two_sided(inst: &Instance, depth: usize, stats: &mut SolveStats) -> Option<Vec<bool>> {
    let split = min_split(inst)?;
    let Some(plan) = Plan::new(inst, split.clone()) else {
        return Some(split);
    };
    let mut spawned = 0;
    let mut found = None;
    for mask in 0..plan.mask_count() {
        let Some(b) = plan.branch(inst, mask) else {
            continue;
        };
        spawned += 1;
        let sub = Instance {
            g: plan.sub_graph.clone(),
            term: plan.sub_term.clone(),
            q0: b.q0,
            q1: b.q1,
            c0: b.c0,
            c1: b.c1,
            ell: b.ell,
        };
        if let Some(side) = solve(&sub, depth + 1, stats) {
            let mut full = b.fixed_side0;
            for (v, &s) in side.iter().enumerate() {
                full[plan.origin[v]] = s;
            }
            debug_assert!(inst.is_valid(&full));
            found = Some(full);
            break;
        }
    }
    stats.max_branches = stats.max_branches.max(spawned);
    found
}

/// Minimum cut respecting the forced sets with at least one terminal on
/// each side, if it fits the budget. One terminal `p` is fixed first so
/// only `2(k - 1)` pairs need a flow.
pub(super) fn min_split(inst: &Instance) -> Option<Vec<bool>> {
    let n = inst.n();
    let terms: Vec<Vertex> = (0..n).filter(|&v| inst.term[v]).collect();
    let &p = terms.first()?;
    let mut best: Option<(u64, Vec<bool>)> = None;
    let mut attempt = |t0: Vertex, t1: Vertex| {
        if t0 == t1 || inst.q1[t0] || inst.q0[t1] {
            return;
        }
        let bound = best.as_ref().map_or(inst.ell + 1, |b| b.0);
        let mut src = inst.q0.clone();
        src[t0] = true;
        let mut snk = inst.q1.clone();
        snk[t1] = true;
        let flow = max_flow(&inst.g, &src, &snk, bound, Scope::default());
        if flow.value < bound {
            let side = flow.source_reach(&inst.g, &src, Scope::default());
            best = Some((flow.value, side));
        }
    };
    for &t in &terms {
        attempt(p, t);
    }
    for &t in &terms {
        attempt(t, p);
    }
    best.map(|b| b.1)
}

struct Plan {
    deficient: Side,
    /// Membership in `A'd`.
    in_d: Vec<bool>,
    /// Vertices whose side is guessed, ascending.
    guessed: Vec<Vertex>,
    crossing: Vec<usize>,
    sub_graph: MultiGraph,
    sub_term: Vec<bool>,
    origin: Vec<Vertex>,
}

struct BranchData {
    q0: Vec<bool>,
    q1: Vec<bool>,
    c0: u32,
    c1: u32,
    ell: u64,
    fixed_side0: Vec<bool>,
    fixed_cost: u64,
}

impl Plan {
    /// `None` when `split` already meets both quotas.
    fn new(inst: &Instance, split: Vec<bool>) -> Option<Plan> {
        let n = inst.n();
        let on0 = (0..n).filter(|&v| inst.term[v] && split[v]).count() as u32;
        let on1 = (0..n).filter(|&v| inst.term[v] && !split[v]).count() as u32;
        let deficient = if on0 < inst.c0 {
            Side::Zero
        } else if on1 < inst.c1 {
            Side::One
        } else {
            return None;
        };
        let in_d: Vec<bool> = match deficient {
            Side::Zero => split,
            Side::One => split.iter().map(|&b| !b).collect(),
        };
        let crossing = inst.g.boundary_of_mask(&in_d);
        let mut touched = vec![false; n];
        for &id in &crossing {
            let e = inst.g.edge(id);
            touched[e.u] = true;
            touched[e.v] = true;
        }
        let guessed: Vec<Vertex> = (0..n)
            .filter(|&v| (touched[v] || (inst.term[v] && in_d[v])) && !inst.q0[v] && !inst.q1[v])
            .collect();
        let in_o: Vec<bool> = in_d.iter().map(|&b| !b).collect();
        let (sub_graph, origin) = inst.g.induced_mask(&in_o);
        let sub_term = origin.iter().map(|&v| inst.term[v]).collect();
        Some(Plan {
            deficient,
            in_d,
            guessed,
            crossing,
            sub_graph,
            sub_term,
            origin,
        })
    }

    fn mask_count(&self) -> u64 {
        1u64 << self.guessed.len()
    }

    /// Sub-instance for one assignment (bit set = side 1), or `None` when
    /// the assignment already overspends the budget.
    fn branch(&self, inst: &Instance, mask: u64) -> Option<BranchData> {
        let n = inst.n();
        let g = &inst.g;
        let mut to0 = inst.q0.clone();
        let mut to1 = inst.q1.clone();
        for (i, &v) in self.guessed.iter().enumerate() {
            if mask >> i & 1 == 1 {
                to1[v] = true;
            } else {
                to0[v] = true;
            }
        }
        let paid: u64 = self
            .crossing
            .iter()
            .map(|&id| g.edge(id))
            .filter(|e| to0[e.u] != to0[e.v])
            .map(|e| e.mult as u64)
            .sum();
        if paid > inst.ell {
            return None;
        }
        let src: Vec<bool> = (0..n).map(|v| to0[v] && self.in_d[v]).collect();
        let snk: Vec<bool> = (0..n).map(|v| to1[v] && self.in_d[v]).collect();
        let scope = Scope {
            active: Some(&self.in_d),
            disabled: None,
        };
        let left = inst.ell - paid;
        let (inner, side_d) = if !snk.iter().any(|&b| b) {
            (0, self.in_d.clone())
        } else {
            let flow = max_flow(g, &src, &snk, left + 1, scope);
            if flow.value > left {
                return None;
            }
            (flow.value, flow.source_reach(g, &src, scope))
        };
        let got0 = (0..n).filter(|&v| inst.term[v] && self.in_d[v] && side_d[v]).count() as u32;
        let got1 = (0..n).filter(|&v| inst.term[v] && self.in_d[v] && !side_d[v]).count() as u32;
        let k = self.sub_graph.vertex_count();
        let mut q0 = vec![false; k];
        let mut q1 = vec![false; k];
        for (i, &v) in self.origin.iter().enumerate() {
            q0[i] = to0[v];
            q1[i] = to1[v];
        }
        Some(BranchData {
            q0,
            q1,
            c0: inst.c0.saturating_sub(got0),
            c1: inst.c1.saturating_sub(got1),
            ell: left - inner,
            fixed_side0: side_d,
            fixed_cost: paid + inner,
        })
    }
}
