//! One-sided instances: at least `c` terminals on side 0, none required on
//! side 1.
//!
//! Some optimal solution has every component of `G[A0]` equal to the source
//! side of an important cut, either for `(Q0, Q1)` or for `(t, Q1)` with a
//! terminal `t`. Components are matched to slots of a profile vector and
//! filled from a small pool of candidate cuts collected greedily.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, TerminalSet, Vertex};
use crate::important::important_cuts_mask;
use crate::mincut::{max_flow, Scope};

use super::profile::canonical_profiles;
use super::{solve, ConstrainedSpec, Instance, Side, SolveStats};

/// Solves an instance whose only quota, `c_req`, sits on `side`.
pub fn solve_base(
    g: &MultiGraph,
    t: &TerminalSet,
    q0: &[Vertex],
    q1: &[Vertex],
    c_req: u32,
    ell: u64,
    side: Side,
) -> Result<Option<Cut>> {
    let (c0, c1) = match side {
        Side::Zero => (c_req, 0),
        Side::One => (0, c_req),
    };
    let spec = ConstrainedSpec {
        q0: q0.to_vec(),
        q1: q1.to_vec(),
        c0,
        c1,
        ell,
    };
    spec.validate(g, t)?;
    if c0 > 0 && c1 > 0 {
        return Err(Error::invalid("base case takes a single quota"));
    }
    let inst = Instance::from_spec(g, t, &spec);
    let side0 = solve(&inst, 0, &mut SolveStats::default());
    Ok(side0.map(|s| Cut::from_mask(g, &s)))
}

/// Quota `inst.c0` on side 0, `inst.c1 == 0`.
pub(super) fn solve_one_sided(inst: &Instance) -> Option<Vec<bool>> {
    let n = inst.n();
    let g = &inst.g;
    if inst.c0 == 0 {
        return plain_min_cut(g, &inst.q0, &inst.q1, inst.ell);
    }
    if !inst.q1.iter().any(|&b| b) {
        let all = vec![true; n];
        return inst.is_valid(&all).then_some(all);
    }

    // Components that never meet Q1 go to side 0 for free.
    let mut side0 = vec![false; n];
    let mut keep = vec![false; n];
    let mut free_terms = 0;
    for comp in g.components() {
        if comp.iter().any(|&v| inst.q1[v]) {
            comp.iter().for_each(|&v| keep[v] = true);
        } else {
            for &v in &comp {
                side0[v] = true;
                free_terms += inst.term[v] as u32;
            }
        }
    }
    let need = inst.c0.saturating_sub(free_terms);
    let (sub, origin) = g.induced_mask(&keep);
    let pick = |m: &[bool]| origin.iter().map(|&v| m[v]).collect::<Vec<_>>();
    let (term, q0, q1) = (pick(&inst.term), pick(&inst.q0), pick(&inst.q1));
    let inner = if need == 0 {
        plain_min_cut(&sub, &q0, &q1, inst.ell)
    } else {
        Search::new(&sub, &term, &q0, &q1, need, inst.ell).run()
    }?;
    for (i, &v) in origin.iter().enumerate() {
        side0[v] = inner[i];
    }
    inst.is_valid(&side0).then_some(side0)
}

fn plain_min_cut(g: &MultiGraph, q0: &[bool], q1: &[bool], ell: u64) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    if !q1.iter().any(|&b| b) {
        return Some(vec![true; n]);
    }
    if !q0.iter().any(|&b| b) {
        return Some(vec![false; n]);
    }
    let flow = max_flow(g, q0, q1, ell + 1, Scope::default());
    (flow.value <= ell).then(|| flow.source_reach(g, q0, Scope::default()))
}

#[derive(Clone, Debug)]
struct Candidate {
    side: Vec<bool>,
    terms: Vec<Vertex>,
    size: u64,
}

struct Search<'a> {
    g: &'a MultiGraph,
    q1: &'a [bool],
    need: u32,
    ell: u64,
    roots: Vec<Candidate>,
    pool: Vec<Candidate>,
}

impl<'a> Search<'a> {
    fn new(g: &'a MultiGraph, term: &[bool], q0: &[bool], q1: &'a [bool], need: u32, ell: u64) -> Self {
        let n = g.vertex_count();
        // Chain Q0 together with edges too heavy to cut, so it behaves as a
        // single connected source.
        let q0_list: Vec<Vertex> = (0..n).filter(|&v| q0[v]).collect();
        let heavy = u32::try_from(ell + 1).unwrap_or(u32::MAX);
        let glued = MultiGraph::from_edges(
            n,
            g.edges()
                .iter()
                .map(|e| (e.u, e.v, e.mult))
                .chain(q0_list.windows(2).map(|w| (w[0], w[1], heavy))),
        )
        .expect("ids in range");
        let describe = |side: Vec<bool>| {
            let terms = (0..n).filter(|&v| side[v] && term[v]).collect();
            let size = g.boundary_of_mask(&side).iter().map(|&id| g.edge(id).mult as u64).sum();
            Candidate { side, terms, size }
        };

        let roots = if q0_list.is_empty() {
            vec![describe(vec![false; n])]
        } else {
            important_cuts_mask(&glued, q0, q1, ell)
                .into_iter()
                .map(|c| describe(c.cut.side0_mask(n)))
                .collect()
        };
        let mut unique: BTreeMap<(u64, Vec<bool>), ()> = BTreeMap::new();
        for t in (0..n).filter(|&v| term[v] && !q1[v]) {
            let mut x = vec![false; n];
            x[t] = true;
            for c in important_cuts_mask(&glued, &x, q1, ell) {
                unique.insert((c.size, c.cut.side0_mask(n)), ());
            }
        }
        let pool = unique.into_keys().map(|(_, side)| describe(side)).collect();
        Search {
            g,
            q1,
            need,
            ell,
            roots,
            pool,
        }
    }

    fn run(&self) -> Option<Vec<bool>> {
        let need = self.need as usize;
        if let Some(c0) = self.roots.iter().find(|c| c.terms.len() >= need) {
            return Some(c0.side.clone());
        }
        for c0 in &self.roots {
            for c1 in &self.pool {
                if c0.terms.len() + c1.terms.len() >= need && disjoint(&c0.terms, &c1.terms) {
                    let side = union(&c0.side, &c1.side);
                    if self.fits(&side) {
                        return Some(side);
                    }
                }
            }
        }

        let mut profiles = BTreeMap::new();
        for c0 in &self.roots {
            let held = c0.terms.len() as u32;
            let floor = self.need - held;
            let list = profiles
                .entry((floor, c0.size))
                .or_insert_with(|| canonical_profiles(self.need, floor, self.ell - c0.size));
            for profile in list.iter() {
                if let Some(side) = self.fill(c0, &profile.slots) {
                    return Some(side);
                }
            }
        }
        None
    }

    /// Greedily gathers terminals from slot-compatible cuts, then searches
    /// all slot assignments among the cuts that touch them.
    fn fill(&self, c0: &Candidate, slots: &[super::Slot]) -> Option<Vec<bool>> {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        c0.terms.iter().for_each(|&t| seen[t] = true);
        for _round in 0..=self.need {
            for slot in slots {
                let hit = self.pool.iter().find(|c| {
                    c.terms.len() as u32 == slot.kappa && c.size == slot.ell && c.terms.iter().all(|&t| !seen[t])
                });
                if let Some(c) = hit {
                    c.terms.iter().for_each(|&t| seen[t] = true);
                }
            }
        }
        let touched: Vec<&Candidate> = self.pool.iter().filter(|c| c.terms.iter().any(|&t| seen[t])).collect();

        let mut used = vec![false; n];
        c0.terms.iter().for_each(|&t| used[t] = true);
        let mut chosen = Vec::with_capacity(slots.len());
        self.assign(c0, slots, &touched, &mut used, &mut chosen)
    }

    fn assign(
        &self,
        c0: &Candidate,
        slots: &[super::Slot],
        touched: &[&Candidate],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<bool>> {
        let i = chosen.len();
        if i == slots.len() {
            let side = chosen
                .iter()
                .fold(c0.side.clone(), |acc, &j| union(&acc, &touched[j].side));
            return self.fits(&side).then_some(side);
        }
        let slot = slots[i];
        // Equal slots are interchangeable; only try increasing indices.
        let start = match (i, chosen.last()) {
            (i, Some(&prev)) if slots[i - 1] == slot => prev + 1,
            _ => 0,
        };
        for j in start..touched.len() {
            let c = touched[j];
            if c.terms.len() as u32 != slot.kappa || c.size != slot.ell || c.terms.iter().any(|&t| used[t]) {
                continue;
            }
            c.terms.iter().for_each(|&t| used[t] = true);
            chosen.push(j);
            let found = self.assign(c0, slots, touched, used, chosen);
            chosen.pop();
            c.terms.iter().for_each(|&t| used[t] = false);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn fits(&self, side: &[bool]) -> bool {
        let g = self.g;
        let size: u64 = g.boundary_of_mask(side).iter().map(|&id| g.edge(id).mult as u64).sum();
        size <= self.ell && (0..g.vertex_count()).all(|v| !(side[v] && self.q1[v]))
    }
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_err())
}

fn union(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x || y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_quota_and_no_sink_takes_everything() {
        let g = MultiGraph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let cut = solve_base(&g, &TerminalSet::default(), &[0], &[], 0, 0, Side::Zero)
            .unwrap()
            .unwrap();
        assert_eq!(cut.side0, vec![0, 1, 2]);
        assert_eq!(cut.size, 0);
    }

    #[test]
    fn quota_free_over_budget() {
        let g = MultiGraph::from_edges(3, [(0, 1, 2), (1, 2, 2)]).unwrap();
        let got = solve_base(&g, &TerminalSet::default(), &[0], &[2], 0, 1, Side::Zero).unwrap();
        assert_eq!(got, None);
    }

    #[test]
    fn collects_terminals_from_separate_branches() {
        // Sink 0 with three arms 0-1-t, 0-2-t', 0-3-t'' and pendants on each.
        let g = MultiGraph::from_edges(7, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1), (3, 6, 1)]).unwrap();
        let t = TerminalSet::new(vec![4, 5, 6]);
        let cut = solve_base(&g, &t, &[], &[0], 3, 3, Side::Zero).unwrap().unwrap();
        assert_eq!(cut.size, 3);
        assert!(solve_base(&g, &t, &[], &[0], 3, 2, Side::Zero).unwrap().is_none());
        let mirrored = solve_base(&g, &t, &[0], &[], 2, 2, Side::One).unwrap().unwrap();
        assert_eq!(mirrored.side1.iter().filter(|&&v| t.contains(v)).count(), 2);
    }
}
