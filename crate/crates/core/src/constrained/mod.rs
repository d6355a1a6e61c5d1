//! Constrained cuts: a bipartition `(A0, A1)` with `Q0 ⊆ A0`, `Q1 ⊆ A1`, at
//! least `c0` terminals in `A0`, at least `c1` in `A1`, and at most `ell`
//! crossing edges.
//!
//! Two-sided instances are reduced one terminal at a time until one quota
//! is zero; one-sided instances are solved by combining important cuts.

mod base;
mod profile;
mod reduce;

pub use base::solve_base;
pub use profile::{enumerate_profiles, CutProfileVector, Slot};
pub use reduce::{reduce_step, Branch, ReduceStep};

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, TerminalSet, Vertex};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstrainedSpec {
    pub q0: Vec<Vertex>,
    pub q1: Vec<Vertex>,
    pub c0: u32,
    pub c1: u32,
    pub ell: u64,
}

impl ConstrainedSpec {
    /// The all-free spec a violating cut of value `ell` satisfies.
    pub fn balanced(ell: u64) -> Self {
        ConstrainedSpec {
            q0: Vec::new(),
            q1: Vec::new(),
            c0: ell as u32 + 1,
            c1: ell as u32 + 1,
            ell,
        }
    }

    pub fn validate(&self, g: &MultiGraph, t: &TerminalSet) -> Result<()> {
        for &v in self.q0.iter().chain(&self.q1) {
            g.check_vertex(v)?;
            if t.contains(v) {
                return Err(Error::invalid(format!("terminal {v} cannot be forced to a side")));
            }
        }
        if let Some(&v) = self.q0.iter().find(|v| self.q1.contains(v)) {
            return Err(Error::OverlappingSets(v));
        }
        for v in t.iter() {
            g.check_vertex(v)?;
        }
        Ok(())
    }
}

/// Which side of the cut carries the terminal quota.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Zero,
    One,
}

/// Checks the three defining conditions of a constrained cut.
pub fn is_valid_constrained_cut(g: &MultiGraph, t: &TerminalSet, spec: &ConstrainedSpec, cut: &Cut) -> bool {
    if !cut.is_consistent(g) || t.iter().any(|v| v >= g.vertex_count()) {
        return false;
    }
    let side0 = cut.side0_mask(g.vertex_count());
    let forced = spec.q0.iter().all(|&v| v < side0.len() && side0[v] && !t.contains(v))
        && spec.q1.iter().all(|&v| v < side0.len() && !side0[v] && !t.contains(v));
    let on0 = t.iter().filter(|&v| side0[v]).count() as u32;
    let on1 = t.len() as u32 - on0;
    forced && on0 >= spec.c0 && on1 >= spec.c1 && cut.size <= spec.ell
}

/// Recursion counters, used to check that the search stays within its
/// advertised shape.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub max_depth: usize,
    /// Largest number of sub-instances spawned by a single reduction step.
    pub max_branches: usize,
    pub reduce_calls: usize,
    pub base_calls: usize,
}

/// A valid constrained cut, or `None` when none exists.
pub fn find_constrained_cut(g: &MultiGraph, t: &TerminalSet, spec: &ConstrainedSpec) -> Result<Option<Cut>> {
    Ok(find_constrained_cut_with_stats(g, t, spec)?.0)
}

pub fn find_constrained_cut_with_stats(
    g: &MultiGraph,
    t: &TerminalSet,
    spec: &ConstrainedSpec,
) -> Result<(Option<Cut>, SolveStats)> {
    spec.validate(g, t)?;
    let inst = Instance::from_spec(g, t, spec);
    let mut stats = SolveStats::default();
    let side = solve(&inst, 0, &mut stats);
    let cut = side.map(|s| Cut::from_mask(g, &s));
    if let Some(cut) = &cut {
        assert!(
            is_valid_constrained_cut(g, t, spec, cut),
            "solver returned an invalid cut"
        );
    }
    Ok((cut, stats))
}

/// Working form of an instance. Unlike the public spec, the forced sets may
/// hold terminals; the reduction pins boundary terminals that way.
#[derive(Clone, Debug)]
pub(crate) struct Instance {
    pub g: MultiGraph,
    pub term: Vec<bool>,
    pub q0: Vec<bool>,
    pub q1: Vec<bool>,
    pub c0: u32,
    pub c1: u32,
    pub ell: u64,
}

impl Instance {
    pub fn from_spec(g: &MultiGraph, t: &TerminalSet, spec: &ConstrainedSpec) -> Self {
        let n = g.vertex_count();
        let mut q0 = vec![false; n];
        let mut q1 = vec![false; n];
        spec.q0.iter().for_each(|&v| q0[v] = true);
        spec.q1.iter().for_each(|&v| q1[v] = true);
        Instance {
            g: g.clone(),
            term: t.mask(n),
            q0,
            q1,
            c0: spec.c0,
            c1: spec.c1,
            ell: spec.ell,
        }
    }

    pub fn n(&self) -> usize {
        self.g.vertex_count()
    }

    pub fn mirrored(&self) -> Instance {
        Instance {
            g: self.g.clone(),
            term: self.term.clone(),
            q0: self.q1.clone(),
            q1: self.q0.clone(),
            c0: self.c1,
            c1: self.c0,
            ell: self.ell,
        }
    }

    /// Quotas cannot be met from the terminals that are not yet forced.
    pub fn quota_impossible(&self) -> bool {
        let n = self.n();
        let (mut in0, mut in1, mut free) = (0u32, 0u32, 0u32);
        for v in 0..n {
            if !self.term[v] {
                continue;
            }
            match (self.q0[v], self.q1[v]) {
                (true, _) => in0 += 1,
                (_, true) => in1 += 1,
                _ => free += 1,
            }
        }
        self.c0.saturating_sub(in0) + self.c1.saturating_sub(in1) > free
    }

    pub fn is_valid(&self, side0: &[bool]) -> bool {
        let n = self.n();
        let mut on0 = 0;
        let mut on1 = 0;
        for v in 0..n {
            if (self.q0[v] && !side0[v]) || (self.q1[v] && side0[v]) {
                return false;
            }
            if self.term[v] {
                if side0[v] {
                    on0 += 1;
                } else {
                    on1 += 1;
                }
            }
        }
        let size: u64 = self
            .g
            .boundary_of_mask(side0)
            .iter()
            .map(|&id| self.g.edge(id).mult as u64)
            .sum();
        on0 >= self.c0 && on1 >= self.c1 && size <= self.ell
    }
}

pub(crate) fn solve(inst: &Instance, depth: usize, stats: &mut SolveStats) -> Option<Vec<bool>> {
    stats.max_depth = stats.max_depth.max(depth);
    if (0..inst.n()).any(|v| inst.q0[v] && inst.q1[v]) || inst.quota_impossible() {
        return None;
    }
    let side = if inst.c1 == 0 {
        stats.base_calls += 1;
        base::solve_one_sided(inst)
    } else if inst.c0 == 0 {
        stats.base_calls += 1;
        base::solve_one_sided(&inst.mirrored()).map(|s| s.iter().map(|&b| !b).collect())
    } else {
        stats.reduce_calls += 1;
        reduce::solve_two_sided(inst, depth, stats)
    };
    debug_assert!(side.as_ref().is_none_or(|s| inst.is_valid(s)));
    side
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Star centre 0 with pendants 1..=4.
    fn star4() -> (MultiGraph, TerminalSet) {
        let g = MultiGraph::from_edges(5, (1..5).map(|t| (0, t, 1))).unwrap();
        (g, TerminalSet::new((1..5).collect()))
    }

    /// Centres 0 and 1 joined by a bridge; pendants 2,3 on 0 and 4,5 on 1.
    fn double_star() -> (MultiGraph, TerminalSet) {
        let g = MultiGraph::from_edges(6, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 4, 1), (1, 5, 1)]).unwrap();
        (g, TerminalSet::new(vec![2, 3, 4, 5]))
    }

    #[test]
    fn star_cannot_be_split_cheaply() {
        let (g, t) = star4();
        let spec = ConstrainedSpec::balanced(1);
        let spec = ConstrainedSpec { c0: 2, c1: 2, ..spec };
        assert_eq!(find_constrained_cut(&g, &t, &spec).unwrap(), None);
    }

    #[test]
    fn double_star_splits_at_the_bridge() {
        let (g, t) = double_star();
        let spec = ConstrainedSpec {
            c0: 2,
            c1: 2,
            ell: 1,
            ..Default::default()
        };
        let cut = find_constrained_cut(&g, &t, &spec).unwrap().unwrap();
        assert_eq!(cut.size, 1);
        assert_eq!(cut.cutset, vec![g.find_edge(0, 1).unwrap()]);
        assert!(is_valid_constrained_cut(&g, &t, &spec, &cut));
    }

    #[test]
    fn too_few_terminals() {
        let (g, t) = star4();
        let spec = ConstrainedSpec {
            c0: 5,
            ell: 10,
            ..Default::default()
        };
        assert_eq!(find_constrained_cut(&g, &t, &spec).unwrap(), None);
    }

    #[test]
    fn forced_terminal_is_rejected() {
        let (g, t) = star4();
        let spec = ConstrainedSpec {
            q0: vec![1],
            ..Default::default()
        };
        assert!(find_constrained_cut(&g, &t, &spec).is_err());
        let spec = ConstrainedSpec {
            q0: vec![0],
            q1: vec![0],
            ..Default::default()
        };
        assert!(matches!(
            find_constrained_cut(&g, &t, &spec),
            Err(Error::OverlappingSets(0))
        ));
    }

    #[test]
    fn quota_free_reduces_to_min_cut() {
        let (g, t) = double_star();
        let spec = ConstrainedSpec {
            q0: vec![0],
            q1: vec![1],
            ell: 5,
            ..Default::default()
        };
        let cut = find_constrained_cut(&g, &t, &spec).unwrap().unwrap();
        assert_eq!(cut.size, 1);
    }
}
