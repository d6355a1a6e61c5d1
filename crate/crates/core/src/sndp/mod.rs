//! Rooted survivable network design on graphs of bounded treewidth.
//!
//! Find the cheapest edge set that gives every demand vertex `v` at least
//! `d` edge-disjoint paths to the root. The dynamic program keeps, per
//! decomposition node, the thresholded cut functions on the bag of the
//! chosen edges below the node (Γ) and outside it (Δ).

mod decomposition;
mod dp;
mod state;

pub use decomposition::{prepare_decomposition, RawDecomposition, TreeDecomposition};
pub use dp::{solve_sndp, solve_sndp_traced, NodeTrace, SndpTrace};
pub use state::{state_signature, StateSignature};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Vertex};
use crate::mincut::thresholded_mincut;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Demand {
    pub vertex: Vertex,
    pub req: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SndpInstance {
    pub n: usize,
    /// `(u, v, cost)`; parallel edges are distinct choices.
    pub edges: Vec<(Vertex, Vertex, u64)>,
    pub root: Vertex,
    pub demands: Vec<Demand>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SndpSolution {
    pub cost: u64,
    /// Indices into `SndpInstance::edges`, ascending.
    pub edges: Vec<usize>,
}

impl SndpInstance {
    pub fn max_demand(&self) -> u32 {
        self.demands.iter().map(|d| d.req).max().unwrap_or(0)
    }

    pub fn validate(&self, c: u32) -> Result<()> {
        if c == 0 {
            return Err(Error::invalid("threshold c must be at least 1"));
        }
        let check = |v: Vertex| {
            if v < self.n {
                Ok(())
            } else {
                Err(Error::UnknownVertex(v))
            }
        };
        check(self.root)?;
        for &(u, v, _) in &self.edges {
            check(u)?;
            check(v)?;
        }
        for d in &self.demands {
            check(d.vertex)?;
            if d.req == 0 {
                return Err(Error::invalid(format!(
                    "demand at vertex {} must be positive",
                    d.vertex
                )));
            }
            if d.req > c {
                return Err(Error::DemandExceedsThreshold {
                    vertex: d.vertex,
                    demand: d.req,
                    c,
                });
            }
        }
        Ok(())
    }

    /// Graph of the chosen edges on all `n` vertices.
    pub fn subgraph(&self, chosen: &[usize]) -> Result<MultiGraph> {
        MultiGraph::from_edges(
            self.n,
            chosen.iter().map(|&i| {
                let (u, v, _) = self.edges[i];
                (u, v, 1)
            }),
        )
    }

    pub fn cost_of(&self, chosen: &[usize]) -> u64 {
        chosen.iter().map(|&i| self.edges[i].2).sum()
    }

    /// Every demand has its edge-disjoint paths in the chosen subgraph.
    /// Demands on the root itself always hold.
    pub fn is_feasible(&self, chosen: &[usize]) -> Result<bool> {
        let g = self.subgraph(chosen)?;
        for d in &self.demands {
            if d.vertex != self.root && thresholded_mincut(&g, &[self.root], &[d.vertex], d.req)? < d.req {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_demand_above_threshold() {
        let inst = SndpInstance {
            n: 2,
            edges: vec![(0, 1, 1)],
            root: 0,
            demands: vec![Demand { vertex: 1, req: 3 }],
        };
        assert!(matches!(
            inst.validate(2),
            Err(Error::DemandExceedsThreshold { demand: 3, .. })
        ));
    }

    #[test]
    fn feasibility_counts_disjoint_paths() {
        let inst = SndpInstance {
            n: 3,
            edges: vec![(0, 1, 1), (1, 2, 1), (0, 2, 1)],
            root: 0,
            demands: vec![Demand { vertex: 2, req: 2 }],
        };
        assert!(inst.is_feasible(&[0, 1, 2]).unwrap());
        assert!(!inst.is_feasible(&[0, 1]).unwrap());
    }
}
