//! Exhaustive reference implementations. They enumerate bipartitions or
//! edge subsets directly and are only meant for small inputs; every entry
//! point refuses inputs above its size guard.

use crate::error::{Error, Result};
use crate::graph::{Cut, MultiGraph, TerminalSet, Vertex};
use crate::mincut::thresholded_mincut;
use crate::sndp::{SndpInstance, SndpSolution};

fn guard(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}

/// Outcome of comparing every thresholded terminal cut of two graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equal {
        queries: u64,
    },
    /// `a` and `b` are indices into the terminal lists.
    Counterexample {
        a: Vec<usize>,
        b: Vec<usize>,
        value_g: u32,
        value_h: u32,
    },
}

/// Checks `mincut^c` on every assignment of the paired terminals to
/// `{A, B, neither}`, in base-3 counting order.
pub fn oracle_cut_equivalence(
    g: &MultiGraph,
    h: &MultiGraph,
    tg: &[Vertex],
    th: &[Vertex],
    c: u32,
) -> Result<Equivalence> {
    if tg.len() != th.len() {
        return Err(Error::invalid("terminal lists differ in length"));
    }
    guard("terminals for exhaustive comparison", 12, tg.len())?;
    let k = tg.len();
    let total = 3u64.pow(k as u32);
    for code in 0..total {
        let (a, b) = decode_ternary(code, k);
        let pick = |ts: &[Vertex], idx: &[usize]| idx.iter().map(|&i| ts[i]).collect::<Vec<_>>();
        let vg = thresholded_mincut(g, &pick(tg, &a), &pick(tg, &b), c)?;
        let vh = thresholded_mincut(h, &pick(th, &a), &pick(th, &b), c)?;
        if vg != vh {
            return Ok(Equivalence::Counterexample {
                a,
                b,
                value_g: vg,
                value_h: vh,
            });
        }
    }
    Ok(Equivalence::Equal { queries: total })
}

/// Digit 1 puts a terminal in `A`, digit 2 in `B`.
pub fn decode_ternary(mut code: u64, k: usize) -> (Vec<usize>, Vec<usize>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..k {
        match code % 3 {
            1 => a.push(i),
            2 => b.push(i),
            _ => {}
        }
        code /= 3;
    }
    (a, b)
}

fn cut_size(g: &MultiGraph, mask: u64) -> u64 {
    g.edges()
        .iter()
        .filter(|e| (mask >> e.u & 1) != (mask >> e.v & 1))
        .map(|e| e.mult as u64)
        .sum()
}

fn set_mask(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

fn mask_cut(g: &MultiGraph, mask: u64) -> Cut {
    let side: Vec<bool> = (0..g.vertex_count()).map(|v| mask >> v & 1 == 1).collect();
    Cut::from_mask(g, &side)
}

/// Minimum `A`-`B` cut value over all bipartitions.
pub fn oracle_mincut(g: &MultiGraph, a: &[Vertex], b: &[Vertex]) -> Result<u64> {
    let n = g.vertex_count();
    guard("vertices for brute-force min cut", 16, n)?;
    let (ma, mb) = (set_mask(a), set_mask(b));
    if ma & mb != 0 {
        return Err(Error::OverlappingSets((ma & mb).trailing_zeros() as usize));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(0);
    }
    Ok((0..1u64 << n)
        .filter(|&m| m & ma == ma && m & mb == 0)
        .map(|m| cut_size(g, m))
        .min()
        .expect("at least one separating bipartition"))
}

/// Any valid constrained cut, preferring the fewest crossing edges and then
/// the smallest side-0 bitmask.
pub fn oracle_constrained_cut(
    g: &MultiGraph,
    t: &TerminalSet,
    spec: &crate::constrained::ConstrainedSpec,
) -> Result<Option<Cut>> {
    let n = g.vertex_count();
    guard("vertices for brute-force constrained cut", 14, n)?;
    spec.validate(g, t)?;
    let (q0, q1, tm) = (set_mask(&spec.q0), set_mask(&spec.q1), set_mask(t.as_slice()));
    let mut best: Option<(u64, u64)> = None;
    for m in 0..1u64 << n {
        if m & q0 != q0 || m & q1 != 0 {
            continue;
        }
        let on0 = (m & tm).count_ones();
        let on1 = t.len() as u32 - on0;
        if on0 < spec.c0 || on1 < spec.c1 {
            continue;
        }
        let size = cut_size(g, m);
        if size <= spec.ell && best.is_none_or(|(s, _)| size < s) {
            best = Some((size, m));
        }
    }
    Ok(best.map(|(_, m)| mask_cut(g, m)))
}

/// Important `(X, Y)`-cuts with at most `ell` edges, by pairwise dominance.
/// Sorted by size, then by side 0.
pub fn oracle_important_cuts(g: &MultiGraph, x: &[Vertex], y: &[Vertex], ell: u64) -> Result<Vec<Cut>> {
    let n = g.vertex_count();
    guard("vertices for brute-force important cuts", 12, n)?;
    let (mx, my) = (set_mask(x), set_mask(y));
    if mx & my != 0 {
        return Err(Error::OverlappingSets((mx & my).trailing_zeros() as usize));
    }
    let all = (1u64 << n) - 1;
    let free = all & !mx & !my;
    let size_of = |extra: u64| cut_size(g, mx | extra);
    let mut out = Vec::new();
    // Walk subsets of the free vertices.
    let mut s = 0u64;
    loop {
        let size = size_of(s);
        if size <= ell {
            let rest = free & !s;
            let mut dominated = false;
            let mut sup = rest;
            while sup != 0 {
                if size_of(s | sup) <= size {
                    dominated = true;
                    break;
                }
                sup = (sup - 1) & rest;
            }
            if !dominated {
                out.push(mask_cut(g, mx | s));
            }
        }
        if s == free {
            break;
        }
        s = (s.wrapping_sub(free)) & free;
    }
    out.sort_by(|a, b| (a.size, &a.side0).cmp(&(b.size, &b.side0)));
    Ok(out)
}

/// A bipartition `(A, B)` of `X` crossed by fewer than
/// `min(|∂A ∩ ∂X|, |∂B ∩ ∂X|, q)` edges, if one exists. `A` holds the
/// smallest vertex of `X`.
pub fn oracle_violating_cut(g: &MultiGraph, x: &[Vertex], q: u64) -> Result<Option<(Vec<Vertex>, Vec<Vertex>)>> {
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    guard("set size for brute-force linkedness", 16, xs.len())?;
    let inside = g.mask(&xs)?;
    let k = xs.len();
    if k < 2 {
        return Ok(None);
    }
    let pos = |v: Vertex| xs.binary_search(&v).ok();
    // Internal edges as index pairs, boundary multiplicity per vertex.
    let mut internal = Vec::new();
    let mut outward = vec![0u64; k];
    for e in g.edges() {
        match (pos(e.u), pos(e.v)) {
            (Some(i), Some(j)) => internal.push((i, j, e.mult as u64)),
            (Some(i), None) => outward[i] += e.mult as u64,
            (None, Some(j)) => outward[j] += e.mult as u64,
            (None, None) => {}
        }
    }
    debug_assert!(inside.iter().filter(|&&b| b).count() == k);
    for m in 0..1u64 << (k - 1) {
        // Vertex 0 always in A; bit i of m places vertex i + 1 in A.
        let in_a = |i: usize| i == 0 || (m >> (i - 1)) & 1 == 1;
        if (0..k).all(in_a) {
            continue;
        }
        let crossing: u64 = internal
            .iter()
            .filter(|&&(i, j, _)| in_a(i) != in_a(j))
            .map(|&(_, _, w)| w)
            .sum();
        let da: u64 = (0..k).filter(|&i| in_a(i)).map(|i| outward[i]).sum();
        let db: u64 = (0..k).filter(|&i| !in_a(i)).map(|i| outward[i]).sum();
        if crossing < da.min(db).min(q) {
            let a = (0..k).filter(|&i| in_a(i)).map(|i| xs[i]).collect();
            let b = (0..k).filter(|&i| !in_a(i)).map(|i| xs[i]).collect();
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Cheapest edge subset meeting every demand, by enumerating all subsets.
/// Ties go to the subset with the smallest bitmask.
pub fn oracle_sndp(inst: &SndpInstance, c: u32) -> Result<Option<SndpSolution>> {
    let m = inst.edges.len();
    guard("edges for brute-force network design", 18, m)?;
    inst.validate(c)?;
    let mut best: Option<(u64, u64)> = None;
    for mask in 0..1u64 << m {
        let cost: u64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| inst.edges[i].2).sum();
        if best.is_some_and(|(b, _)| cost >= b) {
            continue;
        }
        let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if inst.is_feasible(&chosen)? {
            best = Some((cost, mask));
        }
    }
    Ok(best.map(|(cost, mask)| SndpSolution {
        cost,
        edges: (0..m).filter(|&i| mask >> i & 1 == 1).collect(),
    }))
}
