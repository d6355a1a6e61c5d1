//! Compares thresholded terminal cuts of a graph and a candidate sparsifier,
//! exhaustively when the query space fits the budget and by uniform
//! sampling otherwise.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::rng;
use crate::graph::{MultiGraph, Vertex};
use crate::mincut::thresholded_mincut;
use crate::par::{self, Execution};

/// One original terminal and the vertices standing for it on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalPairing {
    pub label: Vertex,
    pub in_g: Vec<Vertex>,
    pub in_h: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest number of queries; above it the check is sampled.
    pub budget: u64,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 100_000,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub value_g: u32,
    pub value_h: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub queries: u64,
    pub mismatches: u64,
    pub max_abs_deviation: u32,
    /// `"exact"` or `"mismatch"`.
    pub verdict: String,
    pub sampled: bool,
    pub witness: Option<Witness>,
}

impl VerifyReport {
    pub fn is_exact(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn verify_sparsifier(
    g: &MultiGraph,
    h: &MultiGraph,
    terminals: &[TerminalPairing],
    c: u32,
    opts: VerifyOptions,
) -> Result<VerifyReport> {
    if c == 0 {
        return Err(Error::invalid("threshold c must be at least 1"));
    }
    for p in terminals {
        if p.in_g.is_empty() || p.in_h.is_empty() {
            return Err(Error::invalid(format!(
                "terminal {} has no vertex on one side",
                p.label + 1
            )));
        }
        p.in_g.iter().try_for_each(|&v| g.check_vertex(v))?;
        p.in_h.iter().try_for_each(|&v| h.check_vertex(v))?;
    }
    let k = terminals.len();
    let space = 3u64.checked_pow(k as u32);
    let sampled = space.is_none_or(|s| s > opts.budget);
    let queries: Vec<Vec<u8>> = if sampled {
        let mut r = rng(opts.seed);
        (0..opts.budget)
            .map(|_| (0..k).map(|_| r.random_range(0..3u8)).collect())
            .collect()
    } else {
        (0..space.unwrap()).map(|code| digits(code, k)).collect()
    };

    let results = par::map(&queries, opts.execution, |q| {
        let (mut ag, mut bg, mut ah, mut bh) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (p, &d) in terminals.iter().zip(q) {
            match d {
                1 => {
                    ag.extend_from_slice(&p.in_g);
                    ah.extend_from_slice(&p.in_h);
                }
                2 => {
                    bg.extend_from_slice(&p.in_g);
                    bh.extend_from_slice(&p.in_h);
                }
                _ => {}
            }
        }
        let vg = thresholded_mincut(g, &ag, &bg, c)?;
        let vh = thresholded_mincut(h, &ah, &bh, c)?;
        Ok::<_, Error>((vg, vh))
    });

    let mut report = VerifyReport {
        queries: queries.len() as u64,
        mismatches: 0,
        max_abs_deviation: 0,
        verdict: String::new(),
        sampled,
        witness: None,
    };
    for (q, r) in queries.iter().zip(results) {
        let (vg, vh) = r?;
        if vg == vh {
            continue;
        }
        report.mismatches += 1;
        report.max_abs_deviation = report.max_abs_deviation.max(vg.abs_diff(vh));
        if report.witness.is_none() {
            let side = |d: u8| {
                terminals
                    .iter()
                    .zip(q)
                    .filter(|&(_, &x)| x == d)
                    .map(|(p, _)| p.label)
                    .collect()
            };
            report.witness = Some(Witness {
                a: side(1),
                b: side(2),
                value_g: vg,
                value_h: vh,
            });
        }
    }
    report.verdict = if report.mismatches == 0 { "exact" } else { "mismatch" }.into();
    Ok(report)
}

fn digits(mut code: u64, k: usize) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let d = (code % 3) as u8;
            code /= 3;
            d
        })
        .collect()
}
