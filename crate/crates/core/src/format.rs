//! Line-oriented instance files, 1-indexed:
//!
//! ```text
//! c <comment>
//! p ccmn <n> <m>
//! e <u> <v> <capacity or cost>
//! t <v>
//! r <v>
//! d <v> <requirement>
//! m <sparsifier vertex> <original terminal>
//! ```
//!
//! Tree decompositions use the PACE `.td` format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gen::GraphInstance;
use crate::graph::Vertex;
use crate::sndp::{Demand, RawDecomposition, SndpInstance};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceFile {
    pub comments: Vec<String>,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex, u64)>,
    pub terminals: Vec<Vertex>,
    pub root: Option<Vertex>,
    pub demands: Vec<Demand>,
    /// `(vertex, original terminal)` pairs of a sparsifier file.
    pub mapping: Vec<(Vertex, Vertex)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers<const N: usize>(fields: &[&str], line: usize, shape: &str) -> Result<[u64; N]> {
    let bad = || err(line, format!("expected '{shape}'"));
    if fields.len() != N {
        return Err(bad());
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<InstanceFile> {
    let mut f = InstanceFile::default();
    let mut header: Option<(usize, usize)> = None;
    let vertex = |v: u64, n: usize, line: usize| -> Result<Vertex> {
        if v == 0 || v as usize > n {
            Err(err(line, format!("vertex {v} out of range 1..={n}")))
        } else {
            Ok(v as usize - 1)
        }
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let rest: Vec<&str> = fields.collect();
        if tag == "c" {
            f.comments.push(raw.trim_start()[1..].trim().to_string());
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(err(line, "second 'p' line"));
            }
            if rest.first() != Some(&"ccmn") {
                return Err(err(line, "expected 'p ccmn n m'"));
            }
            let [n, m] = numbers::<2>(&rest[1..], line, "p ccmn n m")?;
            f.n = n as usize;
            header = Some((m as usize, line));
            continue;
        }
        let n = match header {
            Some(_) => f.n,
            None => return Err(err(line, format!("'{tag}' before the 'p' line"))),
        };
        match tag {
            "e" => {
                let [u, v, w] = numbers::<3>(&rest, line, "e u v cap")?;
                f.edges.push((vertex(u, n, line)?, vertex(v, n, line)?, w));
            }
            "t" => {
                let [v] = numbers::<1>(&rest, line, "t v")?;
                f.terminals.push(vertex(v, n, line)?);
            }
            "r" => {
                let [v] = numbers::<1>(&rest, line, "r v")?;
                if f.root.is_some() {
                    return Err(err(line, "second 'r' line"));
                }
                f.root = Some(vertex(v, n, line)?);
            }
            "d" => {
                let [v, req] = numbers::<2>(&rest, line, "d v requirement")?;
                let req = u32::try_from(req).map_err(|_| err(line, "requirement too large"))?;
                f.demands.push(Demand {
                    vertex: vertex(v, n, line)?,
                    req,
                });
            }
            "m" => {
                let [s, o] = numbers::<2>(&rest, line, "m vertex terminal")?;
                if o == 0 {
                    return Err(err(line, "terminal ids start at 1"));
                }
                f.mapping.push((vertex(s, n, line)?, o as usize - 1));
            }
            other => return Err(err(line, format!("unknown record '{other}'"))),
        }
    }
    let Some((m, line)) = header else {
        return Err(err(text.lines().count().max(1), "missing 'p ccmn n m' line"));
    };
    if f.edges.len() != m {
        return Err(err(line, format!("header declares {m} edges, found {}", f.edges.len())));
    }
    Ok(f)
}

pub fn emit(f: &InstanceFile) -> String {
    let mut s = String::new();
    for c in &f.comments {
        if c.is_empty() {
            s.push_str("c\n");
        } else {
            writeln!(s, "c {c}").unwrap();
        }
    }
    writeln!(s, "p ccmn {} {}", f.n, f.edges.len()).unwrap();
    for &(u, v, w) in &f.edges {
        writeln!(s, "e {} {} {w}", u + 1, v + 1).unwrap();
    }
    for &t in &f.terminals {
        writeln!(s, "t {}", t + 1).unwrap();
    }
    if let Some(r) = f.root {
        writeln!(s, "r {}", r + 1).unwrap();
    }
    for d in &f.demands {
        writeln!(s, "d {} {}", d.vertex + 1, d.req).unwrap();
    }
    for &(a, o) in &f.mapping {
        writeln!(s, "m {} {}", a + 1, o + 1).unwrap();
    }
    s
}

impl InstanceFile {
    pub fn graph(&self) -> GraphInstance {
        GraphInstance {
            n: self.n,
            edges: self.edges.clone(),
            terminals: self.terminals.clone(),
        }
    }

    pub fn sndp(&self) -> Result<SndpInstance> {
        let root = self
            .root
            .ok_or_else(|| Error::invalid("network design instance needs an 'r' line"))?;
        Ok(SndpInstance {
            n: self.n,
            edges: self.edges.clone(),
            root,
            demands: self.demands.clone(),
        })
    }
}

impl From<&GraphInstance> for InstanceFile {
    fn from(g: &GraphInstance) -> Self {
        InstanceFile {
            n: g.n,
            edges: g.edges.clone(),
            terminals: g.terminals.clone(),
            ..Default::default()
        }
    }
}

impl From<&SndpInstance> for InstanceFile {
    fn from(s: &SndpInstance) -> Self {
        InstanceFile {
            n: s.n,
            edges: s.edges.clone(),
            root: Some(s.root),
            demands: s.demands.clone(),
            ..Default::default()
        }
    }
}

/// Reads a PACE `.td` file: `s td <bags> <width+1> <n>`, `b <i> <v>...`
/// and one `<i> <j>` line per tree edge.
pub fn parse_td(text: &str) -> Result<RawDecomposition> {
    let mut raw = RawDecomposition::default();
    let mut declared: Option<(usize, usize)> = None;
    let mut filled = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if fields.get(1) != Some(&"td") {
                    return Err(err(line, "expected 's td bags width n'"));
                }
                let [bags, _width, n] = numbers::<3>(&fields[2..], line, "s td bags width n")?;
                raw.bags = vec![Vec::new(); bags as usize];
                filled = vec![false; bags as usize];
                declared = Some((bags as usize, n as usize));
            }
            Some(_) => {
                let Some((bags, n)) = declared else {
                    return Err(err(line, "record before the 's td' line"));
                };
                let index = |x: u64, limit: usize, what: &str| -> Result<usize> {
                    if x == 0 || x as usize > limit {
                        Err(err(line, format!("{what} {x} out of range 1..={limit}")))
                    } else {
                        Ok(x as usize - 1)
                    }
                };
                if fields[0] == "b" {
                    let parsed: std::result::Result<Vec<u64>, _> = fields[1..].iter().map(|f| f.parse()).collect();
                    let parsed = parsed.map_err(|_| err(line, "expected 'b i v...'"))?;
                    let Some((&b, vs)) = parsed.split_first() else {
                        return Err(err(line, "expected 'b i v...'"));
                    };
                    let b = index(b, bags, "bag")?;
                    if filled[b] {
                        return Err(err(line, format!("bag {} listed twice", b + 1)));
                    }
                    filled[b] = true;
                    raw.bags[b] = vs.iter().map(|&v| index(v, n, "vertex")).collect::<Result<_>>()?;
                } else {
                    let [a, b] = numbers::<2>(&fields, line, "i j")?;
                    raw.tree_edges.push((index(a, bags, "bag")?, index(b, bags, "bag")?));
                }
            }
        }
    }
    if declared.is_none() {
        return Err(err(text.lines().count().max(1), "missing 's td' line"));
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "c a star\np ccmn 4 3\ne 1 2 1\ne 1 3 2\ne 1 4 1\nt 2\nt 3\n";

    #[test]
    fn round_trip() {
        let f = parse(SAMPLE).unwrap();
        assert_eq!(f.n, 4);
        assert_eq!(f.edges, vec![(0, 1, 1), (0, 2, 2), (0, 3, 1)]);
        assert_eq!(f.terminals, vec![1, 2]);
        assert_eq!(emit(&f), SAMPLE);
        assert_eq!(parse(&emit(&f)).unwrap(), f);
    }

    #[test]
    fn malformed_edge_names_its_line() {
        let e = parse("p ccmn 3 1\n\ne 1 x 2\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: expected 'e u v cap'");
        let e = parse("p ccmn 3 1\ne 1 2\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: expected 'e u v cap'");
    }

    #[test]
    fn rejects_bad_vertices_and_counts() {
        assert!(parse("p ccmn 3 1\ne 1 4 2\n")
            .unwrap_err()
            .to_string()
            .contains("out of range"));
        assert!(parse("p ccmn 3 2\ne 1 2 2\n")
            .unwrap_err()
            .to_string()
            .contains("declares 2"));
        assert!(parse("e 1 2 2\n").is_err());
    }

    #[test]
    fn sndp_records() {
        let f = parse("p ccmn 3 2\ne 1 2 5\ne 2 3 1\nr 1\nd 3 2\n").unwrap();
        let s = f.sndp().unwrap();
        assert_eq!(s.root, 0);
        assert_eq!(s.demands, vec![Demand { vertex: 2, req: 2 }]);
        assert_eq!(parse(&emit(&f)).unwrap(), f);
    }

    #[test]
    fn reads_pace_decompositions() {
        let raw = parse_td("c x\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        assert_eq!(raw.bags, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(raw.tree_edges, vec![(0, 1)]);
    }
}
