use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use mimicnet::constrained::{find_constrained_cut, ConstrainedSpec};
use mimicnet::format::{emit, parse, parse_td, InstanceFile};
use mimicnet::gen::{random_graph, random_sndp};
use mimicnet::graph::{from_capacitated, pendant_view, MultiGraph, TerminalSet, Vertex};
use mimicnet::important::enumerate_important_cuts;
use mimicnet::linkage::{build_mimicking_network, find_violating_cut, Linkage};
use mimicnet::oracle::{
    oracle_constrained_cut, oracle_cut_equivalence, oracle_important_cuts, oracle_sndp, oracle_violating_cut,
    Equivalence,
};
use mimicnet::par::Execution;
use mimicnet::sndp::{prepare_decomposition, solve_sndp};
use mimicnet::verify::{verify_sparsifier, TerminalPairing, VerifyOptions};
use serde_json::{json, Value};

use crate::{Common, Kind};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<mimicnet::error::Error> for Failure {
    fn from(e: mimicnet::error::Error) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// 1-indexed command-line vertices to graph ids.
fn vertices(list: &[usize], n: usize, what: &str) -> Result<Vec<Vertex>, Failure> {
    let mut out = Vec::with_capacity(list.len());
    for &v in list {
        if v == 0 || v > n {
            return Err(Failure::input(format!("{what}: vertex {v} out of range 1..={n}")));
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn one_based(vs: &[Vertex]) -> Vec<usize> {
    vs.iter().map(|&v| v + 1).collect()
}

fn show(vs: &[Vertex]) -> String {
    let inner: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialise"));
}

/// Capacities capped at `cap`, which must exceed every cut size of interest.
fn graph_of(f: &InstanceFile, cap: u64) -> Result<MultiGraph, Failure> {
    let cap = u32::try_from(cap).map_err(|_| Failure::input("budget too large"))?;
    Ok(from_capacitated(f.n, &f.edges, cap)?)
}

pub fn sparsify(input: &Path, c: u32, output: Option<&Path>, report: Option<&Path>, common: Common) -> Outcome {
    let f = read(input)?;
    let start = Instant::now();
    let net = build_mimicking_network(f.n, &f.edges, &f.terminals, c)?;
    let elapsed = start.elapsed();

    let h = &net.graph;
    let mut mapping = Vec::new();
    for (&orig, copies) in &net.terminal_map {
        mapping.extend(copies.iter().map(|&p| (p, orig)));
    }
    mapping.sort_unstable();
    let out = InstanceFile {
        comments: vec![
            "connectivity-c mimicking network".into(),
            format!("c = {c}, terminals = {}", net.terminal_map.len()),
        ],
        n: h.vertex_count(),
        edges: h.edges().iter().map(|e| (e.u, e.v, e.mult as u64)).collect(),
        terminals: mapping.iter().map(|&(p, _)| p).collect(),
        mapping,
        ..Default::default()
    };
    let text = emit(&out);
    let summary = json!({
        "c": c,
        "terminals": net.terminal_map.len(),
        "input_vertices": f.n,
        "input_edges": f.edges.len(),
        "vertices": h.vertex_count(),
        "edges": h.edge_count(),
        "bound": net.size_bound(),
        "clusters": net.clusters.len(),
    });
    if let Some(path) = report {
        write(path, &(serde_json::to_string_pretty(&summary).unwrap() + "\n"))?;
    }
    match output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    let to_stdout = output.is_some();
    let say = |s: String| if to_stdout { println!("{s}") } else { eprintln!("{s}") };
    if common.json {
        let mut s = summary.clone();
        s["elapsed_ms"] = json!(elapsed.as_millis() as u64);
        say(serde_json::to_string_pretty(&s).unwrap());
    } else {
        say(format!(
            "|V(H)| = {}, |E(H)| = {}, bound 3^c·c·k = {}, clusters = {}, elapsed = {:.3}s",
            h.vertex_count(),
            h.edge_count(),
            net.size_bound(),
            net.clusters.len(),
            elapsed.as_secs_f64()
        ));
    }

    if common.oracle {
        let tg = net.input_terminals();
        let th = net.terminals();
        // Label each pendant copy by its original terminal.
        let labels: Vec<String> = net
            .terminal_map
            .iter()
            .flat_map(|(&t, copies)| (0..copies.len()).map(move |i| format!("{}#{}", t + 1, i + 1)))
            .collect();
        match oracle_cut_equivalence(&net.normalized, h, &tg, &th, c)? {
            Equivalence::Equal { queries } => say(format!("oracle: {queries} queries, all equal")),
            Equivalence::Counterexample { a, b, value_g, value_h } => {
                let name = |xs: &[usize]| xs.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>().join(", ");
                println!(
                    "counterexample: A = {{{}}}, B = {{{}}}, value_G = {value_g}, value_H = {value_h}",
                    name(&a),
                    name(&b)
                );
                return Err(Failure::mismatch("sparsifier differs from the input on a terminal cut"));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    graph: &Path,
    sparsifier: &Path,
    c: u32,
    budget: u64,
    seed: u64,
    sequential: bool,
    report: Option<&Path>,
    _common: Common,
) -> Outcome {
    let gf = read(graph)?;
    let hf = read(sparsifier)?;
    let g = graph_of(&gf, c as u64)?;
    let h = graph_of(&hf, c as u64)?;
    let mut images: BTreeMap<Vertex, Vec<Vertex>> = gf.terminals.iter().map(|&t| (t, Vec::new())).collect();
    for &(s, o) in &hf.mapping {
        match images.get_mut(&o) {
            Some(list) => list.push(s),
            None => {
                return Err(Failure::input(format!(
                    "incomplete mapping: record 'm {} {}' names a vertex that is not a terminal",
                    s + 1,
                    o + 1
                )))
            }
        }
    }
    if let Some((&t, _)) = images.iter().find(|(_, l)| l.is_empty()) {
        return Err(Failure::input(format!(
            "incomplete mapping: terminal {} has no image",
            t + 1
        )));
    }
    let pairs: Vec<TerminalPairing> = images
        .into_iter()
        .map(|(t, in_h)| TerminalPairing {
            label: t,
            in_g: vec![t],
            in_h,
        })
        .collect();
    let opts = VerifyOptions {
        budget,
        seed,
        execution: if sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let mut rep = verify_sparsifier(&g, &h, &pairs, c, opts)?;
    // Report terminals 1-indexed like the files.
    if let Some(w) = rep.witness.as_mut() {
        w.a = one_based(&w.a);
        w.b = one_based(&w.b);
    }
    let text = serde_json::to_string_pretty(&rep).expect("report serialises") + "\n";
    if let Some(path) = report {
        write(path, &text)?;
    }
    print!("{text}");
    if rep.is_exact() {
        Ok(())
    } else {
        Err(Failure::mismatch(format!(
            "{} of {} queries differ",
            rep.mismatches, rep.queries
        )))
    }
}

pub fn linked(input: &Path, c: u32, set: &[usize], common: Common) -> Outcome {
    let f = read(input)?;
    if c == 0 {
        return Err(Failure::input("c must be at least 1"));
    }
    let g = graph_of(&f, c as u64)?;
    let x = vertices(set, f.n, "--set")?;
    let pv = pendant_view(&g, &x)?;
    let verdict = find_violating_cut(&pv.graph, &pv.terminals, c)?;
    let found = match &verdict {
        Linkage::Linked => None,
        Linkage::Violated(v) => {
            let (a, b): (Vec<Vertex>, Vec<Vertex>) =
                (0..pv.core_len()).partition(|i| v.cut.side0.binary_search(i).is_ok());
            let a: Vec<Vertex> = a.into_iter().map(|i| pv.origin[i]).collect();
            let b: Vec<Vertex> = b.into_iter().map(|i| pv.origin[i]).collect();
            let crossing = g
                .edges()
                .iter()
                .filter(|e| (a.contains(&e.u) && b.contains(&e.v)) || (a.contains(&e.v) && b.contains(&e.u)))
                .map(|e| e.mult as u64)
                .sum::<u64>();
            Some((a, b, crossing))
        }
    };
    if common.json {
        let v = match &found {
            None => json!({ "linked": true, "c": c }),
            Some((a, b, crossing)) => json!({
                "linked": false, "c": c, "a": one_based(a), "b": one_based(b), "crossing": crossing,
            }),
        };
        print_json(&v);
    } else {
        match &found {
            None => println!("linked at c = {c}"),
            Some((a, b, crossing)) => {
                println!("violating cut: A = {}, B = {}, crossing = {crossing}", show(a), show(b))
            }
        }
    }
    if common.oracle {
        let brute = oracle_violating_cut(&g, &x, c as u64)?;
        if brute.is_some() != found.is_some() {
            return Err(Failure::mismatch("exhaustive search disagrees on linkedness"));
        }
    }
    Ok(())
}

pub fn constrained_cut(
    input: &Path,
    q0: &[usize],
    q1: &[usize],
    c0: u32,
    c1: u32,
    ell: u64,
    common: Common,
) -> Outcome {
    let f = read(input)?;
    let g = graph_of(&f, ell + 1)?;
    let t = TerminalSet::new(f.terminals.clone());
    let spec = ConstrainedSpec {
        q0: vertices(q0, f.n, "--q0")?,
        q1: vertices(q1, f.n, "--q1")?,
        c0,
        c1,
        ell,
    };
    let cut = find_constrained_cut(&g, &t, &spec)?;
    if common.oracle {
        let brute = oracle_constrained_cut(&g, &t, &spec)?;
        if brute.is_some() != cut.is_some() {
            return Err(Failure::mismatch("exhaustive search disagrees on feasibility"));
        }
    }
    let Some(cut) = cut else {
        if common.json {
            print_json(&json!({ "feasible": false }));
        } else {
            println!("no valid cut");
        }
        return Err(Failure::infeasible("no cut meets the constraints"));
    };
    if common.json {
        print_json(&json!({
            "feasible": true,
            "side0": one_based(&cut.side0),
            "side1": one_based(&cut.side1),
            "size": cut.size,
        }));
    } else {
        println!(
            "side 0 = {}, side 1 = {}, size = {}",
            show(&cut.side0),
            show(&cut.side1),
            cut.size
        );
    }
    Ok(())
}

pub fn important_cuts(input: &Path, x: &[usize], y: &[usize], ell: u64, common: Common) -> Outcome {
    let f = read(input)?;
    let g = graph_of(&f, ell + 1)?;
    let x = vertices(x, f.n, "--x")?;
    let y = vertices(y, f.n, "--y")?;
    let cuts = enumerate_important_cuts(&g, &x, &y, ell)?;
    if common.oracle {
        let mut want: Vec<Vec<Vertex>> = oracle_important_cuts(&g, &x, &y, ell)?
            .into_iter()
            .map(|c| c.side0)
            .collect();
        let mut got: Vec<Vec<Vertex>> = cuts.iter().map(|c| c.cut.side0.clone()).collect();
        want.sort();
        got.sort();
        if want != got {
            return Err(Failure::mismatch(
                "exhaustive search finds a different set of important cuts",
            ));
        }
    }
    if common.json {
        let list: Vec<Value> = cuts
            .iter()
            .map(|c| json!({ "side0": one_based(&c.cut.side0), "size": c.size }))
            .collect();
        print_json(&json!({ "count": cuts.len(), "cuts": list }));
    } else {
        println!("{} important cuts", cuts.len());
        for c in &cuts {
            println!("size {}: {}", c.size, show(&c.cut.side0));
        }
    }
    Ok(())
}

pub fn sndp(input: &Path, c: Option<u32>, td: Option<&Path>, common: Common) -> Outcome {
    let f = read(input)?;
    let inst = f.sndp()?;
    let c = c.unwrap_or(inst.max_demand().max(1));
    let raw = match td {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            Some(parse_td(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    let decomposition = prepare_decomposition(&inst, raw.as_ref())?;
    let solution = solve_sndp(&inst, &decomposition, c)?;
    if common.oracle {
        let brute = oracle_sndp(&inst, c)?;
        if brute.map(|s| s.cost) != solution.as_ref().map(|s| s.cost) {
            return Err(Failure::mismatch("exhaustive search finds a different optimum"));
        }
    }
    let Some(s) = solution else {
        if common.json {
            print_json(&json!({ "feasible": false }));
        } else {
            println!("infeasible");
        }
        return Err(Failure::infeasible("no edge set meets every demand"));
    };
    if common.json {
        print_json(&json!({
            "feasible": true,
            "cost": s.cost,
            "edges": one_based(&s.edges),
            "width": decomposition.width(),
        }));
    } else {
        println!("cost {} using {} edges", s.cost, s.edges.len());
        for &e in &s.edges {
            let (u, v, w) = inst.edges[e];
            println!("e {} {} {w}", u + 1, v + 1);
        }
    }
    Ok(())
}

pub fn gen(kind: Kind, n: usize, m: usize, k: usize, c: u32, seed: u64, output: Option<&Path>) -> Outcome {
    let (mut f, name) = match kind {
        Kind::Graph => (InstanceFile::from(&random_graph(n, m, k, c, seed)?), "graph"),
        Kind::Sndp => (InstanceFile::from(&random_sndp(n, m, k, c, seed)?), "sndp"),
    };
    f.comments = vec![format!("random {name} n={n} m={m} k={k} c={c} seed={seed}")];
    let text = emit(&f);
    match output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
