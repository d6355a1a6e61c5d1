//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mimicnet::constrained::{find_constrained_cut, is_valid_constrained_cut, ConstrainedSpec};
use mimicnet::gen::{random_graph, GraphInstance};
use mimicnet::graph::{from_capacitated, pendant_view, MultiGraph, TerminalSet, Vertex};
use mimicnet::important::enumerate_important_cuts;
use mimicnet::linkage::{build_mimicking_network, find_violating_cut, size_bound, Linkage};
use mimicnet::oracle::{
    oracle_constrained_cut, oracle_cut_equivalence, oracle_important_cuts, oracle_sndp, oracle_violating_cut,
    Equivalence,
};
use mimicnet::sndp::{prepare_decomposition, solve_sndp, Demand, RawDecomposition, SndpInstance};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

/// Random connected instance with `n` in `lo..=hi_n` and at most `max_m`
/// edges.
fn instance(r: &mut ChaCha8Rng, lo: usize, hi_n: usize, max_m: usize, k_hi: usize, c: u32) -> GraphInstance {
    let n = r.random_range(lo..=hi_n);
    let m = r.random_range(n - 1..=max_m.max(n - 1));
    let k = r.random_range(1..=k_hi.min(n));
    random_graph(n, m, k, c, r.random()).expect("parameters are feasible")
}

fn capped(gi: &GraphInstance, c: u32) -> MultiGraph {
    from_capacitated(gi.n, &gi.edges, c).unwrap()
}

fn exactness_and_size() -> (Verdict, Verdict) {
    let mut r = rng(1);
    let start = Instant::now();
    let (mut queries, mut worst_ratio) = (0u64, 0f64);
    let mut size_failure = None;
    for i in 0..200 {
        let c = 1 + (i % 3) as u32;
        let gi = instance(&mut r, 2, 30, 60, 4, c);
        let net = build_mimicking_network(gi.n, &gi.edges, &gi.terminals, c).unwrap();
        let bound = size_bound(c, gi.terminals.len());
        let size = net.graph.vertex_count() as u64;
        worst_ratio = worst_ratio.max(size as f64 / bound as f64);
        if size > bound && size_failure.is_none() {
            size_failure = Some(format!("instance {i}: |V(H)| = {size} > {bound}"));
        }
        match oracle_cut_equivalence(&net.normalized, &net.graph, &net.input_terminals(), &net.terminals(), c).unwrap()
        {
            Equivalence::Equal { queries: q } => queries += q,
            cx => {
                return (
                    Err(format!("instance {i} (c = {c}): {cx:?}")),
                    Err("not reached".into()),
                )
            }
        }
    }
    let t = start.elapsed();
    let exact = if t < Duration::from_secs(60) {
        Ok(format!(
            "200 instances, {queries} queries, all equal, {:.1}s",
            t.as_secs_f64()
        ))
    } else {
        Err(format!("all equal but took {:.1}s", t.as_secs_f64()))
    };
    let size = match size_failure {
        None => Ok(format!("largest |V(H)| / 3^c·c·k = {worst_ratio:.3}")),
        Some(e) => Err(e),
    };
    (exact, size)
}

fn connectivity_two() -> Verdict {
    let mut r = rng(3);
    let mut checked = 0;
    for i in 0..100 {
        let mut gi = instance(&mut r, 3, 20, 30, 4, 2);
        if i % 2 == 1 {
            let other = instance(&mut r, 2, 10, 15, 3, 2);
            let off = gi.n;
            gi.edges
                .extend(other.edges.iter().map(|&(u, v, w)| (u + off, v + off, w)));
            gi.terminals.extend(other.terminals.iter().map(|&t| t + off));
            gi.n += other.n;
        }
        let normalized = 2 * gi.terminals.len();
        let net = build_mimicking_network(gi.n, &gi.edges, &gi.terminals, 2).unwrap();
        for comp in &net.components {
            let (k, cl) = (comp.terminals, comp.clusters);
            checked += 1;
            if k == 2 && cl != 1 {
                return Err(format!("instance {i}: k = 2 component has {cl} clusters"));
            }
            if k >= 3 && cl + 2 > k {
                return Err(format!("instance {i}: k = {k} component has {cl} clusters"));
            }
        }
        if net.components.iter().all(|c| c.terminals >= 3) && net.graph.vertex_count() > 2 * normalized - 2 {
            return Err(format!("instance {i}: |V(H)| = {} > 2k - 2", net.graph.vertex_count()));
        }
    }
    Ok(format!("100 instances, {checked} components within k - 2 clusters"))
}

fn disjoint_sets(r: &mut ChaCha8Rng, n: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut vs: Vec<Vertex> = (0..n).collect();
    vs.shuffle(r);
    let nx = r.random_range(1..=2.min(n - 1));
    let ny = r.random_range(1..=2.min(n - nx));
    let mut x = vs[..nx].to_vec();
    let mut y = vs[nx..nx + ny].to_vec();
    x.sort_unstable();
    y.sort_unstable();
    (x, y)
}

fn important_cuts() -> Verdict {
    let mut r = rng(4);
    let mut total = 0;
    for i in 0..100 {
        let gi = instance(&mut r, 3, 12, 20, 1, 2);
        let g = capped(&gi, 2);
        let ell = (i % 5) as u64;
        let (x, y) = disjoint_sets(&mut r, gi.n);
        let mut got: Vec<Vec<Vertex>> = enumerate_important_cuts(&g, &x, &y, ell)
            .unwrap()
            .into_iter()
            .map(|c| c.cut.side0)
            .collect();
        let mut want: Vec<Vec<Vertex>> = oracle_important_cuts(&g, &x, &y, ell)
            .unwrap()
            .into_iter()
            .map(|c| c.side0)
            .collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(format!(
                "graph {i}: {} cuts vs {} from the oracle",
                got.len(),
                want.len()
            ));
        }
        if got.len() as u64 > 4u64.pow(ell as u32) {
            return Err(format!("graph {i}: {} cuts exceed 4^{ell}", got.len()));
        }
        total += got.len();
    }
    Ok(format!("100 graphs, {total} important cuts, sets equal"))
}

fn constrained_cuts() -> Verdict {
    let mut r = rng(5);
    let mut feasible = 0;
    for i in 0..200 {
        let gi = instance(&mut r, 3, 12, 18, 1, 3);
        let g = capped(&gi, 3);
        let mut vs: Vec<Vertex> = (0..gi.n).collect();
        vs.shuffle(&mut r);
        let k = r.random_range(1..=gi.n.min(6));
        let t = TerminalSet::new(vs[..k].to_vec());
        let rest = &vs[k..];
        let nq0 = r.random_range(0..=rest.len().min(2));
        let nq1 = r.random_range(0..=(rest.len() - nq0).min(2));
        let spec = ConstrainedSpec {
            q0: rest[..nq0].to_vec(),
            q1: rest[nq0..nq0 + nq1].to_vec(),
            c0: r.random_range(0..=3),
            c1: r.random_range(0..=3),
            ell: r.random_range(0..=3),
        };
        let got = find_constrained_cut(&g, &t, &spec).unwrap();
        let want = oracle_constrained_cut(&g, &t, &spec).unwrap();
        if got.is_some() != want.is_some() {
            return Err(format!(
                "spec {i} {spec:?}: solver {} oracle {}",
                got.is_some(),
                want.is_some()
            ));
        }
        if let Some(cut) = got {
            if !is_valid_constrained_cut(&g, &t, &spec, &cut) {
                return Err(format!("spec {i}: returned cut fails the definition"));
            }
            feasible += 1;
        }
    }
    Ok(format!("200 specs ({feasible} feasible), verdicts agree"))
}

fn linkedness() -> Verdict {
    let mut r = rng(6);
    let mut linked = 0;
    for i in 0..100 {
        let gi = instance(&mut r, 4, 16, 28, 1, 3);
        let g = capped(&gi, 3);
        let q = r.random_range(1..=3);
        let mut vs: Vec<Vertex> = (0..gi.n).collect();
        vs.shuffle(&mut r);
        let size = r.random_range(2..=gi.n.min(12));
        let mut x = vs[..size].to_vec();
        x.sort_unstable();
        let pv = pendant_view(&g, &x).unwrap();
        let ours = find_violating_cut(&pv.graph, &pv.terminals, q).unwrap() == Linkage::Linked;
        let brute = oracle_violating_cut(&g, &x, q as u64).unwrap().is_none();
        if ours != brute {
            return Err(format!("set {i} X = {x:?}, q = {q}: solver says linked = {ours}"));
        }
        linked += ours as usize;
    }
    Ok(format!("100 sets ({linked} linked), verdicts agree"))
}

/// Random partial 2-tree with parallel edges, together with a width-2
/// decomposition read off its construction.
fn two_tree_instance(r: &mut ChaCha8Rng, c: u32) -> (SndpInstance, RawDecomposition) {
    let n = r.random_range(3..=9);
    let mut edges = vec![(0, 1)];
    let mut home = vec![0];
    let mut bags = vec![vec![0, 1]];
    let mut tree_edges = Vec::new();
    for v in 2..n {
        let e = r.random_range(0..edges.len());
        let (a, b) = edges[e];
        let bag = bags.len();
        bags.push(vec![a, b, v]);
        tree_edges.push((home[e], bag));
        edges.push((a, v));
        edges.push((b, v));
        home.extend([bag, bag]);
    }
    edges.shuffle(r);
    let keep = r.random_range(n - 1..=edges.len());
    edges.truncate(keep);
    let m = r.random_range(keep..=18);
    while edges.len() < m {
        let e = edges[r.random_range(0..keep)];
        edges.push(e);
    }
    let root = r.random_range(0..n);
    let others: Vec<Vertex> = (0..n).filter(|&v| v != root).collect();
    let count = r.random_range(1..=3.min(others.len()));
    let demands = others
        .choose_multiple(r, count)
        .map(|&vertex| Demand {
            vertex,
            req: r.random_range(1..=c),
        })
        .collect();
    let inst = SndpInstance {
        n,
        edges: edges.into_iter().map(|(u, v)| (u, v, r.random_range(1..=10))).collect(),
        root,
        demands,
    };
    (inst, RawDecomposition { bags, tree_edges })
}

fn sndp() -> Verdict {
    let mut r = rng(7);
    let start = Instant::now();
    let mut feasible = 0;
    for i in 0..100 {
        let c = 1 + (i % 2) as u32;
        let (inst, raw) = two_tree_instance(&mut r, c);
        let td = prepare_decomposition(&inst, Some(&raw)).unwrap();
        if td.bags.iter().any(|b| b.len() > 4) {
            return Err(format!("instance {i}: bag wider than width 2 plus the root"));
        }
        let got = solve_sndp(&inst, &td, c).unwrap();
        let want = oracle_sndp(&inst, c).unwrap();
        if got.as_ref().map(|s| s.cost) != want.as_ref().map(|s| s.cost) {
            return Err(format!(
                "instance {i}: dp {:?} vs oracle {:?}",
                got.map(|s| s.cost),
                want.map(|s| s.cost)
            ));
        }
        if let Some(s) = got {
            if !inst.is_feasible(&s.edges).unwrap() {
                return Err(format!("instance {i}: returned edges miss a demand"));
            }
            feasible += 1;
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("optima equal but took {:.1}s", t.as_secs_f64()));
    }
    Ok(format!(
        "100 instances ({feasible} feasible), optima equal, {:.1}s",
        t.as_secs_f64()
    ))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mimicnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn performance(dir: &Path) -> Verdict {
    let p = |s: &str| dir.join(s).to_string_lossy().into_owned();
    let (g, h) = (p("perf.txt"), p("perf_h.txt"));
    let out = cli(&[
        "gen", "--n", "1000", "--m", "5000", "--k", "8", "--c", "2", "--seed", "8", "-o", &g,
    ]);
    if !out.status.success() {
        return Err("generator failed".into());
    }
    let start = Instant::now();
    let out = cli(&["sparsify", &g, "--c", "2", "-o", &h]);
    let t = start.elapsed();
    if !out.status.success() {
        return Err(format!("sparsify failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    if t > Duration::from_secs(10) {
        return Err(format!("sparsify took {:.1}s", t.as_secs_f64()));
    }
    let out = cli(&["verify", &g, &h, "--c", "2", "--budget", "2000", "--seed", "8"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if !out.status.success() || report["mismatches"] != 0 || report["sampled"] != true {
        return Err(format!("verification failed: {report}"));
    }
    Ok(format!(
        "sparsify {:.2}s, {} sampled queries, 0 mismatches",
        t.as_secs_f64(),
        report["queries"]
    ))
}

fn determinism(dir: &Path) -> Verdict {
    let p = |s: &str| dir.join(s).to_string_lossy().into_owned();
    let mut files = Vec::new();
    for run in 0..2 {
        let name = |s: &str| p(&format!("{s}{run}"));
        let (g, h, sr, vr) = (name("g"), name("h"), name("sr"), name("vr"));
        cli(&[
            "gen", "--n", "200", "--m", "320", "--k", "5", "--c", "3", "--seed", "9", "-o", &g,
        ]);
        cli(&["sparsify", &g, "--c", "3", "-o", &h, "--report", &sr]);
        cli(&[
            "verify", &g, &h, "--c", "3", "--budget", "100", "--seed", "9", "--report", &vr,
        ]);
        files.push([g, h, sr, vr].map(|f| fs::read(f).unwrap_or_default()));
    }
    for (i, what) in ["instance", "sparsifier", "sparsify report", "verify report"]
        .iter()
        .enumerate()
    {
        if files[0][i].is_empty() {
            return Err(format!("{what} was not written"));
        }
        if files[0][i] != files[1][i] {
            return Err(format!("{what} differs between runs"));
        }
    }
    Ok("instance, sparsifier and both reports byte-identical across runs".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let (exact, size) = exactness_and_size();
    let results: Vec<(&str, Verdict)> = vec![
        ("exactness against the cut oracle", exact),
        ("size bound 3^c·c·k", size),
        ("connectivity-2 cluster bound", connectivity_two()),
        ("important cuts match the oracle", important_cuts()),
        ("constrained-cut completeness", constrained_cuts()),
        ("linkedness certification", linkedness()),
        ("network design optimality", sndp()),
        ("performance smoke", performance(dir.path())),
        ("determinism", determinism(dir.path())),
    ];
    let mut failed = 0;
    for (i, (name, v)) in results.iter().enumerate() {
        match v {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
