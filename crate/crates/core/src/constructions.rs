//! Hypergraph generators: named families and seeded random hosts.
//!
//! The extremal family here is the classical lower-bound witness for the
//! minimum vertex degree threshold: fix a small set A of size n/4 - 1 and
//! take every triple meeting A. Any loose cycle must use an A-vertex in
//! every other edge, so the construction has no loose Hamilton cycle while
//! its minimum degree sits just below the threshold.

use crate::error::{Error, Result};
use crate::hypergraph::{choose2, choose3, Edge3, Hypergraph3, VertexId};
use crate::seeds;
use itertools::Itertools;
use rand::Rng;

/// Complete 3-uniform hypergraph on n vertices.
pub fn make_complete(n: usize) -> Hypergraph3 {
    let mut h = Hypergraph3::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                h.add_edge(Edge3::new(a, b, c).unwrap());
            }
        }
    }
    h
}

/// Loose cycle on n vertices (n even, n >= 6): edges {2i, 2i+1, 2i+2 mod n}.
/// Junctions are the even vertices.
pub fn make_loose_cycle(n: usize) -> Result<Hypergraph3> {
    if n < 6 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "loose cycle needs even n >= 6, got {}",
            n
        )));
    }
    let mut h = Hypergraph3::new(n);
    for i in 0..n / 2 {
        h.add_edge(Edge3::new(2 * i, 2 * i + 1, (2 * i + 2) % n).unwrap());
    }
    Ok(h)
}

/// Extremal construction: A = {0, ..., a-1} with a = floor(n/4) - 1 (clamped
/// at zero), edges = all triples meeting A. Degenerate sizes give an edgeless
/// hypergraph, which is legal.
pub fn make_h3(n: usize) -> Result<Hypergraph3> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 vertices, got {}",
            n
        )));
    }
    let a = (n / 4).saturating_sub(1);
    let mut h = Hypergraph3::new(n);
    for x in 0..a {
        for b in (x + 1)..n {
            for c in (b + 1)..n {
                h.add_edge(Edge3::new(x, b, c).unwrap());
            }
        }
    }
    Ok(h)
}

/// Minimum vertex degree of the extremal construction in closed form:
/// C(a, 2) + a(n - a - 1) with a = floor(n/4) - 1, attained on the big side.
pub fn h3_min_degree(n: usize) -> u64 {
    let a = (n / 4).saturating_sub(1);
    choose2(a) + (a as u64) * (n as u64 - a as u64 - 1)
}

/// A k-uniform edge list, for the generalised extremal family. Only the
/// 3-uniform case feeds the solvers; this type carries edges and degree
/// counts and nothing else.
#[derive(Debug, Clone)]
pub struct KUniformEdgeList {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<VertexId>>,
}

impl KUniformEdgeList {
    pub fn min_vertex_degree(&self) -> u64 {
        let mut deg = vec![0u64; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg.into_iter().min().unwrap_or(0)
    }

    /// Text format: header `<n> <k> <edge count>`, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.edges.len());
        for e in &self.edges {
            out.push_str(&e.iter().map(|v| v.to_string()).join(" "));
            out.push('\n');
        }
        out
    }
}

/// Generalised extremal construction: for k-uniform hosts, A has size
/// n / (2(k-1)) - 1 and edges are the k-sets meeting A. Requires
/// 2(k-1) | n exactly.
pub fn make_hk(n: usize, k: usize) -> Result<KUniformEdgeList> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("need k >= 3, got {}", k)));
    }
    let period = 2 * (k - 1);
    if n == 0 || n % period != 0 {
        return Err(Error::InvalidArgument(format!(
            "need {} | n for k = {}, got n = {}",
            period, k, n
        )));
    }
    let a = n / period - 1;
    let mut edges = Vec::new();
    for set in (0..n).combinations(k) {
        if set[0] < a {
            edges.push(set);
        }
        if edges.len() > 5_000_000 {
            return Err(Error::InvalidArgument(
                "edge list too large for desk scale".into(),
            ));
        }
    }
    Ok(KUniformEdgeList { n, k, edges })
}

/// The 8-vertex template M used throughout the tiling machinery: vertices
/// 0..8 in role order x1, x2, w1, y1, y2, w2, z1, z2 with edges
/// {x1,x2,w1}, {w1,y1,y2}, {y1,y2,w2}, {w2,z1,z2}.
pub fn make_m() -> Hypergraph3 {
    let edges = [(0, 1, 2), (2, 3, 4), (3, 4, 5), (5, 6, 7)];
    Hypergraph3::from_edges(8, edges.map(|(a, b, c)| Edge3::new(a, b, c).unwrap())).unwrap()
}

/// Result of `random_min_degree`: the host plus how many edges the
/// augmentation pass added on top of the binomial base.
#[derive(Debug)]
pub struct MinDegreeHost {
    pub hypergraph: Hypergraph3,
    pub target: u64,
    pub added: usize,
}

/// Random host with minimum vertex degree at least `target`: binomial base
/// at a rate aimed slightly above the target, then repeatedly add a random
/// absent triple through the current minimum degree vertex.
pub fn random_min_degree(n: usize, target: u64, seed: u64) -> Result<MinDegreeHost> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 vertices, got {}",
            n
        )));
    }
    let max_deg = choose2(n - 1);
    if target > max_deg {
        return Err(Error::InvalidArgument(format!(
            "target degree {} exceeds C({},2) = {}",
            target,
            n - 1,
            max_deg
        )));
    }
    let mut rng = seeds::rng(seed);
    let p = ((1.15 * target as f64) / max_deg as f64).min(1.0);
    let mut h = Hypergraph3::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if rng.gen::<f64>() < p {
                    h.add_edge(Edge3::new(a, b, c).unwrap());
                }
            }
        }
    }
    let mut added = 0usize;
    loop {
        let (d, v) = h.min_degree();
        if d as u64 >= target {
            break;
        }
        let absent: Vec<Edge3> = (0..n)
            .filter(|&a| a != v)
            .flat_map(|a| {
                ((a + 1)..n)
                    .filter(move |&b| b != v)
                    .map(move |b| Edge3::new(v, a, b).unwrap())
            })
            .filter(|e| !h.contains(*e))
            .collect();
        let pick = absent[rng.gen_range(0..absent.len())];
        h.add_edge(pick);
        added += 1;
    }
    Ok(MinDegreeHost {
        hypergraph: h,
        target,
        added,
    })
}

/// Random tripartite host: classes are consecutive ranges of the given
/// sizes and each crossing triple appears independently with probability d.
/// Returns the host and the three classes.
pub fn tripartite_random(
    sizes: [usize; 3],
    d: f64,
    seed: u64,
) -> Result<(Hypergraph3, [Vec<VertexId>; 3])> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::InvalidArgument(format!("density {} not in [0,1]", d)));
    }
    let n = sizes[0] + sizes[1] + sizes[2];
    let c1: Vec<_> = (0..sizes[0]).collect();
    let c2: Vec<_> = (sizes[0]..sizes[0] + sizes[1]).collect();
    let c3: Vec<_> = (sizes[0] + sizes[1]..n).collect();
    let mut rng = seeds::rng(seed);
    let mut h = Hypergraph3::new(n);
    for &a in &c1 {
        for &b in &c2 {
            for &c in &c3 {
                if rng.gen::<f64>() < d {
                    h.add_edge(Edge3::new(a, b, c).unwrap());
                }
            }
        }
    }
    Ok((h, [c1, c2, c3]))
}

/// Binomial random host: every triple appears independently with
/// probability p.
pub fn random_binomial(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "probability {} not in [0,1]",
            p
        )));
    }
    let mut rng = seeds::rng(seed);
    let mut h = Hypergraph3::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if rng.gen::<f64>() < p {
                    h.add_edge(Edge3::new(a, b, c).unwrap());
                }
            }
        }
    }
    Ok(h)
}

/// Dense host with a guaranteed edge count: binomial base aimed at the
/// target count, then deterministic top-up in lexicographic order until
/// at least `min_edges` edges are present.
pub fn random_with_min_edges(n: usize, min_edges: u64, seed: u64) -> Result<Hypergraph3> {
    let total = choose3(n);
    if min_edges > total {
        return Err(Error::InvalidArgument(format!(
            "cannot fit {} edges into C({},3) = {}",
            min_edges, n, total
        )));
    }
    let p = (min_edges as f64 / total as f64 * 1.05).min(1.0);
    let mut h = random_binomial(n, p, seed)?;
    'fill: for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if h.edge_count() as u64 >= min_edges {
                    break 'fill;
                }
                h.add_edge(Edge3::new(a, b, c).unwrap());
            }
        }
    }
    Ok(h)
}
