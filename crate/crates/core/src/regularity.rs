//! Density and regularity of class triples, cluster hypergraphs, and
//! minimum-degree inheritance.
//!
//! A triple (V1, V2, V3) is eps-regular when every subset triple with
//! |Ai| >= eps |Vi| has crossing density within eps of the triple's own.
//! The exhaustive check walks all subset pairs (A2, A3) in Gray-code
//! order, maintaining for each vertex of V1 its edge count into A2 x A3;
//! sorting those counts makes the extremal A1 of every size a prefix or
//! suffix, so the whole A1 dimension collapses to prefix sums. All
//! comparisons cross-multiply exactly in i128.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, VertexId};
use crate::seeds;
use crate::tiling::fractional::{rat, Rational};

fn class_lookup(n: usize, classes: &[&[VertexId]]) -> Result<Vec<Option<usize>>> {
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    for (i, cl) in classes.iter().enumerate() {
        if cl.is_empty() {
            return Err(Error::InvalidArgument(format!("class {} is empty", i)));
        }
        for &v in *cl {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if class_of[v].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} appears in two classes",
                    v
                )));
            }
            class_of[v] = Some(i);
        }
    }
    Ok(class_of)
}

/// Crossing edges of a class triple.
pub fn crossing_count(
    h: &Hypergraph3,
    c1: &[VertexId],
    c2: &[VertexId],
    c3: &[VertexId],
) -> Result<usize> {
    let class_of = class_lookup(h.n(), &[c1, c2, c3])?;
    Ok(h
        .edges()
        .iter()
        .filter(|e| {
            let [a, b, c] = e.vertices();
            matches!(
                (class_of[a], class_of[b], class_of[c]),
                (Some(x), Some(y), Some(z)) if x != y && y != z && x != z
            )
        })
        .count())
}

/// Exact crossing density e(V1, V2, V3) / (|V1| |V2| |V3|).
pub fn triple_density(
    h: &Hypergraph3,
    c1: &[VertexId],
    c2: &[VertexId],
    c3: &[VertexId],
) -> Result<Rational> {
    let e = crossing_count(h, c1, c2, c3)? as i64;
    let prod = (c1.len() * c2.len() * c3.len()) as i64;
    Ok(rat(e, prod))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityVerdict {
    Regular,
    Irregular {
        witness: [Vec<VertexId>; 3],
        deviation: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledVerdict {
    /// No witness among the sampled subset triples. Vacuous when the size
    /// floors force Ai = Vi.
    PlausiblyRegular { vacuous: bool },
    CertifiedIrregular {
        witness: [Vec<VertexId>; 3],
        deviation: Rational,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityMode {
    Exhaustive,
    Sampled { trials: usize },
}

const MAX_EXHAUSTIVE_CLASS: usize = 12;

/// Minimum admissible subset size: max(1, ceil(eps |V|)).
fn size_floor(eps: Rational, n: usize) -> usize {
    let raw = (eps * rat(n as i64, 1)).ceil().to_integer();
    raw.to_usize().unwrap_or(0).clamp(1, n)
}

struct Adjacency {
    n: [usize; 3],
    // adj[v][j][k] over positions in the three classes.
    adj: Vec<Vec<Vec<bool>>>,
    edge_total: i64,
}

fn build_adjacency(h: &Hypergraph3, classes: &[Vec<VertexId>; 3]) -> Result<Adjacency> {
    let refs: Vec<&[VertexId]> = classes.iter().map(|c| c.as_slice()).collect();
    let class_of = class_lookup(h.n(), &refs)?;
    let mut pos: Vec<usize> = vec![0; h.n()];
    for cl in classes {
        for (p, &v) in cl.iter().enumerate() {
            pos[v] = p;
        }
    }
    let n = [classes[0].len(), classes[1].len(), classes[2].len()];
    let mut adj = vec![vec![vec![false; n[2]]; n[1]]; n[0]];
    let mut edge_total = 0i64;
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        let mut slot: [Option<VertexId>; 3] = [None; 3];
        let mut ok = true;
        for v in [a, b, c] {
            match class_of[v] {
                Some(i) if slot[i].is_none() => slot[i] = Some(v),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if let [Some(x), Some(y), Some(z)] = slot {
                adj[pos[x]][pos[y]][pos[z]] = true;
                edge_total += 1;
            }
        }
    }
    Ok(Adjacency { n, adj, edge_total })
}

/// |e_a * P - e_v * S| > eps * S * P, exactly.
fn deviates(e_a: i64, s: i64, e_v: i64, p: i64, eps: Rational) -> bool {
    let num = (e_a as i128) * (p as i128) - (e_v as i128) * (s as i128);
    let lhs = num.abs() * (*eps.denom() as i128);
    let rhs = (*eps.numer() as i128) * (s as i128) * (p as i128);
    lhs > rhs
}

fn deviation(e_a: i64, s: i64, e_v: i64, p: i64) -> Rational {
    (rat(e_a, s) - rat(e_v, p)).abs()
}

/// Exhaustive eps-regularity check; class sizes capped at 12.
pub fn check_regular_triple(
    h: &Hypergraph3,
    classes: &[Vec<VertexId>; 3],
    eps: Rational,
) -> Result<RegularityVerdict> {
    if eps < Rational::zero() {
        return Err(Error::InvalidArgument("eps must be nonnegative".into()));
    }
    for cl in classes {
        if cl.len() > MAX_EXHAUSTIVE_CLASS {
            return Err(Error::TooManyVertices {
                n: cl.len(),
                max: MAX_EXHAUSTIVE_CLASS,
            });
        }
    }
    let ad = build_adjacency(h, classes)?;
    let [n1, n2, n3] = ad.n;
    let p_total = (n1 * n2 * n3) as i64;
    let e_v = ad.edge_total;
    let floors = [
        size_floor(eps, n1),
        size_floor(eps, n2),
        size_floor(eps, n3),
    ];

    let found = (0u32..(1 << n2))
        .into_par_iter()
        .find_map_first(|m2| {
            if (m2.count_ones() as usize) < floors[1] {
                return None;
            }
            let a2: Vec<usize> = (0..n2).filter(|j| m2 & (1 << j) != 0).collect();
            // q[v][k]: edges from v through A2 to k.
            let mut q = vec![vec![0i64; n3]; n1];
            for v in 0..n1 {
                for &j in &a2 {
                    for k in 0..n3 {
                        if ad.adj[v][j][k] {
                            q[v][k] += 1;
                        }
                    }
                }
            }
            // Gray-code walk over A3 masks, maintaining per-vertex counts.
            let mut col = vec![0i64; n1];
            for g in 1u32..(1 << n3) {
                let bit = g.trailing_zeros() as usize;
                let mask = g ^ (g >> 1);
                let on = mask & (1 << bit) != 0;
                for v in 0..n1 {
                    if on {
                        col[v] += q[v][bit];
                    } else {
                        col[v] -= q[v][bit];
                    }
                }
                let a3_size = mask.count_ones() as usize;
                if a3_size < floors[2] {
                    continue;
                }
                // Extremal A1 of each size is a prefix (max) or suffix
                // (min) of the sorted column counts.
                let mut order: Vec<usize> = (0..n1).collect();
                order.sort_by_key(|&v| std::cmp::Reverse(col[v]));
                let mut prefix = vec![0i64; n1 + 1];
                for (i, &v) in order.iter().enumerate() {
                    prefix[i + 1] = prefix[i] + col[v];
                }
                let s_rest = (a2.len() * a3_size) as i64;
                for s1 in floors[0]..=n1 {
                    let s = s1 as i64 * s_rest;
                    let top = prefix[s1];
                    let bottom = prefix[n1] - prefix[n1 - s1];
                    for (e_a, pick_top) in [(top, true), (bottom, false)] {
                        if deviates(e_a, s, e_v, p_total, eps) {
                            let chosen: Vec<usize> = if pick_top {
                                order[..s1].to_vec()
                            } else {
                                order[n1 - s1..].to_vec()
                            };
                            let w1: Vec<VertexId> =
                                chosen.iter().map(|&v| classes[0][v]).collect();
                            let w2: Vec<VertexId> =
                                a2.iter().map(|&j| classes[1][j]).collect();
                            let w3: Vec<VertexId> = (0..n3)
                                .filter(|k| mask & (1 << k) != 0)
                                .map(|k| classes[2][k])
                                .collect();
                            return Some((
                                [w1, w2, w3],
                                deviation(e_a, s, e_v, p_total),
                            ));
                        }
                    }
                }
            }
            None
        });
    Ok(match found {
        Some((witness, deviation)) => RegularityVerdict::Irregular { witness, deviation },
        None => RegularityVerdict::Regular,
    })
}

/// Randomized search for an irregularity witness: k subset triples with
/// sizes uniform between the floor and the class size.
pub fn sample_regular_triple(
    h: &Hypergraph3,
    classes: &[Vec<VertexId>; 3],
    eps: Rational,
    trials: usize,
    seed: u64,
) -> Result<SampledVerdict> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    if eps < Rational::zero() {
        return Err(Error::InvalidArgument("eps must be nonnegative".into()));
    }
    let ad = build_adjacency(h, classes)?;
    let [n1, n2, n3] = ad.n;
    let p_total = (n1 * n2 * n3) as i64;
    let e_v = ad.edge_total;
    let floors = [
        size_floor(eps, n1),
        size_floor(eps, n2),
        size_floor(eps, n3),
    ];
    let vacuous = floors[0] == n1 && floors[1] == n2 && floors[2] == n3;

    let mut rng = seeds::rng(seeds::derive(seed, "regularity-sample"));
    for _ in 0..trials {
        let mut picks: [Vec<usize>; 3] = Default::default();
        for (i, &ni) in ad.n.iter().enumerate() {
            let size = rng.gen_range(floors[i]..=ni);
            let mut idx: Vec<usize> = (0..ni).collect();
            idx.shuffle(&mut rng);
            idx.truncate(size);
            idx.sort_unstable();
            picks[i] = idx;
        }
        let mut e_a = 0i64;
        for &v in &picks[0] {
            for &j in &picks[1] {
                for &k in &picks[2] {
                    if ad.adj[v][j][k] {
                        e_a += 1;
                    }
                }
            }
        }
        let s = (picks[0].len() * picks[1].len() * picks[2].len()) as i64;
        if deviates(e_a, s, e_v, p_total, eps) {
            let witness: [Vec<VertexId>; 3] =
                std::array::from_fn(|i| picks[i].iter().map(|&p| classes[i][p]).collect());
            return Ok(SampledVerdict::CertifiedIrregular {
                witness,
                deviation: deviation(e_a, s, e_v, p_total),
            });
        }
    }
    Ok(SampledVerdict::PlausiblyRegular { vacuous })
}

/// Deals shuffled vertices round-robin into t classes; sizes differ by at
/// most one.
pub fn balanced_partition(n: usize, t: usize, seed: u64) -> Vec<Vec<VertexId>> {
    use rand::seq::SliceRandom;
    assert!(t >= 1, "need at least one class");
    let mut verts: Vec<VertexId> = (0..n).collect();
    verts.shuffle(&mut seeds::rng(seeds::derive(seed, "balanced-partition")));
    let mut classes = vec![Vec::with_capacity(n / t + 1); t];
    for (i, v) in verts.into_iter().enumerate() {
        classes[i % t].push(v);
    }
    for cl in &mut classes {
        cl.sort_unstable();
    }
    classes
}

/// One row of the cluster construction: a cluster triple with its density
/// and the regularity outcome at the chosen mode.
#[derive(Debug, Clone)]
pub struct ClusterTriple {
    pub clusters: [usize; 3],
    pub density: Rational,
    pub dense: bool,
    pub certified_irregular: bool,
    pub kept: bool,
}

#[derive(Debug, Clone)]
pub struct ClusterReport {
    pub triples: Vec<ClusterTriple>,
}

/// The cluster hypergraph: one vertex per class, an edge per triple that
/// is dense (density >= d) and not certified irregular at eps under the
/// chosen mode.
pub fn cluster_hypergraph(
    h: &Hypergraph3,
    partition: &[Vec<VertexId>],
    d: Rational,
    eps: Rational,
    mode: RegularityMode,
    seed: u64,
) -> Result<(Hypergraph3, ClusterReport)> {
    let t = partition.len();
    let refs: Vec<&[VertexId]> = partition.iter().map(|c| c.as_slice()).collect();
    class_lookup(h.n(), &refs)?;
    let mut k = Hypergraph3::new(t);
    let mut triples = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            for l in j + 1..t {
                let density = triple_density(h, &partition[i], &partition[j], &partition[l])?;
                let dense = density >= d;
                let mut certified_irregular = false;
                if dense {
                    certified_irregular = match mode {
                        RegularityMode::Exhaustive => {
                            let cls =
                                [partition[i].clone(), partition[j].clone(), partition[l].clone()];
                            matches!(
                                check_regular_triple(h, &cls, eps)?,
                                RegularityVerdict::Irregular { .. }
                            )
                        }
                        RegularityMode::Sampled { trials } => {
                            let cls =
                                [partition[i].clone(), partition[j].clone(), partition[l].clone()];
                            let salt = seeds::derive(seed, &format!("cluster-{}-{}-{}", i, j, l));
                            matches!(
                                sample_regular_triple(h, &cls, eps, trials, salt)?,
                                SampledVerdict::CertifiedIrregular { .. }
                            )
                        }
                    };
                }
                let kept = dense && !certified_irregular;
                if kept {
                    k.add_edge(crate::Edge3::new(i, j, l)?);
                }
                triples.push(ClusterTriple {
                    clusters: [i, j, l],
                    density,
                    dense,
                    certified_irregular,
                    kept,
                });
            }
        }
    }
    Ok((k, ClusterReport { triples }))
}

/// Whether the cluster hypergraph inherits the degree bound: compares
/// delta_1(K) / C(t, 2) against 7/16 + gamma - eps - d, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InheritanceReport {
    pub clusters: usize,
    pub min_degree: u32,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

pub fn degree_inheritance_report(
    k: &Hypergraph3,
    gamma: Rational,
    eps: Rational,
    d: Rational,
) -> InheritanceReport {
    let t = k.n();
    let (min_degree, _) = k.min_degree();
    let pairs = crate::choose2(t) as i64;
    let lhs = rat(min_degree as i64, pairs.max(1));
    let rhs = rat(7, 16) + gamma - eps - d;
    InheritanceReport {
        clusters: t,
        min_degree,
        lhs,
        rhs,
        holds: lhs >= rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_complete, tripartite_random};
    use crate::hypergraph::Edge3;

    fn complete_tripartite(sizes: [usize; 3]) -> (Hypergraph3, [Vec<VertexId>; 3]) {
        let n = sizes.iter().sum();
        let mut classes: [Vec<VertexId>; 3] = Default::default();
        let mut next = 0;
        for (i, &s) in sizes.iter().enumerate() {
            classes[i] = (next..next + s).collect();
            next += s;
        }
        let mut edges = Vec::new();
        for &a in &classes[0] {
            for &b in &classes[1] {
                for &c in &classes[2] {
                    edges.push(Edge3::new(a, b, c).unwrap());
                }
            }
        }
        (Hypergraph3::from_edges(n, edges).unwrap(), classes)
    }

    #[test]
    fn complete_triples_are_regular() {
        let (h, classes) = complete_tripartite([6, 6, 6]);
        assert_eq!(
            triple_density(&h, &classes[0], &classes[1], &classes[2]).unwrap(),
            rat(1, 1)
        );
        let v = check_regular_triple(&h, &classes, rat(1, 10)).unwrap();
        assert_eq!(v, RegularityVerdict::Regular);
    }

    #[test]
    fn concentrated_triple_is_certified_irregular() {
        // Edges only among the first halves: density 1/8 overall, 1 on the
        // half triple, deviation 7/8.
        let sizes = [6usize, 6, 6];
        let (full, classes) = complete_tripartite(sizes);
        let half: [Vec<VertexId>; 3] = std::array::from_fn(|i| classes[i][..3].to_vec());
        let edges: Vec<Edge3> = full
            .edges()
            .iter()
            .filter(|e| {
                e.vertices()
                    .iter()
                    .all(|v| half.iter().any(|h| h.contains(v)))
            })
            .copied()
            .collect();
        let h = Hypergraph3::from_edges(full.n(), edges).unwrap();
        match check_regular_triple(&h, &classes, rat(1, 4)).unwrap() {
            RegularityVerdict::Irregular { deviation, witness } => {
                assert!(deviation > rat(1, 4), "deviation {}", deviation);
                for (i, w) in witness.iter().enumerate() {
                    assert!(w.len() >= 2, "class {} witness too small", i);
                }
            }
            RegularityVerdict::Regular => panic!("concentration must be caught"),
        }
        // The sampler finds it too.
        match sample_regular_triple(&h, &classes, rat(1, 4), 200, 1).unwrap() {
            SampledVerdict::CertifiedIrregular { .. } => {}
            v => panic!("sampler missed the concentration: {:?}", v),
        }
    }

    #[test]
    fn exhaustive_and_sampler_agree_on_random_triples() {
        for seed in 0..4u64 {
            let (h, classes) = tripartite_random([7, 7, 7], 0.5, 60 + seed).unwrap();
            let cls = [classes[0].clone(), classes[1].clone(), classes[2].clone()];
            let exact = check_regular_triple(&h, &cls, rat(1, 3)).unwrap();
            let sampled = sample_regular_triple(&h, &cls, rat(1, 3), 300, seed).unwrap();
            if let SampledVerdict::CertifiedIrregular { witness, deviation } = &sampled {
                // A sampled witness implies the exhaustive check fails too.
                assert!(
                    matches!(exact, RegularityVerdict::Irregular { .. }),
                    "sampler found {:?} dev {} but exhaustive says regular",
                    witness,
                    deviation
                );
            }
        }
    }

    #[test]
    fn balanced_partition_is_balanced_and_seeded() {
        let p = balanced_partition(26, 4, 9);
        assert_eq!(p.len(), 4);
        let sizes: Vec<usize> = p.iter().map(|c| c.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 26);
        assert!(sizes.iter().all(|&s| s == 6 || s == 7));
        let mut all: Vec<VertexId> = p.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..26).collect::<Vec<_>>());
        assert_eq!(p, balanced_partition(26, 4, 9));
        assert_ne!(p, balanced_partition(26, 4, 10));
    }

    #[test]
    fn cluster_hypergraph_keeps_dense_regular_triples() {
        // Complete across (0, 1, 2); nothing touches cluster 3.
        let (tri, classes) = complete_tripartite([4, 4, 4]);
        let mut partition: Vec<Vec<VertexId>> = classes.to_vec();
        partition.push((12..16).collect());
        let h = Hypergraph3::from_edges(16, tri.edges().to_vec()).unwrap();
        let (k, report) = cluster_hypergraph(
            &h,
            &partition,
            rat(1, 2),
            rat(1, 4),
            RegularityMode::Exhaustive,
            0,
        )
        .unwrap();
        assert_eq!(k.edge_count(), 1);
        assert!(k.contains_edge(0, 1, 2));
        assert_eq!(report.triples.len(), 4);
        let kept: Vec<_> = report.triples.iter().filter(|t| t.kept).collect();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].density, rat(1, 1));
    }

    #[test]
    fn inheritance_on_complete_cluster_graph() {
        let k = make_complete(6);
        let r = degree_inheritance_report(&k, rat(1, 20), rat(1, 100), rat(1, 100));
        // delta_1 = C(5, 2) = 10 over C(6, 2) = 15.
        assert_eq!(r.lhs, rat(2, 3));
        assert!(r.holds);
        let strict = degree_inheritance_report(&k, rat(1, 2), rat(0, 1), rat(0, 1));
        assert!(!strict.holds);
    }
}
