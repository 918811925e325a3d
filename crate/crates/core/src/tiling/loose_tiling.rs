//! Covering a host by long vertex-disjoint loose paths.
//!
//! The triple tiler walks a crossing loose path through three classes
//! A, B, C with junction classes cycling C, A, C, B and middle classes
//! B, B, A, A, so a full period of four edges consumes vertices at the
//! ratio (3, 3, 2). `path_tile` lifts this to a whole host: partition
//! into clusters, keep the dense regular cluster triples, tile the
//! cluster hypergraph by copies of M, split each copy's clusters into
//! four (3, 3, 2)-shaped triples, and tile each triple by loose paths.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, VertexId};
use crate::l29::MRole;
use crate::paths::LoosePath;
use crate::regularity::{balanced_partition, cluster_hypergraph, ClusterReport, RegularityMode};
use crate::tiling::fractional::{rat, Rational};
use crate::tiling::mtiling::{find_augmenting_structure, max_m_tiling};
use crate::tiling::tight::class_map;

/// Junction class of the k-th junction (1-based) on the patterned path.
const JUNCTIONS: [usize; 4] = [2, 0, 2, 1];
/// Middle class of the k-th edge (1-based).
const MIDDLES: [usize; 4] = [1, 1, 0, 0];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoosePathTileReport {
    pub paths: Vec<LoosePath>,
    pub covered: usize,
    pub uncovered: [Vec<VertexId>; 3],
    /// Sizes are exactly (3s, 3s, 2s), so a perfect pattern run would
    /// sweep every vertex.
    pub exact_ratio: bool,
}

/// Tiles a class triple by loose paths whose edges cross all three
/// classes. The third class must be scarcest; consumption follows the
/// (3, 3, 2) pattern while the host allows it, then any leftover edges
/// inside the triple are used freestyle.
pub fn loose_path_tile_triple(
    h: &Hypergraph3,
    classes: &[Vec<VertexId>; 3],
) -> Result<LoosePathTileReport> {
    let class_of = class_map(h.n(), classes)?;
    let sizes: [usize; 3] = std::array::from_fn(|i| classes[i].len());
    if sizes[2] > sizes[0] || sizes[2] > sizes[1] {
        return Err(Error::InvalidArgument(format!(
            "third class must be scarcest, sizes {:?}",
            sizes
        )));
    }
    let exact_ratio =
        sizes[0] > 0 && sizes[0] % 3 == 0 && sizes[0] == sizes[1] && 2 * sizes[0] == 3 * sizes[2];

    let mut remaining: [BTreeSet<VertexId>; 3] =
        std::array::from_fn(|i| classes[i].iter().copied().collect());
    let mut paths: Vec<LoosePath> = Vec::new();

    loop {
        // A fresh path starts on the first pattern edge (C, B, A); once
        // that signature runs dry, on any edge left inside the triple.
        let (mut order, patterned) = if let Some([j, m, a]) = pattern_start(h, &remaining) {
            remaining[2].remove(&j);
            remaining[1].remove(&m);
            remaining[0].remove(&a);
            (vec![j, m, a], true)
        } else if let Some([u, v, w]) = any_edge(h, &remaining) {
            for x in [u, v, w] {
                remaining[class_of[x].unwrap()].remove(&x);
            }
            (vec![u, v, w], false)
        } else {
            break;
        };
        // Extend; edge k (1-based) wants middle MIDDLES[(k-1) % 4] and
        // far junction JUNCTIONS[k % 4].
        let mut k = 1usize;
        loop {
            let last = *order.last().unwrap();
            let ext = if patterned {
                let (mc, jc) = (MIDDLES[k % 4], JUNCTIONS[(k + 1) % 4]);
                pattern_extend(h, &remaining, last, mc, jc)
            } else {
                any_extend(h, &remaining, last, &class_of)
            };
            match ext {
                Some((m, mc, j, jc)) => {
                    remaining[mc].remove(&m);
                    remaining[jc].remove(&j);
                    order.push(m);
                    order.push(j);
                    k += 1;
                }
                None => break,
            }
        }
        let path = LoosePath::new(h, order)
            .map_err(|v| Error::InvalidArgument(format!("tiler produced an invalid path: {}", v)))?;
        paths.push(path);
    }

    let covered = paths.iter().map(|p| p.len()).sum();
    let uncovered: [Vec<VertexId>; 3] =
        std::array::from_fn(|i| remaining[i].iter().copied().collect());
    Ok(LoosePathTileReport {
        paths,
        covered,
        uncovered,
        exact_ratio,
    })
}

/// First crossing edge oriented (C, B, A), in vertex order.
fn pattern_start(
    h: &Hypergraph3,
    remaining: &[BTreeSet<VertexId>; 3],
) -> Option<[VertexId; 3]> {
    for &j in &remaining[2] {
        for &m in &remaining[1] {
            for &a in &remaining[0] {
                if h.contains_edge(j, m, a) {
                    return Some([j, m, a]);
                }
            }
        }
    }
    None
}

fn pattern_extend(
    h: &Hypergraph3,
    remaining: &[BTreeSet<VertexId>; 3],
    last: VertexId,
    mc: usize,
    jc: usize,
) -> Option<(VertexId, usize, VertexId, usize)> {
    for &m in &remaining[mc] {
        for &j in &remaining[jc] {
            if h.contains_edge(last, m, j) {
                return Some((m, mc, j, jc));
            }
        }
    }
    None
}

/// Any host edge with all three vertices still unused in the triple.
fn any_edge(h: &Hypergraph3, remaining: &[BTreeSet<VertexId>; 3]) -> Option<[VertexId; 3]> {
    let union: Vec<VertexId> = remaining.iter().flatten().copied().collect();
    for (i, &u) in union.iter().enumerate() {
        for (j, &v) in union.iter().enumerate().skip(i + 1) {
            for &w in union.iter().skip(j + 1) {
                if h.contains_edge(u, v, w) {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

fn any_extend(
    h: &Hypergraph3,
    remaining: &[BTreeSet<VertexId>; 3],
    last: VertexId,
    class_of: &[Option<usize>],
) -> Option<(VertexId, usize, VertexId, usize)> {
    let union: Vec<VertexId> = remaining.iter().flatten().copied().collect();
    for (i, &m) in union.iter().enumerate() {
        for &j in union.iter().skip(i + 1) {
            if h.contains_edge(last, m, j) {
                return Some((m, class_of[m].unwrap(), j, class_of[j].unwrap()));
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct PathTileOptions {
    /// Number of clusters.
    pub t: usize,
    pub eps: Rational,
    /// Density threshold for keeping a cluster triple.
    pub d: Rational,
    pub mode: RegularityMode,
    pub seed: u64,
    pub node_budget: u64,
}

impl Default for PathTileOptions {
    fn default() -> Self {
        PathTileOptions {
            t: 8,
            eps: rat(1, 4),
            d: rat(1, 2),
            mode: RegularityMode::Sampled { trials: 40 },
            seed: 0,
            node_budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PathTileReport {
    pub cluster_sizes: Vec<usize>,
    pub cluster_report: ClusterReport,
    /// Copies of M found in the cluster hypergraph.
    pub k_copies: usize,
    pub k_tiling_complete: bool,
    /// An augmenting structure exists among the cluster copies.
    pub augmentable: bool,
    pub paths: Vec<LoosePath>,
    pub covered: usize,
    pub uncovered: Vec<VertexId>,
}

/// Tiles the host by long loose paths through the dense regular part of
/// a balanced cluster partition.
pub fn path_tile(h: &Hypergraph3, opts: &PathTileOptions) -> Result<PathTileReport> {
    if opts.t < 3 {
        return Err(Error::InvalidArgument("need at least 3 clusters".into()));
    }
    let partition = balanced_partition(h.n(), opts.t, opts.seed);
    let (k, cluster_report) =
        cluster_hypergraph(h, &partition, opts.d, opts.eps, opts.mode, opts.seed)?;
    let kr = max_m_tiling(&k, opts.node_budget)?;
    let augmentable = find_augmenting_structure(&k, &kr.tiling).is_some();

    let mut in_copy = vec![false; opts.t];
    let mut paths: Vec<LoosePath> = Vec::new();
    let mut uncovered: Vec<VertexId> = Vec::new();
    for copy in &kr.tiling.copies {
        for v in copy.vertices() {
            in_copy[v] = true;
        }
        let part = |r: MRole| partition[copy.role(r)].as_slice();
        // w-clusters split 2/3 + 1/3 and y-clusters split in halves, so
        // each copy yields four (3, 3, 2)-shaped triples along its edges.
        let (w1a, w1b) = split_thirds(part(MRole::W1));
        let (w2a, w2b) = split_thirds(part(MRole::W2));
        let (y1a, y1b) = split_halves(part(MRole::Y1));
        let (y2a, y2b) = split_halves(part(MRole::Y2));
        let triples: [[Vec<VertexId>; 3]; 4] = [
            [part(MRole::X1).to_vec(), part(MRole::X2).to_vec(), w1a],
            [part(MRole::Z2).to_vec(), part(MRole::Z1).to_vec(), w2a],
            [y1a, y2a, w1b],
            [y1b, y2b, w2b],
        ];
        for classes in triples {
            let r = loose_path_tile_triple(h, &classes)?;
            paths.extend(r.paths);
            for side in r.uncovered {
                uncovered.extend(side);
            }
        }
    }
    for (c, used) in in_copy.iter().enumerate() {
        if !used {
            uncovered.extend(partition[c].iter().copied());
        }
    }
    uncovered.sort_unstable();
    let covered = paths.iter().map(|p| p.len()).sum();
    Ok(PathTileReport {
        cluster_sizes: partition.iter().map(|c| c.len()).collect(),
        cluster_report,
        k_copies: kr.tiling.copies.len(),
        k_tiling_complete: kr.complete,
        augmentable,
        paths,
        covered,
        uncovered,
    })
}

fn split_thirds(cluster: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let small = cluster.len() / 3;
    let big = cluster.len() - small;
    (cluster[..big].to_vec(), cluster[big..].to_vec())
}

fn split_halves(cluster: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let half = cluster.len() / 2;
    (cluster[..half].to_vec(), cluster[half..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_complete, tripartite_random};

    #[test]
    fn complete_triple_six_six_four_gives_one_long_path() {
        let (h, classes) = tripartite_random([6, 6, 4], 1.0, 0).unwrap();
        let r = loose_path_tile_triple(&h, &classes).unwrap();
        assert!(r.exact_ratio);
        assert_eq!(r.paths.len(), 1);
        assert_eq!(r.paths[0].len(), 15);
        assert_eq!(r.covered, 15);
        let unc: usize = r.uncovered.iter().map(|u| u.len()).sum();
        assert_eq!(unc, 1);
        // The one leftover sits in a majority class.
        assert!(r.uncovered[2].is_empty());
    }

    #[test]
    fn pattern_consumption_matches_three_three_two() {
        let (h, classes) = tripartite_random([9, 9, 6], 1.0, 1).unwrap();
        let r = loose_path_tile_triple(&h, &classes).unwrap();
        assert!(r.exact_ratio);
        // 24 vertices in exact ratio tile into one spanning path.
        assert_eq!(r.covered, 23);
        let unc: usize = r.uncovered.iter().map(|u| u.len()).sum();
        assert_eq!(unc, 1);
    }

    #[test]
    fn sparse_triple_banks_several_paths_honestly() {
        let (h, classes) = tripartite_random([9, 9, 6], 0.3, 7).unwrap();
        let r = loose_path_tile_triple(&h, &classes).unwrap();
        let unc: usize = r.uncovered.iter().map(|u| u.len()).sum();
        assert_eq!(r.covered + unc, 24);
        for p in &r.paths {
            assert!(p.len() >= 3 && p.len() % 2 == 1);
        }
    }

    #[test]
    fn scarce_class_must_come_third() {
        let (h, classes) = tripartite_random([4, 6, 6], 1.0, 0).unwrap();
        assert!(loose_path_tile_triple(&h, &classes).is_err());
    }

    #[test]
    fn freestyle_uses_non_crossing_edges() {
        // No crossing edge at all: a single edge inside class A still
        // gets picked up by the fallback start.
        let h = Hypergraph3::from_edges(
            8,
            vec![crate::Edge3::new(0, 1, 2).unwrap()],
        )
        .unwrap();
        let classes = [vec![0, 1, 2, 3], vec![4, 5], vec![6, 7]];
        let r = loose_path_tile_triple(&h, &classes).unwrap();
        assert_eq!(r.paths.len(), 1);
        assert_eq!(r.covered, 3);
    }

    #[test]
    fn complete_host_path_tile_covers_all_but_a_few() {
        let h = make_complete(48);
        let opts = PathTileOptions {
            mode: RegularityMode::Exhaustive,
            seed: 3,
            ..Default::default()
        };
        let r = path_tile(&h, &opts).unwrap();
        assert_eq!(r.k_copies, 1);
        assert!(r.k_tiling_complete);
        assert_eq!(r.covered + r.uncovered.len(), 48);
        assert!(r.uncovered.len() <= 12, "uncovered {}", r.uncovered.len());
        for p in &r.paths {
            assert!(p.len() >= 3);
        }
        // Paths are pairwise disjoint.
        let mut seen = std::collections::BTreeSet::new();
        for p in &r.paths {
            for &v in p.order() {
                assert!(seen.insert(v));
            }
        }
        assert_eq!(seen.len(), r.covered);
    }

    #[test]
    fn sparse_host_reports_empty_cluster_tiling() {
        let h = crate::constructions::make_h3(16).unwrap();
        let opts = PathTileOptions {
            d: rat(3, 4),
            mode: RegularityMode::Sampled { trials: 10 },
            ..Default::default()
        };
        let r = path_tile(&h, &opts).unwrap();
        assert_eq!(r.covered + r.uncovered.len(), 16);
    }

    use crate::hypergraph::Hypergraph3;
}
