//! Exact maximum M-tilings on small hosts and the augmenting structure
//! connecting two copies through two uncovered vertices.
//!
//! The branch and bound fixes the lowest available vertex and either
//! covers it by some embeddable copy or marks it permanently uncovered;
//! `floor(available / 8)` bounds the remaining copies. Copy enumeration
//! splits on the role orbit of the fixed vertex (y-pair, w-pair, or an
//! end pair) — the reflection of M makes those three cases exhaustive.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, VertexId};
use crate::l29::{L29Instance, MRole, MIN_CROSSING};
use crate::tiling::fractional::FractionalTiling;
use crate::tiling::tight::MCopy;

/// A set of pairwise vertex-disjoint M-copies.
#[derive(Debug, Clone, Default)]
pub struct MTiling {
    pub copies: Vec<MCopy>,
}

impl MTiling {
    pub fn covered(&self) -> BTreeSet<VertexId> {
        self.copies
            .iter()
            .flat_map(|c| c.vertices())
            .collect()
    }

    pub fn uncovered(&self, n: usize) -> Vec<VertexId> {
        let covered = self.covered();
        (0..n).filter(|v| !covered.contains(v)).collect()
    }

    /// Checks embedding and pairwise disjointness against a host.
    pub fn validate(&self, h: &Hypergraph3) -> Result<()> {
        let mut seen = BTreeSet::new();
        for c in &self.copies {
            for v in c.vertices() {
                if v >= h.n() {
                    return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {} covered twice",
                        v
                    )));
                }
            }
            if !c.embeds_in(h) {
                return Err(Error::InvalidArgument(format!(
                    "copy {:?} does not embed",
                    c.vertices()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct MaxTilingReport {
    pub tiling: MTiling,
    /// True when the search ran to completion, so the tiling is a maximum.
    pub complete: bool,
    pub nodes: u64,
}

const MAX_EXACT_VERTICES: usize = 40;

/// Exact maximum M-tiling by branch and bound; hosts up to 40 vertices.
/// When the node budget runs out the best tiling found is returned with
/// `complete` unset.
pub fn max_m_tiling(h: &Hypergraph3, node_budget: u64) -> Result<MaxTilingReport> {
    if h.n() > MAX_EXACT_VERTICES {
        return Err(Error::TooManyVertices {
            n: h.n(),
            max: MAX_EXACT_VERTICES,
        });
    }
    let mut s = Search {
        h,
        avail: vec![true; h.n()],
        avail_count: h.n(),
        cur: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: node_budget,
        truncated: false,
    };
    s.rec();
    Ok(MaxTilingReport {
        tiling: MTiling { copies: s.best },
        complete: !s.truncated,
        nodes: s.nodes,
    })
}

struct Search<'a> {
    h: &'a Hypergraph3,
    avail: Vec<bool>,
    avail_count: usize,
    cur: Vec<MCopy>,
    best: Vec<MCopy>,
    nodes: u64,
    budget: u64,
    truncated: bool,
}

impl Search<'_> {
    fn rec(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
            return;
        }
        if self.cur.len() + self.avail_count / 8 <= self.best.len() {
            return;
        }
        let v = match (0..self.h.n()).find(|&v| self.avail[v]) {
            Some(v) => v,
            None => {
                // cur > best is guaranteed by the bound above.
                self.best = self.cur.clone();
                return;
            }
        };

        // Enumerate copies lazily: on dense hosts the first descent
        // already matches the bound and the ancestors stop after their
        // first candidate.
        let h = self.h;
        let node_avail = self.avail.clone();
        let mut seen: BTreeSet<[VertexId; 8]> = BTreeSet::new();
        for_each_copy_through(h, v, &node_avail, &mut seen, &mut |copy| {
            for u in copy.vertices() {
                self.avail[u] = false;
            }
            self.avail_count -= 8;
            self.cur.push(copy);
            self.rec();
            self.cur.pop();
            self.avail_count += 8;
            for u in copy.vertices() {
                self.avail[u] = true;
            }
            !self.truncated && self.cur.len() + self.avail_count / 8 > self.best.len()
        });
        if self.truncated || self.cur.len() + self.avail_count / 8 <= self.best.len() {
            return;
        }

        // Leave v permanently uncovered.
        self.avail[v] = false;
        self.avail_count -= 1;
        self.rec();
        self.avail_count += 1;
        self.avail[v] = true;
    }
}

/// Visits embeddable copies whose vertex set contains v, one per set; the
/// callback returns false to stop. Returns false when stopped early.
fn for_each_copy_through(
    h: &Hypergraph3,
    v: VertexId,
    avail: &[bool],
    seen: &mut BTreeSet<[VertexId; 8]>,
    f: &mut impl FnMut(MCopy) -> bool,
) -> bool {
    let n = h.n();
    macro_rules! emit {
        ($verts:expr) => {{
            let verts: [VertexId; 8] = $verts;
            let mut key = verts;
            key.sort_unstable();
            if seen.insert(key) && !f(MCopy::from_window(&verts)) {
                return false;
            }
        }};
    }
    let free = |w: VertexId, taken: &[VertexId]| avail[w] && !taken.contains(&w);

    // v in the y-pair.
    for u in 0..n {
        if u == v || !avail[u] {
            continue;
        }
        let partners: Vec<VertexId> = h
            .neighborhood(&[v, u])
            .into_iter()
            .filter(|&w| avail[w])
            .collect();
        for &w1 in &partners {
            for &w2 in &partners {
                if w1 == w2 {
                    continue;
                }
                for (x1, x2) in h.link(w1) {
                    if !free(x1, &[v, u, w1, w2]) || !free(x2, &[v, u, w1, w2]) {
                        continue;
                    }
                    for (z1, z2) in h.link(w2) {
                        let taken = [v, u, w1, w2, x1, x2];
                        if !free(z1, &taken) || !free(z2, &taken) {
                            continue;
                        }
                        emit!([x1, x2, w1, v, u, w2, z1, z2]);
                    }
                }
            }
        }
    }

    // v as a w-vertex (the reflection covers the other w-role).
    for (y1, y2) in h.link(v) {
        if !avail[y1] || !avail[y2] {
            continue;
        }
        let w2s: Vec<VertexId> = h
            .neighborhood(&[y1, y2])
            .into_iter()
            .filter(|&w| w != v && avail[w])
            .collect();
        for &w2 in &w2s {
            for (x1, x2) in h.link(v) {
                if !free(x1, &[y1, y2, v, w2]) || !free(x2, &[y1, y2, v, w2]) {
                    continue;
                }
                for (z1, z2) in h.link(w2) {
                    let taken = [y1, y2, v, w2, x1, x2];
                    if !free(z1, &taken) || !free(z2, &taken) {
                        continue;
                    }
                    emit!([x1, x2, v, y1, y2, w2, z1, z2]);
                }
            }
        }
    }

    // v in an end pair (again one side suffices by reflection).
    for w1 in 0..n {
        if w1 == v || !avail[w1] {
            continue;
        }
        for (x1, x2) in h.link(w1) {
            if (x1 != v && x2 != v) || !avail[x1] || !avail[x2] {
                continue;
            }
            for (y1, y2) in h.link(w1) {
                if !free(y1, &[x1, x2, w1]) || !free(y2, &[x1, x2, w1]) {
                    continue;
                }
                let w2s: Vec<VertexId> = h
                    .neighborhood(&[y1, y2])
                    .into_iter()
                    .filter(|&w| avail[w] && ![x1, x2, w1, y1, y2].contains(&w))
                    .collect();
                for &w2 in &w2s {
                    for (z1, z2) in h.link(w2) {
                        let taken = [x1, x2, w1, y1, y2, w2];
                        if !free(z1, &taken) || !free(z2, &taken) {
                            continue;
                        }
                        emit!([x1, x2, w1, y1, y2, w2, z1, z2]);
                    }
                }
            }
        }
    }

    true
}

/// Two tiled copies and two uncovered vertices whose common link over the
/// copy-pair grid reaches the crossing bound, packaged as an abstract link
/// instance plus the embedding of its 18 vertices into the host.
#[derive(Debug, Clone)]
pub struct AugmentingStructure {
    pub copy_i: usize,
    pub copy_j: usize,
    pub u: VertexId,
    pub v: VertexId,
    pub instance: L29Instance,
    pub embedding: [VertexId; 18],
}

impl AugmentingStructure {
    /// Maps a tiling on the abstract instance to host vertices.
    pub fn embed_tiling(&self, t: &FractionalTiling) -> Result<FractionalTiling> {
        let mut out = FractionalTiling::new();
        for (edge, weights) in t.support() {
            let vs = edge.vertices().map(|v| self.embedding[v]);
            out.insert(vs, *weights)
                .map_err(|e| Error::InvalidArgument(format!("embedding failed: {}", e)))?;
        }
        Ok(out)
    }
}

/// Scans copy pairs and uncovered vertex pairs for an augmenting
/// structure. The abstract host keeps only the template edges and the
/// common u/v edges, a sub-host of what the embedding provides.
pub fn find_augmenting_structure(
    h: &Hypergraph3,
    tiling: &MTiling,
) -> Option<AugmentingStructure> {
    let uncovered = tiling.uncovered(h.n());
    let copies = &tiling.copies;
    for i in 0..copies.len() {
        for j in i + 1..copies.len() {
            let vi = copies[i].vertices();
            let vj = copies[j].vertices();
            let mask = |x: VertexId| -> u64 {
                let mut m = 0u64;
                for (r1, &a) in vi.iter().enumerate() {
                    for (r2, &b) in vj.iter().enumerate() {
                        if h.contains_edge(x, a, b) {
                            m |= 1 << (r1 * 8 + r2);
                        }
                    }
                }
                m
            };
            let masks: Vec<u64> = uncovered.iter().map(|&x| mask(x)).collect();
            for xi in 0..uncovered.len() {
                for xj in xi + 1..uncovered.len() {
                    let common = masks[xi] & masks[xj];
                    if (common.count_ones() as usize) < MIN_CROSSING {
                        continue;
                    }
                    let crossing: Vec<(MRole, MRole)> = (0..64)
                        .filter(|b| common & (1 << b) != 0)
                        .map(|b| (MRole::from_index(b / 8), MRole::from_index(b % 8)))
                        .collect();
                    let instance = L29Instance::from_crossing(&crossing)
                        .expect("crossing count checked");
                    let mut embedding = [0usize; 18];
                    embedding[..8].copy_from_slice(&vi);
                    embedding[8..16].copy_from_slice(&vj);
                    embedding[16] = uncovered[xi];
                    embedding[17] = uncovered[xj];
                    return Some(AugmentingStructure {
                        copy_i: i,
                        copy_j: j,
                        u: uncovered[xi],
                        v: uncovered[xj],
                        instance,
                        embedding,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_complete, make_m, random_binomial};
    use crate::tiling::l29_search::find_l29_tiling;
    use itertools::Itertools;

    fn embeddable(h: &Hypergraph3, set: &[VertexId]) -> bool {
        // Any role assignment: y-pair, ordered w's, then a split of the
        // remaining four into two link pairs.
        for yp in set.iter().copied().combinations(2) {
            let rest: Vec<VertexId> = set.iter().copied().filter(|v| !yp.contains(v)).collect();
            for wp in rest.iter().copied().permutations(2) {
                if !h.contains_edge(wp[0], yp[0], yp[1]) || !h.contains_edge(yp[0], yp[1], wp[1])
                {
                    continue;
                }
                let four: Vec<VertexId> =
                    rest.iter().copied().filter(|v| !wp.contains(v)).collect();
                for xp in four.iter().copied().combinations(2) {
                    let zp: Vec<VertexId> =
                        four.iter().copied().filter(|v| !xp.contains(v)).collect();
                    if h.contains_edge(xp[0], xp[1], wp[0])
                        && h.contains_edge(wp[0], zp[0], zp[1])
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Exhaustive packing over the embeddable 8-set list.
    fn oracle_max_packing(n: usize, sets: &[Vec<VertexId>]) -> usize {
        fn rec(n: usize, sets: &[Vec<VertexId>], used: &mut Vec<bool>, from: usize) -> usize {
            let mut best = 0;
            for (i, s) in sets.iter().enumerate().skip(from) {
                if s.iter().any(|&v| used[v]) {
                    continue;
                }
                for &v in s {
                    used[v] = true;
                }
                best = best.max(1 + rec(n, sets, used, i + 1));
                for &v in s {
                    used[v] = false;
                }
            }
            best
        }
        rec(n, sets, &mut vec![false; n], 0)
    }

    #[test]
    fn complete_hosts_pack_floor_n_over_8() {
        for n in [16usize, 24, 26] {
            let h = make_complete(n);
            let r = max_m_tiling(&h, 10_000_000).unwrap();
            assert!(r.complete);
            assert_eq!(r.tiling.copies.len(), n / 8);
            r.tiling.validate(&h).unwrap();
        }
    }

    #[test]
    fn branch_and_bound_matches_packing_oracle() {
        for seed in 0..6u64 {
            let p = 0.22 + 0.04 * (seed as f64);
            let h = random_binomial(16, p, 900 + seed).unwrap();
            let sets: Vec<Vec<VertexId>> = (0..16)
                .combinations(8)
                .filter(|s| embeddable(&h, s))
                .collect();
            let want = oracle_max_packing(16, &sets);
            let r = max_m_tiling(&h, 50_000_000).unwrap();
            assert!(r.complete, "seed {}", seed);
            assert_eq!(r.tiling.copies.len(), want, "seed {}", seed);
            r.tiling.validate(&h).unwrap();
        }
    }

    #[test]
    fn budget_returns_best_found() {
        let h = make_complete(24);
        let r = max_m_tiling(&h, 2).unwrap();
        assert!(!r.complete);
        assert!(r.tiling.copies.len() <= 3);
    }

    #[test]
    fn oversized_hosts_are_rejected() {
        let h = make_complete(41);
        assert!(max_m_tiling(&h, 1000).is_err());
    }

    #[test]
    fn augmenting_structure_on_complete_host() {
        let h = make_complete(26);
        let r = max_m_tiling(&h, 10_000_000).unwrap();
        assert_eq!(r.tiling.copies.len(), 3);
        let aug = find_augmenting_structure(&h, &r.tiling).expect("complete host links fully");
        assert_eq!(aug.instance.crossing().len(), 64);
        // Tile the abstract instance and pull the weights back to the host.
        let report = find_l29_tiling(&aug.instance).unwrap();
        let embedded = aug.embed_tiling(&report.tiling).unwrap();
        let stats = embedded.validate(&h).unwrap();
        assert_eq!(stats.total_weight, report.stats.total_weight);
    }

    #[test]
    fn no_structure_without_common_links() {
        // Two disjoint template copies and two isolated extra vertices.
        let m = make_m();
        let mut edges: Vec<_> = m.edges().to_vec();
        for e in m.edges() {
            let [a, b, c] = e.vertices();
            edges.push(crate::Edge3::new(a + 8, b + 8, c + 8).unwrap());
        }
        let h = Hypergraph3::from_edges(18, edges).unwrap();
        let copies = vec![
            MCopy::from_window(&(0..8).collect::<Vec<_>>()),
            MCopy::from_window(&(8..16).collect::<Vec<_>>()),
        ];
        let tiling = MTiling { copies };
        tiling.validate(&h).unwrap();
        assert!(find_augmenting_structure(&h, &tiling).is_none());
    }
}
