//! Absorbing 7-tuples: loose 7-vertex paths that can swallow two extra
//! vertices in place.
//!
//! A tuple (v1, ..., v7) spans the loose path with edges v1v2v3, v3v4v5,
//! v5v6v7. It absorbs a pair (x, y) when v2xv4 and v4yv6 are also edges:
//! the 7-window then rewires to the 9-window v1, v3, v2, x, v4, y, v6,
//! v5, v7 — same ends, same edge set plus the two absorption edges.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use crate::hypergraph::{Hypergraph3, VertexId};
use crate::paths::validate_loose_path;
use crate::seeds;

/// The three loose path edges of the tuple exist.
pub fn is_absorber_path(h: &Hypergraph3, t: &[VertexId; 7]) -> bool {
    validate_loose_path(h, t).is_ok()
}

pub fn can_absorb(h: &Hypergraph3, t: &[VertexId; 7], x: VertexId, y: VertexId) -> bool {
    if x == y || t.contains(&x) || t.contains(&y) {
        return false;
    }
    is_absorber_path(h, t)
        && h.contains_edge(t[1], x, t[3])
        && h.contains_edge(t[3], y, t[5])
}

/// The 9-window replacing the tuple's 7-window once (x, y) is absorbed.
pub fn rewire(t: &[VertexId; 7], x: VertexId, y: VertexId) -> [VertexId; 9] {
    [t[0], t[2], t[1], x, t[3], y, t[5], t[4], t[6]]
}

/// Exact number of ordered absorbing tuples for the pair (x, y).
pub fn count_absorbing_tuples(h: &Hypergraph3, x: VertexId, y: VertexId) -> u64 {
    let n = h.n();
    let free = |v: VertexId, used: &[VertexId]| v != x && v != y && !used.contains(&v);
    let mut count = 0u64;
    // Most constrained first: v4 sits in both absorption edges, then each
    // later choice is checked against an edge as soon as one applies.
    for v4 in 0..n {
        if !free(v4, &[]) {
            continue;
        }
        for v2 in 0..n {
            if !free(v2, &[v4]) || !h.contains_edge(v2, x, v4) {
                continue;
            }
            for v6 in 0..n {
                if !free(v6, &[v4, v2]) || !h.contains_edge(v4, y, v6) {
                    continue;
                }
                for v3 in 0..n {
                    if !free(v3, &[v4, v2, v6]) {
                        continue;
                    }
                    for v1 in 0..n {
                        if !free(v1, &[v4, v2, v6, v3]) || !h.contains_edge(v1, v2, v3)
                        {
                            continue;
                        }
                        for v5 in 0..n {
                            if !free(v5, &[v4, v2, v6, v3, v1])
                                || !h.contains_edge(v3, v4, v5)
                            {
                                continue;
                            }
                            count += (0..n)
                                .filter(|&v7| {
                                    free(v7, &[v4, v2, v6, v3, v1, v5])
                                        && h.contains_edge(v5, v6, v7)
                                })
                                .count() as u64;
                        }
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone)]
pub struct AbsorbingEstimate {
    pub hits: u64,
    pub trials: u64,
    /// hits / trials scaled by the number of ordered 7-tuples avoiding
    /// the pair.
    pub estimate: f64,
}

/// Monte Carlo estimate of `count_absorbing_tuples` for larger hosts.
pub fn sample_absorbing_tuples(
    h: &Hypergraph3,
    x: VertexId,
    y: VertexId,
    trials: u64,
    seed: u64,
) -> AbsorbingEstimate {
    let pool: Vec<VertexId> = (0..h.n()).filter(|&v| v != x && v != y).collect();
    let mut rng = seeds::rng(seed);
    let mut hits = 0u64;
    let mut scratch = pool.clone();
    for _ in 0..trials {
        scratch.shuffle(&mut rng);
        let t: [VertexId; 7] = scratch[..7].try_into().unwrap();
        if can_absorb(h, &t, x, y) {
            hits += 1;
        }
    }
    let mut space = 1.0;
    for i in 0..7 {
        space *= (pool.len() - i) as f64;
    }
    AbsorbingEstimate {
        hits,
        trials,
        estimate: hits as f64 / trials as f64 * space,
    }
}

/// Up to `k` vertex-disjoint absorber paths, greedily from a seeded
/// shuffle.
pub fn absorber_family(h: &Hypergraph3, k: usize, seed: u64) -> Vec<[VertexId; 7]> {
    let mut order: Vec<VertexId> = (0..h.n()).collect();
    order.shuffle(&mut seeds::rng(seed));
    let mut used = vec![false; h.n()];
    let mut family = Vec::new();
    while family.len() < k {
        match find_tuple(h, &order, &used) {
            Some(t) => {
                for &v in &t {
                    used[v] = true;
                }
                family.push(t);
            }
            None => break,
        }
    }
    family
}

fn find_tuple(h: &Hypergraph3, order: &[VertexId], used: &[bool]) -> Option<[VertexId; 7]> {
    let free: Vec<VertexId> = order.iter().copied().filter(|&v| !used[v]).collect();
    for &v1 in &free {
        for &v2 in &free {
            if v2 == v1 {
                continue;
            }
            for &v3 in &free {
                if [v1, v2].contains(&v3) || !h.contains_edge(v1, v2, v3) {
                    continue;
                }
                for &v4 in &free {
                    if [v1, v2, v3].contains(&v4) {
                        continue;
                    }
                    for &v5 in &free {
                        if [v1, v2, v3, v4].contains(&v5) || !h.contains_edge(v3, v4, v5) {
                            continue;
                        }
                        for &v6 in &free {
                            if [v1, v2, v3, v4, v5].contains(&v6) {
                                continue;
                            }
                            for &v7 in &free {
                                if [v1, v2, v3, v4, v5, v6].contains(&v7) {
                                    continue;
                                }
                                if h.contains_edge(v5, v6, v7) {
                                    return Some([v1, v2, v3, v4, v5, v6, v7]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct AbsorbOutcome {
    pub order: Vec<VertexId>,
    /// (family index, absorbed pair) per leftover pair.
    pub assignments: Vec<(usize, (VertexId, VertexId))>,
}

/// Splices the leftover vertices into the cycle through the absorber
/// family: leftovers are paired consecutively in sorted order, pairs are
/// matched to absorbers by backtracking over both orientations, and each
/// matched 7-window rewires to its 9-window.
pub fn absorb(
    h: &Hypergraph3,
    order: &[VertexId],
    family: &[[VertexId; 7]],
    leftovers: &BTreeSet<VertexId>,
) -> Option<AbsorbOutcome> {
    if leftovers.len() % 2 != 0 {
        return None;
    }
    let sorted: Vec<VertexId> = leftovers.iter().copied().collect();
    let pairs: Vec<(VertexId, VertexId)> =
        sorted.chunks(2).map(|c| (c[0], c[1])).collect();
    if pairs.len() > family.len() {
        return None;
    }
    let mut assignment: Vec<Option<(usize, (VertexId, VertexId))>> = vec![None; pairs.len()];
    let mut taken = vec![false; family.len()];
    if !assign(h, family, &pairs, 0, &mut taken, &mut assignment) {
        return None;
    }
    let assignments: Vec<(usize, (VertexId, VertexId))> =
        assignment.into_iter().map(|a| a.unwrap()).collect();

    // Rebuild the cyclic order, window by window.
    let mut new_order = order.to_vec();
    for &(fi, (x, y)) in &assignments {
        let t = &family[fi];
        let start = find_window(&new_order, t)?;
        let rewired = rewire(t, x, y);
        new_order.splice(start..start + 7, rewired);
    }
    Some(AbsorbOutcome {
        order: new_order,
        assignments,
    })
}

fn assign(
    h: &Hypergraph3,
    family: &[[VertexId; 7]],
    pairs: &[(VertexId, VertexId)],
    i: usize,
    taken: &mut Vec<bool>,
    out: &mut Vec<Option<(usize, (VertexId, VertexId))>>,
) -> bool {
    if i == pairs.len() {
        return true;
    }
    let (a, b) = pairs[i];
    for fi in 0..family.len() {
        if taken[fi] {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            if can_absorb(h, &family[fi], x, y) {
                taken[fi] = true;
                out[i] = Some((fi, (x, y)));
                if assign(h, family, pairs, i + 1, taken, out) {
                    return true;
                }
                taken[fi] = false;
                out[i] = None;
            }
        }
    }
    false
}

fn find_window(order: &[VertexId], t: &[VertexId; 7]) -> Option<usize> {
    (0..order.len().saturating_sub(6)).find(|&i| order[i..i + 7] == t[..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_complete;
    use crate::paths::validate_loose_cycle;

    #[test]
    fn complete_host_tuple_absorbs_any_pair() {
        let h = make_complete(12);
        let t = [0, 1, 2, 3, 4, 5, 6];
        assert!(can_absorb(&h, &t, 10, 11));
        assert!(!can_absorb(&h, &t, 3, 11), "pair may not touch the tuple");
        let w = rewire(&t, 10, 11);
        assert_eq!(w, [0, 2, 1, 10, 3, 11, 5, 4, 6]);
        validate_loose_path(&h, &w).unwrap();
        assert_eq!((w[0], w[8]), (t[0], t[6]));
    }

    #[test]
    fn complete_count_is_the_falling_factorial() {
        // Every ordered choice of 7 distinct vertices among the other 10
        // works: 10 * 9 * 8 * 7 * 6 * 5 * 4.
        let h = make_complete(12);
        assert_eq!(count_absorbing_tuples(&h, 10, 11), 604_800);
    }

    #[test]
    fn count_matches_brute_force_on_random_hosts() {
        use itertools::Itertools;
        for seed in 0..3 {
            let h =
                crate::constructions::random_binomial(10, 0.55, 100 + seed).unwrap();
            let (x, y) = (0, 1);
            let pool: Vec<VertexId> = (2..10).collect();
            let brute = pool
                .iter()
                .copied()
                .permutations(7)
                .filter(|p| {
                    let t: [VertexId; 7] = p.as_slice().try_into().unwrap();
                    can_absorb(&h, &t, x, y)
                })
                .count() as u64;
            assert_eq!(count_absorbing_tuples(&h, x, y), brute, "seed {}", seed);
        }
    }

    #[test]
    fn sampled_estimate_tracks_exact() {
        let h = make_complete(12);
        let est = sample_absorbing_tuples(&h, 10, 11, 500, 9);
        assert_eq!(est.hits, 500);
        assert!((est.estimate - 604_800.0).abs() < 1.0);
    }

    #[test]
    fn family_is_disjoint_absorber_paths() {
        let h = make_complete(40);
        let family = absorber_family(&h, 3, 17);
        assert_eq!(family.len(), 3);
        let mut seen = BTreeSet::new();
        for t in &family {
            assert!(is_absorber_path(&h, t));
            for &v in t {
                assert!(seen.insert(v));
            }
        }
    }

    #[test]
    fn absorb_splices_pairs_into_a_cycle() {
        let h = make_complete(16);
        // Loose cycle on 12 of the 16 vertices containing the absorber
        // tuple 0..7 as a window.
        let order: Vec<VertexId> = (0..12).collect();
        validate_loose_cycle(&h, &order, false).unwrap();
        let family = [[0, 1, 2, 3, 4, 5, 6]];
        let leftovers: BTreeSet<VertexId> = [12, 13].into_iter().collect();
        let out = absorb(&h, &order, &family, &leftovers).unwrap();
        assert_eq!(out.order.len(), 14);
        validate_loose_cycle(&h, &out.order, false).unwrap();
        assert_eq!(out.assignments, vec![(0, (12, 13))]);
    }

    #[test]
    fn absorb_fails_when_capacity_exceeded() {
        let h = make_complete(16);
        let order: Vec<VertexId> = (0..12).collect();
        let family = [[0, 1, 2, 3, 4, 5, 6]];
        let leftovers: BTreeSet<VertexId> = [12, 13, 14, 15].into_iter().collect();
        assert!(absorb(&h, &order, &family, &leftovers).is_none());
    }
}
