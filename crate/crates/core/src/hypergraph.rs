//! 3-uniform hypergraphs on a dense vertex range [0, n).
//!
//! Edges are unordered triples of distinct vertices, stored in canonical
//! sorted order. Alongside the edge list the structure keeps a vertex
//! degree table and an n-by-n pair degree table, so deg(v), deg(u,v) and
//! the minimum degrees are O(1) after construction. Pair degrees are what
//! most of the toolkit runs on: a loose structure is grown through pairs
//! of vertices that lie in a common edge.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense vertex label in [0, n).
pub type VertexId = usize;

/// An unordered edge {a, b, c} with a < b < c.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge3([VertexId; 3]);

impl Edge3 {
    /// Canonicalises the triple; rejects repeated vertices.
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::DegenerateEdge([a, b, c]));
        }
        Ok(Edge3(v))
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// The two vertices other than `v`, which must lie in the edge.
    pub fn others(&self, v: VertexId) -> (VertexId, VertexId) {
        let [a, b, c] = self.0;
        if v == a {
            (b, c)
        } else if v == b {
            (a, c)
        } else {
            debug_assert_eq!(v, c);
            (a, b)
        }
    }

    pub fn max_vertex(&self) -> VertexId {
        self.0[2]
    }
}

impl std::fmt::Debug for Edge3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// A 3-uniform hypergraph with O(1) degree and pair degree lookups.
#[derive(Clone)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<Edge3>,
    deg: Vec<u32>,
    pair_deg: Vec<u32>,
}

impl Hypergraph3 {
    pub fn new(n: usize) -> Self {
        Hypergraph3 {
            n,
            edges: Vec::new(),
            deg: vec![0; n],
            pair_deg: vec![0; n * n],
        }
    }

    pub fn from_edges<I>(n: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge3>,
    {
        let mut h = Hypergraph3::new(n);
        for e in iter {
            if e.max_vertex() >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: e.max_vertex(),
                    n,
                });
            }
            if !h.add_edge(e) {
                return Err(Error::DuplicateEdge(e.vertices()));
            }
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge3] {
        &self.edges
    }

    /// Inserts an edge, keeping the list sorted. Returns false on duplicates.
    /// Panics if a vertex is out of range; use `from_edges` for untrusted input.
    pub fn add_edge(&mut self, e: Edge3) -> bool {
        assert!(e.max_vertex() < self.n, "vertex out of range");
        match self.edges.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.edges.insert(pos, e);
                let [a, b, c] = e.vertices();
                self.deg[a] += 1;
                self.deg[b] += 1;
                self.deg[c] += 1;
                for (u, v) in [(a, b), (a, c), (b, c)] {
                    self.pair_deg[u * self.n + v] += 1;
                    self.pair_deg[v * self.n + u] += 1;
                }
                true
            }
        }
    }

    pub fn contains_edge(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        match Edge3::new(a, b, c) {
            Ok(e) => self.contains(e),
            Err(_) => false,
        }
    }

    pub fn contains(&self, e: Edge3) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.deg
    }

    /// Number of edges containing both u and v.
    pub fn pair_degree(&self, u: VertexId, v: VertexId) -> u32 {
        self.pair_deg[u * self.n + v]
    }

    /// Minimum vertex degree with a witness vertex (lowest id on ties).
    pub fn min_degree(&self) -> (u32, VertexId) {
        let mut best = (u32::MAX, 0);
        for v in 0..self.n {
            if self.deg[v] < best.0 {
                best = (self.deg[v], v);
            }
        }
        if self.n == 0 {
            (0, 0)
        } else {
            best
        }
    }

    /// Minimum pair degree over all unordered vertex pairs, with a witness.
    pub fn min_pair_degree(&self) -> (u32, (VertexId, VertexId)) {
        let mut best = (u32::MAX, (0, 0));
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let d = self.pair_deg[u * self.n + v];
                if d < best.0 {
                    best = (d, (u, v));
                }
            }
        }
        if self.n < 2 {
            (0, (0, 0))
        } else {
            best
        }
    }

    /// Neighbourhood of a set of one or two vertices: all vertices that
    /// complete it to (part of) an edge. Sorted ascending.
    pub fn neighborhood(&self, set: &[VertexId]) -> Vec<VertexId> {
        match *set {
            [v] => {
                let mut seen = vec![false; self.n];
                for e in &self.edges {
                    if e.contains(v) {
                        let (a, b) = e.others(v);
                        seen[a] = true;
                        seen[b] = true;
                    }
                }
                (0..self.n).filter(|&u| seen[u]).collect()
            }
            [u, v] => self
                .edges
                .iter()
                .filter(|e| e.contains(u) && e.contains(v))
                .map(|e| {
                    let [a, b, c] = e.vertices();
                    a + b + c - u - v
                })
                .collect(),
            _ => panic!("neighborhood is defined for sets of size 1 or 2"),
        }
    }

    /// Link of v: the pairs {a, b} with {v, a, b} an edge, sorted.
    pub fn link(&self, v: VertexId) -> Vec<(VertexId, VertexId)> {
        self.edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.others(v))
            .collect()
    }

    /// Subhypergraph induced on `set`, relabelled to [0, |set|). Returns the
    /// legend mapping new labels back to old ones. `set` must be strictly
    /// increasing.
    pub fn induced(&self, set: &[VertexId]) -> (Hypergraph3, Vec<VertexId>) {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]), "set must be sorted");
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in set.iter().enumerate() {
            back[old] = new;
        }
        let mut h = Hypergraph3::new(set.len());
        for e in &self.edges {
            let [a, b, c] = e.vertices();
            if back[a] != usize::MAX && back[b] != usize::MAX && back[c] != usize::MAX {
                h.add_edge(Edge3::new(back[a], back[b], back[c]).unwrap());
            }
        }
        (h, set.to_vec())
    }

    /// Induced subhypergraph on the complement of `removed` (sorted legend).
    pub fn without_vertices(&self, removed: &[VertexId]) -> (Hypergraph3, Vec<VertexId>) {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<VertexId> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Pair neighbourhood bitmasks for mask-based search, n <= 128 only.
    pub fn pair_masks(&self) -> Result<PairMasks> {
        if self.n > 128 {
            return Err(Error::TooManyVertices { n: self.n, max: 128 });
        }
        let n = self.n;
        let mut pair = vec![0u128; n * n];
        let mut nbr = vec![0u128; n];
        for e in &self.edges {
            let [a, b, c] = e.vertices();
            pair[a * n + b] |= 1 << c;
            pair[b * n + a] |= 1 << c;
            pair[a * n + c] |= 1 << b;
            pair[c * n + a] |= 1 << b;
            pair[b * n + c] |= 1 << a;
            pair[c * n + b] |= 1 << a;
            nbr[a] |= (1 << b) | (1 << c);
            nbr[b] |= (1 << a) | (1 << c);
            nbr[c] |= (1 << a) | (1 << b);
        }
        Ok(PairMasks { n, pair, nbr })
    }
}

impl std::fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hypergraph3(n={}, m={})", self.n, self.edges.len())
    }
}

/// Bitmask view of a hypergraph for n <= 128: for each ordered pair (u, v),
/// the set of w with {u, v, w} an edge, as a u128.
pub struct PairMasks {
    n: usize,
    pair: Vec<u128>,
    nbr: Vec<u128>,
}

impl PairMasks {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmask of w such that {u, v, w} is an edge.
    #[inline]
    pub fn third(&self, u: VertexId, v: VertexId) -> u128 {
        self.pair[u * self.n + v]
    }

    /// Bitmask of v sharing at least one edge with u.
    #[inline]
    pub fn partners(&self, u: VertexId) -> u128 {
        self.nbr[u]
    }
}

/// Iterates the set bits of a mask as vertex ids, ascending.
pub fn bits(mut mask: u128) -> impl Iterator<Item = VertexId> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// C(n, 2) as u64.
pub fn choose2(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

/// C(n, 3) as u64.
pub fn choose3(n: usize) -> u64 {
    if n < 3 {
        0
    } else {
        (n as u64) * (n as u64 - 1) * (n as u64 - 2) / 6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Hypergraph3 {
        let edges = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
        Hypergraph3::from_edges(4, edges.map(|(a, b, c)| Edge3::new(a, b, c).unwrap())).unwrap()
    }

    #[test]
    fn edge_canonicalisation() {
        let e = Edge3::new(5, 2, 7).unwrap();
        assert_eq!(e.vertices(), [2, 5, 7]);
        assert!(Edge3::new(1, 1, 2).is_err());
        assert_eq!(e.others(5), (2, 7));
    }

    #[test]
    fn degrees_and_pair_degrees() {
        let h = k4();
        assert_eq!(h.edge_count(), 4);
        for v in 0..4 {
            assert_eq!(h.degree(v), 3);
        }
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert_eq!(h.pair_degree(u, v), 2);
            }
        }
        assert_eq!(h.min_degree(), (3, 0));
        assert_eq!(h.min_pair_degree(), (2, (0, 1)));
    }

    #[test]
    fn handshake() {
        let h = k4();
        let sum: u64 = h.degrees().iter().map(|&d| d as u64).sum();
        assert_eq!(sum, 3 * h.edge_count() as u64);
        let mut pair_sum = 0u64;
        for u in 0..h.n() {
            for v in (u + 1)..h.n() {
                pair_sum += h.pair_degree(u, v) as u64;
            }
        }
        assert_eq!(pair_sum, 3 * h.edge_count() as u64);
    }

    #[test]
    fn duplicate_edges_rejected() {
        let mut h = Hypergraph3::new(5);
        assert!(h.add_edge(Edge3::new(0, 1, 2).unwrap()));
        assert!(!h.add_edge(Edge3::new(2, 1, 0).unwrap()));
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn neighborhoods() {
        let h = k4();
        assert_eq!(h.neighborhood(&[0]), vec![1, 2, 3]);
        assert_eq!(h.neighborhood(&[0, 1]), vec![2, 3]);
        assert_eq!(h.link(3), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn induced_relabels_densely() {
        let h = k4();
        let (sub, legend) = h.induced(&[1, 2, 3]);
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(legend, vec![1, 2, 3]);
        assert!(sub.contains_edge(0, 1, 2));

        let (whole, _) = h.induced(&[0, 1, 2, 3]);
        assert_eq!(whole.edge_count(), h.edge_count());
    }

    #[test]
    fn masks_match_tables() {
        let h = k4();
        let pm = h.pair_masks().unwrap();
        assert_eq!(pm.third(0, 1), (1 << 2) | (1 << 3));
        assert_eq!(pm.partners(2), (1 << 0) | (1 << 1) | (1 << 3));
        assert_eq!(bits(pm.third(0, 1)).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn binomials() {
        assert_eq!(choose2(12), 66);
        assert_eq!(choose3(12), 220);
        assert_eq!(choose3(2), 0);
    }
}
