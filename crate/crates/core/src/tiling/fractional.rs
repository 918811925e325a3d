//! Fractional template tilings with exact rational weights.
//!
//! A fractional tiling assigns each (vertex, edge) incidence a weight in
//! [0, 1] such that every vertex carries total weight at most 1 and every
//! weighted edge admits a labeling u, v, w of its vertices with
//! h(u) = h(v) >= h(w) >= (2/3) h(u). The quality measures are the total
//! weight and the minimum positive entry h_min. All arithmetic is exact:
//! weights are rationals, never floats.

use crate::hypergraph::{Edge3, Hypergraph3, VertexId};
use num_rational::Ratio;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

pub type Rational = Ratio<i64>;

/// Shorthand rational constructor.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

/// The six weight patterns the template search assigns to edges, with
/// entries in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeightPattern {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
}

impl EdgeWeightPattern {
    pub const ALL: [EdgeWeightPattern; 6] = [
        EdgeWeightPattern::A1,
        EdgeWeightPattern::A2,
        EdgeWeightPattern::A3,
        EdgeWeightPattern::B1,
        EdgeWeightPattern::B2,
        EdgeWeightPattern::B3,
    ];

    /// Weights in descending order; the a-patterns are uniform, the
    /// b-patterns carry one lighter vertex.
    pub fn weights(self) -> [Rational; 3] {
        match self {
            EdgeWeightPattern::A1 => [rat(1, 1); 3],
            EdgeWeightPattern::A2 => [rat(1, 2); 3],
            EdgeWeightPattern::A3 => [rat(1, 3); 3],
            EdgeWeightPattern::B1 => [rat(1, 1), rat(1, 1), rat(2, 3)],
            EdgeWeightPattern::B2 => [rat(1, 2), rat(1, 2), rat(1, 3)],
            EdgeWeightPattern::B3 => [rat(2, 3), rat(2, 3), rat(1, 2)],
        }
    }

    pub fn sum(self) -> Rational {
        self.weights().into_iter().sum()
    }

    /// Classifies a weight triple as one of the six patterns, if it is one.
    pub fn classify(mut ws: [Rational; 3]) -> Option<EdgeWeightPattern> {
        ws.sort();
        ws.reverse();
        EdgeWeightPattern::ALL.into_iter().find(|p| p.weights() == ws)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingViolation {
    #[error("edge {0:?} is not in the host")]
    EdgeNotInHost([VertexId; 3]),
    #[error("edge {0:?} weighted twice")]
    DoubleAssignment([VertexId; 3]),
    #[error("edge {0:?} has an all-zero weight triple")]
    AllZero([VertexId; 3]),
    #[error("edge {0:?} carries a weight outside [0, 1]")]
    WeightOutOfRange([VertexId; 3]),
    #[error("edge {edge:?} admits no labeling with h(u) = h(v) >= h(w) >= (2/3) h(u)")]
    BadLabeling { edge: [VertexId; 3] },
    #[error("vertex {vertex} carries load {load} > 1")]
    Overloaded { vertex: VertexId, load: String },
}

/// Totals of a validated tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingStats {
    pub total_weight: Rational,
    /// Minimum positive entry; None for the empty tiling.
    pub h_min: Option<Rational>,
    pub support_edges: usize,
}

/// A fractional tiling, stored per weighted edge with the weight triple
/// aligned to the edge's sorted vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FractionalTiling {
    entries: BTreeMap<Edge3, [Rational; 3]>,
}

impl FractionalTiling {
    pub fn new() -> Self {
        FractionalTiling::default()
    }

    /// Adds a weighted edge; `weights` aligned to `verts` in the order
    /// given, which need not be sorted.
    pub fn insert(
        &mut self,
        verts: [VertexId; 3],
        weights: [Rational; 3],
    ) -> Result<(), TilingViolation> {
        let edge = match Edge3::new(verts[0], verts[1], verts[2]) {
            Ok(e) => e,
            Err(_) => return Err(TilingViolation::EdgeNotInHost(verts)),
        };
        if weights.iter().all(|w| w.is_zero()) {
            return Err(TilingViolation::AllZero(verts));
        }
        let sorted = edge.vertices();
        let mut aligned = [Rational::zero(); 3];
        for i in 0..3 {
            let pos = sorted.iter().position(|&v| v == verts[i]).unwrap();
            aligned[pos] = weights[i];
        }
        if self.entries.insert(edge, aligned).is_some() {
            return Err(TilingViolation::DoubleAssignment(verts));
        }
        Ok(())
    }

    pub fn support(&self) -> impl Iterator<Item = (&Edge3, &[Rational; 3])> {
        self.entries.iter()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// h(v, e) for one incidence; zero off the support.
    pub fn weight_at(&self, v: VertexId, e: Edge3) -> Rational {
        match self.entries.get(&e) {
            Some(ws) => {
                let sorted = e.vertices();
                match sorted.iter().position(|&u| u == v) {
                    Some(i) => ws[i],
                    None => Rational::zero(),
                }
            }
            None => Rational::zero(),
        }
    }

    /// Total weight at one vertex.
    pub fn vertex_load(&self, v: VertexId) -> Rational {
        let mut load = Rational::zero();
        for (e, ws) in &self.entries {
            let sorted = e.vertices();
            for i in 0..3 {
                if sorted[i] == v {
                    load += ws[i];
                }
            }
        }
        load
    }

    pub fn total_weight(&self) -> Rational {
        self.entries
            .values()
            .map(|ws| ws[0] + ws[1] + ws[2])
            .sum()
    }

    pub fn h_min(&self) -> Option<Rational> {
        self.entries
            .values()
            .flat_map(|ws| ws.iter())
            .filter(|w| !w.is_zero())
            .min()
            .copied()
    }

    /// Full validation against a host: support edges exist, weights lie in
    /// [0, 1], every vertex load is at most 1, and each weighted edge
    /// admits the required labeling.
    pub fn validate(&self, host: &Hypergraph3) -> Result<TilingStats, TilingViolation> {
        let mut loads: BTreeMap<VertexId, Rational> = BTreeMap::new();
        for (e, ws) in &self.entries {
            let vs = e.vertices();
            if !host.contains(*e) {
                return Err(TilingViolation::EdgeNotInHost(vs));
            }
            if ws.iter().any(|w| *w < Rational::zero() || *w > rat(1, 1)) {
                return Err(TilingViolation::WeightOutOfRange(vs));
            }
            if !labeling_ok(ws) {
                return Err(TilingViolation::BadLabeling { edge: vs });
            }
            for i in 0..3 {
                *loads.entry(vs[i]).or_insert_with(Rational::zero) += ws[i];
            }
        }
        for (&vertex, &load) in &loads {
            if load > rat(1, 1) {
                return Err(TilingViolation::Overloaded {
                    vertex,
                    load: format_rational(load),
                });
            }
        }
        Ok(TilingStats {
            total_weight: self.total_weight(),
            h_min: self.h_min(),
            support_edges: self.entries.len(),
        })
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(e, ws)| {
                serde_json::json!({
                    "edge": e.vertices(),
                    "weights": ws.map(format_rational),
                })
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("tiling serialization cannot fail")
    }

    pub fn from_json(s: &str) -> crate::error::Result<Self> {
        #[derive(serde::Deserialize)]
        struct Entry {
            edge: [usize; 3],
            weights: [String; 3],
        }
        let entries: Vec<Entry> = serde_json::from_str(s)?;
        let mut t = FractionalTiling::new();
        for e in entries {
            let mut ws = [Rational::zero(); 3];
            for i in 0..3 {
                ws[i] = parse_rational(&e.weights[i]).ok_or_else(|| {
                    crate::error::Error::InvalidArgument(format!(
                        "bad rational {:?}",
                        e.weights[i]
                    ))
                })?;
            }
            t.insert(e.edge, ws).map_err(|v| {
                crate::error::Error::InvalidArgument(format!("bad tiling entry: {}", v))
            })?;
        }
        Ok(t)
    }
}

/// The labeling condition: some vertex w is the light one, the other two
/// are equal, at least h(w), and h(w) >= (2/3) of them.
fn labeling_ok(ws: &[Rational; 3]) -> bool {
    for light in 0..3 {
        let (u, v) = match light {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        if ws[u] == ws[v] && ws[u] >= ws[light] && ws[light] * 3 >= ws[u] * 2 {
            return true;
        }
    }
    false
}

/// The canonical fractional tiling of the template M itself: weight 8 with
/// h_min 1/3, every vertex load exactly 1. Returns the template host and
/// the tiling.
pub fn canonical_m_weights() -> (Hypergraph3, FractionalTiling) {
    let m = crate::constructions::make_m();
    let mut t = FractionalTiling::new();
    // Roles by vertex: 0 x1, 1 x2, 2 w1, 3 y1, 4 y2, 5 w2, 6 z1, 7 z2.
    t.insert([0, 1, 2], [rat(1, 1), rat(1, 1), rat(2, 3)]).unwrap();
    t.insert([2, 3, 4], [rat(1, 3), rat(1, 2), rat(1, 2)]).unwrap();
    t.insert([3, 4, 5], [rat(1, 2), rat(1, 2), rat(1, 3)]).unwrap();
    t.insert([5, 6, 7], [rat(2, 3), rat(1, 1), rat(1, 1)]).unwrap();
    (m, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_complete;

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(rat(2, 3)), "2/3");
        assert_eq!(format_rational(rat(4, 2)), "2");
        assert_eq!(parse_rational("49/3"), Some(rat(49, 3)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn pattern_sums() {
        use EdgeWeightPattern::*;
        assert_eq!(A1.sum(), rat(3, 1));
        assert_eq!(A2.sum(), rat(3, 2));
        assert_eq!(A3.sum(), rat(1, 1));
        assert_eq!(B1.sum(), rat(8, 3));
        assert_eq!(B2.sum(), rat(4, 3));
        assert_eq!(B3.sum(), rat(11, 6));
        assert_eq!(
            EdgeWeightPattern::classify([rat(2, 3), rat(1, 2), rat(2, 3)]),
            Some(B3)
        );
        assert_eq!(EdgeWeightPattern::classify([rat(1, 1); 3]), Some(A1));
        assert_eq!(EdgeWeightPattern::classify([rat(1, 4); 3]), None);
    }

    #[test]
    fn every_pattern_is_a_legal_labeling() {
        for p in EdgeWeightPattern::ALL {
            assert!(labeling_ok(&p.weights()), "{:?}", p);
        }
        // Two equal but the light one below two thirds.
        assert!(!labeling_ok(&[rat(1, 1), rat(1, 1), rat(1, 2)]));
        // No equal pair at the top.
        assert!(!labeling_ok(&[rat(1, 1), rat(2, 3), rat(1, 2)]));
    }

    #[test]
    fn canonical_m_totals() {
        let (m, t) = canonical_m_weights();
        let stats = t.validate(&m).unwrap();
        assert_eq!(stats.total_weight, rat(8, 1));
        assert_eq!(stats.h_min, Some(rat(1, 3)));
        assert_eq!(stats.support_edges, 4);
        for v in 0..8 {
            assert_eq!(t.vertex_load(v), rat(1, 1), "vertex {}", v);
        }
    }

    #[test]
    fn validation_catches_violations() {
        let host = make_complete(5);
        let mut t = FractionalTiling::new();
        t.insert([0, 1, 2], [rat(1, 1), rat(1, 1), rat(2, 3)]).unwrap();
        t.insert([0, 3, 4], [rat(1, 1), rat(1, 1), rat(2, 3)]).unwrap();
        // Vertex 0 carries 2.
        assert!(matches!(
            t.validate(&host),
            Err(TilingViolation::Overloaded { vertex: 0, .. })
        ));

        let mut bad = FractionalTiling::new();
        bad.insert([0, 1, 2], [rat(1, 1), rat(1, 2), rat(1, 4)]).unwrap();
        assert_eq!(
            bad.validate(&host),
            Err(TilingViolation::BadLabeling { edge: [0, 1, 2] })
        );

        let mut off_host = FractionalTiling::new();
        off_host.insert([0, 1, 2], [rat(1, 1); 3]).unwrap();
        let empty = Hypergraph3::new(5);
        assert_eq!(
            off_host.validate(&empty),
            Err(TilingViolation::EdgeNotInHost([0, 1, 2]))
        );

        let mut t2 = FractionalTiling::new();
        assert_eq!(
            t2.insert([0, 1, 1], [rat(1, 1); 3]),
            Err(TilingViolation::EdgeNotInHost([0, 1, 1]))
        );
        assert_eq!(
            t2.insert([0, 1, 2], [Rational::zero(); 3]),
            Err(TilingViolation::AllZero([0, 1, 2]))
        );
        t2.insert([2, 0, 1], [rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(
            t2.insert([0, 1, 2], [rat(1, 1); 3]),
            Err(TilingViolation::DoubleAssignment([0, 1, 2]))
        );
    }

    #[test]
    fn weights_align_to_given_vertex_order() {
        let mut t = FractionalTiling::new();
        t.insert([5, 2, 0], [rat(1, 1), rat(1, 2), rat(1, 3)]).unwrap();
        let e = Edge3::new(0, 2, 5).unwrap();
        assert_eq!(t.weight_at(5, e), rat(1, 1));
        assert_eq!(t.weight_at(2, e), rat(1, 2));
        assert_eq!(t.weight_at(0, e), rat(1, 3));
        assert_eq!(t.vertex_load(5), rat(1, 1));
    }

    #[test]
    fn json_round_trip() {
        let (_, t) = canonical_m_weights();
        let s = t.to_json();
        let back = FractionalTiling::from_json(&s).unwrap();
        assert_eq!(t, back);
    }
}
