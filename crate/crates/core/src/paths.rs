//! Loose paths, loose cycles and tight paths, with validators.
//!
//! A loose path is a vertex sequence (v1, ..., vt) of odd length t >= 3
//! whose edges are (v1,v2,v3), (v3,v4,v5), ...: consecutive edges overlap
//! in exactly one vertex, the junctions at odd positions. A loose cycle
//! closes the sequence cyclically and has even length t >= 6 with t/2
//! edges. A tight path takes every consecutive triple as an edge. The
//! validators report the first violation; the wrapper types can only be
//! built through them.

use crate::hypergraph::{Hypergraph3, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathViolation {
    #[error("sequence of length {0} is too short")]
    TooShort(usize),
    #[error("loose sequence length {0} has wrong parity")]
    WrongParity(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("vertex {0} repeats")]
    Repeated(VertexId),
    #[error("implied edge #{index} {edge:?} is not in the hypergraph")]
    MissingEdge { index: usize, edge: [VertexId; 3] },
    #[error("cycle length {got} does not span all {n} vertices")]
    NotHamilton { got: usize, n: usize },
}

fn check_distinct(h: &Hypergraph3, order: &[VertexId]) -> Result<(), PathViolation> {
    let mut seen = vec![false; h.n()];
    for &v in order {
        if v >= h.n() {
            return Err(PathViolation::OutOfRange(v));
        }
        if seen[v] {
            return Err(PathViolation::Repeated(v));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Checks that `order` traces a loose path in `h`.
pub fn validate_loose_path(h: &Hypergraph3, order: &[VertexId]) -> Result<(), PathViolation> {
    if order.len() < 3 {
        return Err(PathViolation::TooShort(order.len()));
    }
    if order.len() % 2 == 0 {
        return Err(PathViolation::WrongParity(order.len()));
    }
    check_distinct(h, order)?;
    for (index, w) in order.windows(3).step_by(2).enumerate() {
        if !h.contains_edge(w[0], w[1], w[2]) {
            return Err(PathViolation::MissingEdge {
                index,
                edge: [w[0], w[1], w[2]],
            });
        }
    }
    Ok(())
}

/// Checks that `order` traces a loose cycle in `h`; with `hamilton` it must
/// also span every vertex.
pub fn validate_loose_cycle(
    h: &Hypergraph3,
    order: &[VertexId],
    hamilton: bool,
) -> Result<(), PathViolation> {
    if order.len() < 6 {
        return Err(PathViolation::TooShort(order.len()));
    }
    if order.len() % 2 != 0 {
        return Err(PathViolation::WrongParity(order.len()));
    }
    check_distinct(h, order)?;
    let t = order.len();
    for i in (0..t).step_by(2) {
        let e = [order[i], order[(i + 1) % t], order[(i + 2) % t]];
        if !h.contains_edge(e[0], e[1], e[2]) {
            return Err(PathViolation::MissingEdge { index: i / 2, edge: e });
        }
    }
    if hamilton && order.len() != h.n() {
        return Err(PathViolation::NotHamilton {
            got: order.len(),
            n: h.n(),
        });
    }
    Ok(())
}

/// Checks that `order` traces a tight path: every consecutive triple is an edge.
pub fn validate_tight_path(h: &Hypergraph3, order: &[VertexId]) -> Result<(), PathViolation> {
    if order.len() < 3 {
        return Err(PathViolation::TooShort(order.len()));
    }
    check_distinct(h, order)?;
    for (index, w) in order.windows(3).enumerate() {
        if !h.contains_edge(w[0], w[1], w[2]) {
            return Err(PathViolation::MissingEdge {
                index,
                edge: [w[0], w[1], w[2]],
            });
        }
    }
    Ok(())
}

/// A validated loose path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoosePath {
    order: Vec<VertexId>,
}

impl LoosePath {
    pub fn new(h: &Hypergraph3, order: Vec<VertexId>) -> Result<Self, PathViolation> {
        validate_loose_path(h, &order)?;
        Ok(LoosePath { order })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.order[0], *self.order.last().unwrap())
    }

    pub fn edge_count(&self) -> usize {
        (self.order.len() - 1) / 2
    }

    pub fn implied_edges(&self) -> impl Iterator<Item = [VertexId; 3]> + '_ {
        self.order.windows(3).step_by(2).map(|w| [w[0], w[1], w[2]])
    }
}

/// A validated loose cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LooseCycle {
    order: Vec<VertexId>,
}

impl LooseCycle {
    pub fn new(h: &Hypergraph3, order: Vec<VertexId>) -> Result<Self, PathViolation> {
        validate_loose_cycle(h, &order, false)?;
        Ok(LooseCycle { order })
    }

    /// A cycle that must span all of `h`.
    pub fn hamilton(h: &Hypergraph3, order: Vec<VertexId>) -> Result<Self, PathViolation> {
        validate_loose_cycle(h, &order, true)?;
        Ok(LooseCycle { order })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_count(&self) -> usize {
        self.order.len() / 2
    }

    pub fn implied_edges(&self) -> Vec<[VertexId; 3]> {
        let t = self.order.len();
        (0..t)
            .step_by(2)
            .map(|i| [self.order[i], self.order[(i + 1) % t], self.order[(i + 2) % t]])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Edge3;

    fn path_host() -> Hypergraph3 {
        // Loose path 0..=6 plus a closing edge turning 0..=5 into a cycle.
        let edges = [(0, 1, 2), (2, 3, 4), (4, 5, 6), (4, 5, 0)];
        Hypergraph3::from_edges(7, edges.map(|(a, b, c)| Edge3::new(a, b, c).unwrap())).unwrap()
    }

    #[test]
    fn loose_path_accepts_and_rejects() {
        let h = path_host();
        assert!(validate_loose_path(&h, &[0, 1, 2, 3, 4, 5, 6]).is_ok());
        assert!(validate_loose_path(&h, &[0, 1, 2]).is_ok());
        assert_eq!(
            validate_loose_path(&h, &[0, 1, 2, 3]),
            Err(PathViolation::WrongParity(4))
        );
        assert_eq!(
            validate_loose_path(&h, &[0, 1]),
            Err(PathViolation::TooShort(2))
        );
        assert_eq!(
            validate_loose_path(&h, &[0, 1, 2, 3, 0]),
            Err(PathViolation::Repeated(0))
        );
        // Vertex order inside one edge does not matter; {0,2,1} is still an
        // edge, so the first violation is the second window.
        assert_eq!(
            validate_loose_path(&h, &[0, 2, 1, 3, 4]),
            Err(PathViolation::MissingEdge {
                index: 1,
                edge: [1, 3, 4]
            })
        );
    }

    #[test]
    fn junctions_share_consecutive_edges() {
        let h = path_host();
        let p = LoosePath::new(&h, vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(p.ends(), (0, 6));
        assert_eq!(p.edge_count(), 3);
        let edges: Vec<_> = p.implied_edges().collect();
        assert_eq!(edges[0], [0, 1, 2]);
        assert_eq!(edges[1], [2, 3, 4]);
        // Consecutive implied edges overlap in exactly the junction.
        assert_eq!(edges[0][2], edges[1][0]);
    }

    #[test]
    fn loose_cycle_wraps() {
        let h = path_host();
        let c = LooseCycle::new(&h, vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.edge_count(), 3);
        assert_eq!(c.implied_edges()[2], [4, 5, 0]);
        // Same cycle is not Hamilton in a 7-vertex host.
        assert_eq!(
            validate_loose_cycle(&h, &[0, 1, 2, 3, 4, 5], true),
            Err(PathViolation::NotHamilton { got: 6, n: 7 })
        );
    }

    #[test]
    fn tight_path_checks_every_window() {
        let edges = [(0, 1, 2), (1, 2, 3), (2, 3, 4)];
        let h =
            Hypergraph3::from_edges(5, edges.map(|(a, b, c)| Edge3::new(a, b, c).unwrap())).unwrap();
        assert!(validate_tight_path(&h, &[0, 1, 2, 3, 4]).is_ok());
        assert_eq!(
            validate_tight_path(&h, &[1, 0, 2, 3, 4]),
            Err(PathViolation::MissingEdge {
                index: 1,
                edge: [0, 2, 3]
            })
        );
    }
}
