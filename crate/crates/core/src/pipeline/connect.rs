//! Joining two loose path ends through three fresh vertices.

use std::collections::BTreeSet;

use crate::hypergraph::{Hypergraph3, VertexId};

/// Inner vertices (x, y, z) joining ends a and b into the loose path
/// a, x, y, z, b via the edges {a, x, y} and {y, z, b}. The three inner
/// vertices come from `allowed`; first hit in vertex order wins.
pub fn find_connection(
    h: &Hypergraph3,
    a: VertexId,
    b: VertexId,
    allowed: &BTreeSet<VertexId>,
) -> Option<[VertexId; 3]> {
    // y sits in both edges, so fix it first.
    for &y in allowed {
        if y == a || y == b {
            continue;
        }
        for &x in allowed {
            if x == y || x == a || x == b || !h.contains_edge(a, x, y) {
                continue;
            }
            for &z in allowed {
                if z == x || z == y || z == a || z == b {
                    continue;
                }
                if h.contains_edge(y, z, b) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// How many connections the assembly is expected to need at most; going
/// over is reported, not rejected.
pub fn connection_budget(gamma: f64, n: usize) -> usize {
    (gamma * n as f64 / 12.0).floor() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_complete, make_loose_cycle};
    use crate::paths::validate_loose_path;

    #[test]
    fn complete_host_connects_any_pair() {
        let h = make_complete(8);
        let allowed: BTreeSet<VertexId> = (2..8).collect();
        let [x, y, z] = find_connection(&h, 0, 1, &allowed).unwrap();
        validate_loose_path(&h, &[0, x, y, z, 1]).unwrap();
    }

    #[test]
    fn connection_respects_allowed_set() {
        let h = make_complete(10);
        let allowed: BTreeSet<VertexId> = [7, 8, 9].into_iter().collect();
        let conn = find_connection(&h, 0, 1, &allowed).unwrap();
        assert!(conn.iter().all(|v| allowed.contains(v)));
        let too_small: BTreeSet<VertexId> = [7, 8].into_iter().collect();
        assert!(find_connection(&h, 0, 1, &too_small).is_none());
    }

    #[test]
    fn sparse_host_has_no_connection() {
        let h = make_loose_cycle(12).unwrap();
        let allowed: BTreeSet<VertexId> = (2..12).filter(|&v| v != 6).collect();
        assert!(find_connection(&h, 0, 6, &allowed).is_none());
    }

    #[test]
    fn budget_scale() {
        assert_eq!(connection_budget(0.3, 40), 1);
        assert_eq!(connection_budget(0.3, 400), 10);
    }
}
