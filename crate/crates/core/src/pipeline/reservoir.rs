//! Reservoir sampling for the connection stage.
//!
//! Each candidate joins independently with probability gamma - gamma^3.
//! A draw is accepted when its size lands in the caller's window, stays
//! below gamma * n, and every listed vertex still sees many reservoir
//! pairs: deg_R(v) >= (1/4 + gamma^2) C(|R|, 2).

use std::ops::RangeInclusive;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{choose2, Hypergraph3, VertexId};
use crate::seeds;

#[derive(Debug, Clone)]
pub struct Reservoir {
    pub vertices: Vec<VertexId>,
    /// 1-based index of the accepted draw.
    pub attempts: usize,
}

#[derive(Debug, Clone)]
pub struct ReservoirOutcome {
    pub reservoir: Option<Reservoir>,
    pub attempts: usize,
    pub size_rejects: usize,
    pub degree_rejects: usize,
}

/// Pairs inside `r` completing an edge with v.
pub fn reservoir_degree(h: &Hypergraph3, v: VertexId, r: &[VertexId]) -> u64 {
    let mut deg = 0;
    for (i, &x) in r.iter().enumerate() {
        for &y in r.iter().skip(i + 1) {
            if h.contains_edge(v, x, y) {
                deg += 1;
            }
        }
    }
    deg
}

pub fn sample_reservoir(
    h: &Hypergraph3,
    candidates: &[VertexId],
    check_degrees: &[VertexId],
    gamma: f64,
    accept: RangeInclusive<usize>,
    max_attempts: usize,
    seed: u64,
) -> Result<ReservoirOutcome> {
    if !(0.0..1.0).contains(&gamma) || gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in (0, 1), got {}",
            gamma
        )));
    }
    if let Some(&v) = candidates.iter().chain(check_degrees).find(|&&v| v >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    let p = gamma - gamma.powi(3);
    let cap = gamma * h.n() as f64;
    let mut rng = seeds::rng(seed);
    let mut size_rejects = 0;
    let mut degree_rejects = 0;
    for attempt in 1..=max_attempts {
        let r: Vec<VertexId> = candidates
            .iter()
            .copied()
            .filter(|_| rng.gen::<f64>() < p)
            .collect();
        if !accept.contains(&r.len()) || r.len() as f64 > cap {
            size_rejects += 1;
            continue;
        }
        let bound = (0.25 + gamma * gamma) * choose2(r.len()) as f64;
        let ok = check_degrees
            .iter()
            .filter(|v| !r.contains(v))
            .all(|&v| reservoir_degree(h, v, &r) as f64 >= bound);
        if !ok {
            degree_rejects += 1;
            continue;
        }
        return Ok(ReservoirOutcome {
            reservoir: Some(Reservoir {
                vertices: r,
                attempts: attempt,
            }),
            attempts: attempt,
            size_rejects,
            degree_rejects,
        });
    }
    Ok(ReservoirOutcome {
        reservoir: None,
        attempts: max_attempts,
        size_rejects,
        degree_rejects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_complete;

    #[test]
    fn complete_host_accepts_quickly() {
        let h = make_complete(40);
        let candidates: Vec<VertexId> = (17..40).collect();
        let check: Vec<VertexId> = (0..2).chain(17..40).collect();
        let out =
            sample_reservoir(&h, &candidates, &check, 0.3, 4..=7, 50, 11).unwrap();
        let r = out.reservoir.expect("complete host should accept");
        assert!((4..=7).contains(&r.vertices.len()));
        assert_eq!(out.degree_rejects, 0);
        // On a complete host every vertex outside R sees all pairs.
        let bound = (0.25 + 0.09) * choose2(r.vertices.len()) as f64;
        for v in 0..40 {
            if !r.vertices.contains(&v) {
                assert!(reservoir_degree(&h, v, &r.vertices) as f64 >= bound);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let h = make_complete(30);
        let candidates: Vec<VertexId> = (0..20).collect();
        let a = sample_reservoir(&h, &candidates, &candidates, 0.25, 3..=6, 30, 5).unwrap();
        let b = sample_reservoir(&h, &candidates, &candidates, 0.25, 3..=6, 30, 5).unwrap();
        assert_eq!(
            a.reservoir.unwrap().vertices,
            b.reservoir.unwrap().vertices
        );
    }

    #[test]
    fn sparse_host_fails_on_degrees() {
        // On a bare loose cycle a middle vertex sees at most one
        // reservoir pair, which never reaches the bound once |R| >= 3.
        let h = crate::constructions::make_loose_cycle(16).unwrap();
        let candidates: Vec<VertexId> = (0..16).collect();
        let out =
            sample_reservoir(&h, &candidates, &candidates, 0.3, 3..=6, 40, 2).unwrap();
        assert!(out.reservoir.is_none());
        assert!(out.degree_rejects > 0);
    }

    #[test]
    fn gamma_validated() {
        let h = make_complete(10);
        assert!(sample_reservoir(&h, &[0, 1], &[], 0.0, 1..=2, 5, 0).is_err());
        assert!(sample_reservoir(&h, &[0, 1], &[], 1.0, 1..=2, 5, 0).is_err());
    }
}
