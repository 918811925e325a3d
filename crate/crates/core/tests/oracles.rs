//! Brute-force oracles cross-checking the clever implementations.
//!
//! The solver oracle enumerates all n! vertex sequences and tests the n/2
//! cyclic implied edges directly; every n sequences describe the same
//! cycle (n/2 rotations times the junction reflection), so the sequence
//! count divided by n must equal the solver's canonical count exactly.

use loosehc::constructions::{make_complete, make_h3, random_binomial};
use loosehc::hypergraph::Hypergraph3;
use loosehc::pipeline::exact::{count_loose_hc, exact_loose_hc, SolveOptions, SolveOutcome};

use itertools::Itertools;

fn oracle_count(h: &Hypergraph3) -> u64 {
    let n = h.n();
    if n < 6 || n % 2 != 0 {
        return 0;
    }
    let mut sequences = 0u64;
    for perm in (0..n).permutations(n) {
        let ok = (0..n).step_by(2).all(|i| {
            h.contains_edge(perm[i], perm[(i + 1) % n], perm[(i + 2) % n])
        });
        if ok {
            sequences += 1;
        }
    }
    assert_eq!(sequences % n as u64, 0, "sequence count must split into orbits");
    sequences / n as u64
}

#[test]
fn oracle_agrees_on_named_hosts() {
    assert_eq!(oracle_count(&make_complete(6)), 120);
    assert_eq!(oracle_count(&make_h3(8).unwrap()), 0);
    let opts = SolveOptions::default();
    assert_eq!(
        count_loose_hc(&make_complete(6), &opts).unwrap().count,
        120
    );
}

#[test]
fn oracle_agrees_on_random_hosts_n6() {
    let opts = SolveOptions::default();
    for seed in 0..60 {
        let p = 0.15 + 0.01 * (seed % 40) as f64;
        let h = random_binomial(6, p, seed).unwrap();
        let expect = oracle_count(&h);
        let got = count_loose_hc(&h, &opts).unwrap();
        assert!(got.complete);
        assert_eq!(got.count, expect, "seed {} p {}", seed, p);
        let found = exact_loose_hc(&h, &opts).unwrap();
        assert_eq!(
            matches!(found.outcome, SolveOutcome::Found(_)),
            expect > 0,
            "seed {}",
            seed
        );
    }
}

#[test]
fn oracle_agrees_on_random_hosts_n8() {
    let opts = SolveOptions::default();
    for seed in 0..12 {
        let p = 0.10 + 0.02 * (seed % 8) as f64;
        let h = random_binomial(8, p, 1000 + seed).unwrap();
        let expect = oracle_count(&h);
        let got = count_loose_hc(&h, &opts).unwrap();
        assert!(got.complete);
        assert_eq!(got.count, expect, "seed {} p {}", seed, p);
        let found = exact_loose_hc(&h, &opts).unwrap();
        assert_eq!(
            matches!(found.outcome, SolveOutcome::Found(_)),
            expect > 0,
            "seed {}",
            seed
        );
    }
}
