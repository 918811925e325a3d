//! Randomized properties: serialization round trips, generator
//! postconditions, validator agreement, and solver determinism over
//! seeded instance families.

use std::collections::BTreeSet;

use proptest::prelude::*;

use loosehc::constructions::{make_complete, make_loose_cycle, random_binomial, random_min_degree};
use loosehc::certificate::Certificate;
use loosehc::hypergraph::choose2;
use loosehc::io;
use loosehc::l29::L29Instance;
use loosehc::paths::{validate_loose_path, LooseCycle};
use loosehc::pipeline::absorbing::{can_absorb, rewire};
use loosehc::pipeline::connect::find_connection;
use loosehc::pipeline::exact::{count_loose_hc, exact_loose_hc, SolveOptions, SolveOutcome};
use loosehc::regularity::balanced_partition;
use loosehc::seeds;
use loosehc::tiling::fractional::{format_rational, parse_rational, rat, EdgeWeightPattern};

proptest! {
    #[test]
    fn text_serialization_round_trips(n in 6usize..20, p in 0.05f64..0.9, seed in any::<u64>()) {
        let h = random_binomial(n, p, seed).unwrap();
        let back = io::parse_text(&io::write_text(&h)).unwrap();
        prop_assert_eq!(back.n(), h.n());
        prop_assert_eq!(back.edges(), h.edges());
    }

    #[test]
    fn json_serialization_round_trips(n in 6usize..20, p in 0.05f64..0.9, seed in any::<u64>()) {
        let h = random_binomial(n, p, seed).unwrap();
        let meta = io::GeneratorInfo {
            name: "binomial".into(),
            params: serde_json::json!({ "n": n, "p": p }),
            seed: Some(seed),
        };
        let (back, meta_back) = io::parse_json(&io::write_json(&h, Some(meta.clone()))).unwrap();
        prop_assert_eq!(back.edges(), h.edges());
        prop_assert_eq!(meta_back, Some(meta));
    }

    #[test]
    fn rational_rendering_round_trips(p in -1000i64..1000, q in 1i64..200) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(r)), Some(r));
    }

    #[test]
    fn weight_patterns_classify_back(idx in 0usize..6, rot in 0usize..3, swap in proptest::bool::ANY) {
        let pattern = EdgeWeightPattern::ALL[idx];
        let mut ws = pattern.weights();
        ws.rotate_left(rot);
        if swap {
            ws.swap(0, 1);
        }
        prop_assert_eq!(EdgeWeightPattern::classify(ws), Some(pattern));
    }

    #[test]
    fn balanced_partition_is_a_partition(n in 1usize..200, t in 1usize..10, seed in any::<u64>()) {
        let classes = balanced_partition(n, t, seed);
        prop_assert_eq!(classes.len(), t);
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        let (lo, hi) = (sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        let mut seen = BTreeSet::new();
        for v in classes.iter().flatten() {
            prop_assert!(seen.insert(*v));
        }
        prop_assert_eq!(seen.len(), n);
        prop_assert!(seen.iter().all(|&v| v < n));
    }

    #[test]
    fn min_degree_generator_meets_its_target(n in 6usize..12, ratio in 0.0f64..0.8, seed in any::<u64>()) {
        let target = (ratio * choose2(n - 1) as f64).floor() as u64;
        let host = random_min_degree(n, target, seed).unwrap();
        prop_assert!(host.hypergraph.min_degree().0 as u64 >= target);
    }

    #[test]
    fn certificates_round_trip_and_reverify(k in 3usize..10) {
        let n = 2 * k;
        let h = make_loose_cycle(n).unwrap();
        let order: Vec<usize> = (0..n).collect();
        let cycle = LooseCycle::hamilton(&h, order).unwrap();
        let cert = Certificate::exact(&h, &cycle);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), cert.to_json());
        back.verify(&h).unwrap();
    }

    #[test]
    fn crossing_instances_round_trip(seed in any::<u64>()) {
        let inst = L29Instance::random(seed);
        let back = L29Instance::from_json(&inst.to_json()).unwrap();
        let pairs: BTreeSet<_> = inst.crossing().iter().copied().collect();
        let pairs_back: BTreeSet<_> = back.crossing().iter().copied().collect();
        prop_assert_eq!(pairs, pairs_back);
    }

    #[test]
    fn complete_host_connections_validate(n in 8usize..20, a in 0usize..8, b in 0usize..8) {
        prop_assume!(a != b);
        let h = make_complete(n);
        let allowed: BTreeSet<usize> = (0..n).filter(|v| *v != a && *v != b).collect();
        let [x, y, z] = find_connection(&h, a, b, &allowed).unwrap();
        prop_assert!(h.contains_edge(a, x, y));
        prop_assert!(h.contains_edge(y, z, b));
        validate_loose_path(&h, &[a, x, y, z, b]).unwrap();
    }

    #[test]
    fn absorber_rewiring_preserves_ends_and_vertices(n in 12usize..24, seed in any::<u64>()) {
        let h = make_complete(n);
        // Any nine distinct vertices of a complete host absorb.
        let mut vs: Vec<usize> = (0..n).collect();
        let mut pick = Vec::new();
        let mut s = seed;
        for _ in 0..9 {
            s = seeds::derive(s, "pick");
            pick.push(vs.remove((s as usize) % vs.len()));
        }
        let tuple: [usize; 7] = pick[..7].try_into().unwrap();
        let (x, y) = (pick[7], pick[8]);
        prop_assert!(can_absorb(&h, &tuple, x, y));
        let wide = rewire(&tuple, x, y);
        validate_loose_path(&h, &wide).unwrap();
        prop_assert_eq!(wide[0], tuple[0]);
        prop_assert_eq!(wide[8], tuple[6]);
        let before: BTreeSet<usize> = pick.iter().copied().collect();
        let after: BTreeSet<usize> = wide.iter().copied().collect();
        prop_assert_eq!(before, after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_is_deterministic_and_sound(n in 3usize..6, p in 0.2f64..0.7, seed in any::<u64>()) {
        let h = random_binomial(2 * n, p, seed).unwrap();
        let opts = SolveOptions::default();
        let first = exact_loose_hc(&h, &opts).unwrap();
        let second = exact_loose_hc(&h, &opts).unwrap();
        prop_assert_eq!(first.nodes, second.nodes);
        match (first.outcome, second.outcome) {
            (SolveOutcome::Found(a), SolveOutcome::Found(b)) => {
                prop_assert_eq!(&a, &b);
                LooseCycle::hamilton(&h, a.order().to_vec()).unwrap();
            }
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn planted_cycles_are_found_exactly_once(k in 3usize..9) {
        let n = 2 * k;
        let h = make_loose_cycle(n).unwrap();
        let report = count_loose_hc(&h, &SolveOptions::default()).unwrap();
        prop_assert!(report.complete);
        prop_assert_eq!(report.count, 1);
    }
}
