//! Exact loose Hamilton cycle search by canonical backtracking.
//!
//! A loose Hamilton cycle on even n is an alternating cyclic sequence of
//! n/2 junctions and n/2 middles with every (junction, middle, junction)
//! triple an edge. The search anchors vertex 0: either 0 is a junction
//! (case A) or a middle (case B). Rotations are killed by the anchor and
//! reflections by an ordering constraint, so each cycle is visited exactly
//! once; exhausting both cases proves that no cycle exists. The same
//! enumeration powers a counting mode used to cross-check the solver
//! against brute force on small hosts.

use crate::error::{Error, Result};
use crate::hypergraph::{bits, Hypergraph3, PairMasks, VertexId};
use crate::paths::LooseCycle;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Backtracking node budget; a node is one placement attempt.
    pub node_budget: u64,
    /// Refuse hosts larger than this; masks support up to 128.
    pub vertex_guard: usize,
    /// Optional wall-clock budget, checked every few thousand nodes.
    /// Leaving it unset keeps the search fully deterministic.
    pub time_budget: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            node_budget: 200_000_000,
            vertex_guard: 64,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Found(LooseCycle),
    /// The full canonical search space was exhausted: no cycle exists.
    NoCycle,
    OutOfBudget,
}

#[derive(Debug)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes: u64,
}

#[derive(Debug, PartialEq, Eq)]
pub struct CountReport {
    pub count: u64,
    pub nodes: u64,
    /// False when the node budget cut the enumeration short.
    pub complete: bool,
}

enum Mode {
    FirstCycle,
    CountAll,
}

struct Search {
    pm: PairMasks,
    k: usize,
    full: u128,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
    mode: Mode,
    count: u64,
    found: Option<Vec<VertexId>>,
    out_of_budget: bool,
}

impl Search {
    /// True means unwind the recursion now.
    fn stop(&self) -> bool {
        self.out_of_budget || (matches!(self.mode, Mode::FirstCycle) && self.found.is_some())
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
        }
        if self.nodes % 8192 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.out_of_budget = true;
                }
            }
        }
        self.out_of_budget
    }

    fn record(&mut self, seq: &[VertexId]) {
        match self.mode {
            Mode::FirstCycle => self.found = Some(seq.to_vec()),
            Mode::CountAll => self.count += 1,
        }
    }

    /// Case A: vertex 0 is a junction. `seq` = [j0, m0, j1, ..., jc], with
    /// `depth` junctions placed. The reflection is broken by requiring the
    /// last junction to exceed the first non-anchor junction.
    fn case_a(&mut self, jc: VertexId, used: u128, depth: usize, j1: VertexId, seq: &mut Vec<VertexId>) {
        if depth == self.k {
            let rest = self.full & !used;
            debug_assert_eq!(rest.count_ones(), 1);
            let r = rest.trailing_zeros() as usize;
            if self.pm.third(jc, 0) & rest != 0 {
                seq.push(r);
                self.record(seq);
                seq.pop();
            }
            return;
        }
        let last = depth == self.k - 1;
        for jn in bits(self.pm.partners(jc) & !used) {
            if last && jn <= j1 {
                continue;
            }
            let mids = self.pm.third(jc, jn) & !used;
            for m in bits(mids) {
                if self.tick() {
                    return;
                }
                seq.push(m);
                seq.push(jn);
                let nj1 = if depth == 1 { jn } else { j1 };
                self.case_a(jn, used | (1 << m) | (1 << jn), depth + 1, nj1, seq);
                seq.truncate(seq.len() - 2);
                if self.stop() {
                    return;
                }
            }
        }
    }

    /// Case B: vertex 0 is a middle inside the closing edge {ja, 0, jb}
    /// with ja < jb; the search walks from ja to jb over the rest.
    fn case_b_roots(&mut self) {
        let link0 = self.pm.partners(0);
        for ja in bits(link0) {
            for jb in bits(self.pm.third(0, ja)) {
                if jb <= ja {
                    continue;
                }
                if self.tick() {
                    return;
                }
                let mut seq = vec![ja];
                let used = 1u128 | (1 << ja) | (1 << jb);
                self.case_b(ja, jb, used, 1, &mut seq);
                if self.stop() {
                    return;
                }
            }
        }
    }

    fn case_b(&mut self, jc: VertexId, jb: VertexId, used: u128, depth: usize, seq: &mut Vec<VertexId>) {
        if depth == self.k - 1 {
            let rest = self.full & !used;
            debug_assert_eq!(rest.count_ones(), 1);
            let r = rest.trailing_zeros() as usize;
            if self.pm.third(jc, jb) & rest != 0 {
                seq.push(r);
                seq.push(jb);
                seq.push(0);
                self.record(seq);
                seq.truncate(seq.len() - 3);
            }
            return;
        }
        for jn in bits(self.pm.partners(jc) & !used) {
            let mids = self.pm.third(jc, jn) & !used;
            for m in bits(mids) {
                if self.tick() {
                    return;
                }
                seq.push(m);
                seq.push(jn);
                self.case_b(jn, jb, used | (1 << m) | (1 << jn), depth + 1, seq);
                seq.truncate(seq.len() - 2);
                if self.stop() {
                    return;
                }
            }
        }
    }

    fn run(&mut self) {
        let mut seq = vec![0];
        self.case_a(0, 1u128, 1, usize::MAX, &mut seq);
        if !self.stop() {
            self.case_b_roots();
        }
    }
}

fn build_search(h: &Hypergraph3, opts: &SolveOptions, mode: Mode) -> Result<Option<Search>> {
    let n = h.n();
    if n > 128 {
        return Err(Error::TooManyVertices { n, max: 128 });
    }
    if n > opts.vertex_guard {
        return Err(Error::TooManyVertices {
            n,
            max: opts.vertex_guard,
        });
    }
    if n < 6 || n % 2 != 0 {
        return Ok(None);
    }
    Ok(Some(Search {
        pm: h.pair_masks()?,
        k: n / 2,
        full: if n == 128 { u128::MAX } else { (1u128 << n) - 1 },
        nodes: 0,
        budget: opts.node_budget,
        deadline: opts.time_budget.map(|d| Instant::now() + d),
        mode,
        count: 0,
        found: None,
        out_of_budget: false,
    }))
}

/// Finds a loose Hamilton cycle or proves none exists, within budget.
pub fn exact_loose_hc(h: &Hypergraph3, opts: &SolveOptions) -> Result<SolveReport> {
    let Some(mut s) = build_search(h, opts, Mode::FirstCycle)? else {
        return Ok(SolveReport {
            outcome: SolveOutcome::NoCycle,
            nodes: 0,
        });
    };
    s.run();
    let outcome = if let Some(order) = s.found.take() {
        let cycle = LooseCycle::hamilton(h, order).expect("search produced an invalid cycle");
        SolveOutcome::Found(cycle)
    } else if s.out_of_budget {
        SolveOutcome::OutOfBudget
    } else {
        SolveOutcome::NoCycle
    };
    Ok(SolveReport {
        outcome,
        nodes: s.nodes,
    })
}

/// Counts all distinct loose Hamilton cycles (as edge sets).
pub fn count_loose_hc(h: &Hypergraph3, opts: &SolveOptions) -> Result<CountReport> {
    let Some(mut s) = build_search(h, opts, Mode::CountAll)? else {
        return Ok(CountReport {
            count: 0,
            nodes: 0,
            complete: true,
        });
    };
    s.run();
    Ok(CountReport {
        count: s.count,
        nodes: s.nodes,
        complete: !s.out_of_budget,
    })
}
