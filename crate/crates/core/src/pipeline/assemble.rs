//! End-to-end assembly of a loose Hamilton cycle on a dense host.
//!
//! One attempt runs the stages in order: pick a family of disjoint
//! absorber tuples and chain them into the absorbing path P0; sample a
//! reservoir among the remaining vertices; tile the rest by greedy loose
//! paths; connect P0 and the paths into a cycle through the reservoir;
//! absorb whatever the reservoir and the tiling left over. Every stage
//! failure is reported by name, and fresh seeds drive further attempts.

use std::collections::BTreeSet;

use crate::certificate::{Certificate, StageLog};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, VertexId};
use crate::paths::LooseCycle;
use crate::pipeline::absorbing::{absorb, absorber_family};
use crate::pipeline::connect::{connection_budget, find_connection};
use crate::pipeline::reservoir::sample_reservoir;
use crate::seeds;

#[derive(Debug, Clone)]
pub struct AssembleOptions {
    pub gamma: f64,
    /// Outer retries with derived seeds.
    pub attempts: usize,
    /// Reservoir draws per attempt.
    pub reservoir_attempts: usize,
    pub seed: u64,
    /// Optional wall clock, checked between attempts; each attempt itself
    /// runs to completion, so results stay deterministic per attempt.
    pub time_budget: Option<std::time::Duration>,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions {
            gamma: 0.3,
            attempts: 8,
            reservoir_attempts: 50,
            seed: 0,
            time_budget: None,
        }
    }
}

#[derive(Debug)]
pub enum AssembleOutcome {
    Success {
        certificate: Certificate,
        cycle: LooseCycle,
    },
    Failure {
        stage: String,
        detail: String,
    },
}

#[derive(Debug)]
pub struct AssembleReport {
    pub outcome: AssembleOutcome,
    /// Attempts consumed (the successful one included).
    pub attempts: usize,
    /// Stage log across all attempts, entries tagged attempt-i/stage.
    pub log: Vec<StageLog>,
}

pub fn assemble_loose_hc(h: &Hypergraph3, opts: &AssembleOptions) -> Result<AssembleReport> {
    if !(0.0..1.0).contains(&opts.gamma) || opts.gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in (0, 1), got {}",
            opts.gamma
        )));
    }
    if opts.attempts == 0 {
        return Err(Error::InvalidArgument("need at least one attempt".into()));
    }
    let mut log = Vec::new();
    if h.n() < 6 || h.n() % 2 != 0 {
        return Ok(AssembleReport {
            outcome: AssembleOutcome::Failure {
                stage: "precheck".into(),
                detail: format!("no loose Hamilton cycle exists on n = {}", h.n()),
            },
            attempts: 0,
            log,
        });
    }
    let mut last = (String::from("precheck"), String::new());
    let mut consumed = 0;
    let deadline = opts.time_budget.map(|d| std::time::Instant::now() + d);
    for attempt in 1..=opts.attempts {
        if let Some(d) = deadline {
            if attempt > 1 && std::time::Instant::now() >= d {
                last = (
                    "budget".into(),
                    format!("wall clock exhausted after {} attempts", attempt - 1),
                );
                break;
            }
        }
        consumed = attempt;
        let seed_a = seeds::derive(opts.seed, &format!("attempt-{}", attempt));
        match try_assemble(h, opts, seed_a) {
            Ok((cycle, stages)) => {
                for s in &stages {
                    log.push(tagged(attempt, s));
                }
                let certificate =
                    Certificate::pipeline(h, cycle.order().to_vec(), opts.seed, stages);
                return Ok(AssembleReport {
                    outcome: AssembleOutcome::Success { certificate, cycle },
                    attempts: attempt,
                    log,
                });
            }
            Err((stage, detail, stages)) => {
                for s in &stages {
                    log.push(tagged(attempt, s));
                }
                log.push(StageLog {
                    stage: format!("attempt-{}/{}", attempt, stage),
                    detail: format!("failed: {}", detail),
                });
                last = (stage, detail);
            }
        }
    }
    Ok(AssembleReport {
        outcome: AssembleOutcome::Failure {
            stage: last.0,
            detail: last.1,
        },
        attempts: consumed,
        log,
    })
}

fn tagged(attempt: usize, s: &StageLog) -> StageLog {
    StageLog {
        stage: format!("attempt-{}/{}", attempt, s.stage),
        detail: s.detail.clone(),
    }
}

type StageResult<T> = std::result::Result<T, (String, String, Vec<StageLog>)>;

fn try_assemble(
    h: &Hypergraph3,
    opts: &AssembleOptions,
    seed: u64,
) -> StageResult<(LooseCycle, Vec<StageLog>)> {
    let n = h.n();
    let gamma = opts.gamma;
    let mut stages: Vec<StageLog> = Vec::new();
    let fail = |stage: &str, detail: String, stages: &Vec<StageLog>| {
        Err((stage.to_string(), detail, stages.clone()))
    };

    // Absorber family and the absorbing path P0.
    let k_target = ((gamma * n as f64 / 8.0).floor() as usize).clamp(2, 8);
    let family = absorber_family(h, k_target, seeds::derive(seed, "family"));
    if family.len() < k_target {
        return fail(
            "absorber-family",
            format!(
                "needed {} disjoint absorbers, found {}",
                k_target,
                family.len()
            ),
            &stages,
        );
    }
    stages.push(StageLog {
        stage: "absorber-family".into(),
        detail: format!("{} disjoint 7-vertex absorbers", family.len()),
    });

    let mut used: BTreeSet<VertexId> = family.iter().flatten().copied().collect();
    let mut p0: Vec<VertexId> = family[0].to_vec();
    for t in family.iter().skip(1) {
        let allowed: BTreeSet<VertexId> = (0..n).filter(|v| !used.contains(v)).collect();
        let Some(conn) = find_connection(h, *p0.last().unwrap(), t[0], &allowed) else {
            return fail(
                "absorber-chain",
                format!("no connection into absorber starting at {}", t[0]),
                &stages,
            );
        };
        used.extend(conn);
        p0.extend(conn);
        p0.extend(t.iter());
    }
    let (a0, b0) = (p0[0], *p0.last().unwrap());
    stages.push(StageLog {
        stage: "absorbing-path".into(),
        detail: format!("{} vertices, ends ({}, {})", p0.len(), a0, b0),
    });

    // Reservoir among everything off the absorbing path.
    let p0_set: BTreeSet<VertexId> = p0.iter().copied().collect();
    let candidates: Vec<VertexId> = (0..n).filter(|v| !p0_set.contains(v)).collect();
    let mut check = candidates.clone();
    check.extend([a0, b0]);
    let rate = gamma - gamma.powi(3);
    let mean = rate * candidates.len() as f64;
    let window = mean.round() as usize;
    let accept = window.saturating_sub(2).max(1)..=window + 1;
    let out = sample_reservoir(
        h,
        &candidates,
        &check,
        gamma,
        accept.clone(),
        opts.reservoir_attempts,
        seeds::derive(seed, "reservoir"),
    )
    .map_err(|e| ("reservoir".to_string(), e.to_string(), stages.clone()))?;
    let Some(reservoir) = out.reservoir else {
        return fail(
            "reservoir",
            format!(
                "no draw accepted in {:?} after {} tries ({} size, {} degree rejects)",
                accept, out.attempts, out.size_rejects, out.degree_rejects
            ),
            &stages,
        );
    };
    let r_set: BTreeSet<VertexId> = reservoir.vertices.iter().copied().collect();
    stages.push(StageLog {
        stage: "reservoir".into(),
        detail: format!(
            "size {} in {:?} after {} draws",
            r_set.len(),
            accept,
            reservoir.attempts
        ),
    });

    // Greedy loose-path tiling of what is left.
    let mut active: BTreeSet<VertexId> = candidates
        .iter()
        .copied()
        .filter(|v| !r_set.contains(v))
        .collect();
    let paths = greedy_loose_paths(h, &mut active);
    let leftover_tiling = active;
    stages.push(StageLog {
        stage: "tiling".into(),
        detail: format!(
            "{} loose paths covering {} vertices, {} left over",
            paths.len(),
            paths.iter().map(|p| p.len()).sum::<usize>(),
            leftover_tiling.len()
        ),
    });

    // Connect P0 and all banked paths into one cycle through the
    // reservoir.
    let mut allowed = r_set.clone();
    let mut order = p0.clone();
    let mut cur_end = b0;
    for path in &paths {
        let forward = find_connection(h, cur_end, path[0], &allowed);
        let (conn, oriented): ([VertexId; 3], Vec<VertexId>) = match forward {
            Some(c) => (c, path.clone()),
            None => {
                let back = *path.last().unwrap();
                match find_connection(h, cur_end, back, &allowed) {
                    Some(c) => (c, path.iter().rev().copied().collect()),
                    None => {
                        return fail(
                            "connect",
                            format!(
                                "no connection from {} into a path ({} reservoir vertices left)",
                                cur_end,
                                allowed.len()
                            ),
                            &stages,
                        );
                    }
                }
            }
        };
        for v in conn {
            allowed.remove(&v);
        }
        order.extend(conn);
        cur_end = *oriented.last().unwrap();
        order.extend(oriented);
    }
    let Some(closing) = find_connection(h, cur_end, a0, &allowed) else {
        return fail(
            "connect",
            format!(
                "could not close the cycle into {} ({} reservoir vertices left)",
                a0,
                allowed.len()
            ),
            &stages,
        );
    };
    for v in closing {
        allowed.remove(&v);
    }
    order.extend(closing);
    let used_connections = paths.len() + 1;
    let budget = connection_budget(gamma, n);
    stages.push(StageLog {
        stage: "connect".into(),
        detail: format!(
            "{} connections ({} budgeted{})",
            used_connections,
            budget,
            if used_connections <= budget {
                ""
            } else {
                ", over budget: reported only"
            }
        ),
    });

    // Absorb the unused reservoir and tiling leftovers.
    let mut leftovers = leftover_tiling;
    leftovers.extend(allowed);
    if leftovers.len() % 2 != 0 {
        return fail(
            "absorb",
            format!("odd leftover count {}", leftovers.len()),
            &stages,
        );
    }
    let Some(absorbed) = absorb(h, &order, &family, &leftovers) else {
        return fail(
            "absorb",
            format!(
                "no assignment of {} leftover pairs to {} absorbers",
                leftovers.len() / 2,
                family.len()
            ),
            &stages,
        );
    };
    stages.push(StageLog {
        stage: "absorb".into(),
        detail: format!(
            "absorbed {} pairs: {:?}",
            absorbed.assignments.len(),
            absorbed.assignments
        ),
    });

    match LooseCycle::hamilton(h, absorbed.order) {
        Ok(cycle) => {
            stages.push(StageLog {
                stage: "validate".into(),
                detail: format!("loose Hamilton cycle on {} vertices", n),
            });
            Ok((cycle, stages))
        }
        Err(v) => fail("validate", v.to_string(), &stages),
    }
}

/// Repeatedly grows a loose path from any remaining edge, extending both
/// ends greedily, and banks it. Consumes `active`; what is left had no
/// usable edges.
fn greedy_loose_paths(h: &Hypergraph3, active: &mut BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let mut paths = Vec::new();
    loop {
        let Some(start) = h
            .edges()
            .iter()
            .find(|e| e.vertices().iter().all(|v| active.contains(v)))
        else {
            break;
        };
        let mut path: Vec<VertexId> = start.vertices().to_vec();
        for v in &path {
            active.remove(v);
        }
        for _ in 0..2 {
            while let Some((m, j)) = extend(h, *path.last().unwrap(), active) {
                active.remove(&m);
                active.remove(&j);
                path.push(m);
                path.push(j);
            }
            path.reverse();
        }
        paths.push(path);
    }
    paths
}

fn extend(
    h: &Hypergraph3,
    last: VertexId,
    active: &BTreeSet<VertexId>,
) -> Option<(VertexId, VertexId)> {
    for &m in active {
        for &j in active {
            if j <= m {
                continue;
            }
            if h.contains_edge(last, m, j) {
                return Some((m, j));
            }
        }
    }
    None
}
