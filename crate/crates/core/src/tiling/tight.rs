//! Tight paths in dense hosts and M-copies in tripartite triples.
//!
//! Trimming every pair of codegree strictly between 0 and 2dm and taking a
//! maximal tight path in the residual host yields at least 2dm + 2
//! vertices whenever e(H) >= d m^3: the trim discards fewer than d m^3
//! edges in total, and a maximal path absorbs every residual codegree
//! partner of its end pair. An 8-vertex window of a tight path hosts an
//! M-copy, and in a crossing-only tripartite host the window classes cycle
//! with period 3, so a window offset aligns the two w-roles with any
//! chosen class.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge3, Hypergraph3, VertexId};
use crate::l29::{MRole, M_EDGES};
use crate::tiling::fractional::{rat, Rational};

/// One embedded copy of the template M, vertices indexed by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCopy {
    verts: [VertexId; 8],
}

impl MCopy {
    /// Reads a copy off 8 consecutive tight-path vertices; window
    /// positions coincide with role indices.
    pub fn from_window(w: &[VertexId]) -> MCopy {
        assert_eq!(w.len(), 8, "an M-copy spans exactly 8 vertices");
        let verts: [VertexId; 8] = w.try_into().unwrap();
        let mut sorted = verts;
        sorted.sort_unstable();
        assert!(
            sorted.windows(2).all(|p| p[0] != p[1]),
            "M-copy vertices must be distinct"
        );
        MCopy { verts }
    }

    pub fn vertices(&self) -> [VertexId; 8] {
        self.verts
    }

    pub fn role(&self, r: MRole) -> VertexId {
        self.verts[r.index()]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.contains(&v)
    }

    pub fn edges(&self) -> [Edge3; 4] {
        M_EDGES.map(|e| {
            Edge3::new(self.verts[e[0]], self.verts[e[1]], self.verts[e[2]])
                .expect("M-copy vertices are distinct")
        })
    }

    /// True when all four template edges lie in the host.
    pub fn embeds_in(&self, h: &Hypergraph3) -> bool {
        self.edges().iter().all(|&e| h.contains(e))
    }
}

/// Quantities behind the tight-path promise.
#[derive(Debug, Clone, PartialEq)]
pub struct TightPathGuarantee {
    /// The scale used in the thresholds (host vertex count, or the class
    /// total in the tripartite setting).
    pub scale: usize,
    pub edge_count: usize,
    /// d * m^3: the promise applies when edge_count reaches this.
    pub required_edges: Rational,
    pub dense_enough: bool,
    /// 2dm + 2.
    pub promised_length: Rational,
    /// Whether the found path meets the promised length.
    pub achieved: bool,
}

#[derive(Debug, Clone)]
pub struct TightPathReport {
    pub path: Vec<VertexId>,
    /// Edges surviving the codegree trim.
    pub residual_edges: usize,
    pub guarantee: TightPathGuarantee,
}

/// Maximal tight path after trimming low-codegree pairs, thresholds scaled
/// by m = n(H).
pub fn greedy_tight_path(h: &Hypergraph3, d: Rational) -> TightPathReport {
    tight_path_with_scale(h, d, h.n())
}

/// Kills every edge through a pair of codegree strictly between 0 and
/// 2dm, cascading to a fixpoint.
fn trim_residual(h: &Hypergraph3, threshold: Rational) -> Vec<Edge3> {
    let n = h.n();
    let edges: Vec<Edge3> = h.edges().to_vec();
    let mut alive = vec![true; edges.len()];
    let mut codeg = vec![0u32; n * n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let key = |u: VertexId, v: VertexId| if u < v { u * n + v } else { v * n + u };
    for (i, e) in edges.iter().enumerate() {
        let [a, b, c] = e.vertices();
        for (u, v) in [(a, b), (a, c), (b, c)] {
            codeg[key(u, v)] += 1;
            incident[key(u, v)].push(i);
        }
    }
    let low = |c: u32| c > 0 && rat(c as i64, 1) < threshold;
    let mut queue: Vec<usize> = (0..n * n).filter(|&k| low(codeg[k])).collect();
    while let Some(k) = queue.pop() {
        if !low(codeg[k]) {
            continue;
        }
        for &i in &incident[k] {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            let [a, b, c] = edges[i].vertices();
            for (u, v) in [(a, b), (a, c), (b, c)] {
                let kk = key(u, v);
                codeg[kk] -= 1;
                if low(codeg[kk]) {
                    queue.push(kk);
                }
            }
        }
    }
    edges
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect()
}

/// Grows a maximal tight path from one edge, extending with the smallest
/// available vertex at either end.
fn grow_path(rh: &Hypergraph3, start: Edge3) -> Vec<VertexId> {
    let mut used = vec![false; rh.n()];
    let mut dq: std::collections::VecDeque<VertexId> = start.vertices().into();
    for v in start.vertices() {
        used[v] = true;
    }
    loop {
        let mut grew = false;
        let (p0, p1) = (dq[0], dq[1]);
        if let Some(&w) = rh.neighborhood(&[p0, p1]).iter().find(|&&w| !used[w]) {
            dq.push_front(w);
            used[w] = true;
            grew = true;
        }
        let (q0, q1) = (dq[dq.len() - 1], dq[dq.len() - 2]);
        if let Some(&w) = rh.neighborhood(&[q0, q1]).iter().find(|&&w| !used[w]) {
            dq.push_back(w);
            used[w] = true;
            grew = true;
        }
        if !grew {
            break;
        }
    }
    dq.into_iter().collect()
}

/// As `greedy_tight_path` with an explicit threshold scale.
pub fn tight_path_with_scale(h: &Hypergraph3, d: Rational, m: usize) -> TightPathReport {
    let threshold = rat(2, 1) * d * rat(m as i64, 1);
    let residual = trim_residual(h, threshold);
    let residual_edges = residual.len();

    let path = match residual.first() {
        Some(&first) => {
            let rh =
                Hypergraph3::from_edges(h.n(), residual).expect("residual edges are valid");
            grow_path(&rh, first)
        }
        None => Vec::new(),
    };

    let m3 = rat(m as i64, 1) * rat(m as i64, 1) * rat(m as i64, 1);
    let required_edges = d * m3;
    let promised_length = threshold + rat(2, 1);
    let guarantee = TightPathGuarantee {
        scale: m,
        edge_count: h.edge_count(),
        dense_enough: rat(h.edge_count() as i64, 1) >= required_edges,
        required_edges,
        promised_length,
        achieved: rat(path.len() as i64, 1) >= promised_length,
    };
    TightPathReport {
        path,
        residual_edges,
        guarantee,
    }
}

#[derive(Debug, Clone)]
pub struct MCopyReport {
    pub copy: Option<MCopy>,
    pub path_len: usize,
    /// Crossing edges meet d m^3, m the class total.
    pub dense_enough: bool,
    /// 2dm exceeds 10, so the promised path holds every window offset.
    pub promised_long: bool,
}

pub(crate) fn class_map(n: usize, classes: &[Vec<VertexId>; 3]) -> Result<Vec<Option<usize>>> {
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    for (i, cl) in classes.iter().enumerate() {
        for &v in cl {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if class_of[v].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} appears in two classes",
                    v
                )));
            }
            class_of[v] = Some(i);
        }
    }
    Ok(class_of)
}

/// Finds an M-copy with both w-roles inside `classes[target]`, via tight
/// paths in the crossing-restricted host. Retries a few start edges, which
/// matters near exhaustion where a single maximal path can miss the
/// aligning window offset.
pub fn find_m_copy_in_triple(
    h: &Hypergraph3,
    classes: &[Vec<VertexId>; 3],
    target: usize,
    d: Rational,
) -> Result<MCopyReport> {
    const MAX_STARTS: usize = 8;
    if target >= 3 {
        return Err(Error::InvalidArgument(format!(
            "target class {} out of range",
            target
        )));
    }
    let class_of = class_map(h.n(), classes)?;
    let crossing: Vec<Edge3> = h
        .edges()
        .iter()
        .filter(|e| {
            let [a, b, c] = e.vertices();
            match (class_of[a], class_of[b], class_of[c]) {
                (Some(x), Some(y), Some(z)) => x != y && y != z && x != z,
                _ => false,
            }
        })
        .copied()
        .collect();
    let m = classes.iter().map(|c| c.len()).sum::<usize>();
    let e_cnt = crossing.len();

    let m3 = rat(m as i64, 1) * rat(m as i64, 1) * rat(m as i64, 1);
    let dense_enough = rat(e_cnt as i64, 1) >= d * m3;
    let promised_long = rat(2, 1) * d * rat(m as i64, 1) > rat(10, 1);

    let threshold = rat(2, 1) * d * rat(m as i64, 1);
    let restricted = Hypergraph3::from_edges(h.n(), crossing)?;
    let residual = trim_residual(&restricted, threshold);
    let mut copy = None;
    let mut path_len = 0;
    if !residual.is_empty() {
        let rh = Hypergraph3::from_edges(h.n(), residual.clone())
            .expect("residual edges are valid");
        'starts: for &start in residual.iter().take(MAX_STARTS) {
            let path = grow_path(&rh, start);
            path_len = path_len.max(path.len());
            for o in 0..3 {
                if path.len() >= o + 8 && class_of[path[o + 2]] == Some(target) {
                    let c = MCopy::from_window(&path[o..o + 8]);
                    debug_assert!(c.embeds_in(h));
                    copy = Some(c);
                    break 'starts;
                }
            }
        }
    }
    Ok(MCopyReport {
        copy,
        path_len,
        dense_enough,
        promised_long,
    })
}

/// A placed copy together with the class receiving its w-roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedCopy {
    pub copy: MCopy,
    pub w_class: usize,
}

#[derive(Debug, Clone)]
pub struct MTileReport {
    pub copies: Vec<PlacedCopy>,
    /// Copy quota per class (by original class index).
    pub quota: [usize; 3],
    pub quota_met: bool,
    pub uncovered: [Vec<VertexId>; 3],
    /// Set when 2 eps^2 m <= 7, i.e. the classes are too small for the
    /// covering bound to carry force.
    pub sparse_warning: bool,
}

/// Greedy M-tiling of a tripartite triple: a quota round-robin phase aims
/// (1-eps) of the balancing quota of w-roles at each class, then a greedy
/// continuation always points the w-roles at the smallest remaining class.
///
/// Each copy consumes (3, 3, 2) vertices with the 2 in its w-class; the
/// quota t_i = (3|Vj| + 3|Vk| - 5|Vi|)/8 makes the total consumption of
/// class i exactly |Vi| at eps = 0.
pub fn m_tile_regular_triple(
    h: &Hypergraph3,
    classes: &[Vec<VertexId>; 3],
    eps: Rational,
    d: Rational,
) -> Result<MTileReport> {
    use num_traits::{ToPrimitive, Zero};

    class_map(h.n(), classes)?;
    if eps < Rational::zero() || eps >= rat(1, 1) {
        return Err(Error::InvalidArgument(format!("eps {} outside [0,1)", eps)));
    }
    if d < rat(2, 1) * eps {
        return Err(Error::InvalidArgument(format!(
            "density {} below 2 eps = {}",
            d,
            rat(2, 1) * eps
        )));
    }
    let sizes: [usize; 3] = std::array::from_fn(|i| classes[i].len());
    let mut order: [usize; 3] = [0, 1, 2];
    order.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let [n1, n2, n3] = order.map(|i| sizes[i] as i64);
    if 5 * n1 > 3 * (n2 + n3) {
        return Err(Error::InvalidArgument(format!(
            "class sizes ({}, {}, {}) violate 5 max <= 3 (sum of others)",
            n1, n2, n3
        )));
    }

    let mut quota = [0usize; 3];
    for (pos, &i) in order.iter().enumerate() {
        let [a, b] = match pos {
            0 => [n2, n3],
            1 => [n1, n3],
            _ => [n1, n2],
        };
        let raw = (rat(1, 1) - eps) * rat(3 * a + 3 * b - 5 * sizes[i] as i64, 8);
        quota[i] = raw.floor().to_integer().to_usize().unwrap_or(0);
    }
    let sparse_warning = rat(2, 1) * eps * eps * rat(n3, 1) <= rat(7, 1);

    let mut st = TileState {
        h,
        remaining: std::array::from_fn(|i| classes[i].iter().copied().collect()),
        copies: Vec::new(),
        placed: [0; 3],
    };

    // Quota phase: rotate through the classes, largest first.
    let mut active = [true; 3];
    while (0..3).any(|p| active[p] && st.placed[order[p]] < quota[order[p]]) {
        for p in 0..3 {
            let i = order[p];
            if !active[p] || st.placed[i] >= quota[i] {
                continue;
            }
            if !st.try_place(i) {
                active[p] = false;
            }
        }
    }
    let quota_met = (0..3).all(|i| st.placed[i] >= quota[i]);

    // Continuation: aim the w-roles at the scarcest class while anything
    // still fits.
    loop {
        let mut cand: [usize; 3] = [0, 1, 2];
        cand.sort_by_key(|&i| (st.remaining[i].len(), i));
        if !cand.into_iter().any(|i| st.try_place(i)) {
            break;
        }
    }

    let uncovered: [Vec<VertexId>; 3] =
        std::array::from_fn(|i| st.remaining[i].iter().copied().collect());
    Ok(MTileReport {
        copies: st.copies,
        quota,
        quota_met,
        uncovered,
        sparse_warning,
    })
}

struct TileState<'a> {
    h: &'a Hypergraph3,
    remaining: [BTreeSet<VertexId>; 3],
    copies: Vec<PlacedCopy>,
    placed: [usize; 3],
}

impl TileState<'_> {
    fn try_place(&mut self, w_class: usize) -> bool {
        if self.remaining[w_class].len() < 2
            || (0..3).any(|i| i != w_class && self.remaining[i].len() < 3)
        {
            return false;
        }
        let cls: [Vec<VertexId>; 3] =
            std::array::from_fn(|i| self.remaining[i].iter().copied().collect());
        let m_cur: usize = cls.iter().map(|c| c.len()).sum();
        let class_of = class_map(self.h.n(), &cls).expect("remaining classes stay disjoint");
        let e_cur = self
            .h
            .edges()
            .iter()
            .filter(|e| {
                let [a, b, c] = e.vertices();
                matches!(
                    (class_of[a], class_of[b], class_of[c]),
                    (Some(x), Some(y), Some(z)) if x != y && y != z && x != z
                )
            })
            .count();
        if e_cur == 0 {
            return false;
        }
        // Adaptive density e / m^3 keeps the trim threshold meaningful as
        // the triple shrinks and renders the promise self-certifying.
        let m_rat = rat(m_cur as i64, 1);
        let d_eff = rat(e_cur as i64, 1) / (m_rat * m_rat * m_rat);
        let found = find_m_copy_in_triple(self.h, &cls, w_class, d_eff)
            .expect("remaining classes stay valid")
            .copy;
        match found {
            Some(copy) => {
                for v in copy.vertices() {
                    let c = class_of[v].expect("copy vertices come from the classes");
                    self.remaining[c].remove(&v);
                }
                self.copies.push(PlacedCopy { copy, w_class });
                self.placed[w_class] += 1;
                true
            }
            None => false,
        }
    }
}
