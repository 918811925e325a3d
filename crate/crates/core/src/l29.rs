//! The two-template link structure behind the fractional tiling argument.
//!
//! An instance consists of two disjoint copies of the 8-vertex template M
//! plus two extra vertices u and v with identical links: for every pair
//! (a, b') with a in the first copy and b' in the second, either both
//! {u,a,b'} and {v,a,b'} are edges or neither is. The defining constraint
//! is at least 29 such crossing pairs. The search in `tiling::l29_search`
//! produces a fractional tiling of weight at least 49/3 on any instance.
//!
//! Vertex layout: 0..8 the first copy in role order x1, x2, w1, y1, y2,
//! w2, z1, z2; 8..16 the second copy in the same order; 16 = u, 17 = v.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge3, Hypergraph3, VertexId};
use crate::seeds;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Roles of the 8 vertices of the template M, in vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MRole {
    X1,
    X2,
    W1,
    Y1,
    Y2,
    W2,
    Z1,
    Z2,
}

/// Vertex classes of M: the doubleton w-class bridges the pair classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MClass {
    X,
    Y,
    Z,
    W,
}

impl MRole {
    pub const ALL: [MRole; 8] = [
        MRole::X1,
        MRole::X2,
        MRole::W1,
        MRole::Y1,
        MRole::Y2,
        MRole::W2,
        MRole::Z1,
        MRole::Z2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> MRole {
        MRole::ALL[i]
    }

    pub fn class(self) -> MClass {
        match self {
            MRole::X1 | MRole::X2 => MClass::X,
            MRole::Y1 | MRole::Y2 => MClass::Y,
            MRole::Z1 | MRole::Z2 => MClass::Z,
            MRole::W1 | MRole::W2 => MClass::W,
        }
    }

    pub fn is_w(self) -> bool {
        self.class() == MClass::W
    }

    /// The other vertex of the same class; w1 <-> w2 for the w-class.
    pub fn classmate(self) -> MRole {
        match self {
            MRole::X1 => MRole::X2,
            MRole::X2 => MRole::X1,
            MRole::Y1 => MRole::Y2,
            MRole::Y2 => MRole::Y1,
            MRole::Z1 => MRole::Z2,
            MRole::Z2 => MRole::Z1,
            MRole::W1 => MRole::W2,
            MRole::W2 => MRole::W1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MRole::X1 => "x1",
            MRole::X2 => "x2",
            MRole::W1 => "w1",
            MRole::Y1 => "y1",
            MRole::Y2 => "y2",
            MRole::W2 => "w2",
            MRole::Z1 => "z1",
            MRole::Z2 => "z2",
        }
    }
}

impl MClass {
    /// The two pair classes and their members, in role order.
    pub const PAIR_CLASSES: [MClass; 3] = [MClass::X, MClass::Y, MClass::Z];

    pub fn members(self) -> [MRole; 2] {
        match self {
            MClass::X => [MRole::X1, MRole::X2],
            MClass::Y => [MRole::Y1, MRole::Y2],
            MClass::Z => [MRole::Z1, MRole::Z2],
            MClass::W => [MRole::W1, MRole::W2],
        }
    }
}

/// Edges of M in role indices.
pub const M_EDGES: [[usize; 3]; 4] = [[0, 1, 2], [2, 3, 4], [3, 4, 5], [5, 6, 7]];

/// Vertex ids of the instance layout.
pub const COPY1: std::ops::Range<usize> = 0..8;
pub const COPY2: std::ops::Range<usize> = 8..16;
pub const U: VertexId = 16;
pub const V: VertexId = 17;

/// Minimum number of crossing pairs an instance must carry.
pub const MIN_CROSSING: usize = 29;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct L29Instance {
    /// Crossing pairs (role in copy 1, role in copy 2), sorted.
    crossing: Vec<(MRole, MRole)>,
    #[serde(skip)]
    host: std::cell::OnceCell<Hypergraph3>,
}

impl L29Instance {
    pub fn from_crossing(pairs: &[(MRole, MRole)]) -> Result<Self> {
        let mut crossing = pairs.to_vec();
        crossing.sort();
        crossing.dedup();
        if crossing.len() < MIN_CROSSING {
            return Err(Error::InvalidArgument(format!(
                "need at least {} crossing pairs, got {}",
                MIN_CROSSING,
                crossing.len()
            )));
        }
        Ok(L29Instance {
            crossing,
            host: std::cell::OnceCell::new(),
        })
    }

    /// Random instance: size uniform in [29, 64], pairs a uniform subset.
    pub fn random(seed: u64) -> Self {
        let mut rng = seeds::rng(seed);
        let size = rng.gen_range(MIN_CROSSING..=64);
        let mut all: Vec<(MRole, MRole)> = MRole::ALL
            .iter()
            .flat_map(|&a| MRole::ALL.iter().map(move |&b| (a, b)))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(size);
        L29Instance::from_crossing(&all).expect("subset size was checked")
    }

    pub fn crossing(&self) -> &[(MRole, MRole)] {
        &self.crossing
    }

    pub fn crossing_contains(&self, a: MRole, b: MRole) -> bool {
        self.crossing.binary_search(&(a, b)).is_ok()
    }

    /// The 18-vertex host: both template copies, plus the u- and v-edges of
    /// every crossing pair.
    pub fn host(&self) -> &Hypergraph3 {
        self.host.get_or_init(|| {
            let mut h = Hypergraph3::new(18);
            for e in M_EDGES {
                h.add_edge(Edge3::new(e[0], e[1], e[2]).unwrap());
                h.add_edge(Edge3::new(8 + e[0], 8 + e[1], 8 + e[2]).unwrap());
            }
            for &(a, b) in &self.crossing {
                h.add_edge(Edge3::new(U, a.index(), 8 + b.index()).unwrap());
                h.add_edge(Edge3::new(V, a.index(), 8 + b.index()).unwrap());
            }
            h
        })
    }

    /// Checks the defining invariants; `from_crossing` enforces them, this
    /// re-derives them from the built host.
    pub fn validate(&self) -> Result<()> {
        let h = self.host();
        let m = self.crossing.len();
        if m < MIN_CROSSING {
            return Err(Error::InvalidArgument("too few crossing pairs".into()));
        }
        if h.edge_count() != 8 + 2 * m {
            return Err(Error::InvalidArgument("edge count mismatch".into()));
        }
        if h.degree(U) as usize != m || h.degree(V) as usize != m {
            return Err(Error::InvalidArgument("u/v degree mismatch".into()));
        }
        let mut lu = h.link(U);
        let mut lv = h.link(V);
        lu.sort();
        lv.sort();
        if lu != lv {
            return Err(Error::InvalidArgument("u and v links differ".into()));
        }
        for (a, b) in lu {
            if !(COPY1.contains(&a) && COPY2.contains(&b)) {
                return Err(Error::InvalidArgument(
                    "u-edge does not cross the two copies".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let inst: L29Instance = serde_json::from_str(s)?;
        L29Instance::from_crossing(&inst.crossing)
    }
}
