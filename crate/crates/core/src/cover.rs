//! Explicit covers `(L, H)` of small graphs and a backtracking counter of
//! their independent transversals (`H`-colorings).
//!
//! Cover vertices are plain integer ids. `parts[v]` lists `L(v)`. Only
//! cross-edges are stored; edges inside a part are implicit because a
//! transversal picks exactly one vertex per part.
//!
//! Text format (version 1), one directive per line, `#` starts a comment:
//!
//! ```text
//! dp-cover 1
//! vertices 3
//! edge 0 1
//! part 0 0 1 2        # base vertex 0 owns cover vertices 0,1,2
//! cross 0 3           # cross-edge between cover vertices 0 and 3
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const COVER_FORMAT_HEADER: &str = "dp-cover 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub base: Graph,
    pub parts: Vec<Vec<usize>>,
    pub cross: Vec<(usize, usize)>,
}

/// One violated cover axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The parts do not partition the cover vertices, or there is not one
    /// part per base vertex.
    NotAPartition(String),
    /// A cross-edge joins parts of non-adjacent base vertices.
    NonAdjacentCrossEdge {
        a: usize,
        b: usize,
        base: (usize, usize),
    },
    /// Two cross-edges over the same base edge share an endpoint.
    NotAMatching { vertex: usize, base: (usize, usize) },
    /// A cross-edge references a cover vertex that belongs to no part.
    UnknownVertex(usize),
    /// A part has a size different from the common fold.
    UnequalFold {
        vertex: usize,
        size: usize,
        fold: usize,
    },
}

impl Violation {
    /// Number of the axiom in the standard four-axiom cover definition.
    pub fn axiom(&self) -> u8 {
        match self {
            Violation::NotAPartition(_) | Violation::UnknownVertex(_) => 1,
            Violation::NonAdjacentCrossEdge { .. } => 3,
            Violation::NotAMatching { .. } => 4,
            Violation::UnequalFold { .. } => 1,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAPartition(why) => write!(f, "axiom (1): parts are not a partition: {why}"),
            Violation::UnknownVertex(x) => write!(f, "axiom (1): cover vertex {x} lies in no part"),
            Violation::UnequalFold { vertex, size, fold } => {
                write!(f, "fold: part of base vertex {vertex} has {size} vertices, expected {fold}")
            }
            Violation::NonAdjacentCrossEdge { a, b, base } => write!(
                f,
                "axiom (3): cross-edge {a}-{b} joins parts of non-adjacent base vertices {}-{}",
                base.0, base.1
            ),
            Violation::NotAMatching { vertex, base } => write!(
                f,
                "axiom (4): cross-edges over base edge {}-{} are not a matching at cover vertex {vertex}",
                base.0, base.1
            ),
        }
    }
}

/// Transversal count restricted to supersets of a pin set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedCount {
    pub count: BigUint,
    /// Set when two pins share a part; the count is then 0.
    pub degenerate: bool,
}

impl Cover {
    /// `m`-fold cover with a canonical labeling: cover vertex `v*m + c` is
    /// `(v, c)` and every base edge carries the identity matching.
    pub fn canonical(base: Graph, m: usize) -> Self {
        let parts = (0..base.num_vertices())
            .map(|v| (v * m..(v + 1) * m).collect())
            .collect();
        let cross = base
            .edges()
            .iter()
            .flat_map(|&(a, b)| (0..m).map(move |c| (a * m + c, b * m + c)))
            .collect();
        Self { base, parts, cross }
    }

    pub fn num_cover_vertices(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Common part size, if all parts agree.
    pub fn fold(&self) -> Option<usize> {
        let first = self.parts.first()?.len();
        self.parts.iter().all(|p| p.len() == first).then_some(first)
    }

    /// Full when every base edge carries a perfect matching.
    pub fn is_full(&self) -> bool {
        let Some(m) = self.fold() else { return false };
        let owner = match self.owner_map() {
            Ok(o) => o,
            Err(_) => return false,
        };
        self.base.edges().iter().all(|&(a, b)| {
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            for &(x, y) in &self.cross {
                let (px, py) = (owner[x], owner[y]);
                if (px, py) == (a, b) {
                    left.insert(x);
                    right.insert(y);
                } else if (px, py) == (b, a) {
                    left.insert(y);
                    right.insert(x);
                }
            }
            left.len() == m && right.len() == m
        }) && self.validate().is_empty()
    }

    fn owner_map(&self) -> std::result::Result<Vec<usize>, Violation> {
        let max_id = self
            .parts
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(0, |x| x + 1);
        let mut owner = vec![usize::MAX; max_id];
        for (v, part) in self.parts.iter().enumerate() {
            for &x in part {
                if owner[x] != usize::MAX {
                    return Err(Violation::NotAPartition(format!(
                        "cover vertex {x} is in the parts of {} and {v}",
                        owner[x]
                    )));
                }
                owner[x] = v;
            }
        }
        Ok(owner)
    }

    /// Every violated cover axiom; empty means the cover is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.parts.len() != self.base.num_vertices() {
            out.push(Violation::NotAPartition(format!(
                "{} parts for {} base vertices",
                self.parts.len(),
                self.base.num_vertices()
            )));
            return out;
        }
        if let Some(empty) = self.parts.iter().position(Vec::is_empty) {
            out.push(Violation::NotAPartition(format!(
                "part of base vertex {empty} is empty"
            )));
        }
        let fold = self.parts.first().map_or(0, Vec::len);
        for (v, p) in self.parts.iter().enumerate() {
            if p.len() != fold {
                out.push(Violation::UnequalFold {
                    vertex: v,
                    size: p.len(),
                    fold,
                });
            }
        }
        let owner = match self.owner_map() {
            Ok(o) => o,
            Err(v) => {
                out.push(v);
                return out;
            }
        };
        let lookup = |x: usize| owner.get(x).copied().filter(|&o| o != usize::MAX);
        let mut used: BTreeSet<(usize, (usize, usize))> = BTreeSet::new();
        let mut reported: BTreeSet<(usize, (usize, usize))> = BTreeSet::new();
        for &(a, b) in &self.cross {
            let (Some(pa), Some(pb)) = (lookup(a), lookup(b)) else {
                for x in [a, b] {
                    if lookup(x).is_none() {
                        out.push(Violation::UnknownVertex(x));
                    }
                }
                continue;
            };
            if pa == pb {
                // an edge inside a part is implied by axiom (2)
                continue;
            }
            let key = (pa.min(pb), pa.max(pb));
            if !self.base.has_edge(pa, pb) {
                out.push(Violation::NonAdjacentCrossEdge { a, b, base: key });
                continue;
            }
            for x in [a, b] {
                if !used.insert((x, key)) && reported.insert((x, key)) {
                    out.push(Violation::NotAMatching {
                        vertex: x,
                        base: key,
                    });
                }
            }
        }
        out
    }

    /// Cover induced on the given base vertices, optionally dropping the
    /// cross-edges of some base edges. Base vertices are renumbered in the
    /// order given; cover vertex ids are kept.
    pub fn induced(&self, base_vertices: &[usize], drop_edges: &[(usize, usize)]) -> Cover {
        let index = |v: usize| base_vertices.iter().position(|&x| x == v);
        let dropped = |a: usize, b: usize| {
            drop_edges
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
        };
        let edges: Vec<(usize, usize)> = self
            .base
            .edges()
            .iter()
            .filter(|&&(a, b)| !dropped(a, b))
            .filter_map(|&(a, b)| Some((index(a)?, index(b)?)))
            .collect();
        let parts: Vec<Vec<usize>> = base_vertices
            .iter()
            .map(|&v| self.parts[v].clone())
            .collect();
        let owner = self.owner_map().expect("valid cover");
        let cross = self
            .cross
            .iter()
            .copied()
            .filter(|&(x, y)| {
                let (a, b) = (owner[x], owner[y]);
                index(a).is_some() && index(b).is_some() && !dropped(a, b)
            })
            .collect();
        Cover {
            base: Graph::new(base_vertices.len(), edges),
            parts,
            cross,
        }
    }

    /// Number of independent transversals.
    pub fn count_transversals(&self) -> BigUint {
        self.count_pinned(&[]).count
    }

    /// Number of independent transversals containing every pinned vertex.
    ///
    /// Parts are assigned in base-vertex index order; each candidate is
    /// checked against the already chosen vertices of adjacent parts.
    pub fn count_pinned(&self, pins: &[usize]) -> PinnedCount {
        let owner = self.owner_map().expect("cover parts must be a partition");
        let mut choices: Vec<Vec<usize>> = self.parts.clone();
        let mut pinned_parts = vec![false; self.parts.len()];
        for &p in pins {
            let v = owner[p];
            if pinned_parts[v] {
                let degenerate = choices[v] != [p];
                if degenerate {
                    return PinnedCount {
                        count: BigUint::from(0u32),
                        degenerate: true,
                    };
                }
            }
            pinned_parts[v] = true;
            choices[v] = vec![p];
        }

        let n_ids = owner.len();
        let mut adj = vec![Vec::new(); n_ids];
        for &(a, b) in &self.cross {
            if owner[a] != owner[b] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut chosen = vec![false; n_ids];
        let count = backtrack(0, &choices, &adj, &mut chosen);
        PinnedCount {
            count: BigUint::from(count),
            degenerate: false,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{COVER_FORMAT_HEADER}").unwrap();
        writeln!(s, "vertices {}", self.base.num_vertices()).unwrap();
        for &(a, b) in self.base.edges() {
            writeln!(s, "edge {a} {b}").unwrap();
        }
        for (v, part) in self.parts.iter().enumerate() {
            write!(s, "part {v}").unwrap();
            for x in part {
                write!(s, " {x}").unwrap();
            }
            writeln!(s).unwrap();
        }
        for &(a, b) in &self.cross {
            writeln!(s, "cross {a} {b}").unwrap();
        }
        s
    }

    /// Parses the line format described in the module docs. Syntax is
    /// checked here; axioms are checked by [`Cover::validate`].
    pub fn from_text(text: &str) -> Result<Cover> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, reason: &str| Error::ParseCover {
            line,
            reason: reason.to_string(),
        };
        match lines.next() {
            Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["dp-cover", "1"] => {}
            Some((i, _)) => return Err(err(i, "expected header `dp-cover 1`")),
            None => return Err(err(0, "empty cover file")),
        }
        let mut vertices: Option<usize> = None;
        let mut edges = Vec::new();
        let mut parts: Vec<Option<Vec<usize>>> = Vec::new();
        let mut cross = Vec::new();
        for (i, line) in lines {
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap_or("");
            let nums: std::result::Result<Vec<usize>, _> = toks.map(str::parse::<usize>).collect();
            let nums = nums.map_err(|_| err(i, "expected nonnegative integers"))?;
            match key {
                "vertices" => {
                    let [n] = nums[..] else {
                        return Err(err(i, "`vertices` takes one number"));
                    };
                    vertices = Some(n);
                    parts = vec![None; n];
                }
                "edge" => {
                    let [a, b] = nums[..] else {
                        return Err(err(i, "`edge` takes two numbers"));
                    };
                    let n = vertices.ok_or_else(|| err(i, "`vertices` must come first"))?;
                    if a >= n || b >= n || a == b {
                        return Err(err(i, "edge endpoints out of range or equal"));
                    }
                    edges.push((a, b));
                }
                "part" => {
                    let n = vertices.ok_or_else(|| err(i, "`vertices` must come first"))?;
                    let (&v, members) = nums
                        .split_first()
                        .ok_or_else(|| err(i, "`part` needs a base vertex"))?;
                    if v >= n {
                        return Err(err(i, "base vertex out of range"));
                    }
                    if parts[v].is_some() {
                        return Err(err(i, "duplicate part"));
                    }
                    parts[v] = Some(members.to_vec());
                }
                "cross" => {
                    let [a, b] = nums[..] else {
                        return Err(err(i, "`cross` takes two numbers"));
                    };
                    cross.push((a, b));
                }
                _ => return Err(err(i, &format!("unknown directive {key:?}"))),
            }
        }
        let n = vertices.ok_or_else(|| err(0, "missing `vertices`"))?;
        let parts = parts
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| err(0, &format!("missing part for base vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cover {
            base: Graph::new(n, edges),
            parts,
            cross,
        })
    }
}

fn backtrack(part: usize, choices: &[Vec<usize>], adj: &[Vec<usize>], chosen: &mut [bool]) -> u64 {
    if part == choices.len() {
        return 1;
    }
    let mut total = 0;
    for &x in &choices[part] {
        if adj[x].iter().any(|&y| chosen[y]) {
            continue;
        }
        if part + 1 == choices.len() {
            total += 1;
            continue;
        }
        chosen[x] = true;
        total += backtrack(part + 1, choices, adj, chosen);
        chosen[x] = false;
    }
    total
}
