//! Generalized theta graphs `Θ(l_1, …, l_n)`: two end vertices `u`, `w`
//! joined by `n` internally disjoint paths.
//!
//! Path lengths are kept in a fixed canonical order: `l_1` is the minimum
//! length, followed by the block of lengths whose parity differs from `l_1`,
//! followed by the remaining lengths that share the parity of `l_1`. Each
//! block is sorted ascending.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaSpec {
    lengths: Vec<u32>,
    /// 1-based end of the differing-parity block, absent when all
    /// lengths share a parity.
    r: Option<usize>,
}

impl ThetaSpec {
    /// Reorders `lengths` into canonical form.
    pub fn canonicalize(lengths: &[u32]) -> Result<Self> {
        check_basic(lengths)?;
        let min = *lengths.iter().min().expect("nonempty");
        let parity = min % 2;
        let mut differing: Vec<u32> = lengths
            .iter()
            .copied()
            .filter(|l| l % 2 != parity)
            .collect();
        let mut same: Vec<u32> = lengths
            .iter()
            .copied()
            .filter(|l| l % 2 == parity)
            .collect();
        differing.sort_unstable();
        same.sort_unstable();
        // same[0] == min
        let mut ordered = Vec::with_capacity(lengths.len());
        ordered.push(same[0]);
        ordered.extend_from_slice(&differing);
        ordered.extend_from_slice(&same[1..]);
        let r = (!differing.is_empty()).then(|| differing.len() + 1);
        Ok(Self {
            lengths: ordered,
            r,
        })
    }

    /// Accepts lengths that already satisfy the ordering convention (the
    /// within-block order is not checked), without reordering them.
    pub fn from_ordered(lengths: &[u32]) -> Result<Self> {
        check_basic(lengths)?;
        let first = lengths[0];
        if lengths.iter().any(|&l| l < first) {
            return Err(Error::NotCanonical(lengths.to_vec()));
        }
        let differs = |l: u32| l % 2 != first % 2;
        let block = lengths[1..].iter().take_while(|&&l| differs(l)).count();
        if lengths[1 + block..].iter().any(|&l| differs(l)) {
            return Err(Error::NotCanonical(lengths.to_vec()));
        }
        let r = (block > 0).then_some(block + 1);
        Ok(Self {
            lengths: lengths.to_vec(),
            r,
        })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of paths.
    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn r(&self) -> Option<usize> {
        self.r
    }

    /// Largest 1-based index whose length has parity different from `l_1`,
    /// or 1 when all lengths share a parity.
    pub fn t(&self) -> usize {
        self.r.unwrap_or(1)
    }

    pub fn all_same_parity(&self) -> bool {
        self.r.is_none()
    }

    pub fn num_vertices(&self) -> usize {
        2 + self.lengths.iter().map(|&l| l as usize - 1).sum::<usize>()
    }

    pub fn num_edges(&self) -> usize {
        self.lengths.iter().map(|&l| l as usize).sum()
    }

    /// Labeled vertex/edge description of the graph.
    ///
    /// Vertex 0 is `u`, vertex 1 is `w`, and the internal vertices follow
    /// path by path, each path listed from `u` towards `w`.
    pub fn vertex_layout(&self) -> ThetaLayout {
        let mut labels = vec![VertexLabel::U, VertexLabel::W];
        let mut edges = Vec::with_capacity(self.num_edges());
        let mut paths = Vec::with_capacity(self.n());
        for (p, &len) in self.lengths.iter().enumerate() {
            let mut walk = vec![0usize];
            for i in 1..len as usize {
                walk.push(labels.len());
                labels.push(VertexLabel::Internal { path: p, index: i });
            }
            walk.push(1);
            edges.extend(walk.windows(2).map(|e| (e[0], e[1])));
            paths.push(walk);
        }
        ThetaLayout {
            graph: Graph::new(labels.len(), edges),
            labels,
            paths,
        }
    }
}

fn check_basic(lengths: &[u32]) -> Result<()> {
    if lengths.len() < 2 {
        return Err(Error::TooFewPaths(lengths.len()));
    }
    if let Some(&l) = lengths.iter().find(|&&l| l < 1) {
        return Err(Error::ZeroLength(l as usize));
    }
    let ones = lengths.iter().filter(|&&l| l == 1).count();
    if ones > 1 {
        return Err(Error::Multigraph(ones));
    }
    Ok(())
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Θ(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Parses a comma-separated length list such as `"2,3,3,3,2"` and
/// canonicalizes it.
impl FromStr for ThetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lengths = parse_lengths(s)?;
        Self::canonicalize(&lengths)
    }
}

pub fn parse_lengths(s: &str) -> Result<Vec<u32>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::ParseSpec {
            input: s.to_string(),
            reason: "empty".into(),
        });
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<u32>().map_err(|e| Error::ParseSpec {
                input: s.to_string(),
                reason: format!("{tok:?}: {e}"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLabel {
    U,
    W,
    /// `index`-th internal vertex (1-based) of path `path` (0-based).
    Internal {
        path: usize,
        index: usize,
    },
}

#[derive(Debug, Clone)]
pub struct ThetaLayout {
    pub graph: Graph,
    pub labels: Vec<VertexLabel>,
    /// Vertex sequence of each path, from `u` (vertex 0) to `w` (vertex 1).
    pub paths: Vec<Vec<usize>>,
}
