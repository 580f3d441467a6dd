//! Signatures: full covers of a theta graph up to relabeling.
//!
//! A signature is one permutation `τ_k` of `[m]` per path. It stands for the
//! full cover whose matchings are the identity everywhere except on the
//! last edge of path `k` (the edge into `w`), which realizes `τ_k`. On that
//! cover the pair `((u,i),(w,j))` is joined by a cross-edge path along path
//! `k` exactly when `j = τ_k(i)`, so the number of colorings is
//!
//! `Σ_{(i,j)} Π_k (aligned_k if j = τ_k(i) else split_k)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{pair_counts, to_u128, PairCount};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::theta::ThetaSpec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    perms: Vec<Perm>,
}

impl Signature {
    pub fn new(perms: Vec<Perm>) -> Result<Self> {
        let fold = perms.first().map_or(0, Perm::len);
        if perms.is_empty() || perms.iter().any(|p| p.len() != fold) {
            return Err(Error::SignatureShape {
                expected: perms.len().max(1),
                got: perms.len(),
                fold: fold as u32,
                got_fold: perms.iter().map(Perm::len).max().unwrap_or(0) as u32,
            });
        }
        Ok(Self { perms })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self {
            perms: vec![Perm::identity(m); n],
        }
    }

    pub fn fold(&self) -> usize {
        self.perms[0].len()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// `τ_1` is the identity.
    pub fn is_normalized(&self) -> bool {
        self.perms[0].is_identity()
    }

    /// Relabels the fold at `w` by `τ_1⁻¹`, which preserves the coloring
    /// count and makes `τ_1` the identity.
    pub fn normalize(&self) -> Signature {
        let inv = self.perms[0].inverse();
        Signature {
            perms: self.perms.iter().map(|p| inv.compose(p)).collect(),
        }
    }

    /// Simultaneous conjugation by `pi`: relabel both end folds by `pi`.
    pub fn conjugate_by(&self, pi: &Perm) -> Signature {
        Signature {
            perms: self.perms.iter().map(|p| p.conjugate_by(pi)).collect(),
        }
    }

    fn check_shape(&self, spec: &ThetaSpec, m: u32) -> Result<()> {
        if self.len() != spec.n() || self.fold() != m as usize {
            return Err(Error::SignatureShape {
                expected: spec.n(),
                got: self.len(),
                fold: m,
                got_fold: self.fold() as u32,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perms.iter().join(";"))
    }
}

/// Parses semicolon-separated 1-based one-line permutations, e.g.
/// `"1,2,3;2,3,1;1,2,3"`.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perms = s
            .split(';')
            .map(|p| p.parse::<Perm>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::ParseSignature {
                input: s.to_string(),
                reason: e.to_string(),
            })?;
        Signature::new(perms)
    }
}

/// The explicit full cover a signature stands for. Cover vertex `v*m + c`
/// is `(v, c)` for base vertex `v` of [`ThetaSpec::vertex_layout`].
pub fn build_cover(spec: &ThetaSpec, m: u32, sig: &Signature) -> Result<Cover> {
    sig.check_shape(spec, m)?;
    let m = m as usize;
    let layout = spec.vertex_layout();
    let mut cross = Vec::new();
    for (walk, tau) in layout.paths.iter().zip(sig.perms()) {
        let last = walk.len() - 2;
        for (e, pair) in walk.windows(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            for c in 0..m {
                let target = if e == last { tau.apply(c) } else { c };
                cross.push((a * m + c, b * m + target));
            }
        }
    }
    let parts = (0..layout.graph.num_vertices())
        .map(|v| (v * m..(v + 1) * m).collect())
        .collect();
    Ok(Cover {
        base: layout.graph,
        parts,
        cross,
    })
}

/// The restricted cover `H_k` on path `k` alone. When `l_1 = 1`, the
/// cross-edges between `L(u)` and `L(w)` belong to path 1 only.
pub fn path_cover(spec: &ThetaSpec, cover: &Cover, k: usize) -> Cover {
    let layout = spec.vertex_layout();
    let drop: &[(usize, usize)] = if spec.lengths()[0] == 1 && k != 0 {
        &[(0, 1)]
    } else {
        &[]
    };
    cover.induced(&layout.paths[k], drop)
}

/// Number of colorings of the cover a signature stands for, from the pair
/// counts alone; no cover is built.
pub fn evaluate_signature(spec: &ThetaSpec, m: u32, sig: &Signature) -> Result<BigUint> {
    sig.check_shape(spec, m)?;
    let eval = SignatureEvaluator::new(spec, m)?;
    let refs: Vec<&Perm> = sig.perms().iter().collect();
    Ok(eval.evaluate(&refs))
}

/// Precomputed pair counts for repeated signature evaluation.
#[derive(Debug, Clone)]
pub struct SignatureEvaluator {
    m: usize,
    counts: Vec<PairCount>,
    small: Option<Vec<(u128, u128)>>,
}

impl SignatureEvaluator {
    pub fn new(spec: &ThetaSpec, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::FoldTooSmall { m, min: 2 });
        }
        let counts: Vec<PairCount> = spec
            .lengths()
            .iter()
            .map(|&l| pair_counts(l, m))
            .collect::<Result<_>>()?;
        // u128 is exact when m² · Π max(aligned, split) fits
        let bound: BigUint = counts
            .iter()
            .map(|pc| pc.aligned.clone().max(pc.split.clone()))
            .product::<BigUint>()
            * BigUint::from(m)
            * BigUint::from(m);
        let small = to_u128(&bound).and_then(|_| {
            counts
                .iter()
                .map(|pc| Some((to_u128(&pc.aligned)?, to_u128(&pc.split)?)))
                .collect()
        });
        Ok(Self {
            m: m as usize,
            counts,
            small,
        })
    }

    pub fn counts(&self) -> &[PairCount] {
        &self.counts
    }

    pub fn is_small(&self) -> bool {
        self.small.is_some()
    }

    pub fn evaluate(&self, perms: &[&Perm]) -> BigUint {
        if let Some(v) = self.evaluate_small(perms) {
            return BigUint::from(v);
        }
        let mut total = BigUint::zero();
        for i in 0..self.m {
            for j in 0..self.m {
                let mut prod = BigUint::one();
                for (pc, tau) in self.counts.iter().zip(perms) {
                    prod *= pc.value(tau.apply(i) == j);
                }
                total += prod;
            }
        }
        total
    }

    /// Exact value in `u128` when the evaluator is in small mode.
    #[inline]
    pub fn evaluate_small(&self, perms: &[&Perm]) -> Option<u128> {
        let small = self.small.as_ref()?;
        let mut total = 0u128;
        for i in 0..self.m {
            for j in 0..self.m {
                let mut prod = 1u128;
                for (&(a, s), tau) in small.iter().zip(perms) {
                    prod *= if tau.apply(i) == j { a } else { s };
                }
                total += prod;
            }
        }
        Some(total)
    }
}

/// Minimizing signature for a three-path theta graph: all identity when
/// `l_1` differs in parity from `l_2` and `l_3`, `(id, id, σ)` when it
/// shares parity with `l_3` only, `(id, σ, σ²)` when all parities agree,
/// where `σ` is the cyclic shift.
pub fn extremal_signature_min_theta3(spec: &ThetaSpec, m: u32) -> Result<Signature> {
    if spec.n() != 3 {
        return Err(Error::WrongPathCount {
            expected: 3,
            got: spec.n(),
        });
    }
    let m = m as usize;
    let id = Perm::identity(m);
    let sigma = Perm::shift(m);
    let perms = match spec.t() {
        3 => vec![id.clone(), id.clone(), id],
        2 => vec![id.clone(), id, sigma],
        _ => vec![id, sigma.clone(), sigma.pow(2)],
    };
    Signature::new(perms)
}

/// Maximizing signature: `σ` on paths `2..=t`, identity elsewhere.
pub fn extremal_signature_max(spec: &ThetaSpec, m: u32) -> Signature {
    let m = m as usize;
    let t = spec.t();
    let perms = (0..spec.n())
        .map(|k| {
            if (1..t).contains(&k) {
                Perm::shift(m)
            } else {
                Perm::identity(m)
            }
        })
        .collect();
    Signature { perms }
}
