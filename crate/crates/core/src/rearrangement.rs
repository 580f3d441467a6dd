//! Rearrangement-inequality machinery on two-level "step vectors".
//!
//! A step vector of fold `m` is a nondecreasing vector of length `m²` with
//! values in `{n, n+1}`: the first `m` entries are `n`, the last `m` are
//! `n+1`, and the middle block takes one of the two. It is *odd* when exactly
//! `m` entries equal `n` and *even* when exactly `m` entries equal `n+1`.
//! The value held by exactly `m` entries is `s`; the other one is `o`.
//!
//! Step vectors are stored as `(m, n, parity)`. Every pairing used here maps
//! the `m` consecutive blocks of length `m` onto blocks, so sums are computed
//! per block; the materialized routines exist to cross-check that algebra.

use std::ops::RangeInclusive;

use itertools::Itertools;

use crate::arith::PairCount;
use crate::error::{Error, Result};
use crate::perm::{all_perms, Perm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepVector {
    m: u32,
    base: u64,
    parity: Parity,
}

impl StepVector {
    pub fn new(m: u32, base: u64, parity: Parity) -> Result<Self> {
        if m < 2 {
            return Err(Error::FoldTooSmall { m, min: 2 });
        }
        Ok(Self { m, base, parity })
    }

    /// The vector of one path's pair counts sorted ascending: the aligned
    /// value occurs `m` times, the split value `m(m-1)` times.
    pub fn from_pair_count(pc: &PairCount) -> Result<Self> {
        let aligned = u64::try_from(&pc.aligned).map_err(|_| Error::Overflow)?;
        let split = u64::try_from(&pc.split).map_err(|_| Error::Overflow)?;
        let parity = if aligned < split {
            Parity::Odd
        } else {
            Parity::Even
        };
        Self::new(pc.fold, aligned.min(split), parity)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn len(&self) -> usize {
        (self.m * self.m) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The value held by exactly `m` coordinates.
    pub fn s(&self) -> u64 {
        match self.parity {
            Parity::Odd => self.base,
            Parity::Even => self.base + 1,
        }
    }

    /// The value held by the other `m(m-1)` coordinates.
    pub fn o(&self) -> u64 {
        match self.parity {
            Parity::Odd => self.base + 1,
            Parity::Even => self.base,
        }
    }

    /// Number of coordinates equal to the base value.
    pub fn low_count(&self) -> usize {
        let m = self.m as usize;
        match self.parity {
            Parity::Odd => m,
            Parity::Even => m * (m - 1),
        }
    }

    /// Value on block `b` (entries `b*m .. (b+1)*m`, 0-based).
    pub fn block(&self, b: usize) -> u64 {
        if b * (self.m as usize) < self.low_count() {
            self.base
        } else {
            self.base + 1
        }
    }

    pub fn expand(&self) -> Vec<u64> {
        let low = self.low_count();
        (0..self.len())
            .map(|j| if j < low { self.base } else { self.base + 1 })
            .collect()
    }
}

fn checked_product(values: impl IntoIterator<Item = u64>) -> Result<u128> {
    values
        .into_iter()
        .try_fold(1u128, |acc, v| acc.checked_mul(u128::from(v)))
        .ok_or(Error::Overflow)
}

fn checked_sum(values: impl IntoIterator<Item = Result<u128>>) -> Result<u128> {
    values
        .into_iter()
        .try_fold(0u128, |acc, v| acc.checked_add(v?).ok_or(Error::Overflow))
}

/// `Σ_j Π_i rows[i][perms[i](j)]` over explicit rows.
pub fn permuted_sum(rows: &[&[u64]], perms: &[&Perm]) -> Result<u128> {
    let n = rows.first().map_or(0, |r| r.len());
    if rows.len() != perms.len()
        || rows.iter().any(|r| r.len() != n)
        || perms.iter().any(|p| p.len() != n)
    {
        return Err(Error::Shape(format!(
            "{} rows against {} permutations",
            rows.len(),
            perms.len()
        )));
    }
    checked_sum((0..n).map(|j| checked_product(rows.iter().zip(perms).map(|(r, p)| r[p.apply(j)]))))
}

fn aligned_sum(rows: &[&[u64]]) -> Result<u128> {
    let n = rows.first().map_or(0, |r| r.len());
    checked_sum((0..n).map(|j| checked_product(rows.iter().map(|r| r[j]))))
}

/// Outcome of checking the rearrangement inequality on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiVerdict {
    pub permuted: u128,
    pub aligned: u128,
    /// For two rows: the oppositely ordered pairing.
    pub reversed: Option<u128>,
    pub holds: bool,
}

/// Checks `permuted ≤ aligned` and, for two rows, `reversed ≤ permuted`.
pub fn ri_check(rows: &[Vec<u64>], perms: &[Perm]) -> Result<RiVerdict> {
    for (i, r) in rows.iter().enumerate() {
        if r.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedRow { row: i });
        }
    }
    let row_refs: Vec<&[u64]> = rows.iter().map(Vec::as_slice).collect();
    let perm_refs: Vec<&Perm> = perms.iter().collect();
    let permuted = permuted_sum(&row_refs, &perm_refs)?;
    let aligned = aligned_sum(&row_refs)?;
    let reversed = if rows.len() == 2 {
        let n = rows[0].len();
        Some(checked_sum(
            (0..n).map(|j| checked_product([rows[0][n - 1 - j], rows[1][j]])),
        )?)
    } else {
        None
    };
    let holds = permuted <= aligned && reversed.is_none_or(|r| r <= permuted);
    Ok(RiVerdict {
        permuted,
        aligned,
        reversed,
        holds,
    })
}

/// The pairing permutations `f(j) = m²+1-j` and
/// `g(j) = m²+j-N` for `j ≤ N`, `j-N` otherwise (1-based).
pub fn fg_permutations(m: u32, n_low: u64) -> Result<(Perm, Perm)> {
    if m < 3 {
        return Err(Error::FoldTooSmall { m, min: 3 });
    }
    let mm = u64::from(m);
    if n_low != mm && n_low != mm * (mm - 1) {
        return Err(Error::InvalidBlockCount { m, n: n_low });
    }
    let size = (mm * mm) as usize;
    let shift = size - n_low as usize;
    let f = Perm::new((0..size).map(|j| size - 1 - j).collect())?;
    let g = Perm::new((0..size).map(|j| (j + shift) % size).collect())?;
    Ok((f, g))
}

fn check_triple(x1: &StepVector, x2: &StepVector, x3: &StepVector) -> Result<()> {
    if x1.m != x2.m || x1.m != x3.m {
        return Err(Error::Shape("step vectors of different folds".into()));
    }
    if x1.m < 3 {
        return Err(Error::FoldTooSmall { m: x1.m, min: 3 });
    }
    for other in [x2, x3] {
        if x1.base > other.base {
            return Err(Error::BaseOrder {
                first: x1.base,
                other: other.base,
            });
        }
    }
    Ok(())
}

/// `Σ_j x1_j · x2_{f(j)} · x3_{g(j)}`, the minimum over all pairings of the
/// three vectors. `N` is the number of base-valued entries of `x1`.
pub fn fg_minimum(x1: &StepVector, x2: &StepVector, x3: &StepVector) -> Result<u128> {
    check_triple(x1, x2, x3)?;
    let m = x1.m as usize;
    let shift_blocks = m - x1.low_count() / m;
    let per_block = checked_sum((0..m).map(|b| {
        checked_product([
            x1.block(b),
            x2.block(m - 1 - b),
            x3.block((b + shift_blocks) % m),
        ])
    }))?;
    per_block.checked_mul(m as u128).ok_or(Error::Overflow)
}

/// The same sum as [`fg_minimum`], by expanding the vectors and applying
/// `f` and `g` explicitly.
pub fn fg_minimum_materialized(x1: &StepVector, x2: &StepVector, x3: &StepVector) -> Result<u128> {
    check_triple(x1, x2, x3)?;
    let (f, g) = fg_permutations(x1.m, x1.low_count() as u64)?;
    let (e1, e2, e3) = (x1.expand(), x2.expand(), x3.expand());
    let id = Perm::identity(e1.len());
    permuted_sum(&[&e1, &e2, &e3], &[&id, &f, &g])
}

/// Sum of `x1_j · x2_{σ1(j)} · x3_{σ2(j)}` for arbitrary pairings.
pub fn triple_sum(
    x1: &StepVector,
    x2: &StepVector,
    x3: &StepVector,
    s1: &Perm,
    s2: &Perm,
) -> Result<u128> {
    let (e1, e2, e3) = (x1.expand(), x2.expand(), x3.expand());
    let id = Perm::identity(e1.len());
    permuted_sum(&[&e1, &e2, &e3], &[&id, s1, s2])
}

/// Which placement of the `s` blocks applies to a parity triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityCase {
    /// `x1` differs in parity from both `x2` and `x3`.
    FirstDiffersFromBoth,
    /// `x1` differs from `x2` and matches `x3`.
    FirstMatchesThird,
    /// All three share a parity.
    AllSame,
    /// `x1` matches `x2` and differs from `x3`: the previous case with
    /// `x2` and `x3` exchanged.
    FirstMatchesSecond,
}

impl ParityCase {
    pub fn classify(p: [Parity; 3]) -> Self {
        match (p[0] == p[1], p[0] == p[2]) {
            (false, false) => ParityCase::FirstDiffersFromBoth,
            (false, true) => ParityCase::FirstMatchesThird,
            (true, true) => ParityCase::AllSame,
            (true, false) => ParityCase::FirstMatchesSecond,
        }
    }
}

/// Placement of the `s` values under the permutations `h_1, h_2, h_3`:
/// `x_{i, h_i(j)} = s_i` exactly for `j` in `s_blocks[i]` (1-based, inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPlacement {
    pub case: ParityCase,
    pub s_blocks: [RangeInclusive<usize>; 3],
}

impl HPlacement {
    /// 0-based index of the length-`m` block holding `s` for each vector.
    fn block_indices(&self, m: usize) -> [usize; 3] {
        self.s_blocks.clone().map(|r| (r.start() - 1) / m)
    }
}

pub fn h_placement(parities: [Parity; 3], m: u32) -> Result<HPlacement> {
    if m < 3 {
        return Err(Error::FoldTooSmall { m, min: 3 });
    }
    let m = m as usize;
    let block = |k: usize| k * m + 1..=(k + 1) * m;
    let case = ParityCase::classify(parities);
    let idx = match case {
        ParityCase::FirstDiffersFromBoth => [0, 0, 0],
        ParityCase::FirstMatchesThird => [0, 0, 1],
        ParityCase::AllSame => [0, 1, 2],
        ParityCase::FirstMatchesSecond => [0, 1, 0],
    };
    Ok(HPlacement {
        case,
        s_blocks: idx.map(block),
    })
}

/// A permutation `h` of `[m²]` with `x_{h(j)} = s` exactly on `s_block`.
pub fn h_permutation(x: &StepVector, s_block: &RangeInclusive<usize>) -> Perm {
    let expanded = x.expand();
    let s = x.s();
    let (mut s_pos, mut o_pos): (Vec<usize>, Vec<usize>) =
        (0..expanded.len()).partition(|&i| expanded[i] == s);
    let mut images = Vec::with_capacity(expanded.len());
    for j in 1..=expanded.len() {
        let pool = if s_block.contains(&j) {
            &mut s_pos
        } else {
            &mut o_pos
        };
        images.push(pool.remove(0));
    }
    Perm::new(images).expect("bijection by construction")
}

/// `Σ_j x1_{h1(j)} x2_{h2(j)} x3_{h3(j)}` by block algebra.
pub fn h_paired_sum(
    x1: &StepVector,
    x2: &StepVector,
    x3: &StepVector,
) -> Result<(ParityCase, u128)> {
    check_triple(x1, x2, x3)?;
    let placement = h_placement([x1.parity, x2.parity, x3.parity], x1.m)?;
    let m = x1.m as usize;
    let idx = placement.block_indices(m);
    let xs = [x1, x2, x3];
    let per_block = checked_sum((0..m).map(|b| {
        checked_product((0..3).map(|i| if idx[i] == b { xs[i].s() } else { xs[i].o() }))
    }))?;
    Ok((
        placement.case,
        per_block.checked_mul(m as u128).ok_or(Error::Overflow)?,
    ))
}

/// The h-paired sum with the permutations built explicitly.
pub fn h_paired_sum_materialized(
    x1: &StepVector,
    x2: &StepVector,
    x3: &StepVector,
) -> Result<u128> {
    check_triple(x1, x2, x3)?;
    let placement = h_placement([x1.parity, x2.parity, x3.parity], x1.m)?;
    let xs = [x1, x2, x3];
    let hs: Vec<Perm> = (0..3)
        .map(|i| h_permutation(xs[i], &placement.s_blocks[i]))
        .collect();
    let expanded: Vec<Vec<u64>> = xs.iter().map(|x| x.expand()).collect();
    let rows: Vec<&[u64]> = expanded.iter().map(Vec::as_slice).collect();
    permuted_sum(&rows, &hs.iter().collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HEqualityVerdict {
    pub case: ParityCase,
    pub x1_parity: Parity,
    pub h_sum: u128,
    pub fg_sum: u128,
    pub equal: bool,
}

/// Compares the h-paired sum with the f/g-paired minimum.
pub fn h_equality_check(
    x1: &StepVector,
    x2: &StepVector,
    x3: &StepVector,
) -> Result<HEqualityVerdict> {
    let (case, h_sum) = h_paired_sum(x1, x2, x3)?;
    let fg_sum = fg_minimum(x1, x2, x3)?;
    Ok(HEqualityVerdict {
        case,
        x1_parity: x1.parity,
        h_sum,
        fg_sum,
        equal: h_sum == fg_sum,
    })
}

/// Outcome of comparing an arbitrary pairing with the aligned one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundVerdict {
    pub permuted: u128,
    pub aligned: u128,
    pub holds: bool,
}

/// Checks `Σ_j Π_i x_{i,σ_i(j)} ≤ Σ_j Π_i x_{i,j}` for step vectors.
pub fn aligned_maximum_check(xs: &[StepVector], perms: &[Perm]) -> Result<UpperBoundVerdict> {
    if xs.len() < 2 || xs.len() != perms.len() {
        return Err(Error::Shape(format!(
            "{} vectors against {} permutations",
            xs.len(),
            perms.len()
        )));
    }
    if xs.iter().any(|x| x.m != xs[0].m) {
        return Err(Error::Shape("step vectors of different folds".into()));
    }
    let expanded: Vec<Vec<u64>> = xs.iter().map(StepVector::expand).collect();
    let rows: Vec<&[u64]> = expanded.iter().map(Vec::as_slice).collect();
    let permuted = permuted_sum(&rows, &perms.iter().collect::<Vec<_>>())?;
    let m = xs[0].m as usize;
    let aligned = checked_sum((0..m).map(|b| checked_product(xs.iter().map(|x| x.block(b)))))?
        .checked_mul(m as u128)
        .ok_or(Error::Overflow)?;
    Ok(UpperBoundVerdict {
        permuted,
        aligned,
        holds: permuted <= aligned,
    })
}

/// Three sorted rows and a pairing whose sum falls strictly below the
/// pairing that reverses rows 2 and 3 against row 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Witness {
    pub rows: [Vec<u64>; 3],
    pub sigma1: Perm,
    pub sigma2: Perm,
    pub sum: u128,
    pub reversed_sum: u128,
}

/// First pairing `(σ1, σ2)` in lexicographic order whose sum is below the
/// reversed pairing `Σ_j x1_j x2_{n+1-j} x3_{n+1-j}`, if any.
pub fn k3_failure_for(rows: [&[u64]; 3]) -> Result<Option<K3Witness>> {
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("rows of different lengths".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedRow { row: i });
        }
    }
    let perms = all_perms(n);
    k3_scan(rows, &perms)
}

fn k3_scan(rows: [&[u64]; 3], perms: &[Perm]) -> Result<Option<K3Witness>> {
    let n = rows[0].len();
    if n < 2 {
        return Ok(None);
    }
    let id = Perm::identity(n);
    let rev = Perm::new((0..n).rev().collect()).expect("reversal");
    let reversed_sum = permuted_sum(&rows, &[&id, &rev, &rev])?;
    for (s1, s2) in perms.iter().cartesian_product(perms) {
        let sum = permuted_sum(&rows, &[&id, s1, s2])?;
        if sum < reversed_sum {
            return Ok(Some(K3Witness {
                rows: rows.map(<[u64]>::to_vec),
                sigma1: s1.clone(),
                sigma2: s2.clone(),
                sum,
                reversed_sum,
            }));
        }
    }
    Ok(None)
}

/// Scans sorted triples of rows of length `n` with entries in `0..=bound`,
/// in lexicographic order, for the first instance where the reversed
/// pairing is not minimal.
pub fn k3_failure_search(bound: u64, n: usize) -> Result<Option<K3Witness>> {
    if n < 2 {
        return Ok(None);
    }
    let rows: Vec<Vec<u64>> = (0..=bound).combinations_with_replacement(n).collect();
    let perms = all_perms(n);
    for x1 in &rows {
        for x2 in &rows {
            for x3 in &rows {
                if let Some(w) = k3_scan([x1, x2, x3], &perms)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
