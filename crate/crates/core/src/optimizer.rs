//! Exhaustive minimization and maximization of the coloring count over all
//! normalized signatures (`τ_1 = id`), i.e. over all full `m`-fold covers
//! up to relabeling.
//!
//! The search space is enumerated as a mixed-radix index whose most
//! significant digit is `τ_2`, so index order is lexicographic order of
//! signatures. Contiguous index blocks are folded in parallel and merged
//! with a commutative, associative rule (better value wins, ties go to the
//! lexicographically smaller witness), which makes the result independent
//! of the worker count.
//!
//! With symmetry reduction, `τ_2` ranges over one representative per cycle
//! type only: conjugating every `τ_k` by the same permutation relabels both
//! end folds and leaves the count unchanged. Witnesses found this way are
//! mapped back to the lexicographic minimum of their conjugation orbit.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::closed_forms::chromatic_poly_theta;
use crate::error::{Error, Result};
use crate::perm::{all_perms, class_representatives, Perm};
use crate::signature::{Signature, SignatureEvaluator};
use crate::theta::ThetaSpec;

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of signature evaluations.
    pub budget: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: None,
            symmetry: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: BigUint,
    /// Lexicographically smallest normalized signature attaining `optimum`.
    pub witness: Signature,
    pub explored: u128,
    pub reduced: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

pub fn minimize(spec: &ThetaSpec, m: u32, opts: &SearchOptions) -> Result<SearchResult> {
    search(spec, m, Goal::Minimize, opts)
}

pub fn maximize(spec: &ThetaSpec, m: u32, opts: &SearchOptions) -> Result<SearchResult> {
    search(spec, m, Goal::Maximize, opts)
}

/// Number of signatures the search would evaluate.
pub fn search_size(n: usize, m: u32, symmetry: bool) -> u128 {
    let perms = crate::perm::factorial(m as usize);
    if n < 2 {
        return 1;
    }
    let lead = if symmetry && n >= 2 {
        class_count(m as usize) as u128
    } else {
        perms
    };
    (0..n - 2).fold(lead, |acc, _| acc.saturating_mul(perms))
}

fn class_count(m: usize) -> usize {
    // integer partitions of m
    let mut ways = vec![0usize; m + 1];
    ways[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            ways[total] += ways[total - part];
        }
    }
    ways[m]
}

pub fn search(spec: &ThetaSpec, m: u32, goal: Goal, opts: &SearchOptions) -> Result<SearchResult> {
    let evaluator = SignatureEvaluator::new(spec, m)?;
    let n = spec.n();
    let required = search_size(n, m, opts.symmetry);
    if required > opts.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let space = Space::new(n, m as usize, opts.symmetry);
    let run = || {
        if evaluator.is_small() {
            space.fold(goal, |p| evaluator.evaluate_small(p).expect("small mode"))
        } else {
            space.fold(goal, |p| evaluator.evaluate(p))
        }
    };
    let (optimum, witness) = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    Ok(SearchResult {
        optimum,
        witness,
        explored: required,
        reduced: opts.symmetry,
    })
}

struct Space {
    n: usize,
    perms: Vec<Perm>,
    leads: Vec<usize>,
    identity: Perm,
    symmetry: bool,
}

/// Per-block fold state: best key and the lexicographically smallest
/// witness attaining it.
struct Best<K> {
    key: K,
    witness: Signature,
}

impl Space {
    fn new(n: usize, m: usize, symmetry: bool) -> Self {
        let perms = all_perms(m);
        let leads = if symmetry {
            let reps = class_representatives(m);
            reps.iter()
                .map(|r| perms.iter().position(|p| p == r).expect("rep is a perm"))
                .collect()
        } else {
            (0..perms.len()).collect()
        };
        Self {
            n,
            perms,
            leads,
            identity: Perm::identity(m),
            symmetry,
        }
    }

    fn size(&self) -> usize {
        let tail = self.n.saturating_sub(2) as u32;
        if self.n < 2 {
            1
        } else {
            self.leads.len() * self.perms.len().pow(tail)
        }
    }

    fn digits(&self, mut index: usize, out: &mut [usize]) {
        // out[0] is τ_1 (fixed), out[1] the lead digit, then base-m! digits
        let base = self.perms.len();
        for slot in out.iter_mut().skip(2).rev() {
            *slot = index % base;
            index /= base;
        }
        if out.len() > 1 {
            out[1] = self.leads[index];
        }
    }

    fn signature(&self, digits: &[usize]) -> Signature {
        let mut perms = vec![self.identity.clone()];
        perms.extend(digits[1..].iter().map(|&d| self.perms[d].clone()));
        Signature::new(perms).expect("well-formed")
    }

    fn canonical_witness(&self, sig: Signature) -> Signature {
        if !self.symmetry {
            return sig;
        }
        self.perms
            .iter()
            .map(|pi| sig.conjugate_by(pi))
            .min()
            .expect("nonempty orbit")
    }

    fn fold<K, F>(&self, goal: Goal, score: F) -> (BigUint, Signature)
    where
        K: Ord + Clone + Send + Into<BigUint>,
        F: Fn(&[&Perm]) -> K + Sync,
    {
        let total = self.size();
        let chunk = 4096usize;
        let blocks = total.div_ceil(chunk);
        let better = |a: &K, b: &K| match goal {
            Goal::Minimize => a.cmp(b) == Ordering::Less,
            Goal::Maximize => a.cmp(b) == Ordering::Greater,
        };
        let merge = |a: Option<Best<K>>, b: Option<Best<K>>| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if better(&a.key, &b.key) {
                    Some(a)
                } else if better(&b.key, &a.key) || b.witness < a.witness {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
        let best = (0..blocks)
            .into_par_iter()
            .map(|block| {
                let mut digits = vec![0usize; self.n];
                let mut refs: Vec<&Perm> = Vec::with_capacity(self.n);
                let mut local: Option<Best<K>> = None;
                let end = ((block + 1) * chunk).min(total);
                for index in block * chunk..end {
                    self.digits(index, &mut digits);
                    refs.clear();
                    refs.push(&self.identity);
                    refs.extend(digits[1..].iter().map(|&d| &self.perms[d]));
                    let key = score(&refs);
                    let step = match &local {
                        None => Step::Replace,
                        Some(cur) if better(&key, &cur.key) => Step::Replace,
                        // a later index can still have a smaller orbit minimum
                        Some(cur) if key == cur.key && self.symmetry => Step::Tie,
                        Some(_) => Step::Skip,
                    };
                    match step {
                        Step::Replace => {
                            let witness = self.canonical_witness(self.signature(&digits));
                            local = Some(Best { key, witness });
                        }
                        Step::Tie => {
                            let cand = self.canonical_witness(self.signature(&digits));
                            let cur = local.as_mut().expect("tie needs a current best");
                            if cand < cur.witness {
                                cur.witness = cand;
                            }
                        }
                        Step::Skip => {}
                    }
                }
                local
            })
            .reduce(|| None, merge)
            .expect("nonempty search space");
        (best.key.into(), best.witness)
    }
}

enum Step {
    Replace,
    Tie,
    Skip,
}

/// One row of an adherence scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdherenceRow {
    pub m: u32,
    pub chromatic: BigUint,
    /// Exhaustive minimum, or the error that prevented it.
    pub minimum: std::result::Result<BigUint, Error>,
}

impl AdherenceRow {
    /// `Some(true)` when the DP color function equals the chromatic
    /// polynomial at this fold.
    pub fn equal(&self) -> Option<bool> {
        self.minimum.as_ref().ok().map(|min| *min == self.chromatic)
    }
}

/// Compares the chromatic polynomial with the exhaustive DP color function
/// for each fold in `folds`. A fold that fails (budget, fold too small) is
/// recorded and the scan continues.
pub fn adherence_scan(
    spec: &ThetaSpec,
    folds: impl IntoIterator<Item = u32>,
    opts: &SearchOptions,
) -> Result<Vec<AdherenceRow>> {
    folds
        .into_iter()
        .map(|m| {
            Ok(AdherenceRow {
                m,
                chromatic: chromatic_poly_theta(spec, m)?,
                minimum: minimize(spec, m, opts).map(|r| r.optimum),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::evaluate_signature;

    fn spec(ls: &[u32]) -> ThetaSpec {
        ThetaSpec::canonicalize(ls).unwrap()
    }

    fn plain() -> SearchOptions {
        SearchOptions {
            symmetry: false,
            ..Default::default()
        }
    }

    /// Straight enumeration over every normalized signature.
    fn brute(spec: &ThetaSpec, m: u32, goal: Goal) -> (BigUint, Signature) {
        let perms = all_perms(m as usize);
        let n = spec.n();
        let mut best: Option<(BigUint, Signature)> = None;
        let total = perms.len().pow(n as u32 - 1);
        for idx in 0..total {
            let mut x = idx;
            let mut tail = Vec::new();
            for _ in 1..n {
                tail.push(perms[x % perms.len()].clone());
                x /= perms.len();
            }
            tail.reverse();
            let mut ps = vec![Perm::identity(m as usize)];
            ps.extend(tail);
            let sig = Signature::new(ps).unwrap();
            let v = evaluate_signature(spec, m, &sig).unwrap();
            let take = match &best {
                None => true,
                Some((b, w)) => match goal {
                    Goal::Minimize => v < *b || (v == *b && sig < *w),
                    Goal::Maximize => v > *b || (v == *b && sig < *w),
                },
            };
            if take {
                best = Some((v, sig));
            }
        }
        best.unwrap()
    }

    #[test]
    fn c4_minimum() {
        let r = minimize(&spec(&[2, 2]), 3, &plain()).unwrap();
        assert_eq!(r.optimum, 15u32.into());
        assert_eq!(r.witness.to_string(), "1,2,3;2,3,1");
        assert_eq!(r.explored, 6);
        let r = minimize(&spec(&[2, 2]), 3, &SearchOptions::default()).unwrap();
        assert_eq!(r.witness.to_string(), "1,2,3;2,3,1");
        assert_eq!(r.explored, 3);
    }

    #[test]
    fn maximum_examples() {
        let r = maximize(&spec(&[2, 3]), 3, &plain()).unwrap();
        assert_eq!(r.optimum, 33u32.into());
        assert_eq!(r.witness.to_string(), "1,2,3;2,3,1");
        assert_eq!(
            maximize(&spec(&[2, 2]), 3, &plain()).unwrap().optimum,
            18u32.into()
        );
        assert_eq!(
            maximize(&spec(&[2, 3, 3, 3, 2]), 3, &SearchOptions::default())
                .unwrap()
                .optimum,
            429u32.into()
        );
    }

    #[test]
    fn counterexample_minimum() {
        let r = minimize(&spec(&[2, 3, 3, 3, 2]), 3, &plain()).unwrap();
        assert_eq!(r.optimum, 258u32.into());
        assert_eq!(r.explored, 1296);
        assert_eq!(
            minimize(&spec(&[1, 2, 3]), 3, &plain()).unwrap().optimum,
            15u32.into()
        );
    }

    #[test]
    fn matches_brute_force_with_and_without_symmetry() {
        for ls in [
            vec![2u32, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![2, 2, 3, 3],
            vec![1, 3, 3],
        ] {
            let s = spec(&ls);
            for m in [3u32, 4] {
                if s.n() == 4 && m == 4 {
                    continue;
                }
                for goal in [Goal::Minimize, Goal::Maximize] {
                    let (v, w) = brute(&s, m, goal);
                    for symmetry in [false, true] {
                        let opts = SearchOptions {
                            symmetry,
                            ..Default::default()
                        };
                        let r = search(&s, m, goal, &opts).unwrap();
                        assert_eq!(
                            (&r.optimum, &r.witness),
                            (&v, &w),
                            "{s} m={m} {goal:?} sym={symmetry}"
                        );
                        assert!(r.witness.is_normalized());
                        assert_eq!(evaluate_signature(&s, m, &r.witness).unwrap(), r.optimum);
                    }
                }
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let s = spec(&[2, 3, 3, 2, 2]);
        let base = minimize(
            &s,
            3,
            &SearchOptions {
                workers: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        for w in [2, 3, 8] {
            let r = minimize(
                &s,
                3,
                &SearchOptions {
                    workers: Some(w),
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(r, base);
        }
    }

    #[test]
    fn budget_refusal() {
        let opts = SearchOptions {
            budget: 100,
            symmetry: false,
            ..Default::default()
        };
        let err = minimize(&spec(&[2, 3, 3, 3, 2]), 3, &opts).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 1296,
                budget: 100
            }
        );
    }

    #[test]
    fn search_sizes() {
        assert_eq!(search_size(5, 3, false), 1296);
        assert_eq!(search_size(5, 3, true), 3 * 216);
        assert_eq!(search_size(8, 3, false), 279_936);
        assert_eq!(search_size(3, 4, true), 5 * 24);
        assert_eq!(class_count(5), 7);
    }

    #[test]
    fn adherence_rows() {
        let rows = adherence_scan(&spec(&[2, 2]), 3..=5, &SearchOptions::default()).unwrap();
        for row in &rows {
            assert_eq!(row.equal(), Some(false));
            let expected = BigUint::from(row.m - 1).pow(4) - 1u32;
            assert_eq!(row.minimum.as_ref().unwrap(), &expected);
        }
        let rows = adherence_scan(&spec(&[1, 2, 2]), 3..=5, &SearchOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.equal() == Some(true)));
        let tight = SearchOptions {
            budget: 20,
            ..Default::default()
        };
        let rows = adherence_scan(&spec(&[2, 2, 2]), [3, 4], &tight).unwrap();
        assert!(rows[0].minimum.is_ok());
        assert!(matches!(rows[1].minimum, Err(Error::BudgetExceeded { .. })));
        assert_eq!(rows[1].equal(), None);
    }
}
