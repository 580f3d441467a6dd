//! Permutations of `[m]`, stored 0-based and printed 1-based in one-line form.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Accepts a 0-based image vector.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    /// Accepts a 1-based one-line form such as `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Option<Vec<usize>> = images.iter().map(|&x| x.checked_sub(1)).collect();
        zero.ok_or_else(|| Error::InvalidPermutation(images.to_vec()))
            .and_then(Self::new)
    }

    pub fn identity(m: usize) -> Self {
        Self((0..m).collect())
    }

    /// The cyclic shift `j ↦ (j mod m) + 1` (1-based), i.e. `j ↦ j+1 mod m`.
    pub fn shift(m: usize) -> Self {
        Self((0..m).map(|j| (j + 1) % m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: usize) -> Perm {
        (0..k).fold(Perm::identity(self.len()), |acc, _| self.compose(&acc))
    }

    /// `π ∘ self ∘ π⁻¹`.
    pub fn conjugate_by(&self, pi: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[pi.0[i]] = pi.0[x];
        }
        Perm(out)
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lens = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

/// All permutations of `[m]` in lexicographic order of their one-line form.
pub fn all_perms(m: usize) -> Vec<Perm> {
    (0..m).permutations(m).map(Perm).collect()
}

/// The lexicographically smallest permutation of each cycle type, sorted
/// lexicographically.
pub fn class_representatives(m: usize) -> Vec<Perm> {
    let mut reps: Vec<Perm> = all_perms(m)
        .into_iter()
        .unique_by(|p| p.cycle_type())
        .collect();
    reps.sort();
    reps
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based().iter().join(","))
    }
}

/// Parses a 1-based comma-separated one-line form.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match images {
            Ok(v) => Perm::from_one_based(&v),
            Err(_) => Err(Error::InvalidPermutation(Vec::new())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let s = Perm::shift(3);
        assert_eq!(s.to_string(), "2,3,1");
        assert_eq!(s.pow(3), Perm::identity(3));
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
        assert_eq!("2,3,1".parse::<Perm>().unwrap(), s);
        assert!("1,1,2".parse::<Perm>().is_err());
        assert!("0,1".parse::<Perm>().is_err());
    }

    #[test]
    fn lex_order_and_classes() {
        let all = all_perms(3);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let reps = class_representatives(4);
        assert_eq!(reps.len(), 5);
        assert_eq!(reps[0], Perm::identity(4));
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        for p in all_perms(4) {
            for pi in all_perms(4) {
                let c = p.conjugate_by(&pi);
                assert_eq!(c.cycle_type(), p.cycle_type());
                assert_eq!(c, pi.compose(&p).compose(&pi.inverse()));
            }
        }
    }
}
