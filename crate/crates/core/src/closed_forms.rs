//! Exact closed forms for theta graphs: the chromatic polynomial, the DP
//! color function of three-path theta graphs, the dual DP color function of
//! generalized theta graphs, and the AM-GM lower bound on the DP color
//! function.
//!
//! Every quotient is an exact integer division; a remainder is reported as
//! [`Error::InexactDivision`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{
    ceil_mth_root, exact_div, neg_one_pow, pair_counts, pow_int, to_natural, PairCount,
};
use crate::error::{Error, Result};
use crate::theta::ThetaSpec;

/// Which formula produced a [`FormulaResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Fold too small for any coloring of a graph containing a cycle.
    SmallFoldZero,
    /// Three paths, `l_1` differs in parity from both `l_2` and `l_3`;
    /// the DP color function equals the chromatic polynomial.
    Theta3UniqueParity,
    /// Three paths, `l_1` shares its parity with `l_3` only.
    Theta3MixedParity,
    /// Three paths of equal parity.
    Theta3SameParity,
    /// Dual DP color function with all lengths of one parity (`t = 1`).
    DualUniformParity,
    /// Dual DP color function with a differing-parity block (`t > 1`).
    DualTwisted,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::SmallFoldZero => "m<=2:zero",
            CaseTag::Theta3UniqueParity => "theta3:unique-parity",
            CaseTag::Theta3MixedParity => "theta3:mixed-parity",
            CaseTag::Theta3SameParity => "theta3:same-parity",
            CaseTag::DualUniformParity => "dual:t=1",
            CaseTag::DualTwisted => "dual:t>1",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: BigUint,
    pub case: CaseTag,
}

/// `P(C_n, m) = (m-1)^n + (-1)^n (m-1)`; valid for `n >= 1` (a loop for
/// `n = 1`, a digon for `n = 2`).
pub fn chromatic_poly_cycle(n: u32, m: u32) -> BigUint {
    let v =
        pow_int(i64::from(m) - 1, n) + neg_one_pow(u64::from(n)) * BigInt::from(i64::from(m) - 1);
    to_natural(v)
}

/// Number of proper `m`-colorings of the theta graph.
pub fn chromatic_poly_theta(spec: &ThetaSpec, m: u32) -> Result<BigUint> {
    if m < 2 {
        return Ok(BigUint::zero());
    }
    let mm = BigInt::from(m);
    let n = spec.n() as u32;
    let (mut longer, mut exact) = (BigInt::one(), BigInt::one());
    for &l in spec.lengths() {
        longer *= BigInt::from(chromatic_poly_cycle(l + 1, m));
        exact *= BigInt::from(chromatic_poly_cycle(l, m));
    }
    let first = exact_div(&longer, &num_traits::pow(&mm * (&mm - 1), (n - 1) as usize))?;
    let second = exact_div(&exact, &num_traits::pow(mm, (n - 1) as usize))?;
    Ok(to_natural(first + second))
}

fn pair_table(spec: &ThetaSpec, m: u32) -> Result<Vec<PairCount>> {
    spec.lengths().iter().map(|&l| pair_counts(l, m)).collect()
}

/// DP color function of a three-path theta graph.
pub fn dp_theta3(spec: &ThetaSpec, m: u32) -> Result<FormulaResult> {
    if spec.n() != 3 {
        return Err(Error::WrongPathCount {
            expected: 3,
            got: spec.n(),
        });
    }
    if m < 1 {
        return Err(Error::FoldTooSmall { m, min: 1 });
    }
    let case = match spec.t() {
        1 => CaseTag::Theta3SameParity,
        2 => CaseTag::Theta3MixedParity,
        _ => CaseTag::Theta3UniqueParity,
    };
    let zero = FormulaResult {
        value: BigUint::zero(),
        case: CaseTag::SmallFoldZero,
    };
    if m == 1 || (m == 2 && case != CaseTag::Theta3MixedParity) {
        return Ok(zero);
    }

    let [l1, l2, l3] = [spec.lengths()[0], spec.lengths()[1], spec.lengths()[2]];
    let b = i64::from(m) - 1;
    let total = l1 + l2 + l3;
    let numerator = match case {
        CaseTag::Theta3UniqueParity => {
            return Ok(FormulaResult {
                value: chromatic_poly_theta(spec, m)?,
                case,
            })
        }
        CaseTag::Theta3MixedParity => {
            pow_int(b, total) + pow_int(b, l1) - pow_int(b, l2) - pow_int(b, l3 + 1)
                + neg_one_pow(u64::from(l2) + 1) * BigInt::from(i64::from(m) - 2)
        }
        _ => {
            pow_int(b, total) - pow_int(b, l1) - pow_int(b, l2) - pow_int(b, l3)
                + 2 * neg_one_pow(u64::from(total))
        }
    };
    let value = exact_div(&numerator, &BigInt::from(m))?;
    Ok(FormulaResult {
        value: to_natural(value),
        case,
    })
}

/// Dual DP color function: the maximum number of colorings over full
/// `m`-fold covers.
///
/// With `s_i`/`o_i` the aligned/split pair counts and `T = {2, …, t}`:
/// `m·Π_{i∉T} s_i·Π_{i∈T} o_i + m(m-2)·Π o_i + m·Π_{i∉T} o_i·Π_{i∈T} s_i`.
/// Products are formed directly rather than by dividing `S` and `O`, since
/// an aligned count can vanish at `m = 2`.
pub fn dual_dp_generalized(spec: &ThetaSpec, m: u32) -> Result<FormulaResult> {
    if m < 2 {
        return Err(Error::FoldTooSmall { m, min: 2 });
    }
    let counts = pair_table(spec, m)?;
    let t = spec.t();
    let mut twisted_aligned = BigUint::one();
    let mut twisted_split = BigUint::one();
    let mut all_split = BigUint::one();
    for (k, pc) in counts.iter().enumerate() {
        let in_block = (1..t).contains(&k);
        if in_block {
            twisted_aligned *= &pc.split;
            twisted_split *= &pc.aligned;
        } else {
            twisted_aligned *= &pc.aligned;
            twisted_split *= &pc.split;
        }
        all_split *= &pc.split;
    }
    let mm = BigUint::from(m);
    let value = &mm * twisted_aligned + &mm * (m - 2) * all_split + &mm * twisted_split;
    let case = if t == 1 {
        CaseTag::DualUniformParity
    } else {
        CaseTag::DualTwisted
    };
    Ok(FormulaResult { value, case })
}

/// `⌈ m² Π_i (s_i/o_i)^{1/m} o_i ⌉`, evaluated as the exact `m`-th root
/// ceiling of `m^{2m} · S · O^{m-1}`.
pub fn amgm_bound(spec: &ThetaSpec, m: u32) -> Result<BigUint> {
    if m < 3 {
        return Err(Error::FoldTooSmall { m, min: 3 });
    }
    let counts = pair_table(spec, m)?;
    if let Some(path) = counts.iter().position(|pc| pc.split.is_zero()) {
        return Err(Error::VanishingSplitCount { path });
    }
    let aligned: BigUint = counts.iter().map(|pc| &pc.aligned).product();
    let split: BigUint = counts.iter().map(|pc| &pc.split).product();
    let radicand = BigUint::from(m).pow(2 * m) * aligned * split.pow(m - 1);
    Ok(ceil_mth_root(m, &radicand))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficiencyReport {
    pub bound: BigUint,
    pub chromatic: BigUint,
    /// True when the AM-GM bound reaches the chromatic polynomial, which
    /// certifies that the DP color function equals it.
    pub holds: bool,
}

pub fn sufficiency_check(spec: &ThetaSpec, m: u32) -> Result<SufficiencyReport> {
    let bound = amgm_bound(spec, m)?;
    let chromatic = chromatic_poly_theta(spec, m)?;
    Ok(SufficiencyReport {
        holds: bound == chromatic,
        bound,
        chromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ls: &[u32]) -> ThetaSpec {
        ThetaSpec::canonicalize(ls).unwrap()
    }

    /// Proper colorings of an arbitrary small graph by enumeration.
    fn brute_colorings(n: usize, edges: &[(usize, usize)], m: u32) -> u64 {
        let total = (m as u64).pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = vec![0u64; n];
                let mut x = code;
                for slot in c.iter_mut() {
                    *slot = x % m as u64;
                    x /= m as u64;
                }
                edges.iter().all(|&(a, b)| c[a] != c[b])
            })
            .count() as u64
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(chromatic_poly_cycle(3, 3), 6u32.into());
        assert_eq!(chromatic_poly_cycle(4, 3), 18u32.into());
        for m in 1..6 {
            assert_eq!(chromatic_poly_cycle(1, m), 0u32.into());
        }
        let tri = [(0, 1), (1, 2), (2, 0)];
        assert_eq!(brute_colorings(3, &tri, 3), 6);
        let sq = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(brute_colorings(4, &sq, 3), 18);
    }

    #[test]
    fn theta_chromatic_examples() {
        assert_eq!(
            chromatic_poly_theta(&spec(&[2, 3, 3, 3, 2]), 3).unwrap(),
            258u32.into()
        );
        assert_eq!(
            chromatic_poly_theta(&spec(&[1, 2, 2]), 3).unwrap(),
            6u32.into()
        );
        assert_eq!(
            chromatic_poly_theta(&spec(&[2, 2]), 3).unwrap(),
            18u32.into()
        );
        assert_eq!(
            chromatic_poly_theta(&spec(&[2, 2]), 1).unwrap(),
            0u32.into()
        );
    }

    #[test]
    fn theta_chromatic_matches_brute_force() {
        let cases: &[&[u32]] = &[
            &[1, 2, 2],
            &[1, 2, 3],
            &[2, 2, 2],
            &[2, 3, 4],
            &[2, 2, 3, 3],
            &[3, 3],
            &[1, 4],
        ];
        for ls in cases {
            let s = spec(ls);
            let layout = s.vertex_layout();
            for m in 1..5 {
                let brute = brute_colorings(layout.graph.num_vertices(), layout.graph.edges(), m);
                assert_eq!(
                    chromatic_poly_theta(&s, m).unwrap(),
                    BigUint::from(brute),
                    "{s} m={m}"
                );
            }
        }
    }

    #[test]
    fn dp_theta3_examples() {
        let r = dp_theta3(&spec(&[1, 2, 2]), 3).unwrap();
        assert_eq!(
            (r.value, r.case),
            (6u32.into(), CaseTag::Theta3UniqueParity)
        );
        let r = dp_theta3(&spec(&[1, 2, 3]), 3).unwrap();
        assert_eq!(
            (r.value, r.case),
            (15u32.into(), CaseTag::Theta3MixedParity)
        );
        let r = dp_theta3(&spec(&[2, 2, 2]), 3).unwrap();
        assert_eq!((r.value, r.case), (18u32.into(), CaseTag::Theta3SameParity));
    }

    #[test]
    fn dp_theta3_small_folds() {
        let r = dp_theta3(&spec(&[2, 2, 2]), 2).unwrap();
        assert_eq!((r.value, r.case), (0u32.into(), CaseTag::SmallFoldZero));
        let r = dp_theta3(&spec(&[1, 2, 3]), 2).unwrap();
        assert_eq!((r.value, r.case), (0u32.into(), CaseTag::Theta3MixedParity));
        let r = dp_theta3(&spec(&[2, 3, 5]), 1).unwrap();
        assert_eq!((r.value, r.case), (0u32.into(), CaseTag::SmallFoldZero));
        assert!(matches!(
            dp_theta3(&spec(&[2, 2]), 3),
            Err(Error::WrongPathCount { .. })
        ));
    }

    #[test]
    fn case_one_equals_chromatic_for_all_folds() {
        for ls in [[1u32, 2, 2], [2, 3, 3], [3, 4, 4], [2, 5, 3]] {
            let s = spec(&ls);
            if s.t() != 3 {
                continue;
            }
            for m in 1..10 {
                assert_eq!(
                    dp_theta3(&s, m).unwrap().value,
                    chromatic_poly_theta(&s, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn dual_examples() {
        let r = dual_dp_generalized(&spec(&[2, 2]), 3).unwrap();
        assert_eq!(
            (r.value, r.case),
            (18u32.into(), CaseTag::DualUniformParity)
        );
        assert_eq!(
            dual_dp_generalized(&spec(&[2, 3]), 3).unwrap().value,
            33u32.into()
        );
        let r = dual_dp_generalized(&spec(&[2, 3, 3, 3, 2]), 3).unwrap();
        assert_eq!((r.value, r.case), (429u32.into(), CaseTag::DualTwisted));
        assert!(dual_dp_generalized(&spec(&[2, 3]), 1).is_err());
    }

    #[test]
    fn dual_uniform_parity_is_chromatic() {
        for ls in [
            vec![2u32, 2],
            vec![1, 3, 5],
            vec![2, 4, 4, 6],
            vec![3, 3, 3],
        ] {
            let s = spec(&ls);
            for m in 2..8 {
                assert_eq!(
                    dual_dp_generalized(&s, m).unwrap().value,
                    chromatic_poly_theta(&s, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn amgm_examples() {
        assert_eq!(
            amgm_bound(&spec(&[2, 3, 3, 3, 2]), 3).unwrap(),
            258u32.into()
        );
        assert_eq!(amgm_bound(&spec(&[2, 2]), 3).unwrap(), 15u32.into());
        let second = spec(&[2, 3, 3, 3, 3, 3, 2, 2]);
        assert_eq!(
            amgm_bound(&second, 3).unwrap(),
            chromatic_poly_theta(&second, 3).unwrap()
        );
        assert!(matches!(
            amgm_bound(&spec(&[2, 2]), 2),
            Err(Error::FoldTooSmall { .. })
        ));
    }

    #[test]
    fn sufficiency_examples() {
        let r = sufficiency_check(&spec(&[2, 3, 3, 3, 2]), 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.bound, 258u32.into());
        assert!(!sufficiency_check(&spec(&[2, 2]), 3).unwrap().holds);
        assert!(
            sufficiency_check(&spec(&[2, 3, 3, 3, 3, 3, 2, 2]), 3)
                .unwrap()
                .holds
        );
    }
}
