#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use theta_dp::graph::Graph;
use theta_dp::perm::Perm;
use theta_dp::signature::Signature;
use theta_dp::theta::ThetaSpec;

/// Every canonical spec with `n` paths of lengths in `1..=max_len`.
pub fn canonical_specs(n: usize, max_len: u32) -> Vec<ThetaSpec> {
    (1..=max_len)
        .combinations_with_replacement(n)
        .filter_map(|ls| ThetaSpec::canonicalize(&ls).ok())
        .collect()
}

/// Proper colorings of `g` with `m` colors, by plain backtracking.
pub fn brute_colorings(g: &Graph, m: usize) -> u64 {
    fn go(g: &Graph, m: usize, v: usize, colors: &mut Vec<usize>) -> u64 {
        if v == g.num_vertices() {
            return 1;
        }
        let mut total = 0;
        for c in 0..m {
            let clash = (0..v).any(|w| colors[w] == c && g.has_edge(v, w));
            if !clash {
                colors.push(c);
                total += go(g, m, v + 1, colors);
                colors.pop();
            }
        }
        total
    }
    go(g, m, 0, &mut Vec::with_capacity(g.num_vertices()))
}

pub fn random_perm<R: Rng>(rng: &mut R, size: usize) -> Perm {
    let mut images: Vec<usize> = (0..size).collect();
    images.shuffle(rng);
    Perm::new(images).unwrap()
}

pub fn random_signature<R: Rng>(rng: &mut R, n: usize, m: usize) -> Signature {
    Signature::new((0..n).map(|_| random_perm(rng, m)).collect()).unwrap()
}

/// A random spec whose graph has at most `max_vertices` vertices.
pub fn random_spec<R: Rng>(rng: &mut R, max_vertices: usize) -> ThetaSpec {
    loop {
        let n = rng.gen_range(2..=5);
        let mut ls: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=5)).collect();
        if rng.gen_bool(0.25) {
            ls[0] = 1;
        }
        if let Ok(spec) = ThetaSpec::canonicalize(&ls) {
            if spec.num_vertices() <= max_vertices {
                return spec;
            }
        }
    }
}
