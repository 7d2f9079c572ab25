#![allow(dead_code)]

use zdgraph::{classify, vertex_count, Natural, RingSpec};

/// Every cochordal spec with at most `max_vertices` vertices, moduli up to `max_n`.
pub fn cochordal_specs(max_n: u64, max_vertices: u64) -> Vec<RingSpec> {
    let bound = Natural::from(max_vertices);
    let mut out: Vec<RingSpec> = (2..=max_n)
        .filter(|&n| classify(n).unwrap().is_cochordal())
        .map(|n| RingSpec::ResidueRing { n })
        .collect();
    for q in 2..=max_vertices + 1 {
        for len in 2..=16u32 {
            out.extend(RingSpec::chain(q, len));
            out.extend(RingSpec::truncated_poly(q, len));
        }
    }
    out.extend((1..=8).map(|m| RingSpec::GaussianPower { m }));
    out.retain(|s| vertex_count(s) <= bound);
    out
}

pub fn spec(s: &str) -> RingSpec {
    s.parse().unwrap()
}

pub const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
