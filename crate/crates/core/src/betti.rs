//! Linear-strand Betti numbers of cochordal edge ideals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_row, is_prime, Natural};
use crate::cochordal::{classify, BlockKind, Classification, TypeSequence};
use crate::error::{Error, Result};
use crate::rings::{chain_params, vertex_count_u64, RingSpec};

/// Largest projective dimension for which a full table is materialized.
pub const MAX_TABLE_DEGREE: u64 = 1 << 15;

/// `β_1..β_pd` of `S/I(G)`; `β_0 = 1` is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    betas: Vec<Natural>,
    linear: bool,
}

impl BettiTable {
    /// Linear table from `β_1, β_2, …`; trailing zeros are dropped.
    pub fn linear(mut betas: Vec<Natural>) -> Self {
        while betas.last().is_some_and(|b| b.is_zero()) {
            betas.pop();
        }
        BettiTable { betas, linear: true }
    }

    pub fn empty() -> Self {
        BettiTable::linear(Vec::new())
    }

    pub fn betas(&self) -> &[Natural] {
        &self.betas
    }

    /// `β_i`, zero outside `1..=pd`.
    pub fn beta(&self, i: usize) -> Natural {
        match i {
            0 => Natural::from(1u32),
            _ => self.betas.get(i - 1).cloned().unwrap_or_default(),
        }
    }

    pub fn pd(&self) -> usize {
        self.betas.len()
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// Regularity: 1 with an edge, 0 when edgeless.
    pub fn regularity(&self) -> usize {
        usize::from(!self.betas.is_empty())
    }

    /// Two-row diagram in the usual `total:` / degree-row layout.
    pub fn diagram(&self) -> String {
        let d = self.pd();
        let one = "1".to_string();
        let cell = |row: usize, col: usize| -> String {
            match (row, col) {
                (0, 0) => one.clone(),
                (1, c) if c >= 1 => self.betas[c - 1].to_string(),
                _ => ".".to_string(),
            }
        };
        let total = |col: usize| if col == 0 { one.clone() } else { self.betas[col - 1].to_string() };
        let rows = if d == 0 { 1 } else { 2 };
        let widths: Vec<usize> = (0..=d)
            .map(|c| {
                let w = (0..rows).map(|r| cell(r, c).len()).max().unwrap_or(1);
                w.max(total(c).len()).max(c.to_string().len())
            })
            .collect();
        let line = |head: &str, f: &dyn Fn(usize) -> String| {
            let cells: Vec<String> = (0..=d).map(|c| format!("{:>w$}", f(c), w = widths[c])).collect();
            format!("{head:>6} {}", cells.join(" "))
        };
        let mut out = vec![line("", &|c| c.to_string()), line("total:", &total)];
        for r in 0..rows {
            out.push(line(&format!("{r}:"), &|c| cell(r, c)));
        }
        out.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.diagram())
    }
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    pd: usize,
    #[serde(with = "crate::serde_big::natural_vec")]
    betas: Vec<Natural>,
    linear: bool,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson { pd: self.pd(), betas: self.betas.clone(), linear: self.linear }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BettiJson::deserialize(d)?;
        if j.pd != j.betas.len() || j.betas.last().is_some_and(|b| b.is_zero()) {
            return Err(D::Error::custom("pd must equal the number of betas, last one nonzero"));
        }
        Ok(BettiTable { betas: j.betas, linear: j.linear })
    }
}

/// `Σ ± coef · C(upper, i + shift)` as a function of `i`.
#[derive(Default)]
struct BinomialSum {
    terms: Vec<(bool, Natural, u64, usize)>,
}

impl BinomialSum {
    fn add(&mut self, coef: impl Into<Natural>, upper: u64, shift: usize) {
        self.terms.push((true, coef.into(), upper, shift));
    }

    fn sub(&mut self, coef: impl Into<Natural>, upper: u64, shift: usize) {
        self.terms.push((false, coef.into(), upper, shift));
    }

    /// Largest `i` any positive term can reach.
    fn top_degree(&self) -> u64 {
        self.terms.iter().filter(|t| t.0).map(|&(_, _, n, s)| n.saturating_sub(s as u64)).max().unwrap_or(0)
    }

    /// `[value(1), …, value(dmax)]`, checking every value is nonnegative.
    fn evaluate(&self, dmax: usize) -> Vec<Natural> {
        let uppers: Vec<u64> = {
            let mut u: Vec<u64> = self.terms.iter().map(|t| t.2).collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        let rows: BTreeMap<u64, Vec<Natural>> =
            uppers.par_iter().map(|&n| (n, binomial_row(n, dmax + 1))).collect();
        (1..=dmax)
            .into_par_iter()
            .map(|i| {
                let mut acc = BigInt::zero();
                for (plus, coef, n, shift) in &self.terms {
                    let b = &rows[n][i + shift];
                    if b.is_zero() {
                        continue;
                    }
                    let v = BigInt::from_biguint(Sign::Plus, coef * b);
                    if *plus {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
                acc.to_biguint().unwrap_or_else(|| panic!("negative Betti number at degree {i}: {acc}"))
            })
            .collect()
    }

    fn table(&self) -> Result<BettiTable> {
        let d = self.top_degree();
        if d > MAX_TABLE_DEGREE {
            return Err(Error::ScaleExceeded {
                what: "homological degrees",
                size: d,
                bound: MAX_TABLE_DEGREE,
            });
        }
        Ok(BettiTable::linear(self.evaluate(d as usize)))
    }
}

fn type_sequence_sum(ts: &TypeSequence) -> BinomialSum {
    let mut sum = BinomialSum::default();
    let mut offset = 0u64;
    for b in &ts.blocks {
        match b.kind {
            BlockKind::Decreasing { first } => sum.add(b.length, first + offset, 0),
            BlockKind::Constant { value } => {
                sum.add(1u32, value + offset + b.length, 1);
                sum.sub(1u32, value + offset, 1);
            }
        }
        offset += b.length;
    }
    sum.sub(1u32, offset, 1);
    sum
}

/// `β_i` from a type sequence via block evaluation and the global correction `C(k, i+1)`.
pub fn eval_type_sequence(ts: &TypeSequence, i: usize) -> Natural {
    assert!(i >= 1, "homological degree starts at 1");
    let sum = type_sequence_sum(ts);
    sum.evaluate(i).pop().unwrap_or_default()
}

/// All Betti numbers determined by a type sequence.
pub fn betti_from_type_sequence(ts: &TypeSequence) -> Result<BettiTable> {
    type_sequence_sum(ts).table()
}

fn pw(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or_else(|| Error::overflow("Betti formula argument"))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not prime")))
    }
}

/// Closed formula for `Γ(Z/p^aZ)`.
pub fn betti_prime_power(p: u64, a: u32) -> Result<BettiTable> {
    check_prime(p)?;
    if a < 2 {
        return Err(Error::invalid("prime power needs a >= 2"));
    }
    betti_chain(p, a)
}

/// Closed formula for `Γ(Z/p^a qZ)`.
pub fn betti_two_prime(p: u64, a: u32, q: u64) -> Result<BettiTable> {
    check_prime(p)?;
    check_prime(q)?;
    if p == q || a < 1 {
        return Err(Error::invalid("two-prime formula needs distinct primes and a >= 1"));
    }
    let m = a.div_ceil(2);
    let mut sum = BinomialSum::default();
    for j in m..a {
        sum.add(pw(p, a - j - 1)? * (p - 1), q * pw(p, j)? - 2, 0);
    }
    for j in 0..m {
        let low = (q - 1) * pw(p, j)?;
        sum.add(1u32, low + pw(p, a - j)? - 1, 1);
        sum.sub(1u32, low + pw(p, a - j - 1)? - 1, 1);
    }
    sum.sub(1u32, pw(p, a)? - 1, 1);
    sum.table()
}

/// Closed formula for `Γ(Z/pqrZ)`, `p < q < r`.
pub fn betti_three_prime(p: u64, q: u64, r: u64) -> Result<BettiTable> {
    for x in [p, q, r] {
        check_prime(x)?;
    }
    if !(p < q && q < r) {
        return Err(Error::invalid(format!("primes must satisfy p < q < r, got {p}, {q}, {r}")));
    }
    let mut sum = BinomialSum::default();
    for (big, small) in [(q * r, p), (p * r, q), (p * q, r)] {
        sum.add(1u32, big + small - 2, 1);
        sum.sub(1u32, big - 1, 1);
    }
    sum.sub(1u32, p + q + r - 3, 1);
    sum.table()
}

/// Closed formula for the layered chain graph `C(q, L)`.
pub fn betti_chain(q: u64, len: u32) -> Result<BettiTable> {
    if q < 2 || len < 2 {
        return Err(Error::invalid("chain formula needs q >= 2 and L >= 2"));
    }
    let mut sum = BinomialSum::default();
    for j in len.div_ceil(2)..len {
        sum.add((q - 1) * pw(q, len - j - 1)?, pw(q, j)? - 2, 0);
    }
    sum.sub(1u32, pw(q, len / 2)? - 1, 1);
    sum.table()
}

/// Betti table of the zero-divisor graph of `spec`.
pub fn betti_table(spec: &RingSpec) -> Result<BettiTable> {
    match *spec {
        RingSpec::ResidueRing { n } => match classify(n)? {
            Classification::PrimeEdgeless { .. } => Ok(BettiTable::empty()),
            Classification::PrimePower { p, a } => betti_prime_power(p, a),
            Classification::TwoPrime { p, a, q } => betti_two_prime(p, a, q),
            Classification::ThreePrimeSquarefree { p, q, r } => betti_three_prime(p, q, r),
            Classification::NotCochordal { n, witness } => Err(Error::NotCochordal { n, witness }),
        },
        _ => {
            let c = chain_params(spec).expect("chain family");
            betti_chain(c.q, c.len)
        }
    }
}

/// Projective dimension from the closed formulas, without building the table.
pub fn projective_dimension(spec: &RingSpec) -> Result<u64> {
    let chain_pd =
        |q: u64, len: u32| -> Result<u64> { Ok(if (q, len) == (2, 2) { 0 } else { pw(q, len - 1)? - 2 }) };
    match *spec {
        RingSpec::ResidueRing { n } => match classify(n)? {
            Classification::PrimeEdgeless { .. } => Ok(0),
            Classification::PrimePower { p, a } => chain_pd(p, a),
            Classification::TwoPrime { p, a, q } => {
                let m = a.div_ceil(2);
                let mut best = 0;
                for j in 0..a {
                    let v = if j >= m { q * pw(p, j)? - 2 } else { (q - 1) * pw(p, j)? + pw(p, a - j)? - 2 };
                    best = best.max(v);
                }
                Ok(best)
            }
            Classification::ThreePrimeSquarefree { p, q, r } => Ok(q * r + p - 3),
            Classification::NotCochordal { n, witness } => Err(Error::NotCochordal { n, witness }),
        },
        _ => {
            let c = chain_params(spec).expect("chain family");
            chain_pd(c.q, c.len)
        }
    }
}

/// `pd`, `reg`, `depth = N - pd` and `N` for a cochordal spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologicalSummary {
    pub pd: u64,
    pub reg: u64,
    pub depth: u64,
    pub vertices: u64,
}

pub fn homological_summary(spec: &RingSpec) -> Result<HomologicalSummary> {
    let pd = projective_dimension(spec)?;
    let vertices = vertex_count_u64(spec)?;
    Ok(HomologicalSummary { pd, reg: u64::from(pd > 0), depth: vertices - pd, vertices })
}
