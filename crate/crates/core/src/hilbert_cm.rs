//! Hilbert series, independence data and Cohen–Macaulay status.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, binomial_row, Natural};
use crate::betti::{betti_table, homological_summary, BettiTable};
use crate::error::{Error, Result};
use crate::graph::{build_graph, SimpleGraph, VertexLabel, MAX_BUILD_VERTICES};
use crate::rings::{chain_params, vertex_count_u64, ChainParams, RingSpec};

/// Largest twin quotient enumerated when computing maximal independent sets.
pub const MAX_QUOTIENT_CLASSES: usize = 64;

/// `numerator(t) / (1-t)^denom_exponent`, kept unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<BigInt>,
    pub denom_exponent: u64,
}

/// Series after cancelling every factor `(1-t)` from the numerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSeries {
    #[serde(with = "crate::serde_big::integer_vec")]
    pub numerator: Vec<BigInt>,
    pub pole_order: u64,
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Multiplies a polynomial by `(1 - t)` in place.
fn times_one_minus_t(p: &mut Vec<BigInt>) {
    p.push(BigInt::zero());
    for k in (1..p.len()).rev() {
        let prev = p[k - 1].clone();
        p[k] -= prev;
    }
}

fn times_one_minus_t_pow(p: &[BigInt], e: u64) -> Vec<BigInt> {
    let row = binomial_row(e, e as usize);
    let mut out = vec![BigInt::zero(); p.len() + e as usize];
    for (k, c) in row.into_iter().enumerate() {
        let c = BigInt::from_biguint(if k % 2 == 0 { Sign::Plus } else { Sign::Minus }, c);
        for (j, a) in p.iter().enumerate() {
            if !a.is_zero() {
                out[j + k] += &c * a;
            }
        }
    }
    trim(out)
}

impl HilbertSeries {
    /// Divides out `(1-t)` while the numerator vanishes at `t = 1`.
    pub fn reduce(&self) -> ReducedSeries {
        let mut num = self.numerator.clone();
        let mut pole = self.denom_exponent;
        while pole > 0 && num.iter().sum::<BigInt>().is_zero() && num.iter().any(|c| !c.is_zero()) {
            let mut acc = BigInt::zero();
            let mut q = Vec::with_capacity(num.len());
            for c in &num {
                acc += c;
                q.push(acc.clone());
            }
            debug_assert!(q.last().unwrap().is_zero());
            q.pop();
            num = trim(q);
            pole -= 1;
        }
        ReducedSeries { numerator: num, pole_order: pole }
    }

    /// Coefficient of `t^2`, which is minus the edge count.
    pub fn t2_coefficient(&self) -> BigInt {
        self.numerator.get(2).cloned().unwrap_or_default()
    }
}

/// Renders `Σ c_k t^k` as `1 - 2t^2 + t^3`.
pub fn render_polynomial(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if mag.is_one() && k > 0 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_rational(num: &[BigInt], pole: u64) -> String {
    let p = render_polynomial(num);
    match pole {
        0 => p,
        1 => format!("({p})/(1-t)"),
        e => format!("({p})/(1-t)^{e}"),
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.numerator, self.denom_exponent))
    }
}

impl fmt::Display for ReducedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.numerator, self.pole_order))
    }
}

#[derive(Serialize, Deserialize)]
struct HilbertJson {
    #[serde(with = "crate::serde_big::integer_vec")]
    numerator: Vec<BigInt>,
    denom_exponent: u64,
    reduced: ReducedSeries,
}

impl Serialize for HilbertSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HilbertJson {
            numerator: self.numerator.clone(),
            denom_exponent: self.denom_exponent,
            reduced: self.reduce(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = HilbertJson::deserialize(d)?;
        let h = HilbertSeries { numerator: j.numerator, denom_exponent: j.denom_exponent };
        if h.reduce() != j.reduced {
            return Err(D::Error::custom("reduced form does not match the numerator"));
        }
        Ok(h)
    }
}

/// Numerator `1 + Σ (-1)^h β_h t^{h+1}` over `(1-t)^N`.
pub fn hilbert_from_betti(bt: &BettiTable, vertices: u64) -> HilbertSeries {
    let mut numerator = vec![BigInt::one()];
    if bt.pd() > 0 {
        numerator.push(BigInt::zero());
        for (h, b) in bt.betas().iter().enumerate() {
            let sign = if h % 2 == 0 { Sign::Minus } else { Sign::Plus };
            numerator.push(BigInt::from_biguint(sign, b.clone()));
        }
    }
    HilbertSeries { numerator, denom_exponent: vertices }
}

pub fn hilbert_series(spec: &RingSpec) -> Result<HilbertSeries> {
    Ok(hilbert_from_betti(&betti_table(spec)?, vertex_count_u64(spec)?))
}

/// Monomials of degree `d` in `n` variables.
fn monomials(n: u64, d: u64) -> Natural {
    match (n, d) {
        (_, 0) => Natural::one(),
        (0, _) => Natural::zero(),
        _ => binomial(n + d - 1, d as i64),
    }
}

/// `dim_K (S/I)_d`.
pub fn hilbert_function(spec: &RingSpec, d: u64) -> Result<Natural> {
    let bt = betti_table(spec)?;
    let n = vertex_count_u64(spec)?;
    let mut acc = BigInt::from_biguint(Sign::Plus, monomials(n, d));
    for i in 1..d.min(bt.pd() as u64 + 1) {
        let term = BigInt::from_biguint(Sign::Plus, bt.beta(i as usize) * monomials(n, d - i - 1));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc.to_biguint().expect("Hilbert function is nonnegative"))
}

/// `F(y) = Σ f_{r-1} y^r`, indexed by independent-set size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependencePolynomial {
    #[serde(with = "crate::serde_big::natural_vec")]
    pub coefficients: Vec<Natural>,
}

impl IndependencePolynomial {
    pub fn alpha(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn render(&self) -> String {
        let ints: Vec<BigInt> =
            self.coefficients.iter().map(|c| BigInt::from_biguint(Sign::Plus, c.clone())).collect();
        render_polynomial(&ints).replace('t', "y")
    }
}

/// Expanded independence polynomial of `C(q, L)` from the layer decomposition.
pub fn independence_polynomial_chain(params: ChainParams) -> Result<IndependencePolynomial> {
    let n = params.vertex_count_u64()?;
    if n > MAX_BUILD_VERTICES {
        return Err(Error::too_many_vertices(n, MAX_BUILD_VERTICES));
    }
    let len = params.len;
    let sizes: Vec<u64> = (1..len).map(|k| params.layer_size_u64(k)).collect::<Result<_>>()?;
    let mut coeffs = vec![Natural::zero(); n as usize + 1];
    coeffs[0] = Natural::one();
    for s in 1..len {
        let ns = sizes[s as usize - 1];
        let free: u64 = (1..=(s - 1).min(len - s - 1)).map(|k| sizes[k as usize - 1]).sum();
        if 2 * s < len {
            for (r, c) in binomial_row(ns + free, (ns + free) as usize).into_iter().enumerate() {
                coeffs[r] += c;
            }
            for (r, c) in binomial_row(free, free as usize).into_iter().enumerate() {
                coeffs[r] -= c;
            }
        } else {
            for (r, c) in binomial_row(free, free as usize).into_iter().enumerate() {
                coeffs[r + 1] += c * ns;
            }
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(IndependencePolynomial { coefficients: coeffs })
}

/// Numerator `Σ_r f_{r-1} t^r (1-t)^{N-r}` over `(1-t)^N`.
pub fn hilbert_from_independence(f: &IndependencePolynomial, vertices: u64) -> Result<HilbertSeries> {
    let alpha = f.alpha() as u64;
    if alpha > vertices {
        return Err(Error::invalid(format!("degree {alpha} exceeds {vertices} variables")));
    }
    // Σ_{s≤k} f_s t^s (1-t)^{k-s}, built up one degree at a time
    let mut acc = vec![BigInt::from_biguint(Sign::Plus, f.coefficients[0].clone())];
    for (k, c) in f.coefficients.iter().enumerate().skip(1) {
        times_one_minus_t(&mut acc);
        acc.resize(acc.len().max(k + 1), BigInt::zero());
        acc[k] += BigInt::from_biguint(Sign::Plus, c.clone());
    }
    let numerator = times_one_minus_t_pow(&trim(acc), vertices - alpha);
    Ok(HilbertSeries { numerator, denom_exponent: vertices })
}

/// Maximal independent set sizes with multiplicities, computed on the twin quotient.
pub fn maximal_independent_set_sizes(g: &SimpleGraph) -> Result<BTreeMap<u64, Natural>> {
    let classes = g.twin_classes();
    let k = classes.len();
    if k > MAX_QUOTIENT_CLASSES {
        return Err(Error::ScaleExceeded {
            what: "twin classes",
            size: k as u64,
            bound: MAX_QUOTIENT_CLASSES as u64,
        });
    }
    let mut quotient = SimpleGraph::edgeless((0..k as u64).map(VertexLabel::Residue).collect());
    for a in 0..k {
        for b in a + 1..k {
            if g.has_edge(classes[a].members[0], classes[b].members[0]) {
                quotient.add_edge(a, b);
            }
        }
    }
    let mut sizes: BTreeMap<u64, Natural> = BTreeMap::new();
    if k == 0 {
        sizes.insert(0, Natural::one());
        return Ok(sizes);
    }
    quotient.for_each_maximal_independent_set(|set| {
        let mut size = 0u64;
        let mut count = Natural::one();
        for c in set.ones() {
            let m = classes[c].members.len() as u64;
            if classes[c].clique {
                size += 1;
                count *= m;
            } else {
                size += m;
            }
        }
        *sizes.entry(size).or_default() += count;
    });
    Ok(sizes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionData {
    pub alpha: u64,
    pub height: u64,
    pub dim: u64,
}

fn chain_alpha(c: ChainParams) -> Result<u64> {
    let pw = |e: u32| c.q.checked_pow(e).ok_or_else(|| Error::overflow("independence number"));
    let a = c.len / 2;
    Ok(if c.len.is_multiple_of(2) { pw(2 * a - 1)? - pw(a)? + 1 } else { pw(2 * a)? - pw(a)? })
}

/// Independence number, height `N - α` and Krull dimension `α`.
pub fn alpha_height_dim(spec: &RingSpec) -> Result<DimensionData> {
    let vertices = vertex_count_u64(spec)?;
    let alpha = match chain_params(spec) {
        Some(c) => chain_alpha(c)?,
        None if vertices == 0 => 0,
        None => {
            let g = build_graph(spec)?;
            maximal_independent_set_sizes(&g)?.keys().copied().max().unwrap_or(0)
        }
    };
    Ok(DimensionData { alpha, height: vertices - alpha, dim: alpha })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmStatus {
    pub cohen_macaulay: bool,
    /// Absent when the graph is too large to enumerate maximal independent sets.
    pub unmixed: Option<bool>,
    pub depth: u64,
    pub dim: u64,
    pub height: u64,
    pub pd: u64,
    pub vertices: u64,
}

impl fmt::Display for CmStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(f, "depth {}, dim {}, CM: {}", self.depth, self.dim, yn(self.cohen_macaulay))
    }
}

pub fn cm_status(spec: &RingSpec) -> Result<CmStatus> {
    let h = homological_summary(spec)?;
    let d = alpha_height_dim(spec)?;
    let unmixed = match build_graph(spec) {
        Ok(g) => match maximal_independent_set_sizes(&g) {
            Ok(sizes) => Some(sizes.len() <= 1),
            Err(Error::ScaleExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
        Err(Error::ScaleExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CmStatus {
        cohen_macaulay: h.depth == d.dim,
        unmixed,
        depth: h.depth,
        dim: d.dim,
        height: d.height,
        pd: h.pd,
        vertices: h.vertices,
    })
}

/// Number of facets of maximal dimension for `Z_{2^m}[i]`, namely `|V_m| = 2^{m-1}`.
pub fn gaussian_top_facet_count(m: u32) -> Result<Natural> {
    if m < 1 {
        return Err(Error::invalid("need m >= 1"));
    }
    Ok(Natural::one() << (m - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn nats(v: &[u64]) -> Vec<Natural> {
        v.iter().map(|&x| Natural::from(x)).collect()
    }

    fn spec(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn betti_numerators() {
        let h = hilbert_series(&spec("gauss:2")).unwrap();
        assert_eq!(h.numerator, ints(&[1, 0, -7, 16, -20, 15, -6, 1]));
        assert_eq!(h.denom_exponent, 7);
        let h = hilbert_series(&spec("zn:8")).unwrap();
        assert_eq!(h.to_string(), "(1 - 2t^2 + t^3)/(1-t)^3");
        let h = hilbert_series(&spec("poly:2,3")).unwrap();
        assert_eq!(h.numerator, ints(&[1, 0, -2, 1]));
        let h = hilbert_series(&spec("zn:7")).unwrap();
        assert_eq!((h.numerator.clone(), h.denom_exponent), (ints(&[1]), 0));
        assert_eq!(h.to_string(), "1");
    }

    #[test]
    fn reduction_has_pole_order_alpha() {
        for s in ["zn:8", "gauss:2", "zn:12", "zn:30", "chain:3,4", "zn:9", "zn:7", "chain:2,2"] {
            let sp = spec(s);
            let r = hilbert_series(&sp).unwrap().reduce();
            assert_eq!(r.pole_order, alpha_height_dim(&sp).unwrap().alpha, "{s}");
        }
        let r = hilbert_series(&spec("zn:8")).unwrap().reduce();
        assert_eq!(r.numerator, ints(&[1, 1, -1]));
        assert_eq!(r.to_string(), "(1 + t - t^2)/(1-t)^2");
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(hilbert_function(&spec("zn:12"), 0).unwrap(), Natural::from(1u32));
        assert_eq!(hilbert_function(&spec("zn:12"), 1).unwrap(), Natural::from(7u32));
        assert_eq!(hilbert_function(&spec("zn:12"), 2).unwrap(), Natural::from(20u32));
        assert_eq!(hilbert_function(&spec("zn:13"), 3).unwrap(), Natural::zero());
        assert_eq!(hilbert_function(&spec("poly:2,2"), 4).unwrap(), Natural::one());
        assert_eq!(hilbert_function(&spec("zn:8"), 3).unwrap(), Natural::from(5u32));
    }

    #[test]
    fn chain_independence_polynomials() {
        let p = |q, l| independence_polynomial_chain(ChainParams::new(q, l).unwrap()).unwrap();
        assert_eq!(p(2, 4).coefficients, nats(&[1, 7, 14, 16, 9, 2]));
        assert_eq!(p(2, 3).coefficients, nats(&[1, 3, 1]));
        for q in 2..=13 {
            assert_eq!(p(q, 2).coefficients, nats(&[1, q - 1]));
        }
        assert_eq!(p(2, 4).render(), "1 + 7y + 14y^2 + 16y^3 + 9y^4 + 2y^5");
    }

    #[test]
    fn independence_numerators() {
        let f = independence_polynomial_chain(ChainParams::new(2, 4).unwrap()).unwrap();
        let h = hilbert_from_independence(&f, 7).unwrap();
        assert_eq!(h, hilbert_series(&spec("gauss:2")).unwrap());
        let one = IndependencePolynomial { coefficients: nats(&[1]) };
        assert_eq!(hilbert_from_independence(&one, 3).unwrap().numerator, ints(&[1, -3, 3, -1]));
        let f = independence_polynomial_chain(ChainParams::new(2, 3).unwrap()).unwrap();
        assert_eq!(hilbert_from_independence(&f, 3).unwrap().numerator, ints(&[1, 0, -2, 1]));
        assert!(hilbert_from_independence(&f, 1).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(alpha_height_dim(&spec("chain:3,4")).unwrap().alpha, 19);
        let d = alpha_height_dim(&spec("gauss:4")).unwrap();
        assert_eq!((d.height, d.dim), (14, 113));
        assert_eq!(alpha_height_dim(&spec("poly:2,3")).unwrap().dim, 2);
        assert_eq!(alpha_height_dim(&spec("zn:15")).unwrap().alpha, 4);
        assert_eq!(alpha_height_dim(&spec("zn:30")).unwrap().alpha, 16);
        assert_eq!(alpha_height_dim(&spec("zn:11")).unwrap().alpha, 0);
    }

    #[test]
    fn twin_route_matches_enumeration() {
        for n in 4..=40u64 {
            let g = build_graph(&RingSpec::ResidueRing { n }).unwrap();
            if g.vertex_count() > 20 {
                continue;
            }
            let direct = g.independence_profile(24).unwrap().maximal_set_sizes;
            let quotient = maximal_independent_set_sizes(&g).unwrap();
            let expect: BTreeMap<u64, Natural> =
                direct.into_iter().map(|(k, v)| (k as u64, Natural::from(v))).collect();
            assert_eq!(quotient, expect, "n={n}");
        }
    }

    #[test]
    fn cm_examples() {
        let c = cm_status(&spec("zn:9")).unwrap();
        assert!(c.cohen_macaulay);
        assert_eq!(c.unmixed, Some(true));
        let c = cm_status(&spec("gauss:2")).unwrap();
        assert_eq!((c.cohen_macaulay, c.depth, c.dim), (false, 1, 5));
        assert!(cm_status(&spec("poly:3,2")).unwrap().cohen_macaulay);
        assert_eq!(cm_status(&spec("gauss:3")).unwrap().to_string(), "depth 1, dim 25, CM: no");
        let c = cm_status(&spec("zn:15")).unwrap();
        assert_eq!((c.cohen_macaulay, c.unmixed), (false, Some(false)));
        assert!(matches!(cm_status(&spec("zn:36")), Err(Error::NotCochordal { .. })));
    }

    #[test]
    fn facet_counts() {
        assert_eq!(gaussian_top_facet_count(2).unwrap(), Natural::from(2u32));
        assert_eq!(gaussian_top_facet_count(1).unwrap(), Natural::one());
        assert_eq!(gaussian_top_facet_count(4).unwrap(), Natural::from(8u32));
        assert!(gaussian_top_facet_count(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = hilbert_series(&spec("zn:8")).unwrap();
        let js = serde_json::to_value(&h).unwrap();
        assert_eq!(
            js,
            serde_json::json!({
                "numerator": ["1", "0", "-2", "1"],
                "denom_exponent": 3,
                "reduced": {"numerator": ["1", "1", "-1"], "pole_order": 2}
            })
        );
        assert_eq!(serde_json::from_value::<HilbertSeries>(js).unwrap(), h);
    }
}
