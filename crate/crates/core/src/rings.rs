//! Ring presentations and their valuation structure.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, factorize, is_prime, Natural};
use crate::error::{Error, Result};

/// One of the supported finite ring presentations.
///
/// Textual form: `zn:<n>`, `gauss:<m>`, `poly:<p>,<c>`, `chain:<q>,<L>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RingSpec {
    /// `Z/nZ`.
    ResidueRing { n: u64 },
    /// `Z_{2^m}[i]`.
    GaussianPower { m: u32 },
    /// `F_p[x]/(x^c)`.
    TruncatedPoly { p: u64, c: u32 },
    /// Abstract chain ring with residue field size `q` and nilpotency index `len`.
    Chain { q: u64, len: u32 },
}

impl RingSpec {
    pub fn residue(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("zn:{n}: need n >= 2")));
        }
        Ok(RingSpec::ResidueRing { n })
    }

    pub fn gaussian(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("gauss:0: need m >= 1"));
        }
        let s = RingSpec::GaussianPower { m };
        chain_params(&s).unwrap().vertex_count_u64()?;
        Ok(s)
    }

    pub fn truncated_poly(p: u64, c: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("poly:{p},{c}: {p} is not prime")));
        }
        if c < 2 {
            return Err(Error::invalid(format!("poly:{p},{c}: need c >= 2")));
        }
        let s = RingSpec::TruncatedPoly { p, c };
        chain_params(&s).unwrap().vertex_count_u64()?;
        Ok(s)
    }

    pub fn chain(q: u64, len: u32) -> Result<Self> {
        if q < 2 || len < 2 {
            return Err(Error::invalid(format!("chain:{q},{len}: need q >= 2 and L >= 2")));
        }
        let s = RingSpec::Chain { q, len };
        chain_params(&s).unwrap().vertex_count_u64()?;
        Ok(s)
    }

    /// Re-checks parameter ranges; useful after deserializing or direct construction.
    pub fn validate(self) -> Result<Self> {
        match self {
            RingSpec::ResidueRing { n } => RingSpec::residue(n),
            RingSpec::GaussianPower { m } => RingSpec::gaussian(m),
            RingSpec::TruncatedPoly { p, c } => RingSpec::truncated_poly(p, c),
            RingSpec::Chain { q, len } => RingSpec::chain(q, len),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingSpec::ResidueRing { n } => write!(f, "zn:{n}"),
            RingSpec::GaussianPower { m } => write!(f, "gauss:{m}"),
            RingSpec::TruncatedPoly { p, c } => write!(f, "poly:{p},{c}"),
            RingSpec::Chain { q, len } => write!(f, "chain:{q},{len}"),
        }
    }
}

fn parse_num<T: FromStr>(s: &str, whole: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?} in ring spec {whole:?}")))
}

fn parse_pair<A: FromStr, B: FromStr>(s: &str, whole: &str) -> Result<(A, B)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected two comma-separated values in {whole:?}")))?;
    Ok((parse_num(a, whole)?, parse_num(b, whole)?))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) =
            s.trim().split_once(':').ok_or_else(|| Error::Parse(format!("ring spec {s:?} lacks a ':'")))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "zn" => RingSpec::residue(parse_num(rest, s)?),
            "gauss" => RingSpec::gaussian(parse_num(rest, s)?),
            "poly" => {
                let (p, c) = parse_pair(rest, s)?;
                RingSpec::truncated_poly(p, c)
            }
            "chain" => {
                let (q, l) = parse_pair(rest, s)?;
                RingSpec::chain(q, l)
            }
            other => {
                Err(Error::Parse(format!("unknown ring family {other:?}; expected zn, gauss, poly or chain")))
            }
        }
    }
}

impl TryFrom<String> for RingSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RingSpec> for String {
    fn from(s: RingSpec) -> String {
        s.to_string()
    }
}

/// Universal chain parameters `(q, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainParams {
    pub q: u64,
    #[serde(rename = "L")]
    pub len: u32,
}

impl ChainParams {
    pub fn new(q: u64, len: u32) -> Result<Self> {
        if q < 2 || len < 2 {
            return Err(Error::invalid(format!("chain parameters ({q},{len}) need q, L >= 2")));
        }
        Ok(ChainParams { q, len })
    }

    /// `q^{L-1} - 1` when it fits in 64 bits.
    pub fn vertex_count_u64(&self) -> Result<u64> {
        checked_pow(self.q, self.len - 1)
            .map(|v| v - 1)
            .ok_or_else(|| Error::overflow(&format!("q^(L-1) for ({},{})", self.q, self.len)))
    }

    /// `|V_k| = (q-1) q^{L-k-1}` for `1 ≤ k ≤ L-1`.
    pub fn layer_size_u64(&self, k: u32) -> Result<u64> {
        assert!(k >= 1 && k < self.len, "layer {k} out of range");
        checked_pow(self.q, self.len - k - 1)
            .and_then(|v| v.checked_mul(self.q - 1))
            .ok_or_else(|| Error::overflow("layer size"))
    }
}

pub fn chain_params(spec: &RingSpec) -> Option<ChainParams> {
    match *spec {
        RingSpec::GaussianPower { m } => Some(ChainParams { q: 2, len: 2 * m }),
        RingSpec::TruncatedPoly { p, c } => Some(ChainParams { q: p, len: c }),
        RingSpec::Chain { q, len } => Some(ChainParams { q, len }),
        RingSpec::ResidueRing { n } => {
            let f = factorize(n).ok()?;
            match f.factors() {
                &[(p, a)] if a >= 2 => Some(ChainParams { q: p, len: a }),
                _ => None,
            }
        }
    }
}

pub fn layer_sizes(params: ChainParams) -> Vec<Natural> {
    let q = Natural::from(params.q);
    (1..params.len).map(|k| (&q - 1u32) * q.pow(params.len - k - 1)).collect()
}

/// A valuation class `C(e)` of nonzero zero-divisors of `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationClass {
    pub exponents: Vec<u32>,
    #[serde(with = "crate::serde_big::natural")]
    pub size: Natural,
    /// Canonical divisor `∏ p_t^{e_t}`.
    pub label: u64,
}

/// All zero-divisor valuation classes of `Z/nZ`, ordered by label.
pub fn valuation_classes(n: u64) -> Result<Vec<ValuationClass>> {
    let f = factorize(n)?;
    let bounds: Vec<u32> = f.exponents().collect();
    let primes: Vec<u64> = f.primes().collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; bounds.len()];
    loop {
        let any_pos = e.iter().any(|&x| x > 0);
        let all_max = e == bounds;
        if any_pos && !all_max {
            let mut size = Natural::one();
            let mut label = 1u64;
            for t in 0..e.len() {
                let (p, a, et) = (primes[t], bounds[t], e[t]);
                label *= p.pow(et);
                if et < a {
                    size *= Natural::from(p).pow(a - et - 1) * (p - 1);
                }
            }
            out.push(ValuationClass { exponents: e.clone(), size, label });
        }
        // odometer increment
        let mut t = 0;
        loop {
            if t == e.len() {
                out.sort_by_key(|c| c.label);
                return Ok(out);
            }
            if e[t] < bounds[t] {
                e[t] += 1;
                break;
            }
            e[t] = 0;
            t += 1;
        }
    }
}

/// Exponent vector `(ν_t(x))_t` of a residue, capped at `α_t`.
pub fn valuation_vector(x: u64, n: u64) -> Result<Vec<u32>> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, a)| {
            if x == 0 {
                return a;
            }
            let mut v = 0;
            let mut y = x;
            while y.is_multiple_of(p) && v < a {
                y /= p;
                v += 1;
            }
            v
        })
        .collect())
}

/// Nonzero zero-divisors of `Z/nZ` in ascending order.
pub fn zero_divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    if f.len() == 1 && f.exponents().next() == Some(1) {
        return Ok(Vec::new());
    }
    let mut out: Vec<u64> = f.primes().flat_map(|p| (p..n).step_by(p as usize)).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Number of nonzero zero-divisors.
pub fn vertex_count(spec: &RingSpec) -> Natural {
    match *spec {
        RingSpec::ResidueRing { n } => {
            let f = factorize(n).expect("validated spec");
            Natural::from(n - f.totient() - 1)
        }
        _ => {
            let c = chain_params(spec).expect("chain family");
            Natural::from(c.q).pow(c.len - 1) - 1u32
        }
    }
}

pub(crate) fn vertex_count_u64(spec: &RingSpec) -> Result<u64> {
    let v = vertex_count(spec);
    u64::try_from(&v).map_err(|_| Error::overflow("vertex count"))
}
