//! Cochordality classification, obstruction witnesses, type sequences and
//! constructible systems.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, PrimeFactorization};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexLabel, MAX_BUILD_VERTICES};
use crate::rings::{chain_params, vertex_count_u64, zero_divisors, ChainParams, RingSpec};

/// Two edges `{x,y}`, `{u,v}` forming an induced matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub first: [u64; 2],
    pub second: [u64; 2],
}

impl Witness {
    /// Checks the witness directly against the edge rule of `Z/nZ`.
    pub fn validates_in(&self, n: u64) -> bool {
        let [x, y] = self.first;
        let [u, v] = self.second;
        let all = [x, y, u, v];
        let adj = |a: u64, b: u64| (a as u128 * b as u128).is_multiple_of(n as u128);
        let zd = |a: u64| a > 0 && a < n && gcd(a, n) > 1;
        all.iter().all(|&a| zd(a))
            && (0..4).all(|i| (i + 1..4).all(|j| all[i] != all[j]))
            && adj(x, y)
            && adj(u, v)
            && [x, y].iter().all(|&a| !adj(a, u) && !adj(a, v))
    }

    /// Checks the witness inside a built graph.
    pub fn validates_in_graph(&self, g: &SimpleGraph) -> bool {
        let idx = |x| g.index_of(&VertexLabel::Residue(x));
        match (idx(self.first[0]), idx(self.first[1]), idx(self.second[0]), idx(self.second[1])) {
            (Some(a), Some(b), Some(c), Some(d)) => g.is_induced_matching((a, b), (c, d)),
            _ => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}},{{{},{}}}", self.first[0], self.first[1], self.second[0], self.second[1])
    }
}

/// Arithmetic shape of `n` deciding whether `Γ(Z/nZ)` is cochordal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    PrimeEdgeless {
        p: u64,
    },
    PrimePower {
        p: u64,
        a: u32,
    },
    /// `n = p^a q`; for squarefree `pq`, `p` is the smaller prime.
    TwoPrime {
        p: u64,
        a: u32,
        q: u64,
    },
    ThreePrimeSquarefree {
        p: u64,
        q: u64,
        r: u64,
    },
    NotCochordal {
        n: u64,
        witness: Witness,
    },
}

impl Classification {
    pub fn is_cochordal(&self) -> bool {
        !matches!(self, Classification::NotCochordal { .. })
    }
}

fn power(p: u64, a: u32) -> String {
    if a == 1 {
        p.to_string()
    } else {
        format!("{p}^{a}")
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Classification::PrimeEdgeless { .. } => write!(f, "prime: edgeless graph"),
            Classification::PrimePower { p, a } => {
                write!(f, "cochordal: p^a form ({})", power(p, a))
            }
            Classification::TwoPrime { p, a, q } => {
                write!(f, "cochordal: p^a q form ({}·{q})", power(p, a))
            }
            Classification::ThreePrimeSquarefree { p, q, r } => {
                write!(f, "cochordal: pqr form ({p}·{q}·{r})")
            }
            Classification::NotCochordal { witness, .. } => {
                write!(f, "not cochordal; witness {witness}")
            }
        }
    }
}

fn cochordal_shape(f: &PrimeFactorization) -> Option<Classification> {
    match *f.factors() {
        [(p, 1)] => Some(Classification::PrimeEdgeless { p }),
        [(p, a)] => Some(Classification::PrimePower { p, a }),
        [(p, 1), (q, 1)] => Some(Classification::TwoPrime { p, a: 1, q }),
        [(p, a), (q, 1)] | [(q, 1), (p, a)] => Some(Classification::TwoPrime { p, a, q }),
        [(p, 1), (q, 1), (r, 1)] => Some(Classification::ThreePrimeSquarefree { p, q, r }),
        _ => None,
    }
}

pub fn classify(n: u64) -> Result<Classification> {
    let f = factorize(n)?;
    match cochordal_shape(&f) {
        Some(c) => Ok(c),
        None => Ok(Classification::NotCochordal { n, witness: obstruction_witness(&f)? }),
    }
}

/// Explicit induced 2K2 in `Γ(Z/nZ)` for a non-cochordal factorization.
pub fn obstruction_witness(f: &PrimeFactorization) -> Result<Witness> {
    if cochordal_shape(f).is_some() {
        return Err(Error::invalid(format!("{f} has a cochordal shape; no obstruction exists")));
    }
    let pp: Vec<u64> = f.factors().iter().map(|&(p, a)| p.pow(a)).collect();
    let w = |x, y, u, v| Witness { first: [x, y], second: [u, v] };
    let witness = match f.len() {
        s if s >= 4 => {
            let m: u64 = pp[4..].iter().product();
            w(pp[0] * pp[1] * m, pp[2] * pp[3] * m, pp[0] * pp[2] * m, pp[1] * pp[3] * m)
        }
        3 => {
            let t = f.exponents().position(|a| a > 1).expect("some exponent exceeds one");
            let (p, a) = f.factors()[t];
            let others: Vec<usize> = (0..3).filter(|&i| i != t).collect();
            let (qb, rc) = (pp[others[0]], pp[others[1]]);
            w(p.pow(a), qb * rc, p.pow(a - 1) * qb, p * rc)
        }
        2 => {
            let [(p, a), (q, b)] = [f.factors()[0], f.factors()[1]];
            if (a, b) == (2, 2) {
                let c = (2..).find(|&c| gcd(c, p * q) == 1).expect("a unit exists");
                w(p * p, q * q, p * q, c * p * q)
            } else {
                w(p.pow(a), q.pow(b), p.pow(a - 1) * q.pow(b - 1), p * q)
            }
        }
        _ => unreachable!("single prime powers are cochordal"),
    };
    debug_assert!(witness.validates_in(f.value()), "{witness} for {f}");
    Ok(witness)
}

/// True when a valuation class of `Z/nZ` induces a clique.
pub fn same_class_clique(n: u64, e: &[u32]) -> Result<bool> {
    let f = factorize(n)?;
    let bounds: Vec<u32> = f.exponents().collect();
    if e.len() != bounds.len()
        || e.iter().zip(&bounds).any(|(x, a)| x > a)
        || e.iter().all(|&x| x == 0)
        || e == bounds.as_slice()
    {
        return Err(Error::invalid(format!("{e:?} is not a zero-divisor class of {n}")));
    }
    Ok(e.iter().zip(&bounds).all(|(&x, &a)| 2 * x >= a))
}

/// Shape of one block of a type sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// Entries `first, first-1, …`.
    Decreasing { first: u64 },
    /// All entries equal.
    Constant { value: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeBlock {
    #[serde(flatten)]
    pub kind: BlockKind,
    pub length: u64,
}

impl TypeBlock {
    pub fn decreasing(first: u64, length: u64) -> Self {
        assert!(length >= 1 && first + 1 >= length, "decreasing block would go negative");
        TypeBlock { kind: BlockKind::Decreasing { first }, length }
    }

    pub fn constant(value: u64, length: u64) -> Self {
        assert!(length >= 1, "empty block");
        TypeBlock { kind: BlockKind::Constant { value }, length }
    }

    pub fn entry(&self, t: u64) -> u64 {
        match self.kind {
            BlockKind::Decreasing { first } => first - t,
            BlockKind::Constant { value } => value,
        }
    }

    pub fn last(&self) -> u64 {
        self.entry(self.length - 1)
    }
}

/// Cover sizes `(a_k, …, a_1)`, left to right, grouped into blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSequence {
    pub blocks: Vec<TypeBlock>,
}

impl TypeSequence {
    pub fn new(blocks: Vec<TypeBlock>) -> Self {
        TypeSequence { blocks }
    }

    /// Number of center steps.
    pub fn k(&self) -> u64 {
        self.blocks.iter().map(|b| b.length).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.blocks.iter().flat_map(|b| (0..b.length).map(move |t| b.entry(t)))
    }

    /// Drops trailing zero entries.
    pub fn normalized(&self) -> TypeSequence {
        let mut blocks = self.blocks.clone();
        while let Some(last) = blocks.last_mut() {
            if last.last() != 0 {
                break;
            }
            last.length -= 1;
            if last.length == 0 {
                blocks.pop();
            }
        }
        TypeSequence { blocks }
    }
}

impl fmt::Display for TypeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: u64 = 12;
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = (0..b.length.min(SHOWN)).map(|t| b.entry(t).to_string()).collect();
                let tail = if b.length > SHOWN { ",…" } else { "" };
                format!("({}{tail})", items.join(","))
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn pw(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or_else(|| Error::overflow("type sequence entry"))
}

/// Decreasing blocks `s_i` for `i = L-1` down to `⌈L/2⌉`.
pub fn chain_type_sequence(c: ChainParams) -> Result<TypeSequence> {
    let (q, l) = (c.q, c.len);
    let mut blocks = Vec::new();
    for i in (l.div_ceil(2)..l).rev() {
        let len = (q - 1) * pw(q, l - i - 1)?;
        blocks.push(TypeBlock::decreasing(pw(q, i)? - pw(q, l - i - 1)? - 1, len));
    }
    Ok(TypeSequence::new(blocks))
}

fn two_prime_type_sequence(p: u64, a: u32, q: u64) -> Result<TypeSequence> {
    let m = a.div_ceil(2);
    let mut blocks = Vec::new();
    for i in (0..a).rev() {
        let len = pw(p, a - i - 1)? * (p - 1);
        let pi = pw(p, i)?;
        let qpi = q.checked_mul(pi).ok_or_else(|| Error::overflow("type sequence entry"))?;
        blocks.push(if i >= m {
            TypeBlock::decreasing(qpi - pw(p, a - i - 1)? - 1, len)
        } else {
            TypeBlock::constant(qpi - pi, len)
        });
    }
    Ok(TypeSequence::new(blocks))
}

fn three_prime_type_sequence(p: u64, q: u64, r: u64) -> TypeSequence {
    TypeSequence::new(vec![
        TypeBlock::constant(q * r - 1, p - 1),
        TypeBlock::constant(p * r - p, q - 1),
        TypeBlock::constant((p - 1) * (q - 1), r - 1),
    ])
}

pub fn type_sequence_for(c: &Classification) -> Result<TypeSequence> {
    match *c {
        Classification::PrimeEdgeless { .. } => Ok(TypeSequence::default()),
        Classification::PrimePower { p, a } => chain_type_sequence(ChainParams::new(p, a)?),
        Classification::TwoPrime { p, a, q } => two_prime_type_sequence(p, a, q),
        Classification::ThreePrimeSquarefree { p, q, r } => Ok(three_prime_type_sequence(p, q, r)),
        Classification::NotCochordal { n, witness } => Err(Error::NotCochordal { n, witness }),
    }
}

pub fn type_sequence(spec: &RingSpec) -> Result<TypeSequence> {
    match *spec {
        RingSpec::ResidueRing { n } => type_sequence_for(&classify(n)?),
        _ => chain_type_sequence(chain_params(spec).expect("chain family")),
    }
}

/// One star `K_{{center}, cover}` of a constructible system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub center: VertexLabel,
    pub cover: Vec<VertexLabel>,
}

/// Steps in construction order (the first step builds `G_1`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructibleSystem {
    pub steps: Vec<Step>,
}

impl ConstructibleSystem {
    /// Cover sizes listed from the last step to the first.
    pub fn type_entries(&self) -> Vec<u64> {
        self.steps.iter().rev().map(|s| s.cover.len() as u64).collect()
    }
}

fn push_step(steps: &mut Vec<Step>, center: VertexLabel, cover: Vec<VertexLabel>) {
    steps.push(Step { center, cover });
}

/// Layered system: centers are the clique layers `V_i`, `i ≥ ⌈L/2⌉`, in increasing order.
fn chain_system(len: u32, layer: impl Fn(u32) -> Vec<VertexLabel>) -> ConstructibleSystem {
    let layers: Vec<Vec<VertexLabel>> = (0..len).map(|k| if k == 0 { vec![] } else { layer(k) }).collect();
    let mut steps = Vec::new();
    for i in len.div_ceil(2)..len {
        let base: Vec<VertexLabel> = (len - i..i).flat_map(|s| layers[s as usize].iter().copied()).collect();
        for (j, &u) in layers[i as usize].iter().enumerate() {
            let mut cover = base.clone();
            cover.extend_from_slice(&layers[i as usize][..j]);
            push_step(&mut steps, u, cover);
        }
    }
    ConstructibleSystem { steps }
}

fn residue_classes(n: u64) -> BTreeMap<u64, Vec<VertexLabel>> {
    let mut classes: BTreeMap<u64, Vec<VertexLabel>> = BTreeMap::new();
    for x in zero_divisors(n).expect("n >= 2") {
        classes.entry(gcd(x, n)).or_default().push(VertexLabel::Residue(x));
    }
    classes
}

fn two_prime_system(n: u64, p: u64, a: u32, q: u64) -> ConstructibleSystem {
    let classes = residue_classes(n);
    let class = |d: u64| classes.get(&d).cloned().unwrap_or_default();
    let m = a.div_ceil(2);
    let mut steps = Vec::new();
    for i in 0..a {
        let centers = class(p.pow(i) * q);
        let mut base: Vec<VertexLabel> = (a - i..=a).flat_map(|t| class(p.pow(t))).collect();
        base.extend((a - i..i).flat_map(|s| class(p.pow(s) * q)));
        for (j, &u) in centers.iter().enumerate() {
            let mut cover = base.clone();
            if i >= m {
                cover.extend_from_slice(&centers[..j]);
            }
            push_step(&mut steps, u, cover);
        }
    }
    ConstructibleSystem { steps }
}

fn three_prime_system(n: u64, p: u64, q: u64, r: u64) -> ConstructibleSystem {
    let classes = residue_classes(n);
    let class = |d: u64| classes.get(&d).cloned().unwrap_or_default();
    let mut steps = Vec::new();
    let order = [(p * q, vec![r]), (p * r, vec![q, p * q]), (q * r, vec![p, p * q, p * r])];
    for (center_class, cover_classes) in order {
        let cover: Vec<VertexLabel> = cover_classes.iter().flat_map(|&d| class(d)).collect();
        for u in class(center_class) {
            push_step(&mut steps, u, cover.clone());
        }
    }
    ConstructibleSystem { steps }
}

/// Explicit constructible system realizing `type_sequence(spec)`.
pub fn build_system(spec: &RingSpec) -> Result<ConstructibleSystem> {
    let count = vertex_count_u64(spec)?;
    if count > MAX_BUILD_VERTICES {
        return Err(Error::too_many_vertices(count, MAX_BUILD_VERTICES));
    }
    match *spec {
        RingSpec::ResidueRing { n } => match classify(n)? {
            Classification::PrimeEdgeless { .. } => Ok(ConstructibleSystem::default()),
            Classification::PrimePower { p, a } => {
                let classes = residue_classes(n);
                Ok(chain_system(a, |k| classes[&p.pow(k)].clone()))
            }
            Classification::TwoPrime { p, a, q } => Ok(two_prime_system(n, p, a, q)),
            Classification::ThreePrimeSquarefree { p, q, r } => Ok(three_prime_system(n, p, q, r)),
            c @ Classification::NotCochordal { .. } => Err(type_sequence_for(&c).unwrap_err()),
        },
        _ => {
            let c = chain_params(spec).expect("chain family");
            Ok(chain_system(c.len, |k| {
                let size = c.layer_size_u64(k).expect("validated");
                (0..size).map(|index| VertexLabel::Layered { layer: k, index }).collect()
            }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownVertex,
    RepeatedCenter,
    CenterInCover,
    NonAdjacentCoverVertex,
    UncoveredEdge,
    MissingEdge,
    MissingVertex,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::UnknownVertex => "unknown vertex",
            ViolationKind::RepeatedCenter => "repeated center",
            ViolationKind::CenterInCover => "center in cover",
            ViolationKind::NonAdjacentCoverVertex => "non-adjacent cover vertex",
            ViolationKind::UncoveredEdge => "cover is not a vertex cover",
            ViolationKind::MissingEdge => "missing edge",
            ViolationKind::MissingVertex => "missing vertex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 1-based step index; absent for whole-graph checks.
    pub step: Option<usize>,
    pub kind: ViolationKind,
    pub vertices: Vec<VertexLabel>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.step {
            write!(f, "step {s}: ")?;
        }
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{} ({})", self.kind, vs.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemReport {
    pub violations: Vec<Violation>,
}

impl SystemReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replays `sys` against `g`, reporting every violated condition.
pub fn validate_system(g: &SimpleGraph, sys: &ConstructibleSystem) -> SystemReport {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut built = SimpleGraph::edgeless(g.labels().to_vec());
    let mut present = FixedBitSet::with_capacity(n);
    let mut centers = FixedBitSet::with_capacity(n);
    let mut covered_so_far = FixedBitSet::with_capacity(n);
    let mut report = |step: Option<usize>, kind, vertices: Vec<VertexLabel>| {
        out.push(Violation { step, kind, vertices });
    };

    for (j, s) in sys.steps.iter().enumerate() {
        let step = Some(j + 1);
        let Some(u) = g.index_of(&s.center) else {
            report(step, ViolationKind::UnknownVertex, vec![s.center]);
            continue;
        };
        let mut cover = FixedBitSet::with_capacity(n);
        for w in &s.cover {
            match g.index_of(w) {
                Some(i) => cover.insert(i),
                None => report(step, ViolationKind::UnknownVertex, vec![*w]),
            }
        }
        if centers.contains(u) {
            report(step, ViolationKind::RepeatedCenter, vec![s.center]);
        }
        if covered_so_far.contains(u) || cover.contains(u) {
            report(step, ViolationKind::CenterInCover, vec![s.center]);
        }
        for w in cover.ones().filter(|&w| w != u && !g.has_edge(u, w)) {
            report(step, ViolationKind::NonAdjacentCoverVertex, vec![s.center, g.label(w)]);
        }
        if j > 0 {
            let mut outside = present.clone();
            outside.difference_with(&cover);
            for x in outside.ones() {
                if let Some(y) = built.neighbors(x).intersection(&outside).find(|&y| y > x) {
                    report(step, ViolationKind::UncoveredEdge, vec![g.label(x), g.label(y)]);
                }
            }
        }
        for w in cover.ones().filter(|&w| w != u) {
            built.add_edge(u, w);
        }
        present.union_with(&cover);
        present.insert(u);
        centers.insert(u);
        covered_so_far.union_with(&cover);
    }

    for (x, y) in g.edges() {
        if !built.has_edge(x, y) {
            report(None, ViolationKind::MissingEdge, vec![g.label(x), g.label(y)]);
        }
    }
    for v in (0..n).filter(|&v| !present.contains(v)) {
        report(None, ViolationKind::MissingVertex, vec![g.label(v)]);
    }
    SystemReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn spec(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    fn entries(s: &str) -> Vec<u64> {
        type_sequence(&spec(s)).unwrap().entries().collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(18).unwrap(), Classification::TwoPrime { p: 3, a: 2, q: 2 });
        assert_eq!(classify(15).unwrap(), Classification::TwoPrime { p: 3, a: 1, q: 5 });
        assert_eq!(classify(12).unwrap(), Classification::TwoPrime { p: 2, a: 2, q: 3 });
        assert_eq!(classify(7).unwrap(), Classification::PrimeEdgeless { p: 7 });
        assert_eq!(classify(16).unwrap(), Classification::PrimePower { p: 2, a: 4 });
        assert_eq!(classify(30).unwrap(), Classification::ThreePrimeSquarefree { p: 2, q: 3, r: 5 });
        assert!(!classify(36).unwrap().is_cochordal());
        assert!(!classify(210).unwrap().is_cochordal());
        assert!(classify(1).is_err());
    }

    #[test]
    fn classification_display() {
        assert_eq!(classify(18).unwrap().to_string(), "cochordal: p^a q form (3^2·2)");
        assert_eq!(classify(36).unwrap().to_string(), "not cochordal; witness {4,9},{6,30}");
        assert_eq!(classify(7).unwrap().to_string(), "prime: edgeless graph");
        assert_eq!(classify(15).unwrap().to_string(), "cochordal: p^a q form (3·5)");
    }

    #[test]
    fn witness_examples() {
        let w = |n| obstruction_witness(&factorize(n).unwrap()).unwrap();
        assert_eq!(w(36), Witness { first: [4, 9], second: [6, 30] });
        assert_eq!(w(60), Witness { first: [4, 15], second: [6, 10] });
        assert_eq!(w(210), Witness { first: [6, 35], second: [10, 21] });
        assert!(obstruction_witness(&factorize(30).unwrap()).is_err());
    }

    #[test]
    fn witnesses_validate() {
        for n in 2..=500u64 {
            if let Classification::NotCochordal { witness, .. } = classify(n).unwrap() {
                assert!(witness.validates_in(n), "n={n}");
            }
        }
        let g = build_graph(&spec("zn:36")).unwrap();
        assert!(Witness { first: [4, 9], second: [6, 30] }.validates_in_graph(&g));
    }

    #[test]
    fn same_class_clique_examples() {
        assert!(!same_class_clique(30, &[1, 1, 0]).unwrap());
        assert!(same_class_clique(16, &[2]).unwrap());
        assert!(!same_class_clique(12, &[0, 1]).unwrap());
        assert!(same_class_clique(30, &[0, 0, 0]).is_err());
        assert!(same_class_clique(16, &[4]).is_err());
    }

    #[test]
    fn type_sequence_examples() {
        let ts = type_sequence(&spec("zn:16")).unwrap();
        assert_eq!(ts.blocks, vec![TypeBlock::decreasing(6, 1), TypeBlock::decreasing(1, 2)]);
        assert_eq!(entries("zn:16"), vec![6, 1, 0]);
        let ts = type_sequence(&spec("zn:30")).unwrap();
        assert_eq!(
            ts.blocks,
            vec![TypeBlock::constant(14, 1), TypeBlock::constant(8, 2), TypeBlock::constant(2, 4)]
        );
        let ts = type_sequence(&spec("zn:12")).unwrap();
        assert_eq!(ts.blocks, vec![TypeBlock::decreasing(4, 1), TypeBlock::constant(2, 2)]);
        assert_eq!(entries("zn:9"), vec![1, 0]);
        assert_eq!(entries("zn:15"), vec![4, 4]);
        assert_eq!(entries("zn:8"), vec![2]);
        assert_eq!(entries("zn:4"), vec![0]);
        assert_eq!(entries("chain:2,2"), vec![0]);
        assert_eq!(entries("zn:7"), Vec::<u64>::new());
        assert!(matches!(type_sequence(&spec("zn:36")), Err(Error::NotCochordal { n: 36, .. })));
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let ts = type_sequence(&spec("zn:16")).unwrap().normalized();
        assert_eq!(ts.entries().collect::<Vec<_>>(), vec![6, 1]);
        let ts = type_sequence(&spec("zn:4")).unwrap().normalized();
        assert_eq!(ts.k(), 0);
        let ts = type_sequence(&spec("zn:12")).unwrap();
        assert_eq!(ts.normalized(), ts);
    }

    #[test]
    fn center_counts() {
        for (p, a) in [(2u64, 2u32), (2, 5), (3, 3), (5, 4), (7, 2)] {
            let ts = type_sequence_for(&Classification::PrimePower { p, a }).unwrap();
            assert_eq!(ts.k(), p.pow(a - a.div_ceil(2)) - 1);
            for q in [2u64, 3, 5, 7, 11].into_iter().filter(|&q| q != p) {
                let ts = type_sequence_for(&Classification::TwoPrime { p, a, q }).unwrap();
                assert_eq!(ts.k(), p.pow(a) - 1);
            }
        }
        for (p, q, r) in [(2u64, 3u64, 5u64), (3, 5, 7), (2, 11, 13)] {
            let ts = type_sequence_for(&Classification::ThreePrimeSquarefree { p, q, r }).unwrap();
            assert_eq!(ts.k(), p + q + r - 3);
        }
        for q in 2..=5u64 {
            for l in 2..=7u32 {
                let ts = chain_type_sequence(ChainParams::new(q, l).unwrap()).unwrap();
                assert_eq!(ts.k(), q.pow(l / 2) - 1);
            }
        }
    }

    #[test]
    fn gaussian_matches_chain() {
        for m in 1..=5 {
            assert_eq!(
                type_sequence(&RingSpec::GaussianPower { m }).unwrap(),
                type_sequence(&RingSpec::Chain { q: 2, len: 2 * m }).unwrap()
            );
        }
    }

    #[test]
    fn system_examples() {
        let sys = build_system(&spec("chain:2,3")).unwrap();
        assert_eq!(sys.steps.len(), 1);
        assert_eq!(sys.type_entries(), vec![2]);
        let sys = build_system(&spec("zn:15")).unwrap();
        let five = |x| VertexLabel::Residue(x);
        assert_eq!(sys.steps.iter().map(|s| s.center).collect::<Vec<_>>(), vec![five(5), five(10)]);
        for s in &sys.steps {
            assert_eq!(s.cover, [3, 6, 9, 12].map(five).to_vec());
        }
        assert_eq!(sys.type_entries(), vec![4, 4]);
        assert_eq!(build_system(&spec("zn:9")).unwrap().type_entries(), vec![1, 0]);
    }

    #[test]
    fn systems_validate() {
        for s in ["zn:16", "zn:30", "zn:12", "zn:18", "zn:4", "zn:7", "gauss:2", "chain:3,4", "zn:250"] {
            let sp = spec(s);
            let g = build_graph(&sp).unwrap();
            let sys = build_system(&sp).unwrap();
            let report = validate_system(&g, &sys);
            assert!(report.is_ok(), "{s}: {:?}", report.violations);
            let expect: Vec<u64> = type_sequence(&sp).unwrap().entries().collect();
            assert_eq!(sys.type_entries(), expect, "{s}");
        }
    }

    #[test]
    fn false_same_class_edge_is_flagged() {
        let sp = spec("zn:15");
        let g = build_graph(&sp).unwrap();
        let mut sys = build_system(&sp).unwrap();
        let first = sys.steps[0].center;
        sys.steps[1].cover.push(first);
        let report = validate_system(&g, &sys);
        assert_eq!(
            report.violations,
            vec![Violation {
                step: Some(2),
                kind: ViolationKind::NonAdjacentCoverVertex,
                vertices: vec![VertexLabel::Residue(10), VertexLabel::Residue(5)],
            }]
        );
        assert_eq!(report.violations[0].to_string(), "step 2: non-adjacent cover vertex (10, 5)");
    }

    #[test]
    fn incomplete_system_is_flagged() {
        let sp = spec("zn:8");
        let g = build_graph(&sp).unwrap();
        let mut sys = build_system(&sp).unwrap();
        sys.steps[0].cover.pop();
        let kinds: Vec<_> = validate_system(&g, &sys).violations.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::MissingEdge, ViolationKind::MissingVertex]);
    }

    #[test]
    fn json_shapes() {
        let ts = type_sequence(&spec("zn:12")).unwrap();
        let js = serde_json::to_value(&ts).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"blocks": [
                {"kind": "decreasing", "first": 4, "length": 1},
                {"kind": "constant", "value": 2, "length": 2}
            ]})
        );
        assert_eq!(serde_json::from_value::<TypeSequence>(js).unwrap(), ts);
        let c = classify(36).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Classification>(&js).unwrap(), c);
        let sys = build_system(&spec("zn:8")).unwrap();
        let js = serde_json::to_value(&sys).unwrap();
        assert_eq!(js, serde_json::json!({"steps": [{"center": "4", "cover": ["2", "6"]}]}));
    }
}
