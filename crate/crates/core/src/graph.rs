//! Simple undirected graphs with bitset adjacency rows.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};
use crate::rings::{chain_params, vertex_count_u64, zero_divisors, ChainParams, RingSpec};

/// Largest graph `build_graph` will materialize.
pub const MAX_BUILD_VERTICES: u64 = 20_000;

/// Default vertex bound for exhaustive independence enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 24;

/// A vertex label: a residue of `Z/nZ`, or `(layer, index)` for layered presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum VertexLabel {
    Residue(u64),
    Layered { layer: u32, index: u64 },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::Residue(x) => write!(f, "{x}"),
            VertexLabel::Layered { layer, index } => write!(f, "{layer}:{index}"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad vertex label {s:?}"));
        match s.split_once(':') {
            Some((k, j)) => Ok(VertexLabel::Layered {
                layer: k.parse().map_err(|_| bad())?,
                index: j.parse().map_err(|_| bad())?,
            }),
            None => Ok(VertexLabel::Residue(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl TryFrom<String> for VertexLabel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<VertexLabel> for String {
    fn from(v: VertexLabel) -> String {
        v.to_string()
    }
}

/// Finite simple graph on vertices `0..n` carrying display labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphDump", into = "GraphDump")]
pub struct SimpleGraph {
    labels: Vec<VertexLabel>,
    adj: Vec<FixedBitSet>,
    layers: Option<Vec<u32>>,
    index: HashMap<VertexLabel, usize>,
}

impl SimpleGraph {
    /// Edgeless graph on the given labels. Panics on duplicate labels.
    pub fn edgeless(labels: Vec<VertexLabel>) -> Self {
        let n = labels.len();
        let index: HashMap<_, _> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        assert_eq!(index.len(), n, "duplicate vertex labels");
        SimpleGraph { labels, adj: vec![FixedBitSet::with_capacity(n); n], layers: None, index }
    }

    /// Graph on `0..n` (labelled by residues `0..n`) with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::edgeless((0..n as u64).map(VertexLabel::Residue).collect());
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn with_layers(mut self, layers: Vec<u32>) -> Self {
        assert_eq!(layers.len(), self.vertex_count());
        self.layers = Some(layers);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn layers(&self) -> Option<&[u32]> {
        self.layers.as_deref()
    }

    pub fn layer(&self, v: usize) -> Option<u32> {
        self.layers.as_ref().map(|l| l[v])
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertex_count();
        let mut g = self.clone();
        for (v, row) in g.adj.iter_mut().enumerate() {
            row.toggle_range(..);
            row.set(v, false);
        }
        debug_assert_eq!(g.edge_count() + self.edge_count(), n * n.saturating_sub(1) / 2);
        g
    }

    pub fn is_clique(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|v| {
            let mut rest = set.clone();
            rest.set(v, false);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Chordality via maximum cardinality search, with a verified elimination ordering.
    pub fn is_chordal(&self) -> Chordality {
        let order = self.mcs_elimination_order();
        if self.is_perfect_elimination_order(&order) {
            Chordality { chordal: true, elimination_order: Some(order) }
        } else {
            Chordality { chordal: false, elimination_order: None }
        }
    }

    /// Reverse of a maximum cardinality search visit order.
    fn mcs_elimination_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut weight = vec![0usize; n];
        let mut done = vec![false; n];
        let mut visit = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !done[v])
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("vertex remains");
            done[v] = true;
            visit.push(v);
            for u in self.adj[v].ones() {
                if !done[u] {
                    weight[u] += 1;
                }
            }
        }
        visit.reverse();
        visit
    }

    /// True if each vertex's later neighbours in `order` form a clique.
    pub fn is_perfect_elimination_order(&self, order: &[usize]) -> bool {
        let n = self.vertex_count();
        if order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        let mut remaining = FixedBitSet::with_capacity(n);
        remaining.insert_range(..);
        for &v in order {
            remaining.set(v, false);
            let mut later = self.adj[v].clone();
            later.intersect_with(&remaining);
            let Some(parent) = later.ones().min_by_key(|&u| pos[u]) else {
                continue;
            };
            later.set(parent, false);
            if !later.is_subset(&self.adj[parent]) {
                return false;
            }
        }
        true
    }

    /// Two edges whose four endpoints induce exactly those two edges.
    pub fn find_induced_matching_2(&self) -> Option<((usize, usize), (usize, usize))> {
        let n = self.vertex_count();
        for (a, b) in self.edges() {
            let mut free = FixedBitSet::with_capacity(n);
            free.insert_range(..);
            free.difference_with(&self.adj[a]);
            free.difference_with(&self.adj[b]);
            free.set(a, false);
            free.set(b, false);
            for c in free.ones().filter(|&c| c > a) {
                let hit = self.adj[c].intersection(&free).find(|&d| d > c);
                if let Some(d) = hit {
                    return Some(((a, b), (c, d)));
                }
            }
        }
        None
    }

    pub fn is_induced_matching(&self, e1: (usize, usize), e2: (usize, usize)) -> bool {
        let (a, b) = e1;
        let (c, d) = e2;
        let vs = [a, b, c, d];
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
        distinct
            && self.has_edge(a, b)
            && self.has_edge(c, d)
            && [a, b].iter().all(|&x| !self.has_edge(x, c) && !self.has_edge(x, d))
    }

    /// Calls `visit` once per maximal independent set (Bron–Kerbosch with pivoting).
    pub fn for_each_maximal_independent_set(&self, mut visit: impl FnMut(&FixedBitSet)) {
        let co = self.complement();
        let n = self.vertex_count();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let mut r = FixedBitSet::with_capacity(n);
        bron_kerbosch(&co.adj, &mut r, p, FixedBitSet::with_capacity(n), &mut visit);
    }

    /// α, a maximum independent set, maximal-set size multiplicities and edge count.
    pub fn independence_profile(&self, bound: usize) -> Result<IndependenceProfile> {
        let n = self.vertex_count();
        if n > bound {
            return Err(Error::too_many_vertices(n as u64, bound as u64));
        }
        let mut best: Option<FixedBitSet> = None;
        let mut sizes = BTreeMap::new();
        self.for_each_maximal_independent_set(|s| {
            let k = s.count_ones(..);
            *sizes.entry(k).or_insert(0u64) += 1;
            if best.as_ref().is_none_or(|b| b.count_ones(..) < k) {
                best = Some(s.clone());
            }
        });
        let max_set: Vec<usize> = best.map(|b| b.ones().collect()).unwrap_or_default();
        Ok(IndependenceProfile {
            alpha: max_set.len(),
            max_independent_set: max_set,
            maximal_set_sizes: sizes,
            edge_count: self.edge_count(),
        })
    }

    /// Partition into twin classes: vertices with equal open neighbourhoods
    /// (independent classes) or equal closed neighbourhoods (clique classes).
    pub fn twin_classes(&self) -> Vec<TwinClass> {
        let n = self.vertex_count();
        let mut open: HashMap<&FixedBitSet, Vec<usize>> = HashMap::new();
        for v in 0..n {
            open.entry(&self.adj[v]).or_default().push(v);
        }
        let mut classes = Vec::new();
        let mut singles = Vec::new();
        for (_, members) in open {
            if members.len() > 1 {
                classes.push(TwinClass { members, clique: false });
            } else {
                singles.push(members[0]);
            }
        }
        let mut closed: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for v in singles {
            let mut row = self.adj[v].clone();
            row.insert(v);
            closed.entry(row).or_default().push(v);
        }
        classes.extend(closed.into_values().map(|members| TwinClass { clique: members.len() > 1, members }));
        for c in &mut classes {
            c.members.sort_unstable();
        }
        classes.sort_by_key(|c| c.members[0]);
        classes
    }

    /// Graphviz DOT rendering; layered vertices are coloured by layer.
    pub fn export_dot(&self) -> String {
        const PALETTE: [&str; 8] =
            ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];
        let mut out = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.vertex_count() {
            let label = self.labels[v];
            match self.layer(v) {
                Some(k) => {
                    let color = PALETTE[k as usize % PALETTE.len()];
                    writeln!(out, "  \"{label}\" [layer={k}, style=filled, fillcolor=\"{color}\"];")
                }
                None => writeln!(out, "  \"{label}\";"),
            }
            .unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  \"{}\" -- \"{}\";", self.labels[u], self.labels[v]).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut FixedBitSet,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    visit: &mut impl FnMut(&FixedBitSet),
) {
    if p.is_clear() && x.is_clear() {
        visit(r);
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .expect("p or x is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.ones() {
        r.insert(v);
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, p2, x2, visit);
        r.set(v, false);
        p.set(v, false);
        x.insert(v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chordality {
    pub chordal: bool,
    pub elimination_order: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceProfile {
    pub alpha: usize,
    pub max_independent_set: Vec<usize>,
    /// Size of a maximal independent set to how many sets have that size.
    pub maximal_set_sizes: BTreeMap<usize, u64>,
    pub edge_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinClass {
    pub members: Vec<usize>,
    /// Members pairwise adjacent; otherwise pairwise non-adjacent.
    pub clique: bool,
}

/// JSON form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDump {
    pub vertices: Vec<VertexLabel>,
    pub edges: Vec<[VertexLabel; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<u32>>,
}

impl From<SimpleGraph> for GraphDump {
    fn from(g: SimpleGraph) -> Self {
        GraphDump {
            edges: g.edges().map(|(u, v)| [g.labels[u], g.labels[v]]).collect(),
            vertices: g.labels,
            layers: g.layers,
        }
    }
}

impl TryFrom<GraphDump> for SimpleGraph {
    type Error = Error;

    fn try_from(d: GraphDump) -> Result<Self> {
        let n = d.vertices.len();
        let index: HashMap<_, _> = d.vertices.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        if index.len() != n {
            return Err(Error::Parse("duplicate vertex labels".into()));
        }
        let mut g = SimpleGraph {
            labels: d.vertices,
            adj: vec![FixedBitSet::with_capacity(n); n],
            layers: None,
            index,
        };
        for [a, b] in d.edges {
            let (u, v) = match (g.index_of(&a), g.index_of(&b)) {
                (Some(u), Some(v)) if u != v => (u, v),
                _ => return Err(Error::Parse(format!("bad edge {a} -- {b}"))),
            };
            g.add_edge(u, v);
        }
        if let Some(layers) = d.layers {
            if layers.len() != n {
                return Err(Error::Parse("layer map length mismatch".into()));
            }
            g.layers = Some(layers);
        }
        Ok(g)
    }
}

/// Zero-divisor graph of the ring, up to `MAX_BUILD_VERTICES` vertices.
pub fn build_graph(spec: &RingSpec) -> Result<SimpleGraph> {
    let count = vertex_count_u64(spec)?;
    if count > MAX_BUILD_VERTICES {
        return Err(Error::too_many_vertices(count, MAX_BUILD_VERTICES));
    }
    match *spec {
        RingSpec::ResidueRing { n } => Ok(residue_graph(n)),
        _ => Ok(chain_graph(chain_params(spec).expect("chain family"))),
    }
}

fn residue_graph(n: u64) -> SimpleGraph {
    let verts = zero_divisors(n).expect("n >= 2");
    let slot = |y: u64| verts.binary_search(&y).expect("multiples of n/gcd are zero-divisors");
    let mut g = SimpleGraph::edgeless(verts.iter().map(|&x| VertexLabel::Residue(x)).collect());
    for (i, &x) in verts.iter().enumerate() {
        // x·y ≡ 0 (mod n) exactly when n / gcd(x, n) divides y
        let step = n / gcd(x, n);
        let first = (x / step + 1) * step;
        for y in (first..n).step_by(step as usize) {
            g.add_edge(i, slot(y));
        }
    }
    let f = factorize(n).expect("n >= 2");
    if let &[(p, _)] = f.factors() {
        let layers = verts
            .iter()
            .map(|&x| {
                let (mut y, mut k) = (x, 0);
                while y % p == 0 {
                    y /= p;
                    k += 1;
                }
                k
            })
            .collect();
        g = g.with_layers(layers);
    }
    g
}

/// `C(q, L)`: layers `V_1..V_{L-1}`, edge iff the layer indices sum to at least `L`.
pub fn chain_graph(params: ChainParams) -> SimpleGraph {
    let len = params.len;
    let sizes: Vec<u64> = (1..len).map(|k| params.layer_size_u64(k).expect("validated")).collect();
    let mut labels = Vec::new();
    let mut layers = Vec::new();
    let mut start = vec![0usize; len as usize + 1];
    for k in 1..len {
        start[k as usize] = labels.len();
        for index in 0..sizes[k as usize - 1] {
            labels.push(VertexLabel::Layered { layer: k, index });
            layers.push(k);
        }
    }
    let n = labels.len();
    start[len as usize] = n;
    let mut g = SimpleGraph::edgeless(labels);
    for (v, &k) in layers.iter().enumerate() {
        let from = start[(len - k).max(1) as usize];
        g.adj[v].insert_range(from..n);
        g.adj[v].set(v, false);
    }
    g.with_layers(layers)
}
