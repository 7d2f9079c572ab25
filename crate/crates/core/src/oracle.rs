//! Brute-force verifiers and the formula-versus-oracle cross-check.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Natural;
use crate::betti::{betti_table, homological_summary};
use crate::cochordal::classify;
use crate::error::{Error, Result};
use crate::graph::{build_graph, SimpleGraph};
use crate::hilbert_cm::{
    alpha_height_dim, cm_status, hilbert_from_betti, hilbert_from_independence,
    independence_polynomial_chain, render_polynomial, IndependencePolynomial,
};
use crate::rings::{chain_params, vertex_count_u64, RingSpec};

/// Default vertex bound for subset enumeration.
pub const DEFAULT_ORACLE_BOUND: usize = 22;

/// Subsets are split into `2^CHUNK_BITS` parallel chunks by their top bits.
const CHUNK_BITS: usize = 8;

fn check_bound(g: &SimpleGraph, bound: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > bound || n > 63 {
        return Err(Error::too_many_vertices(n as u64, bound.min(63) as u64));
    }
    Ok(())
}

fn masks(g: &SimpleGraph) -> Vec<u64> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).ones().fold(0u64, |m, u| m | (1 << u))).collect()
}

/// Runs `visit(subset, acc)` over every subset of `0..n`, in parallel, summing the accumulators.
fn sweep<A, F>(n: usize, width: usize, visit: F) -> Vec<A>
where
    A: Default + Clone + Send + std::ops::AddAssign,
    F: Fn(u64, &mut [A]) + Sync,
{
    let low_bits = n.saturating_sub(CHUNK_BITS);
    let chunks = 1u64 << (n - low_bits);
    (0..chunks)
        .into_par_iter()
        .fold(
            || vec![A::default(); width],
            |mut acc, hi| {
                for lo in 0..(1u64 << low_bits) {
                    visit((hi << low_bits) | lo, &mut acc);
                }
                acc
            },
        )
        .reduce(
            || vec![A::default(); width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn components(adj: &[u64], set: u64) -> u32 {
    let mut rest = set;
    let mut count = 0;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & set & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        rest &= !comp;
        count += 1;
    }
    count
}

/// `[β_{1,2}, β_{2,3}, …]` of `S/I(g)`: sums over `W` of the component count of the
/// complement on `W`, minus one.
pub fn oracle_linear_betti_all(g: &SimpleGraph, bound: usize) -> Result<Vec<Natural>> {
    check_bound(g, bound)?;
    let n = g.vertex_count();
    let co = masks(&g.complement());
    let counts: Vec<u64> = sweep(n, n + 1, |w, acc: &mut [u64]| {
        if w != 0 {
            acc[w.count_ones() as usize] += u64::from(components(&co, w) - 1);
        }
    });
    let mut betas: Vec<Natural> = counts.into_iter().skip(2).map(Natural::from).collect();
    while betas.last().is_some_and(|b| *b == Natural::default()) {
        betas.pop();
    }
    Ok(betas)
}

pub fn oracle_linear_betti(g: &SimpleGraph, i: usize, bound: usize) -> Result<Natural> {
    assert!(i >= 1, "homological degree starts at 1");
    Ok(oracle_linear_betti_all(g, bound)?.get(i - 1).cloned().unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleIndependence {
    pub polynomial: IndependencePolynomial,
    pub alpha: usize,
    pub maximal_set_sizes: BTreeMap<usize, u64>,
}

/// Independent and maximal independent sets by exhaustive enumeration.
pub fn oracle_independence(g: &SimpleGraph, bound: usize) -> Result<OracleIndependence> {
    check_bound(g, bound)?;
    let n = g.vertex_count();
    let adj = masks(g);
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    // slots 0..=n count independent sets, n+1..=2n+1 maximal ones
    let counts: Vec<u64> = sweep(n, 2 * n + 2, |w, acc: &mut [u64]| {
        let mut bits = w;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            if adj[v] & w != 0 {
                return;
            }
            bits &= bits - 1;
        }
        let k = w.count_ones() as usize;
        acc[k] += 1;
        let mut outside = all & !w;
        while outside != 0 {
            let v = outside.trailing_zeros() as usize;
            if adj[v] & w == 0 {
                return;
            }
            outside &= outside - 1;
        }
        acc[n + 1 + k] += 1;
    });
    let mut coefficients: Vec<Natural> = counts[..=n].iter().map(|&c| Natural::from(c)).collect();
    while coefficients.len() > 1 && coefficients.last().is_some_and(|c| *c == Natural::default()) {
        coefficients.pop();
    }
    let maximal_set_sizes: BTreeMap<usize, u64> =
        counts[n + 1..].iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k, c)).collect();
    Ok(OracleIndependence {
        alpha: coefficients.len() - 1,
        polynomial: IndependencePolynomial { coefficients },
        maximal_set_sizes,
    })
}

/// Cochordality via chordality of the complement.
pub fn oracle_cochordal(g: &SimpleGraph) -> bool {
    g.complement().is_chordal().chordal
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Agree,
    Disagree,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub formula: String,
    pub oracle: String,
    pub status: CheckStatus,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub spec: RingSpec,
    pub vertices: u64,
    pub oracle_bound: usize,
    pub checks: Vec<Check>,
}

impl OracleReport {
    fn count(&self, s: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn agreements(&self) -> usize {
        self.count(CheckStatus::Agree)
    }

    pub fn disagreements(&self) -> usize {
        self.count(CheckStatus::Disagree)
    }

    pub fn skipped(&self) -> usize {
        self.count(CheckStatus::Skipped)
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements() == 0
    }

    /// One-word verdict: `agree`, `disagree`, or `skipped` when nothing was compared.
    pub fn verdict(&self) -> &'static str {
        if self.disagreements() > 0 {
            "disagree"
        } else if self.agreements() == 0 {
            "skipped"
        } else {
            "agree"
        }
    }

    /// Same report with timings zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> OracleReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_ms = 0.0;
        }
        r
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cross-check {} ({} vertices, oracle bound {})",
            self.spec, self.vertices, self.oracle_bound
        )?;
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Agree => "agree",
                CheckStatus::Disagree => "DISAGREE",
                CheckStatus::Skipped => "skipped",
            };
            writeln!(
                f,
                "  {:<24} {:<9} formula={} oracle={} ({:.1} ms)",
                c.name, status, c.formula, c.oracle, c.runtime_ms
            )?;
        }
        write!(
            f,
            "oracle: {} ({} agree, {} disagree, {} skipped)",
            self.verdict(),
            self.agreements(),
            self.disagreements(),
            self.skipped()
        )
    }
}

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn compare<T: PartialEq + fmt::Debug>(&mut self, name: &str, formula: T, oracle: T, ms: f64) {
        let status = if formula == oracle { CheckStatus::Agree } else { CheckStatus::Disagree };
        self.list.push(Check {
            name: name.to_string(),
            formula: show(&formula),
            oracle: show(&oracle),
            status,
            runtime_ms: ms,
        });
    }

    fn skip(&mut self, name: &str, formula: String, why: &str) {
        self.list.push(Check {
            name: name.to_string(),
            formula,
            oracle: why.to_string(),
            status: CheckStatus::Skipped,
            runtime_ms: 0.0,
        });
    }
}

fn show<T: fmt::Debug>(v: &T) -> String {
    format!("{v:?}").replace('"', "")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1e3)
}

fn err_text(e: &Error) -> String {
    match e {
        Error::NotCochordal { .. } => "not cochordal".into(),
        other => other.to_string(),
    }
}

/// Compares every closed-form invariant of `spec` with its brute-force counterpart.
pub fn cross_check(spec: &RingSpec, bound: usize) -> OracleReport {
    let vertices = vertex_count_u64(spec).unwrap_or(u64::MAX);
    let mut checks = Checks { list: Vec::new() };
    let report =
        |checks: Checks| OracleReport { spec: *spec, vertices, oracle_bound: bound, checks: checks.list };

    let claimed = match *spec {
        RingSpec::ResidueRing { n } => classify(n).map(|c| c.is_cochordal()).unwrap_or(false),
        _ => true,
    };
    let graph = match build_graph(spec) {
        Ok(g) => g,
        Err(e) => {
            checks.skip("cochordal", claimed.to_string(), &err_text(&e));
            return report(checks);
        }
    };
    let (oracle, ms) = timed(|| oracle_cochordal(&graph));
    checks.compare("cochordal", claimed, oracle, ms);
    if !claimed {
        return report(checks);
    }

    let small = graph.vertex_count() <= bound;
    let skip_why = format!("{} vertices > bound {bound}", graph.vertex_count());
    let table = betti_table(spec);
    let summary = homological_summary(spec);
    let dims = alpha_height_dim(spec);
    let cm = cm_status(spec);

    let formula_betas: Vec<Natural> = table.as_ref().map(|t| t.betas().to_vec()).unwrap_or_default();
    if !small {
        checks.skip("betti", show(&formula_betas.len()), &skip_why);
        checks.skip("independence", String::new(), &skip_why);
        return report(checks);
    }

    let (oracle_betas, ms) = timed(|| oracle_linear_betti_all(&graph, bound));
    match (&table, oracle_betas) {
        (Ok(t), Ok(ob)) => {
            let top = t.pd().max(ob.len()).max(1);
            for i in 1..=top {
                let f = t.beta(i);
                let o = ob.get(i - 1).cloned().unwrap_or_default();
                checks.compare(&format!("beta_{i}"), f, o, ms / top as f64);
            }
            checks.compare("pd", t.pd(), ob.len(), 0.0);
            if let Ok(s) = &summary {
                checks.compare("pd_closed_form", s.pd, ob.len() as u64, 0.0);
            }
            checks.compare("edges_eq_beta_1", t.beta(1), Natural::from(graph.edge_count()), 0.0);
        }
        (Err(e), _) => checks.skip("betti", String::new(), &err_text(e)),
        (_, Err(e)) => checks.skip("betti", String::new(), &err_text(&e)),
    }

    let (ind, ms) = timed(|| oracle_independence(&graph, bound));
    let ind = match ind {
        Ok(i) => i,
        Err(e) => {
            checks.skip("independence", String::new(), &err_text(&e));
            return report(checks);
        }
    };
    if let Ok(d) = &dims {
        checks.compare("alpha", d.alpha, ind.alpha as u64, ms);
        checks.compare("height", d.height, vertices - ind.alpha as u64, 0.0);
    }
    if let Some(c) = chain_params(spec) {
        match independence_polynomial_chain(c) {
            Ok(f) => checks.compare("independence_polynomial", f.render(), ind.polynomial.render(), 0.0),
            Err(e) => checks.skip("independence_polynomial", String::new(), &err_text(&e)),
        }
    }
    if let Ok(t) = &table {
        let via_betti = hilbert_from_betti(t, vertices);
        match hilbert_from_independence(&ind.polynomial, vertices) {
            Ok(via_ind) => checks.compare(
                "hilbert_numerator",
                render_polynomial(&via_betti.numerator),
                render_polynomial(&via_ind.numerator),
                0.0,
            ),
            Err(e) => checks.skip("hilbert_numerator", String::new(), &err_text(&e)),
        }
        checks.compare("pole_order", via_betti.reduce().pole_order, ind.alpha as u64, 0.0);
    }
    if let Ok(c) = &cm {
        checks.compare("cohen_macaulay", c.cohen_macaulay, c.depth == ind.alpha as u64, 0.0);
        checks.compare("unmixed", c.unmixed, Some(ind.maximal_set_sizes.len() <= 1), 0.0);
    }
    report(checks)
}
