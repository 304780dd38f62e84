//! Shortest T'-join computation and the join-dominance oracle.
//!
//! A shortest T'-join is found by metric completion plus an exact
//! minimum-weight perfect matching over the terminals, computed by subset
//! dynamic programming. Blossom machinery is deliberately avoided: at desk
//! scale the 2^k DP is exact, simple and fast enough, and the terminal
//! count is capped.

use crate::caps;
use crate::error::Error;
use crate::graph::{self, Cut, EdgeVector, Graph, Instance};
use crate::rat::Rat;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

/// Exact all-pairs shortest-path distances together with witness paths that
/// realize them in the original graph.
#[derive(Clone, Debug)]
pub struct Metric {
    dist: Vec<Vec<Rat>>,
    paths: Vec<Vec<Vec<usize>>>,
}

impl Metric {
    pub fn distance(&self, u: usize, v: usize) -> &Rat {
        &self.dist[u][v]
    }

    /// Edge ids of a shortest u-v path (simple, possibly empty when u == v).
    pub fn witness_path(&self, u: usize, v: usize) -> &[usize] {
        &self.paths[u][v]
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }
}

/// Metric completion of the instance: exact shortest-path distances and
/// witness paths between all vertex pairs.
pub fn shortest_path_metric(inst: &Instance) -> Metric {
    let g = inst.graph();
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, (u, v)) in g.edges() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }

    let mut dist = Vec::with_capacity(n);
    let mut paths = Vec::with_capacity(n);
    for source in 0..n {
        let (d, pred) = dijkstra(inst, &adj, source);
        let mut row_paths = Vec::with_capacity(n);
        for target in 0..n {
            let mut path = Vec::new();
            let mut v = target;
            while v != source {
                let (p, e) = pred[v].expect("graph is connected");
                path.push(e);
                v = p;
            }
            path.reverse();
            row_paths.push(path);
        }
        dist.push(d);
        paths.push(row_paths);
    }
    Metric { dist, paths }
}

/// Deterministic Dijkstra: heap ordered by (distance, vertex), edges relaxed
/// in id order, strict improvements only. The predecessor structure is a
/// tree, so every witness path is simple.
fn dijkstra(
    inst: &Instance,
    adj: &[Vec<(usize, usize)>],
    source: usize,
) -> (Vec<Rat>, Vec<Option<(usize, usize)>>) {
    let n = adj.len();
    let mut dist: Vec<Option<Rat>> = vec![None; n];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut settled = vec![false; n];
    dist[source] = Some(Rat::zero());
    let mut heap: BinaryHeap<Reverse<(Rat, usize)>> = BinaryHeap::new();
    heap.push(Reverse((Rat::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for &(v, e) in &adj[u] {
            if settled[v] {
                continue;
            }
            let alt = &d + inst.length(e);
            let better = match &dist[v] {
                None => true,
                Some(cur) => alt < *cur,
            };
            if better {
                dist[v] = Some(alt.clone());
                pred[v] = Some((u, e));
                heap.push(Reverse((alt, v)));
            }
        }
    }
    (
        dist.into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect(),
        pred,
    )
}

/// A T'-join together with its exact length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinResult {
    pub join: BTreeSet<usize>,
    pub length: Rat,
}

/// Shortest T'-join: minimum-weight perfect matching of the terminals in the
/// metric completion (subset DP pairing the lowest-indexed unmatched terminal
/// with each candidate, lexicographically smallest pairing on ties), then the
/// symmetric difference of the matched pairs' witness paths.
pub fn min_tjoin(
    inst: &Instance,
    tprime: &BTreeSet<usize>,
    cap: usize,
) -> Result<JoinResult, Error> {
    if !tprime.len().is_multiple_of(2) {
        return Err(Error::invalid("terminal set must have even size"));
    }
    if tprime.is_empty() {
        return Ok(JoinResult {
            join: BTreeSet::new(),
            length: Rat::zero(),
        });
    }
    if tprime.len() > cap {
        return Err(Error::Capacity {
            what: "matching terminals",
            limit: cap,
            actual: tprime.len(),
        });
    }
    if let Some(&v) = tprime.iter().next_back() {
        if v >= inst.vertex_count() {
            return Err(Error::invalid(format!("terminal {v} out of range")));
        }
    }
    let metric = shortest_path_metric(inst);
    let terms: Vec<usize> = tprime.iter().copied().collect();
    let k = terms.len();

    // dp[mask] = min matching cost of the terminals in mask
    let full = (1usize << k) - 1;
    let mut dp: Vec<Option<Rat>> = vec![None; full + 1];
    dp[0] = Some(Rat::zero());
    for mask in 1..=full {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let mut best: Option<Rat> = None;
        for j in (i + 1)..k {
            if mask >> j & 1 == 0 {
                continue;
            }
            let rest = mask & !(1 << i) & !(1 << j);
            if let Some(sub) = &dp[rest] {
                let cand = metric.distance(terms[i], terms[j]) + sub;
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        dp[mask] = best;
    }
    let total = dp[full].clone().expect("even terminal sets admit a matching");

    // reconstruct the lexicographically smallest optimal pairing
    let mut parity = vec![0u8; inst.edge_count()];
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let mut chosen = None;
        for j in (i + 1)..k {
            if mask >> j & 1 == 0 {
                continue;
            }
            let rest = mask & !(1 << i) & !(1 << j);
            if let Some(sub) = &dp[rest] {
                if &(metric.distance(terms[i], terms[j]) + sub) == dp[mask].as_ref().unwrap() {
                    chosen = Some(j);
                    break;
                }
            }
        }
        let j = chosen.expect("optimal pairing must be reconstructible");
        for &e in metric.witness_path(terms[i], terms[j]) {
            parity[e] ^= 1;
        }
        mask &= !(1 << i) & !(1 << j);
    }

    let join: BTreeSet<usize> = (0..inst.edge_count()).filter(|&e| parity[e] == 1).collect();
    let length = inst.set_length(&join);
    // overlapping witness edges cancel in pairs; with nonnegative lengths the
    // cancelled cost is forced to zero, so the set length equals the matching
    // value exactly
    debug_assert_eq!(length, total);
    debug_assert_eq!(&graph::odd_degree_vertices(inst.graph(), &join), tprime);
    Ok(JoinResult { join, length })
}

/// Brute-force oracle: minimum length over ALL edge subsets whose odd-degree
/// set is exactly `tprime`. Exponential in the edge count; test/oracle use.
pub fn min_tjoin_bruteforce(
    inst: &Instance,
    tprime: &BTreeSet<usize>,
    cap_edges: usize,
) -> Result<JoinResult, Error> {
    if !tprime.len().is_multiple_of(2) {
        return Err(Error::invalid("terminal set must have even size"));
    }
    let m = inst.edge_count();
    if m > cap_edges {
        return Err(Error::Capacity {
            what: "join brute force (edges)",
            limit: cap_edges,
            actual: m,
        });
    }
    let g = inst.graph();
    let mut best: Option<(Rat, BTreeSet<usize>)> = None;
    for mask in 0u64..(1u64 << m) {
        let subset: BTreeSet<usize> = (0..m).filter(|&e| (mask >> e) & 1 == 1).collect();
        if &graph::odd_degree_vertices(g, &subset) != tprime {
            continue;
        }
        let len = inst.set_length(&subset);
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, subset));
        }
    }
    let (length, join) = best.ok_or_else(|| Error::invalid("no join exists"))?;
    Ok(JoinResult { join, length })
}

/// Membership oracle for the join-dominance cone: nonnegative vectors whose
/// value on every T'-cut is at least 1. Returns a violating cut as witness
/// when membership fails. Vacuously true when `tprime` is empty.
pub fn qplus_contains(
    g: &Graph,
    tprime: &BTreeSet<usize>,
    v: &EdgeVector,
    cap: usize,
) -> Result<(bool, Option<Cut>), Error> {
    if !v.is_nonnegative() {
        return Err(Error::invalid("vector must be nonnegative"));
    }
    if tprime.is_empty() {
        return Ok((true, None));
    }
    let (cut, value) = graph::min_odd_cut(g, tprime, v, cap)?;
    if value >= Rat::one() {
        Ok((true, None))
    } else {
        Ok((false, Some(cut)))
    }
}

/// Convenience wrapper using the default cut enumeration cap.
pub fn qplus_contains_default(
    g: &Graph,
    tprime: &BTreeSet<usize>,
    v: &EdgeVector,
) -> Result<(bool, Option<Cut>), Error> {
    qplus_contains(g, tprime, v, caps::DEFAULT_CUT_ENUM_CAP)
}
