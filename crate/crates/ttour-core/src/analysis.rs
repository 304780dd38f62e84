//! Certificate engine and constants explorer.
//!
//! Splits the relaxation optimum along each tree into its terminal-join part
//! and the rest, collects the narrow cuts (value below 2) with their repair
//! vectors, and re-derives every inequality of the ratio analysis on the
//! concrete instance in exact rational arithmetic. The numeric constants
//! explorer (floats, explicit tolerances) is strictly segregated from the
//! certified path; the one scalar it shares, the worst-case repair factor,
//! enters certificates either through an exact square root or through a
//! certified rational lower bound.

use crate::bom::{self, BomReport};
use crate::caps::Caps;
use crate::decomposition::TreeCombination;
use crate::error::Error;
use crate::graph::{self, Cut, EdgeVector, Graph, Instance, ScaledWeights};
use crate::rat::Rat;
use crate::tjoin;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Split of the combination load along terminal joins: `p_star(e)` is the
/// total weight of trees whose terminal join uses e, `q_star(e)` the weight
/// of trees using e outside their join. p* + q* is the full load, dominated
/// by the decomposed vector.
#[derive(Clone, Debug)]
pub struct ParityVectors {
    pub p_star: EdgeVector,
    pub q_star: EdgeVector,
}

/// A cut with relaxation value below 2, together with its repair vector:
/// `xq(e)` is the total weight of trees crossing the cut exactly once, at e.
#[derive(Clone, Debug)]
pub struct NarrowCut {
    pub cut: Cut,
    pub x_star_value: Rat,
    pub xq: EdgeVector,
    pub one_tree_prob: Rat,
}

pub fn parity_vectors(
    g: &Graph,
    combo: &TreeCombination,
    t: &BTreeSet<usize>,
) -> Result<ParityVectors, Error> {
    let m = g.edge_count();
    let mut p_star = EdgeVector::zeros(m);
    let mut q_star = EdgeVector::zeros(m);
    for member in &combo.members {
        let join = graph::tree_join(g, &member.tree, t)?;
        for &e in &member.tree {
            if join.contains(&e) {
                p_star.add_at(e, &member.lambda);
            } else {
                q_star.add_at(e, &member.lambda);
            }
        }
    }
    Ok(ParityVectors { p_star, q_star })
}

/// Narrow cuts of `x_star`, enumerated as fundamental cuts of the support
/// trees and deduplicated by edge set. This enumeration is complete: a cut
/// of value below 2 is crossed exactly once by some positive-weight tree,
/// and a once-crossed cut coincides with that tree's fundamental cut at the
/// crossing edge.
pub fn narrow_cuts(
    inst: &Instance,
    x_star: &EdgeVector,
    combo: &TreeCombination,
) -> Result<Vec<NarrowCut>, Error> {
    let g = inst.graph();
    let mut by_edges: BTreeMap<Vec<usize>, Cut> = BTreeMap::new();
    for member in &combo.members {
        for &e in &member.tree {
            let cut = graph::fundamental_cut(g, &member.tree, e)?;
            by_edges.entry(cut.edges().to_vec()).or_insert(cut);
        }
    }
    Ok(collect_narrow(by_edges, x_star, combo, g.edge_count()))
}

/// Oracle variant: narrow cuts from FULL enumeration of canonical sides.
pub fn narrow_cuts_all_cuts(
    inst: &Instance,
    x_star: &EdgeVector,
    combo: &TreeCombination,
    cap: usize,
) -> Result<Vec<NarrowCut>, Error> {
    let g = inst.graph();
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::Capacity {
            what: "full cut enumeration (vertices)",
            limit: cap,
            actual: n,
        });
    }
    let mut by_edges: BTreeMap<Vec<usize>, Cut> = BTreeMap::new();
    for bits in 1u64..(1u64 << (n - 1)) {
        let side: BTreeSet<usize> = (0..n).filter(|&v| ((bits << 1) >> v) & 1 == 1).collect();
        let cut = graph::cut_edges(g, &side)?;
        by_edges.entry(cut.edges().to_vec()).or_insert(cut);
    }
    Ok(collect_narrow(by_edges, x_star, combo, g.edge_count()))
}

fn collect_narrow(
    by_edges: BTreeMap<Vec<usize>, Cut>,
    x_star: &EdgeVector,
    combo: &TreeCombination,
    m: usize,
) -> Vec<NarrowCut> {
    let two = Rat::from_int(2);
    let mut result = Vec::new();
    for (_, cut) in by_edges {
        let x_val = x_star.sum_over(cut.edges());
        if x_val >= two {
            continue;
        }
        let mut xq = EdgeVector::zeros(m);
        let mut one_tree = Rat::zero();
        for member in &combo.members {
            let mut crossing = cut.edges().iter().filter(|e| member.tree.contains(e));
            if let Some(&e) = crossing.next() {
                if crossing.next().is_none() {
                    xq.add_at(e, &member.lambda);
                    one_tree += &member.lambda;
                }
            }
        }
        result.push(NarrowCut {
            cut,
            x_star_value: x_val,
            xq,
            one_tree_prob: one_tree,
        });
    }
    result
}

/// Repair factor of a narrow cut: max{0, (4β - 1 - β·x*(Q)) / (2 - x*(Q))}.
pub fn f_q(beta: &Rat, cut_value: &Rat) -> Result<Rat, Error> {
    check_beta_open(beta)?;
    let two = Rat::from_int(2);
    if cut_value >= &two {
        return Err(Error::domain(format!(
            "repair factor needs a cut value below 2, got {cut_value}"
        )));
    }
    let numer = &Rat::from_int(4) * beta - Rat::one() - beta * cut_value;
    if numer.is_negative() {
        return Ok(Rat::zero());
    }
    Ok(&numer / &(&two - cut_value))
}

/// Repair vector for one tree: the f_q-weighted sum of the repair vectors of
/// the narrow cuts the tree crosses at least twice.
pub fn s_vector(
    inst: &Instance,
    tree: &BTreeSet<usize>,
    beta: &Rat,
    narrow: &[NarrowCut],
) -> Result<EdgeVector, Error> {
    let mut s = EdgeVector::zeros(inst.edge_count());
    for q in narrow {
        let crossings = q.cut.edges().iter().filter(|e| tree.contains(e)).count();
        if crossings < 2 {
            continue;
        }
        let factor = f_q(beta, &q.x_star_value)?;
        if factor.is_zero() {
            continue;
        }
        for (e, v) in q.xq.iter() {
            if !v.is_zero() {
                s.add_at(e, &(&factor * v));
            }
        }
    }
    Ok(s)
}

/// Deficit of a cut for one tree: shortfall of β·x* + (1-2β)·χ_F below 1 on
/// the cut, defined as 0 for narrow cuts crossed exactly once.
pub fn deficit(tree: &BTreeSet<usize>, cut: &Cut, beta: &Rat, x_star: &EdgeVector) -> Rat {
    let x_c = x_star.sum_over(cut.edges());
    let k = cut.edges().iter().filter(|e| tree.contains(e)).count();
    deficit_from_values(&x_c, k, beta)
}

fn deficit_from_values(x_c: &Rat, crossings: usize, beta: &Rat) -> Rat {
    if x_c < &Rat::from_int(2) && crossings == 1 {
        return Rat::zero();
    }
    let covered = beta * x_c
        + &(&(Rat::one() - &(&Rat::from_int(2) * beta)) * &Rat::from(crossings));
    let short = Rat::one() - covered;
    if short.is_positive() {
        short
    } else {
        Rat::zero()
    }
}

fn check_beta_open(beta: &Rat) -> Result<(), Error> {
    if beta <= &Rat::new(1, 3) || beta >= &Rat::new(1, 2) {
        return Err(Error::domain(format!(
            "beta must lie strictly between 1/3 and 1/2, got {beta}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// One named exact check. `lhs`/`rhs` carry the tightest (or the violated)
/// sub-inequality in the form lhs <= rhs.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of the full certificate run at one beta.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub beta: Rat,
    pub all_pass: bool,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Accumulates sub-inequalities of one check, keeping the first violation
/// or, if none, the tightest margin as the reported witness.
struct Gauge {
    name: &'static str,
    pass: bool,
    margin: Option<Rat>,
    lhs: Option<Rat>,
    rhs: Option<Rat>,
    witness: Option<String>,
    note: Option<String>,
}

impl Gauge {
    fn new(name: &'static str) -> Self {
        Gauge {
            name,
            pass: true,
            margin: None,
            lhs: None,
            rhs: None,
            witness: None,
            note: None,
        }
    }

    /// Records the inequality lhs <= rhs.
    fn le(&mut self, lhs: Rat, rhs: Rat, witness: impl FnOnce() -> String) {
        if !self.pass {
            return;
        }
        if lhs > rhs {
            self.pass = false;
            self.witness = Some(witness());
            self.lhs = Some(lhs);
            self.rhs = Some(rhs);
            self.margin = None;
            return;
        }
        let margin = &rhs - &lhs;
        if self.margin.as_ref().is_none_or(|m| margin < *m) {
            self.margin = Some(margin);
            self.lhs = Some(lhs);
            self.rhs = Some(rhs);
            self.witness = Some(witness());
        }
    }

    /// Records a structural requirement with no numeric sides.
    fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if self.pass && !ok {
            self.pass = false;
            self.witness = Some(witness());
            self.lhs = None;
            self.rhs = None;
            self.margin = None;
        }
    }

    fn set_note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            pass: self.pass,
            lhs: self.lhs,
            rhs: self.rhs,
            witness: self.witness,
            note: self.note,
        }
    }
}

/// Runs every certificate check on a pipeline report; duplicates none of the
/// pipeline's work beyond what the checks themselves require. All checks are
/// theorems for any valid report, so a failure indicates a bug (or a
/// deliberately corrupted report) and comes with a concrete witness.
pub fn verify_certificates(
    inst: &Instance,
    report: &BomReport,
    beta: &Rat,
    caps: &Caps,
) -> Result<Certificate, Error> {
    check_beta_open(beta)?;
    let g = inst.graph();
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > 64 {
        return Err(Error::Capacity {
            what: "certificate edge masks (edges)",
            limit: 64,
            actual: m,
        });
    }
    let x_star = &report.lp.x_star;
    let cx = &report.lp.value;
    let terminals = inst.terminals();

    // per-member data
    let members = &report.combo.members;
    let tree_masks: Vec<u64> = members.iter().map(|mb| edge_mask(&mb.tree)).collect();
    let mut joins = Vec::with_capacity(members.len());
    let mut tprimes: Vec<BTreeSet<usize>> = Vec::with_capacity(members.len());
    for mb in members {
        joins.push(graph::tree_join(g, &mb.tree, terminals)?);
        let t_f = graph::odd_degree_vertices(g, &mb.tree);
        tprimes.push(t_f.symmetric_difference(terminals).copied().collect());
    }
    let taus: Vec<&Rat> = report.per_tree.iter().map(|t| &t.join_length).collect();
    let expected_tau: Rat = members
        .iter()
        .zip(&taus)
        .map(|(mb, tau)| &mb.lambda * *tau)
        .sum();

    let parity = parity_vectors(g, &report.combo, terminals)?;
    let narrow = narrow_cuts(inst, x_star, &report.combo)?;
    let narrow_masks: Vec<u64> = narrow.iter().map(|q| edge_mask_slice(q.cut.edges())).collect();

    let s_vectors: Vec<EdgeVector> = members
        .iter()
        .map(|mb| s_vector(inst, &mb.tree, beta, &narrow))
        .collect::<Result<_, _>>()?;
    let mut expected_s = EdgeVector::zeros(m);
    for (mb, s) in members.iter().zip(&s_vectors) {
        for (e, v) in s.iter() {
            if !v.is_zero() {
                expected_s.add_at(e, &(&mb.lambda * v));
            }
        }
    }

    // worst-case repair factor: exact when the square root is rational
    // (so always at the default 4/9), otherwise a certified lower bound --
    // checking against a lower bound only strengthens the inequalities
    let (f_used, f_note) = match beta_point_exact(beta)? {
        Some(exact) => (exact.f, "repair factor: exact closed form"),
        None => (
            f_lower_bound(beta, 128),
            "repair factor: certified rational lower bound",
        ),
    };

    let opt = if m <= caps.bruteforce_edges {
        Some(bom::brute_force_opt(inst, caps.bruteforce_edges)?.length)
    } else {
        None
    };

    let mut checks = Vec::with_capacity(13);

    // lemma2: crossing-count bounds for every realizable cut, plus the
    // parity consequences for narrow cuts
    {
        let mut gauge = Gauge::new("lemma2");
        let full_enum = n <= caps.cut_enum;
        let candidates: Vec<Cut> = if full_enum && n >= 2 {
            let mut cuts = Vec::with_capacity((1usize << (n - 1)) - 1);
            for bits in 1u64..(1u64 << (n - 1)) {
                let side: BTreeSet<usize> =
                    (0..n).filter(|&v| ((bits << 1) >> v) & 1 == 1).collect();
                cuts.push(graph::cut_edges(g, &side)?);
            }
            cuts
        } else {
            gauge.set_note("fundamental-cut candidates only (full enumeration above cap)");
            let mut by_edges: BTreeMap<Vec<usize>, Cut> = BTreeMap::new();
            for mb in members {
                for &e in &mb.tree {
                    let cut = graph::fundamental_cut(g, &mb.tree, e)?;
                    by_edges.entry(cut.edges().to_vec()).or_insert(cut);
                }
            }
            by_edges.into_values().collect()
        };
        for cut in &candidates {
            let cmask = edge_mask_slice(cut.edges());
            let x_c = x_star.sum_over(cut.edges());
            let mut ge2 = Rat::zero();
            let mut eq1 = Rat::zero();
            for (i, (mb, &fmask)) in members.iter().zip(&tree_masks).enumerate() {
                match (cmask & fmask).count_ones() {
                    // spanning trees cross every cut; a miss means the
                    // report's combination is corrupted
                    0 => gauge.require(false, || format!("member {i} does not cross {cut}")),
                    1 => eq1 += &mb.lambda,
                    _ => ge2 += &mb.lambda,
                }
            }
            gauge.le(ge2, &x_c - &Rat::one(), || format!("{cut}: crossed >= 2"));
            gauge.le(&Rat::from_int(2) - &x_c, eq1, || {
                format!("{cut}: crossed exactly once")
            });
        }
        // narrow cuts separate the terminals oddly, and a tree crossing one
        // exactly once cannot be parity-deficient for that tree
        for (q, &qmask) in narrow.iter().zip(&narrow_masks) {
            gauge.require(q.cut.is_odd_for(terminals), || {
                format!("{} is not odd for the terminals", q.cut)
            });
            for (i, &fmask) in tree_masks.iter().enumerate() {
                if (qmask & fmask).count_ones() == 1 {
                    gauge.require(!q.cut.is_odd_for(&tprimes[i]), || {
                        format!("{} crossed once by tree {i} yet needs parity repair", q.cut)
                    });
                }
            }
        }
        checks.push(gauge.finish());
    }

    // lemma3: for a fixed edge, distinct narrow cuts cannot both be crossed
    // exactly once at that edge by the same tree; such an edge lies on the
    // tree's terminal join
    {
        let mut gauge = Gauge::new("lemma3");
        for (i, mb) in members.iter().enumerate() {
            for &e in &mb.tree {
                let hits = narrow_masks
                    .iter()
                    .filter(|&&qmask| qmask & tree_masks[i] == (1u64 << e))
                    .count();
                gauge.require(hits <= 1, || {
                    format!("edge e{e} of tree {i} is the single crossing of {hits} narrow cuts")
                });
                if hits == 1 {
                    gauge.require(joins[i].contains(&e), || {
                        format!("edge e{e} of tree {i} is outside the terminal join")
                    });
                }
            }
        }
        checks.push(gauge.finish());
    }

    // lemma4: repair vectors live inside their cut, repair at least the
    // cut's deficit, and sum to at most p*
    {
        let mut gauge = Gauge::new("lemma4");
        let mut total = EdgeVector::zeros(m);
        for q in &narrow {
            for (e, v) in q.xq.iter() {
                if !v.is_zero() {
                    gauge.require(q.cut.contains_edge(e), || {
                        format!("repair vector of {} has mass outside the cut at e{e}", q.cut)
                    });
                    total.add_at(e, v);
                }
            }
            gauge.le(
                &Rat::from_int(2) - &q.x_star_value,
                q.xq.total(),
                || format!("repair mass of {}", q.cut),
            );
            gauge.require(q.xq.total() == q.one_tree_prob, || {
                format!("repair mass of {} disagrees with its crossing weight", q.cut)
            });
        }
        for e in 0..m {
            gauge.le(total[e].clone(), parity.p_star[e].clone(), || {
                format!("summed repair vectors at e{e}")
            });
        }
        checks.push(gauge.finish());
    }

    // lemma5: positive deficits only on narrow cuts crossed >= 2, bounded by
    // 4β - 1 - β x*(C)
    {
        let mut gauge = Gauge::new("lemma5");
        if n <= caps.cut_enum {
            let four_beta_minus_one = &(&Rat::from_int(4) * beta) - &Rat::one();
            for bits in 1u64..(1u64 << (n.max(1) - 1)) {
                let side_mask = bits << 1;
                let (emask, x_c) = side_cut_data(g, x_star, side_mask);
                for (i, &fmask) in tree_masks.iter().enumerate() {
                    if !side_is_odd_for(side_mask, &tprimes[i]) {
                        continue;
                    }
                    let k = (emask & fmask).count_ones() as usize;
                    let d = deficit_from_values(&x_c, k, beta);
                    if d.is_positive() {
                        gauge.require(x_c < Rat::from_int(2), || {
                            format!("deficient cut of tree {i} is not narrow")
                        });
                        gauge.require(k >= 2, || {
                            format!("deficient cut of tree {i} crossed only {k} time(s)")
                        });
                        gauge.le(d, &four_beta_minus_one - &(beta * &x_c), || {
                            format!("deficit of side mask {side_mask:#b} for tree {i}")
                        });
                    }
                }
            }
        } else {
            gauge.set_note("skipped: side enumeration above cap");
        }
        checks.push(gauge.finish());
    }

    // lemma6: β x* + (1-2β) χ_F + s^F dominates parity correction for every
    // member, verified by the odd-cut oracle
    {
        let mut gauge = Gauge::new("lemma6");
        let one_minus_2b = Rat::one() - &(&Rat::from_int(2) * beta);
        for (i, mb) in members.iter().enumerate() {
            let chi = EdgeVector::indicator(m, &mb.tree);
            let v = x_star.scale(beta).add(&chi.scale(&one_minus_2b)).add(&s_vectors[i]);
            let (ok, witness) = tjoin::qplus_contains(g, &tprimes[i], &v, caps.cut_enum)?;
            gauge.require(ok, || {
                let cut = witness.map(|c| c.to_string()).unwrap_or_default();
                format!("repaired vector of tree {i} misses {cut}")
            });
        }
        checks.push(gauge.finish());
    }

    // claim1: expected parity-correction cost <= (1-β) c x* + c E[s]
    {
        let mut gauge = Gauge::new("claim1");
        let rhs = &(&(Rat::one() - beta) * cx) + &inst.lengths().dot(&expected_s);
        gauge.le(expected_tau.clone(), rhs, || "expected correction cost".to_string());
        checks.push(gauge.finish());
    }

    // claim2: per narrow cut, crossing weight times repair factor stays
    // below the worst-case factor
    {
        let mut gauge = Gauge::new("claim2");
        gauge.set_note(f_note);
        for (q, &qmask) in narrow.iter().zip(&narrow_masks) {
            let mut pr_ge2 = Rat::zero();
            for (mb, &fmask) in members.iter().zip(&tree_masks) {
                if (qmask & fmask).count_ones() >= 2 {
                    pr_ge2 += &mb.lambda;
                }
            }
            let lhs = &pr_ge2 * &f_q(beta, &q.x_star_value)?;
            gauge.le(lhs, f_used.clone(), || format!("{}", q.cut));
        }
        checks.push(gauge.finish());
    }

    // claim3: E[s] <= f(β) p* componentwise
    {
        let mut gauge = Gauge::new("claim3");
        gauge.set_note(f_note);
        for e in 0..m {
            gauge.le(
                expected_s[e].clone(),
                &f_used * &parity.p_star[e],
                || format!("expected repair at e{e}"),
            );
        }
        checks.push(gauge.finish());
    }

    // prop_s2: with a c-minimum tree, parity correction <= (2/3) opt and the
    // single-tree tour <= (5/3) opt
    {
        let mut gauge = Gauge::new("prop_s2");
        match &opt {
            Some(opt_len) => {
                let tree = bom::min_cost_spanning_tree(inst);
                let tour = bom::christofides_single(inst, &tree, caps)?;
                gauge.le(
                    tour.join_length.clone(),
                    Rat::new(2, 3) * opt_len,
                    || "minimum-tree parity correction vs 2/3 opt".to_string(),
                );
                gauge.le(tour.length.clone(), Rat::new(5, 3) * opt_len, || {
                    "minimum-tree tour vs 5/3 opt".to_string()
                });
            }
            None => gauge.set_note("skipped: brute-force optimum above cap"),
        }
        checks.push(gauge.finish());
    }

    // prop_s3: (x* + p*)/2 dominates parity correction for every even
    // terminal set; checked for the member parities always, and exhaustively
    // when small enough. Exhaustiveness collapses to "every cut has value
    // >= 1": any nonempty proper side separates some even pair oddly.
    {
        let mut gauge = Gauge::new("prop_s3");
        let v = x_star.add(&parity.p_star).scale(&Rat::new(1, 2));
        for (i, tprime) in tprimes.iter().enumerate() {
            let (ok, witness) = tjoin::qplus_contains(g, tprime, &v, caps.cut_enum)?;
            gauge.require(ok, || {
                let cut = witness.map(|c| c.to_string()).unwrap_or_default();
                format!("member {i} parity set misses {cut}")
            });
        }
        if n <= caps.universal_tprime {
            gauge.set_note("exhaustive over all even terminal sets");
            if let Some(side_mask) = some_side_below_one(g, &v) {
                gauge.require(false, || {
                    format!("side mask {side_mask:#b} has value below 1")
                });
            }
        } else {
            gauge.set_note("member parity sets only (exhaustive pass above cap)");
        }
        checks.push(gauge.finish());
    }

    // corollary_s3: E[τ] <= min{c x* - c q*/2, c q*} <= (2/3) c x*
    {
        let mut gauge = Gauge::new("corollary_s3");
        let cq = inst.lengths().dot(&parity.q_star);
        let first = cx - &(&cq / &Rat::from_int(2));
        let mid = first.min(cq);
        gauge.le(expected_tau.clone(), mid.clone(), || {
            "expected correction vs parity split bound".to_string()
        });
        gauge.le(mid, Rat::new(2, 3) * cx, || {
            "parity split bound vs 2/3 of the relaxation".to_string()
        });
        checks.push(gauge.finish());
    }

    // theorem2: E[τ] <= (3/5) c x*
    {
        let mut gauge = Gauge::new("theorem2");
        gauge.le(expected_tau.clone(), Rat::new(3, 5) * cx, || {
            "expected correction vs 3/5 of the relaxation".to_string()
        });
        checks.push(gauge.finish());
    }

    // fact_lower_bound: the relaxation value never exceeds the optimum
    {
        let mut gauge = Gauge::new("fact_lower_bound");
        match &opt {
            Some(opt_len) => gauge.le(cx.clone(), opt_len.clone(), || {
                "relaxation value vs brute-force optimum".to_string()
            }),
            None => gauge.set_note("skipped: brute-force optimum above cap"),
        }
        checks.push(gauge.finish());
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(Certificate {
        beta: beta.clone(),
        all_pass,
        checks,
    })
}

fn edge_mask(edges: &BTreeSet<usize>) -> u64 {
    edges.iter().fold(0u64, |acc, &e| acc | (1u64 << e))
}

fn edge_mask_slice(edges: &[usize]) -> u64 {
    edges.iter().fold(0u64, |acc, &e| acc | (1u64 << e))
}

fn side_is_odd_for(side_mask: u64, t: &BTreeSet<usize>) -> bool {
    t.iter().filter(|&&v| (side_mask >> v) & 1 == 1).count() % 2 == 1
}

/// Edge mask and exact value of the cut defined by a side mask.
fn side_cut_data(g: &Graph, x: &EdgeVector, side_mask: u64) -> (u64, Rat) {
    let mut emask = 0u64;
    let mut value = Rat::zero();
    for (e, (u, v)) in g.edges() {
        if ((side_mask >> u) ^ (side_mask >> v)) & 1 == 1 {
            emask |= 1u64 << e;
            value += &x[e];
        }
    }
    (emask, value)
}

/// Scans every canonical side for a cut value below 1; returns such a side.
fn some_side_below_one(g: &Graph, v: &EdgeVector) -> Option<u64> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let scaled = ScaledWeights::from_vector(v);
    for bits in 1u64..(1u64 << (n - 1)) {
        let side_mask = bits << 1;
        if scaled.crossing_sum(g, side_mask) < scaled.scale {
            return Some(side_mask);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Constants explorer
// ---------------------------------------------------------------------------

/// One row of the constants table. Only `beta` is exact; the rest is plain
/// floating point for exploration.
#[derive(Clone, Debug, Serialize)]
pub struct BetaPoint {
    pub beta: Rat,
    pub omega: f64,
    pub f_of_beta: f64,
    pub epsilon: f64,
}

/// Exact closed-form constants at betas whose inner square root is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactBetaPoint {
    pub omega: Rat,
    pub f: Rat,
    pub epsilon: Rat,
}

fn check_beta_closed_left(beta: &Rat) -> Result<(), Error> {
    // the closed-form curve extends continuously to beta = 1/3 (omega = 0);
    // 1/2 stays excluded (omega would hit 1)
    if beta < &Rat::new(1, 3) || beta >= &Rat::new(1, 2) {
        return Err(Error::domain(format!(
            "beta must lie in [1/3, 1/2), got {beta}"
        )));
    }
    Ok(())
}

/// Exact constants when sqrt(1/β - 2) is rational (always at β = 4/9):
/// ω = 1 - sqrt(1/β - 2), f = βω(3 - 1/β - ω)/(1 - ω), ε = 1/2 - β/(f + 1).
pub fn beta_point_exact(beta: &Rat) -> Result<Option<ExactBetaPoint>, Error> {
    check_beta_closed_left(beta)?;
    let inner = beta.recip() - Rat::from_int(2);
    let root = match inner.sqrt_exact() {
        None => return Ok(None),
        Some(r) => r,
    };
    let omega = Rat::one() - &root;
    let f = if omega.is_zero() {
        Rat::zero()
    } else {
        let numer = beta * &omega * (Rat::from_int(3) - beta.recip() - &omega);
        &numer / &root
    };
    let epsilon = Rat::new(1, 2) - &(beta / &(&f + &Rat::one()));
    Ok(Some(ExactBetaPoint { omega, f, epsilon }))
}

/// Certified rational lower bound on the worst-case repair factor
/// f(β) = max over ω in [0,1) of βω(3 - 1/β - ω)/(1 - ω): evaluates the
/// objective at a rational point just below the true maximizer, using an
/// outward-rounded integer square root with `bits` bits of precision.
pub fn f_lower_bound(beta: &Rat, bits: u32) -> Rat {
    let inner = beta.recip() - Rat::from_int(2);
    debug_assert!(!inner.is_negative());
    // upper bound on sqrt(p/q): (isqrt(p * 4^k / q) + 2) / 2^k
    let shifted: BigInt = (inner.numer() << (2 * bits)) / inner.denom();
    let root_up = Rat::from_big(shifted.sqrt() + 2, BigInt::from(1) << bits);
    let omega = Rat::one() - &root_up;
    if !omega.is_positive() {
        return Rat::zero();
    }
    let numer = beta * &omega * (Rat::from_int(3) - beta.recip() - &omega);
    let value = &numer / &(Rat::one() - &omega);
    if value.is_negative() {
        Rat::zero()
    } else {
        value
    }
}

/// Floating-point constants at one beta. Uses the exact route when the
/// square root is rational (so the curve is clean at the 1/3 boundary).
pub fn f_beta(beta: &Rat) -> Result<BetaPoint, Error> {
    if let Some(exact) = beta_point_exact(beta)? {
        return Ok(BetaPoint {
            beta: beta.clone(),
            omega: exact.omega.to_f64(),
            f_of_beta: exact.f.to_f64(),
            epsilon: exact.epsilon.to_f64(),
        });
    }
    let b = beta.to_f64();
    let root = (1.0 / b - 2.0).sqrt();
    let omega = 1.0 - root;
    let f = b * omega * (3.0 - 1.0 / b - omega) / (1.0 - omega);
    let epsilon = 0.5 - b / (f + 1.0);
    Ok(BetaPoint {
        beta: beta.clone(),
        omega,
        f_of_beta: f,
        epsilon,
    })
}

/// Direct numeric maximization of (x-1)(4β-1-βx)/(2-x) over x in [1,2);
/// cross-validation target for the closed form (the objective is concave).
pub fn numeric_max_f(beta: f64) -> f64 {
    let g = |x: f64| (x - 1.0) * (4.0 * beta - 1.0 - beta * x) / (2.0 - x);
    ternary_max(g, 1.0, 2.0 - 1e-12).1
}

fn ternary_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let x = (lo + hi) / 2.0;
    (x, g(x))
}

/// Numeric evaluation of the two-variable mixed bound.
#[derive(Clone, Debug, Serialize)]
pub struct MixedBoundPoint {
    pub beta: f64,
    pub y: f64,
    pub epsilon: f64,
    pub f_value: f64,
    /// inner maximizer found numerically
    pub omega_numeric: f64,
    /// the two printed closed forms, recorded without asserting either:
    /// sqrt(1/β - 2 + y/β) and 1 - sqrt(1/β - 2)
    pub omega_sqrt_form: f64,
    pub omega_one_minus_sqrt_form: f64,
}

/// ε(β, y) = 1/2 - (β - y)/(f(β, y) + 1) with
/// f(β, y) = max over ω in [0,1) of (βω(3 - 1/β - ω) - y)/(1 - ω),
/// the inner maximum found by direct numeric search (the objective is
/// concave in ω).
pub fn mixed_bound(beta: f64, y: f64) -> Result<f64, Error> {
    Ok(mixed_bound_point(beta, y)?.epsilon)
}

pub fn mixed_bound_point(beta: f64, y: f64) -> Result<MixedBoundPoint, Error> {
    if !(1.0 / 3.0..0.5).contains(&beta) {
        return Err(Error::domain(format!(
            "beta must lie in [1/3, 1/2), got {beta}"
        )));
    }
    if y < 0.0 {
        return Err(Error::domain(format!("y must be nonnegative, got {y}")));
    }
    let g = |w: f64| (beta * w * (3.0 - 1.0 / beta - w) - y) / (1.0 - w);
    let (omega_numeric, f_value) = ternary_max(g, 0.0, 1.0 - 1e-12);
    let epsilon = 0.5 - (beta - y) / (f_value + 1.0);
    Ok(MixedBoundPoint {
        beta,
        y,
        epsilon,
        f_value,
        omega_numeric,
        omega_sqrt_form: (1.0 / beta - 2.0 + y / beta).sqrt(),
        omega_one_minus_sqrt_form: 1.0 - (1.0 / beta - 2.0).sqrt(),
    })
}

/// Result of minimizing the mixed bound over (β, y).
#[derive(Clone, Debug, Serialize)]
pub struct MixedBoundMin {
    pub beta: f64,
    pub y: f64,
    pub epsilon: f64,
}

/// Grid search with successive refinement for min ε(β, y) over
/// β in (1/3, 1/2), y in [0, y_max].
pub fn minimize_mixed_bound(y_max: f64) -> MixedBoundMin {
    let beta_lo_domain = 1.0 / 3.0 + 1e-9;
    let beta_hi_domain = 0.5 - 1e-9;
    let mut beta_range = (beta_lo_domain, beta_hi_domain);
    let mut y_range = (0.0f64, y_max.max(0.0));
    let mut best = MixedBoundMin {
        beta: 4.0 / 9.0,
        y: 0.0,
        epsilon: f64::INFINITY,
    };
    for round in 0..7 {
        let steps = if round == 0 { 80 } else { 24 };
        for i in 0..=steps {
            let beta = beta_range.0 + (beta_range.1 - beta_range.0) * i as f64 / steps as f64;
            for j in 0..=steps {
                let y = y_range.0 + (y_range.1 - y_range.0) * j as f64 / steps as f64;
                let eps = mixed_bound(beta, y).expect("grid stays inside the domain");
                if eps < best.epsilon {
                    best = MixedBoundMin { beta, y, epsilon: eps };
                }
            }
        }
        let beta_r = (beta_range.1 - beta_range.0) / steps as f64 * 2.0;
        let y_r = (y_range.1 - y_range.0) / steps as f64 * 2.0;
        beta_range = (
            (best.beta - beta_r).max(beta_lo_domain),
            (best.beta + beta_r).min(beta_hi_domain),
        );
        y_range = ((best.y - y_r).max(0.0), (best.y + y_r).min(y_max));
    }
    best
}
