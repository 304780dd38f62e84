//! Exact optimization over the cut/partition relaxation.
//!
//! The feasible region is: x(δ(W)) >= 2 for every nonempty proper W meeting
//! the terminal set evenly, x(δ(𝒲)) >= |𝒲|-1 for every partition 𝒲 of V,
//! and 0 <= x(e) <= 2. Constraints are generated lazily: the rational
//! simplex is re-solved with exhaustively separated violated cuts and
//! partitions until a full separation pass stays silent. Degree equalities
//! are deliberately not imposed; everything downstream only needs domination.

use crate::caps::Caps;
use crate::error::Error;
use crate::graph::{self, Cut, EdgeVector, Instance, Partition, ScaledWeights};
use crate::rat::Rat;
use crate::simplex::{self, Cmp, Problem, Row, Sense};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

/// A generated constraint of the relaxation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpConstraint {
    /// x(δ(W)) >= 2
    Cut(Cut),
    /// x(δ(𝒲)) >= |𝒲| - 1
    Partition(Partition),
}

impl LpConstraint {
    pub fn text(&self) -> String {
        match self {
            LpConstraint::Cut(c) => {
                let side: Vec<String> = c.side().iter().map(|v| v.to_string()).collect();
                format!("cut {} >= 2", side.join(" "))
            }
            LpConstraint::Partition(p) => {
                format!("partition {} >= {}", p, p.class_count() - 1)
            }
        }
    }
}

/// Exact optimum of the relaxation together with the generated constraints.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x_star: EdgeVector,
    pub value: Rat,
    pub active_constraints: Vec<LpConstraint>,
}

impl LpSolution {
    /// One text line per generated constraint.
    pub fn constraint_lines(&self) -> Vec<String> {
        self.active_constraints.iter().map(|c| c.text()).collect()
    }
}

/// Finds some nonempty proper W with |W ∩ T| even and x(δ(W)) < 2, by
/// enumerating canonical cut sides. Returns the most violated one, ties
/// broken by the lexicographically smallest side.
pub fn separate_even_cut(
    inst: &Instance,
    x: &EdgeVector,
    cap: usize,
) -> Result<Option<Cut>, Error> {
    let n = inst.vertex_count();
    if n > cap {
        return Err(Error::Capacity {
            what: "cut separation (vertices)",
            limit: cap,
            actual: n,
        });
    }
    if n == 1 {
        return Ok(None);
    }
    let g = inst.graph();
    let t_mask: u64 = inst
        .terminals()
        .iter()
        .fold(0u64, |acc, &v| acc | (1u64 << v));
    let scaled = ScaledWeights::from_vector(x);
    let two = BigInt::from(2) * &scaled.scale;
    let mut best: Option<(BigInt, u64)> = None;
    for bits in 1u64..(1u64 << (n - 1)) {
        let side_mask = bits << 1;
        if !(side_mask & t_mask).count_ones().is_multiple_of(2) {
            continue;
        }
        let value = scaled.crossing_sum(g, side_mask);
        if value >= two {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bv, bm)) => {
                value < *bv || (value == *bv && graph::side_lex_less(side_mask, *bm, n))
            }
        };
        if better {
            best = Some((value, side_mask));
        }
    }
    match best {
        None => Ok(None),
        Some((_, mask)) => {
            let side: BTreeSet<usize> = (0..n).filter(|&v| (mask >> v) & 1 == 1).collect();
            Ok(Some(graph::cut_edges(g, &side)?))
        }
    }
}

/// Finds a partition 𝒲 with x(δ(𝒲)) < |𝒲| - 1, exhausting all set
/// partitions of V (Bell-number bounded). Returns the most violated one.
pub fn separate_partition(
    inst: &Instance,
    x: &EdgeVector,
    cap: usize,
) -> Result<Option<Partition>, Error> {
    let n = inst.vertex_count();
    if n > cap {
        return Err(Error::Capacity {
            what: "partition separation (vertices)",
            limit: cap,
            actual: n,
        });
    }
    if n == 1 {
        return Ok(None);
    }
    let g = inst.graph();
    let scaled = ScaledWeights::from_vector(x);
    let edges: Vec<(usize, usize, usize)> = g.edges().map(|(e, (u, v))| (e, u, v)).collect();

    let mut labels = vec![0usize; n];
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    // restricted-growth-string enumeration of set partitions
    fn recurse(
        i: usize,
        max_label: usize,
        labels: &mut Vec<usize>,
        edges: &[(usize, usize, usize)],
        scaled: &ScaledWeights,
        best: &mut Option<(BigInt, Vec<usize>)>,
    ) {
        let n = labels.len();
        if i == n {
            let k = max_label + 1;
            if k == 1 {
                return;
            }
            let mut crossing = BigInt::zero();
            for &(e, u, v) in edges {
                if labels[u] != labels[v] && !scaled.values[e].is_zero() {
                    crossing += &scaled.values[e];
                }
            }
            let bound = BigInt::from((k - 1) as u64) * &scaled.scale;
            if crossing < bound {
                let violation = bound - crossing;
                if best.as_ref().is_none_or(|(bv, _)| violation > *bv) {
                    *best = Some((violation, labels.clone()));
                }
            }
            return;
        }
        for v in 0..=max_label + 1 {
            labels[i] = v;
            recurse(i + 1, max_label.max(v), labels, edges, scaled, best);
        }
    }
    labels[0] = 0;
    recurse(1, 0, &mut labels, &edges, &scaled, &mut best);

    match best {
        None => Ok(None),
        Some((_, labels)) => {
            let k = labels.iter().max().copied().unwrap_or(0) + 1;
            let mut classes = vec![Vec::new(); k];
            for (v, &c) in labels.iter().enumerate() {
                classes[c].push(v);
            }
            Ok(Some(Partition::new(classes, n)?))
        }
    }
}

/// Exact optimum of c^T x over the relaxation by rational simplex with
/// lazily generated constraints. The returned vertex satisfies every
/// constraint: the loop only stops after a silent full separation pass.
pub fn solve_relaxation(inst: &Instance, caps: &Caps) -> Result<LpSolution, Error> {
    let n = inst.vertex_count();
    let m = inst.edge_count();
    if n == 1 {
        return Ok(LpSolution {
            x_star: EdgeVector::zeros(0),
            value: Rat::zero(),
            active_constraints: Vec::new(),
        });
    }
    let g = inst.graph();

    let mut constraints: Vec<LpConstraint> = Vec::new();
    let mut seen_cuts: BTreeSet<Vec<usize>> = BTreeSet::new();

    // Seed with the singleton cuts that belong to the family (vertices
    // outside T) and the all-singleton partition; both are lazily separable
    // anyway, seeding just saves iterations.
    for v in 0..n {
        if !inst.terminals().contains(&v) {
            let cut = graph::cut_edges(g, &[v].into_iter().collect())?;
            if seen_cuts.insert(cut.edges().to_vec()) {
                constraints.push(LpConstraint::Cut(cut));
            }
        }
    }
    let singletons = Partition::new((0..n).map(|v| vec![v]).collect(), n)?;
    constraints.push(LpConstraint::Partition(singletons));

    loop {
        let mut rows = Vec::with_capacity(constraints.len() + m);
        for c in &constraints {
            let (edges, rhs) = match c {
                LpConstraint::Cut(cut) => (cut.edges().to_vec(), Rat::from_int(2)),
                LpConstraint::Partition(p) => (
                    graph::partition_cross_edges(g, p)?,
                    Rat::from(p.class_count() - 1),
                ),
            };
            rows.push(Row {
                coeffs: EdgeVector::indicator(m, &edges).values().to_vec(),
                cmp: Cmp::Ge,
                rhs,
            });
        }
        for e in 0..m {
            let mut coeffs = vec![Rat::zero(); m];
            coeffs[e] = Rat::one();
            rows.push(Row {
                coeffs,
                cmp: Cmp::Le,
                rhs: Rat::from_int(2),
            });
        }
        let problem = Problem {
            sense: Sense::Minimize,
            objective: inst.lengths().values().to_vec(),
            rows,
        };
        let sol = simplex::solve(&problem)
            .map_err(|e| Error::invalid(format!("relaxation solve failed unexpectedly: {e}")))?;
        let x = EdgeVector::from_values(sol.values);

        let mut added = false;
        if let Some(cut) = separate_even_cut(inst, &x, caps.cut_enum)? {
            debug_assert!(!seen_cuts.contains(cut.edges()));
            seen_cuts.insert(cut.edges().to_vec());
            constraints.push(LpConstraint::Cut(cut));
            added = true;
        }
        if let Some(p) = separate_partition(inst, &x, caps.partition_enum)? {
            constraints.push(LpConstraint::Partition(p));
            added = true;
        }
        if !added {
            return Ok(LpSolution {
                x_star: x,
                value: sol.objective,
                active_constraints: constraints,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ev(vals: &[(i64, i64)]) -> EdgeVector {
        EdgeVector::from_values(vals.iter().map(|&(n, d)| Rat::new(n, d)).collect())
    }

    #[test]
    fn even_cut_separation_examples() {
        let tri = fixtures::fix_tri_path();
        let cut = separate_even_cut(&tri, &ev(&[(1, 1), (1, 2), (0, 1)]), 20)
            .unwrap()
            .unwrap();
        assert_eq!(cut.side(), &[1]); // x(δ({1})) = 3/2 < 2

        assert!(separate_even_cut(&tri, &ev(&[(1, 1), (1, 1), (0, 1)]), 20)
            .unwrap()
            .is_none());

        let tour = fixtures::fix_tri_tour();
        assert!(separate_even_cut(&tour, &ev(&[(1, 1), (1, 1), (1, 1)]), 20)
            .unwrap()
            .is_none());

        assert!(matches!(
            separate_even_cut(&tri, &ev(&[(1, 1), (1, 1), (0, 1)]), 2),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn partition_separation_examples() {
        let c4 = fixtures::fix_c4();
        let half = ev(&[(1, 2), (1, 2), (1, 2), (1, 2)]);
        let p = separate_partition(&c4, &half, 12).unwrap().unwrap();
        assert_eq!(p.class_count(), 4); // singletons: 2 < 3

        let ones = ev(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
        assert!(separate_partition(&c4, &ones, 12).unwrap().is_none());

        let edge = fixtures::fix_edge();
        assert!(separate_partition(&edge, &ev(&[(1, 1)]), 12).unwrap().is_none());
    }

    #[test]
    fn relaxation_on_fixtures() {
        let caps = Caps::default();

        let edge = fixtures::fix_edge();
        let sol = solve_relaxation(&edge, &caps).unwrap();
        assert_eq!(sol.value, Rat::one());
        assert_eq!(sol.x_star.values(), &[Rat::one()]);

        let tri = fixtures::fix_tri_path();
        let sol = solve_relaxation(&tri, &caps).unwrap();
        assert_eq!(sol.value, Rat::from_int(2));
        assert_eq!(
            sol.x_star.values(),
            &[Rat::one(), Rat::one(), Rat::zero()]
        );

        let tour = fixtures::fix_tri_tour();
        assert_eq!(solve_relaxation(&tour, &caps).unwrap().value, Rat::from_int(3));

        let c4 = fixtures::fix_c4();
        assert_eq!(solve_relaxation(&c4, &caps).unwrap().value, Rat::from_int(4));
    }

    #[test]
    fn final_point_passes_full_separation() {
        let caps = Caps::default();
        for (_, inst) in fixtures::all() {
            let sol = solve_relaxation(&inst, &caps).unwrap();
            assert!(separate_even_cut(&inst, &sol.x_star, caps.cut_enum)
                .unwrap()
                .is_none());
            assert!(separate_partition(&inst, &sol.x_star, caps.partition_enum)
                .unwrap()
                .is_none());
            assert!(sol.x_star.is_nonnegative());
            assert!(sol
                .x_star
                .values()
                .iter()
                .all(|v| v <= &Rat::from_int(2)));
        }
    }

    #[test]
    fn tour_multiplicity_vectors_are_feasible() {
        // the multiplicity vector of any valid tour satisfies the relaxation
        let caps = Caps::default();
        for (_, inst) in fixtures::all() {
            let opt = crate::bom::brute_force_opt(&inst, 14).unwrap();
            let chi = opt.tour.to_edge_vector();
            assert!(separate_even_cut(&inst, &chi, caps.cut_enum).unwrap().is_none());
            assert!(separate_partition(&inst, &chi, caps.partition_enum)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn relabeling_preserves_value() {
        use crate::graph::{Graph, Instance};
        // tri-path with vertices relabeled by the cycle 0->1->2->0
        let tri = fixtures::fix_tri_path();
        let perm = [1usize, 2, 0];
        let g = tri.graph();
        let edges: Vec<(usize, usize)> = g.edges().map(|(_, (u, v))| (perm[u], perm[v])).collect();
        let relabeled = Instance::new(
            Graph::new(3, edges).unwrap(),
            tri.terminals().iter().map(|&v| perm[v]).collect(),
            tri.lengths().values().to_vec(),
        )
        .unwrap();
        let caps = Caps::default();
        assert_eq!(
            solve_relaxation(&tri, &caps).unwrap().value,
            solve_relaxation(&relabeled, &caps).unwrap().value
        );
    }

    #[test]
    fn constraint_text_lines() {
        let caps = Caps::default();
        let tri = fixtures::fix_tri_path();
        let sol = solve_relaxation(&tri, &caps).unwrap();
        let lines = sol.constraint_lines();
        assert!(lines.iter().any(|l| l.starts_with("cut ") && l.ends_with(">= 2")));
        assert!(lines.iter().any(|l| l.starts_with("partition ")));
    }
}
