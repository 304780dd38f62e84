//! Convex decomposition into spanning trees.
//!
//! Any vector satisfying the partition inequalities with 0 <= x <= 2
//! dominates a convex combination of at most |E| spanning trees. The
//! combination is found by column generation on the fractional tree-packing
//! master LP (max Σλ subject to Σ λ_F χ_F <= x, λ >= 0): pricing is a plain
//! minimum spanning tree under the dual edge prices, restricted to the
//! support of x. A packing value below 1 certifies that a partition
//! inequality fails, and the dual prices are returned as the certificate.

use crate::caps;
use crate::error::Error;
use crate::graph::{self, EdgeVector, Graph};
use crate::rat::Rat;
use crate::simplex::{self, Cmp, Problem, Row, Sense};
use std::collections::BTreeSet;

/// One spanning tree with its positive coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMember {
    pub tree: BTreeSet<usize>,
    pub lambda: Rat,
}

/// Convex combination of spanning trees: Σλ = 1, every λ > 0, and
/// Σ λ_F χ_F dominated componentwise by the decomposed vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCombination {
    pub members: Vec<TreeMember>,
}

impl TreeCombination {
    pub fn lambda_sum(&self) -> Rat {
        self.members.iter().map(|m| &m.lambda).sum()
    }

    /// Σ λ_F χ_F as an edge vector.
    pub fn load(&self, m: usize) -> EdgeVector {
        let mut load = EdgeVector::zeros(m);
        for member in &self.members {
            for &e in &member.tree {
                load.add_at(e, &member.lambda);
            }
        }
        load
    }

    /// One text line per tree: `lambda p/q : e3 e7 e9`.
    pub fn text_lines(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| {
                let edges: Vec<String> = m.tree.iter().map(|e| format!("e{e}")).collect();
                format!("lambda {} : {}", m.lambda, edges.join(" "))
            })
            .collect()
    }
}

/// Decomposes `x` into a convex combination of spanning trees it dominates.
///
/// The master packing LP is solved by column generation restricted to
/// supp(x); when the packing value ν exceeds 1, every λ is scaled by 1/ν
/// (scaling only shrinks the combination, so domination is preserved).
/// The final restricted master is solved by simplex, hence basic, hence at
/// most |E| members carry positive weight.
///
/// Fractional values above 1 need no special treatment: a tree uses an edge
/// at most once, so the packing formulation covers x(e) in (1, 2] directly.
pub fn decompose(g: &Graph, x: &EdgeVector) -> Result<TreeCombination, Error> {
    let m = g.edge_count();
    if x.len() != m {
        return Err(Error::invalid("vector dimension does not match the graph"));
    }
    if !x.is_nonnegative() {
        return Err(Error::domain("vector must be nonnegative"));
    }
    if x.values().iter().any(|v| v > &Rat::from_int(2)) {
        return Err(Error::domain("vector must be at most 2 on every edge"));
    }
    if g.vertex_count() == 1 {
        // single vertex: the empty tree is the whole combination
        return Ok(TreeCombination {
            members: vec![TreeMember {
                tree: BTreeSet::new(),
                lambda: Rat::one(),
            }],
        });
    }

    let support: Vec<usize> = x.support();
    let in_support = {
        let mut flags = vec![false; m];
        for &e in &support {
            flags[e] = true;
        }
        flags
    };

    let unit = EdgeVector::from_values(vec![Rat::one(); m]);
    let initial = match graph::min_spanning_tree(g, &unit, |e| in_support[e]) {
        Some(t) => t,
        None => {
            // supp(x) does not even connect the graph: the component
            // partition 𝒲 has x(δ(𝒲)) = 0 < |𝒲| - 1. Price crossing edges
            // at 1/(k-1) so every spanning tree costs >= 1 while x prices
            // to 0.
            let mut uf = graph::UnionFind::new(g.vertex_count());
            for &e in &support {
                let (u, v) = g.endpoints(e);
                uf.union(u, v);
            }
            let k = uf.components();
            let price = Rat::from_big(1.into(), ((k - 1) as i64).into());
            let mut duals = vec![Rat::zero(); m];
            for (e, (u, v)) in g.edges() {
                if uf.find(u) != uf.find(v) {
                    duals[e] = price.clone();
                }
            }
            return Err(Error::NotTreeDecomposable {
                value: Rat::zero(),
                dual_prices: duals,
            });
        }
    };

    let mut columns: Vec<BTreeSet<usize>> = vec![initial];
    let (value, lambdas, duals) = loop {
        let master = build_master(&columns, &support, x);
        let sol = simplex::solve(&master)
            .map_err(|e| Error::invalid(format!("packing master failed unexpectedly: {e}")))?;
        // dual prices per support edge; nonnegative by the Le/Maximize signs
        let mut prices = EdgeVector::zeros(m);
        for (row, &e) in support.iter().enumerate() {
            debug_assert!(!sol.duals[row].is_negative());
            prices.set(e, sol.duals[row].clone());
        }
        let priced = graph::min_spanning_tree(g, &prices, |e| in_support[e])
            .expect("support connects: the initial tree exists");
        let tree_price: Rat = priced.iter().map(|&e| &prices[e]).sum();
        if tree_price < Rat::one() {
            // a column already in the master has price >= 1 at its optimum,
            // so a cheaper tree is always new; repeating one would loop
            if columns.contains(&priced) {
                return Err(Error::invalid(
                    "internal: column generation repeated a column",
                ));
            }
            columns.push(priced);
            continue;
        }
        break (sol.objective, sol.values, prices);
    };

    if value < Rat::one() {
        let mut dual_prices = vec![Rat::one(); m];
        for &e in &support {
            dual_prices[e] = duals[e].clone();
        }
        return Err(Error::NotTreeDecomposable {
            value,
            dual_prices,
        });
    }

    let members: Vec<TreeMember> = columns
        .into_iter()
        .zip(lambdas)
        .filter(|(_, l)| l.is_positive())
        .map(|(tree, lambda)| TreeMember {
            lambda: &lambda / &value,
            tree,
        })
        .collect();
    let combo = TreeCombination { members };
    debug_assert!(verify_domination(&combo, g, x));
    Ok(combo)
}

fn build_master(columns: &[BTreeSet<usize>], support: &[usize], x: &EdgeVector) -> Problem {
    let rows = support
        .iter()
        .map(|&e| Row {
            coeffs: columns
                .iter()
                .map(|t| {
                    if t.contains(&e) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
            cmp: Cmp::Le,
            rhs: x[e].clone(),
        })
        .collect();
    Problem {
        sense: Sense::Maximize,
        objective: vec![Rat::one(); columns.len()],
        rows,
    }
}

/// Exact optimum of max Σλ s.t. Σ λ_F χ_F <= x over ALL spanning trees,
/// by full tree enumeration. Test oracle for `decompose`'s feasibility
/// verdict. For a single-vertex graph the packing is vacuous; returns 1.
pub fn packing_value_oracle(g: &Graph, x: &EdgeVector, cap: usize) -> Result<Rat, Error> {
    if x.len() != g.edge_count() {
        return Err(Error::invalid("vector dimension does not match the graph"));
    }
    if g.vertex_count() == 1 {
        return Ok(Rat::one());
    }
    let trees = graph::enumerate_spanning_trees(g, cap)?;
    let rows = (0..g.edge_count())
        .map(|e| Row {
            coeffs: trees
                .iter()
                .map(|t| {
                    if t.contains(&e) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
            cmp: Cmp::Le,
            rhs: x[e].clone(),
        })
        .collect();
    let problem = Problem {
        sense: Sense::Maximize,
        objective: vec![Rat::one(); trees.len()],
        rows,
    };
    let sol = simplex::solve(&problem)
        .map_err(|e| Error::invalid(format!("packing oracle failed unexpectedly: {e}")))?;
    Ok(sol.objective)
}

/// True iff all combination invariants hold against `x`: Σλ = 1 with every
/// λ > 0, every member a spanning tree, and Σ λ_F χ_F <= x componentwise.
pub fn verify_domination(combo: &TreeCombination, g: &Graph, x: &EdgeVector) -> bool {
    if combo.members.is_empty() || x.len() != g.edge_count() {
        return false;
    }
    if combo.lambda_sum() != Rat::one() {
        return false;
    }
    if combo.members.iter().any(|m| !m.lambda.is_positive()) {
        return false;
    }
    if combo
        .members
        .iter()
        .any(|m| !graph::is_spanning_tree(g, &m.tree))
    {
        return false;
    }
    combo.load(g.edge_count()).le(x)
}

/// Default-cap convenience wrapper for the oracle.
pub fn packing_value_oracle_default(g: &Graph, x: &EdgeVector) -> Result<Rat, Error> {
    packing_value_oracle(g, x, caps::DEFAULT_TREE_ENUM_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Instance;

    fn ones(m: usize) -> EdgeVector {
        EdgeVector::from_values(vec![Rat::one(); m])
    }

    #[test]
    fn single_support_tree_cases() {
        let edge = fixtures::fix_edge();
        let combo = decompose(edge.graph(), &ones(1)).unwrap();
        assert_eq!(combo.members.len(), 1);
        assert_eq!(combo.members[0].tree, [0].into_iter().collect());
        assert_eq!(combo.members[0].lambda, Rat::one());

        let tri = fixtures::fix_tri_path();
        let x = EdgeVector::from_values(vec![Rat::one(), Rat::one(), Rat::zero()]);
        let combo = decompose(tri.graph(), &x).unwrap();
        assert_eq!(combo.members.len(), 1);
        assert_eq!(combo.members[0].tree, [0, 1].into_iter().collect());
        assert!(verify_domination(&combo, tri.graph(), &x));
    }

    #[test]
    fn c4_all_ones_yields_valid_combination() {
        let c4 = fixtures::fix_c4();
        let x = ones(4);
        let combo = decompose(c4.graph(), &x).unwrap();
        assert!(verify_domination(&combo, c4.graph(), &x));
        assert!(combo.members.len() <= 4);
    }

    #[test]
    fn packing_oracle_values() {
        let c4 = fixtures::fix_c4();
        assert_eq!(
            packing_value_oracle(c4.graph(), &ones(4), 16).unwrap(),
            Rat::new(4, 3)
        );
        let edge = fixtures::fix_edge();
        assert_eq!(
            packing_value_oracle(edge.graph(), &ones(1), 16).unwrap(),
            Rat::one()
        );
        let half = EdgeVector::from_values(vec![Rat::new(1, 2); 4]);
        assert_eq!(
            packing_value_oracle(c4.graph(), &half, 16).unwrap(),
            Rat::new(2, 3)
        );
    }

    #[test]
    fn premise_violation_carries_dual_certificate() {
        let c4 = fixtures::fix_c4();
        let half = EdgeVector::from_values(vec![Rat::new(1, 2); 4]);
        match decompose(c4.graph(), &half) {
            Err(Error::NotTreeDecomposable { value, dual_prices }) => {
                assert!(value < Rat::one());
                // certificate: prices give every spanning tree weight >= 1
                // while pricing x below 1
                let w = EdgeVector::from_values(dual_prices);
                for tree in graph::enumerate_spanning_trees(c4.graph(), 16).unwrap() {
                    assert!(w.sum_over(&tree) >= Rat::one());
                }
                assert!(w.dot(&half) < Rat::one());
            }
            other => panic!("expected premise violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_support_is_rejected_with_certificate() {
        let c4 = fixtures::fix_c4();
        let x = EdgeVector::from_values(vec![
            Rat::one(),
            Rat::zero(),
            Rat::one(),
            Rat::zero(),
        ]);
        match decompose(c4.graph(), &x) {
            Err(Error::NotTreeDecomposable { value, dual_prices }) => {
                assert!(value.is_zero());
                let w = EdgeVector::from_values(dual_prices);
                for tree in graph::enumerate_spanning_trees(c4.graph(), 16).unwrap() {
                    assert!(w.sum_over(&tree) >= Rat::one());
                }
                assert!(w.dot(&x) < Rat::one());
            }
            other => panic!("expected premise violation, got {other:?}"),
        }
    }

    #[test]
    fn handles_values_above_one() {
        // doubled edge: x = (3/2, 1/2) on two parallel edges
        let g = crate::graph::Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        let x = EdgeVector::from_values(vec![Rat::new(3, 2), Rat::new(1, 2)]);
        let combo = decompose(&g, &x).unwrap();
        assert!(verify_domination(&combo, &g, &x));

        // single edge at full multiplicity
        let edge = fixtures::fix_edge();
        let x = EdgeVector::from_values(vec![Rat::from_int(2)]);
        let combo = decompose(edge.graph(), &x).unwrap();
        assert!(verify_domination(&combo, edge.graph(), &x));
        assert_eq!(combo.lambda_sum(), Rat::one());
    }

    #[test]
    fn feasibility_verdicts_match_the_oracle() {
        let c4 = fixtures::fix_c4();
        for num in 1..=4i64 {
            let x = EdgeVector::from_values(vec![Rat::new(num, 2); 4]);
            let nu = packing_value_oracle(c4.graph(), &x, 16).unwrap();
            let result = decompose(c4.graph(), &x);
            assert_eq!(nu >= Rat::one(), result.is_ok(), "x = {num}/2 per edge");
            if let Err(Error::NotTreeDecomposable { value, .. }) = result {
                assert_eq!(value, nu);
            }
        }
    }

    #[test]
    fn domination_rejects_bad_combinations() {
        let edge = fixtures::fix_edge();
        let combo = TreeCombination {
            members: vec![TreeMember {
                tree: [0].into_iter().collect(),
                lambda: Rat::one(),
            }],
        };
        let half = EdgeVector::from_values(vec![Rat::new(1, 2)]);
        assert!(!verify_domination(&combo, edge.graph(), &half));
        assert!(verify_domination(
            &combo,
            edge.graph(),
            &EdgeVector::from_values(vec![Rat::one()])
        ));

        // lambda sum != 1
        let combo = TreeCombination {
            members: vec![TreeMember {
                tree: [0].into_iter().collect(),
                lambda: Rat::new(1, 2),
            }],
        };
        assert!(!verify_domination(
            &combo,
            edge.graph(),
            &EdgeVector::from_values(vec![Rat::one()])
        ));
    }

    #[test]
    fn decomposes_relaxation_optimum_of_every_fixture() {
        let caps = crate::caps::Caps::default();
        for (_, inst) in fixtures::all() {
            let sol = crate::lp::solve_relaxation(&inst, &caps).unwrap();
            let combo = decompose(inst.graph(), &sol.x_star).unwrap();
            assert!(verify_domination(&combo, inst.graph(), &sol.x_star));
            assert!(combo.members.len() <= inst.edge_count().max(1));
        }
        let _ = Instance::new(
            crate::graph::Graph::new(1, vec![]).unwrap(),
            Default::default(),
            vec![],
        )
        .unwrap();
    }
}
