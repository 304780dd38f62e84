//! Best-of-many parity correction over a tree decomposition, the single-tree
//! baseline, and the brute-force optimum oracle.
//!
//! Tours live in the original graph with multiplicities at most 2; no
//! shortcutting step exists or is needed.

use crate::caps::Caps;
use crate::decomposition::{self, TreeCombination};
use crate::error::Error;
use crate::graph::{self, EdgeMultiset, Instance};
use crate::lp::{self, LpSolution};
use crate::rat::Rat;
use crate::tjoin;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::collections::BTreeSet;

/// A spanning tree with its parity correction and the resulting tour.
#[derive(Clone, Debug)]
pub struct TourResult {
    pub tree: BTreeSet<usize>,
    pub join: BTreeSet<usize>,
    pub tour: EdgeMultiset,
    pub length: Rat,
    pub tree_length: Rat,
    pub join_length: Rat,
}

/// Full pipeline output: relaxation optimum, tree combination, one tour per
/// member, the index of the best tour and the ratio against the relaxation.
#[derive(Clone, Debug)]
pub struct BomReport {
    pub lp: LpSolution,
    pub combo: TreeCombination,
    pub per_tree: Vec<TourResult>,
    pub best: usize,
    pub ratio_r: Rat,
}

impl BomReport {
    pub fn best_tour(&self) -> &TourResult {
        &self.per_tree[self.best]
    }
}

/// Exhaustively verified optimum.
#[derive(Clone, Debug)]
pub struct OptResult {
    pub tour: EdgeMultiset,
    pub length: Rat,
}

/// Parity-corrects one spanning tree: adds a shortest join fixing the
/// symmetric difference between the tree's odd-degree set and the terminals.
pub fn christofides_single(
    inst: &Instance,
    tree: &BTreeSet<usize>,
    caps: &Caps,
) -> Result<TourResult, Error> {
    let g = inst.graph();
    if !graph::is_spanning_tree(g, tree) {
        return Err(Error::invalid("edge set is not a spanning tree"));
    }
    let t_f = graph::odd_degree_vertices(g, tree);
    let need: BTreeSet<usize> = t_f
        .symmetric_difference(inst.terminals())
        .copied()
        .collect();
    let correction = tjoin::min_tjoin(inst, &need, caps.matching)?;
    let tour = EdgeMultiset::from_sets(inst.edge_count(), tree, &correction.join)?;
    debug_assert!(graph::validate_ttour(inst, &tour));
    let tree_length = inst.set_length(tree);
    let length = &tree_length + &correction.length;
    Ok(TourResult {
        tree: tree.clone(),
        join: correction.join,
        tour,
        length,
        tree_length,
        join_length: correction.length,
    })
}

/// The c-minimum spanning tree (Kruskal, ties by edge id); baseline tree for
/// the single-tree heuristic.
pub fn min_cost_spanning_tree(inst: &Instance) -> BTreeSet<usize> {
    graph::min_spanning_tree(inst.graph(), inst.lengths(), |_| true)
        .expect("instance graphs are connected")
}

/// Solves the relaxation, decomposes the optimum into spanning trees,
/// parity-corrects every member and keeps the shortest tour (first index on
/// ties). `ratio_r` is best length over the relaxation value; for the
/// degenerate all-zero-value instance both are 0 and the ratio reports 1.
pub fn best_of_many(inst: &Instance, caps: &Caps) -> Result<BomReport, Error> {
    let lp = lp::solve_relaxation(inst, caps)?;
    let combo = decomposition::decompose(inst.graph(), &lp.x_star)?;
    let mut per_tree = Vec::with_capacity(combo.members.len());
    for member in &combo.members {
        per_tree.push(christofides_single(inst, &member.tree, caps)?);
    }
    let best = per_tree
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.length.cmp(&b.length).then(ia.cmp(ib)))
        .map(|(i, _)| i)
        .expect("combination is nonempty");
    let ratio_r = if lp.value.is_zero() {
        debug_assert!(per_tree[best].length.is_zero());
        Rat::one()
    } else {
        &per_tree[best].length / &lp.value
    };
    Ok(BomReport {
        lp,
        combo,
        per_tree,
        best,
        ratio_r,
    })
}

/// Exhaustive optimum: scans every multiplicity vector in {0,1,2}^E in
/// lexicographic order, keeping the first valid tour of minimum length.
/// Degree parities and the running length are maintained incrementally as
/// the odometer advances; connectivity is only checked when parity matches.
pub fn brute_force_opt(inst: &Instance, cap: usize) -> Result<OptResult, Error> {
    let m = inst.edge_count();
    if m > cap {
        return Err(Error::Capacity {
            what: "tour brute force (edges)",
            limit: cap,
            actual: m,
        });
    }
    if m == 0 {
        // single vertex: the empty tour
        let tour = EdgeMultiset::zeros(0);
        if !graph::validate_ttour(inst, &tour) {
            return Err(Error::invalid("no tour exists"));
        }
        return Ok(OptResult {
            tour,
            length: Rat::zero(),
        });
    }

    // fast path: lengths scaled to u64 when they fit comfortably
    let mut scale = BigInt::one();
    for w in inst.lengths().values() {
        scale = scale.lcm(w.denom());
    }
    let scaled: Option<Vec<u64>> = {
        let vals: Vec<BigInt> = inst
            .lengths()
            .values()
            .iter()
            .map(|w| w.numer() * (&scale / w.denom()))
            .collect();
        let budget = u64::MAX / (2 * m as u64 + 2);
        vals.iter()
            .map(|v| v.to_u64().filter(|&x| x <= budget))
            .collect()
    };

    let (mult, length) = match scaled {
        Some(weights) => {
            let (mult, best) = brute_force_scan(inst, &weights, 0u64);
            (mult, Rat::from_big(BigInt::from(best), scale))
        }
        None => {
            let weights: Vec<Rat> = inst.lengths().values().to_vec();
            brute_force_scan(inst, &weights, Rat::zero())
        }
    };
    let tour = EdgeMultiset::from_multiplicities(mult)?;
    debug_assert!(graph::validate_ttour(inst, &tour));
    Ok(OptResult { tour, length })
}

fn brute_force_scan<W>(inst: &Instance, weights: &[W], zero: W) -> (Vec<u8>, W)
where
    W: Clone + Ord + for<'a> std::ops::AddAssign<&'a W> + for<'a> std::ops::SubAssign<&'a W>,
{
    let g = inst.graph();
    let n = g.vertex_count();
    let m = g.edge_count();
    let target: Vec<bool> = (0..n).map(|v| inst.terminals().contains(&v)).collect();
    let endpoints: Vec<(usize, usize)> = (0..m).map(|e| g.endpoints(e)).collect();

    let mut mult = vec![0u8; m];
    let mut parity = vec![false; n];
    let mut mismatch = target.iter().filter(|&&b| b).count();
    let mut len = zero;
    let mut best: Option<(Vec<u8>, W)> = None;

    let check = |mult: &[u8], len: &W, best: &mut Option<(Vec<u8>, W)>| {
        if best.as_ref().is_some_and(|(_, b)| len >= b) {
            return;
        }
        let mut uf = graph::UnionFind::new(n);
        for (e, &x) in mult.iter().enumerate() {
            if x > 0 {
                let (u, v) = endpoints[e];
                uf.union(u, v);
            }
        }
        if uf.components() == 1 {
            *best = Some((mult.to_vec(), len.clone()));
        }
    };

    if mismatch == 0 {
        check(&mult, &len, &mut best);
    }
    'outer: loop {
        // advance the odometer (last coordinate fastest = lexicographic order)
        let mut i = m;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let old = mult[i];
            let new = (old + 1) % 3;
            mult[i] = new;
            let (u, v) = endpoints[i];
            match (old, new) {
                (0, 1) | (1, 2) => {
                    // degree parity flips at both endpoints
                    for w in [u, v] {
                        parity[w] = !parity[w];
                        if parity[w] == target[w] {
                            mismatch -= 1;
                        } else {
                            mismatch += 1;
                        }
                    }
                    len += &weights[i];
                }
                (2, 0) => {
                    len -= &weights[i];
                    len -= &weights[i];
                }
                _ => unreachable!(),
            }
            if new != 0 {
                break;
            }
        }
        if mismatch == 0 {
            check(&mult, &len, &mut best);
        }
    }
    best.expect("a tour always exists: double a spanning tree and parity-correct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn single_tree_examples() {
        let caps = Caps::default();

        let tri = fixtures::fix_tri_path();
        let t = christofides_single(&tri, &set(&[0, 1]), &caps).unwrap();
        assert!(t.join.is_empty()); // parity already correct
        assert_eq!(t.length, Rat::from_int(2));

        let c4 = fixtures::fix_c4();
        let t = christofides_single(&c4, &set(&[0, 1, 2]), &caps).unwrap();
        assert_eq!(t.join, set(&[3]));
        assert_eq!(t.length, Rat::from_int(4));

        let edge = fixtures::fix_edge();
        let t = christofides_single(&edge, &set(&[0]), &caps).unwrap();
        assert!(t.join.is_empty());
        assert_eq!(t.length, Rat::one());

        assert!(christofides_single(&c4, &set(&[0, 1]), &caps).is_err());
    }

    #[test]
    fn best_of_many_on_fixtures() {
        let caps = Caps::default();
        let expect = [
            ("edge", 1i64),
            ("tri-tour", 3),
            ("tri-path", 2),
            ("c4", 4),
        ];
        for (name, inst) in fixtures::all() {
            let report = best_of_many(&inst, &caps).unwrap();
            let want = expect.iter().find(|(n, _)| *n == name).unwrap().1;
            assert_eq!(report.best_tour().length, Rat::from_int(want), "{name}");
            assert_eq!(report.ratio_r, Rat::one(), "{name}");
            for t in &report.per_tree {
                assert!(graph::validate_ttour(&inst, &t.tour));
                assert_eq!(t.length, &t.tree_length + &t.join_length);
            }
        }
    }

    #[test]
    fn brute_force_on_fixtures() {
        assert_eq!(
            brute_force_opt(&fixtures::fix_tri_tour(), 14).unwrap().length,
            Rat::from_int(3)
        );
        assert_eq!(
            brute_force_opt(&fixtures::fix_tri_path(), 14).unwrap().length,
            Rat::from_int(2)
        );
        assert_eq!(
            brute_force_opt(&fixtures::fix_edge(), 14).unwrap().length,
            Rat::one()
        );
        assert_eq!(
            brute_force_opt(&fixtures::fix_c4(), 14).unwrap().length,
            Rat::from_int(4)
        );
        assert!(matches!(
            brute_force_opt(&fixtures::fix_c4(), 3),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn brute_force_handles_fractional_lengths() {
        use crate::graph::{Graph, Instance};
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(
            g,
            set(&[0, 2]),
            vec![Rat::new(1, 3), Rat::new(1, 4), Rat::new(3, 4)],
        )
        .unwrap();
        let opt = brute_force_opt(&inst, 14).unwrap();
        // path through the middle: 1/3 + 1/4 = 7/12 < 3/4
        assert_eq!(opt.length, Rat::new(7, 12));
    }

    #[test]
    fn ratio_bounds_hold_on_fixtures() {
        let caps = Caps::default();
        let eight_fifth = Rat::new(8, 5);
        let three_half = Rat::new(3, 2);
        for (name, inst) in fixtures::all() {
            let report = best_of_many(&inst, &caps).unwrap();
            let best = &report.best_tour().length;
            let opt = brute_force_opt(&inst, 14).unwrap();
            assert!(report.lp.value <= opt.length, "{name}: lower bound");
            assert!(best <= &(&eight_fifth * &report.lp.value), "{name}: 8/5 lp");
            assert!(best <= &(&eight_fifth * &opt.length), "{name}: 8/5 opt");
            if inst.terminals().is_empty() {
                assert!(best <= &(&three_half * &report.lp.value), "{name}: 3/2 lp");
            }
        }
    }

    #[test]
    fn min_tree_baseline_on_fixtures() {
        // with a c-minimum tree: parity correction <= (2/3) opt,
        // so the single-tree tour <= (5/3) opt
        let caps = Caps::default();
        for (name, inst) in fixtures::all() {
            let tree = min_cost_spanning_tree(&inst);
            let tour = christofides_single(&inst, &tree, &caps).unwrap();
            let opt = brute_force_opt(&inst, 14).unwrap();
            assert!(
                &Rat::from_int(3) * &tour.join_length <= &Rat::from_int(2) * &opt.length,
                "{name}: correction bound"
            );
            assert!(
                &Rat::from_int(3) * &tour.length <= &Rat::from_int(5) * &opt.length,
                "{name}: tour bound"
            );
        }
    }

    #[test]
    fn scaled_and_bigint_scan_paths_agree() {
        // scaling the lengths by a huge rational forces the slow path;
        // the optimal multiset must not change and the value must scale
        let inst = crate::cli::gen_random(6, 10, 77, 2, 9).unwrap();
        let fast = brute_force_opt(&inst, 14).unwrap();

        let huge = Rat::from_big(1.into(), num_bigint::BigInt::from(3).pow(50));
        let scaled = crate::graph::Instance::new(
            inst.graph().clone(),
            inst.terminals().clone(),
            inst.lengths().values().iter().map(|w| w * &huge).collect(),
        )
        .unwrap();
        let slow = brute_force_opt(&scaled, 14).unwrap();
        assert_eq!(slow.tour, fast.tour);
        assert_eq!(slow.length, &fast.length * &huge);
    }

    #[test]
    fn zero_length_edges_are_accepted() {
        use crate::graph::{Graph, Instance};
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(
            g,
            set(&[0, 2]),
            vec![Rat::zero(), Rat::one(), Rat::one()],
        )
        .unwrap();
        let caps = Caps::default();
        let report = best_of_many(&inst, &caps).unwrap();
        let opt = brute_force_opt(&inst, 14).unwrap();
        assert!(report.lp.value <= opt.length);
        assert!(graph::validate_ttour(&inst, &report.best_tour().tour));
        let cert = crate::analysis::verify_certificates(&inst, &report, &Rat::new(4, 9), &caps)
            .unwrap();
        assert!(cert.all_pass);

        // degenerate all-zero lengths: everything collapses to zero cost
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(g, set(&[0, 2]), vec![Rat::zero(); 3]).unwrap();
        let report = best_of_many(&inst, &caps).unwrap();
        assert!(report.best_tour().length.is_zero());
        assert_eq!(report.ratio_r, Rat::one());
        let cert = crate::analysis::verify_certificates(&inst, &report, &Rat::new(4, 9), &caps)
            .unwrap();
        assert!(cert.all_pass);
    }

    #[test]
    fn single_vertex_instance() {
        use crate::graph::{Graph, Instance};
        let inst = Instance::new(
            Graph::new(1, vec![]).unwrap(),
            BTreeSet::new(),
            vec![],
        )
        .unwrap();
        let opt = brute_force_opt(&inst, 14).unwrap();
        assert!(opt.length.is_zero());
        let report = best_of_many(&inst, &Caps::default()).unwrap();
        assert!(report.best_tour().length.is_zero());
        assert_eq!(report.ratio_r, Rat::one());
    }
}
