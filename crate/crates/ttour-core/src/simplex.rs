//! Dense two-phase primal simplex over exact rationals.
//!
//! Variables are implicitly nonnegative; rows may be <=, >= or ==. Bland's
//! rule is used for both the entering and the leaving choice, so the solver
//! never cycles and, given equal inputs, always returns the same vertex.

use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rat>,
    pub cmp: Cmp,
    pub rhs: Rat,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub rows: Vec<Row>,
}

/// Optimal vertex, its objective value, and one dual value per input row.
///
/// Dual signs follow the convention that makes strong duality read
/// `objective == sum_i duals[i] * rhs[i]`: for `Minimize` the dual of a `<=`
/// row is nonpositive and of a `>=` row nonnegative; for `Maximize` the
/// signs flip.
#[derive(Clone, Debug)]
pub struct Solution {
    pub values: Vec<Rat>,
    pub objective: Rat,
    pub duals: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexError {
    Infeasible,
    Unbounded,
}

impl std::fmt::Display for SimplexError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimplexError::Infeasible => write!(f, "infeasible"),
            SimplexError::Unbounded => write!(f, "unbounded"),
        }
    }
}

struct Tableau {
    n_rows: usize,
    total_cols: usize,
    first_artificial: usize,
    /// rows of B^-1 A
    tab: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    /// per input row: column of its slack/surplus (usize::MAX for Eq)
    slack_col: Vec<usize>,
    /// per input row: column of its artificial (usize::MAX if none)
    art_col: Vec<usize>,
    /// per input row: -1 if the row was negated to make the rhs nonnegative
    row_sign: Vec<i8>,
}

impl Tableau {
    fn build(objective_len: usize, rows: &[Row]) -> Tableau {
        let n_rows = rows.len();
        let mut normalized: Vec<(Vec<Rat>, Cmp, Rat, i8)> = Vec::with_capacity(n_rows);
        for row in rows {
            if row.rhs.is_negative() {
                let coeffs = row.coeffs.iter().map(|c| -c).collect();
                let cmp = match row.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
                normalized.push((coeffs, cmp, -&row.rhs, -1));
            } else {
                normalized.push((row.coeffs.clone(), row.cmp, row.rhs.clone(), 1));
            }
        }

        let n_slack = normalized
            .iter()
            .filter(|(_, cmp, _, _)| *cmp != Cmp::Eq)
            .count();
        let n_art = normalized
            .iter()
            .filter(|(_, cmp, _, _)| *cmp != Cmp::Le)
            .count();
        let first_slack = objective_len;
        let first_artificial = objective_len + n_slack;
        let total_cols = first_artificial + n_art;

        let mut tab = vec![vec![Rat::zero(); total_cols]; n_rows];
        let mut rhs = Vec::with_capacity(n_rows);
        let mut basis = vec![0usize; n_rows];
        let mut slack_col = vec![usize::MAX; n_rows];
        let mut art_col = vec![usize::MAX; n_rows];
        let mut row_sign = vec![1i8; n_rows];
        let mut next_slack = first_slack;
        let mut next_art = first_artificial;
        for (i, (coeffs, cmp, b, sign)) in normalized.into_iter().enumerate() {
            for (j, c) in coeffs.into_iter().enumerate() {
                tab[i][j] = c;
            }
            rhs.push(b);
            row_sign[i] = sign;
            match cmp {
                Cmp::Le => {
                    tab[i][next_slack] = Rat::one();
                    slack_col[i] = next_slack;
                    basis[i] = next_slack;
                    next_slack += 1;
                }
                Cmp::Ge => {
                    tab[i][next_slack] = -Rat::one();
                    slack_col[i] = next_slack;
                    next_slack += 1;
                    tab[i][next_art] = Rat::one();
                    art_col[i] = next_art;
                    basis[i] = next_art;
                    next_art += 1;
                }
                Cmp::Eq => {
                    tab[i][next_art] = Rat::one();
                    art_col[i] = next_art;
                    basis[i] = next_art;
                    next_art += 1;
                }
            }
        }

        Tableau {
            n_rows,
            total_cols,
            first_artificial,
            tab,
            rhs,
            basis,
            slack_col,
            art_col,
            row_sign,
        }
    }

    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut r: Vec<Rat> = cost.to_vec();
        for i in 0..self.n_rows {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (j, rj) in r.iter_mut().enumerate() {
                if !self.tab[i][j].is_zero() {
                    let delta = &cb * &self.tab[i][j];
                    *rj -= delta;
                }
            }
        }
        r
    }

    fn objective_value(&self, cost: &[Rat]) -> Rat {
        (0..self.n_rows)
            .map(|i| &cost[self.basis[i]] * &self.rhs[i])
            .sum()
    }

    fn pivot(&mut self, row: usize, col: usize, reduced: &mut [Rat]) {
        let piv = self.tab[row][col].clone();
        debug_assert!(!piv.is_zero());
        for j in 0..self.total_cols {
            if !self.tab[row][j].is_zero() {
                self.tab[row][j] /= &piv;
            }
        }
        self.rhs[row] /= &piv;

        let nonzero_cols: Vec<usize> = (0..self.total_cols)
            .filter(|&j| !self.tab[row][j].is_zero())
            .collect();
        for i in 0..self.n_rows {
            if i == row || self.tab[i][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut self.tab[i][col], Rat::zero());
            for &j in &nonzero_cols {
                if j == col {
                    continue;
                }
                let delta = &factor * &self.tab[row][j];
                self.tab[i][j] -= delta;
            }
            let delta = &factor * &self.rhs[row];
            self.rhs[i] -= delta;
        }
        if !reduced[col].is_zero() {
            let factor = std::mem::replace(&mut reduced[col], Rat::zero());
            for &j in &nonzero_cols {
                if j == col {
                    continue;
                }
                let delta = &factor * &self.tab[row][j];
                reduced[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Primal simplex with Bland's rule. `allowed` filters entering columns.
    fn optimize(
        &mut self,
        reduced: &mut [Rat],
        allowed: impl Fn(usize) -> bool,
    ) -> Result<(), SimplexError> {
        loop {
            let entering = (0..self.total_cols).find(|&j| allowed(j) && reduced[j].is_negative());
            let col = match entering {
                None => return Ok(()),
                Some(c) => c,
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.n_rows {
                if !self.tab[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.tab[i][col];
                let replace = match &leaving {
                    None => true,
                    Some((best_i, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best_i])
                    }
                };
                if replace {
                    leaving = Some((i, ratio));
                }
            }
            let (row, _) = leaving.ok_or(SimplexError::Unbounded)?;
            self.pivot(row, col, reduced);
        }
    }

    /// Whether input row i carried a +1 slack (Le after normalization).
    fn normalized_le(&self, i: usize) -> bool {
        self.art_col[i] == usize::MAX
    }
}

/// Solves the problem to proven optimality. Deterministic for fixed input.
pub fn solve(problem: &Problem) -> Result<Solution, SimplexError> {
    let n = problem.objective.len();
    let min_objective: Vec<Rat> = match problem.sense {
        Sense::Minimize => problem.objective.clone(),
        Sense::Maximize => problem.objective.iter().map(|c| -c).collect(),
    };

    if problem.rows.is_empty() {
        if min_objective.iter().any(|c| c.is_negative()) {
            return Err(SimplexError::Unbounded);
        }
        return Ok(Solution {
            values: vec![Rat::zero(); n],
            objective: Rat::zero(),
            duals: Vec::new(),
        });
    }

    let mut t = Tableau::build(n, &problem.rows);

    // Phase 1: minimize the artificial sum.
    if t.first_artificial < t.total_cols {
        let mut cost1 = vec![Rat::zero(); t.total_cols];
        for c in cost1.iter_mut().skip(t.first_artificial) {
            *c = Rat::one();
        }
        let mut reduced = t.reduced_costs(&cost1);
        t.optimize(&mut reduced, |_| true)?;
        if t.objective_value(&cost1).is_positive() {
            return Err(SimplexError::Infeasible);
        }
        // Drive basic artificials (now at value 0) out of the basis where the
        // row still has substance in a real column; all-zero rows are
        // redundant and stay put, barred from re-entering in phase 2.
        for i in 0..t.n_rows {
            if t.basis[i] >= t.first_artificial {
                if let Some(col) = (0..t.first_artificial).find(|&j| !t.tab[i][j].is_zero()) {
                    t.pivot(i, col, &mut reduced);
                }
            }
        }
    }

    // Phase 2: original costs, artificial columns barred.
    let mut cost2 = vec![Rat::zero(); t.total_cols];
    cost2[..n].clone_from_slice(&min_objective);
    let mut reduced = t.reduced_costs(&cost2);
    let first_art = t.first_artificial;
    t.optimize(&mut reduced, |j| j < first_art)?;

    let mut values = vec![Rat::zero(); n];
    for i in 0..t.n_rows {
        if t.basis[i] < n {
            values[t.basis[i]] = t.rhs[i].clone();
        }
    }
    let min_obj = t.objective_value(&cost2);

    // duals from the reduced costs of slack (or artificial, for Eq) columns
    let mut duals = Vec::with_capacity(t.n_rows);
    for i in 0..t.n_rows {
        let y = if t.slack_col[i] != usize::MAX {
            let r = &reduced[t.slack_col[i]];
            // slack +1 on a Le row gives r = -y; surplus -1 on Ge gives r = +y
            if t.normalized_le(i) {
                -r
            } else {
                r.clone()
            }
        } else {
            -&reduced[t.art_col[i]]
        };
        let y = if t.row_sign[i] < 0 { -y } else { y };
        duals.push(y);
    }

    match problem.sense {
        Sense::Minimize => Ok(Solution {
            values,
            objective: min_obj,
            duals,
        }),
        Sense::Maximize => Ok(Solution {
            values,
            objective: -min_obj,
            duals: duals.into_iter().map(|y| -y).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn row(coeffs: &[i64], cmp: Cmp, rhs: i64) -> Row {
        Row {
            coeffs: coeffs.iter().map(|&c| Rat::from_int(c)).collect(),
            cmp,
            rhs: Rat::from_int(rhs),
        }
    }

    #[test]
    fn minimizes_with_ge_rows() {
        // min x + y  s.t. x + y >= 2, x <= 3
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![Rat::one(), Rat::one()],
            rows: vec![row(&[1, 1], Cmp::Ge, 2), row(&[1, 0], Cmp::Le, 3)],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, Rat::from_int(2));
        assert_eq!(&s.values[0] + &s.values[1], Rat::from_int(2));
        let y_dot_b = &s.duals[0] * &Rat::from_int(2) + &s.duals[1] * &Rat::from_int(3);
        assert_eq!(y_dot_b, s.objective);
    }

    #[test]
    fn maximizes_with_mixed_rows() {
        let p = Problem {
            sense: Sense::Maximize,
            objective: vec![Rat::from_int(3), Rat::from_int(4)],
            rows: vec![
                row(&[1, 2], Cmp::Le, 14),
                row(&[3, -1], Cmp::Ge, 0),
                row(&[1, -1], Cmp::Le, 2),
            ],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.values, vec![Rat::from_int(6), Rat::from_int(4)]);
        assert_eq!(s.objective, Rat::from_int(34));
    }

    #[test]
    fn handles_equalities_and_fractions() {
        // min 2x + y  s.t. x + y == 3/2, x >= 1/2
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![Rat::from_int(2), Rat::one()],
            rows: vec![
                Row {
                    coeffs: vec![Rat::one(), Rat::one()],
                    cmp: Cmp::Eq,
                    rhs: r(3, 2),
                },
                Row {
                    coeffs: vec![Rat::one(), Rat::zero()],
                    cmp: Cmp::Ge,
                    rhs: r(1, 2),
                },
            ],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.values, vec![r(1, 2), Rat::one()]);
        assert_eq!(s.objective, Rat::from_int(2));
        let y_dot_b = &s.duals[0] * &r(3, 2) + &s.duals[1] * &r(1, 2);
        assert_eq!(y_dot_b, s.objective);
    }

    #[test]
    fn detects_infeasible() {
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![Rat::one()],
            rows: vec![row(&[1], Cmp::Ge, 2), row(&[1], Cmp::Le, 1)],
        };
        assert_eq!(solve(&p).unwrap_err(), SimplexError::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let p = Problem {
            sense: Sense::Maximize,
            objective: vec![Rat::one()],
            rows: vec![row(&[1], Cmp::Ge, 1)],
        };
        assert_eq!(solve(&p).unwrap_err(), SimplexError::Unbounded);
    }

    #[test]
    fn negative_rhs_rows_normalize() {
        // min x s.t. -x <= -2  (i.e. x >= 2)
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![Rat::one()],
            rows: vec![row(&[-1], Cmp::Le, -2)],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.values[0], Rat::from_int(2));
        // strong duality against the original (negated) row data
        assert_eq!(&s.duals[0] * &Rat::from_int(-2), s.objective);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // degenerate pivots at the origin; Bland's rule avoids cycling
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![r(-3, 4), Rat::from_int(150), r(-1, 50), Rat::from_int(6)],
            rows: vec![
                Row {
                    coeffs: vec![r(1, 4), Rat::from_int(-60), r(-1, 25), Rat::from_int(9)],
                    cmp: Cmp::Le,
                    rhs: Rat::zero(),
                },
                Row {
                    coeffs: vec![r(1, 2), Rat::from_int(-90), r(-1, 50), Rat::from_int(3)],
                    cmp: Cmp::Le,
                    rhs: Rat::zero(),
                },
                Row {
                    coeffs: vec![Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
                    cmp: Cmp::Le,
                    rhs: Rat::one(),
                },
            ],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, r(-1, 20));
    }

    #[test]
    fn duals_certify_packing_style_master() {
        // max l1 + l2 s.t. l1 <= 1, l1 + l2 <= 3/2 (duals are prices >= 0)
        let p = Problem {
            sense: Sense::Maximize,
            objective: vec![Rat::one(), Rat::one()],
            rows: vec![
                Row {
                    coeffs: vec![Rat::one(), Rat::zero()],
                    cmp: Cmp::Le,
                    rhs: Rat::one(),
                },
                Row {
                    coeffs: vec![Rat::one(), Rat::one()],
                    cmp: Cmp::Le,
                    rhs: r(3, 2),
                },
            ],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, r(3, 2));
        assert!(s.duals.iter().all(|y| !y.is_negative()));
        let y_dot_b = &s.duals[0] * &Rat::one() + &s.duals[1] * &r(3, 2);
        assert_eq!(y_dot_b, s.objective);
    }

    #[test]
    fn redundant_equality_rows_are_tolerated() {
        // second row is the first row doubled; phase 1 leaves a zero row
        let p = Problem {
            sense: Sense::Minimize,
            objective: vec![Rat::one(), Rat::one()],
            rows: vec![
                row(&[1, 1], Cmp::Eq, 2),
                row(&[2, 2], Cmp::Eq, 4),
                row(&[1, 0], Cmp::Ge, 1),
            ],
        };
        let s = solve(&p).unwrap();
        assert_eq!(s.objective, Rat::from_int(2));
    }

    /// Full optimality certificate for a reported solution: the point is
    /// feasible, the duals are feasible with the documented signs, and
    /// strong duality closes the gap. Together these prove optimality.
    fn assert_certified(p: &Problem, s: &Solution) {
        assert!(s.values.iter().all(|v| !v.is_negative()));
        for (i, row) in p.rows.iter().enumerate() {
            let lhs: Rat = row
                .coeffs
                .iter()
                .zip(&s.values)
                .map(|(a, x)| a * x)
                .sum();
            match row.cmp {
                Cmp::Le => assert!(lhs <= row.rhs, "primal row {i}"),
                Cmp::Ge => assert!(lhs >= row.rhs, "primal row {i}"),
                Cmp::Eq => assert_eq!(lhs, row.rhs, "primal row {i}"),
            }
            let y = &s.duals[i];
            let expect_nonpositive = match (p.sense, row.cmp) {
                (_, Cmp::Eq) => continue,
                (Sense::Minimize, Cmp::Le) | (Sense::Maximize, Cmp::Ge) => true,
                (Sense::Minimize, Cmp::Ge) | (Sense::Maximize, Cmp::Le) => false,
            };
            if expect_nonpositive {
                assert!(!y.is_positive(), "dual sign, row {i}");
            } else {
                assert!(!y.is_negative(), "dual sign, row {i}");
            }
        }
        // dual feasibility: A^T y <= c for Minimize, >= c for Maximize,
        // zero-columns compared against 0
        for j in 0..p.objective.len() {
            let aty: Rat = p
                .rows
                .iter()
                .zip(&s.duals)
                .map(|(row, y)| &row.coeffs[j] * y)
                .sum();
            match p.sense {
                Sense::Minimize => assert!(aty <= p.objective[j], "dual col {j}"),
                Sense::Maximize => assert!(aty >= p.objective[j], "dual col {j}"),
            }
        }
        let y_dot_b: Rat = p
            .rows
            .iter()
            .zip(&s.duals)
            .map(|(row, y)| &row.rhs * y)
            .sum();
        assert_eq!(y_dot_b, s.objective, "strong duality");
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(256))]

        /// Every solved random LP comes back with a complete optimality
        /// certificate.
        #[test]
        fn random_lps_certify(
            sense_max in proptest::bool::ANY,
            nvars in 1usize..4,
            objective in proptest::collection::vec(-3i64..=3, 4),
            rows in proptest::collection::vec(
                (proptest::collection::vec(-3i64..=3, 4), 0u8..3, -4i64..=4),
                0..5,
            ),
        ) {
            let p = Problem {
                sense: if sense_max { Sense::Maximize } else { Sense::Minimize },
                objective: objective[..nvars].iter().map(|&c| Rat::from_int(c)).collect(),
                rows: rows
                    .into_iter()
                    .map(|(coeffs, cmp, rhs)| Row {
                        coeffs: coeffs[..nvars].iter().map(|&c| Rat::from_int(c)).collect(),
                        cmp: match cmp {
                            0 => Cmp::Le,
                            1 => Cmp::Ge,
                            _ => Cmp::Eq,
                        },
                        rhs: Rat::from_int(rhs),
                    })
                    .collect(),
            };
            if let Ok(s) = solve(&p) {
                assert_certified(&p, &s);
            }
        }
    }
}
