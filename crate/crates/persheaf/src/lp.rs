//! Exact linear feasibility.
//!
//! A [`LinearSystem`] carries equalities, strict-positivity rows, and
//! nonstrict rows. Strictness is encoded as `row . x >= 1`; that encoding is
//! sound exactly for systems invariant under positive scaling of the solution
//! (every system built here describes a cone, so the caller contracts hold).
//!
//! [`solve_feasible`] is a complete decision procedure with a deterministic
//! witness: Fourier-Motzkin elimination for ambient dimension at most 8, exact
//! Phase-I simplex with Bland's rule above that.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// Conjunction of `row . x = c`, `row . x >= 1` (strict-positivity encoding),
/// and `row . x >= c` constraints over `ambient_dim` variables.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem<T> {
    pub ambient_dim: usize,
    pub equalities: Vec<(Vec<T>, T)>,
    pub strict_positive: Vec<Vec<T>>,
    pub nonstrict: Vec<(Vec<T>, T)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    Witness(Vec<T>),
    Infeasible,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(ambient_dim: usize) -> Self {
        LinearSystem {
            ambient_dim,
            equalities: Vec::new(),
            strict_positive: Vec::new(),
            nonstrict: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty() && self.strict_positive.is_empty() && self.nonstrict.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.ambient_dim == 0 && !self.is_empty() {
            return Err(Error::Malformed(
                "ambient dimension 0 with nonempty constraints".into(),
            ));
        }
        let width_ok = self
            .equalities
            .iter()
            .map(|(r, _)| r.len())
            .chain(self.strict_positive.iter().map(|r| r.len()))
            .chain(self.nonstrict.iter().map(|(r, _)| r.len()))
            .all(|l| l == self.ambient_dim);
        if !width_ok {
            return Err(Error::Malformed(format!(
                "ragged constraint row in a dimension-{} system",
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// True when `x` satisfies every constraint literally (strict rows as
    /// `>= 1`).
    pub fn satisfied_by(&self, x: &[T]) -> bool {
        x.len() == self.ambient_dim
            && self.equalities.iter().all(|(r, c)| dot(r, x) == *c)
            && self.strict_positive.iter().all(|r| dot(r, x) >= T::one())
            && self.nonstrict.iter().all(|(r, c)| dot(r, x) >= *c)
    }
}

/// Decides feasibility and produces an exact witness. Deterministic: equal
/// inputs give identical witnesses.
pub fn solve_feasible<T: Scalar>(sys: &LinearSystem<T>) -> Result<Feasibility<T>> {
    sys.validate()?;
    if sys.ambient_dim == 0 {
        return Ok(Feasibility::Witness(Vec::new()));
    }

    // Gather inequalities as (row, rhs) meaning row . x >= rhs.
    let mut ineqs: Vec<(Vec<T>, T)> = Vec::new();
    for r in &sys.strict_positive {
        ineqs.push((r.clone(), T::one()));
    }
    for (r, c) in &sys.nonstrict {
        ineqs.push((r.clone(), c.clone()));
    }

    // Eliminate equalities first; this is exact and shrinks both engines'
    // inputs. Pivot variables become affine functions of the free ones.
    let d = sys.ambient_dim;
    let mut aug = Matrix::zero(sys.equalities.len(), d + 1);
    for (i, (row, c)) in sys.equalities.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
        aug.set(i, d, c.clone());
    }
    let pivots = aug.rref();
    if pivots.contains(&d) {
        return Ok(Feasibility::Infeasible); // 0 = nonzero among the equalities
    }
    let free: Vec<usize> = (0..d).filter(|j| !pivots.contains(j)).collect();
    let col_of_free: Vec<usize> = free.clone();

    // Rewrite each inequality over the free variables.
    let mut reduced: Vec<(Vec<T>, T)> = Vec::new();
    for (row, rhs) in &ineqs {
        let mut new_row = vec![T::zero(); free.len()];
        let mut new_rhs = rhs.clone();
        for (k, &f) in col_of_free.iter().enumerate() {
            new_row[k] = row[f].clone();
        }
        for (i, &p) in pivots.iter().enumerate() {
            if row[p].is_zero() {
                continue;
            }
            // x_p = aug[i][d] - sum_f aug[i][f] x_f
            new_rhs = new_rhs - row[p].clone() * aug.at(i, d).clone();
            for (k, &f) in col_of_free.iter().enumerate() {
                new_row[k] =
                    new_row[k].clone() - row[p].clone() * aug.at(i, f).clone();
            }
        }
        reduced.push((new_row, new_rhs));
    }

    let free_solution = if sys.ambient_dim <= 8 {
        fourier_motzkin(free.len(), reduced)
    } else {
        simplex_phase1(free.len(), reduced)
    };

    let Some(y) = free_solution else {
        return Ok(Feasibility::Infeasible);
    };

    // Assemble the full witness from free values plus equality back-substitution.
    let mut x = vec![T::zero(); d];
    for (k, &f) in col_of_free.iter().enumerate() {
        x[f] = y[k].clone();
    }
    for (i, &p) in pivots.iter().enumerate() {
        let mut v = aug.at(i, d).clone();
        for (k, &f) in col_of_free.iter().enumerate() {
            v = v - aug.at(i, f).clone() * y[k].clone();
        }
        x[p] = v;
    }
    debug_assert!(sys.satisfied_by(&x), "witness must satisfy the system exactly");
    Ok(Feasibility::Witness(x))
}

/// Canonical form for dedupe: leading coefficient scaled to +-1.
fn normalize_row<T: Scalar>(row: &mut [T], rhs: &mut T) {
    if let Some(lead) = row.iter().find(|v| !v.is_zero()) {
        let s = T::one() / lead.abs();
        for v in row.iter_mut() {
            *v = v.clone() * s.clone();
        }
        *rhs = rhs.clone() * s;
    }
}

/// Fourier-Motzkin over `row . y >= rhs` rows. Returns a witness or `None`.
fn fourier_motzkin<T: Scalar>(vars: usize, rows: Vec<(Vec<T>, T)>) -> Option<Vec<T>> {
    // steps[k] holds the rows present when x_k was eliminated (vars 0..=k).
    let mut steps: Vec<Vec<(Vec<T>, T)>> = Vec::with_capacity(vars);
    let mut current = rows;

    for k in (0..vars).rev() {
        let mut kept: Vec<(Vec<T>, T)> = Vec::new();
        let mut lower: Vec<(Vec<T>, T)> = Vec::new(); // coef on x_k > 0
        let mut upper: Vec<(Vec<T>, T)> = Vec::new(); // coef on x_k < 0
        for (row, rhs) in &current {
            if row[k].is_zero() {
                kept.push((row[..k].to_vec(), rhs.clone()));
            } else if row[k].is_positive() {
                lower.push((row.clone(), rhs.clone()));
            } else {
                upper.push((row.clone(), rhs.clone()));
            }
        }
        let step_rows: Vec<(Vec<T>, T)> =
            lower.iter().chain(upper.iter()).map(|(r, c)| (r.clone(), c.clone())).collect();

        let mut next = kept;
        for (lr, lc) in &lower {
            for (ur, uc) in &upper {
                // a x_k + r.y >= lc (a > 0), -b x_k + s.y >= uc (b > 0):
                // combine as b*(r.y) + a*(s.y) >= b*lc + a*uc.
                let a = lr[k].clone();
                let b = T::zero() - ur[k].clone();
                let mut row: Vec<T> = (0..k)
                    .map(|j| b.clone() * lr[j].clone() + a.clone() * ur[j].clone())
                    .collect();
                let mut rhs = b.clone() * lc.clone() + a.clone() * uc.clone();
                normalize_row(&mut row, &mut rhs);
                if row.iter().all(|v| v.is_zero()) {
                    if rhs.is_positive() {
                        return None; // 0 >= positive
                    }
                    continue;
                }
                if !next.iter().any(|(r, c)| r == &row && c == &rhs) {
                    next.push((row, rhs));
                }
            }
        }
        steps.push(step_rows);
        current = next;
    }

    // Only constant rows remain: feasible iff every rhs <= 0.
    if current.iter().any(|(_, rhs)| rhs.is_positive()) {
        return None;
    }

    // Back-substitute, assigning x_0 first (it was eliminated last).
    let mut x: Vec<T> = Vec::new();
    for k in 0..vars {
        let step = &steps[vars - 1 - k];
        let mut lo: Option<T> = None;
        let mut hi: Option<T> = None;
        for (row, rhs) in step {
            // row over vars 0..=k with row[k] != 0; x_0..x_{k-1} already fixed.
            let mut rest = rhs.clone();
            for j in 0..k {
                rest = rest - row[j].clone() * x[j].clone();
            }
            let bound = rest / row[k].clone();
            if row[k].is_positive() {
                lo = Some(match lo {
                    Some(v) if v >= bound => v,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(v) if v <= bound => v,
                    _ => bound,
                });
            }
        }
        let v = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h, "Fourier-Motzkin interval must be nonempty");
                l
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => T::zero(),
        };
        x.push(v);
    }
    Some(x)
}

/// Phase-I simplex with Bland's rule over `row . y >= rhs` rows; `y` is free
/// in sign. Complete and terminating; returns a witness or `None`.
fn simplex_phase1<T: Scalar>(vars: usize, rows: Vec<(Vec<T>, T)>) -> Option<Vec<T>> {
    if rows.is_empty() {
        return Some(vec![T::zero(); vars]);
    }
    let m = rows.len();
    // Columns: y+ (vars), y- (vars), slack (m), artificial (m), rhs.
    let n_struct = 2 * vars + m;
    let n_total = n_struct + m;
    let mut t = Matrix::zero(m, n_total + 1);
    for (i, (row, rhs)) in rows.iter().enumerate() {
        // row.y - s_i = rhs, s_i >= 0; negate when rhs < 0 so b >= 0.
        let flip = rhs.is_negative();
        let sgn = if flip { T::zero() - T::one() } else { T::one() };
        for (j, rj) in row.iter().enumerate() {
            t.set(i, j, sgn.clone() * rj.clone());
            t.set(i, vars + j, T::zero() - sgn.clone() * rj.clone());
        }
        t.set(i, 2 * vars + i, T::zero() - sgn.clone());
        t.set(i, n_struct + i, T::one());
        t.set(i, n_total, sgn.clone() * rhs.clone());
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + i).collect();

    // Reduced-cost row for minimizing the artificial sum: obj[j] = -sum_i A[i][j]
    // over structural columns, 0 over artificials; obj[rhs] = -sum_i b_i.
    let mut obj = vec![T::zero(); n_total + 1];
    for j in (0..n_struct).chain([n_total]) {
        let mut s = T::zero();
        for i in 0..m {
            s = s + t.at(i, j).clone();
        }
        obj[j] = T::zero() - s;
    }

    // Bland: entering = lowest-index column with negative reduced cost.
    while let Some(enter) = (0..n_total).find(|&j| obj[j].is_negative()) {
        // Ratio test; Bland tie-break by lowest basic variable index.
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let a = t.at(i, enter);
            if !a.is_positive() {
                continue;
            }
            let ratio = t.at(i, n_total).clone() / a.clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && basis[i] < basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        let Some((piv_row, _)) = leave else {
            // Unbounded below is impossible for a sum of nonnegatives; the
            // objective is bounded by 0, so this cannot happen.
            unreachable!("phase-I objective is bounded");
        };
        // Pivot.
        let inv = T::one() / t.at(piv_row, enter).clone();
        for j in 0..=n_total {
            let v = t.at(piv_row, j).clone() * inv.clone();
            t.set(piv_row, j, v);
        }
        for i in 0..m {
            if i == piv_row || t.at(i, enter).is_zero() {
                continue;
            }
            let f = t.at(i, enter).clone();
            for j in 0..=n_total {
                let v = t.at(i, j).clone() - f.clone() * t.at(piv_row, j).clone();
                t.set(i, j, v);
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (j, o) in obj.iter_mut().enumerate() {
                *o = o.clone() - f.clone() * t.at(piv_row, j).clone();
            }
        }
        basis[piv_row] = enter;
    }

    // Optimal artificial sum is -obj[rhs].
    if !obj[n_total].is_zero() {
        return None;
    }
    let mut y = vec![T::zero(); vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            y[b] = y[b].clone() + t.at(i, n_total).clone();
        } else if b < 2 * vars {
            y[b - vars] = y[b - vars].clone() - t.at(i, n_total).clone();
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qvec, Rat};
    use proptest::prelude::*;

    fn feas(sys: &LinearSystem<Rat>) -> Feasibility<Rat> {
        solve_feasible(sys).unwrap()
    }

    #[test]
    fn contradictory_strict_pair_is_infeasible() {
        let mut s = LinearSystem::new(1);
        s.strict_positive.push(qvec(&[1]));
        s.strict_positive.push(qvec(&[-1]));
        assert_eq!(feas(&s), Feasibility::Infeasible);
    }

    #[test]
    fn single_equality_has_zero_witness() {
        let mut s = LinearSystem::new(1);
        s.equalities.push((qvec(&[1]), q(0)));
        assert_eq!(feas(&s), Feasibility::Witness(qvec(&[0])));
    }

    #[test]
    fn open_chamber_of_braid_two() {
        // x1 < x2 < x3 inside x1+x2+x3 = 0.
        let mut s = LinearSystem::new(3);
        s.equalities.push((qvec(&[1, 1, 1]), q(0)));
        s.strict_positive.push(qvec(&[-1, 1, 0]));
        s.strict_positive.push(qvec(&[0, -1, 1]));
        let Feasibility::Witness(w) = feas(&s) else {
            panic!("chamber must be feasible")
        };
        assert!(s.satisfied_by(&w));
        assert!(w[0] < w[1] && w[1] < w[2]);
        assert_eq!(w.iter().fold(q(0), |a, b| a + b.clone()), q(0));
    }

    #[test]
    fn zero_dimension_without_constraints_is_feasible() {
        let s: LinearSystem<Rat> = LinearSystem::new(0);
        assert_eq!(feas(&s), Feasibility::Witness(vec![]));
    }

    #[test]
    fn zero_dimension_with_constraints_is_malformed() {
        let mut s: LinearSystem<Rat> = LinearSystem::new(0);
        s.nonstrict.push((vec![], q(0)));
        assert!(matches!(solve_feasible(&s), Err(crate::Error::Malformed(_))));
    }

    #[test]
    fn ragged_row_is_malformed() {
        let mut s = LinearSystem::new(2);
        s.strict_positive.push(qvec(&[1]));
        assert!(matches!(solve_feasible(&s), Err(crate::Error::Malformed(_))));
    }

    #[test]
    fn inconsistent_equalities_are_infeasible() {
        let mut s = LinearSystem::new(2);
        s.equalities.push((qvec(&[1, 1]), q(0)));
        s.equalities.push((qvec(&[1, 1]), q(1)));
        assert_eq!(feas(&s), Feasibility::Infeasible);
    }

    #[test]
    fn witness_is_deterministic() {
        let mut s = LinearSystem::new(4);
        s.equalities.push((qvec(&[1, 1, 1, 1]), q(0)));
        s.strict_positive.push(qvec(&[1, -1, 0, 0]));
        s.strict_positive.push(qvec(&[0, 1, -1, 0]));
        s.nonstrict.push((qvec(&[0, 0, 1, -1]), q(2)));
        assert_eq!(feas(&s), feas(&s));
    }

    #[test]
    fn simplex_path_feasible_and_infeasible() {
        // Ambient dimension 9 forces the simplex engine.
        let mut s = LinearSystem::new(9);
        s.equalities.push((qvec(&[1, 1, 1, 1, 1, 1, 1, 1, 1]), q(0)));
        for i in 0..8 {
            let mut row = vec![q(0); 9];
            row[i] = q(-1);
            row[i + 1] = q(1);
            s.strict_positive.push(row); // x_i < x_{i+1}
        }
        let Feasibility::Witness(w) = feas(&s) else {
            panic!("ordered chamber in dimension 9 must be feasible")
        };
        assert!(s.satisfied_by(&w));

        let mut bad = LinearSystem::new(9);
        let mut row = vec![q(0); 9];
        row[3] = q(1);
        bad.strict_positive.push(row.clone());
        row[3] = q(-1);
        bad.strict_positive.push(row);
        assert_eq!(feas(&bad), Feasibility::Infeasible);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Both engines are complete deciders, so they must agree; witnesses
        /// must satisfy systems exactly.
        #[test]
        fn engines_agree_on_random_systems(
            eqs in proptest::collection::vec(
                (proptest::collection::vec(-3i64..4, 3), -2i64..3), 0..3),
            stricts in proptest::collection::vec(
                proptest::collection::vec(-3i64..4, 3), 0..4),
        ) {
            let rows: Vec<(Vec<Rat>, Rat)> = stricts.iter()
                .map(|r| (qvec(r), q(1)))
                .collect();
            // Run the raw engines on the same reduced input: no equalities,
            // inequalities only.
            let mut all = rows.clone();
            for (r, c) in &eqs {
                // Encode r.x = c as two nonstrict rows.
                all.push((qvec(r), q(*c)));
                all.push((qvec(r).iter().map(|v| -v.clone()).collect(), q(-*c)));
            }
            let fm = fourier_motzkin(3, all.clone());
            let sx = simplex_phase1(3, all.clone());
            prop_assert_eq!(fm.is_some(), sx.is_some());
            for w in [fm, sx].into_iter().flatten() {
                for (r, c) in &all {
                    prop_assert!(dot(r, &w) >= *c);
                }
            }
        }
    }
}
