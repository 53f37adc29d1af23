//! Exact linear programming.
//!
//! A dense two-phase tableau simplex over [`Rational`] with Bland's
//! lowest-index pivot rule, so it always terminates and every verdict carries
//! an exact certificate: an optimal point that satisfies all constraints with
//! zero residual, a phase-one optimum above zero for infeasibility, or an
//! improving ray for unboundedness.
//!
//! Variables are transformed to the standard form `min c·y, A·y = b, y ≥ 0`:
//! a variable with a finite lower bound is shifted, one with only an upper
//! bound is reflected, and a free variable is split into two nonnegative
//! parts. A finite upper bound on a shifted variable becomes an extra row.

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, v)| a * v).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// `minimize objective·x` subject to linear constraints and per-variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// A program over `objective.len()` variables, each bounded below by zero.
    pub fn minimize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            lower: vec![Some(Rational::default()); n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.set_bounds(var, None, None)
    }

    pub fn bounds(&self, var: usize) -> (Option<&Rational>, Option<&Rational>) {
        (self.lower[var].as_ref(), self.upper[var].as_ref())
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    /// Adds a constraint given as `(variable, coefficient)` pairs.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> &mut Self {
        let mut coeffs = vec![Rational::default(); self.num_vars()];
        for (j, a) in terms {
            coeffs[*j] += a;
        }
        self.add_constraint(coeffs, relation, rhs)
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).filter(|(c, _)| !c.is_zero()).map(|(c, v)| c * v).sum()
    }

    /// Whether `x` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().enumerate().all(|(j, v)| {
                self.lower[j].as_ref().is_none_or(|l| v >= l) && self.upper[j].as_ref().is_none_or(|u| v <= u)
            })
            && self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// Whether `d` is a recession direction (feasible from any feasible point).
    pub fn is_recession_direction(&self, d: &[Rational]) -> bool {
        d.len() == self.num_vars()
            && d.iter().enumerate().all(|(j, v)| {
                (self.lower[j].is_none() || !v.is_negative()) && (self.upper[j].is_none() || !v.is_positive())
            })
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(d).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => !lhs.is_positive(),
                    Relation::Eq => lhs.is_zero(),
                    Relation::Ge => !lhs.is_negative(),
                }
            })
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "constraint {i} has {} coefficients for {n} variables",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Whether the optimal face is a single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    NotChecked,
    Unique,
    /// A second optimal point, different from the reported one.
    Alternative(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal {
        point: Vec<Rational>,
        objective: Rational,
        uniqueness: Uniqueness,
    },
    /// The phase-one minimum of the total infeasibility, always positive.
    Infeasible {
        infeasibility: Rational,
    },
    /// A feasible point and a direction along which the objective decreases
    /// without bound.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Infeasible { .. } => LpStatus::Infeasible,
            LpSolution::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn objective(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { objective, .. } => Some(objective),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { point, .. } | LpSolution::Unbounded { point, .. } => Some(point),
            LpSolution::Infeasible { .. } => None,
        }
    }
}

/// Solves `p` exactly.
pub fn solve_lp(p: &LinearProgram) -> Result<LpSolution> {
    Solver::build(p)?.run(p, false)
}

/// Solves `p` and, when optimal, decides whether the optimum is unique.
///
/// The check maximizes the sum of the zero-reduced-cost nonbasic variables
/// over the optimal face; the optimum is unique iff that maximum is zero. The
/// standard-form map must be injective for this to transfer back to the
/// original variables, so free variables are rejected.
pub fn solve_lp_unique(p: &LinearProgram) -> Result<LpSolution> {
    if (0..p.num_vars()).any(|j| p.lower[j].is_none() && p.upper[j].is_none()) {
        return Err(Error::MalformedLp("uniqueness check needs every variable bounded on one side".into()));
    }
    Solver::build(p)?.run(p, true)
}

#[derive(Debug, Clone)]
enum VarMap {
    /// `x = lo + y[col]`
    Shift(usize, Rational),
    /// `x = hi − y[col]`
    Reflect(usize, Rational),
    /// `x = y[pos] − y[neg]`
    Split(usize, usize),
}

struct Solver {
    /// Rows of `[A | b]`; the last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Number of columns excluding the right-hand side.
    ncols: usize,
    /// First artificial column; artificials occupy `art_start..ncols`.
    art_start: usize,
    /// Phase-two costs on the standard-form columns.
    cost: Vec<Rational>,
    /// Reduced costs for the current objective, with `−value` in the last slot.
    d: Vec<Rational>,
    maps: Vec<VarMap>,
    /// Eligibility for entering the basis.
    eligible: Vec<bool>,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl Solver {
    fn build(p: &LinearProgram) -> Result<Self> {
        p.validate()?;
        let n = p.num_vars();
        let mut maps = Vec::with_capacity(n);
        let mut ny = 0usize;
        // Extra rows from two-sided bounds: (column, hi − lo).
        let mut bound_rows = Vec::new();
        for j in 0..n {
            match (&p.lower[j], &p.upper[j]) {
                (Some(lo), hi) => {
                    if let Some(hi) = hi {
                        bound_rows.push((ny, hi - lo));
                    }
                    maps.push(VarMap::Shift(ny, lo.clone()));
                    ny += 1;
                }
                (None, Some(hi)) => {
                    maps.push(VarMap::Reflect(ny, hi.clone()));
                    ny += 1;
                }
                (None, None) => {
                    maps.push(VarMap::Split(ny, ny + 1));
                    ny += 2;
                }
            }
        }

        // Rows over the structural columns, before slacks.
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
        for c in &p.constraints {
            let mut row = vec![Rational::default(); ny];
            let mut rhs = c.rhs.clone();
            for (j, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                match &maps[j] {
                    VarMap::Shift(col, lo) => {
                        row[*col] += a;
                        rhs -= a * lo;
                    }
                    VarMap::Reflect(col, hi) => {
                        row[*col] -= a;
                        rhs -= a * hi;
                    }
                    VarMap::Split(pos, neg) => {
                        row[*pos] += a;
                        row[*neg] -= a;
                    }
                }
            }
            rows.push((row, c.relation, rhs));
        }
        for (col, width) in bound_rows {
            let mut row = vec![Rational::default(); ny];
            row[col] = Rational::from_integer(1);
            rows.push((row, Relation::Le, width));
        }

        let m = rows.len();
        let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        // A row starts with its slack in the basis when the slack enters with +1
        // after normalizing the right-hand side to be nonnegative.
        let needs_art: Vec<bool> = rows
            .iter()
            .map(|(_, rel, rhs)| match rel {
                Relation::Eq => true,
                Relation::Le => rhs.is_negative(),
                Relation::Ge => !rhs.is_negative(),
            })
            .collect();
        let nart = needs_art.iter().filter(|&&b| b).count();
        let art_start = ny + nslack;
        let ncols = art_start + nart;

        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = ny;
        let mut art = art_start;
        for (k, (row, rel, rhs)) in rows.into_iter().enumerate() {
            let mut full = row;
            full.resize(ncols + 1, Rational::default());
            let slack_col = match rel {
                Relation::Eq => None,
                Relation::Le => {
                    full[slack] = Rational::from_integer(1);
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Ge => {
                    full[slack] = Rational::from_integer(-1);
                    slack += 1;
                    Some(slack - 1)
                }
            };
            full[ncols] = rhs;
            if full[ncols].is_negative() {
                for v in full.iter_mut() {
                    if !v.is_zero() {
                        *v = -&*v;
                    }
                }
            }
            if needs_art[k] {
                full[art] = Rational::from_integer(1);
                basis.push(art);
                art += 1;
            } else {
                basis.push(slack_col.expect("non-artificial rows have a slack"));
            }
            t.push(full);
        }

        let mut cost = vec![Rational::default(); ncols];
        for (j, c) in p.objective.iter().enumerate() {
            match &maps[j] {
                VarMap::Shift(col, _) => cost[*col] = c.clone(),
                VarMap::Reflect(col, _) => cost[*col] = -c,
                VarMap::Split(pos, neg) => {
                    cost[*pos] = c.clone();
                    cost[*neg] = -c;
                }
            }
        }

        Ok(Solver { t, basis, ncols, art_start, cost, d: Vec::new(), maps, eligible: vec![true; ncols] })
    }

    fn run(mut self, p: &LinearProgram, check_unique: bool) -> Result<LpSolution> {
        if self.art_start < self.ncols {
            let mut phase1 = vec![Rational::default(); self.ncols];
            for c in phase1.iter_mut().skip(self.art_start) {
                *c = Rational::from_integer(1);
            }
            self.set_objective(&phase1);
            match self.simplex() {
                Outcome::Optimal => {}
                Outcome::Unbounded(_) => unreachable!("phase one is bounded below by zero"),
            }
            let infeasibility = -&self.d[self.ncols];
            if infeasibility.is_positive() {
                return Ok(LpSolution::Infeasible { infeasibility });
            }
            self.drive_out_artificials();
            for e in self.eligible.iter_mut().skip(self.art_start) {
                *e = false;
            }
        }

        let cost = self.cost.clone();
        self.set_objective(&cost);
        match self.simplex() {
            Outcome::Unbounded(col) => {
                let point = self.point();
                let ray = self.ray(col);
                Ok(LpSolution::Unbounded { point, ray })
            }
            Outcome::Optimal => {
                let point = self.point();
                let objective = p.objective_at(&point);
                let uniqueness = if check_unique { self.face_witness(&point) } else { Uniqueness::NotChecked };
                Ok(LpSolution::Optimal { point, objective, uniqueness })
            }
        }
    }

    /// Sets reduced costs for cost vector `c` relative to the current basis.
    fn set_objective(&mut self, c: &[Rational]) {
        let mut d: Vec<Rational> = c.to_vec();
        d.push(Rational::default());
        for (row, &b) in self.t.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(row) {
                if !a.is_zero() {
                    *dj -= cb * a;
                }
            }
        }
        self.d = d;
    }

    /// Bland's rule: lowest-index improving column enters; ratio ties leave by
    /// lowest basic index.
    fn simplex(&mut self) -> Outcome {
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| self.eligible[j] && self.d[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Outcome::Unbounded(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !self.t[r][j].is_zero()).collect();
        if !inv.is_one() {
            for &j in &nz {
                self.t[r][j] *= &inv;
            }
        }
        let prow: Vec<(usize, Rational)> = nz.iter().map(|&j| (j, self.t[r][j].clone())).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (j, v) in &prow {
                row[*j] -= &f * v;
            }
        };
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        if !self.d.is_empty() {
            eliminate(&mut self.d);
        }
        self.basis[r] = c;
    }

    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.t.len() {
            if self.basis[r] >= self.art_start {
                match (0..self.art_start).find(|&j| !self.t[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        // Redundant row.
                        self.t.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    fn standard_point(&self) -> Vec<Rational> {
        let mut y = vec![Rational::default(); self.ncols];
        for (row, &b) in self.t.iter().zip(&self.basis) {
            y[b] = row[self.ncols].clone();
        }
        y
    }

    fn to_original(&self, y: &[Rational], homogeneous: bool) -> Vec<Rational> {
        self.maps
            .iter()
            .map(|m| match m {
                VarMap::Shift(col, lo) => {
                    if homogeneous {
                        y[*col].clone()
                    } else {
                        lo + &y[*col]
                    }
                }
                VarMap::Reflect(col, hi) => {
                    if homogeneous {
                        -&y[*col]
                    } else {
                        hi - &y[*col]
                    }
                }
                VarMap::Split(pos, neg) => &y[*pos] - &y[*neg],
            })
            .collect()
    }

    fn point(&self) -> Vec<Rational> {
        self.to_original(&self.standard_point(), false)
    }

    fn ray(&self, col: usize) -> Vec<Rational> {
        let mut dy = vec![Rational::default(); self.ncols];
        dy[col] = Rational::from_integer(1);
        for (row, &b) in self.t.iter().zip(&self.basis) {
            if !row[col].is_zero() {
                dy[b] = -&row[col];
            }
        }
        self.to_original(&dy, true)
    }

    /// Explores the optimal face from the current optimal basis.
    fn face_witness(&mut self, optimum: &[Rational]) -> Uniqueness {
        let mut in_basis = vec![false; self.ncols];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        let mut free_dirs = Vec::new();
        for (j, basic) in in_basis.iter().enumerate() {
            if !self.eligible[j] || *basic {
                continue;
            }
            if self.d[j].is_zero() {
                free_dirs.push(j);
            } else {
                // Positive reduced cost: the variable is zero on the whole face.
                self.eligible[j] = false;
            }
        }
        if free_dirs.is_empty() {
            return Uniqueness::Unique;
        }
        let mut c = vec![Rational::default(); self.ncols];
        for &j in &free_dirs {
            c[j] = Rational::from_integer(-1);
        }
        self.set_objective(&c);
        match self.simplex() {
            Outcome::Unbounded(col) => {
                let ray = self.ray(col);
                let witness: Vec<Rational> = self.point().iter().zip(&ray).map(|(x, d)| x + d).collect();
                Uniqueness::Alternative(witness)
            }
            Outcome::Optimal => {
                if self.d[self.ncols].is_positive() {
                    let witness = self.point();
                    debug_assert_ne!(witness.as_slice(), optimum);
                    Uniqueness::Alternative(witness)
                } else {
                    Uniqueness::Unique
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn single_lower_bound() {
        let mut p = LinearProgram::minimize(vec![qi(1)]);
        p.set_free(0).add_constraint(vec![qi(1)], Relation::Ge, qi(1));
        match solve_lp(&p).unwrap() {
            LpSolution::Optimal { point, objective, .. } => {
                assert_eq!(point, vec![qi(1)]);
                assert_eq!(objective, qi(1));
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut p = LinearProgram::minimize(vec![qi(1)]);
        p.set_free(0).add_constraint(vec![qi(1)], Relation::Le, qi(0)).add_constraint(vec![qi(1)], Relation::Ge, qi(1));
        match solve_lp(&p).unwrap() {
            LpSolution::Infeasible { infeasibility } => assert!(infeasibility.is_positive()),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        let p = LinearProgram::minimize(vec![qi(-1)]);
        match solve_lp(&p).unwrap() {
            LpSolution::Unbounded { point, ray } => {
                assert_eq!(ray, vec![qi(1)]);
                assert!(p.is_feasible(&point));
                assert!(p.is_recession_direction(&ray));
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn classic_two_variable_program() {
        // max 3x + 2y s.t. x + y ≤ 4, x + 3y ≤ 6, x ≤ 3 → (3, 1), value 11.
        let mut p = LinearProgram::minimize(vec![qi(-3), qi(-2)]);
        p.add_constraint(vec![qi(1), qi(1)], Relation::Le, qi(4))
            .add_constraint(vec![qi(1), qi(3)], Relation::Le, qi(6))
            .set_bounds(0, Some(qi(0)), Some(qi(3)));
        let s = solve_lp_unique(&p).unwrap();
        match s {
            LpSolution::Optimal { point, objective, uniqueness } => {
                assert_eq!(point, vec![qi(3), qi(1)]);
                assert_eq!(objective, qi(-11));
                assert_eq!(uniqueness, Uniqueness::Unique);
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn detects_optimal_edge() {
        // min −x − y over x + y ≤ 1: every point of the edge is optimal.
        let mut p = LinearProgram::minimize(vec![qi(-1), qi(-1)]);
        p.add_constraint(vec![qi(1), qi(1)], Relation::Le, qi(1));
        match solve_lp_unique(&p).unwrap() {
            LpSolution::Optimal { point, uniqueness: Uniqueness::Alternative(w), .. } => {
                assert_ne!(point, w);
                assert!(p.is_feasible(&w));
                assert_eq!(p.objective_at(&w), qi(-1));
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn negative_lower_bounds_and_reflection() {
        // min x − y with −2 ≤ x, y ≤ 5/2, x + y = 1 → x = −2, y = 3 is infeasible for y,
        // so y = 5/2, x = −3/2.
        let mut p = LinearProgram::minimize(vec![qi(1), qi(-1)]);
        p.set_bounds(0, Some(qi(-2)), None).set_bounds(1, None, Some(q(5, 2))).add_constraint(
            vec![qi(1), qi(1)],
            Relation::Eq,
            qi(1),
        );
        match solve_lp(&p).unwrap() {
            LpSolution::Optimal { point, objective, .. } => {
                assert_eq!(point, vec![q(-3, 2), q(5, 2)]);
                assert_eq!(objective, qi(-4));
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LinearProgram::minimize(vec![qi(1), qi(2)]);
        p.add_constraint(vec![qi(1), qi(1)], Relation::Eq, qi(2)).add_constraint(
            vec![qi(2), qi(2)],
            Relation::Eq,
            qi(4),
        );
        match solve_lp_unique(&p).unwrap() {
            LpSolution::Optimal { point, uniqueness, .. } => {
                assert_eq!(point, vec![qi(2), qi(0)]);
                assert_eq!(uniqueness, Uniqueness::Unique);
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let mut p = LinearProgram::minimize(vec![qi(1), qi(1)]);
        p.add_constraint(vec![qi(1)], Relation::Le, qi(1));
        assert!(matches!(solve_lp(&p), Err(Error::MalformedLp(_))));
        let mut f = LinearProgram::minimize(vec![qi(1)]);
        f.set_free(0);
        assert!(solve_lp_unique(&f).is_err());
    }

    /// Minimum over all basic feasible points: every choice of `n` tight rows
    /// among constraints and bounds that determines a unique point.
    fn brute_force_min(p: &LinearProgram) -> Option<Rational> {
        use crate::linalg::{solve, Solve};
        let n = p.num_vars();
        let mut rows: Vec<(Vec<Rational>, Rational)> =
            p.constraints().iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
        for j in 0..n {
            let (lo, hi) = p.bounds(j);
            for b in [lo, hi].into_iter().flatten() {
                let mut e = vec![qi(0); n];
                e[j] = qi(1);
                rows.push((e, b.clone()));
            }
        }
        let mut best: Option<Rational> = None;
        for pick in crate::matrices::subsets_of_size(rows.len(), n) {
            let a: Vec<Vec<Rational>> = pick.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Rational> = pick.iter().map(|&i| rows[i].1.clone()).collect();
            if let Solve::Unique(x) = solve(&a, &b, n) {
                if p.is_feasible(&x) {
                    let v = p.objective_at(&x);
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_vertex_enumeration(
            n in 1usize..4,
            obj in proptest::collection::vec(-4i64..5, 3),
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..4, 3), 0usize..3, -4i64..8), 0..4),
            lo in proptest::collection::vec(-2i64..1, 3),
            width in proptest::collection::vec(0i64..4, 3),
        ) {
            let mut p = LinearProgram::minimize(obj[..n].iter().map(|&c| qi(c)).collect());
            for j in 0..n {
                p.set_bounds(j, Some(qi(lo[j])), Some(qi(lo[j] + width[j])));
            }
            for (a, rel, b) in &rows {
                let rel = [Relation::Le, Relation::Eq, Relation::Ge][*rel];
                p.add_constraint(a[..n].iter().map(|&v| qi(v)).collect(), rel, qi(*b));
            }
            let expected = brute_force_min(&p);
            match solve_lp_unique(&p).unwrap() {
                LpSolution::Optimal { point, objective, uniqueness } => {
                    prop_assert!(p.is_feasible(&point));
                    prop_assert_eq!(p.objective_at(&point), objective.clone());
                    prop_assert_eq!(Some(objective.clone()), expected);
                    if let Uniqueness::Alternative(w) = uniqueness {
                        prop_assert!(p.is_feasible(&w));
                        prop_assert_eq!(p.objective_at(&w), objective);
                        prop_assert_ne!(w, point);
                    }
                }
                LpSolution::Infeasible { .. } => prop_assert_eq!(expected, None),
                LpSolution::Unbounded { .. } => prop_assert!(false, "bounded program reported unbounded"),
            }
        }

        #[test]
        fn unique_verdict_matches_optimal_vertex_count(
            obj in proptest::collection::vec(-2i64..3, 2),
            rows in proptest::collection::vec((proptest::collection::vec(-2i64..3, 2), -1i64..4), 1..4),
        ) {
            let mut p = LinearProgram::minimize(obj.iter().map(|&c| qi(c)).collect());
            p.set_bounds(0, Some(qi(0)), Some(qi(3))).set_bounds(1, Some(qi(0)), Some(qi(3)));
            for (a, b) in &rows {
                p.add_constraint(a.iter().map(|&v| qi(v)).collect(), Relation::Le, qi(*b));
            }
            if let LpSolution::Optimal { objective, uniqueness, .. } = solve_lp_unique(&p).unwrap() {
                // Count distinct optimal vertices by brute force.
                let mut q2 = p.clone();
                q2.add_constraint(p.objective().to_vec(), Relation::Eq, objective);
                let mut verts = std::collections::BTreeSet::new();
                let rows_all: Vec<Constraint> = q2.constraints().to_vec();
                let mut eqs: Vec<(Vec<Rational>, Rational)> = rows_all.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
                for j in 0..2 {
                    for b in [qi(0), qi(3)] {
                        let mut e = vec![qi(0); 2];
                        e[j] = qi(1);
                        eqs.push((e, b));
                    }
                }
                for pick in crate::matrices::subsets_of_size(eqs.len(), 2) {
                    let a: Vec<Vec<Rational>> = pick.iter().map(|&i| eqs[i].0.clone()).collect();
                    let b: Vec<Rational> = pick.iter().map(|&i| eqs[i].1.clone()).collect();
                    if let crate::linalg::Solve::Unique(x) = crate::linalg::solve(&a, &b, 2) {
                        if q2.is_feasible(&x) {
                            verts.insert(x);
                        }
                    }
                }
                prop_assert_eq!(verts.len() == 1, uniqueness == Uniqueness::Unique);
            }
        }
    }
}
