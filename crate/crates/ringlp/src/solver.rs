//! Self-contained two-phase simplex over a dense tableau, in either `f64` or
//! exact rational arithmetic.
//!
//! Artificial variables provide the phase-1 start (no Big-M); builders may
//! attach a starting-basis hint to skip phase 1 when the hinted basis is
//! feasible. Bland's rule is available both as the configured pivot rule and
//! as an automatic fallback when Dantzig pricing stalls on degenerate pivots.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::polytope::LinearProgram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Float64,
    ExactRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    Bland,
    DantzigBlandFallback,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub arithmetic: Arithmetic,
    pub feas_tol: f64,
    pub int_tol: f64,
    pub pivot_rule: PivotRule,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            arithmetic: Arithmetic::Float64,
            feas_tol: 1e-9,
            int_tol: 1e-6,
            pivot_rule: PivotRule::DantzigBlandFallback,
            max_iterations: 200_000,
        }
    }
}

impl SolverConfig {
    pub fn exact() -> Self {
        SolverConfig { arithmetic: Arithmetic::ExactRational, ..SolverConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Column indices of the final basis (one per kept tableau row).
    pub basis: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub status: Status,
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub exact: Option<ExactSolution>,
}

/// Scalar abstraction shared by the float and exact tableaus.
pub(crate) trait Scalar: Clone + PartialOrd + std::fmt::Debug {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);
    fn div_assign(&mut self, o: &Self);
    /// `|self| > tol` (exact arithmetic ignores `tol`)
    fn gt_tol(&self, tol: f64) -> bool;
    /// `self < -tol`
    fn lt_neg_tol(&self, tol: f64) -> bool;
    fn is_exactly_zero(&self) -> bool;
    fn is_positive_strict(&self) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn div_assign(&mut self, o: &Self) {
        *self /= o;
    }
    fn gt_tol(&self, tol: f64) -> bool {
        self.abs() > tol
    }
    fn lt_neg_tol(&self, tol: f64) -> bool {
        *self < -tol
    }
    fn is_exactly_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive_strict(&self) -> bool {
        *self > 0.0
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_f64(v: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }
    fn div_assign(&mut self, o: &Self) {
        *self /= o.clone();
    }
    fn gt_tol(&self, _tol: f64) -> bool {
        !self.is_zero()
    }
    fn lt_neg_tol(&self, _tol: f64) -> bool {
        self.is_negative()
    }
    fn is_exactly_zero(&self) -> bool {
        self.is_zero()
    }
    fn is_positive_strict(&self) -> bool {
        Signed::is_positive(self)
    }
}

/// Minimizes the program's objective subject to its constraints and `x >= 0`.
pub fn solve(lp: &LinearProgram, config: &SolverConfig) -> Solution {
    match config.arithmetic {
        Arithmetic::Float64 => {
            let mut t: Tableau<f64> = Tableau::assemble(lp, config);
            let (status, iterations) = t.run(config);
            Solution {
                status,
                x: t.extract_x(),
                objective: t.objective_value(),
                iterations,
                exact: None,
            }
        }
        Arithmetic::ExactRational => {
            let mut t: Tableau<BigRational> = Tableau::assemble(lp, config);
            let (status, iterations) = t.run(config);
            let x_exact = t.extract_x();
            let x: Vec<f64> = x_exact.iter().map(Scalar::to_f64).collect();
            let objective_exact = t.objective_value();
            let objective = Scalar::to_f64(&objective_exact);
            let basis: Vec<usize> = (0..t.rows)
                .filter(|&r| !t.dropped[r])
                .map(|r| t.basis[r])
                .collect();
            Solution {
                status,
                x,
                objective,
                iterations,
                exact: Some(ExactSolution { x: x_exact, objective: objective_exact, basis }),
            }
        }
    }
}

/// True when every entry of an indicator-block vector is within `tol` of
/// {0, 1} and every per-symbol block sum is within `tol` of {0, 1}.
pub fn is_integral(f: &[f64], q: u32, tol: f64) -> bool {
    let near = |v: f64, target: f64| (v - target).abs() <= tol;
    if !f.iter().all(|&v| near(v, 0.0) || near(v, 1.0)) {
        return false;
    }
    let block = q as usize - 1;
    if block == 0 {
        return true;
    }
    f.chunks(block).all(|b| {
        let s: f64 = b.iter().sum();
        near(s, 0.0) || near(s, 1.0)
    })
}

const PIVOT_TOL: f64 = 1e-8;
const COST_TOL: f64 = 1e-9;

struct Tableau<S> {
    rows: usize,
    /// Total columns excluding the rhs slot.
    cols: usize,
    stride: usize,
    t: Vec<S>,
    cost: Vec<S>,
    objective: Vec<S>,
    basis: Vec<usize>,
    n_struct: usize,
    art_start: usize,
    dropped: Vec<bool>,
    feas_tol: f64,
}

impl<S: Scalar> Tableau<S> {
    fn assemble(lp: &LinearProgram, config: &SolverConfig) -> Tableau<S> {
        let mut tab: Tableau<S> = Tableau::build(lp, config, true);
        // a hint that broke primal feasibility is discarded wholesale
        if (0..tab.rows).any(|r| !tab.dropped[r] && tab.rhs(r).lt_neg_tol(tab.feas_tol)) {
            tab = Tableau::build(lp, config, false);
        }
        tab
    }

    fn build(lp: &LinearProgram, config: &SolverConfig, with_hints: bool) -> Tableau<S> {
        let n_struct = lp.num_vars();
        let m_eq = lp.eq_rows().len();
        let m_ub = lp.ub_rows().len();
        let rows = m_eq + m_ub;
        let n_slack = m_ub;
        let cols = n_struct + n_slack + rows;
        let stride = cols + 1;
        let art_start = n_struct + n_slack;
        let mut t = vec![S::zero(); rows * stride];
        let mut basis = vec![usize::MAX; rows];

        for (r, (row, &rhs)) in lp.eq_rows().iter().zip(lp.eq_rhs()).enumerate() {
            let sgn = if rhs < 0.0 { -1.0 } else { 1.0 };
            for &(c, v) in row {
                t[r * stride + c] = S::from_f64(sgn * v);
            }
            t[r * stride + cols] = S::from_f64(sgn * rhs);
            t[r * stride + art_start + r] = S::one();
            basis[r] = art_start + r;
        }
        for (k, (row, &rhs)) in lp.ub_rows().iter().zip(lp.ub_rhs()).enumerate() {
            let r = m_eq + k;
            let slack = n_struct + k;
            let sgn = if rhs < 0.0 { -1.0 } else { 1.0 };
            for &(c, v) in row {
                t[r * stride + c] = S::from_f64(sgn * v);
            }
            t[r * stride + cols] = S::from_f64(sgn * rhs);
            t[r * stride + slack] = S::from_f64(sgn);
            if rhs >= 0.0 {
                basis[r] = slack;
            } else {
                t[r * stride + art_start + r] = S::one();
                basis[r] = art_start + r;
            }
        }

        let mut objective = vec![S::zero(); cols];
        for (j, &c) in lp.objective().iter().enumerate() {
            objective[j] = S::from_f64(c);
        }

        let mut tab = Tableau {
            rows,
            cols,
            stride,
            t,
            cost: vec![S::zero(); stride],
            objective,
            basis,
            n_struct,
            art_start,
            dropped: vec![false; rows],
            feas_tol: config.feas_tol,
        };
        tab.drop_empty_rows();
        if with_hints {
            tab.install_hints(lp);
        }
        tab
    }

    fn drop_empty_rows(&mut self) {
        for r in 0..self.rows {
            let row = &self.t[r * self.stride..r * self.stride + self.art_start];
            if row.iter().all(|v| !v.gt_tol(1e-14)) && !self.rhs(r).gt_tol(self.feas_tol) {
                self.dropped[r] = true;
            }
        }
    }

    fn rhs(&self, r: usize) -> &S {
        &self.t[r * self.stride + self.cols]
    }

    fn entry(&self, r: usize, c: usize) -> &S {
        &self.t[r * self.stride + c]
    }

    fn install_hints(&mut self, lp: &LinearProgram) {
        for (r, hint) in lp.basis_hint().iter().enumerate() {
            let Some(c) = *hint else { continue };
            if r >= self.rows || self.dropped[r] || c >= self.n_struct {
                continue;
            }
            if self.basis[r] < self.art_start || !self.entry(r, c).gt_tol(PIVOT_TOL) {
                continue;
            }
            // keep primal feasibility: the incoming basic value must be >= 0
            let value = self.rhs(r).div(self.entry(r, c));
            if !value.lt_neg_tol(self.feas_tol) {
                self.pivot(r, c);
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let stride = self.stride;
        let (before, rest) = self.t.split_at_mut(r * stride);
        let (prow, after) = rest.split_at_mut(stride);
        let p = prow[c].clone();
        for v in prow.iter_mut() {
            if !v.is_exactly_zero() {
                v.div_assign(&p);
            }
        }
        prow[c] = S::one();
        let apply = |row: &mut [S]| {
            let f = row[c].clone();
            if f.is_exactly_zero() {
                return;
            }
            for (d, s) in row.iter_mut().zip(prow.iter()) {
                d.sub_mul_assign(&f, s);
            }
            row[c] = S::zero();
        };
        for row in before.chunks_mut(stride) {
            apply(row);
        }
        for row in after.chunks_mut(stride) {
            apply(row);
        }
        apply(&mut self.cost);
        self.basis[r] = c;
    }

    /// Installs `c` as the cost row, reduced against the current basis.
    fn load_cost(&mut self, c: &[S]) {
        let stride = self.stride;
        self.cost[..c.len()].clone_from_slice(c);
        for v in &mut self.cost[c.len()..] {
            *v = S::zero();
        }
        for r in 0..self.rows {
            if self.dropped[r] {
                continue;
            }
            let f = self.cost[self.basis[r]].clone();
            if f.is_exactly_zero() {
                continue;
            }
            let row = &self.t[r * stride..(r + 1) * stride];
            for (d, s) in self.cost.iter_mut().zip(row.iter()) {
                d.sub_mul_assign(&f, s);
            }
            self.cost[self.basis[r]] = S::zero();
        }
    }

    fn run(&mut self, config: &SolverConfig) -> (Status, usize) {
        let mut iterations = 0usize;

        let needs_phase1 = (0..self.rows).any(|r| {
            !self.dropped[r] && self.basis[r] >= self.art_start && self.rhs(r).gt_tol(self.feas_tol)
        });
        if needs_phase1 {
            let mut c1 = vec![S::zero(); self.cols];
            for a in &mut c1[self.art_start..] {
                *a = S::one();
            }
            self.load_cost(&c1);
            let status = self.iterate(config, &mut iterations, true);
            if status != Status::Optimal {
                return (status, iterations);
            }
            let infeas = self.objective_value();
            if infeas.gt_tol(self.feas_tol.max(1e-7)) {
                return (Status::Infeasible, iterations);
            }
        }

        let obj = self.objective.clone();
        self.load_cost(&obj);
        let status = self.iterate(config, &mut iterations, false);
        (status, iterations)
    }

    fn iterate(&mut self, config: &SolverConfig, iterations: &mut usize, phase1: bool) -> Status {
        let mut bland = config.pivot_rule == PivotRule::Bland;
        let mut stall = 0usize;
        let stall_limit = self.rows / 2 + 128;
        let mut best_obj = self.objective_value().to_f64();
        loop {
            if *iterations >= config.max_iterations {
                return Status::IterationLimit;
            }
            // entering column among structural + slack columns
            let enter = if bland {
                (0..self.art_start).find(|&j| self.cost[j].lt_neg_tol(COST_TOL))
            } else {
                let mut best: Option<(usize, f64)> = None;
                for j in 0..self.art_start {
                    if self.cost[j].lt_neg_tol(COST_TOL) {
                        let v = self.cost[j].to_f64();
                        if best.map_or(true, |(_, bv)| v < bv) {
                            best = Some((j, v));
                        }
                    }
                }
                best.map(|(j, _)| j)
            };
            let Some(e) = enter else {
                return Status::Optimal;
            };

            // a basic artificial pinned at zero must not grow: evict it first
            let mut leave: Option<usize> = None;
            if !phase1 {
                for r in 0..self.rows {
                    if self.dropped[r] || self.basis[r] < self.art_start {
                        continue;
                    }
                    if !self.rhs(r).gt_tol(self.feas_tol) && self.entry(r, e).gt_tol(PIVOT_TOL) {
                        if leave.map_or(true, |b| self.basis[r] < self.basis[b]) {
                            leave = Some(r);
                        }
                    }
                }
            }

            if leave.is_none() {
                let mut best: Option<(usize, S)> = None;
                for r in 0..self.rows {
                    if self.dropped[r] {
                        continue;
                    }
                    let a = self.entry(r, e);
                    if !(a.is_positive_strict() && a.gt_tol(PIVOT_TOL)) {
                        continue;
                    }
                    let ratio = self.rhs(r).div(a);
                    let better = match &best {
                        None => true,
                        Some((br, bratio)) => {
                            if S::EXACT {
                                ratio < *bratio
                                    || (ratio == *bratio && self.basis[r] < self.basis[*br])
                            } else {
                                let rv = ratio.to_f64();
                                let bv = bratio.to_f64();
                                if rv < bv - COST_TOL {
                                    true
                                } else if (rv - bv).abs() <= COST_TOL {
                                    // break ties toward the larger pivot when
                                    // hunting (stability), by index under Bland
                                    if bland {
                                        self.basis[r] < self.basis[*br]
                                    } else {
                                        let ba = self.entry(*br, e);
                                        a.to_f64().abs() > ba.to_f64().abs()
                                    }
                                } else {
                                    false
                                }
                            }
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
                leave = best.map(|(r, _)| r);
            }

            let Some(r) = leave else {
                return Status::Unbounded;
            };
            // a degenerate pivot leaves the objective in place
            let degenerate = !self.rhs(r).gt_tol(self.feas_tol);
            self.pivot(r, e);
            *iterations += 1;

            if !bland {
                if degenerate {
                    stall += 1;
                    if stall > stall_limit {
                        bland = true;
                    }
                } else {
                    let obj = self.objective_value().to_f64();
                    if obj < best_obj - 1e-12 * (1.0 + best_obj.abs()) {
                        stall = 0;
                        best_obj = obj;
                    }
                }
            }
        }
    }

    fn extract_x(&self) -> Vec<S> {
        let mut x = vec![S::zero(); self.n_struct];
        for r in 0..self.rows {
            if self.dropped[r] {
                continue;
            }
            let b = self.basis[r];
            if b < self.n_struct {
                x[b] = self.rhs(r).clone();
            }
        }
        x
    }

    fn objective_value(&self) -> S {
        // the reduced cost row's rhs slot holds the negated objective
        self.cost[self.cols].neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{LinearProgram, VarName, VariableRegistry};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(v: f64) -> BigRational {
        <BigRational as FromPrimitive>::from_f64(v).unwrap()
    }

    fn anon_registry(n: usize) -> VariableRegistry {
        let mut reg = VariableRegistry::new();
        for i in 0..n {
            reg.add(VarName::F { i, alpha: 1 });
        }
        reg
    }

    fn lp_from_parts(
        objective: Vec<f64>,
        eq: Vec<(Vec<(usize, f64)>, f64)>,
        ub: Vec<(Vec<(usize, f64)>, f64)>,
    ) -> LinearProgram {
        let reg = anon_registry(objective.len());
        let mut lp = LinearProgram::new(reg);
        lp.set_objective(objective);
        for (row, rhs) in eq {
            lp.add_eq(row, rhs);
        }
        for (row, rhs) in ub {
            lp.add_ub(row, rhs);
        }
        lp
    }

    #[test]
    fn single_variable_equality() {
        let lp = lp_from_parts(vec![1.0], vec![(vec![(0, 1.0)], 1.0)], vec![]);
        let sol = solve(&lp, &SolverConfig::default());
        assert_eq!(sol.status, Status::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let lp = lp_from_parts(
            vec![0.0, 0.0],
            vec![(vec![(0, 1.0), (1, 1.0)], 1.0), (vec![(0, 1.0), (1, 1.0)], 2.0)],
            vec![],
        );
        assert_eq!(solve(&lp, &SolverConfig::default()).status, Status::Infeasible);

        let lp = lp_from_parts(vec![-1.0], vec![], vec![(vec![(0, -1.0)], 0.0)]);
        assert_eq!(solve(&lp, &SolverConfig::default()).status, Status::Unbounded);
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        // -x0 <= -2  i.e. x0 >= 2, minimize x0
        let lp = lp_from_parts(vec![1.0], vec![], vec![(vec![(0, -1.0)], -2.0)]);
        let sol = solve(&lp, &SolverConfig::default());
        assert_eq!(sol.status, Status::Optimal);
        assert!((sol.x[0] - 2.0).abs() < 1e-9);
    }

    /// Enumerates every basic solution of {A_eq x = b, A_ub x + s = u, x,s >= 0}
    /// and returns the best feasible objective.
    fn brute_force_optimum(
        objective: &[f64],
        eq: &[(Vec<(usize, f64)>, f64)],
        ub: &[(Vec<(usize, f64)>, f64)],
    ) -> Option<f64> {
        let n = objective.len();
        let m = eq.len() + ub.len();
        let total = n + ub.len();
        let mut dense = vec![vec![0.0f64; total]; m];
        let mut rhs = vec![0.0f64; m];
        for (r, (row, b)) in eq.iter().enumerate() {
            for &(c, v) in row {
                dense[r][c] = v;
            }
            rhs[r] = *b;
        }
        for (k, (row, b)) in ub.iter().enumerate() {
            let r = eq.len() + k;
            for &(c, v) in row {
                dense[r][c] = v;
            }
            dense[r][n + k] = 1.0;
            rhs[r] = *b;
        }

        let mut best: Option<f64> = None;
        let mut cols: Vec<usize> = (0..m).collect();
        loop {
            // solve for this basis
            let mut a = vec![vec![0.0f64; m + 1]; m];
            for r in 0..m {
                for (ci, &c) in cols.iter().enumerate() {
                    a[r][ci] = dense[r][c];
                }
                a[r][m] = rhs[r];
            }
            if let Some(xb) = gauss_solve(&mut a) {
                if xb.iter().all(|&v| v >= -1e-9) {
                    let mut obj = 0.0;
                    for (ci, &c) in cols.iter().enumerate() {
                        if c < n {
                            obj += objective[c] * xb[ci];
                        }
                    }
                    if best.map_or(true, |b| obj < b) {
                        best = Some(obj);
                    }
                }
            }
            // next combination of m columns out of `total`
            let mut i = m;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if cols[i] != i + total - m {
                    cols[i] += 1;
                    for j in i + 1..m {
                        cols[j] = cols[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn gauss_solve(a: &mut Vec<Vec<f64>>) -> Option<Vec<f64>> {
        let m = a.len();
        for col in 0..m {
            let piv = (col..m).max_by(|&x, &y| {
                a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap()
            })?;
            if a[piv][col].abs() < 1e-10 {
                return None;
            }
            a.swap(col, piv);
            let p = a[col][col];
            for c in col..=m {
                a[col][c] /= p;
            }
            for r in 0..m {
                if r != col && a[r][col].abs() > 0.0 {
                    let f = a[r][col];
                    for c in col..=m {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
        Some((0..m).map(|r| a[r][m]).collect())
    }

    #[test]
    fn random_lps_match_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..20 {
            let n = rng.random_range(3..=7usize);
            let m_eq = rng.random_range(1..=2usize);
            // feasible by construction: b = A x0 with x0 >= 0
            let x0: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
            let mut eq = Vec::new();
            for _ in 0..m_eq {
                let row: Vec<(usize, f64)> =
                    (0..n).map(|c| (c, rng.random_range(-2.0..2.0))).collect();
                let b: f64 = row.iter().map(|&(c, v)| v * x0[c]).sum();
                eq.push((row, b));
            }
            // bounding box keeps the problem bounded
            let ub = vec![((0..n).map(|c| (c, 1.0)).collect::<Vec<_>>(), 20.0)];
            let objective: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();

            let lp = lp_from_parts(objective.clone(), eq.clone(), ub.clone());
            let sol = solve(&lp, &SolverConfig::default());
            assert_eq!(sol.status, Status::Optimal, "trial {}", trial);
            let oracle = brute_force_optimum(&objective, &eq, &ub).expect("feasible");
            assert!(
                (sol.objective - oracle).abs() < 1e-8,
                "trial {}: simplex {} vs oracle {}",
                trial,
                sol.objective,
                oracle
            );
            // weak-duality style audit: objective recomputed from x matches
            let recomputed: f64 =
                sol.x.iter().zip(&objective).map(|(x, c)| x * c).sum();
            assert!((recomputed - sol.objective).abs() <= 1e-10 * (1.0 + sol.objective.abs()));
        }
    }

    #[test]
    fn bland_rule_and_iteration_limit() {
        let lp = lp_from_parts(
            vec![-1.0, -1.0],
            vec![],
            vec![(vec![(0, 1.0), (1, 1.0)], 1.0)],
        );
        let cfg = SolverConfig { pivot_rule: PivotRule::Bland, ..SolverConfig::default() };
        let sol = solve(&lp, &cfg);
        assert_eq!(sol.status, Status::Optimal);
        assert!((sol.objective + 1.0).abs() < 1e-12);

        let cfg = SolverConfig { max_iterations: 0, ..SolverConfig::default() };
        let sol = solve(&lp, &cfg);
        assert_eq!(sol.status, Status::IterationLimit);
    }

    #[test]
    fn exact_mode_returns_rational_vertex() {
        // min -x0 - x1 s.t. 3 x0 + x1 = 1, x0 + 3 x1 <= 1
        let lp = lp_from_parts(
            vec![-1.0, -1.0],
            vec![(vec![(0, 3.0), (1, 1.0)], 1.0)],
            vec![(vec![(0, 1.0), (1, 3.0)], 1.0)],
        );
        let sol = solve(&lp, &SolverConfig::exact());
        assert_eq!(sol.status, Status::Optimal);
        let exact = sol.exact.as_ref().unwrap();
        // vertex at the intersection: x = (1/4, 1/4)
        let quarter = BigRational::new(1.into(), 4.into());
        assert_eq!(exact.x[0], quarter);
        assert_eq!(exact.x[1], quarter);
        // zero residual
        let r = &exact.x[0] * rat(3.0) + &exact.x[1];
        assert_eq!(r, rat(1.0));
        // basis columns are linearly independent over the rationals
        assert_eq!(exact.basis.len(), 2);
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for &b in &exact.basis {
            let col = match b {
                0 => vec![rat(3.0), rat(1.0)],
                1 => vec![rat(1.0), rat(3.0)],
                2 => vec![Zero::zero(), num_traits::One::one()], // slack
                _ => vec![Zero::zero(), Zero::zero()],
            };
            cols.push(col);
        }
        let det = &cols[0][0] * &cols[1][1] - &cols[0][1] * &cols[1][0];
        assert!(!det.is_zero());
    }

    #[test]
    fn permutation_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 5usize;
        let x0: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
        let row: Vec<(usize, f64)> = (0..n).map(|c| (c, rng.random_range(0.5..2.0))).collect();
        let b: f64 = row.iter().map(|&(c, v)| v * x0[c]).sum();
        let objective: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
        let lp = lp_from_parts(objective.clone(), vec![(row.clone(), b)], vec![]);
        let sol = solve(&lp, &SolverConfig::exact());

        // reversal permutation
        let perm: Vec<usize> = (0..n).rev().collect();
        let row_p: Vec<(usize, f64)> = row.iter().map(|&(c, v)| (perm[c], v)).collect();
        let mut obj_p = vec![0.0; n];
        for c in 0..n {
            obj_p[perm[c]] = objective[c];
        }
        let lp_p = lp_from_parts(obj_p, vec![(row_p, b)], vec![]);
        let sol_p = solve(&lp_p, &SolverConfig::exact());

        assert_eq!(sol.exact.as_ref().unwrap().objective, sol_p.exact.as_ref().unwrap().objective);
        let xp = &sol_p.exact.as_ref().unwrap().x;
        for c in 0..n {
            assert_eq!(sol.exact.as_ref().unwrap().x[c], xp[perm[c]]);
        }
    }

    #[test]
    fn integrality_judgement() {
        assert!(is_integral(&[1.0, 0.0, 0.0, 0.0], 3, 1e-6));
        assert!(is_integral(&[1.0 - 1e-8, 0.0], 3, 1e-6));
        assert!(!is_integral(&[0.5, 0.5], 3, 1e-6)); // fractional entries
        assert!(!is_integral(&[1.0, 1.0], 3, 1e-6)); // block sum 2
        assert!(is_integral(&[], 3, 1e-6));
    }
}
