//! Two-phase tableau simplex over exact rationals.

use std::collections::HashMap;

use rayon::prelude::*;

use super::basis::{independent_columns, sparse_solve, SparseVec};
use super::float::guess_basis;
use super::{verify_certificate, LpOutcome, LpProblem, Sense, VarKind};
use crate::exact::Scalar;

/// Work above which the row updates of a pivot are spread over threads.
const PARALLEL_WORK: usize = 20_000;
/// Floating-point restarts before the exact tableau takes over.
const FLOAT_ROUNDS: usize = 4;
/// Consecutive degenerate pivots after which Bland's rule takes over.
const DEGENERATE_LIMIT: usize = 50;

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

#[derive(Clone)]
struct Tableau {
    /// `m` rows of `ncols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Scalar>>,
    /// Reduced costs `c_Bᵀ B⁻¹ A_j − c_j` followed by the objective value.
    obj: Vec<Scalar>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, s: usize) {
        let inv = self.rows[r][s].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row: Vec<(usize, Scalar)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        let eliminate = |row: &mut Vec<Scalar>| {
            let f = row[s].clone();
            if f.is_zero() {
                return;
            }
            for (j, v) in &pivot_row {
                let delta = &f * v;
                row[*j] -= delta;
            }
        };
        let work = self.rows.len() * pivot_row.len();
        if work >= PARALLEL_WORK {
            self.rows
                .par_iter_mut()
                .enumerate()
                .filter(|(i, _)| *i != r)
                .for_each(|(_, row)| eliminate(row));
        } else {
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r {
                    eliminate(row);
                }
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = s;
    }

    fn set_costs(&mut self, costs: &[Scalar]) {
        let n = self.ncols;
        let mut obj: Vec<Scalar> = costs.iter().map(|c| -c).collect();
        obj.push(Scalar::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=n {
                if !row[j].is_zero() {
                    obj[j] += cb * &row[j];
                }
            }
        }
        self.obj = obj;
    }

    /// Bland's rule: lowest-index improving column.
    fn entering_bland(&self, allow: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.ncols).find(|&j| allow(j) && self.obj[j].is_negative())
    }

    /// Dantzig's rule: most negative reduced cost, lowest index on ties.
    fn entering_dantzig(&self, allow: impl Fn(usize) -> bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in 0..self.ncols {
            if allow(j) && self.obj[j].is_negative() {
                match best {
                    Some(b) if self.obj[j] >= self.obj[b] => {}
                    _ => best = Some(j),
                }
            }
        }
        best
    }

    /// Ratio test; ties broken by the lowest basic variable index.
    fn leaving(&self, s: usize) -> Option<usize> {
        let n = self.ncols;
        let mut best: Option<(usize, Scalar)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[s].is_positive() {
                continue;
            }
            let ratio = &row[n] / &row[s];
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    /// Runs simplex iterations; returns the unbounded column if any.
    ///
    /// Dantzig pricing is used while the objective improves; a run of
    /// degenerate pivots switches to Bland's rule until the objective moves
    /// again, which rules out cycling.
    fn optimize(&mut self, allow: impl Fn(usize) -> bool + Copy) -> Option<usize> {
        let mut degenerate = 0;
        loop {
            let s = if degenerate >= DEGENERATE_LIMIT {
                self.entering_bland(allow)
            } else {
                self.entering_dantzig(allow)
            };
            let s = s?;
            let Some(r) = self.leaving(s) else {
                return Some(s);
            };
            if self.rows[r][self.ncols].is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, s);
        }
    }

    /// Pivots the columns of `target` into the basis. `false` when the
    /// resulting basic solution is not primal feasible.
    fn install(&mut self, target: &[usize]) -> bool {
        let n = self.ncols;
        let mut wanted = vec![false; n];
        for &j in target {
            wanted[j] = true;
        }
        let mut basic = vec![false; n];
        for &b in &self.basis {
            basic[b] = true;
        }
        for &s in target {
            if basic[s] {
                continue;
            }
            let r = (0..self.rows.len())
                .find(|&i| !wanted[self.basis[i]] && !self.rows[i][s].is_zero());
            if let Some(r) = r {
                basic[self.basis[r]] = false;
                basic[s] = true;
                self.pivot(r, s);
            }
        }
        self.rows.iter().all(|row| !row[n].is_negative())
    }

    fn basic_solution(&self) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.ncols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[self.ncols].clone();
        }
        x
    }
}

struct BasisContext<'a> {
    init: &'a Tableau,
    artificial: &'a [bool],
    unit_col: &'a [usize],
    sign: &'a [Scalar],
    costs: &'a [Scalar],
}

impl BasisContext<'_> {
    fn column(&self, j: usize) -> SparseVec {
        let n = self.init.ncols;
        self.init
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[j].is_zero())
            .map(|(i, r)| {
                debug_assert!(j < n);
                (i, r[j].clone())
            })
            .collect()
    }

    /// Independent part of `target`, completed to a basis by unit columns.
    fn repair(&self, target: &[usize]) -> Vec<usize> {
        let cols: Vec<SparseVec> = target.iter().map(|&j| self.column(j)).collect();
        let kept = independent_columns(&cols);
        let mut covered = vec![false; self.init.rows.len()];
        let mut basis = Vec::with_capacity(covered.len());
        for (k, r) in kept {
            covered[r] = true;
            basis.push(target[k]);
        }
        for (i, c) in covered.iter().enumerate() {
            if !c {
                basis.push(self.unit_col[i]);
            }
        }
        basis
    }

    /// Outcome read off the basis `basis` of the initial tableau, `None` when
    /// the basis is singular, primal infeasible or gives no conclusion.
    fn evaluate(
        &self,
        basis: &[usize],
        p: &LpProblem,
        to_original: &dyn Fn(&[Scalar]) -> Vec<Scalar>,
    ) -> Option<LpOutcome> {
        let t = self.init;
        let (m, n) = (t.rows.len(), t.ncols);
        let mut cols: Vec<SparseVec> = vec![Vec::new(); n];
        for (i, row) in t.rows.iter().enumerate() {
            for (j, v) in row[..n].iter().enumerate() {
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        let mut basic = vec![false; n];
        let mut brows: Vec<SparseVec> = vec![Vec::new(); m];
        for (k, &b) in basis.iter().enumerate() {
            basic[b] = true;
            for (i, v) in &cols[b] {
                brows[*i].push((k, v.clone()));
            }
        }
        let rhs: Vec<Scalar> = t.rows.iter().map(|r| r[n].clone()).collect();
        let xb = sparse_solve(&brows, &rhs)?;
        if xb.iter().any(Scalar::is_negative) {
            return None;
        }
        let mut x = vec![Scalar::zero(); n];
        for (k, &b) in basis.iter().enumerate() {
            x[b] = xb[k].clone();
        }
        let dual = |costs: &[Scalar]| {
            let rows: Vec<SparseVec> = basis.iter().map(|&b| cols[b].clone()).collect();
            let rhs: Vec<Scalar> = basis.iter().map(|&b| costs[b].clone()).collect();
            sparse_solve(&rows, &rhs)
        };
        let signed = |y: &[Scalar]| -> Vec<Scalar> { (0..m).map(|i| &self.sign[i] * &y[i]).collect() };

        if basis.iter().any(|&b| self.artificial[b] && !x[b].is_zero()) {
            let phase1: Vec<Scalar> = self
                .artificial
                .iter()
                .map(|&a| if a { -Scalar::one() } else { Scalar::zero() })
                .collect();
            let y = dual(&phase1)?;
            return Some(LpOutcome::Infeasible { farkas: signed(&y) });
        }
        let y = dual(self.costs)?;
        let reduced = |j: usize| -> Scalar {
            cols[j].iter().map(|(i, v)| v * &y[*i]).sum::<Scalar>() - &self.costs[j]
        };
        let point = to_original(&x);
        let mut improving = (0..n).filter(|&j| !self.artificial[j] && !basic[j] && reduced(j).is_negative());
        let Some(first) = improving.next() else {
            let value = p.objective_value(&point);
            return Some(LpOutcome::Optimal {
                point,
                value,
                duals: signed(&y),
            });
        };
        for s in std::iter::once(first).chain(improving).take(4) {
            let mut col = vec![Scalar::zero(); m];
            for (i, v) in &cols[s] {
                col[*i] = v.clone();
            }
            let u = sparse_solve(&brows, &col)?;
            if u.iter().any(Scalar::is_positive) {
                continue;
            }
            let mut d = vec![Scalar::zero(); n];
            d[s] = Scalar::one();
            for (k, &b) in basis.iter().enumerate() {
                d[b] = -&u[k];
            }
            return Some(LpOutcome::Unbounded {
                point,
                ray: to_original(&d),
            });
        }
        None
    }
}

/// Column of the standardized problem, named so that the name survives
/// appending variables and rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum ColumnId {
    Plus(usize),
    Minus(usize),
    Slack(usize),
    Artificial(usize),
}

/// Final basis of a solve, usable as the starting guess for a related
/// problem (same rows with another objective, or more rows and variables).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BasisHint(Vec<ColumnId>);

/// Solves `p` exactly. Deterministic for a given input.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    solve_lp_hinted(p, None).0
}

/// [`solve_lp`] starting from a guessed basis. Status and optimal value do
/// not depend on the guess; the optimal point may.
pub fn solve_lp_hinted(p: &LpProblem, hint: Option<&BasisHint>) -> (LpOutcome, BasisHint) {
    let (outcome, basis) = solve_inner(p, hint, FLOAT_ROUNDS);
    debug_assert!(
        verify_certificate(p, &outcome),
        "simplex produced an invalid certificate"
    );
    (outcome, basis)
}

fn solve_inner(p: &LpProblem, hint: Option<&BasisHint>, float_rounds: usize) -> (LpOutcome, BasisHint) {
    let nvars = p.num_vars();
    let m = p.rows.len();

    // column layout: structural (free variables split), slacks, artificials
    let mut kinds = Vec::new();
    let mut ids = Vec::new();
    let mut plus_col = Vec::with_capacity(nvars);
    let mut minus_col = Vec::with_capacity(nvars);
    for (v, k) in p.kinds.iter().enumerate() {
        plus_col.push(kinds.len());
        kinds.push(ColKind::Structural);
        ids.push(ColumnId::Plus(v));
        if *k == VarKind::Free {
            minus_col.push(Some(kinds.len()));
            kinds.push(ColKind::Structural);
            ids.push(ColumnId::Minus(v));
        } else {
            minus_col.push(None);
        }
    }
    let mut slack_col = vec![None; m];
    for (i, r) in p.rows.iter().enumerate() {
        if r.sense == Sense::Le {
            slack_col[i] = Some(kinds.len());
            kinds.push(ColKind::Slack);
            ids.push(ColumnId::Slack(i));
        }
    }
    let sign: Vec<Scalar> = p
        .rows
        .iter()
        .map(|r| if r.rhs.is_negative() { -Scalar::one() } else { Scalar::one() })
        .collect();
    let mut unit_col = vec![0; m];
    for i in 0..m {
        match slack_col[i] {
            Some(c) if sign[i].is_positive() => unit_col[i] = c,
            _ => {
                unit_col[i] = kinds.len();
                kinds.push(ColKind::Artificial);
                ids.push(ColumnId::Artificial(i));
            }
        }
    }
    let ncols = kinds.len();

    let mut rows = Vec::with_capacity(m);
    for (i, r) in p.rows.iter().enumerate() {
        let mut row = vec![Scalar::zero(); ncols + 1];
        for (j, a) in &r.coeffs {
            let a = a * &sign[i];
            if let Some(mc) = minus_col[*j] {
                row[mc] = -&a;
            }
            row[plus_col[*j]] = a;
        }
        if let Some(c) = slack_col[i] {
            row[c] = sign[i].clone();
        }
        row[unit_col[i]] = Scalar::one();
        row[ncols] = &r.rhs * &sign[i];
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        obj: vec![Scalar::zero(); ncols + 1],
        basis: unit_col.clone(),
        kinds,
        ncols,
    };

    let mut phase2 = vec![Scalar::zero(); ncols];
    for (k, c) in p.objective.iter().enumerate() {
        phase2[plus_col[k]] = c.clone();
        if let Some(mc) = minus_col[k] {
            phase2[mc] = -c;
        }
    }

    let to_original = |x: &[Scalar]| -> Vec<Scalar> {
        (0..nvars)
            .map(|k| match minus_col[k] {
                Some(mc) => &x[plus_col[k]] - &x[mc],
                None => x[plus_col[k]].clone(),
            })
            .collect()
    };

    // Candidate bases come from the hint and from floating-point runs. The
    // exact evaluation of a candidate is returned when its certificate
    // checks out; the last candidate warm-starts the exact tableau otherwise.
    let artificial: Vec<bool> = t.kinds.iter().map(|k| *k == ColKind::Artificial).collect();
    let to_hint = |basis: &[usize]| BasisHint(basis.iter().map(|&j| ids[j]).collect());
    let ctx = BasisContext {
        init: &t,
        artificial: &artificial,
        unit_col: &unit_col,
        sign: &sign,
        costs: &phase2,
    };
    let mut warm: Option<Vec<usize>> = None;
    if let Some(h) = hint {
        let index: HashMap<ColumnId, usize> = ids.iter().enumerate().map(|(j, id)| (*id, j)).collect();
        let cols: Vec<usize> = h.0.iter().filter_map(|id| index.get(id).copied()).collect();
        let basis = ctx.repair(&cols);
        if let Some(o) = ctx.evaluate(&basis, p, &to_original) {
            if verify_certificate(p, &o) {
                return (o, to_hint(&basis));
            }
        }
        warm = Some(basis);
    }
    // perturbed runs alternate with exact-rhs runs from the repaired basis;
    // the third round starts over from the slack basis
    for round in 0..float_rounds {
        if round == 2 {
            warm = None;
        }
        let perturb = round % 2 == 0;
        let Some(target) =
            guess_basis(&t.rows, &t.basis, &artificial, &phase2, warm.as_deref(), perturb)
        else {
            continue;
        };
        let basis = ctx.repair(&target);
        if let Some(o) = ctx.evaluate(&basis, p, &to_original) {
            if verify_certificate(p, &o) {
                return (o, to_hint(&basis));
            }
        }
        warm = Some(basis);
    }
    if let Some(w) = warm {
        let mut hot = t.clone();
        if hot.install(&w) {
            t = hot;
        }
    }

    let infeasible_basis = t
        .rows
        .iter()
        .zip(&t.basis)
        .any(|(row, &b)| artificial[b] && !row[ncols].is_zero());
    if infeasible_basis {
        let phase1: Vec<Scalar> = t
            .kinds
            .iter()
            .map(|k| {
                if *k == ColKind::Artificial {
                    -Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        t.set_costs(&phase1);
        let unbounded = t.optimize(|_| true);
        debug_assert!(unbounded.is_none(), "phase one is bounded");
        if t.obj[ncols].is_negative() {
            // y_i = r_u + c_u for the initial unit column u of row i
            let farkas = (0..m)
                .map(|i| {
                    let u = unit_col[i];
                    &sign[i] * &(&t.obj[u] + &phase1[u])
                })
                .collect();
            return (LpOutcome::Infeasible { farkas }, to_hint(&t.basis));
        }
    }
    // drive artificial variables out of the basis where possible
    for i in 0..m {
        if !artificial[t.basis[i]] {
            continue;
        }
        if let Some(s) = (0..ncols).find(|&j| !artificial[j] && !t.rows[i][j].is_zero()) {
            t.pivot(i, s);
        }
    }

    t.set_costs(&phase2);
    let kinds = t.kinds.clone();
    let unbounded = t.optimize(|j| kinds[j] != ColKind::Artificial);

    let x = t.basic_solution();
    let point = to_original(&x);

    if let Some(s) = unbounded {
        let mut d = vec![Scalar::zero(); ncols];
        d[s] = Scalar::one();
        for (row, &b) in t.rows.iter().zip(&t.basis) {
            if !row[s].is_zero() {
                d[b] = -&row[s];
            }
        }
        return (
            LpOutcome::Unbounded {
                point,
                ray: to_original(&d),
            },
            to_hint(&t.basis),
        );
    }

    let duals = (0..m)
        .map(|i| &sign[i] * &(&t.obj[unit_col[i]] + &phase2[unit_col[i]]))
        .collect();
    let value = p.objective_value(&point);
    (
        LpOutcome::Optimal {
            point,
            value,
            duals,
        },
        to_hint(&t.basis),
    )
}
