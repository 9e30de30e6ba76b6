//! Floating-point tableau simplex used only to guess a final basis for the
//! exact solver. Nothing it returns is trusted without exact re-checking.

use crate::exact::Scalar;

const EPS: f64 = 1e-9;
/// Smallest pivot element accepted by the ratio test.
const PIVOT_TOL: f64 = 1e-7;
/// Feasibility slack of the Harris ratio test.
const HARRIS: f64 = 1e-9;
const DEGENERATE_LIMIT: usize = 50;
const PERTURBATION: f64 = 1e-6;

struct FloatTableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    obj: Vec<f64>,
    value: f64,
    basis: Vec<usize>,
    budget: usize,
}

impl FloatTableau {
    fn ncols(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let inv = 1.0 / self.rows[r][s];
        for v in self.rows[r].iter_mut() {
            *v *= inv;
        }
        self.rhs[r] *= inv;
        self.rows[r][s] = 1.0;
        let pivot_row: Vec<(usize, f64)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(j, v)| (j, *v))
            .collect();
        let br = self.rhs[r];
        let eliminate = |row: &mut [f64], rhs: &mut f64| {
            let f = row[s];
            if f == 0.0 {
                return;
            }
            for &(j, v) in &pivot_row {
                let x = row[j] - f * v;
                row[j] = if x.abs() < 1e-13 { 0.0 } else { x };
            }
            row[s] = 0.0;
            *rhs -= f * br;
        };
        for (i, (row, rhs)) in self.rows.iter_mut().zip(self.rhs.iter_mut()).enumerate() {
            if i != r {
                eliminate(row, rhs);
            }
        }
        eliminate(&mut self.obj, &mut self.value);
        self.basis[r] = s;
    }

    fn set_costs(&mut self, costs: &[f64]) {
        let mut obj: Vec<f64> = costs.iter().map(|c| -c).collect();
        let mut value = 0.0;
        for ((row, rhs), &b) in self.rows.iter().zip(&self.rhs).zip(&self.basis) {
            let cb = costs[b];
            if cb == 0.0 {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o += cb * v;
            }
            value += cb * rhs;
        }
        self.obj = obj;
        self.value = value;
    }

    /// `Err` once the pivot budget is spent.
    fn optimize(&mut self, allow: impl Fn(usize) -> bool) -> Result<(), ()> {
        let n = self.ncols();
        let mut degenerate = 0;
        loop {
            if self.budget == 0 {
                return Err(());
            }
            self.budget -= 1;
            let s = if degenerate >= DEGENERATE_LIMIT {
                (0..n).find(|&j| allow(j) && self.obj[j] < -EPS)
            } else {
                (0..n)
                    .filter(|&j| allow(j) && self.obj[j] < -EPS)
                    .min_by(|&a, &b| self.obj[a].total_cmp(&self.obj[b]))
            };
            let Some(s) = s else {
                return Ok(());
            };
            let row = if degenerate >= DEGENERATE_LIMIT {
                self.leaving_bland(s)
            } else {
                self.leaving_harris(s)
            };
            // unbounded: the current basis is as good a guess as any
            let Some(r) = row else {
                return Ok(());
            };
            if self.rhs[r].max(0.0) / self.rows[r][s] <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, s);
        }
    }

    /// Harris: bound the step with a small infeasibility allowance, then take
    /// the largest pivot element within that bound.
    fn leaving_harris(&self, s: usize) -> Option<usize> {
        let mut bound = f64::INFINITY;
        for (row, rhs) in self.rows.iter().zip(&self.rhs) {
            let a = row[s];
            if a > PIVOT_TOL {
                bound = bound.min((rhs.max(0.0) + HARRIS) / a);
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, (row, rhs)) in self.rows.iter().zip(&self.rhs).enumerate() {
            let a = row[s];
            if a > PIVOT_TOL && rhs.max(0.0) / a <= bound && best.is_none_or(|(_, ba)| a > ba) {
                best = Some((i, a));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Minimum ratio, ties to the lowest basic column.
    fn leaving_bland(&self, s: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, (row, rhs)) in self.rows.iter().zip(&self.rhs).enumerate() {
            let a = row[s];
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = rhs.max(0.0) / a;
            best = match best {
                Some((bi, br))
                    if br < ratio - 1e-12
                        || (ratio <= br + 1e-12 && self.basis[bi] < self.basis[i]) =>
                {
                    Some((bi, br))
                }
                _ => Some((i, ratio)),
            };
        }
        best.map(|(i, _)| i)
    }

    /// Replaces `b` by `b + Aδ` for a small fixed `δ ≥ 0` on the
    /// non-artificial columns: still consistent, far less degenerate. On a
    /// tableau `B⁻¹A` the same formula perturbs `B⁻¹b`.
    fn perturb(&mut self, artificial: &[bool]) {
        for (row, rhs) in self.rows.iter().zip(self.rhs.iter_mut()) {
            for (j, a) in row.iter().enumerate() {
                if *a != 0.0 && !artificial[j] {
                    let u = (j as u64).wrapping_mul(2_654_435_761) % 1021;
                    *rhs += a * PERTURBATION * (1.0 + u as f64 / 1021.0);
                }
            }
        }
    }

    /// Pivots the columns of `target` in, largest available pivot first.
    fn install(&mut self, target: &[usize]) {
        let n = self.ncols();
        let mut wanted = vec![false; n];
        for &j in target {
            wanted[j] = true;
        }
        for &s in target {
            if self.basis.contains(&s) {
                continue;
            }
            let r = (0..self.rows.len())
                .filter(|&i| !wanted[self.basis[i]] && self.rows[i][s].abs() > PIVOT_TOL)
                .max_by(|&a, &b| self.rows[a][s].abs().total_cmp(&self.rows[b][s].abs()));
            if let Some(r) = r {
                self.pivot(r, s);
            }
        }
    }

    /// Gives every row with a negative right-hand side a fresh artificial
    /// column of its own.
    fn cover_infeasible_rows(&mut self, artificial: &mut Vec<bool>) {
        for i in 0..self.rows.len() {
            if self.rhs[i] >= -EPS {
                continue;
            }
            for v in self.rows[i].iter_mut() {
                *v = -*v;
            }
            self.rhs[i] = -self.rhs[i];
            for (k, row) in self.rows.iter_mut().enumerate() {
                row.push(if k == i { 1.0 } else { 0.0 });
            }
            self.obj.push(0.0);
            self.basis[i] = artificial.len();
            artificial.push(true);
        }
    }
}

/// Final basis of a floating-point two-phase run on the standardized
/// tableau (last entry of each row is the right-hand side), started from
/// `warm` when given and optionally on a perturbed right-hand side. Columns added along the way are left out, so the
/// result can be short of a full basis. `None` when the run gives up.
pub(super) fn guess_basis(
    rows: &[Vec<Scalar>],
    basis: &[usize],
    artificial: &[bool],
    costs: &[Scalar],
    warm: Option<&[usize]>,
    perturb: bool,
) -> Option<Vec<usize>> {
    let ncols = artificial.len();
    let m = rows.len();
    let mut t = FloatTableau {
        rows: rows
            .iter()
            .map(|r| r[..ncols].iter().map(Scalar::to_f64).collect())
            .collect(),
        rhs: rows.iter().map(|r| r[ncols].to_f64()).collect(),
        obj: vec![0.0; ncols],
        value: 0.0,
        basis: basis.to_vec(),
        budget: 20 * (m + ncols) + 1000,
    };
    let mut art = artificial.to_vec();
    if let Some(w) = warm {
        t.install(w);
    }
    if perturb {
        t.perturb(artificial);
    }
    t.cover_infeasible_rows(&mut art);
    if t.basis.iter().any(|&b| art[b]) {
        let phase1: Vec<f64> = art.iter().map(|&a| if a { -1.0 } else { 0.0 }).collect();
        t.set_costs(&phase1);
        t.optimize(|_| true).ok()?;
        if t.value < -1e-7 {
            return Some(t.basis.into_iter().filter(|&b| b < ncols).collect());
        }
        for i in 0..m {
            if !art[t.basis[i]] {
                continue;
            }
            let s = (0..t.ncols())
                .filter(|&j| !art[j] && t.rows[i][j].abs() > PIVOT_TOL)
                .max_by(|&a, &b| t.rows[i][a].abs().total_cmp(&t.rows[i][b].abs()));
            if let Some(s) = s {
                t.pivot(i, s);
            }
        }
    }
    let mut c: Vec<f64> = costs.iter().map(Scalar::to_f64).collect();
    c.resize(t.ncols(), 0.0);
    t.set_costs(&c);
    t.optimize(|j| !art[j]).ok()?;
    Some(t.basis.into_iter().filter(|&b| b < ncols).collect())
}
