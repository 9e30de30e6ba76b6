//! Exact linear programming.
//!
//! Problems are always stated as maximization of `cᵀz` subject to rows
//! `mᵢᵀz ≤ dᵢ` or `mᵢᵀz = dᵢ` and per-variable sign restrictions. Every
//! outcome carries a certificate that [`verify_certificate`] can check
//! independently of the solver.

mod basis;
mod float;
mod simplex;

use std::fmt;

use crate::exact::{Matrix, Scalar};

pub use simplex::{solve_lp, solve_lp_hinted, BasisHint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Free,
    NonNeg,
}

/// One sparse constraint row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Scalar)>,
    pub sense: Sense,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        self.coeffs.iter().map(|(j, a)| a * &z[*j]).sum()
    }
}

/// `max cᵀz` subject to sparse rows and variable kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Scalar>,
    pub rows: Vec<Constraint>,
    pub kinds: Vec<VarKind>,
}

impl LpProblem {
    /// Builds a problem from a dense constraint matrix.
    pub fn from_dense(
        objective: Vec<Scalar>,
        matrix: &Matrix,
        rhs: Vec<Scalar>,
        senses: Vec<Sense>,
        kinds: Vec<VarKind>,
    ) -> Self {
        assert_eq!(matrix.cols(), objective.len());
        assert_eq!(matrix.cols(), kinds.len());
        assert_eq!(matrix.rows(), rhs.len());
        assert_eq!(matrix.rows(), senses.len());
        let rows = matrix
            .row_iter()
            .zip(rhs)
            .zip(senses)
            .map(|((r, rhs), sense)| Constraint {
                coeffs: r
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect(),
                sense,
                rhs,
            })
            .collect();
        LpProblem {
            objective,
            rows,
            kinds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    pub fn objective_value(&self, z: &[Scalar]) -> Scalar {
        crate::exact::dot(&self.objective, z)
    }

    pub fn is_feasible_point(&self, z: &[Scalar]) -> bool {
        z.len() == self.num_vars()
            && self
                .kinds
                .iter()
                .zip(z)
                .all(|(k, v)| *k == VarKind::Free || !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs = r.eval(z);
                match r.sense {
                    Sense::Le => lhs <= r.rhs,
                    Sense::Eq => lhs == r.rhs,
                }
            })
    }

    /// `Mᵀu` as a dense vector over the variables.
    fn transpose_mul(&self, u: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.num_vars()];
        for (row, ui) in self.rows.iter().zip(u) {
            if ui.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                out[*j] += a * ui;
            }
        }
        out
    }

    fn multipliers_signed(&self, u: &[Scalar]) -> bool {
        u.len() == self.rows.len()
            && self
                .rows
                .iter()
                .zip(u)
                .all(|(r, ui)| r.sense == Sense::Eq || !ui.is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal primal point, its value and optimal dual multipliers (one per row).
    Optimal {
        point: Vec<Scalar>,
        value: Scalar,
        duals: Vec<Scalar>,
    },
    /// A feasible point and a feasible direction along which the objective grows.
    Unbounded {
        point: Vec<Scalar>,
        ray: Vec<Scalar>,
    },
    /// Farkas multipliers proving that no feasible point exists.
    Infeasible { farkas: Vec<Scalar> },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
            LpOutcome::Infeasible { .. } => LpStatus::Infeasible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Unbounded => "unbounded",
            LpStatus::Infeasible => "infeasible",
        };
        f.write_str(s)
    }
}

/// Checks the certificate carried by `outcome` against `p`.
///
/// * optimal: primal feasibility, dual feasibility of the multipliers and
///   equal primal and dual objective values;
/// * unbounded: feasible point, direction in the recession cone, `cᵀray > 0`;
/// * infeasible: multipliers nonnegative on `≤` rows, `uᵀM` zero on free and
///   nonnegative on sign-restricted columns, `uᵀd < 0`.
pub fn verify_certificate(p: &LpProblem, outcome: &LpOutcome) -> bool {
    match outcome {
        LpOutcome::Optimal {
            point,
            value,
            duals,
        } => {
            if !p.is_feasible_point(point) || p.objective_value(point) != *value {
                return false;
            }
            if !p.multipliers_signed(duals) {
                return false;
            }
            let mtu = p.transpose_mul(duals);
            let dual_ok = p.kinds.iter().zip(&mtu).zip(&p.objective).all(|((k, a), c)| {
                match k {
                    VarKind::Free => a == c,
                    VarKind::NonNeg => a >= c,
                }
            });
            let dual_value: Scalar = p.rows.iter().zip(duals).map(|(r, u)| &r.rhs * u).sum();
            dual_ok && dual_value == *value
        }
        LpOutcome::Unbounded { point, ray } => {
            if !p.is_feasible_point(point) || ray.len() != p.num_vars() {
                return false;
            }
            let sign_ok = p
                .kinds
                .iter()
                .zip(ray)
                .all(|(k, v)| *k == VarKind::Free || !v.is_negative());
            let rows_ok = p.rows.iter().all(|r| {
                let lhs = r.eval(ray);
                match r.sense {
                    Sense::Le => !lhs.is_positive(),
                    Sense::Eq => lhs.is_zero(),
                }
            });
            sign_ok && rows_ok && p.objective_value(ray).is_positive()
        }
        LpOutcome::Infeasible { farkas } => {
            if !p.multipliers_signed(farkas) {
                return false;
            }
            let mtu = p.transpose_mul(farkas);
            let cols_ok = p.kinds.iter().zip(&mtu).all(|(k, a)| match k {
                VarKind::Free => a.is_zero(),
                VarKind::NonNeg => !a.is_negative(),
            });
            let rhs: Scalar = p.rows.iter().zip(farkas).map(|(r, u)| &r.rhs * u).sum();
            cols_ok && rhs.is_negative()
        }
    }
}

/// Affine expression `Σ coef·var + constant` over LP variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: Vec<(usize, Scalar)>,
    pub constant: Scalar,
}

impl LinExpr {
    pub fn var(v: usize) -> Self {
        LinExpr {
            terms: vec![(v, Scalar::one())],
            constant: Scalar::zero(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        LinExpr {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn add_term(&mut self, v: usize, coef: Scalar) {
        if !coef.is_zero() {
            self.terms.push((v, coef));
        }
    }

    pub fn eval(&self, z: &[Scalar]) -> Scalar {
        &self.constant + self.terms.iter().map(|(j, a)| a * &z[*j]).sum::<Scalar>()
    }
}

/// Incremental construction of [`LpProblem`]s.
#[derive(Debug, Clone, Default)]
pub struct LpBuilder {
    kinds: Vec<VarKind>,
    rows: Vec<Constraint>,
    objective: Vec<(usize, Scalar)>,
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, kind: VarKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    pub fn add_vars(&mut self, count: usize, kind: VarKind) -> Vec<usize> {
        (0..count).map(|_| self.add_var(kind)).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.kinds.len()
    }

    /// Adds `Σ terms + (expression constants) sense rhs`; the constant of
    /// `expr` is moved to the right-hand side and duplicate variables merged.
    pub fn add_constraint(&mut self, expr: &LinExpr, sense: Sense, rhs: Scalar) {
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(expr.terms.len());
        let mut terms = expr.terms.clone();
        terms.sort_by_key(|(j, _)| *j);
        for (j, a) in terms {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.rows.push(Constraint {
            coeffs: merged,
            sense,
            rhs: rhs - &expr.constant,
        });
    }

    /// Sets the objective to maximize `expr` (its constant is ignored).
    pub fn maximize(&mut self, expr: &LinExpr) {
        self.objective = expr.terms.clone();
    }

    pub fn build(&self) -> LpProblem {
        let mut objective = vec![Scalar::zero(); self.kinds.len()];
        for (j, a) in &self.objective {
            objective[*j] += a;
        }
        LpProblem {
            objective,
            rows: self.rows.clone(),
            kinds: self.kinds.clone(),
        }
    }
}
