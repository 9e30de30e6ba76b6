//! V-representations of sets that are only accessible through linear
//! optimization, such as projections and slices of a [`Polyhedron`].
//!
//! The hull is grown from an inner approximation: first the affine hull is
//! discovered direction by direction, then every facet of the current inner
//! set is tested with one LP. A facet either survives (the LP optimum lies on
//! it) or the LP returns a new point or direction outside it.

use std::collections::HashSet;

use super::ops::{h_to_v, v_to_h, ConvexSet};
use super::{membership_builder, VRep};
use crate::exact::{dot, nullspace, sub_vec, Matrix, Scalar};
use crate::lp::{solve_lp, LinExpr, LpBuilder, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// A maximizer of the objective.
    Attained(Vec<Scalar>),
    /// A recession direction with positive objective value.
    Unbounded(Vec<Scalar>),
    Empty,
}

pub trait SupportOracle {
    fn dim(&self) -> usize;
    fn maximize(&mut self, w: &[Scalar]) -> Support;
}

/// Image of an LP feasible region under affine expressions.
#[derive(Debug, Clone)]
pub struct LpOracle {
    builder: LpBuilder,
    target: Vec<LinExpr>,
    pub solves: usize,
}

impl LpOracle {
    pub fn new(builder: LpBuilder, target: Vec<LinExpr>) -> Self {
        LpOracle {
            builder,
            target,
            solves: 0,
        }
    }

    pub fn for_set(set: &impl ConvexSet) -> Self {
        let (b, z) = membership_builder(set);
        LpOracle::new(b, z)
    }
}

impl SupportOracle for LpOracle {
    fn dim(&self) -> usize {
        self.target.len()
    }

    fn maximize(&mut self, w: &[Scalar]) -> Support {
        let mut obj = LinExpr::default();
        for (wk, t) in w.iter().zip(&self.target) {
            if wk.is_zero() {
                continue;
            }
            for (v, c) in &t.terms {
                obj.add_term(*v, wk * c);
            }
        }
        let mut b = self.builder.clone();
        b.maximize(&obj);
        self.solves += 1;
        match solve_lp(&b.build()) {
            LpOutcome::Optimal { point, .. } => {
                Support::Attained(self.target.iter().map(|t| t.eval(&point)).collect())
            }
            LpOutcome::Unbounded { ray, .. } => Support::Unbounded(
                self.target
                    .iter()
                    .map(|t| t.terms.iter().map(|(j, c)| c * &ray[*j]).sum())
                    .collect(),
            ),
            LpOutcome::Infeasible { .. } => Support::Empty,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HullStats {
    pub oracle_calls: usize,
    pub facets: usize,
}

/// Computes the set behind `oracle` exactly. Returns an empty `VRep` when the
/// oracle reports an empty set. The result has minimal generators (vertices,
/// or minimal-face points when lines are present), each kind sorted.
pub fn oracle_hull(oracle: &mut impl SupportOracle) -> (VRep, HullStats) {
    let d = oracle.dim();
    let mut stats = HullStats::default();
    let zero = vec![Scalar::zero(); d];
    stats.oracle_calls += 1;
    let p0 = match oracle.maximize(&zero) {
        Support::Attained(p) => p,
        Support::Unbounded(_) => unreachable!("zero objective cannot be unbounded"),
        Support::Empty => return (VRep::empty(d), stats),
    };

    let mut inner = VRep::from_points(d, vec![p0.clone()]);
    let mut spanned: Vec<Vec<Scalar>> = Vec::new();
    let mut equations: Vec<Vec<Scalar>> = Vec::new();

    // affine hull: every probe either extends the span or proves an equation
    loop {
        let mut rows = spanned.clone();
        rows.extend(equations.iter().cloned());
        let free = nullspace(&Matrix::from_rows(d, rows));
        let Some(dir) = free.into_iter().next() else {
            break;
        };
        let base = dot(&dir, &p0);
        let mut grown = false;
        for sign in [1i64, -1] {
            let w: Vec<Scalar> = dir.iter().map(|x| x * Scalar::from_int(sign)).collect();
            stats.oracle_calls += 1;
            match oracle.maximize(&w) {
                Support::Unbounded(r) => {
                    spanned.push(r.clone());
                    inner.push_ray(r);
                    grown = true;
                }
                Support::Attained(p) if dot(&dir, &p) != base => {
                    spanned.push(sub_vec(&p, &p0));
                    inner.points.push(p);
                    grown = true;
                }
                Support::Attained(_) => continue,
                Support::Empty => unreachable!("oracle became empty"),
            }
            break;
        }
        if !grown {
            equations.push(dir);
        }
    }

    // facets: test each inequality of the inner approximation
    let mut confirmed: HashSet<(Vec<Scalar>, Scalar)> = HashSet::new();
    loop {
        let h = v_to_h(&inner);
        let mut added = false;
        for (a, beta) in h.ineq.row_iter().zip(&h.ineq_rhs) {
            let key = (a.to_vec(), beta.clone());
            if confirmed.contains(&key) {
                continue;
            }
            stats.oracle_calls += 1;
            match oracle.maximize(a) {
                Support::Unbounded(r) => {
                    inner.push_ray(r);
                    added = true;
                }
                Support::Attained(p) if dot(a, &p) > *beta => {
                    inner.points.push(p);
                    added = true;
                }
                Support::Attained(_) => {
                    confirmed.insert(key);
                }
                Support::Empty => unreachable!("oracle became empty"),
            }
        }
        if !added {
            stats.facets = h.ineq.rows();
            let mut v = h_to_v(&h);
            v.points.sort();
            v.rays.sort();
            v.lines.sort();
            return (v, stats);
        }
    }
}
