//! Polyhedral convex set optimization: minimize `F(x) + C` over `x ∈ Rⁿ`
//! with respect to the set order induced by the cone `C`.

mod minimizer;
mod solve;
mod transform;

use crate::exact::{rank_of, Scalar};
use crate::lp::{LinExpr, LpBuilder, Sense, VarKind};
use crate::polyhedron::{oracle_hull, HRep, LpOracle, Polyhedron, VRep};

pub use minimizer::{
    build_homogeneous_lp, build_inclusion_lp, certify_minimizer, compute_minimizer,
    stabilize_affine_hull, InclusionLp, Minimizer, MinimizerStats, Stabilized,
};
pub use solve::{
    check_infimizer, solve, solve_bounded, solve_with, Certificate, SolveOptions, SolveStats,
    Solution, Status,
};
pub use transform::{
    check_existence, natural_cone, recession_map, standard_form, upper_image, NaturalCone,
    UpperImage,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetOptError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the graph of the objective mapping is empty")]
    EmptyGraph,
    #[error("point is not in the domain of the mapping")]
    NotInDomain,
    #[error("point is not in the upper image")]
    NotInUpperImage,
}

/// Set-valued mapping `F: Rⁿ ⇉ R^q` given by its graph in `R^{n+q}`
/// (x-coordinates first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub n: usize,
    pub q: usize,
    pub graph: Polyhedron,
}

impl PolyMap {
    pub fn new(n: usize, q: usize, graph: Polyhedron) -> Result<Self, SetOptError> {
        if graph.dim != n + q {
            return Err(SetOptError::Dimension {
                expected: n + q,
                got: graph.dim,
            });
        }
        Ok(PolyMap { n, q, graph })
    }

    pub fn from_hrep(n: usize, q: usize, h: HRep) -> Result<Self, SetOptError> {
        PolyMap::new(n, q, h.into())
    }

    pub fn from_vrep(n: usize, q: usize, v: VRep) -> Result<Self, SetOptError> {
        PolyMap::new(n, q, v.into())
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Rows forcing `(x, y) ∈ gr F`.
    pub fn encode(&self, b: &mut LpBuilder, x: &[LinExpr], y: &[LinExpr]) {
        let z: Vec<LinExpr> = x.iter().chain(y).cloned().collect();
        self.graph.encode(b, &z);
    }

    /// Rows forcing `y ∈ F(x) + C + span(lift)`.
    pub(crate) fn encode_value(
        &self,
        b: &mut LpBuilder,
        c: &OrderCone,
        lift: &[Vec<Scalar>],
        x: &[LinExpr],
        y: &[LinExpr],
    ) {
        let y0: Vec<LinExpr> = free_vars(b, self.q);
        self.encode(b, x, &y0);
        let lam = b.add_vars(c.rays.len(), VarKind::NonNeg);
        let kap = b.add_vars(c.lines.len() + lift.len(), VarKind::Free);
        for k in 0..self.q {
            // y_k − y0_k − Σ λ g_k − Σ κ l_k = 0
            let mut e = y[k].clone();
            for (v, c) in &y0[k].terms {
                e.add_term(*v, -c);
            }
            let gens = c.rays.iter().zip(&lam).chain(c.lines.iter().chain(lift).zip(&kap));
            for (g, &var) in gens {
                e.add_term(var, -&g[k]);
            }
            b.add_constraint(&e, Sense::Eq, Scalar::zero());
        }
    }

    pub fn in_domain(&self, x: &[Scalar]) -> bool {
        let mut b = LpBuilder::new();
        let xs = constants(x);
        let y = free_vars(&mut b, self.q);
        self.encode(&mut b, &xs, &y);
        !matches!(
            crate::lp::solve_lp(&b.build()),
            crate::lp::LpOutcome::Infeasible { .. }
        )
    }

    /// `y ∈ F(x) + C`.
    pub fn value_contains(&self, x: &[Scalar], c: &OrderCone, y: &[Scalar]) -> bool {
        let mut b = LpBuilder::new();
        self.encode_value(&mut b, c, &[], &constants(x), &constants(y));
        !matches!(
            crate::lp::solve_lp(&b.build()),
            crate::lp::LpOutcome::Infeasible { .. }
        )
    }

    /// `F(x) + C` as a V-representation (empty when `x ∉ dom F`).
    pub fn value(&self, x: &[Scalar], c: &OrderCone) -> VRep {
        self.value_lifted(x, c, &[])
    }

    pub(crate) fn value_lifted(&self, x: &[Scalar], c: &OrderCone, lift: &[Vec<Scalar>]) -> VRep {
        assert_eq!(x.len(), self.n);
        let mut b = LpBuilder::new();
        let y = free_vars(&mut b, self.q);
        self.encode_value(&mut b, c, lift, &constants(x), &y);
        oracle_hull(&mut LpOracle::new(b, y)).0
    }
}

/// Polyhedral convex ordering cone `cone(rays) + span(lines)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCone {
    pub q: usize,
    pub rays: Vec<Vec<Scalar>>,
    pub lines: Vec<Vec<Scalar>>,
}

impl OrderCone {
    pub fn new(q: usize, rays: Vec<Vec<Scalar>>, lines: Vec<Vec<Scalar>>) -> Self {
        let v = VRep::cone(q, rays, lines);
        OrderCone {
            q,
            rays: v.rays,
            lines: v.lines,
        }
    }

    pub fn zero(q: usize) -> Self {
        OrderCone::new(q, Vec::new(), Vec::new())
    }

    pub fn nonneg_orthant(q: usize) -> Self {
        OrderCone::new(q, (0..q).map(|i| crate::exact::unit_vec(q, i)).collect(), Vec::new())
    }

    pub fn from_vrep(v: &VRep) -> Self {
        OrderCone::new(v.dim, v.rays.clone(), v.lines.clone())
    }

    pub fn as_vrep(&self) -> VRep {
        VRep::cone(self.q, self.rays.clone(), self.lines.clone())
    }

    pub fn contains(&self, y: &[Scalar]) -> bool {
        crate::polyhedron::ConvexSet::contains(&self.as_vrep(), y)
    }

    pub fn has_interior(&self) -> bool {
        let gens: Vec<Vec<Scalar>> = self.rays.iter().chain(&self.lines).cloned().collect();
        rank_of(self.q, &gens) == self.q
    }

    /// `w ∈ C* = {w : wᵀc ≤ 0 for all c ∈ C}`.
    pub fn polar_contains(&self, w: &[Scalar]) -> bool {
        self.rays.iter().all(|r| !crate::exact::dot(w, r).is_positive())
            && self.lines.iter().all(|l| crate::exact::dot(w, l).is_zero())
    }
}

/// Problem `min F(x) + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetOptProblem {
    pub f: PolyMap,
    pub c: OrderCone,
    /// Set once `G(0) = C` is known to hold.
    pub is_standard_form: bool,
}

impl SetOptProblem {
    pub fn new(f: PolyMap, c: OrderCone) -> Result<Self, SetOptError> {
        if f.q != c.q {
            return Err(SetOptError::Dimension {
                expected: f.q,
                got: c.q,
            });
        }
        Ok(SetOptProblem {
            f,
            c,
            is_standard_form: false,
        })
    }

    pub fn n(&self) -> usize {
        self.f.n
    }

    pub fn q(&self) -> usize {
        self.f.q
    }
}

pub(crate) fn free_vars(b: &mut LpBuilder, count: usize) -> Vec<LinExpr> {
    b.add_vars(count, VarKind::Free)
        .into_iter()
        .map(LinExpr::var)
        .collect()
}

pub(crate) fn constants(v: &[Scalar]) -> Vec<LinExpr> {
    v.iter().cloned().map(LinExpr::constant).collect()
}
