//! Polyhedral calculus over exact rationals.
//!
//! Convex polyhedra are handled in three forms:
//!
//! * [`HRep`]: `{z : Az ≤ b, Ez = f}`;
//! * [`VRep`]: `conv(points) + cone(rays) + span(lines)`;
//! * [`Polyhedron`]: the Minkowski sum of an optional `HRep` part and an
//!   optional `VRep` part. This is the form in which graphs of set-valued
//!   mappings are kept, because converting a high-dimensional V-description
//!   into inequalities is rarely affordable while LPs over either form are.
//!
//! Conversions between H and V use the double description method; sets that
//! are only available through linear programs (projections, slices of a
//! `Polyhedron`) are turned into V-representations by [`oracle_hull`].

mod dd;
mod hull;
mod normals;
mod ops;

use crate::exact::{dot, primitive_normalize, zero_vec, Matrix, Scalar};
use crate::lp::{solve_lp, LinExpr, LpBuilder, LpOutcome, Sense, VarKind};

pub use hull::{oracle_hull, HullStats, LpOracle, Support, SupportOracle};
pub use normals::{
    affine_hull, affine_hull_ineq, min_outer_normals, AffineHull, NormalKind, NormalSystem,
};
pub use ops::{
    h_to_v, is_subset, project_drop, recession_cone, remove_redundancy, v_to_h, ConvexSet,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operation requires a nonempty set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// `{z ∈ R^dim : Az ≤ b, Ez = f}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub ineq: Matrix,
    pub ineq_rhs: Vec<Scalar>,
    pub eq: Matrix,
    pub eq_rhs: Vec<Scalar>,
}

impl HRep {
    pub fn new(dim: usize) -> Self {
        HRep {
            dim,
            ineq: Matrix::zeros(0, dim),
            ineq_rhs: Vec::new(),
            eq: Matrix::zeros(0, dim),
            eq_rhs: Vec::new(),
        }
    }

    /// Builds `{z : Az ≤ b}`.
    pub fn from_ineqs(a: Matrix, b: Vec<Scalar>) -> Self {
        assert_eq!(a.rows(), b.len());
        let dim = a.cols();
        HRep {
            dim,
            ineq: a,
            ineq_rhs: b,
            eq: Matrix::zeros(0, dim),
            eq_rhs: Vec::new(),
        }
    }

    /// The empty set `{z : 0 ≤ -1}`.
    pub fn empty(dim: usize) -> Self {
        let mut h = HRep::new(dim);
        h.push_ineq(zero_vec(dim), -Scalar::one());
        h
    }

    pub fn push_ineq(&mut self, a: Vec<Scalar>, b: Scalar) {
        self.ineq.push_row(a);
        self.ineq_rhs.push(b);
    }

    pub fn push_eq(&mut self, a: Vec<Scalar>, f: Scalar) {
        self.eq.push_row(a);
        self.eq_rhs.push(f);
    }

    pub fn contains(&self, z: &[Scalar]) -> bool {
        self.ineq
            .row_iter()
            .zip(&self.ineq_rhs)
            .all(|(a, b)| dot(a, z) <= *b)
            && self
                .eq
                .row_iter()
                .zip(&self.eq_rhs)
                .all(|(a, f)| dot(a, z) == *f)
    }

    pub fn is_empty(&self) -> bool {
        let mut b = LpBuilder::new();
        let z: Vec<LinExpr> = b
            .add_vars(self.dim, VarKind::Free)
            .into_iter()
            .map(LinExpr::var)
            .collect();
        self.encode(&mut b, &z);
        matches!(solve_lp(&b.build()), LpOutcome::Infeasible { .. })
    }

    /// Adds rows forcing the affine expressions `z` into the set.
    pub fn encode(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        assert_eq!(z.len(), self.dim);
        let mut emit = |row: &[Scalar], rhs: &Scalar, sense: Sense| {
            let mut e = LinExpr::default();
            for (a, zk) in row.iter().zip(z) {
                if a.is_zero() {
                    continue;
                }
                for (v, c) in &zk.terms {
                    e.add_term(*v, a * c);
                }
                e.constant += a * &zk.constant;
            }
            b.add_constraint(&e, sense, rhs.clone());
        };
        for (a, r) in self.ineq.row_iter().zip(&self.ineq_rhs) {
            emit(a, r, Sense::Le);
        }
        for (a, r) in self.eq.row_iter().zip(&self.eq_rhs) {
            emit(a, r, Sense::Eq);
        }
    }
}

/// `conv(points) + cone(rays) + span(lines)`; empty iff `points` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<Vec<Scalar>>,
    pub rays: Vec<Vec<Scalar>>,
    pub lines: Vec<Vec<Scalar>>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            points: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn from_points(dim: usize, points: Vec<Vec<Scalar>>) -> Self {
        VRep {
            dim,
            points,
            rays: Vec::new(),
            lines: Vec::new(),
        }
    }

    /// The cone `cone(rays) + span(lines)` (apex at the origin).
    pub fn cone(dim: usize, rays: Vec<Vec<Scalar>>, lines: Vec<Vec<Scalar>>) -> Self {
        let mut v = VRep {
            dim,
            points: vec![zero_vec(dim)],
            rays: Vec::new(),
            lines: Vec::new(),
        };
        for r in rays {
            v.push_ray(r);
        }
        for l in lines {
            v.push_line(l);
        }
        v
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Adds a direction; zero vectors are ignored, others primitive-normalized.
    pub fn push_ray(&mut self, r: Vec<Scalar>) {
        if let Ok(r) = primitive_normalize(&r) {
            self.rays.push(r);
        }
    }

    pub fn push_line(&mut self, l: Vec<Scalar>) {
        if let Ok(l) = primitive_normalize(&l) {
            self.lines.push(l);
        }
    }

    /// All directions of the recession cone generators (rays, then `±lines`).
    pub fn directions(&self) -> Vec<Vec<Scalar>> {
        let mut d = self.rays.clone();
        for l in &self.lines {
            d.push(l.clone());
            d.push(l.iter().map(|x| -x).collect());
        }
        d
    }

    /// `0⁺` of the set as a cone; requires a nonempty set.
    pub fn recession(&self) -> VRep {
        VRep::cone(self.dim, self.rays.clone(), self.lines.clone())
    }

    /// Minkowski sum of two V-represented sets.
    pub fn minkowski_sum(&self, other: &VRep) -> VRep {
        assert_eq!(self.dim, other.dim);
        let mut points = Vec::new();
        for p in &self.points {
            for q in &other.points {
                points.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        VRep {
            dim: self.dim,
            points,
            rays: self.rays.iter().chain(&other.rays).cloned().collect(),
            lines: self.lines.iter().chain(&other.lines).cloned().collect(),
        }
    }

    pub fn encode(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        assert_eq!(z.len(), self.dim);
        if self.points.is_empty() {
            b.add_constraint(&LinExpr::default(), Sense::Le, -Scalar::one());
            return;
        }
        let mu = b.add_vars(self.points.len(), VarKind::NonNeg);
        let nu = b.add_vars(self.rays.len(), VarKind::NonNeg);
        let eta = b.add_vars(self.lines.len(), VarKind::Free);
        let mut sum = LinExpr::default();
        for &m in &mu {
            sum.add_term(m, Scalar::one());
        }
        b.add_constraint(&sum, Sense::Eq, Scalar::one());
        for (k, zk) in z.iter().enumerate() {
            let mut e = zk.clone();
            let gens = self
                .points
                .iter()
                .zip(&mu)
                .chain(self.rays.iter().zip(&nu))
                .chain(self.lines.iter().zip(&eta));
            for (g, &var) in gens {
                e.add_term(var, -&g[k]);
            }
            b.add_constraint(&e, Sense::Eq, Scalar::zero());
        }
    }
}

/// Minkowski sum `H + V` of an inequality-described and a generator-described
/// part; a missing part stands for `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub dim: usize,
    pub h: Option<HRep>,
    pub v: Option<VRep>,
}

impl From<HRep> for Polyhedron {
    fn from(h: HRep) -> Self {
        Polyhedron {
            dim: h.dim,
            h: Some(h),
            v: None,
        }
    }
}

impl From<VRep> for Polyhedron {
    fn from(v: VRep) -> Self {
        Polyhedron {
            dim: v.dim,
            h: None,
            v: Some(v),
        }
    }
}

impl Polyhedron {
    /// Emits LP rows forcing the affine expressions `z` into the set.
    pub fn encode(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        assert_eq!(z.len(), self.dim);
        match (&self.h, &self.v) {
            (Some(h), Some(v)) => {
                // z = zh + zv with zh ∈ H, zv ∈ V
                let zh: Vec<LinExpr> = b
                    .add_vars(self.dim, VarKind::Free)
                    .into_iter()
                    .map(LinExpr::var)
                    .collect();
                let zv: Vec<LinExpr> = z
                    .iter()
                    .zip(&zh)
                    .map(|(zk, hk)| {
                        let mut e = zk.clone();
                        for (v, c) in &hk.terms {
                            e.add_term(*v, -c);
                        }
                        e
                    })
                    .collect();
                h.encode(b, &zh);
                v.encode(b, &zv);
            }
            (Some(h), None) => h.encode(b, z),
            (None, Some(v)) => v.encode(b, z),
            (None, None) => {
                for zk in z {
                    b.add_constraint(zk, Sense::Eq, Scalar::zero());
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match (&self.h, &self.v) {
            (None, Some(v)) => v.is_empty(),
            (Some(h), None) => h.is_empty(),
            (None, None) => false,
            (Some(h), Some(v)) => v.is_empty() || h.is_empty(),
        }
    }

    /// Recession cone; the set must be nonempty.
    pub fn recession(&self) -> Polyhedron {
        Polyhedron {
            dim: self.dim,
            h: self.h.as_ref().map(|h| {
                let mut r = h.clone();
                r.ineq_rhs = zero_vec(r.ineq_rhs.len());
                r.eq_rhs = zero_vec(r.eq_rhs.len());
                r
            }),
            v: self.v.as_ref().map(VRep::recession),
        }
    }

    /// `self + cone(rays) + span(lines)`.
    pub fn add_directions(&self, rays: &[Vec<Scalar>], lines: &[Vec<Scalar>]) -> Polyhedron {
        if rays.is_empty() && lines.is_empty() {
            return self.clone();
        }
        let mut v = self
            .v
            .clone()
            .unwrap_or_else(|| VRep::cone(self.dim, Vec::new(), Vec::new()));
        for r in rays {
            v.push_ray(r.clone());
        }
        for l in lines {
            v.push_line(l.clone());
        }
        Polyhedron {
            dim: self.dim,
            h: self.h.clone(),
            v: Some(v),
        }
    }

    /// Full V-representation. Uses the double description method on the
    /// H-part, so only suitable for moderate dimensions.
    pub fn to_vrep(&self) -> VRep {
        match (&self.h, &self.v) {
            (None, Some(v)) => v.clone(),
            (Some(h), None) => h_to_v(h),
            (Some(h), Some(v)) => h_to_v(h).minkowski_sum(v),
            (None, None) => VRep::from_points(self.dim, vec![zero_vec(self.dim)]),
        }
    }
}

/// Builds an LP feasibility oracle over fresh free variables `z` constrained to
/// `set` and returns the builder plus the variable expressions.
pub(crate) fn membership_builder(set: &impl ConvexSet) -> (LpBuilder, Vec<LinExpr>) {
    let mut b = LpBuilder::new();
    let z: Vec<LinExpr> = b
        .add_vars(set.dim(), VarKind::Free)
        .into_iter()
        .map(LinExpr::var)
        .collect();
    set.encode_into(&mut b, &z);
    (b, z)
}
