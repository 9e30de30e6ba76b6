use super::dd::cone_generators;
use super::{HRep, PolyError, Polyhedron, VRep};
use crate::exact::{independent_subset, primitive_normalize, Scalar};
use crate::lp::{solve_lp, LinExpr, LpBuilder, LpOutcome};

/// A convex polyhedron that can be queried through linear programs.
pub trait ConvexSet {
    fn dim(&self) -> usize;

    /// Emits LP rows forcing `z` into the set.
    fn encode_into(&self, b: &mut LpBuilder, z: &[LinExpr]);

    fn contains(&self, z: &[Scalar]) -> bool {
        assert_eq!(z.len(), self.dim());
        let mut b = LpBuilder::new();
        let exprs: Vec<LinExpr> = z.iter().cloned().map(LinExpr::constant).collect();
        self.encode_into(&mut b, &exprs);
        !matches!(solve_lp(&b.build()), LpOutcome::Infeasible { .. })
    }

    /// Membership of `d` in the recession cone (set assumed nonempty).
    fn recession_contains(&self, d: &[Scalar]) -> bool;
}

impl ConvexSet for HRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn encode_into(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        self.encode(b, z)
    }

    fn contains(&self, z: &[Scalar]) -> bool {
        HRep::contains(self, z)
    }

    fn recession_contains(&self, d: &[Scalar]) -> bool {
        let mut r = self.clone();
        r.ineq_rhs.iter_mut().for_each(|v| *v = Scalar::zero());
        r.eq_rhs.iter_mut().for_each(|v| *v = Scalar::zero());
        HRep::contains(&r, d)
    }
}

impl ConvexSet for VRep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn encode_into(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        self.encode(b, z)
    }

    fn recession_contains(&self, d: &[Scalar]) -> bool {
        if d.iter().all(Scalar::is_zero) {
            return true;
        }
        self.recession().contains(d)
    }
}

impl ConvexSet for Polyhedron {
    fn dim(&self) -> usize {
        self.dim
    }

    fn encode_into(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        self.encode(b, z)
    }

    fn recession_contains(&self, d: &[Scalar]) -> bool {
        self.recession().contains(d)
    }
}

impl<T: ConvexSet + ?Sized> ConvexSet for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn encode_into(&self, b: &mut LpBuilder, z: &[LinExpr]) {
        (**self).encode_into(b, z)
    }

    fn contains(&self, z: &[Scalar]) -> bool {
        (**self).contains(z)
    }

    fn recession_contains(&self, d: &[Scalar]) -> bool {
        (**self).recession_contains(d)
    }
}

/// V-representation of an H-described set. Lines span the lineality space;
/// for pointed sets the points are exactly the vertices and the rays the
/// extreme rays.
pub fn h_to_v(h: &HRep) -> VRep {
    let d = h.dim;
    let lift = |a: &[Scalar], b: &Scalar| -> Vec<Scalar> {
        let mut row = a.to_vec();
        row.push(-b);
        row
    };
    let mut ineqs = Vec::with_capacity(h.ineq.rows() + 1);
    let mut t_nonneg = vec![Scalar::zero(); d + 1];
    t_nonneg[d] = -Scalar::one();
    ineqs.push(t_nonneg);
    ineqs.extend(h.ineq.row_iter().zip(&h.ineq_rhs).map(|(a, b)| lift(a, b)));
    let eqs: Vec<Vec<Scalar>> = h.eq.row_iter().zip(&h.eq_rhs).map(|(a, b)| lift(a, b)).collect();
    let gens = cone_generators(d + 1, &ineqs, &eqs);

    let mut v = VRep::empty(d);
    let mut rays = Vec::new();
    for g in gens.rays {
        let t = &g[d];
        if t.is_positive() {
            v.points.push(g[..d].iter().map(|x| x / t).collect());
        } else {
            rays.push(g[..d].to_vec());
        }
    }
    if v.points.is_empty() {
        return VRep::empty(d);
    }
    for r in rays {
        v.push_ray(r);
    }
    for l in gens.lineality {
        v.push_line(l[..d].to_vec());
    }
    v
}

/// Irredundant H-representation of a V-described set. Each inequality row is
/// primitive-normalized; for full-dimensional sets the rows are the unique
/// facet inequalities.
pub fn v_to_h(v: &VRep) -> HRep {
    let d = v.dim;
    if v.is_empty() {
        return HRep::empty(d);
    }
    let with = |g: &[Scalar], t: Scalar| -> Vec<Scalar> {
        let mut row = g.to_vec();
        row.push(t);
        row
    };
    let mut ineqs: Vec<Vec<Scalar>> = v.points.iter().map(|p| with(p, Scalar::one())).collect();
    ineqs.extend(v.rays.iter().map(|r| with(r, Scalar::zero())));
    let eqs: Vec<Vec<Scalar>> = v.lines.iter().map(|l| with(l, Scalar::zero())).collect();
    let polar = cone_generators(d + 1, &ineqs, &eqs);

    let mut h = HRep::new(d);
    for g in polar.rays {
        let a = &g[..d];
        let Ok(a_norm) = primitive_normalize(a) else {
            continue; // the trivial inequality 0 ≤ 1
        };
        let scale = first_ratio(&a_norm, a);
        h.push_ineq(a_norm, -(&g[d] * &scale));
    }
    for g in polar.lineality {
        let a = &g[..d];
        if let Ok(a_norm) = primitive_normalize(a) {
            let scale = first_ratio(&a_norm, a);
            h.push_eq(a_norm, -(&g[d] * &scale));
        }
    }
    h
}

/// `λ` with `scaled = λ·orig`, read off the first nonzero entry.
fn first_ratio(scaled: &[Scalar], orig: &[Scalar]) -> Scalar {
    let i = orig.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    &scaled[i] / &orig[i]
}

/// `{z : Az ≤ 0, Ez = 0}`; the input set must be nonempty.
pub fn recession_cone(h: &HRep) -> Result<HRep, PolyError> {
    if h.is_empty() {
        return Err(PolyError::Empty);
    }
    let mut r = h.clone();
    r.ineq_rhs.iter_mut().for_each(|v| *v = Scalar::zero());
    r.eq_rhs.iter_mut().for_each(|v| *v = Scalar::zero());
    Ok(r)
}

/// Decides `q ⊆ p`, checking the points of `q` and its recession directions.
pub fn is_subset(q: &VRep, p: &impl ConvexSet) -> bool {
    if q.is_empty() {
        return true;
    }
    q.points.iter().all(|z| p.contains(z))
        && q.directions().iter().all(|d| p.recession_contains(d))
}

/// Coordinate projection onto the coordinates listed in `keep` (in that order).
pub fn project_drop(v: &VRep, keep: &[usize]) -> VRep {
    let pick = |g: &Vec<Scalar>| -> Vec<Scalar> { keep.iter().map(|&i| g[i].clone()).collect() };
    let mut out = VRep::empty(keep.len());
    out.points = v.points.iter().map(pick).collect();
    for r in &v.rays {
        out.push_ray(pick(r));
    }
    for l in &v.lines {
        out.push_line(pick(l));
    }
    out
}

/// Removes generators implied by the others: lines are reduced to a basis,
/// rays in `cone(other rays) + span(lines)` and points in
/// `conv(other points) + cone(rays) + span(lines)` are dropped, one LP each.
pub fn remove_redundancy(v: &VRep) -> VRep {
    let d = v.dim;
    let lines = independent_subset(d, &v.lines);
    let mut rays: Vec<Vec<Scalar>> = Vec::new();
    for r in &v.rays {
        if primitive_normalize(r).is_ok() && !rays.contains(r) {
            rays.push(r.clone());
        }
    }
    let mut i = 0;
    while i < rays.len() {
        let others: Vec<Vec<Scalar>> = rays
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let cone = VRep::cone(d, others, lines.clone());
        if cone.contains(&rays[i]) {
            rays.remove(i);
        } else {
            i += 1;
        }
    }
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    for p in &v.points {
        if !points.contains(p) {
            points.push(p.clone());
        }
    }
    let mut i = 0;
    while i < points.len() && points.len() > 1 {
        let others = VRep {
            dim: d,
            points: points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect(),
            rays: rays.clone(),
            lines: lines.clone(),
        };
        if others.contains(&points[i]) {
            points.remove(i);
        } else {
            i += 1;
        }
    }
    VRep {
        dim: d,
        points,
        rays,
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rat, Matrix};

    fn cube(d: usize) -> HRep {
        let mut h = HRep::new(d);
        for i in 0..d {
            let mut a = vec![Scalar::zero(); d];
            a[i] = Scalar::one();
            h.push_ineq(a.clone(), Scalar::one());
            a[i] = -Scalar::one();
            h.push_ineq(a, Scalar::zero());
        }
        h
    }

    #[test]
    fn cube_vertices() {
        let v = h_to_v(&cube(3));
        assert_eq!(v.points.len(), 8);
        assert!(v.rays.is_empty() && v.lines.is_empty());
    }

    #[test]
    fn orthant_generators() {
        let h = HRep::from_ineqs(Matrix::from_ints(2, &[&[-1, 0], &[0, -1]]), ivec(&[0, 0]));
        let v = h_to_v(&h);
        assert_eq!(v.points, vec![ivec(&[0, 0])]);
        assert_eq!(v.rays.len(), 2);
        assert!(v.rays.contains(&ivec(&[1, 0])) && v.rays.contains(&ivec(&[0, 1])));
    }

    #[test]
    fn empty_hrep_gives_empty_vrep() {
        let h = HRep::from_ineqs(Matrix::from_ints(1, &[&[1], &[-1]]), ivec(&[0, -1]));
        assert!(h_to_v(&h).is_empty());
        assert!(h.is_empty());
        assert_eq!(recession_cone(&h), Err(PolyError::Empty));
    }

    #[test]
    fn triangle_facets() {
        let v = VRep::from_points(2, vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[0, 1])]);
        let h = v_to_h(&v);
        assert_eq!(h.ineq.rows(), 3);
        assert_eq!(h.eq.rows(), 0);
        let rows: Vec<(Vec<Scalar>, Scalar)> =
            h.ineq.row_iter().map(|r| r.to_vec()).zip(h.ineq_rhs.clone()).collect();
        assert!(rows.contains(&(ivec(&[-1, 0]), Scalar::zero())));
        assert!(rows.contains(&(ivec(&[0, -1]), Scalar::zero())));
        assert!(rows.contains(&(ivec(&[1, 1]), Scalar::one())));
    }

    #[test]
    fn line_gives_equation() {
        let mut v = VRep::from_points(2, vec![ivec(&[0, 0])]);
        v.push_line(ivec(&[1, 0]));
        let h = v_to_h(&v);
        assert_eq!(h.ineq.rows(), 0);
        assert_eq!(h.eq.rows(), 1);
        assert_eq!(h.eq.row(0), &ivec(&[0, 1])[..]);
        assert_eq!(h.eq_rhs, vec![Scalar::zero()]);
    }

    #[test]
    fn recession_examples() {
        assert!(h_to_v(&recession_cone(&cube(3)).unwrap()).rays.is_empty());
        let mut h = HRep::new(2);
        h.push_ineq(ivec(&[-1, 0]), Scalar::zero());
        h.push_eq(ivec(&[0, 1]), Scalar::one());
        let r = recession_cone(&h).unwrap();
        assert_eq!(r.eq_rhs, vec![Scalar::zero()]);
        assert_eq!(r.ineq_rhs, vec![Scalar::zero()]);
        assert_eq!(r.ineq.row(0), &ivec(&[-1, 0])[..]);
    }

    #[test]
    fn membership() {
        let c = cube(3);
        assert!(c.contains(&[rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(!c.contains(&ivec(&[2, 0, 0])));
        let v = h_to_v(&c);
        assert!(ConvexSet::contains(&v, &[rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(!ConvexSet::contains(&v, &ivec(&[2, 0, 0])));
    }

    #[test]
    fn subset_checks() {
        let square = VRep::from_points(
            3,
            vec![ivec(&[0, 0, 0]), ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[1, 1, 0])],
        );
        assert!(is_subset(&square, &cube(3)));
        let mut with_ray = square.clone();
        with_ray.push_ray(ivec(&[1, 0, 0]));
        assert!(!is_subset(&with_ray, &cube(3)));
    }

    #[test]
    fn redundancy_examples() {
        let v = VRep::from_points(2, vec![ivec(&[0, 0]), ivec(&[1, 0]), vec![rat(1, 2), rat(0, 1)]]);
        assert_eq!(remove_redundancy(&v).points, vec![ivec(&[0, 0]), ivec(&[1, 0])]);
        let c = VRep::cone(2, vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[1, 1])], vec![]);
        assert_eq!(remove_redundancy(&c).rays, vec![ivec(&[1, 0]), ivec(&[0, 1])]);
    }

    #[test]
    fn projection_examples() {
        let sq = project_drop(&h_to_v(&cube(3)), &[0, 1]);
        let reduced = remove_redundancy(&sq);
        assert_eq!(reduced.points.len(), 4);
        let p = VRep::from_points(3, vec![ivec(&[1, 2, 3])]);
        assert_eq!(project_drop(&p, &[1, 2]).points, vec![ivec(&[2, 3])]);
    }
}
