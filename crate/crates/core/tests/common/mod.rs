//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use polyset::exact::{dot, int, ivec, rank_of, sub_vec, Matrix, Scalar};
use polyset::lp::{solve_lp, LinExpr, LpBuilder, LpOutcome, Sense, VarKind};
use polyset::polyhedron::{is_subset, v_to_h, HRep, VRep};
use polyset::setopt::{
    build_homogeneous_lp, certify_minimizer, check_existence, check_infimizer, natural_cone, recession_map, solve,
    standard_form, upper_image, OrderCone, PolyMap, SetOptProblem, Status,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 20_240_611;
pub const CORPUS_SIZE: usize = 24;

fn small_vec(rng: &mut impl Rng, d: usize, lo: i64, hi: i64) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..d).map(|_| int(rng.gen_range(lo..=hi))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Nonempty `{z : Az ≤ b}` in `R^d` with `m` rows, all through or around a
/// random integer point.
pub fn random_hrep(rng: &mut impl Rng, d: usize, m: usize) -> HRep {
    let z0: Vec<Scalar> = (0..d).map(|_| int(rng.gen_range(-2..=2))).collect();
    let mut h = HRep::new(d);
    for _ in 0..m {
        let a = small_vec(rng, d, -2, 2);
        let b = dot(&a, &z0) + int(rng.gen_range(0..=2));
        h.push_ineq(a, b);
    }
    h
}

pub fn random_cone(rng: &mut impl Rng, q: usize) -> OrderCone {
    match rng.gen_range(0..5) {
        0 | 1 => OrderCone::nonneg_orthant(q),
        2 => OrderCone::zero(q),
        3 => {
            let k = rng.gen_range(1..=q + 1);
            OrderCone::new(q, (0..k).map(|_| small_vec(rng, q, -1, 2)).collect(), Vec::new())
        }
        _ => {
            let mut rays: Vec<Vec<Scalar>> = (0..q).map(|i| polyset::exact::unit_vec(q, i)).collect();
            rays.pop();
            OrderCone::new(q, rays, vec![small_vec(rng, q, -1, 1)])
        }
    }
}

/// Random problem with `n ≤ 4`, `q ≤ 3` and at most 12 graph inequalities.
pub fn random_problem(rng: &mut impl Rng) -> SetOptProblem {
    let n = rng.gen_range(1..=4);
    let q = rng.gen_range(1..=3);
    let m = rng.gen_range(2..=12);
    let h = random_hrep(rng, n + q, m);
    let c = random_cone(rng, q);
    SetOptProblem::new(PolyMap::from_hrep(n, q, h).unwrap(), c).unwrap()
}

pub fn corpus() -> Vec<SetOptProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| random_problem(&mut rng)).collect()
}

pub fn hproblem(n: usize, q: usize, rows: &[&[i64]], rhs: &[i64], c: OrderCone) -> SetOptProblem {
    let h = HRep::from_ineqs(Matrix::from_ints(n + q, rows), ivec(rhs));
    SetOptProblem::new(PolyMap::from_hrep(n, q, h).unwrap(), c).unwrap()
}

/// Feasible instances without solution.
pub fn no_solution_instances() -> Vec<SetOptProblem> {
    let mut eq = hproblem(2, 2, &[&[1, 1, 0, 0]], &[0], OrderCone::nonneg_orthant(2));
    // y = x on {x₁ + x₂ ≤ 0}
    let h = eq.f.graph.h.as_mut().unwrap();
    h.push_eq(ivec(&[1, 0, -1, 0]), int(0));
    h.push_eq(ivec(&[0, 1, 0, -1]), int(0));
    vec![
        // y ≥ x
        hproblem(1, 1, &[&[1, -1]], &[0], OrderCone::nonneg_orthant(1)),
        // y₁ ≥ x, y₂ ≥ x
        hproblem(1, 2, &[&[1, -1, 0], &[1, 0, -1]], &[0, 0], OrderCone::nonneg_orthant(2)),
        eq,
    ]
}

pub fn same_set(a: &VRep, b: &VRep) -> bool {
    is_subset(a, b) && is_subset(b, a)
}

/// Generators of `C* = {w : wᵀc ≤ 0 for c ∈ C}`.
pub fn polar_generators(c: &OrderCone) -> Vec<Vec<Scalar>> {
    let h = v_to_h(&c.as_vrep());
    let mut out = h.ineq.to_rows();
    for e in h.eq.row_iter() {
        out.push(e.to_vec());
        out.push(e.iter().map(|x| -x).collect());
    }
    out
}

fn homogeneous_bounded(p: &SetOptProblem, w: &[Scalar]) -> bool {
    let lp = build_homogeneous_lp(&p.f, &p.c, w).unwrap();
    match solve_lp(&lp.problem) {
        LpOutcome::Optimal { .. } => true,
        LpOutcome::Unbounded { .. } => false,
        LpOutcome::Infeasible { .. } => panic!("x = 0, y = 0 is feasible"),
    }
}

/// `(check_existence, K ⊆ C, LPʰ(w) bounded for the sampled w ∈ C*)` on the
/// standard form. The samples include all generators of `C*`.
pub fn three_way(p: &SetOptProblem, rng: &mut impl Rng) -> (bool, bool, bool) {
    let std = standard_form(p).unwrap();
    let exists = check_existence(&std);
    let k_in_c = natural_cone(&std).unwrap().is_subset_of(&std.c);
    let gens = polar_generators(&std.c);
    let mut samples = gens.clone();
    for _ in 0..4 {
        if gens.is_empty() {
            break;
        }
        let mut w = vec![Scalar::zero(); std.q()];
        for g in &gens {
            let t = int(rng.gen_range(0..=3));
            for (wk, gk) in w.iter_mut().zip(g) {
                *wk += &t * gk;
            }
        }
        samples.push(w);
    }
    let bounded = samples.iter().all(|w| homogeneous_bounded(&std, w));
    (exists, k_in_c, bounded)
}

/// Solves `p` and checks every corpus property, returning the status.
pub fn check_instance(p: &SetOptProblem, rng: &mut impl Rng) -> Result<Status, String> {
    let sol = solve(p);
    if sol.status == Status::Infeasible {
        return if p.f.is_empty() { Ok(sol.status) } else { Err("infeasible but nonempty".into()) };
    }
    let std = standard_form(p).unwrap();
    let upper = upper_image(p);
    if !same_set(&upper.vrep, &upper_image(&std).vrep) {
        return Err("P != P_std".into());
    }
    let g = recession_map(&std.f).unwrap();
    let homogeneous = SetOptProblem::new(g.clone(), std.c.clone()).unwrap();
    if !same_set(&upper_image(&homogeneous).vrep, &upper.vrep.recession()) {
        return Err("Q != 0+P".into());
    }
    let (a, b, c) = three_way(p, rng);
    if !(a == b && b == c) {
        return Err(format!("three-way disagreement {a} {b} {c}"));
    }
    if a != (sol.status == Status::Solved) {
        return Err(format!("existence {a} but status {}", sol.status));
    }
    if sol.status == Status::Solved {
        if !check_infimizer(&sol) {
            return Err("not an infimizer".into());
        }
        if let Some(x) = sol.sbar.iter().find(|x| !certify_minimizer(&std.f, &std.c, x)) {
            return Err(format!("{x:?} is not a minimizer"));
        }
        if let Some(x) = sol.shat.iter().find(|x| !certify_minimizer(&g, &std.c, x)) {
            return Err(format!("{x:?} is not a minimizing direction"));
        }
    }
    Ok(sol.status)
}

/// Eliminates coordinate `k` from `{z : Az ≤ b}`, dropping it from the output.
pub fn fourier_motzkin(h: &HRep, k: usize) -> HRep {
    let drop = |a: &[Scalar]| -> Vec<Scalar> {
        a.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v.clone()).collect()
    };
    let mut out = HRep::new(h.dim - 1);
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for (a, b) in h.ineq.row_iter().zip(&h.ineq_rhs) {
        match a[k].signum() {
            0 => out.push_ineq(drop(a), b.clone()),
            1 => pos.push((a, b)),
            _ => neg.push((a, b)),
        }
    }
    for (ap, bp) in &pos {
        for (an, bn) in &neg {
            let (sp, sn) = (-&an[k], ap[k].clone());
            let a: Vec<Scalar> = ap.iter().zip(an.iter()).map(|(x, y)| x * &sp + y * &sn).collect();
            out.push_ineq(drop(&a), *bp * &sp + *bn * &sn);
        }
    }
    out
}

/// Number of distinct facets of the full-dimensional polytope `conv(points)`
/// found as vertices of its polar around the centroid, stopping at `wanted`
/// or after `tries` random objectives. Each facet is confirmed exactly by the
/// rank of its tight vertices, so the count is a lower bound on the number of
/// facets. `None` if the polytope is not full-dimensional.
pub fn certified_facets(points: &[Vec<Scalar>], wanted: usize, tries: usize, rng: &mut impl Rng) -> Option<usize> {
    let d = points[0].len();
    let k = Scalar::from_int(points.len() as i64);
    let centroid: Vec<Scalar> = (0..d).map(|j| points.iter().map(|p| p[j].clone()).sum::<Scalar>() / &k).collect();
    let centered: Vec<Vec<Scalar>> = points.iter().map(|p| sub_vec(p, &centroid)).collect();
    if rank_of(d, &centered) < d {
        return None;
    }
    let mut b = LpBuilder::new();
    let a = b.add_vars(d, VarKind::Free);
    for p in &centered {
        let mut e = LinExpr::default();
        for (j, v) in a.iter().zip(p) {
            e.add_term(*j, v.clone());
        }
        b.add_constraint(&e, Sense::Le, Scalar::one());
    }
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    for _ in 0..tries {
        if found.len() >= wanted {
            break;
        }
        let mut obj = LinExpr::default();
        for j in &a {
            obj.add_term(*j, int(rng.gen_range(-1000..=1000)));
        }
        b.maximize(&obj);
        let LpOutcome::Optimal { point, .. } = solve_lp(&b.build()) else {
            continue;
        };
        let tight: Vec<Vec<Scalar>> = centered.iter().filter(|p| dot(&point, p).is_one()).cloned().collect();
        if rank_of(d, &tight) == d && !found.contains(&point) {
            found.push(point);
        }
    }
    Some(found.len())
}
