//! Fixtures for the benchmarks under `benches/`.

use polyset::exact::{int, ivec, Scalar};
use polyset::instances::{build_risk_problem, example_pi1, example_pi2};
use polyset::lp::{LinExpr, LpBuilder, LpProblem, Sense, VarKind};
use polyset::polyhedron::HRep;
use polyset::setopt::SetOptProblem;

/// The four-asset example with initial portfolio `(0, 0, -1, -1)`.
pub fn example1() -> SetOptProblem {
    build_risk_problem(&example_pi1(), &example_pi2(), 2, &ivec(&[0, 0, -1, -1])).expect("valid data")
}

/// `[0, 1]^d`.
pub fn cube(d: usize) -> HRep {
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

/// Dense LP `max Σ xⱼ` over `m` rows `Σ ((i·j) mod 7 + 1) xⱼ ≤ 10 + i`,
/// `x ≥ 0`.
pub fn dense_lp(m: usize, n: usize) -> LpProblem {
    let mut b = LpBuilder::new();
    let x = b.add_vars(n, VarKind::NonNeg);
    for i in 0..m {
        let mut e = LinExpr::default();
        for (j, v) in x.iter().enumerate() {
            e.add_term(*v, int(((i * j) % 7 + 1) as i64));
        }
        b.add_constraint(&e, Sense::Le, int(10 + i as i64));
    }
    let mut obj = LinExpr::default();
    for v in &x {
        obj.add_term(*v, Scalar::one());
    }
    b.maximize(&obj);
    b.build()
}
