use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{
    compute_minimizer, recession_map, standard_form, upper_image, Minimizer, MinimizerStats,
    OrderCone, PolyMap, SetOptProblem, UpperImage,
};
use crate::exact::{primitive_normalize, zero_vec, Scalar};
use crate::polyhedron::{is_subset, NormalSystem, VRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Infeasible,
    NoSolution,
    Solved,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Infeasible => "infeasible",
            Status::NoSolution => "no_solution",
            Status::Solved => "solved",
        })
    }
}

/// Why an element of `S̄` or `Ŝ` is there: the generator of `P` it covers
/// and the normal system of the last minimizer pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Index into `sbar` or `shat`.
    pub element: usize,
    pub covers: Vec<Scalar>,
    pub normals: NormalSystem,
    pub lift: Vec<Vec<Scalar>>,
    pub stats: MinimizerStats,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub wall_time: Duration,
    pub minimizer_calls: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    pub sbar: Vec<Vec<Scalar>>,
    pub shat: Vec<Vec<Scalar>>,
    pub sbar_certificates: Vec<Certificate>,
    pub shat_certificates: Vec<Certificate>,
    pub upper_image: Option<UpperImage>,
    /// The standard form the minimizers refer to.
    pub standard: Option<SetOptProblem>,
    pub stats: SolveStats,
}

impl Solution {
    fn stopped(status: Status, upper: Option<UpperImage>, standard: Option<SetOptProblem>) -> Self {
        Solution {
            status,
            sbar: Vec::new(),
            shat: Vec::new(),
            sbar_certificates: Vec::new(),
            shat_certificates: Vec::new(),
            upper_image: upper,
            standard,
            stats: SolveStats::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for the per-generator minimizer calls.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { jobs: 1 }
    }
}

pub fn solve(p: &SetOptProblem) -> Solution {
    solve_with(p, &SolveOptions::default())
}

fn run_all(
    f: &PolyMap,
    c: &OrderCone,
    targets: &[Vec<Scalar>],
    jobs: usize,
) -> Vec<Option<Minimizer>> {
    let one = |y: &Vec<Scalar>| compute_minimizer(f, c, y).expect("target lies in the image");
    if jobs <= 1 {
        return targets.iter().map(one).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| targets.par_iter().map(one).collect()),
        Err(_) => targets.iter().map(one).collect(),
    }
}

/// Collects minimizers into a duplicate-free element list with one
/// certificate per target.
fn collect(
    targets: &[Vec<Scalar>],
    found: Vec<Minimizer>,
    normalize: bool,
) -> (Vec<Vec<Scalar>>, Vec<Certificate>) {
    let mut elements: Vec<Vec<Scalar>> = Vec::new();
    let mut certs = Vec::new();
    for (y, m) in targets.iter().zip(found) {
        let (x, covers) = if normalize {
            let x = primitive_normalize(&m.x).expect("nonzero minimizing direction");
            let i = m.x.iter().position(|v| !v.is_zero()).unwrap();
            let s = &x[i] / &m.x[i];
            (x, y.iter().map(|v| v * &s).collect())
        } else {
            (m.x.clone(), y.clone())
        };
        let element = match elements.iter().position(|e| *e == x) {
            Some(i) => i,
            None => {
                elements.push(x);
                elements.len() - 1
            }
        };
        certs.push(Certificate {
            element,
            covers,
            normals: m.normals,
            lift: m.lift,
            stats: m.stats,
        });
    }
    (elements, certs)
}

/// Solution method for general problems: standard form, upper image,
/// existence test, then one minimizer per point and per direction of `P`
/// outside `C`.
pub fn solve_with(p: &SetOptProblem, opts: &SolveOptions) -> Solution {
    let start = Instant::now();
    if p.f.is_empty() {
        let mut s = Solution::stopped(Status::Infeasible, None, None);
        s.stats.wall_time = start.elapsed();
        return s;
    }
    let std = standard_form(p).expect("nonempty graph");
    let upper = upper_image(&std);
    let g = recession_map(&std.f).expect("nonempty graph");
    let mut calls = 1;
    let exists = compute_minimizer(&g, &std.c, &zero_vec(std.q()))
        .expect("0 lies in the homogeneous image")
        .is_some();
    if !exists {
        let mut s = Solution::stopped(Status::NoSolution, Some(upper), Some(std));
        s.stats.wall_time = start.elapsed();
        s.stats.minimizer_calls = calls;
        return s;
    }

    let points = run_all(&std.f, &std.c, &upper.points, opts.jobs);
    let dirs = run_all(&g, &std.c, &upper.directions, opts.jobs);
    calls += points.len() + dirs.len();
    let (Some(points), Some(dirs)) = (
        points.into_iter().collect::<Option<Vec<_>>>(),
        dirs.into_iter().collect::<Option<Vec<_>>>(),
    ) else {
        let mut s = Solution::stopped(Status::NoSolution, Some(upper), Some(std));
        s.stats.wall_time = start.elapsed();
        s.stats.minimizer_calls = calls;
        return s;
    };
    let (sbar, sbar_certificates) = collect(&upper.points, points, false);
    let (shat, shat_certificates) = collect(&upper.directions, dirs, true);
    Solution {
        status: Status::Solved,
        sbar,
        shat,
        sbar_certificates,
        shat_certificates,
        upper_image: Some(upper),
        standard: Some(std),
        stats: SolveStats {
            wall_time: start.elapsed(),
            minimizer_calls: calls,
        },
    }
}

/// Solution method for bounded problems whose ordering cone is line-free
/// with nonempty interior: one minimizer per vertex of `P`. Other inputs are
/// handed to [`solve`].
pub fn solve_bounded(p: &SetOptProblem) -> Solution {
    let start = Instant::now();
    if p.f.is_empty() || !p.c.has_interior() || !p.c.lines.is_empty() {
        return solve(p);
    }
    let std = standard_form(p).expect("nonempty graph");
    let upper = upper_image(&std);
    if !upper.directions.is_empty() || !std.c.lines.is_empty() {
        return solve(p);
    }
    let found = run_all(&std.f, &std.c, &upper.points, 1);
    let calls = found.len();
    let Some(found) = found.into_iter().collect::<Option<Vec<_>>>() else {
        return solve(p);
    };
    let (sbar, sbar_certificates) = collect(&upper.points, found, false);
    Solution {
        status: Status::Solved,
        sbar,
        shat: Vec::new(),
        sbar_certificates,
        shat_certificates: Vec::new(),
        upper_image: Some(upper),
        standard: Some(std),
        stats: SolveStats {
            wall_time: start.elapsed(),
            minimizer_calls: calls,
        },
    }
}

/// Checks `P = C + conv ⋃ F(x̄) + cone ⋃ G(x̂)` exactly, for the standard
/// form stored in the solution.
pub fn check_infimizer(sol: &Solution) -> bool {
    let (Some(std), Some(upper)) = (&sol.standard, &sol.upper_image) else {
        return false;
    };
    if sol.status != Status::Solved || sol.sbar.is_empty() {
        return false;
    }
    let g = match recession_map(&std.f) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let mut rhs = VRep::empty(std.q());
    for x in &sol.sbar {
        let v = std.f.value(x, &std.c);
        if v.is_empty() {
            return false;
        }
        rhs.points.extend(v.points);
        rhs.rays.extend(v.rays);
        rhs.lines.extend(v.lines);
    }
    for x in &sol.shat {
        if x.iter().all(Scalar::is_zero) {
            return false;
        }
        let v = g.value(x, &std.c);
        if v.is_empty() {
            return false;
        }
        for p in v.points {
            rhs.push_ray(p);
        }
        rhs.rays.extend(v.rays);
        rhs.lines.extend(v.lines);
    }
    is_subset(&upper.vrep, &rhs) && is_subset(&rhs, &upper.vrep)
}
