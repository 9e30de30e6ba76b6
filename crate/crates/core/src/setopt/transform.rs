use super::{compute_minimizer, constants, free_vars, OrderCone, PolyMap, SetOptError, SetOptProblem};
use crate::exact::{zero_vec, Scalar};
use crate::lp::LpBuilder;
use crate::polyhedron::{oracle_hull, LpOracle, VRep};

/// Recession mapping `G` with `gr G = 0⁺ gr F`.
pub fn recession_map(f: &PolyMap) -> Result<PolyMap, SetOptError> {
    if f.is_empty() {
        return Err(SetOptError::EmptyGraph);
    }
    PolyMap::new(f.n, f.q, f.graph.recession())
}

/// `F_std = F + C`, `C_std = C + G(0)`.
pub fn standard_form(p: &SetOptProblem) -> Result<SetOptProblem, SetOptError> {
    if p.is_standard_form {
        return Ok(p.clone());
    }
    let g = recession_map(&p.f)?;
    let g0 = g.value(&zero_vec(p.n()), &p.c);
    let c_std = OrderCone::from_vrep(&g0);
    let lift = |v: &Vec<Scalar>| -> Vec<Scalar> {
        let mut z = zero_vec(p.n());
        z.extend(v.iter().cloned());
        z
    };
    let rays: Vec<Vec<Scalar>> = p.c.rays.iter().map(lift).collect();
    let lines: Vec<Vec<Scalar>> = p.c.lines.iter().map(lift).collect();
    let f_std = PolyMap::new(p.n(), p.q(), p.f.graph.add_directions(&rays, &lines))?;
    Ok(SetOptProblem {
        f: f_std,
        c: c_std,
        is_standard_form: true,
    })
}

/// `K = {y : ∃x, y ∈ G(x) + C, 0 ∈ G(x) + C}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalCone {
    pub k: VRep,
}

impl NaturalCone {
    pub fn is_subset_of(&self, c: &OrderCone) -> bool {
        self.k.directions().iter().all(|d| c.contains(d))
    }
}

pub fn natural_cone(p: &SetOptProblem) -> Result<NaturalCone, SetOptError> {
    let g = recession_map(&p.f)?;
    let mut b = LpBuilder::new();
    let x = free_vars(&mut b, g.n);
    let y = free_vars(&mut b, g.q);
    g.encode_value(&mut b, &p.c, &[], &x, &y);
    g.encode_value(&mut b, &p.c, &[], &x, &constants(&zero_vec(g.q)));
    let (k, _) = oracle_hull(&mut LpOracle::new(b, y));
    Ok(NaturalCone { k })
}

/// `P = C + ⋃ F(x)` with its generators split as in the solver: `points`
/// and the directions `directions` that do not belong to `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperImage {
    pub vrep: VRep,
    pub points: Vec<Vec<Scalar>>,
    pub directions: Vec<Vec<Scalar>>,
}

impl UpperImage {
    pub fn is_empty(&self) -> bool {
        self.vrep.is_empty()
    }
}

pub fn upper_image(p: &SetOptProblem) -> UpperImage {
    let mut b = LpBuilder::new();
    let x = free_vars(&mut b, p.n());
    let y = free_vars(&mut b, p.q());
    p.f.encode_value(&mut b, &p.c, &[], &x, &y);
    let (vrep, _) = oracle_hull(&mut LpOracle::new(b, y));
    let directions = vrep
        .directions()
        .into_iter()
        .filter(|d| !p.c.contains(d))
        .collect();
    UpperImage {
        points: vrep.points.clone(),
        directions,
        vrep,
    }
}

/// Feasible and `ComputeMinimizer(G, C, 0)` succeeds; the standard form is
/// taken first when needed.
pub fn check_existence(p: &SetOptProblem) -> bool {
    let Ok(std) = standard_form(p) else {
        return false;
    };
    let g = recession_map(&std.f).expect("nonempty graph");
    matches!(compute_minimizer(&g, &std.c, &zero_vec(std.q())), Ok(Some(_)))
}
