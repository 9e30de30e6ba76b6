//! Vertex lists for external plotting of `F(x̄)+C`, `G(x̂)+C`, `P` and `Q`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::exact::Scalar;
use crate::polyhedron::VRep;
use crate::setopt::{recession_map, SetOptProblem, Solution};

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("plot data needs q = 2 or q = 3, got q = {0}")]
    UnsupportedDimension(usize),
    #[error("nothing to plot for a problem without upper image")]
    NoUpperImage,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSet {
    /// `value_sbar_<i>`, `value_shat_<i>`, `upper_image` or `homogeneous_upper_image`.
    pub name: String,
    /// Vertices; for `q = 2` in counter-clockwise order when the set is bounded.
    pub points: Vec<Vec<f64>>,
    pub rays: Vec<Vec<f64>>,
    pub lines: Vec<Vec<f64>>,
}

fn floats(v: &[Vec<Scalar>]) -> Vec<Vec<f64>> {
    v.iter().map(|z| z.iter().map(Scalar::to_f64).collect()).collect()
}

fn plot_set(name: String, v: &VRep) -> PlotSet {
    let mut points = floats(&v.points);
    if v.dim == 2 && v.rays.is_empty() && v.lines.is_empty() && points.len() > 2 {
        let k = points.len() as f64;
        let cx = points.iter().map(|p| p[0]).sum::<f64>() / k;
        let cy = points.iter().map(|p| p[1]).sum::<f64>() / k;
        points.sort_by(|a, b| {
            let ta = (a[1] - cy).atan2(a[0] - cx);
            let tb = (b[1] - cy).atan2(b[0] - cx);
            ta.total_cmp(&tb)
        });
    }
    PlotSet {
        name,
        points,
        rays: floats(&v.rays),
        lines: floats(&v.lines),
    }
}

/// The sets to draw, in a fixed order: values at `S̄`, values of the
/// recession map at `Ŝ`, then `P` and `Q = 0⁺P`.
pub fn plot_sets(p: &SetOptProblem, sol: &Solution) -> Result<Vec<PlotSet>, PlotError> {
    if !(2..=3).contains(&p.q()) {
        return Err(PlotError::UnsupportedDimension(p.q()));
    }
    let (Some(std), Some(upper)) = (&sol.standard, &sol.upper_image) else {
        return Err(PlotError::NoUpperImage);
    };
    let mut out = Vec::new();
    for (i, x) in sol.sbar.iter().enumerate() {
        out.push(plot_set(format!("value_sbar_{i}"), &std.f.value(x, &std.c)));
    }
    if !sol.shat.is_empty() {
        let g = recession_map(&std.f).expect("solved problems are feasible");
        for (i, x) in sol.shat.iter().enumerate() {
            out.push(plot_set(format!("value_shat_{i}"), &g.value(x, &std.c)));
        }
    }
    out.push(plot_set("upper_image".into(), &upper.vrep));
    out.push(plot_set("homogeneous_upper_image".into(), &upper.vrep.recession()));
    Ok(out)
}

/// Writes `plot.json` and `plot.csv` into `dir` and returns their paths.
/// CSV rows are `set,kind,c1,…,cq` with kind `point`, `ray` or `line`.
pub fn emit_plot_data(p: &SetOptProblem, sol: &Solution, dir: &Path) -> Result<Vec<PathBuf>, PlotError> {
    let sets = plot_sets(p, sol)?;
    std::fs::create_dir_all(dir)?;
    let json = dir.join("plot.json");
    std::fs::write(&json, serde_json::to_string_pretty(&sets).expect("plain data"))?;
    let mut csv = String::from("set,kind");
    for k in 1..=p.q() {
        let _ = write!(csv, ",c{k}");
    }
    csv.push('\n');
    for s in &sets {
        for (kind, rows) in [("point", &s.points), ("ray", &s.rays), ("line", &s.lines)] {
            for z in rows {
                let _ = write!(csv, "{},{kind}", s.name);
                for v in z {
                    let _ = write!(csv, ",{v}");
                }
                csv.push('\n');
            }
        }
    }
    let csv_path = dir.join("plot.csv");
    std::fs::write(&csv_path, csv)?;
    Ok(vec![json, csv_path])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, Matrix};
    use crate::polyhedron::HRep;
    use crate::setopt::{solve, OrderCone, PolyMap};

    fn two_objective() -> SetOptProblem {
        // F(x) = {(x, 1 − x)} on [0, 1], C = R²₊
        let rows: &[&[i64]] = &[&[1, -1, 0], &[-1, 1, 0], &[1, 0, 1], &[-1, 0, -1], &[1, 0, 0], &[-1, 0, 0]];
        let h = HRep::from_ineqs(Matrix::from_ints(3, rows), ivec(&[0, 0, 1, -1, 1, 0]));
        SetOptProblem::new(PolyMap::from_hrep(1, 2, h).unwrap(), OrderCone::nonneg_orthant(2)).unwrap()
    }

    #[test]
    fn writes_both_files() {
        let p = two_objective();
        let sol = solve(&p);
        let dir = std::env::temp_dir().join(format!("polyset-plot-{}", std::process::id()));
        let files = emit_plot_data(&p, &sol, &dir).unwrap();
        let sets: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
        let names: Vec<&str> = sets.as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
        assert_eq!(names, ["value_sbar_0", "value_sbar_1", "upper_image", "homogeneous_upper_image"]);
        let csv = std::fs::read_to_string(&files[1]).unwrap();
        assert!(csv.starts_with("set,kind,c1,c2\n"));
        assert!(csv.contains("upper_image,ray,"));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn rejects_other_dimensions() {
        let h = HRep::from_ineqs(Matrix::from_ints(2, &[&[1, -1]]), ivec(&[0]));
        let p = SetOptProblem::new(PolyMap::from_hrep(1, 1, h).unwrap(), OrderCone::nonneg_orthant(1)).unwrap();
        let sol = solve(&p);
        assert!(matches!(plot_sets(&p, &sol), Err(PlotError::UnsupportedDimension(1))));
    }

    #[test]
    fn counter_clockwise_square() {
        let v = VRep::from_points(2, vec![ivec(&[2, 2]), ivec(&[0, 0]), ivec(&[0, 2]), ivec(&[2, 0])]);
        let s = plot_set("sq".into(), &v);
        assert_eq!(s.points, vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![2.0, 2.0], vec![0.0, 2.0]]);
    }
}
