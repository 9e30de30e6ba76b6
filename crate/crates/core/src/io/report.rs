//! Solution reports as text and JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::exact::Scalar;
use crate::polyhedron::VRep;
use crate::setopt::{Certificate, Solution};

/// Fractional digits of the decimal renderings.
pub const DECIMALS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorsReport {
    pub points: Vec<Vec<Scalar>>,
    pub rays: Vec<Vec<Scalar>>,
    pub lines: Vec<Vec<Scalar>>,
}

impl From<&VRep> for GeneratorsReport {
    fn from(v: &VRep) -> Self {
        GeneratorsReport {
            points: v.points.clone(),
            rays: v.rays.clone(),
            lines: v.lines.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub element: usize,
    /// Generator of the upper image the element was computed for.
    pub covers: Vec<Scalar>,
    pub normals: usize,
    pub lift_dim: usize,
    pub alg1_lps: usize,
    pub alg1_updates: usize,
    pub alg4_lps: usize,
    pub alg4_updates: usize,
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        CertificateReport {
            element: c.element,
            covers: c.covers.clone(),
            normals: c.normals.len(),
            lift_dim: c.lift.len(),
            alg1_lps: c.stats.alg1_lps,
            alg1_updates: c.stats.alg1_updates,
            alg4_lps: c.stats.alg4_lps,
            alg4_updates: c.stats.alg4_updates,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificatesReport {
    #[serde(rename = "Sbar")]
    pub sbar: Vec<CertificateReport>,
    #[serde(rename = "Shat")]
    pub shat: Vec<CertificateReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub wall_time_ms: f64,
    pub minimizer_calls: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionReport {
    pub status: String,
    #[serde(rename = "Sbar")]
    pub sbar: Vec<Vec<Scalar>>,
    #[serde(rename = "Shat")]
    pub shat: Vec<Vec<Scalar>>,
    #[serde(rename = "Sbar_decimal")]
    pub sbar_decimal: Vec<Vec<String>>,
    /// Directions rescaled to largest absolute entry 1.
    #[serde(rename = "Shat_decimal")]
    pub shat_decimal: Vec<Vec<String>>,
    pub upper_image: Option<GeneratorsReport>,
    pub certificates: CertificatesReport,
    pub stats: StatsReport,
}

fn decimals(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_decimal(DECIMALS)).collect()
}

/// `v / max |vᵢ|`; the zero vector is returned unchanged.
pub fn max_abs_scaled(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().map(Scalar::abs).max() {
        Some(m) if !m.is_zero() => v.iter().map(|x| x / &m).collect(),
        _ => v.to_vec(),
    }
}

impl SolutionReport {
    pub fn new(sol: &Solution) -> Self {
        SolutionReport {
            status: sol.status.to_string(),
            sbar: sol.sbar.clone(),
            shat: sol.shat.clone(),
            sbar_decimal: sol.sbar.iter().map(|x| decimals(x)).collect(),
            shat_decimal: sol.shat.iter().map(|x| decimals(&max_abs_scaled(x))).collect(),
            upper_image: sol.upper_image.as_ref().map(|u| (&u.vrep).into()),
            certificates: CertificatesReport {
                sbar: sol.sbar_certificates.iter().map(Into::into).collect(),
                shat: sol.shat_certificates.iter().map(Into::into).collect(),
            },
            stats: StatsReport {
                wall_time_ms: sol.stats.wall_time.as_secs_f64() * 1000.0,
                minimizer_calls: sol.stats.minimizer_calls,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("status: {}\n", self.status);
        let vec = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ");
        for (name, exact, dec) in [
            ("Sbar", &self.sbar, &self.sbar_decimal),
            ("Shat", &self.shat, &self.shat_decimal),
        ] {
            let _ = writeln!(out, "{name}: {} element(s)", exact.len());
            for (x, d) in exact.iter().zip(dec) {
                let _ = writeln!(out, "  ({})  ~ ({})", vec(x), d.join(", "));
            }
        }
        if let Some(u) = &self.upper_image {
            let _ = writeln!(
                out,
                "upper image: {} point(s), {} ray(s), {} line(s)",
                u.points.len(),
                u.rays.len(),
                u.lines.len()
            );
            for p in &u.points {
                let _ = writeln!(out, "  point ({})", vec(p));
            }
            for r in &u.rays {
                let _ = writeln!(out, "  ray   ({})", vec(r));
            }
            for l in &u.lines {
                let _ = writeln!(out, "  line  ({})", vec(l));
            }
        }
        for (name, certs) in [("Sbar", &self.certificates.sbar), ("Shat", &self.certificates.shat)] {
            for c in certs {
                let _ = writeln!(
                    out,
                    "{name}[{}] covers ({}): {} normals, alg1 {} LPs / {} updates, alg4 {} LPs / {} updates",
                    c.element,
                    vec(&c.covers),
                    c.normals,
                    c.alg1_lps,
                    c.alg1_updates,
                    c.alg4_lps,
                    c.alg4_updates
                );
            }
        }
        let _ = writeln!(
            out,
            "minimizer calls: {}, wall time: {:.1} ms",
            self.stats.minimizer_calls, self.stats.wall_time_ms
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rat};
    use crate::setopt::{SolveStats, Status};

    fn stopped(status: Status) -> Solution {
        Solution {
            status,
            sbar: Vec::new(),
            shat: Vec::new(),
            sbar_certificates: Vec::new(),
            shat_certificates: Vec::new(),
            upper_image: None,
            standard: None,
            stats: SolveStats::default(),
        }
    }

    #[test]
    fn no_solution_json() {
        let json = SolutionReport::new(&stopped(Status::NoSolution)).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["status"], "no_solution");
        assert_eq!(v["Sbar"], serde_json::json!([]));
        assert_eq!(v["Shat"], serde_json::json!([]));
        assert!(v["upper_image"].is_null());
    }

    #[test]
    fn rationals_as_strings() {
        let mut s = stopped(Status::Solved);
        s.sbar = vec![vec![rat(-177, 100), rat(1, 3)]];
        s.shat = vec![ivec(&[2, -4])];
        let r = SolutionReport::new(&s);
        assert_eq!(r.sbar_decimal, vec![vec!["-1.7700".to_string(), "0.3333".to_string()]]);
        assert_eq!(r.shat_decimal, vec![vec!["0.5000".to_string(), "-1.0000".to_string()]]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["Sbar"][0][0], "-177/100");
        assert_eq!(v["Shat"][0][1], "-4");
        assert!(r.to_text().contains("Sbar: 1 element(s)"));
    }

    #[test]
    fn scaling() {
        assert_eq!(max_abs_scaled(&ivec(&[0, 0])), ivec(&[0, 0]));
        assert_eq!(max_abs_scaled(&ivec(&[3, -6])), vec![rat(1, 2), rat(-1, 1)]);
    }
}
