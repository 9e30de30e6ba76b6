use super::ops::v_to_h;
use super::{HRep, PolyError, VRep};
use crate::exact::{dot, orthogonal_complement, primitive_normalize, sub_vec, Matrix, Scalar};

/// `{z : Ez = f}` with linearly independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub eqs: Matrix,
    pub rhs: Vec<Scalar>,
    /// Dimension of the affine set.
    pub dim: usize,
}

impl AffineHull {
    pub fn contains(&self, z: &[Scalar]) -> bool {
        self.eqs.row_iter().zip(&self.rhs).all(|(e, f)| dot(e, z) == *f)
    }

    pub fn ambient(&self) -> usize {
        self.eqs.cols()
    }
}

pub fn affine_hull(v: &VRep) -> Result<AffineHull, PolyError> {
    let Some(p0) = v.points.first() else {
        return Err(PolyError::Empty);
    };
    let mut dirs: Vec<Vec<Scalar>> = v.points[1..].iter().map(|p| sub_vec(p, p0)).collect();
    dirs.extend(v.rays.iter().cloned());
    dirs.extend(v.lines.iter().cloned());
    let normals = orthogonal_complement(v.dim, &dirs);
    let rhs = normals.iter().map(|e| dot(e, p0)).collect();
    Ok(AffineHull {
        dim: v.dim - normals.len(),
        eqs: Matrix::from_rows(v.dim, normals),
        rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalKind {
    Facet,
    /// Part of the inequality description of the affine hull.
    AffineHull,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalEntry {
    pub normal: Vec<Scalar>,
    pub rhs: Scalar,
    pub kind: NormalKind,
}

/// Inequalities `wᵢᵀz ≤ γᵢ` describing a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSystem {
    pub dim: usize,
    pub entries: Vec<NormalEntry>,
}

impl NormalSystem {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn normals(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.entries.iter().map(|e| &e.normal)
    }

    pub fn contains(&self, z: &[Scalar]) -> bool {
        self.entries.iter().all(|e| dot(&e.normal, z) <= e.rhs)
    }

    pub fn to_hrep(&self) -> HRep {
        let mut h = HRep::new(self.dim);
        for e in &self.entries {
            h.push_ineq(e.normal.clone(), e.rhs.clone());
        }
        h
    }
}

/// Rows of `E` (primitive) with their right-hand sides, plus the aggregated
/// row `−Σ Eᵢ ≤ −Σ fᵢ`. Together they describe `{z : Ez = f}` minimally.
pub fn affine_hull_ineq(eqs: &Matrix, rhs: &[Scalar]) -> NormalSystem {
    let d = eqs.cols();
    let mut entries = Vec::with_capacity(eqs.rows() + 1);
    let mut agg = vec![Scalar::zero(); d];
    let mut agg_rhs = Scalar::zero();
    for (row, f) in eqs.row_iter().zip(rhs) {
        let w = primitive_normalize(row).expect("nonzero equation row");
        let i = row.iter().position(|x| !x.is_zero()).unwrap();
        let g = f * &(&w[i] / &row[i]);
        for (a, x) in agg.iter_mut().zip(&w) {
            *a -= x;
        }
        agg_rhs -= &g;
        entries.push(NormalEntry {
            normal: w,
            rhs: g,
            kind: NormalKind::AffineHull,
        });
    }
    if !entries.is_empty() {
        // the aggregate is a positive multiple of its primitive form
        let w = primitive_normalize(&agg).expect("independent rows");
        let i = agg.iter().position(|x| !x.is_zero()).unwrap();
        let s = &w[i] / &agg[i];
        entries.push(NormalEntry {
            normal: w,
            rhs: agg_rhs * s,
            kind: NormalKind::AffineHull,
        });
    }
    NormalSystem { dim: d, entries }
}

/// Minimal system of outer normals. Full-dimensional sets get their
/// primitive facet normals; otherwise the facets of `P + (aff P)^⊥` are
/// combined with [`affine_hull_ineq`] of `aff P`.
pub fn min_outer_normals(v: &VRep) -> Result<NormalSystem, PolyError> {
    let aff = affine_hull(v)?;
    let mut fat = v.clone();
    for e in aff.eqs.row_iter() {
        fat.push_line(e.to_vec());
    }
    let h = v_to_h(&fat);
    debug_assert_eq!(h.eq.rows(), 0);
    let mut entries: Vec<NormalEntry> = h
        .ineq
        .row_iter()
        .zip(&h.ineq_rhs)
        .map(|(a, b)| NormalEntry {
            normal: a.to_vec(),
            rhs: b.clone(),
            kind: NormalKind::Facet,
        })
        .collect();
    entries.extend(affine_hull_ineq(&aff.eqs, &aff.rhs).entries);
    Ok(NormalSystem { dim: v.dim, entries })
}
