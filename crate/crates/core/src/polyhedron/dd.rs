//! Double description method for polyhedral cones.
//!
//! Computes minimal generators (lineality basis plus extreme rays modulo the
//! lineality space) of `{x : Ax ≤ 0, Ex = 0}`. Inequalities are inserted in
//! input order; adjacency of two rays is decided by the rank of the
//! constraints tight at both.

use crate::exact::{dot, nullspace, primitive_normalize, rank, Matrix, Scalar};

#[derive(Debug, Clone, Default)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<Vec<Scalar>>,
    pub rays: Vec<Vec<Scalar>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<Scalar>,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut Vec<u64>, k: usize) {
    let w = k / 64;
    if bits.len() <= w {
        bits.resize(w + 1, 0);
    }
    bits[w] |= 1 << (k % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_iter(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
    })
}

fn bits_count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn combine(a: &Scalar, x: &[Scalar], b: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

pub(crate) fn cone_generators(
    dim: usize,
    ineqs: &[Vec<Scalar>],
    eqs: &[Vec<Scalar>],
) -> ConeGenerators {
    let eq_matrix = Matrix::from_rows(dim, eqs.to_vec());
    let eq_rank = rank(&eq_matrix);
    let mut lineality: Vec<Vec<Scalar>> = nullspace(&eq_matrix);
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(p);
            let mut al = dot(a, &l);
            if al.is_positive() {
                l = l.iter().map(|x| -x).collect();
                al = -al;
            }
            for other in lineality.iter_mut() {
                let f = dot(a, other);
                if !f.is_zero() {
                    let v = combine(&Scalar::one(), other, &(-(&f / &al)), &l);
                    *other = primitive_normalize(&v).expect("independent lineality vector");
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v);
                if !f.is_zero() {
                    let v = combine(&Scalar::one(), &r.v, &(-(&f / &al)), &l);
                    r.v = primitive_normalize(&v).expect("ray outside lineality");
                }
                bit_set(&mut r.tight, k);
            }
            let mut tight = Vec::new();
            for i in 0..k {
                bit_set(&mut tight, i);
            }
            rays.push(Ray { v: l, tight });
            continue;
        }

        let values: Vec<Scalar> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    bit_set(&mut r.tight, k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        // the face spanned by two adjacent rays has dimension lineality + 2
        let target_rank = dim.saturating_sub(lineality.len() + 2);
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = bits_and(&rays[p].tight, &rays[n].tight);
                if bits_count(&common) + eq_rank < target_rank {
                    continue;
                }
                let mut rows = eqs.to_vec();
                rows.extend(bits_iter(&common).map(|i| ineqs[i].clone()));
                if rank(&Matrix::from_rows(dim, rows)) != target_rank {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &(-&values[n]), &rays[p].v);
                let mut tight = common;
                bit_set(&mut tight, k);
                created.push(Ray {
                    v: primitive_normalize(&v).expect("nonzero combination"),
                    tight,
                });
            }
        }
        let mut next = Vec::with_capacity(rays.len() - pos.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_positive() {
                continue;
            }
            if values[i].is_zero() {
                bit_set(&mut r.tight, k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ivec;

    #[test]
    fn orthant() {
        let g = cone_generators(2, &[ivec(&[-1, 0]), ivec(&[0, -1])], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 2);
        assert!(g.rays.contains(&ivec(&[1, 0])));
        assert!(g.rays.contains(&ivec(&[0, 1])));
    }

    #[test]
    fn halfplane_keeps_line() {
        let g = cone_generators(2, &[ivec(&[0, -1])], &[]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays, vec![ivec(&[0, 1])]);
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over a square: four facets, four extreme rays
        let ineqs = vec![
            ivec(&[1, 0, -1]),
            ivec(&[-1, 0, -1]),
            ivec(&[0, 1, -1]),
            ivec(&[0, -1, -1]),
        ];
        let g = cone_generators(3, &ineqs, &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]] {
            assert!(g.rays.contains(&ivec(&r)));
        }
    }

    #[test]
    fn equations_restrict_space() {
        let g = cone_generators(3, &[ivec(&[0, 0, -1])], &[ivec(&[1, -1, 0])]);
        assert_eq!(g.lineality, vec![ivec(&[1, 1, 0])]);
        assert_eq!(g.rays, vec![ivec(&[0, 0, 1])]);
    }
}
