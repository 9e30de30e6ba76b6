//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Solution set `particular + span(nullspace)` of a consistent linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..m.cols() {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Scalar)> = (c..m.cols())
            .filter(|&j| !m[(r, j)].is_zero())
            .map(|j| (j, m[(r, j)].clone()))
            .collect();
        for i in 0..m.rows() {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (j, v) in &pivot_row {
                m[(i, *j)] = &m[(i, *j)] - &(&f * v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Exact rank by fraction-free (Bareiss) elimination on the row-wise
/// integer-scaled matrix.
pub fn rank(a: &Matrix) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .row_iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

fn nullspace_from_rref(m: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let cols = m.cols();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&m[(i, f)];
        }
        basis.push(primitive_normalize(&v).expect("nullspace vector is nonzero"));
    }
    basis
}

/// Basis of `{z : Az = 0}` with primitive integer vectors.
pub fn nullspace(a: &Matrix) -> Vec<Vec<Scalar>> {
    let (m, pivots) = rref(a);
    nullspace_from_rref(&m, &pivots)
}

/// Solves `Ax = b`, returning one solution (free variables set to zero) and a
/// primitive basis of the nullspace of `A`.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Dimension {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let cols = a.cols();
    let mut aug = Matrix::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let (m, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Err(LinalgError::Inconsistent);
    }
    let mut particular = vec![Scalar::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = m[(i, cols)].clone();
    }
    let coeff = Matrix::from_rows(
        cols,
        (0..pivots.len())
            .map(|i| m.row(i)[..cols].to_vec())
            .collect(),
    );
    Ok(LinearSolution {
        particular,
        nullspace: nullspace_from_rref(&coeff, &pivots),
    })
}

/// Positive rescaling of `v` to an integer vector whose entries have gcd 1.
pub fn primitive_normalize(v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    if v.iter().all(Scalar::is_zero) {
        return Err(LinalgError::ZeroVector);
    }
    if v.iter().all(Scalar::is_integer) {
        // fast path for already-integral vectors
        let g = v
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::zero(), |acc, x| acc.gcd(&x.numer()));
        if g.is_one() {
            return Ok(v.to_vec());
        }
        let g = Scalar::from_bigint(g);
        return Ok(v.iter().map(|x| x / &g).collect());
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
        .abs();
    Ok(ints
        .into_iter()
        .map(|x| Scalar::from_bigint(x / &g))
        .collect())
}

/// Primitive basis of the orthogonal complement of the row space of `vectors`
/// inside `R^dim`.
pub fn orthogonal_complement(dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    nullspace(&Matrix::from_rows(dim, vectors.to_vec()))
}

/// Rank of a list of vectors of length `dim`.
pub fn rank_of(dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(dim, vectors.to_vec()))
}

/// A maximal linearly independent subset of `vectors`, in input order.
pub fn independent_subset(dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank_of(dim, &trial) == trial.len() {
            kept = trial;
        }
    }
    kept
}
