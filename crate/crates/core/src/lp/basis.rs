//! Exact evaluation of a given basis by sparse elimination.

use std::collections::BTreeMap;

use crate::exact::Scalar;

pub(super) type SparseVec = Vec<(usize, Scalar)>;

/// Solves the square system with the given sparse rows, `None` if singular.
/// Pivots are picked by a Markowitz-style count to keep fill-in low.
pub(super) fn sparse_solve(rows: &[SparseVec], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = rows.len();
    let mut work: Vec<BTreeMap<usize, Scalar>> = rows
        .iter()
        .map(|r| r.iter().filter(|(_, v)| !v.is_zero()).cloned().collect())
        .collect();
    let mut b: Vec<Scalar> = rhs.to_vec();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, r) in work.iter().enumerate() {
        for &j in r.keys() {
            if j >= n {
                return None;
            }
            col_rows[j].push(i);
        }
    }
    let mut active = vec![true; n];
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n);
    for _ in 0..n {
        let r = (0..n)
            .filter(|&i| active[i])
            .min_by_key(|&i| work[i].len())?;
        let c = *work[r]
            .keys()
            .min_by_key(|&&j| col_rows[j].iter().filter(|&&i| active[i]).count())?;
        active[r] = false;
        let pivot_row: Vec<(usize, Scalar)> =
            work[r].iter().map(|(j, v)| (*j, v.clone())).collect();
        let inv = work[r][&c].recip();
        let br = b[r].clone();
        let targets: Vec<usize> = col_rows[c]
            .iter()
            .copied()
            .filter(|&i| active[i])
            .collect();
        for i in targets {
            let Some(f) = work[i].get(&c).map(|v| v * &inv) else {
                continue;
            };
            for (j, v) in &pivot_row {
                let entry = work[i].entry(*j).or_insert_with(Scalar::zero);
                let was_zero = entry.is_zero();
                *entry -= &f * v;
                if entry.is_zero() {
                    work[i].remove(j);
                } else if was_zero {
                    col_rows[*j].push(i);
                }
            }
            b[i] -= &f * &br;
        }
        order.push((r, c));
    }
    let mut x = vec![Scalar::zero(); n];
    for &(r, c) in order.iter().rev() {
        let mut acc = b[r].clone();
        for (j, v) in &work[r] {
            if *j != c {
                acc -= v * &x[*j];
            }
        }
        x[c] = acc / &work[r][&c];
    }
    Some(x)
}

/// Greedy maximal linearly independent subset of `cols`: the kept column
/// indices with distinct rows such that the kept columns restricted to those
/// rows form a nonsingular matrix.
pub(super) fn independent_columns(cols: &[SparseVec]) -> Vec<(usize, usize)> {
    let mut reduced: Vec<(usize, BTreeMap<usize, Scalar>)> = Vec::new();
    let mut out = Vec::new();
    for (k, c) in cols.iter().enumerate() {
        let mut v: BTreeMap<usize, Scalar> =
            c.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        for (p, u) in &reduced {
            let Some(f) = v.get(p).map(|x| x / &u[p]) else {
                continue;
            };
            for (j, uj) in u {
                let e = v.entry(*j).or_insert_with(Scalar::zero);
                *e -= &f * uj;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
        if let Some(&p) = v.keys().next() {
            reduced.push((p, v));
            out.push((k, p));
        }
    }
    out
}
