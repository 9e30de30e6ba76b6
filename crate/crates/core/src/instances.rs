//! Problem builders: solvency cones from bid-ask matrices, the
//! risk-compensation problem and the Euler-digit problem.

use crate::exact::{dot, neg_vec, zero_vec, Matrix, Scalar};
use crate::polyhedron::{remove_redundancy, v_to_h, HRep, VRep};
use crate::setopt::{OrderCone, PolyMap, SetOptProblem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("bid-ask matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("pi[{i}][{i}] must be 1")]
    Diagonal { i: usize },
    #[error("pi[{i}][{j}] must be positive")]
    NonPositive { i: usize, j: usize },
    #[error("pi[{i}][{j}] > pi[{i}][{k}] * pi[{k}][{j}]")]
    Triangle { i: usize, j: usize, k: usize },
    #[error("matrices have sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("q = {q} exceeds the number of assets {n}")]
    TooManyObjectives { q: usize, n: usize },
    #[error("initial portfolio has length {got}, expected {expected}")]
    PortfolioLength { expected: usize, got: usize },
}

/// Checks `πᵢᵢ = 1`, `πᵢⱼ > 0` and `πᵢⱼ ≤ πᵢₖπₖⱼ`, reporting the first
/// violation in row-major order.
pub fn validate_bid_ask(pi: &Matrix) -> Result<(), InstanceError> {
    let n = pi.rows();
    if pi.cols() != n {
        return Err(InstanceError::NotSquare {
            rows: n,
            cols: pi.cols(),
        });
    }
    for i in 0..n {
        if !pi[(i, i)].is_one() {
            return Err(InstanceError::Diagonal { i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !pi[(i, j)].is_positive() {
                return Err(InstanceError::NonPositive { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if pi[(i, j)] > &pi[(i, k)] * &pi[(k, j)] {
                    return Err(InstanceError::Triangle { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// Cone generated by `πᵢⱼeⁱ − eʲ` for `i ≠ j`, without redundant generators.
pub fn solvency_cone(pi: &Matrix) -> Result<OrderCone, InstanceError> {
    validate_bid_ask(pi)?;
    let n = pi.rows();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut g = zero_vec(n);
                g[i] = pi[(i, j)].clone();
                g[j] = -Scalar::one();
                gens.push(g);
            }
        }
    }
    let v = remove_redundancy(&VRep::cone(n, gens, Vec::new()));
    Ok(OrderCone::from_vrep(&v))
}

/// Risk-compensation problem: `F(x) = {y : x̄ − x ∈ K₁, x + (y, 0) ∈ K₂}`
/// with solvency cones `K₁, K₂` and `C = R^q₊`.
pub fn build_risk_problem(
    pi1: &Matrix,
    pi2: &Matrix,
    q: usize,
    xbar: &[Scalar],
) -> Result<SetOptProblem, InstanceError> {
    let k1 = solvency_cone(pi1)?;
    let k2 = solvency_cone(pi2)?;
    if pi2.rows() != pi1.rows() {
        return Err(InstanceError::SizeMismatch(pi1.rows(), pi2.rows()));
    }
    build_risk_problem_from_cones(&k1, &k2, q, xbar)
}

/// Same construction for arbitrary polyhedral cones `K₁, K₂ ⊆ Rⁿ`.
pub fn build_risk_problem_from_cones(
    k1: &OrderCone,
    k2: &OrderCone,
    q: usize,
    xbar: &[Scalar],
) -> Result<SetOptProblem, InstanceError> {
    let n = k1.q;
    if k2.q != n {
        return Err(InstanceError::SizeMismatch(n, k2.q));
    }
    if q > n {
        return Err(InstanceError::TooManyObjectives { q, n });
    }
    if xbar.len() != n {
        return Err(InstanceError::PortfolioLength {
            expected: n,
            got: xbar.len(),
        });
    }
    let h1 = v_to_h(&k1.as_vrep());
    let h2 = v_to_h(&k2.as_vrep());
    let mut gr = HRep::new(n + q);
    // h·(x̄ − x) ≤ 0  ⇔  −h·x ≤ −h·x̄
    for a in h1.ineq.row_iter() {
        let mut row = neg_vec(a);
        row.extend(zero_vec(q));
        gr.push_ineq(row, -dot(a, xbar));
    }
    for a in h1.eq.row_iter() {
        let mut row = neg_vec(a);
        row.extend(zero_vec(q));
        gr.push_eq(row, -dot(a, xbar));
    }
    // h·x + h[..q]·y ≤ 0
    let lift = |a: &[Scalar]| -> Vec<Scalar> {
        let mut row = a.to_vec();
        row.extend(a[..q].iter().cloned());
        row
    };
    for a in h2.ineq.row_iter() {
        gr.push_ineq(lift(a), Scalar::zero());
    }
    for a in h2.eq.row_iter() {
        gr.push_eq(lift(a), Scalar::zero());
    }
    let f = PolyMap::from_hrep(n, q, gr).expect("dimensions agree");
    Ok(SetOptProblem::new(f, OrderCone::nonneg_orthant(q)).expect("dimensions agree"))
}

fn parse_matrix(n: usize, entries: &[&str]) -> Matrix {
    let rows = entries
        .chunks(n)
        .map(|r| r.iter().map(|s| s.parse().expect("valid literal")).collect())
        .collect();
    Matrix::from_rows(n, rows)
}

/// Bid-ask matrix `Π₁` of the four-asset example.
pub fn example_pi1() -> Matrix {
    parse_matrix(
        4,
        &[
            "1", "223/100", "89/50", "47/25", //
            "157/100", "1", "54/25", "177/100", //
            "19/10", "211/100", "1", "199/100", //
            "101/50", "41/20", "43/20", "1",
        ],
    )
}

/// Bid-ask matrix `Π₂` of the four-asset example.
pub fn example_pi2() -> Matrix {
    parse_matrix(
        4,
        &[
            "1", "39/20", "223/100", "207/100", //
            "37/20", "1", "41/20", "54/25", //
            "38/25", "97/50", "1", "37/20", //
            "11/5", "49/25", "44/25", "1",
        ],
    )
}

/// The four-asset example with two objectives and initial portfolio 0.
pub fn build_example1() -> SetOptProblem {
    build_risk_problem(&example_pi1(), &example_pi2(), 2, &zero_vec(4)).expect("valid data")
}

/// First 1000 decimal digits of e.
pub const EULER_DIGITS: &str = concat!(
    "2718281828459045235360287471352662497757247093699959574966967627724076630353",
    "5475945713821785251664274274663919320030599218174135966290435729003342952605",
    "9563073813232862794349076323382988075319525101901157383418793070215408914993",
    "4884167509244761460668082264800168477411853742345442437107539077744992069551",
    "7027618386062613313845830007520449338265602976067371132007093287091274437470",
    "4723069697720931014169283681902551510865746377211125238978442505695369677078",
    "5449969967946864454905987931636889230098793127736178215424999229576351482208",
    "2698951936680331825288693984964651058209392398294887933203625094431173012381",
    "9706841614039701983767932068328237646480429531180232878250981945581530175671",
    "7361332069811250996181881593041690351598888519345807273866738589422879228499",
    "8920868058257492796104841984443634632449684875602336248270419786232090021609",
    "9023530436994184914631409343173814364054625315209618369088870701676839642437",
    "8140592714563549061303107208510383750510115747704171898610687396965521267154",
    "688957035035",
);

/// The first `count` digits of e, `2, 7, 1, 8, …`; `count ≤ 1000`.
pub fn euler_digits(count: usize) -> Vec<u8> {
    assert!(count <= EULER_DIGITS.len(), "at most 1000 digits are available");
    EULER_DIGITS.bytes().take(count).map(|b| b - b'0').collect()
}

/// 12×60 matrix filled row-wise with the digits of e, reduced mod 3.
pub fn euler_matrix() -> Matrix {
    let digits = euler_digits(720);
    let rows = digits
        .chunks(60)
        .map(|r| r.iter().map(|&d| Scalar::from_int((d % 3) as i64)).collect())
        .collect();
    Matrix::from_rows(60, rows)
}

/// `gr F = conv(columns of the Euler matrix)` with `x` the first ten and `y`
/// the last two coordinates; `C = {0}`.
pub fn build_euler_problem() -> SetOptProblem {
    let m = euler_matrix();
    let cols = (0..60).map(|j| (0..12).map(|i| m[(i, j)].clone()).collect()).collect();
    let f = PolyMap::from_vrep(10, 2, VRep::from_points(12, cols)).expect("dimensions agree");
    SetOptProblem::new(f, OrderCone::zero(2)).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ivec, rat};
    use num_bigint::BigUint;

    /// Digits of e from the series Σ 1/k! in scaled integer arithmetic.
    fn series_digits(count: usize) -> Vec<u8> {
        let guard = 10;
        let scale = BigUint::from(10u32).pow((count + guard) as u32);
        let mut term = scale.clone();
        let mut sum = scale.clone();
        let mut k = 1u32;
        while term > BigUint::from(0u32) {
            term /= k;
            sum += &term;
            k += 1;
        }
        let s = sum.to_string();
        s.bytes().take(count).map(|b| b - b'0').collect()
    }

    #[test]
    fn embedded_digits_match_series() {
        assert_eq!(euler_digits(1000), series_digits(1000));
        assert_eq!(euler_digits(4), vec![2, 7, 1, 8]);
        assert_eq!(&euler_digits(6)[4..], &[2, 8]);
        assert_eq!(euler_digits(720)[719], 5);
    }

    #[test]
    fn euler_matrix_entries() {
        let m = euler_matrix();
        assert_eq!((m.rows(), m.cols()), (12, 60));
        assert_eq!(m.row(0)[..4], ivec(&[2, 1, 1, 2])[..]);
        assert_eq!(m[(11, 59)], int(2));
        assert!(m.row_iter().flatten().all(|v| *v >= int(0) && *v <= int(2)));
    }

    #[test]
    fn bid_ask_validation() {
        let two = Matrix::from_ints(3, &[&[1, 2, 2], &[2, 1, 2], &[2, 2, 1]]);
        assert_eq!(validate_bid_ask(&two), Ok(()));
        assert_eq!(validate_bid_ask(&example_pi1()), Ok(()));
        assert_eq!(validate_bid_ask(&example_pi2()), Ok(()));
        let bad = Matrix::from_ints(3, &[&[1, 5, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(
            validate_bid_ask(&bad),
            Err(InstanceError::Triangle { i: 0, j: 1, k: 2 })
        );
        assert!(matches!(
            validate_bid_ask(&Matrix::zeros(2, 3)),
            Err(InstanceError::NotSquare { .. })
        ));
    }

    #[test]
    fn two_asset_cone() {
        let pi = Matrix::from_ints(2, &[&[1, 2], &[2, 1]]);
        let k = solvency_cone(&pi).unwrap();
        let mut rays = k.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![ivec(&[-1, 2]), ivec(&[2, -1])]);
    }

    #[test]
    fn example_cones_have_twelve_rays_and_twenty_facets() {
        for pi in [example_pi1(), example_pi2()] {
            let k = solvency_cone(&pi).unwrap();
            assert_eq!(k.rays.len(), 12);
            assert!(k.lines.is_empty());
            let h = v_to_h(&k.as_vrep());
            assert_eq!(h.ineq.rows(), 20);
            assert_eq!(h.eq.rows(), 0);
            // every generator is still in the cone
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        let mut g = zero_vec(4);
                        g[i] = pi[(i, j)].clone();
                        g[j] = int(-1);
                        assert!(h.contains(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn orthant_risk_problem() {
        // K₁ = K₂ = R³₊: F(x) = {y : x ≤ 0, x₁ + y ≥ 0, x₂, x₃ ≥ 0}
        let k = OrderCone::nonneg_orthant(3);
        let p = build_risk_problem_from_cones(&k, &k, 1, &zero_vec(3)).unwrap();
        assert_eq!((p.n(), p.q()), (3, 1));
        let v = p.f.value(&zero_vec(3), &OrderCone::zero(1));
        assert_eq!(v.points, vec![ivec(&[0])]);
        assert_eq!(v.rays, vec![ivec(&[1])]);
        let v = p.f.value(&ivec(&[-2, 0, 0]), &OrderCone::zero(1));
        assert_eq!(v.points, vec![ivec(&[2])]);
        assert!(!p.f.in_domain(&ivec(&[1, 0, 0])));
        assert!(!p.f.in_domain(&ivec(&[0, -1, 0])));
        let pi = Matrix::from_ints(2, &[&[1, 3], &[3, 1]]);
        assert!(build_risk_problem(&pi, &pi, 3, &zero_vec(2)).is_err());
        assert!(build_risk_problem(&pi, &pi, 1, &[rat(1, 2)]).is_err());
    }
}
