//! Dense least-squares kernels: Householder QR with column pivoting and a
//! one-sided Jacobi routine for singular values.
//!
//! Matrices are stored as column vectors; the problems here are tall and
//! narrow (monthly observations × a handful of factors).

use crate::error::{Error, Result};
use crate::num::Real;

/// Output of a pivoted QR least-squares solve.
#[derive(Debug, Clone)]
pub struct LeastSquares<T> {
    /// Coefficients in original column order.
    pub beta: Vec<T>,
    /// (XᵀX)⁻¹ in original column order, row-major k×k.
    pub xtx_inv: Vec<Vec<T>>,
}

/// Solves min ‖y − Xβ‖² by Householder QR with column pivoting.
///
/// The normal-equations inverse needed for standard errors is recovered from
/// the triangular factor, not by inverting XᵀX. A pivot below
/// `n·ε·(largest pivot)` reports the offending column by index.
pub fn qr_least_squares<T: Real>(
    columns: &[Vec<T>],
    y: &[T],
) -> Result<LeastSquares<T>, QrFailure> {
    let k = columns.len();
    let n = y.len();
    debug_assert!(columns.iter().all(|c| c.len() == n));
    debug_assert!(n > k && k >= 1);

    // Working copy, column-major; reflectors overwrite the lower triangle.
    let mut a: Vec<Vec<T>> = columns.to_vec();
    let mut qty: Vec<T> = y.to_vec();
    let mut piv: Vec<usize> = (0..k).collect();

    let col_tail_norm2 = |col: &[T], from: usize| -> T {
        col[from..].iter().map(|&v| v * v).sum::<T>()
    };

    let mut largest_pivot = T::zero();
    let eps_scale = T::of_usize(n) * T::epsilon();

    for j in 0..k {
        // Pivot: bring the column with the largest remaining norm to position j.
        let (best, best_norm2) = (j..k)
            .map(|c| (c, col_tail_norm2(&a[c], j)))
            .fold((j, T::neg_infinity()), |acc, cur| {
                if cur.1 > acc.1 {
                    cur
                } else {
                    acc
                }
            });
        if best != j {
            a.swap(j, best);
            piv.swap(j, best);
        }

        let norm = best_norm2.max(T::zero()).sqrt();
        if j == 0 {
            largest_pivot = norm;
        }
        if norm <= eps_scale * largest_pivot {
            return Err(QrFailure::RankDeficient { column: piv[j] });
        }

        // Householder vector v for a[j][j..], reflecting onto ∓norm·e1.
        let alpha = if a[j][j] >= T::zero() { -norm } else { norm };
        let mut v: Vec<T> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vnorm2 = v.iter().map(|&x| x * x).sum::<T>();
        a[j][j] = alpha;
        for x in a[j][j + 1..].iter_mut() {
            *x = T::zero();
        }

        if vnorm2 > T::zero() {
            let two = T::of(2.0);
            for col in a.iter_mut().skip(j + 1) {
                let dot = v
                    .iter()
                    .zip(col[j..].iter())
                    .map(|(&vi, &ci)| vi * ci)
                    .sum::<T>();
                let scale = two * dot / vnorm2;
                for (vi, ci) in v.iter().zip(col[j..].iter_mut()) {
                    *ci -= scale * *vi;
                }
            }
            let dot = v
                .iter()
                .zip(qty[j..].iter())
                .map(|(&vi, &yi)| vi * yi)
                .sum::<T>();
            let scale = two * dot / vnorm2;
            for (vi, yi) in v.iter().zip(qty[j..].iter_mut()) {
                *yi -= scale * *vi;
            }
        }
    }

    // Back-substitution: R z = (Qᵀy)[..k]; R is stored in the top k rows.
    let r = |i: usize, j: usize| a[j][i];
    let mut z = vec![T::zero(); k];
    for i in (0..k).rev() {
        let mut sum = qty[i];
        for j in (i + 1)..k {
            sum -= r(i, j) * z[j];
        }
        z[i] = sum / r(i, i);
    }

    // R⁻¹ by back-substitution on the identity, then (XᵀX)⁻¹ = P R⁻¹R⁻ᵀ Pᵀ.
    let mut rinv = vec![vec![T::zero(); k]; k];
    for col in 0..k {
        for i in (0..=col).rev() {
            let mut sum = if i == col { T::one() } else { T::zero() };
            for j in (i + 1)..=col {
                sum -= r(i, j) * rinv[j][col];
            }
            rinv[i][col] = sum / r(i, i);
        }
    }
    let mut xtx_inv = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let dot = (0..k)
                .map(|l| rinv[i][l] * rinv[j][l])
                .sum::<T>();
            xtx_inv[piv[i]][piv[j]] = dot;
        }
    }

    let mut beta = vec![T::zero(); k];
    for (pos, &orig) in piv.iter().enumerate() {
        beta[orig] = z[pos];
    }

    Ok(LeastSquares { beta, xtx_inv })
}

/// Failure detail for the QR solve; callers attach the column name.
#[derive(Debug, Clone, Copy)]
pub enum QrFailure {
    RankDeficient { column: usize },
}

/// Singular values of the column set by one-sided Jacobi orthogonalization,
/// descending. Returns an error only if the iteration fails to converge.
pub fn singular_values<T: Real>(columns: &[Vec<T>]) -> Result<Vec<T>> {
    let k = columns.len();
    if k == 0 || columns[0].is_empty() {
        return Err(Error::TooFewRows { rows: 0, cols: k });
    }
    let mut a: Vec<Vec<T>> = columns.to_vec();
    let tol = T::epsilon() * T::of(16.0);
    let max_sweeps = 60;

    for _ in 0..max_sweeps {
        let mut off = T::zero();
        for p in 0..k {
            for q in (p + 1)..k {
                let app = a[p].iter().map(|&v| v * v).sum::<T>();
                let aqq = a[q].iter().map(|&v| v * v).sum::<T>();
                let apq = a[p]
                    .iter()
                    .zip(a[q].iter())
                    .map(|(&x, &y)| x * y)
                    .sum::<T>();
                if apq.abs() <= tol * (app * aqq).sqrt() {
                    continue;
                }
                off = off.max(apq.abs() / (app * aqq).sqrt().max(T::min_positive_value()));
                // Jacobi rotation zeroing the (p,q) inner product.
                let tau = (aqq - app) / (T::of(2.0) * apq);
                let t = {
                    let sign = if tau >= T::zero() { T::one() } else { -T::one() };
                    sign / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..a[p].len() {
                    let xp = a[p][i];
                    let xq = a[q][i];
                    a[p][i] = c * xp - s * xq;
                    a[q][i] = s * xp + c * xq;
                }
            }
        }
        if off <= tol {
            break;
        }
    }

    let mut sv: Vec<T> = a
        .iter()
        .map(|col| col.iter().map(|&v| v * v).sum::<T>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    Ok(sv)
}
