//! Exact elimination-based routines. Every zero test is exact, so these are
//! meant for `Rational` and `QSqrt2` matrices.

use crate::field::{Field, OrderedField};
use crate::mat::Mat;

/// Nonzero entry of largest magnitude in column `c` among `rows`. Any nonzero
/// pivot is exact; the largest keeps `f64` callers well behaved.
fn pivot_row<T: Field>(a: &Mat<T>, rows: std::ops::Range<usize>, c: usize) -> Option<usize> {
    rows.filter(|&i| !a[(i, c)].vanishes())
        .max_by(|&i, &j| a[(i, c)].to_f64().abs().total_cmp(&a[(j, c)].to_f64().abs()))
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<T: Field>(m: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(&a, r..rows, c) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = T::one() / a[(r, c)].clone();
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].vanishes() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Mat<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space, one vector per free column.
pub fn kernel<T: Field>(m: &Mat<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let cols = m.ncols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// One solution of `a·x = b`, or `None` when the system is inconsistent.
pub fn solve<T: Field>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.ncols();
    let aug = Mat::from_fn(a.nrows(), n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Some(x)
}

pub fn inverse<T: Field>(m: &Mat<T>) -> Option<Mat<T>> {
    assert!(m.is_square());
    let n = m.nrows();
    let aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            T::one()
        } else {
            T::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.submatrix(0, n, n, n))
}

pub fn det<T: Field>(m: &Mat<T>) -> T {
    assert!(m.is_square());
    let n = m.nrows();
    let mut a = m.clone();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = pivot_row(&a, c..n, c) else {
            return T::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            if a[(i, c)].vanishes() {
                continue;
            }
            let f = a[(i, c)].clone() / piv.clone();
            for j in c..n {
                let v = a[(i, j)].clone() - f.clone() * a[(c, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    d
}

/// Characteristic polynomial det(x·I − m), coefficients from degree 0 up,
/// by the Faddeev–LeVerrier recursion.
pub fn charpoly<T: Field>(m: &Mat<T>) -> Vec<T> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut mk = Mat::zeros(n, n);
    let id = Mat::identity(n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&c[n - k + 1]);
        let am = m * &mk;
        c[n - k] = -(am.trace() / T::from_i64(k as i64));
    }
    c
}

/// Inertia `(negative, zero, positive)` of a symmetric matrix via congruence
/// elimination.
pub fn inertia<T: OrderedField>(m: &Mat<T>) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let mut a = m.clone();
    let mut live: Vec<usize> = (0..a.nrows()).collect();
    let (mut neg, mut pos) = (0, 0);
    while !live.is_empty() {
        let pivot = live.iter().copied().find(|&i| !a[(i, i)].vanishes());
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: e_i + e_j has nonzero square when a_ij ≠ 0.
                let pair = live.iter().flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].vanishes());
                let Some((i, j)) = pair else { break };
                let n = a.nrows();
                for k in 0..n {
                    let v = a[(i, k)].clone() + a[(j, k)].clone();
                    a[(i, k)] = v;
                }
                for k in 0..n {
                    let v = a[(k, i)].clone() + a[(k, j)].clone();
                    a[(k, i)] = v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        match d.signum_i() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!(),
        }
        live.retain(|&i| i != p);
        for &i in &live {
            let f = a[(i, p)].clone() / d.clone();
            for &j in &live {
                let v = a[(i, j)].clone() - f.clone() * a[(p, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    let zero = m.nrows() - neg - pos;
    (neg, zero, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, Rational};

    fn q(rows: &[&[i64]]) -> Mat<Rational> {
        Mat::from_fn(rows.len(), rows[0].len(), |i, j| ratio(rows[i][j], 1))
    }

    #[test]
    fn kernel_and_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| *x == ratio(0, 1)));
    }

    #[test]
    fn inverse_det_charpoly() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Mat::identity(3));
        assert_eq!(det(&m), ratio(18, 1));
        // x^3 - 9x^2 + 24x - 18
        let c = charpoly(&m);
        assert_eq!(c, vec![ratio(-18, 1), ratio(24, 1), ratio(-9, 1), ratio(1, 1)]);
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let b = q(&[&[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1],
                    &[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]);
        assert_eq!(inertia(&b), (3, 0, 3));
        assert_eq!(inertia(&q(&[&[1, 1], &[1, 1]])), (0, 1, 1));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = q(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[ratio(1, 1), ratio(3, 1)]).is_none());
        let x = solve(&a, &[ratio(1, 1), ratio(2, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![ratio(1, 1), ratio(2, 1)]);
    }
}
